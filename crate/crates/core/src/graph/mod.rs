//! Finite connected multigraphs with optional rotation systems and pinned edges.
//!
//! Vertices and edges carry external integer labels (the ids used in the JSON
//! schema) but every algorithm works on dense indices. Indices follow label
//! order, so "lowest id" and "lowest index" coincide.

mod basis;
mod embedding;
mod partition;

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};

pub(crate) use basis::is_closed as basis_is_closed;
pub use basis::{cycle_basis, CycleBasis};
pub use embedding::{dual_graph, dual_graph_any, trace_faces, trace_faces_any, Embedding, Face};
pub use partition::{accessibility_partition, bipartite_coloring, Color, Coloring, Partition};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

/// An edge together with a direction: the triple `(e, tail, head)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedEdge {
    pub edge: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
}

impl DirectedEdge {
    pub fn new(edge: EdgeId, tail: VertexId, head: VertexId) -> Self {
        DirectedEdge { edge, tail, head }
    }

    pub fn reversed(self) -> Self {
        DirectedEdge { edge: self.edge, tail: self.head, head: self.tail }
    }
}

/// Construction input for [`build_graph`]; ids are external labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphSpec {
    pub vertices: Vec<u64>,
    /// `(edge id, u, v)`
    pub edges: Vec<(u64, u64, u64)>,
    /// vertex id -> clockwise edge ids
    pub rotation: Option<BTreeMap<u64, Vec<u64>>>,
    /// `(edge id, tail, head)`
    pub pinned: Vec<(u64, u64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    vertex_labels: Vec<u64>,
    edge_labels: Vec<u64>,
    ends: Vec<(VertexId, VertexId)>,
    incident: Vec<Vec<EdgeId>>,
    rotation: Option<Vec<Vec<EdgeId>>>,
    /// position of edge `e` in the rotation at `ends[e].0` and `ends[e].1`
    rot_pos: Vec<[usize; 2]>,
    pinned: BTreeMap<EdgeId, DirectedEdge>,
}

/// Validates a [`GraphSpec`] and produces a [`MultiGraph`].
pub fn build_graph(spec: &GraphSpec) -> Result<MultiGraph> {
    let mut vlabels = spec.vertices.clone();
    vlabels.sort_unstable();
    for w in vlabels.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateId(w[0]));
        }
    }
    let vindex: HashMap<u64, VertexId> = vlabels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut edges = spec.edges.clone();
    edges.sort_unstable_by_key(|e| e.0);
    for w in edges.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::DuplicateId(w[0].0));
        }
    }
    let lookup = |l: u64| vindex.get(&l).copied().ok_or(Error::UnknownVertex(l));
    let mut ends = Vec::with_capacity(edges.len());
    for &(id, u, v) in &edges {
        if u == v {
            return Err(Error::SelfLoop(id));
        }
        ends.push((lookup(u)?, lookup(v)?));
    }
    let elabels: Vec<u64> = edges.iter().map(|e| e.0).collect();
    let eindex: HashMap<u64, EdgeId> = elabels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let elookup = |l: u64| eindex.get(&l).copied().ok_or(Error::UnknownEdge(l));

    let rotation = match &spec.rotation {
        None => None,
        Some(map) => {
            let mut rot = vec![Vec::new(); vlabels.len()];
            for (&v, order) in map {
                let vi = lookup(v)?;
                rot[vi] = order.iter().map(|&e| elookup(e)).collect::<Result<Vec<_>>>()?;
            }
            Some(rot)
        }
    };
    let mut pinned = Vec::new();
    for &(e, t, h) in &spec.pinned {
        let ei = elookup(e)?;
        pinned.push(DirectedEdge::new(ei, lookup(t)?, lookup(h)?));
    }
    let mut g = MultiGraph::from_parts(vlabels, elabels, ends)?;
    if let Some(rot) = rotation {
        g = g.with_rotation(rot)?;
    }
    g.with_pins(pinned)
}

impl MultiGraph {
    /// Graph on vertices `0..n` with edges labelled by position.
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        MultiGraph::from_parts((0..n as u64).collect(), (0..edges.len() as u64).collect(), edges.to_vec())
    }

    pub(crate) fn from_parts(
        vertex_labels: Vec<u64>,
        edge_labels: Vec<u64>,
        ends: Vec<(VertexId, VertexId)>,
    ) -> Result<Self> {
        let n = vertex_labels.len();
        let mut incident = vec![Vec::new(); n];
        for (e, &(u, v)) in ends.iter().enumerate() {
            if u >= n {
                return Err(Error::UnknownVertex(u as u64));
            }
            if v >= n {
                return Err(Error::UnknownVertex(v as u64));
            }
            if u == v {
                return Err(Error::SelfLoop(edge_labels[e]));
            }
            incident[u].push(e);
            incident[v].push(e);
        }
        let g = MultiGraph {
            vertex_labels,
            rot_pos: vec![[0, 0]; ends.len()],
            edge_labels,
            ends,
            incident,
            rotation: None,
            pinned: BTreeMap::new(),
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Attaches a rotation system: for every vertex its incident edges in
    /// clockwise order. The stored cyclic order starts at the lowest edge.
    pub fn with_rotation(mut self, rotation: Vec<Vec<EdgeId>>) -> Result<Self> {
        if rotation.len() != self.num_vertices() {
            return Err(Error::BadRotation { vertex: 0, reason: "wrong number of vertices".into() });
        }
        let mut rot_pos = vec![[usize::MAX; 2]; self.num_edges()];
        let mut normalized = Vec::with_capacity(rotation.len());
        for (v, order) in rotation.into_iter().enumerate() {
            let label = self.vertex_labels[v];
            let mut sorted = order.clone();
            sorted.sort_unstable();
            let mut expect = self.incident[v].clone();
            expect.sort_unstable();
            if sorted != expect {
                let reason = if sorted.windows(2).any(|w| w[0] == w[1]) {
                    "edge listed twice".to_string()
                } else {
                    "edge set differs from incident edges".to_string()
                };
                return Err(Error::BadRotation { vertex: label, reason });
            }
            let start = order.iter().enumerate().min_by_key(|(_, &e)| e).map(|(i, _)| i).unwrap_or(0);
            let mut cyc = order[start..].to_vec();
            cyc.extend_from_slice(&order[..start]);
            for (i, &e) in cyc.iter().enumerate() {
                let side = if self.ends[e].0 == v { 0 } else { 1 };
                rot_pos[e][side] = i;
            }
            normalized.push(cyc);
        }
        self.rotation = Some(normalized);
        self.rot_pos = rot_pos;
        Ok(self)
    }

    pub fn with_pins(mut self, pins: Vec<DirectedEdge>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for p in pins {
            let label = *self.edge_labels.get(p.edge).ok_or(Error::UnknownEdge(p.edge as u64))?;
            let (u, v) = self.ends[p.edge];
            if !((p.tail == u && p.head == v) || (p.tail == v && p.head == u)) {
                return Err(Error::BadPin(label));
            }
            if map.insert(p.edge, p).is_some() {
                return Err(Error::DuplicateId(label));
            }
        }
        self.pinned = map;
        Ok(self)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.ends.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.num_vertices()
    }

    pub fn edges(&self) -> std::ops::Range<EdgeId> {
        0..self.num_edges()
    }

    pub fn ends(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.ends[e]
    }

    pub fn vertex_label(&self, v: VertexId) -> u64 {
        self.vertex_labels[v]
    }

    pub fn edge_label(&self, e: EdgeId) -> u64 {
        self.edge_labels[e]
    }

    pub fn vertex_by_label(&self, label: u64) -> Option<VertexId> {
        self.vertex_labels.binary_search(&label).ok()
    }

    pub fn edge_by_label(&self, label: u64) -> Option<EdgeId> {
        self.edge_labels.binary_search(&label).ok()
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident[v].len()
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// `e` directed away from `from`.
    pub fn dart(&self, e: EdgeId, from: VertexId) -> DirectedEdge {
        DirectedEdge::new(e, from, self.other_end(e, from))
    }

    /// Directed edges as dense indices: `2e` runs `ends.0 -> ends.1`, `2e+1` the reverse.
    pub fn dart_index(&self, d: DirectedEdge) -> usize {
        2 * d.edge + usize::from(self.ends[d.edge].0 != d.tail)
    }

    pub fn dart_at(&self, index: usize) -> DirectedEdge {
        let e = index / 2;
        let (u, v) = self.ends[e];
        if index.is_multiple_of(2) {
            DirectedEdge::new(e, u, v)
        } else {
            DirectedEdge::new(e, v, u)
        }
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (EdgeId, VertexId)> + '_ {
        self.incident[v].iter().map(move |&e| (e, self.other_end(e, v)))
    }

    pub fn rotation(&self) -> Option<&[Vec<EdgeId>]> {
        self.rotation.as_deref()
    }

    pub fn has_rotation(&self) -> bool {
        self.rotation.is_some()
    }

    /// Clockwise successor of `e` at `v`.
    pub fn cw_successor(&self, v: VertexId, e: EdgeId) -> EdgeId {
        let rot = &self.rotation.as_ref().expect("rotation system required")[v];
        let side = usize::from(self.ends[e].0 != v);
        rot[(self.rot_pos[e][side] + 1) % rot.len()]
    }

    /// Counterclockwise successor of `e` at `v`.
    pub fn ccw_successor(&self, v: VertexId, e: EdgeId) -> EdgeId {
        let rot = &self.rotation.as_ref().expect("rotation system required")[v];
        let side = usize::from(self.ends[e].0 != v);
        rot[(self.rot_pos[e][side] + rot.len() - 1) % rot.len()]
    }

    pub fn pinned(&self) -> impl Iterator<Item = DirectedEdge> + '_ {
        self.pinned.values().copied()
    }

    pub fn pin(&self, e: EdgeId) -> Option<DirectedEdge> {
        self.pinned.get(&e).copied()
    }

    pub fn is_pinned(&self, e: EdgeId) -> bool {
        self.pinned.contains_key(&e)
    }

    /// Vertices touched by a pinned edge (the boundary vertex set).
    pub fn boundary_vertices(&self) -> Vec<bool> {
        let mut b = vec![false; self.num_vertices()];
        for p in self.pinned.values() {
            b[p.tail] = true;
            b[p.head] = true;
        }
        b
    }

    fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for (_, w) in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// Breadth-first spanning tree from `root`, lowest edge ids first.
    /// Returns the parent dart of each vertex (pointing from the vertex
    /// toward the root) and the visit order.
    pub fn bfs_tree(&self, root: VertexId) -> (Vec<Option<DirectedEdge>>, Vec<VertexId>) {
        let n = self.num_vertices();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &e in &self.incident[v] {
                let w = self.other_end(e, v);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(DirectedEdge::new(e, w, v));
                    queue.push_back(w);
                }
            }
        }
        (parent, order)
    }

    /// The spec form of this graph, with its external labels.
    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.vertex_labels.clone(),
            edges: self
                .ends
                .iter()
                .enumerate()
                .map(|(e, &(u, v))| (self.edge_labels[e], self.vertex_labels[u], self.vertex_labels[v]))
                .collect(),
            rotation: self.rotation.as_ref().map(|rot| {
                rot.iter()
                    .enumerate()
                    .map(|(v, order)| (self.vertex_labels[v], order.iter().map(|&e| self.edge_labels[e]).collect()))
                    .collect()
            }),
            pinned: self
                .pinned
                .values()
                .map(|p| (self.edge_labels[p.edge], self.vertex_labels[p.tail], self.vertex_labels[p.head]))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4_spec() -> GraphSpec {
        GraphSpec {
            vertices: vec![0, 1, 2, 3],
            edges: vec![(0, 0, 1), (1, 1, 2), (2, 2, 3), (3, 3, 0)],
            ..Default::default()
        }
    }

    #[test]
    fn builds_c4() {
        let g = build_graph(&c4_spec()).unwrap();
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(g.num_edges(), 4);
        assert_eq!(g.degree(2), 2);
    }

    #[test]
    fn rejects_self_loop() {
        let mut s = c4_spec();
        s.edges.push((9, 2, 2));
        assert_eq!(build_graph(&s), Err(Error::SelfLoop(9)));
    }

    #[test]
    fn rejects_disconnected() {
        let s = GraphSpec {
            vertices: (0..6).collect(),
            edges: vec![(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 3, 4), (4, 4, 5), (5, 5, 3)],
            ..Default::default()
        };
        assert_eq!(build_graph(&s), Err(Error::Disconnected));
    }

    #[test]
    fn rejects_bad_rotation() {
        let mut s = c4_spec();
        let mut rot = BTreeMap::new();
        rot.insert(0, vec![0, 3]);
        rot.insert(1, vec![0, 1]);
        rot.insert(2, vec![1, 2]);
        rot.insert(3, vec![2, 2]);
        s.rotation = Some(rot.clone());
        assert!(matches!(build_graph(&s), Err(Error::BadRotation { vertex: 3, .. })));
        rot.insert(3, vec![2, 0]);
        s.rotation = Some(rot);
        assert!(matches!(build_graph(&s), Err(Error::BadRotation { vertex: 3, .. })));
    }

    #[test]
    fn labels_are_sorted_to_indices() {
        let s = GraphSpec { vertices: vec![30, 10, 20], edges: vec![(7, 30, 10), (5, 10, 20)], ..Default::default() };
        let g = build_graph(&s).unwrap();
        assert_eq!(g.vertex_label(0), 10);
        assert_eq!(g.edge_label(0), 5);
        assert_eq!(g.ends(1), (2, 0));
        assert_eq!(build_graph(&g.to_spec()).unwrap(), g);
    }

    #[test]
    fn multi_edges_allowed() {
        let g = MultiGraph::new(2, &[(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.degree(0), 3);
    }

    #[test]
    fn pins_must_match_ends() {
        let g = MultiGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(g.clone().with_pins(vec![DirectedEdge::new(0, 1, 0)]).is_ok());
        assert_eq!(g.with_pins(vec![DirectedEdge::new(0, 2, 0)]), Err(Error::BadPin(0)));
    }
}
