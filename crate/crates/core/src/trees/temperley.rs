//! The graph `H(v*, f*)` and the bijection between spanning trees and its
//! perfect matchings.

use std::collections::BTreeSet;

use super::{Angle, ArborescencePair, TreeSpace};
use crate::config::Config;
use crate::error::{ensure, Error, Result};
use crate::graph::{trace_faces, EdgeId, Embedding, FaceId, MultiGraph, VertexId};
use crate::matching::{enumerate_dfactors, DFactor, MatchingSpace};

/// A node of `H`: a vertex other than `v*`, a face other than `f*`, or an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HNode {
    Vertex(VertexId),
    Face(FaceId),
    Edge(EdgeId),
}

/// The face-poset Hasse diagram of `G` with the nodes of `v*` and `f*`
/// deleted, embedded jointly with `G` and its dual.
#[derive(Clone, Debug)]
pub struct HasseGraphH {
    graph: MultiGraph,
    nodes: Vec<HNode>,
    vertex_node: Vec<Option<usize>>,
    face_node: Vec<Option<usize>>,
    edge_node: Vec<usize>,
    /// edges of `H` at each edge node: to `ends.0`, `ends.1`, left face, right face
    links: Vec<[Option<EdgeId>; 4]>,
    embedding: Embedding,
    fstar: FaceId,
    black: Vec<bool>,
}

/// Slot of `v` among the ends of `e`.
fn end_slot(g: &MultiGraph, e: EdgeId, v: VertexId) -> usize {
    usize::from(g.ends(e).0 != v)
}

impl HasseGraphH {
    pub fn new(space: &TreeSpace) -> Result<Self> {
        let g = space.graph();
        let emb = space.embedding();
        let (vstar, fstar) = (space.vstar(), space.fstar());
        let mut nodes = Vec::new();
        let mut vertex_node = vec![None; g.num_vertices()];
        for v in g.vertices().filter(|&v| v != vstar) {
            vertex_node[v] = Some(nodes.len());
            nodes.push(HNode::Vertex(v));
        }
        let mut face_node = vec![None; emb.num_faces()];
        for f in (0..emb.num_faces()).filter(|&f| f != fstar) {
            face_node[f] = Some(nodes.len());
            nodes.push(HNode::Face(f));
        }
        let edge_node: Vec<usize> = g.edges().map(|e| nodes.len() + e).collect();
        nodes.extend(g.edges().map(HNode::Edge));
        ensure(vertex_node.iter().flatten().count() + face_node.iter().flatten().count() == g.num_edges(), || {
            "H is not balanced".into()
        })?;

        let mut edges = Vec::new();
        let mut links = vec![[None; 4]; g.num_edges()];
        for e in g.edges() {
            let (a, b) = g.ends(e);
            let (l, r) = emb.sides(e);
            let others = [vertex_node[a], vertex_node[b], face_node[l], face_node[r]];
            for (slot, other) in others.into_iter().enumerate() {
                if let Some(x) = other {
                    links[e][slot] = Some(edges.len());
                    edges.push((x, edge_node[e]));
                }
            }
        }
        let rot = g.rotation().ok_or(Error::NoRotation)?;
        let mut rotation = vec![Vec::new(); nodes.len()];
        for v in g.vertices() {
            if let Some(x) = vertex_node[v] {
                rotation[x] = rot[v].iter().map(|&e| links[e][end_slot(g, e, v)].expect("kept")).collect();
            }
        }
        for (face, node) in emb.faces.iter().zip(&face_node) {
            if let Some(x) = *node {
                rotation[x] = face
                    .boundary
                    .iter()
                    .rev()
                    .map(|&d| links[d.edge][2 + g.dart_index(d) % 2].expect("kept"))
                    .collect();
            }
        }
        for e in g.edges() {
            rotation[edge_node[e]] = [0, 2, 1, 3].iter().filter_map(|&s| links[e][s]).collect();
        }
        let graph = MultiGraph::new(nodes.len(), &edges)?.with_rotation(rotation)?;
        let embedding = trace_faces(&graph)?;
        let black = nodes.iter().map(|n| matches!(n, HNode::Edge(_))).collect();
        let mut h = HasseGraphH { graph, nodes, vertex_node, face_node, edge_node, links, embedding, fstar: 0, black };
        let mut quads = BTreeSet::new();
        for a in space.all_angles() {
            if a.vertex != vstar && a.face != Some(fstar) {
                quads.insert(h.quad_face(space, &a)?);
            }
        }
        let rest: Vec<FaceId> = (0..h.embedding.num_faces()).filter(|f| !quads.contains(f)).collect();
        ensure(rest.len() == 1, || format!("{} faces of H are not angle quadrilaterals", rest.len()))?;
        h.fstar = rest[0];
        Ok(h)
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn nodes(&self) -> &[HNode] {
        &self.nodes
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    /// The face left by deleting the nodes of `v*` and `f*`.
    pub fn fstar(&self) -> FaceId {
        self.fstar
    }

    /// Edge nodes are black; with this coloring a swing down is a twist down.
    pub fn black(&self) -> &[bool] {
        &self.black
    }

    pub fn node_of(&self, x: HNode) -> Option<usize> {
        match x {
            HNode::Vertex(v) => self.vertex_node.get(v).copied().flatten(),
            HNode::Face(f) => self.face_node.get(f).copied().flatten(),
            HNode::Edge(e) => self.edge_node.get(e).copied(),
        }
    }

    /// The face `{v̄, ē, f̄, ē'}` of an angle away from `v*` and `f*`.
    pub fn quad_face(&self, space: &TreeSpace, a: &Angle) -> Result<FaceId> {
        let g = space.graph();
        let v = self.vertex_node[a.vertex].ok_or(Error::IsAstar)?;
        let f = a.face.unwrap_or_else(|| space.embedding().angle_face(g, a.vertex, a.edge));
        let fx = self.face_node[f].ok_or(Error::IsFstar)?;
        let link = self.links[a.next][end_slot(g, a.next, a.vertex)].expect("vertex node kept");
        let face = self.embedding.left_of(&self.graph, self.graph.dart(link, v));
        let got: BTreeSet<usize> = self.embedding.faces[face].vertices().collect();
        let want: BTreeSet<usize> = [v, fx, self.edge_node[a.edge], self.edge_node[a.next]].into();
        ensure(got == want && self.embedding.faces[face].degree() == 4, || {
            format!("angle {a:?} is not a quadrilateral of H")
        })?;
        Ok(face)
    }

    /// The d-factor space of `H` with all degrees 1.
    pub fn matching_space(&self) -> Result<MatchingSpace> {
        MatchingSpace::new(self.graph.clone(), vec![1; self.nodes.len()], self.fstar, Some(self.black.clone()))
    }

    pub fn perfect_matchings(&self, cfg: &Config) -> Result<Vec<DFactor>> {
        enumerate_dfactors(&self.graph, &vec![1; self.nodes.len()], cfg)
    }
}

/// `H(v*, f*)` of an embedded graph; `NotIncident` when `v*` is not on `f*`.
pub fn hasse_graph_h(g: &MultiGraph, vstar: VertexId, fstar: FaceId) -> Result<HasseGraphH> {
    HasseGraphH::new(&TreeSpace::new(g.clone(), vstar, fstar)?)
}

impl TreeSpace {
    pub fn hasse_graph_h(&self) -> Result<HasseGraphH> {
        HasseGraphH::new(self)
    }

    /// Pairs each vertex node with its outgoing tree edge and each face node
    /// with its outgoing dual edge.
    pub fn temperley(&self, h: &HasseGraphH, p: &ArborescencePair) -> DFactor {
        let g = self.graph();
        let mut m = Vec::with_capacity(h.nodes.len() / 2);
        for v in g.vertices() {
            if let Some(d) = p.out_edge(v) {
                m.push(h.links[d.edge][end_slot(g, d.edge, v)].expect("vertex node kept"));
            }
        }
        for f in 0..self.embedding().num_faces() {
            if let Some(d) = p.out_dual(f) {
                let slot = if self.embedding().sides(d.edge).0 == f { 2 } else { 3 };
                m.push(h.links[d.edge][slot].expect("face node kept"));
            }
        }
        DFactor::from_edges(h.graph.num_edges(), m)
    }

    /// The tree of edges whose nodes are matched to vertex nodes.
    pub fn temperley_inv(&self, h: &HasseGraphH, m: &DFactor) -> Result<ArborescencePair> {
        if m.members().len() != h.graph.num_edges() || m.check(&h.graph, &vec![1; h.nodes.len()]).is_err() {
            return Err(Error::NotPerfectMatching);
        }
        let tree: Vec<EdgeId> =
            self.graph().edges().filter(|&e| h.links[e][..2].iter().flatten().any(|&x| m.contains(x))).collect();
        let p = self
            .arborescence_pair(&tree)
            .map_err(|e| Error::Invariant(format!("matching gives no spanning tree: {e}")))?;
        ensure(self.temperley(h, &p) == *m, || "Temperley round trip failed".into())?;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::spanning_tree_count;
    use crate::families::{generate, FamilySpec};
    use crate::matching::TwistDirection;
    use crate::trees::{enumerate_spanning_trees, SwingDirection};

    fn triangle_with_pendant() -> TreeSpace {
        let g = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 0), (0, 3)])
            .unwrap()
            .with_rotation(vec![vec![0, 3, 2], vec![1, 0], vec![2, 1], vec![3]])
            .unwrap();
        let emb = trace_faces(&g).unwrap();
        let outer = (0..2).find(|&f| emb.faces[f].degree() == 5).unwrap();
        TreeSpace::new(g, 1, outer).unwrap()
    }

    fn spaces() -> Vec<TreeSpace> {
        let mut out: Vec<TreeSpace> = [
            FamilySpec::Cycle { n: 4, k: 0 },
            FamilySpec::Rectangle { width: 3, height: 3 },
            FamilySpec::SquareWithChord,
        ]
        .into_iter()
        .map(|s| {
            let inst = generate(s).unwrap();
            TreeSpace::new(inst.graph, inst.vstar, inst.fstar.unwrap()).unwrap()
        })
        .collect();
        out.push(triangle_with_pendant());
        out
    }

    #[test]
    fn balanced_and_counted() {
        let cfg = Config::default();
        for s in spaces() {
            let h = s.hasse_graph_h().unwrap();
            let g = s.graph();
            assert_eq!(h.nodes().len(), 2 * g.num_edges());
            assert_eq!(h.perfect_matchings(&cfg).unwrap().len() as u128, spanning_tree_count(g));
        }
        let c4 = &spaces()[0];
        assert_eq!(c4.hasse_graph_h().unwrap().nodes().len(), 8);
    }

    #[test]
    fn round_trip_and_commuting_square() {
        let cfg = Config::default();
        for s in spaces() {
            let h = s.hasse_graph_h().unwrap();
            let ms = h.matching_space().ok();
            for t in enumerate_spanning_trees(s.graph(), &cfg).unwrap() {
                let p = s.arborescence_pair(&t).unwrap();
                let m = s.temperley(&h, &p);
                assert_eq!(s.temperley_inv(&h, &m).unwrap(), p);
                for a in s.pivotal_angles(&p) {
                    let q = s.swing(&p, &a, SwingDirection::Down).unwrap();
                    let face = h.quad_face(&s, &a).unwrap();
                    let mq = s.temperley(&h, &q);
                    assert_eq!(m.toggled(h.embedding().faces[face].boundary.iter().map(|d| d.edge)), mq);
                    if let Some(ms) = &ms {
                        assert_eq!(ms.twist(&m, face, TwistDirection::Down).unwrap(), mq);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let s = &spaces()[0];
        let h = s.hasse_graph_h().unwrap();
        let empty = DFactor::from_edges(h.graph().num_edges(), []);
        assert_eq!(s.temperley_inv(&h, &empty), Err(Error::NotPerfectMatching));
        let inst = generate(FamilySpec::Rectangle { width: 3, height: 3 }).unwrap();
        assert!(matches!(hasse_graph_h(&inst.graph, 4, inst.fstar.unwrap()), Err(Error::NotIncident)));
    }
}
