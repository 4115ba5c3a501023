//! Spanning trees as pairs of arborescences, pivotal angles and swings.
//!
//! A spanning tree `T` of a graph embedded in the sphere is oriented towards
//! `v*`; the dual tree `{e⊥ : e ∉ T}` is oriented towards `f*⊥`. Swinging
//! down at the angle `e v e'` replaces `v`'s outgoing edge `e` by its
//! clockwise successor `e'`.

mod lattice;
mod outer;
mod temperley;

use std::collections::VecDeque;

use petgraph::unionfind::UnionFind;

use crate::error::{ensure, Error, Result};
use crate::graph::{trace_faces, DirectedEdge, EdgeId, Embedding, FaceId, MultiGraph, VertexId};

pub use lattice::{enumerate_spanning_trees, rank_generating_function, tree_lattice, TreeCover, TreeLattice};
pub use outer::{angle_poset, AnglePoset, OuterHamiltonian};
pub use temperley::{hasse_graph_h, HNode, HasseGraphH};

/// A spanning tree as its sorted edge ids.
pub type Tree = Vec<EdgeId>;

/// The angle from `edge` to its clockwise successor `next` at `vertex`.
/// `face` is the face between them, when the graph is embedded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle {
    pub vertex: VertexId,
    pub edge: EdgeId,
    pub next: EdgeId,
    pub face: Option<FaceId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwingDirection {
    Down,
    Up,
}

/// A spanning tree with its arborescence to `v*` and its dual arborescence to `f*⊥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArborescencePair {
    tree: Tree,
    in_tree: Vec<bool>,
    /// outgoing tree dart of each vertex, `None` at `v*`
    out_edge: Vec<Option<DirectedEdge>>,
    /// outgoing dual dart of each face (tail and head are faces), `None` at `f*`
    out_dual: Vec<Option<DirectedEdge>>,
}

impl ArborescencePair {
    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.in_tree[e]
    }

    pub fn out_edge(&self, v: VertexId) -> Option<DirectedEdge> {
        self.out_edge[v]
    }

    pub fn out_dual(&self, f: FaceId) -> Option<DirectedEdge> {
        self.out_dual[f]
    }

    /// Direction of tree edge `e` towards `v*`.
    pub fn primal_dart(&self, e: EdgeId) -> Option<DirectedEdge> {
        self.out_edge.iter().flatten().find(|d| d.edge == e).copied()
    }

    /// Direction of the dual of non-tree edge `e` towards `f*⊥`, between faces.
    pub fn dual_dart(&self, e: EdgeId) -> Option<DirectedEdge> {
        self.out_dual.iter().flatten().find(|d| d.edge == e).copied()
    }
}

/// `edges` is acyclic and has `|V| - 1` members.
pub fn is_spanning_tree(g: &MultiGraph, edges: &[EdgeId]) -> bool {
    if edges.len() + 1 != g.num_vertices() {
        return false;
    }
    let mut uf = UnionFind::new(g.num_vertices());
    edges.iter().all(|&e| e < g.num_edges() && uf.union(g.ends(e).0, g.ends(e).1))
}

/// Edges of the simple path from `from` to `to` through `tree`.
fn tree_path(g: &MultiGraph, in_tree: &[bool], from: VertexId, to: VertexId) -> Option<Vec<EdgeId>> {
    let mut parent: Vec<Option<EdgeId>> = vec![None; g.num_vertices()];
    let mut seen = vec![false; g.num_vertices()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for (e, w) in g.neighbors(v) {
            if in_tree[e] && !seen[w] {
                seen[w] = true;
                parent[w] = Some(e);
                queue.push_back(w);
            }
        }
    }
    if !seen[to] {
        return None;
    }
    let mut path = Vec::new();
    let mut v = to;
    while v != from {
        let e = parent[v]?;
        path.push(e);
        v = g.other_end(e, v);
    }
    path.reverse();
    Some(path)
}

/// An embedded graph with its special vertex and face.
#[derive(Clone, Debug)]
pub struct TreeSpace {
    graph: MultiGraph,
    embedding: Embedding,
    vstar: VertexId,
    fstar: FaceId,
}

impl TreeSpace {
    /// `NotIncident` when `v*` is not on the boundary of `f*`.
    pub fn new(graph: MultiGraph, vstar: VertexId, fstar: FaceId) -> Result<Self> {
        let embedding = trace_faces(&graph)?;
        if vstar >= graph.num_vertices() {
            return Err(Error::UnknownVertex(vstar as u64));
        }
        if fstar >= embedding.num_faces() {
            return Err(Error::BadParams(format!("face {fstar} does not exist")));
        }
        let on_boundary = embedding.faces[fstar].vertices().any(|v| v == vstar) || graph.num_edges() == 0;
        if !on_boundary {
            return Err(Error::NotIncident);
        }
        Ok(TreeSpace { graph, embedding, vstar, fstar })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn vstar(&self) -> VertexId {
        self.vstar
    }

    pub fn fstar(&self) -> FaceId {
        self.fstar
    }

    /// The angle starting at edge `e` around `v`.
    pub fn angle(&self, v: VertexId, e: EdgeId) -> Result<Angle> {
        if e >= self.graph.num_edges() {
            return Err(Error::UnknownEdge(e as u64));
        }
        if v >= self.graph.num_vertices() || !self.graph.incident(v).contains(&e) {
            return Err(Error::UnknownVertex(v as u64));
        }
        let next = self.graph.cw_successor(v, e);
        Ok(Angle { vertex: v, edge: e, next, face: Some(self.embedding.angle_face(&self.graph, v, e)) })
    }

    /// Every angle, including the degenerate one at a vertex of degree 1.
    pub(crate) fn all_angles(&self) -> Vec<Angle> {
        let rot = self.graph.rotation().expect("embedded");
        self.graph
            .vertices()
            .flat_map(|v| rot[v].iter().map(move |&e| (v, e)))
            .map(|(v, e)| self.angle(v, e).expect("rotation entries are incident"))
            .collect()
    }

    /// Angles with two distinct edges, ordered by vertex then rotation.
    pub fn angles(&self) -> Vec<Angle> {
        self.all_angles().into_iter().filter(|a| a.edge != a.next).collect()
    }

    /// Orients `tree` towards `v*` and its dual towards `f*⊥`.
    pub fn arborescence_pair(&self, tree: &[EdgeId]) -> Result<ArborescencePair> {
        let g = &self.graph;
        if let Some(&e) = tree.iter().find(|&&e| e >= g.num_edges()) {
            return Err(Error::UnknownEdge(e as u64));
        }
        let mut tree = tree.to_vec();
        tree.sort_unstable();
        tree.dedup();
        if !is_spanning_tree(g, &tree) {
            return Err(Error::NotSpanningTree);
        }
        let mut in_tree = vec![false; g.num_edges()];
        for &e in &tree {
            in_tree[e] = true;
        }
        let mut out_edge = vec![None; g.num_vertices()];
        let mut seen = vec![false; g.num_vertices()];
        seen[self.vstar] = true;
        let mut queue = VecDeque::from([self.vstar]);
        while let Some(v) = queue.pop_front() {
            for (e, w) in g.neighbors(v) {
                if in_tree[e] && !seen[w] {
                    seen[w] = true;
                    out_edge[w] = Some(g.dart(e, w));
                    queue.push_back(w);
                }
            }
        }
        let nf = self.embedding.num_faces();
        let mut adj: Vec<Vec<(EdgeId, FaceId)>> = vec![Vec::new(); nf];
        for e in g.edges().filter(|&e| !in_tree[e]) {
            let (l, r) = self.embedding.sides(e);
            adj[l].push((e, r));
            adj[r].push((e, l));
        }
        let mut out_dual = vec![None; nf];
        let mut seen = vec![false; nf];
        seen[self.fstar] = true;
        let mut queue = VecDeque::from([self.fstar]);
        while let Some(f) = queue.pop_front() {
            for &(e, h) in &adj[f] {
                if !seen[h] {
                    seen[h] = true;
                    out_dual[h] = Some(DirectedEdge::new(e, h, f));
                    queue.push_back(h);
                }
            }
        }
        ensure(seen.iter().all(|&s| s), || "dual of a spanning tree does not span".into())?;
        ensure(out_dual.iter().flatten().count() + tree.len() == g.num_edges(), || {
            "dual tree is not the complement".into()
        })?;
        Ok(ArborescencePair { tree, in_tree, out_edge, out_dual })
    }

    fn face_of(&self, a: &Angle) -> FaceId {
        a.face.unwrap_or_else(|| self.embedding.angle_face(&self.graph, a.vertex, a.edge))
    }

    /// `e⃗ ∈ A`, `e⃗' ∉ A`, `e⃗'⊥ ∈ A⊥`, `e⃗⊥ ∉ A⊥`, with primal darts pointing
    /// away from `v` and dual darts away from `f⊥`.
    pub fn is_positively_pivotal(&self, p: &ArborescencePair, a: &Angle) -> bool {
        let f = self.face_of(a);
        let primal = |e: EdgeId| p.out_edge[a.vertex].is_some_and(|d| d.edge == e);
        let dual = |e: EdgeId| p.out_dual[f].is_some_and(|d| d.edge == e);
        a.edge != a.next && primal(a.edge) && !primal(a.next) && dual(a.next) && !dual(a.edge)
    }

    /// The mirror test: `e⃗' ∈ A`, `e⃗ ∉ A`, `e⃗⊥ ∈ A⊥`, `e⃗'⊥ ∉ A⊥`.
    pub fn is_negatively_pivotal(&self, p: &ArborescencePair, a: &Angle) -> bool {
        let f = self.face_of(a);
        let primal = |e: EdgeId| p.out_edge[a.vertex].is_some_and(|d| d.edge == e);
        let dual = |e: EdgeId| p.out_dual[f].is_some_and(|d| d.edge == e);
        a.edge != a.next && primal(a.next) && !primal(a.edge) && dual(a.edge) && !dual(a.next)
    }

    pub fn pivotal_angles(&self, p: &ArborescencePair) -> Vec<Angle> {
        self.angles().into_iter().filter(|a| self.is_positively_pivotal(p, a)).collect()
    }

    /// The five defining conditions of a positively pivotal angle, evaluated
    /// directly on the undirected tree.
    pub fn pivotal_conditions(&self, tree: &[EdgeId], a: &Angle) -> [bool; 5] {
        let g = &self.graph;
        let mut in_tree = vec![false; g.num_edges()];
        for &e in tree {
            in_tree[e] = true;
        }
        let c1 = a.edge != a.next && in_tree[a.edge] && !in_tree[a.next];
        if !c1 {
            return [false; 5];
        }
        let mut swapped = in_tree.clone();
        swapped[a.edge] = false;
        swapped[a.next] = true;
        let t2: Vec<EdgeId> = g.edges().filter(|&e| swapped[e]).collect();
        let c2 = is_spanning_tree(g, &t2);
        let on_path =
            |mask: &[bool], e: EdgeId| tree_path(g, mask, a.vertex, self.vstar).is_some_and(|path| path.contains(&e));
        let c3 = on_path(&in_tree, a.edge);
        let c4 = c2 && on_path(&swapped, a.next);
        let c5 = c2 && self.separates(&in_tree, a.next, self.face_of(a));
        [c1, c2, c3, c4, c5]
    }

    /// The cycle closed by adding `e` to the tree separates `f` from `f*`.
    fn separates(&self, in_tree: &[bool], e: EdgeId, f: FaceId) -> bool {
        let g = &self.graph;
        let (a, b) = g.ends(e);
        let Some(mut cycle) = tree_path(g, in_tree, a, b) else { return false };
        cycle.push(e);
        let mut cut = vec![false; g.num_edges()];
        for &c in &cycle {
            cut[c] = true;
        }
        let nf = self.embedding.num_faces();
        let mut seen = vec![false; nf];
        seen[f] = true;
        let mut queue = VecDeque::from([f]);
        while let Some(x) = queue.pop_front() {
            for d in &self.embedding.faces[x].boundary {
                let y = self.embedding.right_of(g, *d);
                if !cut[d.edge] && !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        !seen[self.fstar]
    }

    /// Checks the four-membership test against the five conditions at every
    /// angle, and negative pivots against positive pivots of the swapped tree.
    pub fn check_pivotal(&self, p: &ArborescencePair) -> Result<()> {
        for a in self.angles() {
            let direct = self.pivotal_conditions(&p.tree, &a).iter().all(|&c| c);
            ensure(direct == self.is_positively_pivotal(p, &a), || {
                format!("four-membership test disagrees with the definition at {a:?} for tree {:?}", p.tree)
            })?;
            let mut swapped: Tree = p.tree.iter().copied().filter(|&e| e != a.next).collect();
            swapped.push(a.edge);
            let negative =
                p.contains(a.next) && !p.contains(a.edge) && self.pivotal_conditions(&swapped, &a).iter().all(|&c| c);
            ensure(negative == self.is_negatively_pivotal(p, &a), || {
                format!("negative pivot test disagrees at {a:?} for tree {:?}", p.tree)
            })?;
        }
        Ok(())
    }

    /// `T △ {e, e'}`; `NotPivotal` unless the angle is positively (down) or
    /// negatively (up) pivotal.
    pub fn swing(&self, p: &ArborescencePair, a: &Angle, dir: SwingDirection) -> Result<ArborescencePair> {
        let ok = match dir {
            SwingDirection::Down => self.is_positively_pivotal(p, a),
            SwingDirection::Up => self.is_negatively_pivotal(p, a),
        };
        if !ok {
            return Err(Error::NotPivotal);
        }
        let mut t: Tree = p.tree.iter().copied().filter(|&e| e != a.edge && e != a.next).collect();
        t.push(if p.contains(a.edge) { a.next } else { a.edge });
        self.arborescence_pair(&t)
    }

    /// Number of swings down at `v` possible in succession from `p`.
    pub fn consecutive_swings(&self, p: &ArborescencePair, v: VertexId) -> Result<usize> {
        let mut p = p.clone();
        let mut count = 0;
        while let Some(out) = p.out_edge[v] {
            let a = self.angle(v, out.edge)?;
            if !self.is_positively_pivotal(&p, &a) || count > self.graph.degree(v) {
                break;
            }
            p = self.swing(&p, &a, SwingDirection::Down)?;
            count += 1;
        }
        Ok(count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, tree_star, FamilySpec};

    fn space(spec: FamilySpec) -> TreeSpace {
        let inst = generate(spec).unwrap();
        TreeSpace::new(inst.graph, inst.vstar, inst.fstar.unwrap()).unwrap()
    }

    #[test]
    fn c4_path_arborescence() {
        let s = space(FamilySpec::Cycle { n: 4, k: 2 });
        let p = s.arborescence_pair(&[0, 1, 2]).unwrap();
        assert_eq!(p.out_edge(0), None);
        assert_eq!(p.out_edge(3).unwrap().head, 2);
        assert_eq!(p.out_edge(1).unwrap().head, 0);
        let inner = 1 - s.fstar();
        assert_eq!(p.out_dual(inner), Some(DirectedEdge::new(3, inner, s.fstar())));
        assert_eq!(p.dual_dart(3).map(|d| d.head), Some(s.fstar()));
        assert_eq!(p.primal_dart(0).map(|d| d.head), Some(0));
    }

    #[test]
    fn star_points_inward() {
        let g = tree_star(4);
        let s = TreeSpace::new(g, 0, 0).unwrap();
        let p = s.arborescence_pair(&[0, 1, 2, 3]).unwrap();
        assert!((1..5).all(|v| p.out_edge(v).unwrap().head == 0));
    }

    #[test]
    fn rejects_cycles_and_bad_roots() {
        let s = space(FamilySpec::Cycle { n: 4, k: 2 });
        assert_eq!(s.arborescence_pair(&[0, 1, 2, 3]), Err(Error::NotSpanningTree));
        assert_eq!(s.arborescence_pair(&[0, 1]), Err(Error::NotSpanningTree));
        let inst = generate(FamilySpec::Rectangle { width: 3, height: 3 }).unwrap();
        let inner = (0..5).find(|&f| f != inst.fstar.unwrap()).unwrap();
        assert!(matches!(TreeSpace::new(inst.graph.clone(), 4, inst.fstar.unwrap()), Err(Error::NotIncident)));
        assert!(TreeSpace::new(inst.graph, 4, inner).is_ok());
    }

    #[test]
    fn c4_has_one_pivot_per_tree_but_the_bottom() {
        let s = space(FamilySpec::Cycle { n: 4, k: 2 });
        let mut counts = Vec::new();
        for missing in 0..4 {
            let t: Tree = (0..4).filter(|&e| e != missing).collect();
            let p = s.arborescence_pair(&t).unwrap();
            s.check_pivotal(&p).unwrap();
            counts.push(s.pivotal_angles(&p).len());
        }
        counts.sort();
        assert_eq!(counts, vec![0, 1, 1, 1]);
    }

    #[test]
    fn swings_invert() {
        let s = space(FamilySpec::SquareWithChord);
        for t in enumerate_spanning_trees(s.graph(), &Default::default()).unwrap() {
            let p = s.arborescence_pair(&t).unwrap();
            s.check_pivotal(&p).unwrap();
            for a in s.pivotal_angles(&p) {
                let q = s.swing(&p, &a, SwingDirection::Down).unwrap();
                assert_eq!(s.swing(&q, &a, SwingDirection::Up).unwrap(), p);
                assert_eq!(s.swing(&q, &a, SwingDirection::Down), Err(Error::NotPivotal));
            }
            for v in s.graph().vertices() {
                assert!(s.consecutive_swings(&p, v).unwrap() < s.graph().degree(v));
            }
        }
    }
}
