//! Outer-Hamiltonian graphs: swings without a dual (crossings allowed) and
//! the angle poset of the planar case.

use std::collections::{HashMap, VecDeque};

use super::{enumerate_spanning_trees, is_spanning_tree, tree_path, Angle, Tree, TreeLattice, TreeSpace};
use crate::config::Config;
use crate::error::{ensure, Error, Result};
use crate::families::Instance;
use crate::graph::{trace_faces, DirectedEdge, EdgeId, FaceId, MultiGraph, VertexId};
use crate::orientation::HasseDiagram;
use crate::poset::Poset;

/// A graph drawn with its vertices in convex position, listed clockwise in
/// `cycle`; edges may cross. The outer angle at each vertex runs from the
/// edge to its predecessor on the cycle to the edge to its successor.
#[derive(Clone, Debug)]
pub struct OuterHamiltonian {
    graph: MultiGraph,
    cycle: Vec<VertexId>,
    /// `cycle_edges[i]` joins `cycle[i]` and `cycle[i + 1]`
    cycle_edges: Vec<EdgeId>,
    position: Vec<usize>,
    vstar: VertexId,
}

fn not_oh(msg: impl Into<String>) -> Error {
    Error::NotOuterHamiltonian(msg.into())
}

impl OuterHamiltonian {
    pub fn new(graph: MultiGraph, cycle: Vec<VertexId>, vstar: VertexId) -> Result<Self> {
        let n = graph.num_vertices();
        if !graph.has_rotation() {
            return Err(Error::NoRotation);
        }
        let mut position = vec![usize::MAX; n];
        for (i, &v) in cycle.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(not_oh("cycle does not list every vertex once"));
            }
            position[v] = i;
        }
        if cycle.len() != n || n < 3 {
            return Err(not_oh("cycle does not list every vertex once"));
        }
        if vstar >= n {
            return Err(Error::UnknownVertex(vstar as u64));
        }
        let mut cycle_edges = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = (cycle[i], cycle[(i + 1) % n]);
            let e = graph
                .neighbors(a)
                .find(|&(_, w)| w == b)
                .map(|(e, _)| e)
                .ok_or_else(|| not_oh(format!("no edge between {a} and {b}")))?;
            cycle_edges.push(e);
        }
        for i in 0..n {
            let (before, after) = (cycle_edges[(i + n - 1) % n], cycle_edges[i]);
            if graph.cw_successor(cycle[i], before) != after {
                return Err(not_oh(format!("outer angle at {} is not between its cycle edges", cycle[i])));
            }
        }
        Ok(OuterHamiltonian { graph, cycle, cycle_edges, position, vstar })
    }

    /// Uses the boundary of `f*` when present, else the vertex order.
    pub fn from_instance(inst: &Instance) -> Result<Self> {
        match inst.fstar {
            Some(f) => OuterHamiltonian::planar(&inst.graph, inst.vstar, f),
            None => OuterHamiltonian::new(inst.graph.clone(), inst.graph.vertices().collect(), inst.vstar),
        }
    }

    /// The boundary of `f*` must be a Hamiltonian cycle.
    pub fn planar(g: &MultiGraph, vstar: VertexId, fstar: FaceId) -> Result<Self> {
        let emb = trace_faces(g)?;
        let face = emb.faces.get(fstar).ok_or_else(|| Error::BadParams(format!("face {fstar} does not exist")))?;
        let cycle: Vec<VertexId> = face.vertices().collect();
        OuterHamiltonian::new(g.clone(), cycle, vstar)
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn cycle(&self) -> &[VertexId] {
        &self.cycle
    }

    pub fn vstar(&self) -> VertexId {
        self.vstar
    }

    /// `e_1`, leaving `v*` clockwise, and `e_n`, reaching it.
    pub fn end_edges(&self) -> (EdgeId, EdgeId) {
        let n = self.cycle.len();
        let i = self.position[self.vstar];
        (self.cycle_edges[i], self.cycle_edges[(i + n - 1) % n])
    }

    /// The Hamiltonian paths without `e_n` and without `e_1`.
    pub fn extremes(&self) -> (Tree, Tree) {
        let (e1, en) = self.end_edges();
        let path = |skip: EdgeId| {
            let mut t: Tree = self.cycle_edges.iter().copied().filter(|&e| e != skip).collect();
            t.sort_unstable();
            t
        };
        (path(en), path(e1))
    }

    fn is_outer(&self, v: VertexId, e: EdgeId) -> bool {
        let n = self.cycle.len();
        e == self.cycle_edges[(self.position[v] + n - 1) % n]
    }

    /// Angles other than the outer ones, by vertex then rotation.
    pub fn angles(&self) -> Vec<Angle> {
        let rot = self.graph.rotation().expect("checked");
        let mut out = Vec::new();
        for v in self.graph.vertices() {
            for &e in &rot[v] {
                let next = self.graph.cw_successor(v, e);
                if next != e && !self.is_outer(v, e) {
                    out.push(Angle { vertex: v, edge: e, next, face: None });
                }
            }
        }
        out
    }

    /// Conditions (1)–(4): `e ∈ T`, `e' ∉ T`, the swap is a tree, and the
    /// path from `v` to `v*` uses `e` before and `e'` after.
    pub fn is_pivotal4(&self, tree: &[EdgeId], a: &Angle) -> bool {
        let g = &self.graph;
        if a.edge == a.next || self.is_outer(a.vertex, a.edge) {
            return false;
        }
        let mut in_tree = vec![false; g.num_edges()];
        for &e in tree {
            in_tree[e] = true;
        }
        if !in_tree[a.edge] || in_tree[a.next] {
            return false;
        }
        let mut swapped = in_tree.clone();
        swapped[a.edge] = false;
        swapped[a.next] = true;
        let t2: Vec<EdgeId> = g.edges().filter(|&e| swapped[e]).collect();
        let uses = |mask: &[bool], e: EdgeId| tree_path(g, mask, a.vertex, self.vstar).is_some_and(|p| p.contains(&e));
        is_spanning_tree(g, &t2) && uses(&in_tree, a.edge) && uses(&swapped, a.next)
    }

    /// Swing down through `a`; `NotPivotal4` unless (1)–(4) hold.
    pub fn swing_xing(&self, tree: &[EdgeId], a: &Angle) -> Result<Tree> {
        if !self.is_pivotal4(tree, a) {
            return Err(Error::NotPivotal4);
        }
        let mut t: Tree = tree.iter().copied().filter(|&e| e != a.edge).collect();
        t.push(a.next);
        t.sort_unstable();
        Ok(t)
    }

    /// Spanning trees under the transitive closure of swinging down, ranked
    /// from the bottom. `NotGraded` when the order has no rank function.
    pub fn swing_poset(&self, cfg: &Config) -> Result<HasseDiagram<Tree>> {
        let trees = enumerate_spanning_trees(&self.graph, cfg)?;
        let index: HashMap<&Tree, usize> = trees.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let angles = self.angles();
        let mut swings = Vec::new();
        for (i, t) in trees.iter().enumerate() {
            for a in &angles {
                if let Ok(t2) = self.swing_xing(t, a) {
                    swings.push((i, index[&t2]));
                }
            }
        }
        let poset = Poset::from_covers(trees.len(), &swings)?;
        let rank = poset.ranks()?;
        let mut h = HasseDiagram::new(trees, poset.covers());
        h.rank = Some(rank);
        Ok(h)
    }
}

/// Angles at vertices other than `v*` inside bounded faces, with arrows
/// `(from, to)` between them, as prescribed for planar outer-Hamiltonian
/// graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnglePoset {
    pub angles: Vec<Angle>,
    pub arrows: Vec<(usize, usize)>,
}

impl AnglePoset {
    /// An arrow runs from an angle to one below it.
    pub fn poset(&self) -> Result<Poset> {
        Poset::from_covers(self.angles.len(), &self.arrows)
    }
}

/// The angle poset of a planar outer-Hamiltonian graph, checked against
/// the join-irreducibles of the tree lattice (each labelled by the angle of
/// its only swing down).
pub fn angle_poset(g: &MultiGraph, vstar: VertexId, fstar: FaceId, cfg: &Config) -> Result<AnglePoset> {
    let oh = OuterHamiltonian::planar(g, vstar, fstar)?;
    let space = TreeSpace::new(g.clone(), vstar, fstar)?;
    let emb = space.embedding();
    let (_, en) = oh.end_edges();

    // modified dual: bounded faces plus the single edge from e_n to f*
    let nf = emb.num_faces();
    let mut adj: Vec<Vec<(EdgeId, FaceId)>> = vec![Vec::new(); nf];
    for e in g.edges() {
        let (l, r) = emb.sides(e);
        if (l != fstar && r != fstar) || e == en {
            adj[l].push((e, r));
            adj[r].push((e, l));
        }
    }
    let mut out: Vec<Option<EdgeId>> = vec![None; nf];
    let mut seen = vec![false; nf];
    seen[fstar] = true;
    let mut queue = VecDeque::from([fstar]);
    while let Some(f) = queue.pop_front() {
        for &(e, h) in &adj[f] {
            ensure(!seen[h] || out[f] == Some(e), || "modified dual is not a tree".into())?;
            if !seen[h] {
                seen[h] = true;
                out[h] = Some(e);
                queue.push_back(h);
            }
        }
    }
    ensure(seen.iter().all(|&s| s), || "modified dual does not span".into())?;

    let angles: Vec<Angle> =
        space.angles().into_iter().filter(|a| a.vertex != vstar && a.face != Some(fstar)).collect();
    let index: HashMap<(VertexId, EdgeId), usize> =
        angles.iter().enumerate().map(|(i, a)| ((a.vertex, a.edge), i)).collect();
    let mut arrows = Vec::new();
    for (i, a) in angles.iter().enumerate() {
        if let Some(&j) = index.get(&(a.vertex, a.next)) {
            arrows.push((i, j));
        }
    }
    for f in (0..nf).filter(|&f| f != fstar) {
        let boundary = &emb.faces[f].boundary;
        let k = boundary.len();
        for (t, d) in boundary.iter().enumerate() {
            if Some(d.edge) == out[f] {
                continue;
            }
            let prev: DirectedEdge = boundary[(t + k - 1) % k];
            // clockwise around f: from the angle at d.head to the angle at d.tail
            let from = index.get(&(d.head, d.edge));
            let to = index.get(&(d.tail, prev.edge));
            if let (Some(&x), Some(&y)) = (from, to) {
                arrows.push((x, y));
            }
        }
    }
    arrows.sort_unstable();
    arrows.dedup();
    let ap = AnglePoset { angles, arrows };
    check_against_lattice(&ap, &TreeLattice::new(space, cfg)?)?;
    Ok(ap)
}

fn check_against_lattice(ap: &AnglePoset, lattice: &TreeLattice) -> Result<()> {
    let prescribed = ap.poset()?;
    let lp = lattice.hasse().poset()?;
    let ji = lattice.join_irreducible_angles();
    ensure(ji.len() == ap.angles.len(), || format!("{} join-irreducibles but {} angles", ji.len(), ap.angles.len()))?;
    let label: Vec<usize> = ji
        .iter()
        .map(|(_, a)| ap.angles.iter().position(|b| (b.vertex, b.edge) == (a.vertex, a.edge)))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Invariant("a join-irreducible swings at an unlisted angle".into()))?;
    for (x, &(i, _)) in ji.iter().enumerate() {
        for (y, &(j, _)) in ji.iter().enumerate() {
            ensure(lp.less(i, j) == prescribed.less(label[x], label[y]), || {
                format!("angle order disagrees at {:?} and {:?}", ap.angles[label[x]], ap.angles[label[y]])
            })?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilySpec};
    use crate::trees::rank_generating_function;

    fn poly_power(n: usize) -> Vec<u64> {
        let mut p = vec![1u64];
        for _ in 0..n - 2 {
            let mut q = vec![0u64; p.len() + n - 1];
            for (i, &c) in p.iter().enumerate() {
                for j in 0..n {
                    q[i + j] += c;
                }
            }
            p = q;
        }
        p
    }

    #[test]
    fn kn_rank_polynomials() {
        for n in 3..6 {
            let inst = generate(FamilySpec::KnOuter { n }).unwrap();
            let oh = OuterHamiltonian::from_instance(&inst).unwrap();
            let h = oh.swing_poset(&Config::default()).unwrap();
            assert_eq!(h.rank_generating_function().unwrap(), poly_power(n));
            assert_eq!(rank_generating_function(&h).unwrap(), poly_power(n));
            let (lo, hi) = oh.extremes();
            let rank = h.rank.as_ref().unwrap();
            assert_eq!(rank[h.elements.iter().position(|t| *t == lo).unwrap()], 0);
            assert_eq!(rank[h.elements.iter().position(|t| *t == hi).unwrap()], n * (n - 2) - (n - 2));
        }
    }

    #[test]
    fn planar_swings_need_no_fifth_condition() {
        for spec in [FamilySpec::Cycle { n: 5, k: 0 }, FamilySpec::SquareWithChord] {
            let inst = generate(spec).unwrap();
            let oh = OuterHamiltonian::from_instance(&inst).unwrap();
            let s = TreeSpace::new(inst.graph.clone(), inst.vstar, inst.fstar.unwrap()).unwrap();
            let l = TreeLattice::new(s.clone(), &Config::default()).unwrap();
            for t in l.trees() {
                let p = s.arborescence_pair(t).unwrap();
                let four: Vec<Angle> = oh
                    .angles()
                    .into_iter()
                    .filter(|a| oh.is_pivotal4(t, a))
                    .map(|a| s.angle(a.vertex, a.edge).unwrap())
                    .collect();
                assert_eq!(four, s.pivotal_angles(&p));
            }
            let (lo, hi) = oh.extremes();
            assert_eq!(l.trees()[l.bottom()], lo);
            assert_eq!(l.trees()[l.top()], hi);
        }
    }

    #[test]
    fn angle_posets() {
        let cfg = Config::default();
        let chain_len = |spec| {
            let inst = generate(spec).unwrap();
            let ap = angle_poset(&inst.graph, inst.vstar, inst.fstar.unwrap(), &cfg).unwrap();
            (ap.angles.len(), ap.poset().unwrap().covers().len())
        };
        assert_eq!(chain_len(FamilySpec::Cycle { n: 4, k: 0 }), (3, 2));
        assert_eq!(chain_len(FamilySpec::Cycle { n: 3, k: 0 }), (2, 1));
        let (n, _) = chain_len(FamilySpec::SquareWithChord);
        assert_eq!(n, 4);
    }

    #[test]
    fn rejects_non_outer_hamiltonian() {
        let inst = generate(FamilySpec::Rectangle { width: 3, height: 3 }).unwrap();
        let r = angle_poset(&inst.graph, inst.vstar, inst.fstar.unwrap(), &Config::default());
        assert!(matches!(r, Err(Error::NotOuterHamiltonian(_))));
        let k4 = generate(FamilySpec::KnOuter { n: 4 }).unwrap();
        assert!(OuterHamiltonian::new(k4.graph.clone(), vec![0, 2, 1, 3], 0).is_err());
        let oh = OuterHamiltonian::from_instance(&k4).unwrap();
        let a = oh.angles()[0];
        let (lo, _) = oh.extremes();
        if !oh.is_pivotal4(&lo, &a) {
            assert_eq!(oh.swing_xing(&lo, &a), Err(Error::NotPivotal4));
        }
    }
}
