use super::{enumerate_dfactors, find_dfactor, DFactor};
use crate::config::Config;
use crate::error::{ensure, Error, Result};
use crate::graph::{bipartite_coloring, dual_graph, trace_faces, DirectedEdge, Embedding, FaceId, MultiGraph};
use crate::orientation::{circulation_around, CSpace, HasseDiagram, Orientation, OrientationLattice};

/// Standard orientation of the dual: `e⊥` runs from the face left of the
/// black-to-white dart of `e` to the face on its right, so that it circles
/// white vertices counterclockwise and black vertices clockwise.
pub fn standard_orientation(g: &MultiGraph, black: &[bool]) -> Result<Orientation> {
    let mut bits = Vec::with_capacity(g.num_edges());
    for e in g.edges() {
        let (u, v) = g.ends(e);
        if black[u] == black[v] {
            return Err(Error::NotBipartite { witness: vec![u, v] });
        }
        bits.push(black[u]);
    }
    Ok(Orientation::from_bits(bits))
}

/// `R_M`: the standard orientation with the duals of `M` reversed.
pub fn orientation_of_dfactor(g: &MultiGraph, black: &[bool], m: &DFactor) -> Result<Orientation> {
    let standard = standard_orientation(g, black)?;
    Ok(standard.flipped(m.edges()))
}

/// Edges whose duals are not standard in `r`.
pub fn dfactor_of_orientation(g: &MultiGraph, black: &[bool], r: &Orientation) -> Result<DFactor> {
    let standard = standard_orientation(g, black)?;
    Ok(DFactor::from_members(g.edges().map(|e| standard.is_along(e) != r.is_along(e)).collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistDirection {
    Down,
    Up,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceSign {
    /// alternating, with `M` edges traversed black to white
    Positive,
    Negative,
    NotAlternating,
}

/// A bipartite sphere-embedded graph with a degree specification and special
/// face, together with the dual c-orientation space of its d-factors.
#[derive(Clone, Debug)]
pub struct MatchingSpace {
    graph: MultiGraph,
    degrees: Vec<usize>,
    black: Vec<bool>,
    embedding: Embedding,
    dual: MultiGraph,
    fstar: FaceId,
    space: CSpace,
}

impl MatchingSpace {
    /// `black` defaults to the canonical coloring (lowest vertex black).
    pub fn new(graph: MultiGraph, degrees: Vec<usize>, fstar: FaceId, black: Option<Vec<bool>>) -> Result<Self> {
        let black = match black {
            Some(b) => b,
            None => {
                let c = bipartite_coloring(&graph)?;
                graph.vertices().map(|v| c.is_black(v)).collect()
            }
        };
        let embedding = trace_faces(&graph)?;
        if fstar >= embedding.num_faces() {
            return Err(Error::BadParams(format!("face {fstar} does not exist")));
        }
        let (dual, _) = dual_graph(&graph, &embedding)?;
        let witness = find_dfactor(&graph, &degrees)?.ok_or(Error::NoDFactor)?;
        let reference = orientation_of_dfactor(&graph, &black, &witness)?;
        let space = CSpace::new(dual.clone(), reference, fstar)?;
        let ms = MatchingSpace { graph, degrees, black, embedding, dual, fstar, space };
        ms.check_vertex_circulations(&ms.space.circulation().reference)?;
        Ok(ms)
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn black(&self) -> &[bool] {
        &self.black
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn dual(&self) -> &MultiGraph {
        &self.dual
    }

    pub fn fstar(&self) -> FaceId {
        self.fstar
    }

    /// The c-orientation space of the dual with `v* = f*⊥`.
    pub fn space(&self) -> &CSpace {
        &self.space
    }

    pub fn standard(&self) -> Orientation {
        standard_orientation(&self.graph, &self.black).expect("checked bipartite")
    }

    pub fn orientation_of(&self, m: &DFactor) -> Result<Orientation> {
        m.check(&self.graph, &self.degrees)?;
        let r = orientation_of_dfactor(&self.graph, &self.black, m)?;
        self.check_vertex_circulations(&r)?;
        Ok(r)
    }

    pub fn dfactor_of(&self, r: &Orientation) -> Result<DFactor> {
        let m = dfactor_of_orientation(&self.graph, &self.black, r)?;
        m.check(&self.graph, &self.degrees)?;
        Ok(m)
    }

    /// The counterclockwise dual cycle around `v`.
    pub fn vertex_cycle(&self, v: usize) -> Vec<DirectedEdge> {
        let g = &self.graph;
        let mut out = Vec::with_capacity(g.degree(v));
        let start = g.incident(v)[0];
        let mut e = start;
        loop {
            let d = g.dart(e, v);
            out.push(DirectedEdge::new(e, self.embedding.right_of(g, d), self.embedding.left_of(g, d)));
            e = g.ccw_successor(v, e);
            if e == start {
                break;
            }
        }
        out
    }

    /// Circulation of `r` counterclockwise around every vertex is
    /// `deg - 2d` at white vertices and its negative at black ones.
    fn check_vertex_circulations(&self, r: &Orientation) -> Result<()> {
        for v in self.graph.vertices() {
            let c = circulation_around(&self.dual, r, &self.vertex_cycle(v))?;
            let expect = self.graph.degree(v) as i64 - 2 * self.degrees[v] as i64;
            let expect = if self.black[v] { -expect } else { expect };
            ensure(c == expect, || format!("circulation {c} around vertex {v}, expected {expect}"))?;
        }
        Ok(())
    }

    pub fn face_sign(&self, m: &DFactor, f: FaceId) -> FaceSign {
        face_sign(&self.embedding, &self.black, m, f)
    }

    /// Alternating faces split by sign, `f*` included.
    pub fn alternating_faces(&self, m: &DFactor) -> (Vec<FaceId>, Vec<FaceId>) {
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for f in 0..self.embedding.num_faces() {
            match self.face_sign(m, f) {
                FaceSign::Positive => pos.push(f),
                FaceSign::Negative => neg.push(f),
                FaceSign::NotAlternating => {}
            }
        }
        (pos, neg)
    }

    /// Swaps `M` and its complement on the boundary of `f`.
    pub fn twist(&self, m: &DFactor, f: FaceId, dir: TwistDirection) -> Result<DFactor> {
        if f == self.fstar {
            return Err(Error::IsFstar);
        }
        let want = match dir {
            TwistDirection::Down => FaceSign::Positive,
            TwistDirection::Up => FaceSign::Negative,
        };
        if self.face_sign(m, f) != want {
            return Err(Error::NotAlternating(f));
        }
        Ok(m.toggled(self.embedding.faces[f].boundary.iter().map(|d| d.edge)))
    }

    pub fn enumerate(&self, cfg: &Config) -> Result<Vec<DFactor>> {
        enumerate_dfactors(&self.graph, &self.degrees, cfg)
    }

    /// Face heights of `m` minus those of `m0`, asserted equal along two
    /// different spanning trees of the dual.
    pub fn relative_face_height(&self, m: &DFactor, m0: &DFactor) -> Result<Vec<i64>> {
        relative_face_height(&self.graph, &self.dual, &self.black, self.fstar, m, m0)
    }
}

pub(crate) fn face_sign(emb: &Embedding, black: &[bool], m: &DFactor, f: FaceId) -> FaceSign {
    let b = &emb.faces[f].boundary;
    let k = b.len();
    if k % 2 == 1 || k == 0 {
        return FaceSign::NotAlternating;
    }
    let mut edges: Vec<usize> = b.iter().map(|d| d.edge).collect();
    edges.sort_unstable();
    if edges.windows(2).any(|w| w[0] == w[1]) {
        return FaceSign::NotAlternating;
    }
    if (0..k).any(|i| m.contains(b[i].edge) == m.contains(b[(i + 1) % k].edge)) {
        return FaceSign::NotAlternating;
    }
    let first = b.iter().find(|d| m.contains(d.edge)).expect("alternating faces meet M");
    if black[first.tail] {
        FaceSign::Positive
    } else {
        FaceSign::Negative
    }
}

/// Signed crossing count along the breadth-first dual tree from `f*`:
/// crossing an `M` edge adds 1 when its black end is on the left, else
/// subtracts 1. Only differences between two d-factors are independent of
/// the path, see [`relative_face_height`].
pub fn face_height(g: &MultiGraph, dual: &MultiGraph, black: &[bool], fstar: FaceId, m: &DFactor) -> Vec<i64> {
    let (parent, order) = dual.bfs_tree(fstar);
    let mut h = vec![0i64; parent.len()];
    for &f in &order {
        if let Some(p) = parent[f] {
            let d = p.reversed();
            let s = if black[left_vertex(g, dual, d)] { 1 } else { -1 };
            h[f] = h[p.head] + s * i64::from(m.contains(d.edge));
        }
    }
    h
}

/// Primal vertex on the left when crossing `e` along the dual dart `d`.
fn left_vertex(g: &MultiGraph, dual: &MultiGraph, d: DirectedEdge) -> usize {
    let (u, v) = g.ends(d.edge);
    // e⊥ runs from the face left of u->v to the face on its right
    if dual.ends(d.edge).0 == d.tail {
        v
    } else {
        u
    }
}

/// `h_M - h_M0` on faces, computed along a breadth-first and a depth-first
/// tree of the dual and asserted equal.
pub fn relative_face_height(
    g: &MultiGraph,
    dual: &MultiGraph,
    black: &[bool],
    fstar: FaceId,
    m: &DFactor,
    m0: &DFactor,
) -> Result<Vec<i64>> {
    let step = |d: DirectedEdge| {
        let lv = left_vertex(g, dual, d);
        let s = if black[lv] { 1 } else { -1 };
        s * (i64::from(m.contains(d.edge)) - i64::from(m0.contains(d.edge)))
    };
    let accumulate = |parent: &[Option<DirectedEdge>], order: &[usize]| {
        let mut h = vec![0i64; parent.len()];
        for &f in order {
            if let Some(p) = parent[f] {
                h[f] = h[p.head] + step(p.reversed());
            }
        }
        h
    };
    let (bp, bo) = dual.bfs_tree(fstar);
    let (dp, d_o) = dfs_tree(dual, fstar);
    let a = accumulate(&bp, &bo);
    let b = accumulate(&dp, &d_o);
    ensure(a == b, || "relative face heights depend on the dual path".into())?;
    for e in g.edges() {
        let (l, r) = dual.ends(e);
        let d = DirectedEdge::new(e, l, r);
        ensure(a[r] - a[l] == step(d), || format!("relative face heights inconsistent across edge {e}"))?;
    }
    Ok(a)
}

/// Depth-first spanning tree, highest edge ids first.
fn dfs_tree(g: &MultiGraph, root: usize) -> (Vec<Option<DirectedEdge>>, Vec<usize>) {
    let n = g.num_vertices();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &e in g.incident(v).iter().rev() {
            let w = g.other_end(e, v);
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(DirectedEdge::new(e, w, v));
                stack.push(w);
            }
        }
    }
    (parent, order)
}

/// The d-factor lattice with its dual orientation lattice.
#[derive(Clone, Debug)]
pub struct DFactorLattice {
    space: MatchingSpace,
    lattice: OrientationLattice,
    factors: Vec<DFactor>,
}

impl DFactorLattice {
    /// Builds the dual orientation lattice and asserts that it maps onto the
    /// directly enumerated d-factors.
    pub fn new(space: MatchingSpace, cfg: &Config) -> Result<Self> {
        let lattice = OrientationLattice::new(space.space().clone(), cfg)?;
        let factors = lattice.elements().iter().map(|r| space.dfactor_of(r)).collect::<Result<Vec<_>>>()?;
        let mut sorted = factors.clone();
        sorted.sort();
        let direct = space.enumerate(cfg)?;
        ensure(sorted == direct, || {
            format!("{} d-factors from the dual lattice, {} enumerated", sorted.len(), direct.len())
        })?;
        for (m, r) in factors.iter().zip(lattice.elements()) {
            ensure(space.orientation_of(m)? == *r, || "d-factor round trip failed".into())?;
        }
        Ok(DFactorLattice { space, lattice, factors })
    }

    pub fn space(&self) -> &MatchingSpace {
        &self.space
    }

    pub fn lattice(&self) -> &OrientationLattice {
        &self.lattice
    }

    pub fn factors(&self) -> &[DFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn index_of(&self, m: &DFactor) -> Option<usize> {
        self.lattice.index_of(&self.space.orientation_of(m).ok()?)
    }

    /// Covers from twists down at single faces and, for classes of several
    /// dual vertices, from class push-downs. Asserted equal to the dual
    /// orientation lattice's covers, with every positive face other than
    /// `f*` matching a maximal singleton class.
    pub fn hasse(&self) -> Result<HasseDiagram<DFactor>> {
        let sp = self.space.space();
        let p = sp.partition();
        let mut covers = Vec::new();
        for (i, m) in self.factors.iter().enumerate() {
            let r = &self.lattice.elements()[i];
            let maximal = sp.maximal_classes(r);
            let (pos, _) = self.space.alternating_faces(m);
            let singles: Vec<FaceId> =
                maximal.iter().filter(|&&a| p.classes[a].len() == 1).map(|&a| p.classes[a][0]).collect();
            let twistable: Vec<FaceId> = pos.into_iter().filter(|&f| f != self.space.fstar()).collect();
            ensure(singles == twistable, || {
                format!("positive faces {twistable:?} but maximal dual vertices {singles:?}")
            })?;
            for a in maximal {
                let lower = sp.push_down(r, a)?;
                if p.classes[a].len() == 1 {
                    let twisted = self.space.twist(m, p.classes[a][0], TwistDirection::Down)?;
                    ensure(self.space.orientation_of(&twisted)? == lower, || "twist and push-down disagree".into())?;
                }
                let j =
                    self.lattice.index_of(&lower).ok_or_else(|| Error::Invariant("push left the lattice".into()))?;
                covers.push((i, j));
            }
        }
        let h = HasseDiagram::new(self.factors.clone(), covers);
        let dual = self.lattice.hasse()?;
        ensure(h.covers == dual.covers, || "twist covers differ from dual lattice covers".into())?;
        h.with_rank_from(self.lattice.bottom())
    }
}
