//! d-factors of bipartite embedded graphs and their lattice, pulled back
//! from c-orientations of the dual graph.

mod asm;
mod domino;
mod dual;

use std::fmt;

use crate::config::Config;
use crate::error::{ensure, Error, Result};
use crate::graph::{DirectedEdge, EdgeId, MultiGraph, VertexId};
use crate::par;

pub use asm::{asm_of_orientation, permutation_matrix, AsmMatrix};
pub use domino::{domino_height, Region};
pub(crate) use dual::face_sign;
pub use dual::{
    dfactor_of_orientation, face_height, orientation_of_dfactor, relative_face_height, standard_orientation,
    DFactorLattice, FaceSign, MatchingSpace, TwistDirection,
};

/// Required degree at every vertex.
pub type DegreeSpec = Vec<usize>;

/// An edge subset, stored as one membership bit per edge.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DFactor {
    members: Vec<bool>,
}

impl fmt::Debug for DFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.edges()).finish()
    }
}

impl DFactor {
    pub fn from_members(members: Vec<bool>) -> Self {
        DFactor { members }
    }

    pub fn from_edges(num_edges: usize, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut members = vec![false; num_edges];
        for e in edges {
            members[e] = true;
        }
        DFactor { members }
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.members[e]
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.members.iter().enumerate().filter(|(_, &b)| b).map(|(e, _)| e)
    }

    pub fn len(&self) -> usize {
        self.edges().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn toggled(&self, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut members = self.members.clone();
        for e in edges {
            members[e] = !members[e];
        }
        DFactor { members }
    }

    /// Degree of every vertex in the subgraph.
    pub fn degrees(&self, g: &MultiGraph) -> Vec<usize> {
        let mut deg = vec![0; g.num_vertices()];
        for e in self.edges() {
            let (u, v) = g.ends(e);
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// `WrongDegrees` at the first vertex whose degree differs from `d`.
    pub fn check(&self, g: &MultiGraph, d: &[usize]) -> Result<()> {
        if self.members.len() != g.num_edges() {
            return Err(Error::Invariant("d-factor has the wrong number of edges".into()));
        }
        match self.degrees(g).iter().zip(d).position(|(a, b)| a != b) {
            Some(v) => Err(Error::WrongDegrees(v)),
            None => Ok(()),
        }
    }
}

fn check_spec(g: &MultiGraph, d: &[usize]) -> Result<()> {
    if d.len() != g.num_vertices() {
        return Err(Error::BadParams(format!("{} degrees for {} vertices", d.len(), g.num_vertices())));
    }
    match g.vertices().find(|&v| d[v] > g.degree(v)) {
        Some(v) => Err(Error::WrongDegrees(v)),
        None => Ok(()),
    }
}

/// Every d-factor by depth-first search over edges in id order.
pub fn enumerate_backtrack(g: &MultiGraph, d: &[usize], cfg: &Config) -> Result<Vec<DFactor>> {
    check_spec(g, d)?;
    let mut out = Vec::new();
    let mut search = Search {
        g,
        need: d.to_vec(),
        open: g.vertices().map(|v| g.degree(v)).collect(),
        members: vec![false; g.num_edges()],
        limit: usize::MAX,
    };
    search.run(0, &mut |m| {
        out.push(DFactor::from_members(m.to_vec()));
        if out.len() > cfg.max_elements {
            return Err(Error::TooLarge { what: "d-factors", size: out.len(), cap: cfg.max_elements });
        }
        Ok(())
    })?;
    out.sort();
    Ok(out)
}

/// Some d-factor, if any exists.
pub fn find_dfactor(g: &MultiGraph, d: &[usize]) -> Result<Option<DFactor>> {
    check_spec(g, d)?;
    let mut found = None;
    let mut search = Search {
        g,
        need: d.to_vec(),
        open: g.vertices().map(|v| g.degree(v)).collect(),
        members: vec![false; g.num_edges()],
        limit: 1,
    };
    search.run(0, &mut |m| {
        found = Some(DFactor::from_members(m.to_vec()));
        Ok(())
    })?;
    Ok(found)
}

struct Search<'a> {
    g: &'a MultiGraph,
    /// edges still required at each vertex
    need: Vec<usize>,
    /// undecided incident edges at each vertex
    open: Vec<usize>,
    members: Vec<bool>,
    limit: usize,
}

impl Search<'_> {
    /// Returns the number of solutions reported below this node.
    fn run(&mut self, e: EdgeId, report: &mut dyn FnMut(&[bool]) -> Result<()>) -> Result<usize> {
        if e == self.g.num_edges() {
            if self.need.iter().all(|&x| x == 0) {
                report(&self.members)?;
                return Ok(1);
            }
            return Ok(0);
        }
        let (u, v) = self.g.ends(e);
        self.open[u] -= 1;
        self.open[v] -= 1;
        let mut found = 0;
        if self.need[u] > 0 && self.need[v] > 0 {
            self.need[u] -= 1;
            self.need[v] -= 1;
            self.members[e] = true;
            if self.need[u] <= self.open[u] && self.need[v] <= self.open[v] {
                found += self.run(e + 1, report)?;
            }
            self.members[e] = false;
            self.need[u] += 1;
            self.need[v] += 1;
        }
        if found < self.limit && self.need[u] <= self.open[u] && self.need[v] <= self.open[v] {
            found += self.run(e + 1, report)?;
        }
        self.open[u] += 1;
        self.open[v] += 1;
        Ok(found)
    }
}

/// Every d-factor by filtering all edge subsets.
pub fn enumerate_brute_force(g: &MultiGraph, d: &[usize], cfg: &Config) -> Result<Vec<DFactor>> {
    check_spec(g, d)?;
    let k = g.num_edges();
    if k > cfg.max_edges || k > 63 {
        return Err(Error::TooLarge { what: "edges", size: k, cap: cfg.max_edges.min(63) });
    }
    let vmask: Vec<u64> = g.vertices().map(|v| g.incident(v).iter().fold(0u64, |acc, &e| acc | 1 << e)).collect();
    let keep = |x: u64| vmask.iter().zip(d).all(|(&m, &dv)| (x & m).count_ones() as usize == dv);
    let masks = par::filter_range(1u64 << k, cfg.execution, keep);
    let mut out: Vec<DFactor> =
        masks.into_iter().map(|x| DFactor::from_members((0..k).map(|e| x >> e & 1 == 1).collect())).collect();
    out.sort();
    Ok(out)
}

/// Backtracking, cross-checked by brute force when the edge cap allows.
pub fn enumerate_dfactors(g: &MultiGraph, d: &[usize], cfg: &Config) -> Result<Vec<DFactor>> {
    let all = enumerate_backtrack(g, d, cfg)?;
    if g.num_edges() <= cfg.max_edges {
        let brute = enumerate_brute_force(g, d, cfg)?;
        ensure(brute == all, || format!("brute force found {} d-factors, search {}", brute.len(), all.len()))?;
    }
    Ok(all)
}

/// Edges split by how they occur across all d-factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Live {
    /// in some but not all d-factors
    pub kept: Vec<EdgeId>,
    /// in every d-factor
    pub forced: Vec<EdgeId>,
    /// in no d-factor
    pub impossible: Vec<EdgeId>,
    /// `d` minus the forced edges at each vertex
    pub degrees: DegreeSpec,
}

/// Removes edges in no d-factor and contracts edges in all of them.
///
/// The kept edges may form a disconnected subgraph, so the result is given
/// as edge sets on the original vertex set.
pub fn prune_live(g: &MultiGraph, d: &[usize], cfg: &Config) -> Result<Live> {
    let all = enumerate_backtrack(g, d, cfg)?;
    if all.is_empty() {
        return Err(Error::NoDFactor);
    }
    let mut count = vec![0usize; g.num_edges()];
    for m in &all {
        for e in m.edges() {
            count[e] += 1;
        }
    }
    let mut live = Live { kept: Vec::new(), forced: Vec::new(), impossible: Vec::new(), degrees: d.to_vec() };
    for e in g.edges() {
        if count[e] == 0 {
            live.impossible.push(e);
        } else if count[e] == all.len() {
            live.forced.push(e);
            let (u, v) = g.ends(e);
            live.degrees[u] -= 1;
            live.degrees[v] -= 1;
        } else {
            live.kept.push(e);
        }
    }
    Ok(live)
}

/// The union of `m` (directed black to white) and `m0` (white to black),
/// without common edges, split into directed cycles. Both must be perfect
/// matchings.
pub fn superimpose(g: &MultiGraph, black: &[bool], m: &DFactor, m0: &DFactor) -> Result<Vec<Vec<DirectedEdge>>> {
    let ones = vec![1; g.num_vertices()];
    m.check(g, &ones)?;
    m0.check(g, &ones)?;
    let mut out_m: Vec<Option<DirectedEdge>> = vec![None; g.num_vertices()];
    for e in g.edges() {
        if m.contains(e) == m0.contains(e) {
            continue;
        }
        let (u, v) = g.ends(e);
        let (b, w) = if black[u] { (u, v) } else { (v, u) };
        let d = if m.contains(e) { DirectedEdge::new(e, b, w) } else { DirectedEdge::new(e, w, b) };
        out_m[d.tail] = Some(d);
    }
    let mut used = vec![false; g.num_vertices()];
    let mut cycles = Vec::new();
    for start in g.vertices() {
        if used[start] || out_m[start].is_none() {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v: VertexId = start;
        while !used[v] {
            used[v] = true;
            let d = out_m[v].ok_or(Error::WrongDegrees(v))?;
            cycle.push(d);
            v = d.head;
        }
        ensure(v == start, || "superposition is not a union of cycles".into())?;
        cycles.push(cycle);
    }
    Ok(cycles)
}
