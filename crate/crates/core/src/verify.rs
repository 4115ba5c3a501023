//! The full invariant suite for one instance. Every check is exhaustive over
//! the instance's enumeration and stops at its first counterexample.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::config::Config;
use crate::counting::spanning_tree_count;
use crate::error::{ensure, Error, Result};
use crate::families::{generate, FamilySpec, Instance};
use crate::graph::{
    accessibility_partition, build_graph, cycle_basis, dual_graph, trace_faces, trace_faces_any, MultiGraph,
};
use crate::matching::{
    asm_of_orientation, domino_height, enumerate_dfactors, DFactor, DFactorLattice, MatchingSpace, Region,
    TwistDirection,
};
use crate::orientation::{
    average_bias, circulation_around, is_c_orientation, CSpace, Comparison, Orientation, OrientationLattice, Q,
};
use crate::poset::{chain_product, ideal_lattice, Poset};
use crate::torus::TorusGraph;
use crate::trees::{OuterHamiltonian, TreeLattice, TreeSpace};

/// Exhaustive pairwise checks run up to this many elements.
pub const PAIRWISE_CAP: usize = 200;
/// Tree checks run up to this many spanning trees.
pub const TREE_CAP: u128 = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    Failed,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub instance: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Failed)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }
}

#[derive(Default)]
struct Suite {
    checks: Vec<Check>,
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}

impl Suite {
    fn push(&mut self, name: &str, status: Status, detail: String) {
        self.checks.push(Check { name: name.to_string(), status, detail });
    }

    fn check(&mut self, name: &str, f: impl FnOnce() -> Result<String>) {
        match f() {
            Ok(d) => self.push(name, Status::Passed, d),
            Err(e) => self.push(name, Status::Failed, e.to_string()),
        }
    }

    fn skip(&mut self, name: &str, why: impl Into<String>) {
        self.push(name, Status::Skipped, why.into());
    }

    /// Runs a construction that asserts invariants on the way. Invariant
    /// violations become failed checks; other errors are instance errors.
    fn build<T>(&mut self, name: &str, f: impl FnOnce() -> Result<(String, T)>) -> Result<Option<T>> {
        match f() {
            Ok((d, t)) => {
                self.push(name, Status::Passed, d);
                Ok(Some(t))
            }
            Err(e @ Error::Invariant(_)) => {
                self.push(name, Status::Failed, e.to_string());
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }
}

/// Runs every applicable check. Errors are reserved for instances that cannot
/// be examined at all (too large, malformed); invariant violations are
/// recorded in the report.
pub fn verify_instance(inst: &Instance, cfg: &Config) -> Result<Report> {
    let mut s = Suite::default();
    family_checks(&mut s, inst)?;
    graph_checks(&mut s, inst);
    orientation_checks(&mut s, inst, cfg)?;
    matching_checks(&mut s, inst, cfg)?;
    torus_checks(&mut s, inst, cfg)?;
    tree_checks(&mut s, inst, cfg)?;
    let instance = match inst.spec {
        Some(spec) => spec.to_string(),
        None => format!("graph with {} vertices, {} edges", inst.graph.num_vertices(), inst.graph.num_edges()),
    };
    let passed = s.checks.iter().all(|c| c.status != Status::Failed);
    Ok(Report { instance, passed, checks: s.checks })
}

fn family_checks(s: &mut Suite, inst: &Instance) -> Result<()> {
    let Some(spec) = inst.spec else { return Ok(()) };
    let again = generate(spec)?;
    s.check("families.deterministic", || {
        ensure(again.graph == inst.graph, || "graph differs between runs".into())?;
        ensure(again.reference == inst.reference && again.degrees == inst.degrees, || "witness differs".into())?;
        ensure((again.vstar, again.fstar) == (inst.vstar, inst.fstar), || "v* or f* differs".into())?;
        Ok("two generations identical".into())
    });
    s.check("families.serialization", || {
        let text = crate::io::instance_to_json(inst);
        let back = crate::io::parse_instance(&text)?;
        ensure(back.graph == inst.graph, || "graph differs after JSON round trip".into())?;
        ensure(back.reference == inst.reference && back.degrees == inst.degrees, || {
            "witness differs after JSON round trip".into()
        })?;
        ensure(back.bias == inst.bias, || "bias differs after JSON round trip".into())?;
        ensure((back.vstar, back.fstar, back.torus) == (inst.vstar, inst.fstar, inst.torus), || {
            "manifest differs after JSON round trip".into()
        })?;
        Ok("gen -> parse is the identity".into())
    });
    Ok(())
}

fn graph_checks(s: &mut Suite, inst: &Instance) {
    let g = &inst.graph;
    s.check("graph.validation", || {
        ensure(build_graph(&g.to_spec())? == *g, || "rebuilding from the spec changes the graph".into())?;
        Ok(format!("{} vertices, {} edges, {} pinned", g.num_vertices(), g.num_edges(), g.pinned().count()))
    });
    s.check("graph.cycle_basis", || {
        let b = cycle_basis(g);
        let want = g.num_edges() + 1 - g.num_vertices();
        ensure(b.len() == want, || format!("{} basis cycles, |E|-|V|+1 = {want}", b.len()))?;
        let r = Orientation::canonical(g);
        for c in &b.cycles {
            circulation_around(g, &r, c)?;
        }
        Ok(format!("{want} closed cycles"))
    });
    if let Some(black) = &inst.black {
        s.check("graph.coloring", || {
            for e in g.edges() {
                let (u, v) = g.ends(e);
                ensure(black[u] != black[v], || format!("edge {} joins two vertices of one color", g.edge_label(e)))?;
            }
            Ok("adjacent vertices differ".into())
        });
    }
    let euler = match (inst.torus, inst.fstar) {
        (Some(_), _) => 0,
        (None, Some(_)) => 2,
        _ => {
            s.skip("graph.faces", "drawing has crossings; no embedding");
            return;
        }
    };
    s.check("graph.faces", || {
        let emb = trace_faces_any(g)?;
        ensure(emb.euler_characteristic() == euler, || {
            format!("Euler characteristic {} instead of {euler}", emb.euler_characteristic())
        })?;
        let mut seen = vec![0usize; g.num_edges()];
        for f in &emb.faces {
            for d in &f.boundary {
                seen[d.edge] += 1;
            }
        }
        if let Some(e) = seen.iter().position(|&k| k != 2) {
            return Err(fail(format!("edge {} lies {} times on face boundaries", g.edge_label(e), seen[e])));
        }
        Ok(format!("{} faces, Euler characteristic {euler}", emb.num_faces()))
    });
    if euler == 2 {
        s.check("graph.double_dual", || double_dual(g));
    }
}

/// `dual(dual(g))` has one face per vertex of `g`, bounded by exactly its
/// incident edges, and every edge keeps its endpoints.
fn double_dual(g: &MultiGraph) -> Result<String> {
    let emb = trace_faces(g)?;
    let (d, _) = match dual_graph(g, &emb) {
        Ok(x) => x,
        Err(Error::SelfLoop(_)) => return Ok("graph has a bridge; dual has a loop".into()),
        Err(e) => return Err(e),
    };
    let demb = trace_faces(&d)?;
    let (dd, _) = dual_graph(&d, &demb)?;
    let key = |edges: &mut Vec<usize>| {
        edges.sort_unstable();
        edges.clone()
    };
    let by_star: HashMap<Vec<usize>, usize> = g.vertices().map(|v| (key(&mut g.incident(v).to_vec()), v)).collect();
    ensure(by_star.len() == g.num_vertices(), || "two vertices share their incident edges".into())?;
    let phi = demb
        .faces
        .iter()
        .map(|f| {
            let mut edges: Vec<usize> = f.boundary.iter().map(|d| d.edge).collect();
            by_star.get(&key(&mut edges)).copied().ok_or_else(|| fail("a face of the dual is not a vertex star"))
        })
        .collect::<Result<Vec<_>>>()?;
    for e in g.edges() {
        let (a, b) = dd.ends(e);
        let (u, v) = g.ends(e);
        ensure((phi[a], phi[b]) == (v, u), || {
            format!("edge {} has other endpoints in the double dual", g.edge_label(e))
        })?;
    }
    Ok("identity edge correspondence, orientation reversed".into())
}

fn orientation_checks(s: &mut Suite, inst: &Instance, cfg: &Config) -> Result<()> {
    let Some(reference) = &inst.reference else {
        s.skip("orientation", "instance has no circulation witness");
        return Ok(());
    };
    let g = &inst.graph;
    let space = CSpace::new(g.clone(), reference.clone(), inst.vstar)?;
    let Some(elements) = s.build("orientation.enumeration", || {
        let e = space.enumerate(cfg)?;
        ensure(!e.is_empty(), || "no c-orientations".into())?;
        Ok((format!("{} c-orientations, both strategies agree", e.len()), e))
    })?
    else {
        return Ok(());
    };
    let bias = average_bias(g, &elements)?;
    s.check("orientation.bias", || {
        bias.validate(&space)?;
        if let Some(reg) = &inst.bias {
            reg.validate(&space)?;
            if *reg == bias {
                return Ok("registered closed form equals the average".into());
            }
            return Ok("registered bias and average bias are both valid".into());
        }
        Ok("average bias is valid".into())
    });
    let Some(l) = s.build("orientation.heights", || {
        let l = OrientationLattice::from_elements(space.clone(), elements.clone(), bias.clone())?;
        Ok(("every element has a consistent height function".into(), l))
    })?
    else {
        return Ok(());
    };
    let n = l.len();
    let small = n <= PAIRWISE_CAP;

    s.check("orientation.accessibility_partition", || {
        for (i, r) in l.elements().iter().enumerate() {
            ensure(accessibility_partition(g, r) == *space.partition(), || format!("element {i} has other classes"))?;
        }
        Ok(format!("{} classes for all {n} elements", space.partition().len()))
    });
    s.check("orientation.push_preserves_circulation", || {
        let mut pushes = 0;
        for r in l.elements() {
            for a in space.maximal_classes(r) {
                let d = space.push_down(r, a)?;
                ensure(is_c_orientation(g, &d, space.circulation()), || format!("pushing class {a} changes c"))?;
                ensure(space.push_up(&d, a)? == *r, || format!("push up does not undo push down at class {a}"))?;
                pushes += 1;
            }
        }
        Ok(format!("{pushes} pushes"))
    });
    s.check("orientation.height_rule", || {
        let one = Q::from_integer(1);
        let h0 = l.height(0);
        for (i, r) in l.elements().iter().enumerate() {
            let h = l.height(i);
            ensure(h.get(inst.vstar) == Q::from_integer(0), || format!("element {i} is not zero at v*"))?;
            for e in g.edges() {
                let d = r.dart(g, e);
                ensure(h.get(d.head) - h.get(d.tail) == one - bias.get(g, d), || {
                    format!("element {i} breaks the increment rule on edge {}", g.edge_label(e))
                })?;
            }
            for v in g.vertices() {
                ensure((h.get(v) - h0.get(v)).is_integer(), || {
                    format!("elements 0 and {i} differ by a fraction at {v}")
                })?;
            }
        }
        Ok("increments and integral differences hold".into())
    });
    s.check("orientation.adjacent_levels", || {
        let p = space.partition();
        let mut pairs = 0;
        for e in g.edges() {
            let (a, b) = g.ends(e);
            if p.class_of(a) == p.class_of(b) || g.is_pinned(e) {
                continue;
            }
            let (v, w) = if l.min_height(a) < l.min_height(b) { (a, b) } else { (b, a) };
            let (mv, mw) = (l.min_height(v), l.min_height(w));
            ensure(mv < mw && mw < mv + Q::from_integer(1), || format!("m({v}) = {mv}, m({w}) = {mw}"))?;
            for i in 0..n {
                let (x, y) = (l.levels(i)[v], l.levels(i)[w]);
                ensure(y == x || y == x - 1, || format!("element {i} realizes levels ({x}, {y}) on {v}, {w}"))?;
            }
            pairs += 1;
        }
        Ok(format!("{pairs} adjacent pairs across classes"))
    });
    let hasse = s.build("orientation.covers", || {
        let h = l.hasse()?;
        if n > 512 {
            ensure(l.order_covers() == h.covers, || "push-down covers differ from order covers".into())?;
        }
        Ok((format!("{} push-down covers equal the order covers", h.covers.len()), h))
    })?;
    s.check("orientation.extremes", || {
        let (bottom, top) = (l.bottom(), l.top());
        let (lo, hi) = space.extremes();
        ensure(l.index_of(&lo) == Some(bottom) && l.index_of(&hi) == Some(top), || "greedy extremes differ".into())?;
        for (i, r) in l.elements().iter().enumerate() {
            let down = l.maximal_classes(r)?;
            ensure(down.is_empty() == (i == bottom), || format!("element {i}: maximal classes {down:?}"))?;
            let up = space.minimal_classes(r);
            ensure(up.is_empty() == (i == top), || format!("element {i}: minimal classes {up:?}"))?;
        }
        Ok(format!("bottom {bottom}, top {top}, unique"))
    });
    if small {
        s.check("orientation.lattice", || lattice_axioms(&l, hasse.as_ref().map(|h| &h.covers)));
        s.check("orientation.push_toward", || {
            for i in 0..n {
                for j in 0..n {
                    if l.compare_idx(i, j) != Comparison::Greater {
                        continue;
                    }
                    let r = &l.elements()[i];
                    let ok = space.maximal_classes(r).into_iter().any(|a| {
                        space
                            .push_down(r, a)
                            .ok()
                            .and_then(|d| l.index_of(&d))
                            .is_some_and(|k| matches!(l.compare_idx(k, j), Comparison::Greater | Comparison::Equal))
                    });
                    ensure(ok, || format!("no push from {i} stays above {j}"))?;
                }
            }
            Ok("every strict pair has a push toward the lower".into())
        });
        if let Some(h) = &hasse {
            s.check("orientation.move_bound", || {
                let nv = g.num_vertices();
                let cap = nv * (nv - 1) / 2;
                let mut worst = 0;
                for i in 0..n {
                    let dist = h.distances_from(i);
                    for (j, d) in dist.iter().enumerate() {
                        let d = d.ok_or_else(|| fail("cover graph is disconnected"))?;
                        let sum: i64 = (0..nv).map(|v| (l.levels(i)[v] - l.levels(j)[v]).abs()).sum();
                        ensure(d <= cap, || format!("distance {d} from {i} to {j} exceeds N(N-1)/2 = {cap}"))?;
                        ensure(d as i64 <= sum, || {
                            format!("distance {d} from {i} to {j} exceeds the height gap {sum}")
                        })?;
                        worst = worst.max(d);
                    }
                }
                Ok(format!("diameter {worst}, N(N-1)/2 = {cap}"))
            });
        }
    } else {
        for name in ["orientation.lattice", "orientation.push_toward", "orientation.move_bound"] {
            s.skip(name, format!("{n} elements exceed the pairwise cap {PAIRWISE_CAP}"));
        }
    }
    s.check("orientation.both_directions", || {
        let mut seen = vec![[false; 2]; g.num_edges()];
        for r in l.elements() {
            for e in g.edges() {
                seen[e][r.is_along(e) as usize] = true;
            }
        }
        for e in g.edges() {
            let both = seen[e][0] && seen[e][1];
            ensure(both == space.is_free(e), || {
                format!("edge {} free = {}, seen both ways = {both}", g.edge_label(e), space.is_free(e))
            })?;
        }
        Ok("free edges occur both ways, forced and pinned edges one way".into())
    });
    s.check("orientation.vstar_choice", || {
        let class = &space.partition().classes[space.astar()];
        let others: Vec<usize> = class.iter().copied().filter(|&v| v != inst.vstar).collect();
        if others.is_empty() {
            return Ok("A* = {v*}; no other anchor".into());
        }
        for &w in &others {
            let sw = CSpace::new(g.clone(), reference.clone(), w)?;
            let lw = OrientationLattice::from_elements(sw, l.elements().to_vec(), bias.clone())?;
            ensure(lw.order_covers() == l.order_covers(), || format!("anchoring at {w} changes the order"))?;
        }
        Ok(format!("{} other anchors in A* give the same order", others.len()))
    });
    if hasse.is_some() {
        s.check("orientation.rank_function", || {
            l.rank_function()?;
            Ok("affine rank equals Hasse rank".into())
        });
    }
    if let Some(h) = &hasse {
        s.check("orientation.join_irreducibles", || {
            if space.partition().all_singletons() {
                let p = l.join_irreducibles()?;
                ensure(p.poset.count_ideals() == n as u64, || "ideals of P differ from the lattice".into())?;
            }
            let poset = h.poset()?;
            let j = poset.join_irreducibles();
            let count = poset.subposet(&j).count_ideals();
            ensure(count == n as u64, || format!("{count} ideals of J, {n} elements"))?;
            Ok(format!("|J| = {}, {n} ideals", j.len()))
        });
    }
    if let Some(FamilySpec::GridPinned { n: k }) = inst.spec {
        s.check("orientation.asm", || {
            let mut seen = BTreeSet::new();
            for (i, r) in l.elements().iter().enumerate() {
                let a = asm_of_orientation(g, r, k)?;
                ensure(a.is_alternating_sign(), || format!("element {i} gives {:?}", a.rows()))?;
                seen.insert(a);
            }
            ensure(seen.len() == n, || format!("{} distinct matrices for {n} orientations", seen.len()))?;
            Ok(format!("{n} distinct alternating sign matrices"))
        });
    }
    Ok(())
}

/// Meet and join from height extrema: lattice laws and distributivity over
/// all pairs and triples, and agreement with the order's own bounds.
fn lattice_axioms(l: &OrientationLattice, covers: Option<&Vec<(usize, usize)>>) -> Result<String> {
    let n = l.len();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            meet[i * n + j] = l.meet_idx(i, j)?;
            join[i * n + j] = l.join_idx(i, j)?;
        }
    }
    let m = |a: usize, b: usize| meet[a * n + b];
    let j = |a: usize, b: usize| join[a * n + b];
    for a in 0..n {
        ensure(m(a, a) == a && j(a, a) == a, || format!("idempotence fails at {a}"))?;
        for b in 0..n {
            ensure(m(a, b) == m(b, a) && j(a, b) == j(b, a), || format!("commutativity fails at {a}, {b}"))?;
            ensure(m(a, j(a, b)) == a && j(a, m(a, b)) == a, || format!("absorption fails at {a}, {b}"))?;
            for c in 0..n {
                ensure(m(a, m(b, c)) == m(m(a, b), c), || format!("meet is not associative at {a}, {b}, {c}"))?;
                ensure(m(a, j(b, c)) == j(m(a, b), m(a, c)), || format!("distributivity fails at {a}, {b}, {c}"))?;
            }
        }
    }
    if let Some(covers) = covers {
        let p = Poset::from_covers(n, covers)?;
        let (pm, pj) = p.lattice_tables().ok_or_else(|| fail("cover order is not a lattice"))?;
        ensure(pm == meet && pj == join, || "height extrema differ from order bounds".into())?;
    }
    Ok(format!("{} pairs, {} triples", n * n, n * n * n))
}

fn matching_checks(s: &mut Suite, inst: &Instance, cfg: &Config) -> Result<()> {
    let (Some(degrees), Some(fstar), None) = (&inst.degrees, inst.fstar, inst.torus) else {
        if inst.torus.is_none() {
            s.skip("matching", "instance has no degree specification");
        }
        return Ok(());
    };
    let ms = MatchingSpace::new(inst.graph.clone(), degrees.clone(), fstar, inst.black.clone())?;
    let Some(dl) = s.build("matching.bijection", || {
        let dl = DFactorLattice::new(ms.clone(), cfg)?;
        Ok((format!("{} d-factors, round trip through the dual is the identity", dl.len()), dl))
    })?
    else {
        return Ok(());
    };
    let factors = dl.factors();
    let hasse = s.build("matching.twist_push", || {
        let h = dl.hasse()?;
        Ok((format!("{} covers; twists equal pushes", h.covers.len()), h))
    })?;
    s.check("matching.degrees", || {
        for m in factors {
            m.check(ms.graph(), degrees)?;
        }
        Ok("every factor meets the degree specification".into())
    });
    s.check("matching.alternating_faces", || {
        for (i, m) in factors.iter().enumerate() {
            let (pos, neg) = ms.alternating_faces(m);
            ensure(!pos.is_empty() && !neg.is_empty(), || format!("factor {i}: positive {pos:?}, negative {neg:?}"))?;
        }
        Ok("each factor has positive and negative faces".into())
    });
    s.check("matching.face_heights", || {
        let mut twists = 0;
        for (i, m) in factors.iter().enumerate() {
            let (pos, _) = ms.alternating_faces(m);
            for f in pos.into_iter().filter(|&f| f != fstar) {
                let t = ms.twist(m, f, TwistDirection::Down)?;
                let diff = ms.relative_face_height(&t, m)?;
                let changed: Vec<(usize, i64)> = diff.iter().copied().enumerate().filter(|&(_, d)| d != 0).collect();
                ensure(changed.len() == 1 && changed[0].0 == f && changed[0].1.abs() == 1, || {
                    format!("twisting factor {i} at face {f} changes heights {changed:?}")
                })?;
                twists += 1;
            }
        }
        Ok(format!("{twists} twists each move one face by 1"))
    });
    if let (Some(FamilySpec::Hexagon { a, b, c }), Some(h)) = (inst.spec, &hasse) {
        s.check("matching.lozenge_ideals", || {
            let oracle = ideal_lattice(&chain_product(&[a, b, c]));
            ensure(h.poset()?.is_isomorphic(&oracle), || format!("lattice is not J({a}x{b}x{c})"))?;
            Ok(format!("isomorphic to J({a}x{b}x{c}), {} elements", oracle.len()))
        });
    }
    if matches!(inst.spec, Some(FamilySpec::Rectangle { .. } | FamilySpec::Aztec { .. })) {
        s.check("matching.domino_heights", || domino_checks(inst, &ms, factors));
    }
    Ok(())
}

/// Tilings of the cell region drawn by the instance coordinates: boundary
/// heights agree, a twist moves one interior point by 1, twists connect all.
fn domino_checks(inst: &Instance, ms: &MatchingSpace, factors: &[DFactor]) -> Result<String> {
    let coords = inst.coords.as_ref().ok_or_else(|| fail("instance has no cell coordinates"))?;
    let region = Region::squares(coords);
    let (rg, _) = region.graph()?;
    let cell: HashMap<(i64, i64), usize> = region.cells().iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let phi: Vec<usize> = coords.iter().map(|c| cell[c]).collect();
    let by_ends: HashMap<(usize, usize), usize> =
        rg.edges().map(|e| (rg.ends(e), e)).flat_map(|((u, v), e)| [((u, v), e), ((v, u), e)]).collect();
    let g = &inst.graph;
    let to_region = |m: &DFactor| {
        DFactor::from_edges(
            rg.num_edges(),
            m.edges().map(|e| {
                let (u, v) = g.ends(e);
                by_ends[&(phi[u], phi[v])]
            }),
        )
    };
    let heights = factors.iter().map(|m| domino_height(&region, &to_region(m))).collect::<Result<Vec<_>>>()?;
    let boundary = region.boundary_points();
    for (i, h) in heights.iter().enumerate() {
        for p in &boundary {
            ensure(h[p] == heights[0][p], || format!("tilings 0 and {i} differ on the boundary at {p:?}"))?;
        }
    }
    let index: HashMap<&DFactor, usize> = factors.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut parent: Vec<usize> = (0..factors.len()).collect();
    fn root(p: &[usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for (i, m) in factors.iter().enumerate() {
        let (pos, _) = ms.alternating_faces(m);
        for f in pos.into_iter().filter(|&f| f != ms.fstar()) {
            let t = ms.twist(m, f, TwistDirection::Down)?;
            let j = *index.get(&t).ok_or_else(|| fail("twist left the tilings"))?;
            let moved: Vec<_> = heights[i].keys().filter(|p| heights[i][p] != heights[j][p]).collect();
            ensure(moved.len() == 1 && !boundary.contains(moved[0]), || {
                format!("twist of tiling {i} moves {moved:?}")
            })?;
            let d = heights[i][moved[0]] - heights[j][moved[0]];
            ensure(d == Q::from_integer(1) || d == Q::from_integer(-1), || {
                format!("twist of tiling {i} moves by {d}")
            })?;
            let (a, b) = (root(&parent, i), root(&parent, j));
            parent[a] = b;
        }
    }
    let comps: BTreeSet<usize> = (0..factors.len()).map(|i| root(&parent, i)).collect();
    ensure(comps.len() == 1, || format!("{} twist components", comps.len()))?;
    Ok(format!("{} tilings, {} boundary points fixed, twist-connected", factors.len(), boundary.len()))
}

fn torus_checks(s: &mut Suite, inst: &Instance, cfg: &Config) -> Result<()> {
    let Some((w, h)) = inst.torus else { return Ok(()) };
    if inst.degrees.is_none() || inst.black.is_none() {
        s.skip("torus", "grid has no perfect matchings or no checkerboard coloring");
        return Ok(());
    }
    let tg = TorusGraph::from_graph(inst.graph.clone(), w, h)?;
    let pd = tg.phase_diagram(cfg)?;
    s.check("torus.phase_diagram", || {
        Ok(format!("{} d-factors, {} cohomology classes", pd.factors.len(), pd.points.len()))
    });
    s.check("torus.twists_preserve_cohomology", || {
        for (i, m) in pd.factors.iter().enumerate() {
            for (f, t) in tg.twists(m) {
                ensure(tg.cohomology_of(&t)? == pd.cohomology[i], || {
                    format!("twisting factor {i} at face {f} moves its class")
                })?;
            }
        }
        Ok("all twists".into())
    });
    s.check("torus.interior_connected", || {
        let mut split = 0;
        for p in &pd.points {
            if p.extremal {
                split += (p.components > 1) as usize;
            } else {
                ensure(p.components == 1, || format!("class ({}, {}) has {} components", p.s, p.t, p.components))?;
            }
        }
        Ok(format!("{split} extremal classes split"))
    });
    s.check("torus.forward_cycles_extremal", || {
        let mut found = 0;
        for (i, m) in pd.factors.iter().enumerate() {
            let r = tg.orientation_of(m)?;
            if tg.noncontractible_forward_cycle(&r).is_some() {
                ensure(pd.is_extremal(pd.cohomology[i])?, || {
                    format!("factor {i} has a forward cycle but interior class")
                })?;
                found += 1;
            }
        }
        Ok(format!("{found} factors with a forward non-contractible cycle"))
    });
    s.check("torus.generator_choice", || {
        let g2 = tg.generator(1, 0)?;
        for offset in 1..h {
            let g1 = tg.generator(0, offset)?;
            for (i, m) in pd.factors.iter().enumerate() {
                ensure(tg.cohomology_with(m, &g1, &g2)? == pd.cohomology[i], || {
                    format!("factor {i} changes class at row {offset}")
                })?;
            }
        }
        Ok(format!("{} representatives of g1", h))
    });
    Ok(())
}

fn tree_checks(s: &mut Suite, inst: &Instance, cfg: &Config) -> Result<()> {
    if inst.torus.is_some() {
        return Ok(());
    }
    let Some(fstar) = inst.fstar else {
        if let Some(FamilySpec::KnOuter { n }) = inst.spec {
            s.check("tree.swing_poset", || kn_checks(inst, n, cfg));
        }
        return Ok(());
    };
    let g = &inst.graph;
    let count = spanning_tree_count(g);
    if count > TREE_CAP {
        s.skip("tree", format!("{count} spanning trees exceed the cap {TREE_CAP}"));
        return Ok(());
    }
    let space = TreeSpace::new(g.clone(), inst.vstar, fstar)?;
    let Some(tl) = s.build("tree.temperley", || {
        let tl = TreeLattice::new(space.clone(), cfg)?;
        Ok(("bijection round trips; swings equal twists".into(), tl))
    })?
    else {
        return Ok(());
    };
    s.check("tree.count", || {
        let h = tl.h().graph();
        let matchings = enumerate_dfactors(h, &vec![1; h.num_vertices()], cfg)?.len();
        ensure(tl.len() as u128 == count && matchings as u128 == count, || {
            format!("{} trees, {matchings} matchings of H, determinant {count}", tl.len())
        })?;
        Ok(format!("{count} trees = matchings of H = determinant"))
    });
    s.check("tree.pivotal", || {
        for p in tl.pairs() {
            space.check_pivotal(p)?;
        }
        Ok(format!("four-membership test equals conditions (1)-(5) on {} trees", tl.len()))
    });
    s.check("tree.consecutive_swings", || {
        for (i, p) in tl.pairs().iter().enumerate() {
            for v in g.vertices() {
                let k = space.consecutive_swings(p, v)?;
                ensure(k < g.degree(v), || format!("tree {i}: {k} swings in a row at vertex {v}"))?;
            }
        }
        Ok("fewer than deg(v) swings in a row everywhere".into())
    });
    if tl.len() <= PAIRWISE_CAP {
        s.check("tree.distributive", || {
            ensure(tl.hasse().poset()?.is_distributive_lattice(), || "swing order is not distributive".into())?;
            Ok(format!("{} trees", tl.len()))
        });
    } else {
        s.skip("tree.distributive", format!("{} trees exceed the pairwise cap", tl.len()));
    }
    match OuterHamiltonian::from_instance(inst) {
        Ok(oh) => s.check("tree.outer_hamiltonian", || {
            for (t, p) in tl.trees().iter().zip(tl.pairs()) {
                let four = oh
                    .angles()
                    .into_iter()
                    .filter(|a| oh.is_pivotal4(t, a))
                    .map(|a| space.angle(a.vertex, a.edge))
                    .collect::<Result<Vec<_>>>()?;
                ensure(four == space.pivotal_angles(p), || format!("tree {t:?}: conditions (1)-(4) do not imply (5)"))?;
            }
            let (lo, hi) = oh.extremes();
            ensure(tl.trees()[tl.bottom()] == lo && tl.trees()[tl.top()] == hi, || {
                "extremes are not the Hamiltonian paths".into()
            })?;
            let ap = crate::trees::angle_poset(g, inst.vstar, fstar, cfg)?;
            Ok(format!("(5) implied by (1)-(4); angle poset of {} angles", ap.angles.len()))
        }),
        Err(Error::NotOuterHamiltonian(why)) => s.skip("tree.outer_hamiltonian", why),
        Err(e) => return Err(e),
    }
    Ok(())
}

fn kn_checks(inst: &Instance, n: usize, cfg: &Config) -> Result<String> {
    let oh = OuterHamiltonian::from_instance(inst)?;
    let h = oh.swing_poset(cfg)?;
    let mut want = vec![1u64];
    for _ in 2..n {
        let mut next = vec![0u64; want.len() + n - 1];
        for (i, &c) in want.iter().enumerate() {
            for x in &mut next[i..i + n] {
                *x += c;
            }
        }
        want = next;
    }
    let gf = h.rank_generating_function()?;
    ensure(gf == want, || format!("rank generating function {gf:?}, expected {want:?}"))?;
    let distributive = h.poset()?.is_distributive_lattice();
    Ok(format!("{} trees, graded, rank polynomial {gf:?}; distributive: {distributive}", h.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(spec: FamilySpec) -> Report {
        verify_instance(&generate(spec).unwrap(), &Config::default()).unwrap()
    }

    #[test]
    fn small_families_pass() {
        for spec in [
            FamilySpec::Cycle { n: 4, k: 2 },
            FamilySpec::Path { n: 3 },
            FamilySpec::GridPinned { n: 2 },
            FamilySpec::Rectangle { width: 3, height: 2 },
            FamilySpec::Hexagon { a: 1, b: 1, c: 1 },
            FamilySpec::SquareWithChord,
            FamilySpec::KnOuter { n: 4 },
        ] {
            let r = report(spec);
            assert!(r.passed, "{spec}: {:?}", r.first_failure());
            assert!(r.count(Status::Passed) > 3, "{spec}: {:?}", r.checks);
        }
    }

    #[test]
    fn broken_bias_is_reported() {
        let mut inst = generate(FamilySpec::Cycle { n: 4, k: 1 }).unwrap();
        inst.bias = Some(crate::orientation::EdgeBias::half(&inst.graph));
        let r = verify_instance(&inst, &Config::default()).unwrap();
        assert!(!r.passed);
        assert_eq!(r.first_failure().unwrap().name, "orientation.bias");
    }
}
