//! d-factors of the torus grid: cohomology, phase diagrams, extremality
//! and twist-connectivity.

use std::collections::{BTreeMap, HashMap, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::config::Config;
use crate::error::{ensure, Error, Result};
use crate::families::torus_grid_graph;
use crate::geometry::{on_hull_boundary, Point};
use crate::graph::{dual_graph_any, trace_faces_any, DirectedEdge, Embedding, FaceId, MultiGraph};
use crate::matching::{enumerate_dfactors, face_sign, orientation_of_dfactor, DFactor, FaceSign};
use crate::orientation::{circulation_around, Orientation};

/// Circulations of `R_M` around the two generator cycles of the dual.
pub type Cohomology = (i64, i64);

/// The `width × height` grid on a torus, vertex `y * width + x`, with edge
/// `2v` running east and `2v + 1` north from `v`. Faces are unit squares
/// named by their lower-left corner.
#[derive(Clone, Debug)]
pub struct TorusGraph {
    graph: MultiGraph,
    width: usize,
    height: usize,
    embedding: Embedding,
    dual: MultiGraph,
    black: Vec<bool>,
    /// dual face of each square
    face_at: Vec<FaceId>,
    /// lift of each dual edge, in its stored direction, in square units
    shift: Vec<Point>,
    g1: Vec<DirectedEdge>,
    g2: Vec<DirectedEdge>,
}

impl TorusGraph {
    pub fn new(width: usize, height: usize) -> Result<Self> {
        if width < 2 || height < 2 || width % 2 == 1 || height % 2 == 1 {
            return Err(Error::BadParams("torus needs even width and height of at least 2".into()));
        }
        TorusGraph::from_graph(torus_grid_graph(width, height), width, height)
    }

    /// Validates that `graph` is the torus grid of the given size.
    pub fn from_graph(graph: MultiGraph, width: usize, height: usize) -> Result<Self> {
        let embedding = trace_faces_any(&graph)?;
        if embedding.euler_characteristic() != 0 {
            return Err(Error::WrongFamily(format!(
                "Euler characteristic {}, a torus has 0",
                embedding.euler_characteristic()
            )));
        }
        if width < 2 || height < 2 || width % 2 == 1 || height % 2 == 1 {
            return Err(Error::BadParams("torus needs even width and height of at least 2".into()));
        }
        let expect = torus_grid_graph(width, height);
        let same = graph.num_vertices() == expect.num_vertices()
            && graph.num_edges() == expect.num_edges()
            && graph.edges().all(|e| graph.ends(e) == expect.ends(e))
            && graph.rotation() == expect.rotation();
        if !same {
            return Err(Error::WrongFamily(format!("not the {width}×{height} torus grid")));
        }
        let (dual, _) = dual_graph_any(&graph, &embedding)?;
        let id = |x: usize, y: usize| (y % height) * width + (x % width);
        let mut face_at = vec![0; width * height];
        for y in 0..height {
            for x in 0..width {
                face_at[id(x, y)] = embedding.sides(2 * id(x, y)).0;
            }
        }
        let mut shift = vec![(0, 0); graph.num_edges()];
        for v in graph.vertices() {
            // east edge: north square to south square; north edge: west to east
            shift[2 * v] = (0, -1);
            shift[2 * v + 1] = (1, 0);
        }
        let black = (0..height).flat_map(|y| (0..width).map(move |x| (x + y) % 2 == 0)).collect();
        let mut tg =
            TorusGraph { graph, width, height, embedding, dual, black, face_at, shift, g1: Vec::new(), g2: Vec::new() };
        tg.g1 = tg.generator(0, 0)?;
        tg.g2 = tg.generator(1, 0)?;
        ensure(tg.winding(&tg.g1) == (width as i64, 0), || "g1 does not wind once horizontally".into())?;
        ensure(tg.winding(&tg.g2) == (0, height as i64), || "g2 does not wind once vertically".into())?;
        Ok(tg)
    }

    /// Dual cycle through one row (`axis` 0) or column (`axis` 1) of squares.
    pub fn generator(&self, axis: usize, offset: usize) -> Result<Vec<DirectedEdge>> {
        let (w, h) = (self.width, self.height);
        let id = |x: usize, y: usize| (y % h) * w + (x % w);
        let face = |x: usize, y: usize| self.face_at[id(x, y)];
        let cycle: Vec<DirectedEdge> = if axis == 0 {
            let y = offset % h;
            (0..w).map(|x| DirectedEdge::new(2 * id(x + 1, y) + 1, face(x, y), face(x + 1, y))).collect()
        } else {
            let x = offset % w;
            (0..h).map(|y| DirectedEdge::new(2 * id(x, y + 1), face(x, y), face(x, y + 1))).collect()
        };
        for d in &cycle {
            let (a, b) = self.dual.ends(d.edge);
            ensure((a, b) == (d.tail, d.head) || (b, a) == (d.tail, d.head), || "generator leaves the dual".into())?;
        }
        Ok(cycle)
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn dual(&self) -> &MultiGraph {
        &self.dual
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn black(&self) -> &[bool] {
        &self.black
    }

    pub fn generators(&self) -> (&[DirectedEdge], &[DirectedEdge]) {
        (&self.g1, &self.g2)
    }

    /// Lift of a dual dart.
    pub fn shift_of(&self, d: DirectedEdge) -> Point {
        let s = self.shift[d.edge];
        if self.dual.ends(d.edge).0 == d.tail {
            s
        } else {
            (-s.0, -s.1)
        }
    }

    /// Total lift of a closed dual walk; zero exactly for contractible walks.
    pub fn winding(&self, walk: &[DirectedEdge]) -> Point {
        walk.iter().map(|&d| self.shift_of(d)).fold((0, 0), |a, s| (a.0 + s.0, a.1 + s.1))
    }

    pub fn orientation_of(&self, m: &DFactor) -> Result<Orientation> {
        m.check(&self.graph, &vec![1; self.graph.num_vertices()])?;
        orientation_of_dfactor(&self.graph, &self.black, m)
    }

    pub fn cohomology_of(&self, m: &DFactor) -> Result<Cohomology> {
        self.cohomology_with(m, &self.g1, &self.g2)
    }

    /// Cohomology against other generator representatives.
    pub fn cohomology_with(&self, m: &DFactor, g1: &[DirectedEdge], g2: &[DirectedEdge]) -> Result<Cohomology> {
        let r = self.orientation_of(m)?;
        Ok((circulation_around(&self.dual, &r, g1)?, circulation_around(&self.dual, &r, g2)?))
    }

    /// Faces where `m` may be twisted, with the resulting d-factor.
    pub fn twists(&self, m: &DFactor) -> Vec<(FaceId, DFactor)> {
        (0..self.embedding.num_faces())
            .filter(|&f| face_sign(&self.embedding, &self.black, m, f) != FaceSign::NotAlternating)
            .map(|f| (f, m.toggled(self.embedding.faces[f].boundary.iter().map(|d| d.edge))))
            .collect()
    }

    pub fn enumerate(&self, cfg: &Config) -> Result<Vec<DFactor>> {
        enumerate_dfactors(&self.graph, &vec![1; self.graph.num_vertices()], cfg)
    }

    /// A forward cycle of the dual orientation `r` with non-zero winding.
    ///
    /// Within each strongly connected component a potential is propagated
    /// along lifts; an edge that disagrees with it closes a walk of non-zero
    /// winding, which is then split into simple cycles.
    pub fn noncontractible_forward_cycle(&self, r: &Orientation) -> Option<Vec<DirectedEdge>> {
        let dual = &self.dual;
        let n = dual.num_vertices();
        let mut dg = DiGraph::<(), DirectedEdge>::with_capacity(n, dual.num_edges());
        let nodes: Vec<_> = dual.vertices().map(|_| dg.add_node(())).collect();
        for e in dual.edges() {
            let d = r.dart(dual, e);
            dg.add_edge(nodes[d.tail], nodes[d.head], d);
        }
        let mut comp = vec![usize::MAX; n];
        let sccs = tarjan_scc(&dg);
        for (i, c) in sccs.iter().enumerate() {
            for v in c {
                comp[v.index()] = i;
            }
        }
        let forward: Vec<DirectedEdge> = dual.edges().map(|e| r.dart(dual, e)).collect();
        let mut out_darts = vec![Vec::new(); n];
        let mut in_darts = vec![Vec::new(); n];
        for &d in &forward {
            if comp[d.tail] == comp[d.head] {
                out_darts[d.tail].push(d);
                in_darts[d.head].push(d);
            }
        }
        for c in &sccs {
            let root = c.iter().map(|v| v.index()).min()?;
            // forward tree from the root
            let mut pot: HashMap<usize, Point> = HashMap::from([(root, (0, 0))]);
            let mut from_root: HashMap<usize, DirectedEdge> = HashMap::new();
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &d in &out_darts[v] {
                    if !pot.contains_key(&d.head) {
                        let (s, p) = (self.shift_of(d), pot[&v]);
                        pot.insert(d.head, (p.0 + s.0, p.1 + s.1));
                        from_root.insert(d.head, d);
                        queue.push_back(d.head);
                    }
                }
            }
            // forward tree into the root
            let mut to_root: HashMap<usize, DirectedEdge> = HashMap::new();
            let mut seen: HashMap<usize, ()> = HashMap::from([(root, ())]);
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &d in &in_darts[v] {
                    if seen.insert(d.tail, ()).is_none() {
                        to_root.insert(d.tail, d);
                        queue.push_back(d.tail);
                    }
                }
            }
            let path_from_root = |v: usize| {
                let mut p = Vec::new();
                let mut x = v;
                while x != root {
                    let d = from_root[&x];
                    p.push(d);
                    x = d.tail;
                }
                p.reverse();
                p
            };
            let path_to_root = |v: usize| {
                let mut p = Vec::new();
                let mut x = v;
                while x != root {
                    let d = to_root[&x];
                    p.push(d);
                    x = d.head;
                }
                p
            };
            for v in c.iter().map(|v| v.index()) {
                for &d in &out_darts[v] {
                    let s = self.shift_of(d);
                    if (pot[&d.tail].0 + s.0, pot[&d.tail].1 + s.1) == pot[&d.head] {
                        continue;
                    }
                    let mut w1 = path_from_root(d.tail);
                    w1.push(d);
                    w1.extend(path_to_root(d.head));
                    let mut w2 = path_from_root(d.head);
                    w2.extend(path_to_root(d.head));
                    let walk = if self.winding(&w1) != (0, 0) { w1 } else { w2 };
                    return split_cycles(&walk).into_iter().find(|cyc| self.winding(cyc) != (0, 0));
                }
            }
        }
        None
    }

    /// Cohomologies with counts, extremality and twist components.
    pub fn phase_diagram(&self, cfg: &Config) -> Result<PhaseDiagram> {
        let factors = self.enumerate(cfg)?;
        if factors.is_empty() {
            return Err(Error::NoDFactor);
        }
        let cohomology = factors.iter().map(|m| self.cohomology_of(m)).collect::<Result<Vec<_>>>()?;
        let index: HashMap<&DFactor, usize> = factors.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut parent: Vec<usize> = (0..factors.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for (i, m) in factors.iter().enumerate() {
            for (_, t) in self.twists(m) {
                let j = *index.get(&t).ok_or_else(|| Error::Invariant("twist left the d-factors".into()))?;
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
        let component: Vec<usize> = (0..factors.len()).map(|i| find(&mut parent, i)).collect();
        let mut by_class: BTreeMap<Cohomology, (usize, Vec<usize>)> = BTreeMap::new();
        for (i, &c) in cohomology.iter().enumerate() {
            let entry = by_class.entry(c).or_default();
            entry.0 += 1;
            entry.1.push(component[i]);
        }
        let pts: Vec<Point> = by_class.keys().copied().collect();
        let points = by_class
            .into_iter()
            .map(|((s, t), (count, mut comps))| {
                comps.sort_unstable();
                comps.dedup();
                PhasePoint { s, t, count, extremal: on_hull_boundary(&pts, (s, t)), components: comps.len() }
            })
            .collect();
        Ok(PhaseDiagram { points, factors, cohomology, component })
    }
}

/// Splits a closed walk into simple cycles.
fn split_cycles(walk: &[DirectedEdge]) -> Vec<Vec<DirectedEdge>> {
    let mut out = Vec::new();
    let mut stack: Vec<DirectedEdge> = Vec::new();
    let Some(first) = walk.first() else { return out };
    let mut at: HashMap<usize, usize> = HashMap::from([(first.tail, 0)]);
    for &d in walk {
        stack.push(d);
        if let Some(&pos) = at.get(&d.head) {
            let cycle: Vec<DirectedEdge> = stack.drain(pos..).collect();
            for c in &cycle[1..] {
                at.remove(&c.tail);
            }
            out.push(cycle);
        } else {
            at.insert(d.head, stack.len());
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PhasePoint {
    pub s: i64,
    pub t: i64,
    pub count: usize,
    pub extremal: bool,
    /// twist components inside the class
    pub components: usize,
}

#[derive(Clone, Debug)]
pub struct PhaseDiagram {
    pub points: Vec<PhasePoint>,
    pub factors: Vec<DFactor>,
    pub cohomology: Vec<Cohomology>,
    /// representative of each d-factor's twist component
    pub component: Vec<usize>,
}

impl PhaseDiagram {
    /// `NotInDiagram` for a pair no d-factor realizes.
    pub fn is_extremal(&self, coh: Cohomology) -> Result<bool> {
        self.points.iter().find(|p| (p.s, p.t) == coh).map(|p| p.extremal).ok_or(Error::NotInDiagram)
    }
}

/// Exact hull-boundary membership of a point of the diagram.
pub fn is_extremal(coh: Cohomology, diagram: &[Cohomology]) -> Result<bool> {
    if !diagram.contains(&coh) {
        return Err(Error::NotInDiagram);
    }
    Ok(on_hull_boundary(diagram, coh))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let tg = TorusGraph::new(2, 2).unwrap();
        let cfg = Config::default();
        let pd = tg.phase_diagram(&cfg).unwrap();
        let total: usize = pd.points.iter().map(|p| p.count).sum();
        assert_eq!(total, pd.factors.len());
        assert_eq!(total, 8);
        for m in &pd.factors {
            let c = tg.cohomology_of(m).unwrap();
            for (_, t) in tg.twists(m) {
                assert_eq!(tg.cohomology_of(&t).unwrap(), c);
            }
        }
    }

    #[test]
    fn representatives_agree() {
        let tg = TorusGraph::new(4, 2).unwrap();
        let g1b = tg.generator(0, 1).unwrap();
        let g2b = tg.generator(1, 3).unwrap();
        for m in tg.enumerate(&Config::default()).unwrap() {
            assert_eq!(tg.cohomology_of(&m).unwrap(), tg.cohomology_with(&m, &g1b, &g2b).unwrap());
        }
    }

    #[test]
    fn forward_cycles() {
        let tg = TorusGraph::new(2, 2).unwrap();
        let dual = tg.dual();
        let acyclic = Orientation::from_bits(dual.edges().map(|e| dual.ends(e).0 < dual.ends(e).1).collect());
        assert_eq!(tg.noncontractible_forward_cycle(&acyclic), None);
        let along_g1 = Orientation::from_directed(
            dual,
            tg.generators().0.iter().copied().chain(
                dual.edges().filter(|e| !tg.generators().0.iter().any(|d| d.edge == *e)).map(|e| {
                    let (a, b) = dual.ends(e);
                    DirectedEdge::new(e, a.min(b), a.max(b))
                }),
            ),
        )
        .unwrap();
        let c = tg.noncontractible_forward_cycle(&along_g1).unwrap();
        assert_ne!(tg.winding(&c), (0, 0));
        assert!(c.iter().all(|&d| along_g1.contains(dual, d)));
    }

    #[test]
    fn hull_membership() {
        let pts = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)];
        assert_eq!(is_extremal((0, 0), &pts), Ok(false));
        assert_eq!(is_extremal((1, 0), &pts), Ok(true));
        assert_eq!(is_extremal((5, 5), &pts), Err(Error::NotInDiagram));
        assert_eq!(is_extremal((2, 2), &[(2, 2)]), Ok(true));
    }

    #[test]
    fn sphere_is_rejected() {
        let g = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
            .unwrap()
            .with_rotation(vec![vec![0, 3], vec![0, 1], vec![1, 2], vec![2, 3]])
            .unwrap();
        assert!(matches!(TorusGraph::from_graph(g, 2, 2), Err(Error::WrongFamily(_))));
    }
}
