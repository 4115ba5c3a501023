use std::collections::VecDeque;

use super::{CSpace, Orientation, OrientationLattice};
use crate::error::{ensure, Result};
use crate::graph::{DirectedEdge, EdgeId};

/// Affine rank `Φ(R) = a0 + Σ_{e⃗ ∈ R} a(e⃗)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFunction {
    /// by dart index
    pub coefficients: Vec<i64>,
    pub constant: i64,
}

impl RankFunction {
    pub fn eval(&self, space: &CSpace, r: &Orientation) -> i64 {
        let g = space.graph();
        self.constant + r.darts(g).map(|d| self.coefficients[g.dart_index(d)]).sum::<i64>()
    }

    pub fn coefficient(&self, space: &CSpace, d: DirectedEdge) -> i64 {
        self.coefficients[space.graph().dart_index(d)]
    }
}

impl CSpace {
    /// Solves for `a` with every push-down lowering `Φ` by exactly one.
    ///
    /// Classes form a quotient graph; frozen classes are merged into a root.
    /// Along a breadth-first tree of the quotient, the dart pointing away from
    /// the root carries the size of the subtree it enters and every other
    /// dart carries 0. At a class `A` this gives
    /// `Σ (a(into A) - a(out of A)) = 1`, the class form of the vertex
    /// equation. `a0` makes `Φ(bottom) = 0`.
    pub fn rank_affine(&self) -> RankFunction {
        let g = self.graph();
        let p = self.partition();
        let k = p.len();
        let mut parent: Vec<Option<(EdgeId, usize)>> = vec![None; k];
        let mut seen = vec![false; k];
        let mut order = Vec::with_capacity(k);
        let mut queue: VecDeque<usize> = (0..k).filter(|&a| self.is_frozen(a)).collect();
        for &a in &queue {
            seen[a] = true;
        }
        while let Some(a) = queue.pop_front() {
            order.push(a);
            let mut edges = self.class_boundary(a).to_vec();
            edges.sort_unstable();
            for e in edges {
                let (u, v) = g.ends(e);
                let b = if p.class_of(u) == a { p.class_of(v) } else { p.class_of(u) };
                if !seen[b] {
                    seen[b] = true;
                    parent[b] = Some((e, a));
                    queue.push_back(b);
                }
            }
        }
        let mut size = vec![1i64; k];
        for &a in order.iter().rev() {
            if let Some((_, b)) = parent[a] {
                size[b] += size[a];
            }
        }
        let mut coefficients = vec![0i64; 2 * g.num_edges()];
        for a in 0..k {
            if let Some((e, _)) = parent[a] {
                let (u, v) = g.ends(e);
                let child = if p.class_of(u) == a { u } else { v };
                let down = DirectedEdge::new(e, g.other_end(e, child), child);
                coefficients[g.dart_index(down)] = size[a];
            }
        }
        let mut phi = RankFunction { coefficients, constant: 0 };
        let (bottom, _) = self.extremes();
        phi.constant = -phi.eval(self, &bottom);
        phi
    }
}

impl OrientationLattice {
    /// [`CSpace::rank_affine`], asserted equal to the Hasse rank everywhere.
    pub fn rank_function(&self) -> Result<RankFunction> {
        let phi = self.space().rank_affine();
        let h = self.hasse()?;
        let rank = h.rank.as_ref().expect("hasse ranks");
        for (i, r) in self.elements().iter().enumerate() {
            let v = phi.eval(self.space(), r);
            ensure(v == rank[i] as i64, || format!("Φ = {v} but rank = {} at element {i}", rank[i]))?;
        }
        Ok(phi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::graph::MultiGraph;

    #[test]
    fn path_and_cycle_ranks() {
        let g = MultiGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let s = CSpace::new(g.clone(), Orientation::canonical(&g), 2).unwrap();
        let l = OrientationLattice::new(s, &Config::default()).unwrap();
        let phi = l.rank_function().unwrap();
        let mut vals: Vec<i64> = l.elements().iter().map(|r| phi.eval(l.space(), r)).collect();
        vals.sort();
        assert_eq!(vals, vec![0, 1, 2, 3]);

        let g = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let s = CSpace::new(g, Orientation::from_bits(vec![true, true, false, false]), 0).unwrap();
        let l = OrientationLattice::new(s, &Config::default()).unwrap();
        let phi = l.rank_function().unwrap();
        let mut vals: Vec<i64> = l.elements().iter().map(|r| phi.eval(l.space(), r)).collect();
        vals.sort();
        assert_eq!(vals, vec![0, 1, 2, 2, 3, 4]);
    }

    #[test]
    fn singleton_push_lowers_by_one() {
        let g = MultiGraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap();
        let s = CSpace::new(g.clone(), Orientation::canonical(&g), 0).unwrap();
        let phi = s.rank_affine();
        for r in s.enumerate(&Config::default()).unwrap() {
            for a in s.maximal_classes(&r) {
                let lower = s.push_down(&r, a).unwrap();
                assert_eq!(phi.eval(&s, &lower), phi.eval(&s, &r) - 1);
            }
        }
    }
}
