use num_rational::Ratio;

use super::{CSpace, Orientation, Q};
use crate::error::{ensure, Error, Result};
use crate::graph::{DirectedEdge, MultiGraph};

/// The function `F̄` on directed edges, stored by dart index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeBias {
    values: Vec<Q>,
}

impl EdgeBias {
    /// `F̄ = 1/2` on every directed edge.
    pub fn half(g: &MultiGraph) -> Self {
        EdgeBias { values: vec![Ratio::new(1, 2); 2 * g.num_edges()] }
    }

    /// Value of `f` on each `ends.0 -> ends.1` dart; reversals get `1 - f`.
    pub fn from_forward(g: &MultiGraph, f: impl Fn(DirectedEdge) -> Q) -> Self {
        let mut values = Vec::with_capacity(2 * g.num_edges());
        for e in g.edges() {
            let v = f(g.dart_at(2 * e));
            values.push(v);
            values.push(Q::from_integer(1) - v);
        }
        EdgeBias { values }
    }

    pub fn get(&self, g: &MultiGraph, d: DirectedEdge) -> Q {
        self.values[g.dart_index(d)]
    }

    /// Values by dart index (`2e` is `ends.0 -> ends.1`).
    pub fn values(&self) -> &[Q] {
        &self.values
    }

    /// Checks every `F̄` invariant against the space:
    /// antisymmetry, cycle sums `(|C| + c(C)) / 2`, `{0,1}` on forced and
    /// forbidden edges, and open `(0,1)` on free edges. Pinned edges only
    /// need to lie in `[0,1]`.
    pub fn validate(&self, space: &CSpace) -> Result<()> {
        let g = space.graph();
        ensure(self.values.len() == 2 * g.num_edges(), || "bias has wrong length".into())?;
        let zero = Q::from_integer(0);
        let one = Q::from_integer(1);
        for e in g.edges() {
            let (a, b) = (self.values[2 * e], self.values[2 * e + 1]);
            ensure(a + b == one, || format!("F̄ on edge {e} does not sum to 1"))?;
            ensure(zero <= a && a <= one, || format!("F̄ on edge {e} leaves [0,1]"))?;
            if space.is_internal(e) {
                let d = space.reference().dart(g, e);
                ensure(self.get(g, d) == one, || format!("forced edge {e} has F̄ != 1"))?;
            } else if !g.is_pinned(e) {
                ensure(zero < a && a < one, || format!("free edge {e} has F̄ in {{0,1}}"))?;
            }
        }
        let circ = space.circulation();
        for (cyc, &c) in circ.basis.cycles.iter().zip(&circ.values) {
            let sum: Q = cyc.iter().map(|&d| self.get(g, d)).sum();
            ensure(sum == Q::new(cyc.len() as i64 + c, 2), || "F̄ has the wrong sum on a basis cycle".into())?;
        }
        Ok(())
    }
}

/// `F̄(e⃗)` = fraction of the orientations containing `e⃗`.
pub fn average_bias(g: &MultiGraph, all: &[Orientation]) -> Result<EdgeBias> {
    if all.is_empty() {
        return Err(Error::EmptyEnumeration);
    }
    let n = all.len() as i64;
    let values = g
        .edges()
        .flat_map(|e| {
            let along = all.iter().filter(|r| r.is_along(e)).count() as i64;
            [Ratio::new(along, n), Ratio::new(n - along, n)]
        })
        .collect();
    Ok(EdgeBias { values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;

    #[test]
    fn path_average_is_half() {
        let g = MultiGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let s = CSpace::new(g.clone(), Orientation::canonical(&g), 2).unwrap();
        let all = s.enumerate(&Config::default()).unwrap();
        let b = average_bias(&g, &all).unwrap();
        assert_eq!(b, EdgeBias::half(&g));
        b.validate(&s).unwrap();
    }

    #[test]
    fn cycle_average_is_k_over_n() {
        for (n, k) in [(4usize, 2usize), (5, 2), (6, 1)] {
            let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            let g = MultiGraph::new(n, &edges).unwrap();
            // k edges against the cycle direction
            let r = Orientation::from_bits((0..n).map(|i| i >= k).collect());
            let s = CSpace::new(g.clone(), r, 0).unwrap();
            let all = s.enumerate(&Config::default()).unwrap();
            let b = average_bias(&g, &all).unwrap();
            for e in g.edges() {
                assert_eq!(b.get(&g, g.dart_at(2 * e + 1)), Ratio::new(k as i64, n as i64));
            }
            b.validate(&s).unwrap();
        }
    }

    #[test]
    fn empty_enumeration_is_rejected() {
        let g = MultiGraph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(average_bias(&g, &[]), Err(Error::EmptyEnumeration));
    }

    #[test]
    fn wrong_bias_is_caught() {
        let g = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let s = CSpace::new(g.clone(), Orientation::from_bits(vec![true, true, true, false]), 0).unwrap();
        assert!(EdgeBias::half(&g).validate(&s).is_err());
        let b = EdgeBias::from_forward(&g, |_| Ratio::new(3, 4));
        b.validate(&s).unwrap();
    }
}
