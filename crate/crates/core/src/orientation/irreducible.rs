use fixedbitset::FixedBitSet;

use super::{OrientationLattice, Q};
use crate::error::{ensure, Error, Result};
use crate::graph::VertexId;
use crate::poset::Poset;

/// The poset `P` of pairs `(v, i)`, `1 ≤ i ≤ D(v)`, whose order ideals are
/// the lattice elements: `R` maps to `{(v, i) : H_R(v) ≥ m(v) + i}`.
#[derive(Clone, Debug)]
pub struct IrreduciblePoset {
    pub elements: Vec<(VertexId, i64)>,
    /// `(upper, lower)` pairs of the transitive reduction
    pub covers: Vec<(usize, usize)>,
    pub m: Vec<Q>,
    pub d: Vec<i64>,
    pub poset: Poset,
}

impl IrreduciblePoset {
    /// Ideal of the element with the given levels.
    pub fn ideal_of(&self, levels: &[i64]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.elements.len());
        for (k, &(v, i)) in self.elements.iter().enumerate() {
            if levels[v] >= i {
                s.insert(k);
            }
        }
        s
    }
}

impl OrientationLattice {
    /// Builds `P` from `m`, `D` and adjacency, then asserts that its ideals
    /// are exactly the images of the lattice elements.
    pub fn join_irreducibles(&self) -> Result<IrreduciblePoset> {
        let space = self.space();
        if !space.partition().all_singletons() {
            return Err(Error::NotAcyclic);
        }
        let g = space.graph();
        let n = g.num_vertices();
        let m: Vec<Q> = (0..n).map(|v| self.min_height(v)).collect();
        let d: Vec<i64> = (0..n).map(|v| self.height_range(v)).collect();
        let elements: Vec<(VertexId, i64)> = (0..n).flat_map(|v| (1..=d[v]).map(move |i| (v, i))).collect();
        let level = |k: usize| m[elements[k].0] + Q::from_integer(elements[k].1);
        let adjacent = |v: VertexId, w: VertexId| g.neighbors(v).any(|(_, x)| x == w);
        let zero = Q::from_integer(0);
        let one = Q::from_integer(1);
        let poset = Poset::from_relation(elements.len(), |a, b| {
            // a < b
            let ((v, i), (w, j)) = (elements[a], elements[b]);
            if v == w {
                return j == i + 1;
            }
            let gap = level(b) - level(a);
            adjacent(v, w) && zero < gap && gap < one
        })?;
        let covers = poset.covers();
        let p = IrreduciblePoset { elements, covers, m, d, poset };
        let mut ideals: Vec<FixedBitSet> = (0..self.len()).map(|i| p.ideal_of(self.levels(i))).collect();
        for s in &ideals {
            ensure(p.poset.is_down_closed(s), || "image of an element is not an order ideal".into())?;
        }
        ideals.sort_by(|a, b| a.ones().cmp(b.ones()));
        ideals.dedup();
        ensure(ideals.len() == self.len(), || "two elements map to the same ideal".into())?;
        let count = p.poset.count_ideals();
        ensure(count == self.len() as u64, || format!("{count} order ideals for {} elements", self.len()))?;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::graph::MultiGraph;
    use crate::orientation::{CSpace, Orientation};
    use crate::poset::chain_product;

    #[test]
    fn path_gives_three_chain() {
        let g = MultiGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let s = CSpace::new(g.clone(), Orientation::canonical(&g), 2).unwrap();
        let l = OrientationLattice::new(s, &Config::default()).unwrap();
        let p = l.join_irreducibles().unwrap();
        assert_eq!(p.elements.len(), 3);
        assert!(p.poset.is_isomorphic(&chain_product(&[3])));
    }

    #[test]
    fn c4_gives_square() {
        let g = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let s = CSpace::new(g, Orientation::from_bits(vec![true, true, false, false]), 0).unwrap();
        let l = OrientationLattice::new(s, &Config::default()).unwrap();
        let p = l.join_irreducibles().unwrap();
        assert!(p.poset.is_isomorphic(&chain_product(&[2, 2])));
    }

    #[test]
    fn forced_edge_gives_empty_poset_or_not_acyclic() {
        let g = MultiGraph::new(2, &[(0, 1)]).unwrap();
        let g = g.clone().with_pins(vec![g.dart(0, 0)]).unwrap();
        let s = CSpace::new(g.clone(), Orientation::canonical(&g), 0).unwrap();
        let l = OrientationLattice::new(s, &Config::default()).unwrap();
        assert!(l.join_irreducibles().unwrap().elements.is_empty());
        let g = MultiGraph::new(2, &[(0, 1), (1, 0)]).unwrap();
        let s = CSpace::new(g, Orientation::from_bits(vec![true, true]), 0).unwrap();
        let l = OrientationLattice::new(s, &Config::default()).unwrap();
        assert!(matches!(l.join_irreducibles(), Err(Error::NotAcyclic)));
    }
}
