//! Finite posets as transitively closed bitset relations.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    /// `below[x]` holds every `y < x`.
    below: Vec<FixedBitSet>,
}

impl Poset {
    /// Transitive closure of the given `(upper, lower)` pairs.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut lower: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, l) in covers {
            lower[u].push(l);
        }
        // topological order: lowers before uppers
        let mut indeg = vec![0usize; n];
        for &(u, _) in covers {
            indeg[u] += 1;
        }
        let mut uppers: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, l) in covers {
            uppers[l].push(u);
        }
        let mut stack: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(x) = stack.pop() {
            order.push(x);
            for &u in &uppers[x] {
                indeg[u] -= 1;
                if indeg[u] == 0 {
                    stack.push(u);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Invariant("cover relation has a cycle".into()));
        }
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for &x in &order {
            let mut set = FixedBitSet::with_capacity(n);
            for &l in &lower[x] {
                set.insert(l);
                set.union_with(&below[l]);
            }
            below[x] = set;
        }
        Ok(Poset { below })
    }

    /// Poset generated by the relation `less(a, b)` meaning `a < b`.
    pub fn from_relation(n: usize, less: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && less(a, b) {
                    pairs.push((b, a));
                }
            }
        }
        Poset::from_covers(n, &pairs)
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    /// `a < b`
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a == b || self.less(a, b) || self.less(b, a)
    }

    pub fn below(&self, x: usize) -> &FixedBitSet {
        &self.below[x]
    }

    /// Transitive reduction, as sorted `(upper, lower)` pairs.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            let mut hidden = FixedBitSet::with_capacity(n);
            for y in self.below[x].ones() {
                hidden.union_with(&self.below[y]);
            }
            for y in self.below[x].ones() {
                if !hidden.contains(y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn dual(&self) -> Poset {
        let n = self.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in self.below[x].ones() {
                below[y].insert(x);
            }
        }
        Poset { below }
    }

    /// Induced subposet on `keep`, renumbered in the given order.
    pub fn subposet(&self, keep: &[usize]) -> Poset {
        let m = keep.len();
        let below = keep
            .iter()
            .map(|&x| {
                let mut s = FixedBitSet::with_capacity(m);
                for (j, &y) in keep.iter().enumerate() {
                    if self.less(y, x) {
                        s.insert(j);
                    }
                }
                s
            })
            .collect();
        Poset { below }
    }

    /// Number of down-closed subsets.
    pub fn count_ideals(&self) -> u64 {
        let n = self.len();
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in self.below[x].ones() {
                above[y].insert(x);
            }
        }
        let mut all = FixedBitSet::with_capacity(n);
        all.insert_range(..);
        let mut memo = HashMap::new();
        count_rec(all, &self.below, &above, &mut memo)
    }

    /// All order ideals, as bitsets, in increasing size then lexicographic order.
    pub fn ideals(&self) -> Vec<FixedBitSet> {
        let n = self.len();
        let mut out = vec![FixedBitSet::with_capacity(n)];
        let mut frontier = out.clone();
        while !frontier.is_empty() {
            let mut next: Vec<FixedBitSet> = Vec::new();
            for ideal in &frontier {
                for x in 0..n {
                    if !ideal.contains(x) && self.below[x].is_subset(ideal) {
                        let mut bigger = ideal.clone();
                        bigger.insert(x);
                        next.push(bigger);
                    }
                }
            }
            next.sort_by(|a, b| a.ones().cmp(b.ones()));
            next.dedup();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    pub fn is_down_closed(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|x| self.below[x].is_subset(set))
    }

    /// Length of the longest chain ending at each element.
    fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| self.below[x].count_ones(..));
        let mut h = vec![0usize; n];
        for &x in &order {
            h[x] = self.below[x].ones().map(|y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Rank of each element when every maximal chain between comparable
    /// elements has the same length, measured from the minimal elements.
    pub fn ranks(&self) -> Result<Vec<usize>> {
        let h = self.heights();
        if self.covers().iter().all(|&(u, l)| h[u] == h[l] + 1) {
            Ok(h)
        } else {
            Err(Error::NotGraded)
        }
    }

    pub fn is_graded(&self) -> bool {
        self.ranks().is_ok()
    }

    /// Coefficients of `Σ q^rank`.
    pub fn rank_generating_function(&self) -> Result<Vec<u64>> {
        let ranks = self.ranks()?;
        let mut coeffs = vec![0u64; ranks.iter().max().map_or(0, |m| m + 1)];
        for r in ranks {
            coeffs[r] += 1;
        }
        Ok(coeffs)
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let mut count = vec![0usize; self.len()];
        for (u, _) in self.covers() {
            count[u] += 1;
        }
        (0..self.len()).filter(|&x| count[x] == 1).collect()
    }

    /// Unique minimum and maximum, when they exist.
    pub fn bounds(&self) -> Option<(usize, usize)> {
        let n = self.len();
        let bottom = (0..n).find(|&x| (0..n).all(|y| y == x || self.less(x, y)))?;
        let top = (0..n).find(|&x| self.below[x].count_ones(..) == n - 1)?;
        Some((bottom, top))
    }

    /// Greatest lower bound, if unique.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> =
            (0..self.len()).filter(|&x| (x == a || self.less(x, a)) && (x == b || self.less(x, b))).collect();
        lower.iter().copied().find(|&m| lower.iter().all(|&x| x == m || self.less(x, m)))
    }

    /// Least upper bound, if unique.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.dual().meet(a, b)
    }

    fn cover_digraph(&self) -> DiGraph<(), ()> {
        let mut g = DiGraph::with_capacity(self.len(), 0);
        let nodes: Vec<_> = (0..self.len()).map(|_| g.add_node(())).collect();
        for (u, l) in self.covers() {
            g.add_edge(nodes[u], nodes[l], ());
        }
        g
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.len() == other.len() && petgraph::algo::is_isomorphic(&self.cover_digraph(), &other.cover_digraph())
    }

    /// Meet and join tables (row major), or `None` unless every pair has both.
    pub fn lattice_tables(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let meets = bound_table(&self.below)?;
        let dual = self.dual();
        let joins = bound_table(&dual.below)?;
        Some((meets, joins))
    }

    /// A lattice in which meet distributes over join.
    pub fn is_distributive_lattice(&self) -> bool {
        let n = self.len();
        let Some((meet, join)) = self.lattice_tables() else { return false };
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| meet[a * n + join[b * n + c]] == join[meet[a * n + b] * n + meet[a * n + c]]))
        })
    }
}

/// Greatest common lower bound of each pair under the strict relation `below`.
fn bound_table(below: &[FixedBitSet]) -> Option<Vec<usize>> {
    let n = below.len();
    let down: Vec<FixedBitSet> = (0..n)
        .map(|x| {
            let mut s = below[x].clone();
            s.insert(x);
            s
        })
        .collect();
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in a..n {
            let mut common = down[a].clone();
            common.intersect_with(&down[b]);
            let size = common.count_ones(..);
            let m = common.ones().find(|&m| down[m].count_ones(..) == size)?;
            table[a * n + b] = m;
            table[b * n + a] = m;
        }
    }
    Some(table)
}

fn count_rec(
    set: FixedBitSet,
    below: &[FixedBitSet],
    above: &[FixedBitSet],
    memo: &mut HashMap<FixedBitSet, u64>,
) -> u64 {
    let Some(x) = set.ones().next() else {
        return 1;
    };
    if let Some(&c) = memo.get(&set) {
        return c;
    }
    let mut without = set.clone();
    without.set(x, false);
    without.difference_with(&above[x]);
    let mut with = set.clone();
    with.set(x, false);
    with.difference_with(&below[x]);
    let c = count_rec(without, below, above, memo) + count_rec(with, below, above, memo);
    memo.insert(set, c);
    c
}

/// Product of chains `a_1 × ... × a_k`, elements in lexicographic order.
pub fn chain_product(dims: &[usize]) -> Poset {
    let mut points: Vec<Vec<usize>> = vec![Vec::new()];
    for &d in dims {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..d).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    let n = points.len();
    Poset::from_relation(n, |a, b| points[a].iter().zip(&points[b]).all(|(x, y)| x <= y))
        .expect("product order is acyclic")
}

/// The lattice of order ideals of `p`, ordered by inclusion.
pub fn ideal_lattice(p: &Poset) -> Poset {
    let ideals = p.ideals();
    let n = ideals.len();
    Poset::from_relation(n, |a, b| ideals[a].is_subset(&ideals[b])).expect("inclusion is acyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Poset {
        let covers: Vec<(usize, usize)> = (1..n).map(|i| (i, i - 1)).collect();
        Poset::from_covers(n, &covers).unwrap()
    }

    #[test]
    fn chains() {
        let c = chain(4);
        assert!(c.less(0, 3));
        assert_eq!(c.covers(), vec![(1, 0), (2, 1), (3, 2)]);
        assert_eq!(c.count_ideals(), 5);
        assert_eq!(c.rank_generating_function().unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(c.join_irreducibles(), vec![1, 2, 3]);
        assert_eq!(c.bounds(), Some((0, 3)));
    }

    #[test]
    fn grid_ideals() {
        let g = chain_product(&[2, 2]);
        assert_eq!(g.count_ideals(), 6);
        assert_eq!(g.ideals().len(), 6);
        let l = ideal_lattice(&g);
        assert_eq!(l.rank_generating_function().unwrap(), vec![1, 1, 2, 1, 1]);
        assert_eq!(l.covers().len(), 6);
        assert_eq!(l.join_irreducibles().len(), 4);
        let ji = l.subposet(&l.join_irreducibles());
        assert!(ji.is_isomorphic(&g));
        assert_eq!(chain_product(&[1, 2, 2]).count_ideals(), 6);
        assert_eq!(chain_product(&[2, 2, 2]).count_ideals(), 20);
    }

    #[test]
    fn cycles_and_grading() {
        assert!(Poset::from_covers(2, &[(0, 1), (1, 0)]).is_err());
        // pentagon N5 is not graded
        let n5 = Poset::from_covers(5, &[(1, 0), (2, 1), (4, 2), (3, 0), (4, 3)]).unwrap();
        assert_eq!(n5.ranks(), Err(Error::NotGraded));
        assert_eq!(n5.meet(2, 3), Some(0));
        assert_eq!(n5.join(1, 3), Some(4));
    }

    #[test]
    fn lattice_axioms() {
        assert!(chain(4).is_distributive_lattice());
        assert!(ideal_lattice(&chain_product(&[2, 3])).is_distributive_lattice());
        let n5 = Poset::from_covers(5, &[(1, 0), (2, 1), (4, 2), (3, 0), (4, 3)]).unwrap();
        assert!(n5.lattice_tables().is_some());
        assert!(!n5.is_distributive_lattice());
        let m3 = Poset::from_covers(5, &[(1, 0), (2, 0), (3, 0), (4, 1), (4, 2), (4, 3)]).unwrap();
        assert!(!m3.is_distributive_lattice());
        let vee = Poset::from_covers(3, &[(1, 0), (2, 0)]).unwrap();
        assert_eq!(vee.lattice_tables(), None);
    }

    #[test]
    fn isomorphism() {
        assert!(chain(3).is_isomorphic(&chain(3).dual()));
        assert!(!chain(2).is_isomorphic(&Poset::from_covers(2, &[]).unwrap()));
        let empty = Poset::from_covers(0, &[]).unwrap();
        assert_eq!(empty.count_ideals(), 1);
    }
}
