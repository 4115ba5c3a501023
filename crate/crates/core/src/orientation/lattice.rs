use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::{
    average_bias, height_function, orientation_of_height, CSpace, EdgeBias, HasseDiagram, HeightFunction, Orientation,
    Q,
};
use crate::config::Config;
use crate::error::{ensure, Error, Result};
use crate::graph::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// The enumerated lattice of c-orientations with their height-functions.
///
/// Heights of two c-orientations differ by integers, so each element is also
/// stored as an integer level vector `H - m` where `m` is the pointwise
/// minimum. Meet and join are pointwise min and max of levels.
#[derive(Clone, Debug)]
pub struct OrientationLattice {
    space: CSpace,
    bias: EdgeBias,
    elements: Vec<Orientation>,
    index: HashMap<Orientation, usize>,
    heights: Vec<HeightFunction>,
    min_height: Vec<Q>,
    levels: Vec<Vec<i64>>,
    level_index: HashMap<Vec<i64>, usize>,
}

impl OrientationLattice {
    /// Enumerates the space and uses the average bias.
    pub fn new(space: CSpace, cfg: &Config) -> Result<Self> {
        let elements = space.enumerate(cfg)?;
        let bias = average_bias(space.graph(), &elements)?;
        OrientationLattice::from_elements(space, elements, bias)
    }

    /// Enumerates the space and uses the given bias.
    pub fn with_bias(space: CSpace, bias: EdgeBias, cfg: &Config) -> Result<Self> {
        let elements = space.enumerate(cfg)?;
        OrientationLattice::from_elements(space, elements, bias)
    }

    pub fn from_elements(space: CSpace, mut elements: Vec<Orientation>, bias: EdgeBias) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyEnumeration);
        }
        bias.validate(&space)?;
        elements.sort();
        elements.dedup();
        let g = space.graph();
        let heights =
            elements.iter().map(|r| height_function(g, r, space.vstar(), &bias)).collect::<Result<Vec<_>>>()?;
        let n = g.num_vertices();
        let min_height: Vec<Q> =
            (0..n).map(|v| heights.iter().map(|h| h.values[v]).min().expect("non-empty")).collect();
        let mut levels = Vec::with_capacity(heights.len());
        for h in &heights {
            let mut l = Vec::with_capacity(n);
            for (v, (value, low)) in h.values.iter().zip(&min_height).enumerate() {
                let d = value - low;
                ensure(d.is_integer(), || format!("height difference at vertex {v} is not an integer"))?;
                l.push(d.to_integer());
            }
            levels.push(l);
        }
        let index = elements.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let level_index: HashMap<Vec<i64>, usize> = levels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        ensure(level_index.len() == elements.len(), || "two orientations share a height-function".into())?;
        Ok(OrientationLattice { space, bias, elements, index, heights, min_height, levels, level_index })
    }

    pub fn space(&self) -> &CSpace {
        &self.space
    }

    pub fn bias(&self) -> &EdgeBias {
        &self.bias
    }

    pub fn elements(&self) -> &[Orientation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, r: &Orientation) -> Option<usize> {
        self.index.get(r).copied()
    }

    fn require(&self, r: &Orientation) -> Result<usize> {
        self.index_of(r).ok_or(Error::DifferentCirculation)
    }

    pub fn height(&self, i: usize) -> &HeightFunction {
        &self.heights[i]
    }

    /// `H - m` for element `i`.
    pub fn levels(&self, i: usize) -> &[i64] {
        &self.levels[i]
    }

    /// Pointwise minimum height `m(v)`.
    pub fn min_height(&self, v: VertexId) -> Q {
        self.min_height[v]
    }

    /// Height range `D(v) = M(v) - m(v)`.
    pub fn height_range(&self, v: VertexId) -> i64 {
        self.levels.iter().map(|l| l[v]).max().unwrap_or(0)
    }

    pub fn compare_idx(&self, i: usize, j: usize) -> Comparison {
        let (a, b) = (&self.levels[i], &self.levels[j]);
        let ge = a.iter().zip(b).all(|(x, y)| x >= y);
        let le = a.iter().zip(b).all(|(x, y)| x <= y);
        match (ge, le) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::Greater,
            (false, true) => Comparison::Less,
            (false, false) => Comparison::Incomparable,
        }
    }

    pub fn compare(&self, r: &Orientation, s: &Orientation) -> Result<Comparison> {
        Ok(self.compare_idx(self.require(r)?, self.require(s)?))
    }

    fn lookup_levels(&self, l: Vec<i64>) -> Result<usize> {
        self.level_index
            .get(&l)
            .copied()
            .ok_or_else(|| Error::Invariant("pointwise extremum of two heights is not a height".into()))
    }

    pub fn meet_idx(&self, i: usize, j: usize) -> Result<usize> {
        let l = self.levels[i].iter().zip(&self.levels[j]).map(|(&a, &b)| a.min(b)).collect();
        self.lookup_levels(l)
    }

    pub fn join_idx(&self, i: usize, j: usize) -> Result<usize> {
        let l = self.levels[i].iter().zip(&self.levels[j]).map(|(&a, &b)| a.max(b)).collect();
        self.lookup_levels(l)
    }

    /// Orientation of the pointwise minimum height, cross-checked against
    /// the level lookup.
    pub fn meet(&self, r: &Orientation, s: &Orientation) -> Result<Orientation> {
        let (i, j) = (self.require(r)?, self.require(s)?);
        let h = self.heights[i].pointwise_min(&self.heights[j]);
        let m = orientation_of_height(self.space.graph(), &h, &self.bias)?;
        ensure(m == self.elements[self.meet_idx(i, j)?], || "meet disagrees with level minimum".into())?;
        Ok(m)
    }

    pub fn join(&self, r: &Orientation, s: &Orientation) -> Result<Orientation> {
        let (i, j) = (self.require(r)?, self.require(s)?);
        let h = self.heights[i].pointwise_max(&self.heights[j]);
        let m = orientation_of_height(self.space.graph(), &h, &self.bias)?;
        ensure(m == self.elements[self.join_idx(i, j)?], || "join disagrees with level maximum".into())?;
        Ok(m)
    }

    /// Element with all levels zero.
    pub fn bottom(&self) -> usize {
        self.level_index[&vec![0; self.space.graph().num_vertices()]]
    }

    /// Element with all levels maximal.
    pub fn top(&self) -> usize {
        let n = self.space.graph().num_vertices();
        let l: Vec<i64> = (0..n).map(|v| self.height_range(v)).collect();
        self.level_index[&l]
    }

    /// Maximal classes by the boundary-edge test, cross-checked against
    /// mesas of the height-function (every neighbour strictly lower).
    pub fn maximal_classes(&self, r: &Orientation) -> Result<Vec<usize>> {
        let i = self.require(r)?;
        let by_edges = self.space.maximal_classes(r);
        let g = self.space.graph();
        let h = &self.heights[i];
        let p = self.space.partition();
        let mesas: Vec<usize> = (0..p.len())
            .filter(|&a| !self.space.is_frozen(a))
            .filter(|&a| {
                self.space.class_boundary(a).iter().all(|&e| {
                    let (u, v) = g.ends(e);
                    let (inner, outer) = if p.class_of(u) == a { (u, v) } else { (v, u) };
                    h.values[outer] < h.values[inner]
                })
            })
            .collect();
        ensure(by_edges == mesas, || "maximal classes differ from mesas".into())?;
        Ok(by_edges)
    }

    /// Covers from single push-downs, ranked from the bottom.
    ///
    /// For at most 512 elements the covers are also derived from the height
    /// order and asserted identical.
    pub fn hasse(&self) -> Result<HasseDiagram<Orientation>> {
        let mut covers = Vec::new();
        for (i, r) in self.elements.iter().enumerate() {
            for a in self.space.maximal_classes(r) {
                let lower = self.space.push_down(r, a)?;
                let j = self.index_of(&lower).ok_or_else(|| Error::Invariant("push-down left the lattice".into()))?;
                covers.push((i, j));
            }
        }
        let h = HasseDiagram::new(self.elements.clone(), covers);
        if self.len() <= 512 {
            let order = self.order_covers();
            ensure(order == h.covers, || "push-down covers differ from order covers".into())?;
        }
        h.with_rank_from(self.bottom())
    }

    /// Covering pairs of the pointwise height order.
    pub fn order_covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let below: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut s = FixedBitSet::with_capacity(n);
                for j in 0..n {
                    if self.compare_idx(i, j) == Comparison::Greater {
                        s.insert(j);
                    }
                }
                s
            })
            .collect();
        let mut out = Vec::new();
        for i in 0..n {
            let mut hidden = FixedBitSet::with_capacity(n);
            for j in below[i].ones() {
                hidden.union_with(&below[j]);
            }
            out.extend(below[i].ones().filter(|&j| !hidden.contains(j)).map(|j| (i, j)));
        }
        out.sort_unstable();
        out
    }

    /// Undirected cover-graph distance between two elements.
    pub fn cover_distance(&self, r: &Orientation, s: &Orientation) -> Result<usize> {
        let (i, j) = (self.require(r)?, self.require(s)?);
        let h = self.hasse()?;
        h.distance(i, j).ok_or_else(|| Error::Invariant("cover graph is disconnected".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MultiGraph;

    fn c4_lattice() -> OrientationLattice {
        let g = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let s = CSpace::new(g, Orientation::from_bits(vec![true, true, false, false]), 0).unwrap();
        OrientationLattice::new(s, &Config::default()).unwrap()
    }

    fn path_lattice(n: usize) -> OrientationLattice {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
        let g = MultiGraph::new(n + 1, &edges).unwrap();
        let s = CSpace::new(g.clone(), Orientation::canonical(&g), n).unwrap();
        OrientationLattice::new(s, &Config::default()).unwrap()
    }

    #[test]
    fn path_order() {
        let l = path_lattice(2);
        let g = l.space().graph().clone();
        let right = Orientation::from_darts(&g, &[(0, 1), (1, 2)]);
        let left = right.reversed();
        assert_eq!(l.compare(&left, &right).unwrap(), Comparison::Greater);
        assert_eq!(l.compare(&left, &left).unwrap(), Comparison::Equal);
        assert_eq!(l.elements()[l.bottom()], right);
        assert_eq!(l.elements()[l.top()], left);
        assert_eq!(l.cover_distance(&left, &right).unwrap(), 3);
        assert_eq!(l.maximal_classes(&left).unwrap(), vec![0]);
        assert!(l.maximal_classes(&right).unwrap().is_empty());
        let h = l.hasse().unwrap();
        assert_eq!(h.covers.len(), 3);
        assert_eq!(h.rank_generating_function().unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn c4_is_young_lattice() {
        let l = c4_lattice();
        assert_eq!(l.len(), 6);
        let h = l.hasse().unwrap();
        assert_eq!(h.covers.len(), 6);
        assert_eq!(h.rank_generating_function().unwrap(), vec![1, 1, 2, 1, 1]);
        let rank = h.rank.as_ref().unwrap();
        let mid: Vec<usize> = (0..6).filter(|&i| rank[i] == 2).collect();
        let (a, b) = (&l.elements()[mid[0]], &l.elements()[mid[1]]);
        assert_eq!(l.compare(a, b).unwrap(), Comparison::Incomparable);
        let m = l.meet(a, b).unwrap();
        assert_eq!(rank[l.index_of(&m).unwrap()], 1);
        let j = l.join(a, b).unwrap();
        assert_eq!(rank[l.index_of(&j).unwrap()], 3);
        assert_eq!(l.meet(a, a).unwrap(), *a);
    }

    #[test]
    fn different_circulation_is_rejected() {
        let l = c4_lattice();
        let other = Orientation::canonical(l.space().graph());
        assert_eq!(l.compare(&other, &other), Err(Error::DifferentCirculation));
    }

    #[test]
    fn single_element() {
        let g = MultiGraph::new(2, &[(0, 1), (1, 0)]).unwrap();
        let s = CSpace::new(g, Orientation::from_bits(vec![true, true]), 0).unwrap();
        let l = OrientationLattice::new(s, &Config::default()).unwrap();
        assert_eq!(l.len(), 1);
        assert!(l.hasse().unwrap().covers.is_empty());
    }
}
