//! c-orientations of a graph and the distributive lattice they form.
//!
//! The order is defined through height-functions (exact rationals anchored at
//! `v*`); the covering moves are push-downs of maximal accessibility classes.

mod bias;
mod enumerate;
mod hasse;
mod height;
mod irreducible;
mod lattice;
mod rank;
mod space;

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{cycle_basis, CycleBasis, DirectedEdge, EdgeId, MultiGraph, VertexId};

pub use bias::{average_bias, EdgeBias};
pub use enumerate::Strategy;
pub use hasse::HasseDiagram;
pub use height::{height_function, orientation_of_height, HeightFunction};
pub use irreducible::IrreduciblePoset;
pub use lattice::{Comparison, OrientationLattice};
pub use rank::RankFunction;
pub use space::CSpace;

/// Exact rational numbers used for heights and biases.
pub type Q = num_rational::Ratio<i64>;

/// One direction per edge: `along[e]` means `ends.0 -> ends.1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    along: Vec<bool>,
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.along.iter().map(|&b| if b { '+' } else { '-' }).collect();
        write!(f, "Orientation({s})")
    }
}

impl Orientation {
    pub fn from_bits(along: Vec<bool>) -> Self {
        Orientation { along }
    }

    /// Every edge in its `ends.0 -> ends.1` direction.
    pub fn canonical(g: &MultiGraph) -> Self {
        Orientation { along: vec![true; g.num_edges()] }
    }

    /// `pairs[e] = (tail, head)` for every edge `e`.
    ///
    /// # Panics
    /// If a pair does not match the endpoints of its edge.
    pub fn from_darts(g: &MultiGraph, pairs: &[(VertexId, VertexId)]) -> Self {
        assert_eq!(pairs.len(), g.num_edges());
        let along = pairs
            .iter()
            .enumerate()
            .map(|(e, &(t, h))| {
                let (u, v) = g.ends(e);
                assert!((t, h) == (u, v) || (t, h) == (v, u), "pair {e} does not match edge");
                t == u
            })
            .collect();
        Orientation { along }
    }

    /// Orientation containing the given darts; every edge must appear once.
    pub fn from_directed(g: &MultiGraph, darts: impl IntoIterator<Item = DirectedEdge>) -> Result<Self> {
        let mut along = vec![None; g.num_edges()];
        for d in darts {
            let slot = along.get_mut(d.edge).ok_or(Error::UnknownEdge(d.edge as u64))?;
            if slot.is_some() {
                return Err(Error::DuplicateId(g.edge_label(d.edge)));
            }
            *slot = Some(g.ends(d.edge).0 == d.tail);
        }
        let along = along
            .into_iter()
            .enumerate()
            .map(|(e, b)| b.ok_or(Error::UnknownEdge(g.edge_label(e))))
            .collect::<Result<_>>()?;
        Ok(Orientation { along })
    }

    pub fn bits(&self) -> &[bool] {
        &self.along
    }

    pub fn len(&self) -> usize {
        self.along.len()
    }

    pub fn is_empty(&self) -> bool {
        self.along.is_empty()
    }

    pub fn is_along(&self, e: EdgeId) -> bool {
        self.along[e]
    }

    /// The directed edge of `e` contained in this orientation.
    pub fn dart(&self, g: &MultiGraph, e: EdgeId) -> DirectedEdge {
        let (u, v) = g.ends(e);
        if self.along[e] {
            DirectedEdge::new(e, u, v)
        } else {
            DirectedEdge::new(e, v, u)
        }
    }

    pub fn darts<'a>(&'a self, g: &'a MultiGraph) -> impl Iterator<Item = DirectedEdge> + 'a {
        (0..self.along.len()).map(move |e| self.dart(g, e))
    }

    pub fn contains(&self, g: &MultiGraph, d: DirectedEdge) -> bool {
        self.dart(g, d.edge) == d
    }

    pub fn flip(&mut self, e: EdgeId) {
        self.along[e] = !self.along[e];
    }

    pub fn flipped(&self, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut r = self.clone();
        for e in edges {
            r.flip(e);
        }
        r
    }

    pub fn reversed(&self) -> Self {
        Orientation { along: self.along.iter().map(|b| !b).collect() }
    }

    pub fn respects_pins(&self, g: &MultiGraph) -> bool {
        g.pinned().all(|p| self.contains(g, p))
    }
}

/// `|C⁺| - |C⁻|`: forward minus backward darts of `r` along the cycle.
pub fn circulation_around(g: &MultiGraph, r: &Orientation, cycle: &[DirectedEdge]) -> Result<i64> {
    if !crate::graph::basis_is_closed(cycle) {
        return Err(Error::BadCycle);
    }
    Ok(cycle.iter().map(|&d| if r.contains(g, d) { 1 } else { -1 }).sum())
}

/// A circulation, given by its values on a cycle basis and one witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circulation {
    pub basis: CycleBasis,
    pub values: Vec<i64>,
    pub reference: Orientation,
}

impl Circulation {
    pub fn of(g: &MultiGraph, reference: &Orientation) -> Self {
        let basis = cycle_basis(g);
        let values = basis
            .cycles
            .iter()
            .map(|c| circulation_around(g, reference, c).expect("basis cycles are closed"))
            .collect();
        Circulation { basis, values, reference: reference.clone() }
    }

    /// Parity and range of every basis value.
    pub fn is_well_formed(&self) -> bool {
        self.basis.cycles.iter().zip(&self.values).all(|(c, &v)| {
            let len = c.len() as i64;
            v.abs() <= len && (v - len).rem_euclid(2) == 0
        })
    }
}

/// True iff `r` has circulation `c` on every basis cycle.
pub fn is_c_orientation(g: &MultiGraph, r: &Orientation, c: &Circulation) -> bool {
    c.basis.cycles.iter().zip(&c.values).all(|(cyc, &v)| circulation_around(g, r, cyc).map(|x| x == v).unwrap_or(false))
}
