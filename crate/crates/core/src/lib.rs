//! Distributive lattices on c-orientations, d-factors and spanning trees of
//! finite graphs, with exact height functions and exhaustive verification.
//!
//! The orientation lattice is the single source of order structure. The
//! d-factor lattice is pulled back through planar duality, and the spanning
//! tree lattice through the Temperley bijection onto matchings of `H(v*, f*)`.

pub mod config;
pub mod counting;
pub mod error;
pub mod families;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod matching;
pub mod orientation;
pub mod poset;
pub mod torus;
pub mod trees;
pub mod verify;

mod par;

pub use config::{Config, Execution};
pub use error::{Error, Result};
pub use graph::{build_graph, DirectedEdge, EdgeId, FaceId, GraphSpec, MultiGraph, VertexId};
pub use orientation::{Orientation, OrientationLattice, Q};
