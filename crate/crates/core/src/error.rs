use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("edge {0} is a self-loop")]
    SelfLoop(u64),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("bad rotation at vertex {vertex}: {reason}")]
    BadRotation { vertex: u64, reason: String },
    #[error("duplicate id {0}")]
    DuplicateId(u64),
    #[error("unknown vertex {0}")]
    UnknownVertex(u64),
    #[error("unknown edge {0}")]
    UnknownEdge(u64),
    #[error("bad pin on edge {0}: tail/head do not match its endpoints")]
    BadPin(u64),
    #[error("rotation system is missing")]
    NoRotation,
    #[error("embedding is not spherical (Euler characteristic {euler})")]
    NotSphere { euler: i64 },
    #[error("graph is not bipartite; odd cycle {witness:?}")]
    NotBipartite { witness: Vec<VertexId> },
    #[error("walk is not a closed cycle")]
    BadCycle,
    #[error("orientations have different circulations")]
    DifferentCirculation,
    #[error("empty enumeration")]
    EmptyEnumeration,
    #[error("height-function inconsistent across edge {0}")]
    Inconsistent(EdgeId),
    #[error("map is not a height-function: edge {0} violates the increment rule")]
    NotAHeight(EdgeId),
    #[error("height-function is not zero at its anchor")]
    NotAnchored,
    #[error("class is not maximal")]
    NotMaximal,
    #[error("class is not minimal")]
    NotMinimal,
    #[error("class is frozen (contains v* or a boundary vertex)")]
    IsAstar,
    #[error("instance too large: {what} = {size} exceeds cap {cap}")]
    TooLarge { what: &'static str, size: usize, cap: usize },
    #[error("circulation is not acyclic")]
    NotAcyclic,
    #[error("no d-factor exists")]
    NoDFactor,
    #[error("edge set does not meet the degree specification at vertex {0}")]
    WrongDegrees(VertexId),
    #[error("face {0} is not alternating in the required sense")]
    NotAlternating(usize),
    #[error("face is f*")]
    IsFstar,
    #[error("instance is not of the expected family: {0}")]
    WrongFamily(String),
    #[error("region is not simply connected; inconsistent at lattice point {0:?}")]
    NotSimplyConnected((i64, i64)),
    #[error("cohomology is not in the phase diagram")]
    NotInDiagram,
    #[error("edge set is not a spanning tree")]
    NotSpanningTree,
    #[error("angle is not pivotal")]
    NotPivotal,
    #[error("angle does not satisfy swing conditions (1)-(4)")]
    NotPivotal4,
    #[error("v* is not incident with f*")]
    NotIncident,
    #[error("not a perfect matching")]
    NotPerfectMatching,
    #[error("poset is not graded")]
    NotGraded,
    #[error("graph is not outer-Hamiltonian: {0}")]
    NotOuterHamiltonian(String),
    #[error("bad family parameters: {0}")]
    BadParams(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error at {pointer:?}: {reason}")]
    Schema { pointer: String, reason: String },
}

impl Error {
    /// Stable snake-case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SelfLoop(..) => "self_loop",
            Error::Disconnected => "disconnected",
            Error::BadRotation { .. } => "bad_rotation",
            Error::DuplicateId(..) => "duplicate_id",
            Error::UnknownVertex(..) => "unknown_vertex",
            Error::UnknownEdge(..) => "unknown_edge",
            Error::BadPin(..) => "bad_pin",
            Error::NoRotation => "no_rotation",
            Error::NotSphere { .. } => "not_sphere",
            Error::NotBipartite { .. } => "not_bipartite",
            Error::BadCycle => "bad_cycle",
            Error::DifferentCirculation => "different_circulation",
            Error::EmptyEnumeration => "empty_enumeration",
            Error::Inconsistent(..) => "inconsistent",
            Error::NotAHeight(..) => "not_a_height",
            Error::NotAnchored => "not_anchored",
            Error::NotMaximal => "not_maximal",
            Error::NotMinimal => "not_minimal",
            Error::IsAstar => "is_astar",
            Error::TooLarge { .. } => "too_large",
            Error::NotAcyclic => "not_acyclic",
            Error::NoDFactor => "no_dfactor",
            Error::WrongDegrees(..) => "wrong_degrees",
            Error::NotAlternating(..) => "not_alternating",
            Error::IsFstar => "is_fstar",
            Error::WrongFamily(..) => "wrong_family",
            Error::NotSimplyConnected(..) => "not_simply_connected",
            Error::NotInDiagram => "not_in_diagram",
            Error::NotSpanningTree => "not_spanning_tree",
            Error::NotPivotal => "not_pivotal",
            Error::NotPivotal4 => "not_pivotal4",
            Error::NotIncident => "not_incident",
            Error::NotPerfectMatching => "not_perfect_matching",
            Error::NotGraded => "not_graded",
            Error::NotOuterHamiltonian(..) => "not_outer_hamiltonian",
            Error::BadParams(..) => "bad_params",
            Error::Invariant(..) => "invariant",
            Error::Parse(..) => "parse",
            Error::Schema { .. } => "schema",
        }
    }
}

/// Shorthand for returning an [`Error::Invariant`] when a cross-check fails.
pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invariant(msg()))
    }
}
