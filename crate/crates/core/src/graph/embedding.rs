//! Face tracing of rotation systems and planar duals.
//!
//! A face is traced with the face kept on the left of every dart: after
//! arriving at `w` along `e`, leave along the clockwise successor of `e` at
//! `w`. On the sphere this is the counterclockwise (preferred) orientation of
//! every face; drawn in the plane, the unbounded face appears clockwise.

use super::{DirectedEdge, EdgeId, FaceId, MultiGraph, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    /// Darts with this face on their left, in traversal order.
    pub boundary: Vec<DirectedEdge>,
}

impl Face {
    /// Boundary length; edges internal to the face are counted twice.
    pub fn degree(&self) -> usize {
        self.boundary.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.boundary.iter().map(|d| d.tail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub faces: Vec<Face>,
    dart_face: Vec<FaceId>,
    euler: i64,
}

impl Embedding {
    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// `|V| - |E| + |F|`
    pub fn euler_characteristic(&self) -> i64 {
        self.euler
    }

    /// Face on the left of dart `d`.
    pub fn left_of(&self, g: &MultiGraph, d: DirectedEdge) -> FaceId {
        self.dart_face[g.dart_index(d)]
    }

    /// Face on the right of dart `d`.
    pub fn right_of(&self, g: &MultiGraph, d: DirectedEdge) -> FaceId {
        self.dart_face[g.dart_index(d.reversed())]
    }

    /// The two faces bordering edge `e`: (left of `ends.0 -> ends.1`, right of it).
    pub fn sides(&self, e: EdgeId) -> (FaceId, FaceId) {
        (self.dart_face[2 * e], self.dart_face[2 * e + 1])
    }

    /// Face lying in the clockwise sector from `e` to its clockwise successor at `v`.
    pub fn angle_face(&self, g: &MultiGraph, v: VertexId, e: EdgeId) -> FaceId {
        self.left_of(g, g.dart(e, v).reversed())
    }
}

/// Traces faces of any rotation system (sphere, torus, ...).
pub fn trace_faces_any(g: &MultiGraph) -> Result<Embedding> {
    if !g.has_rotation() {
        return Err(Error::NoRotation);
    }
    let ndarts = 2 * g.num_edges();
    let mut dart_face = vec![usize::MAX; ndarts];
    let mut faces = Vec::new();
    for start in 0..ndarts {
        if dart_face[start] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut boundary = Vec::new();
        let mut cur = start;
        loop {
            dart_face[cur] = id;
            let d = g.dart_at(cur);
            boundary.push(d);
            let next_edge = g.cw_successor(d.head, d.edge);
            cur = g.dart_index(g.dart(next_edge, d.head));
            if cur == start {
                break;
            }
        }
        faces.push(Face { id, boundary });
    }
    // a single isolated vertex still bounds one face
    if g.num_edges() == 0 {
        faces.push(Face { id: 0, boundary: Vec::new() });
    }
    let euler = g.num_vertices() as i64 - g.num_edges() as i64 + faces.len() as i64;
    Ok(Embedding { faces, dart_face, euler })
}

/// Traces faces and checks that the rotation system embeds in the sphere.
pub fn trace_faces(g: &MultiGraph) -> Result<Embedding> {
    let emb = trace_faces_any(g)?;
    if emb.euler != 2 {
        return Err(Error::NotSphere { euler: emb.euler });
    }
    Ok(emb)
}

/// Dual graph: one vertex per face, and dual edge `e⊥` (same index as `e`)
/// running from the face left of `ends.0 -> ends.1` to the face on its right.
/// The dual rotation lists each face's boundary edges clockwise around it.
///
/// Fails with `SelfLoop` when `g` has a bridge (both sides in one face).
pub fn dual_graph(g: &MultiGraph, emb: &Embedding) -> Result<(MultiGraph, Vec<EdgeId>)> {
    if emb.euler != 2 {
        return Err(Error::NotSphere { euler: emb.euler });
    }
    dual_graph_any(g, emb)
}

/// Dual of an embedding on any orientable surface.
pub fn dual_graph_any(g: &MultiGraph, emb: &Embedding) -> Result<(MultiGraph, Vec<EdgeId>)> {
    let ends: Vec<(usize, usize)> = g.edges().map(|e| emb.sides(e)).collect();
    let labels: Vec<u64> = g.edges().map(|e| g.edge_label(e)).collect();
    let dual = MultiGraph::from_parts((0..emb.num_faces() as u64).collect(), labels, ends)?;
    let rotation: Vec<Vec<EdgeId>> =
        emb.faces.iter().map(|f| f.boundary.iter().rev().map(|d| d.edge).collect()).collect();
    let dual = dual.with_rotation(rotation)?;
    Ok((dual, g.edges().collect()))
}
