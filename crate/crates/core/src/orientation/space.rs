use super::{is_c_orientation, Circulation, Orientation};
use crate::error::{Error, Result};
use crate::graph::{accessibility_partition, DirectedEdge, EdgeId, MultiGraph, Partition, VertexId};

/// The set of c-orientations of a graph for one circulation `c`, with the
/// special vertex `v*`.
///
/// Every c-orientation induces the same accessibility partition, so classes
/// are computed once from the witness. A class is frozen when it contains
/// `v*` (the class `A*`) or a vertex of the pinned boundary; frozen classes
/// are never pushed.
#[derive(Clone, Debug)]
pub struct CSpace {
    graph: MultiGraph,
    circulation: Circulation,
    partition: Partition,
    vstar: VertexId,
    frozen: Vec<bool>,
    internal: Vec<bool>,
    /// per class, incident edges leading to other classes
    boundary: Vec<Vec<EdgeId>>,
}

impl CSpace {
    pub fn new(graph: MultiGraph, reference: Orientation, vstar: VertexId) -> Result<Self> {
        if reference.len() != graph.num_edges() {
            return Err(Error::Invariant(format!(
                "reference orients {} edges, graph has {}",
                reference.len(),
                graph.num_edges()
            )));
        }
        if vstar >= graph.num_vertices() {
            return Err(Error::UnknownVertex(vstar as u64));
        }
        if let Some(p) = graph.pinned().find(|&p| !reference.contains(&graph, p)) {
            return Err(Error::BadPin(graph.edge_label(p.edge)));
        }
        let circulation = Circulation::of(&graph, &reference);
        let partition = accessibility_partition(&graph, &reference);
        let mut frozen = vec![false; partition.len()];
        frozen[partition.class_of(vstar)] = true;
        for (v, on) in graph.boundary_vertices().into_iter().enumerate() {
            if on {
                frozen[partition.class_of(v)] = true;
            }
        }
        let mut internal = vec![false; graph.num_edges()];
        let mut boundary = vec![Vec::new(); partition.len()];
        for e in graph.edges() {
            let (u, v) = graph.ends(e);
            let (cu, cv) = (partition.class_of(u), partition.class_of(v));
            if cu == cv {
                internal[e] = true;
            } else {
                boundary[cu].push(e);
                boundary[cv].push(e);
            }
        }
        Ok(CSpace { graph, circulation, partition, vstar, frozen, internal, boundary })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn circulation(&self) -> &Circulation {
        &self.circulation
    }

    pub fn reference(&self) -> &Orientation {
        &self.circulation.reference
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn vstar(&self) -> VertexId {
        self.vstar
    }

    /// Index of the class `A*` containing `v*`.
    pub fn astar(&self) -> usize {
        self.partition.class_of(self.vstar)
    }

    pub fn is_frozen(&self, class: usize) -> bool {
        self.frozen[class]
    }

    /// True when both endpoints of `e` share a class (Prop PZ: forced).
    pub fn is_internal(&self, e: EdgeId) -> bool {
        self.internal[e]
    }

    /// Neither forced nor pinned.
    pub fn is_free(&self, e: EdgeId) -> bool {
        !self.internal[e] && !self.graph.is_pinned(e)
    }

    /// Edges joining `class` to other classes.
    pub fn class_boundary(&self, class: usize) -> &[EdgeId] {
        &self.boundary[class]
    }

    /// Membership: correct circulation and all pins respected.
    pub fn contains(&self, r: &Orientation) -> bool {
        r.len() == self.graph.num_edges()
            && r.respects_pins(&self.graph)
            && is_c_orientation(&self.graph, r, &self.circulation)
    }

    /// Forced directed edges (read from the witness) and their reversals.
    pub fn forced_edges(&self) -> (Vec<DirectedEdge>, Vec<DirectedEdge>) {
        let forced: Vec<DirectedEdge> =
            self.graph.edges().filter(|&e| self.internal[e]).map(|e| self.reference().dart(&self.graph, e)).collect();
        let forbidden = forced.iter().map(|d| d.reversed()).collect();
        (forced, forbidden)
    }

    fn points_into(&self, r: &Orientation, class: usize, e: EdgeId) -> bool {
        self.partition.class_of(r.dart(&self.graph, e).head) == class
    }

    /// Every boundary edge of the class points into it.
    pub fn is_maximal(&self, r: &Orientation, class: usize) -> bool {
        self.boundary[class].iter().all(|&e| self.points_into(r, class, e))
    }

    /// Every boundary edge of the class points out of it.
    pub fn is_minimal(&self, r: &Orientation, class: usize) -> bool {
        self.boundary[class].iter().all(|&e| !self.points_into(r, class, e))
    }

    /// Maximal classes other than the frozen ones, lowest index first.
    pub fn maximal_classes(&self, r: &Orientation) -> Vec<usize> {
        (0..self.partition.len()).filter(|&a| !self.frozen[a] && self.is_maximal(r, a)).collect()
    }

    pub fn minimal_classes(&self, r: &Orientation) -> Vec<usize> {
        (0..self.partition.len()).filter(|&a| !self.frozen[a] && self.is_minimal(r, a)).collect()
    }

    /// Reverses every edge between a maximal class and its complement.
    pub fn push_down(&self, r: &Orientation, class: usize) -> Result<Orientation> {
        if self.frozen[class] {
            return Err(Error::IsAstar);
        }
        if !self.is_maximal(r, class) {
            return Err(Error::NotMaximal);
        }
        Ok(r.flipped(self.boundary[class].iter().copied()))
    }

    /// Reverses every edge between a minimal class and its complement.
    pub fn push_up(&self, r: &Orientation, class: usize) -> Result<Orientation> {
        if self.frozen[class] {
            return Err(Error::IsAstar);
        }
        if !self.is_minimal(r, class) {
            return Err(Error::NotMinimal);
        }
        Ok(r.flipped(self.boundary[class].iter().copied()))
    }

    /// Pushes down at the lowest maximal class until none is left.
    pub fn descend(&self, r: &Orientation) -> Orientation {
        let mut r = r.clone();
        while let Some(&a) = self.maximal_classes(&r).first() {
            r = r.flipped(self.boundary[a].iter().copied());
        }
        r
    }

    /// Pushes up at the lowest minimal class until none is left.
    pub fn ascend(&self, r: &Orientation) -> Orientation {
        let mut r = r.clone();
        while let Some(&a) = self.minimal_classes(&r).first() {
            r = r.flipped(self.boundary[a].iter().copied());
        }
        r
    }

    /// (bottom, top), reached greedily from the witness.
    pub fn extremes(&self) -> (Orientation, Orientation) {
        (self.descend(self.reference()), self.ascend(self.reference()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> MultiGraph {
        MultiGraph::new(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn path_pushes() {
        let g = path3();
        let right = Orientation::from_darts(&g, &[(0, 1), (1, 2)]);
        let left = right.reversed();
        let s = CSpace::new(g.clone(), right.clone(), 2).unwrap();
        assert!(s.maximal_classes(&right).is_empty());
        assert_eq!(s.maximal_classes(&left), vec![0]);
        let r1 = s.push_down(&left, 0).unwrap();
        assert_eq!(r1, Orientation::from_darts(&g, &[(0, 1), (2, 1)]));
        assert_eq!(s.push_up(&r1, 0).unwrap(), left);
        let r2 = s.push_down(&r1, 1).unwrap();
        assert_eq!(s.maximal_classes(&r2), vec![0]);
        let r3 = s.push_down(&r2, 0).unwrap();
        assert_eq!(r3, right);
        assert_eq!(s.push_down(&left, 2), Err(Error::IsAstar));
        assert_eq!(s.push_down(&left, 1), Err(Error::NotMaximal));
        assert_eq!(s.extremes(), (right, left));
    }

    #[test]
    fn forced_triangle_with_pendant() {
        let g = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let r = Orientation::from_darts(&g, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        let s = CSpace::new(g.clone(), r.clone(), 3).unwrap();
        let (forced, forbidden) = s.forced_edges();
        assert_eq!(forced.len(), 3);
        assert_eq!(forbidden.len(), 3);
        assert!(s.is_free(3));
        // both directions of the pendant occur
        assert!(s.contains(&r.flipped([3])));
        assert!(!s.contains(&r.flipped([0])));
    }

    #[test]
    fn forced_cycle_is_a_maximal_class() {
        // directed 4-cycle with a pendant edge into it
        let g = MultiGraph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 0)]).unwrap();
        let r = Orientation::from_darts(&g, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 0)]);
        let s = CSpace::new(g, r.clone(), 4).unwrap();
        assert_eq!(s.partition().classes[s.maximal_classes(&r)[0]], vec![0, 1, 2, 3]);
    }

    #[test]
    fn acyclic_c4_has_no_forced_edges() {
        let g = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let r = Orientation::from_darts(&g, &[(0, 1), (1, 2), (3, 2), (0, 3)]);
        let s = CSpace::new(g, r, 0).unwrap();
        assert!(s.forced_edges().0.is_empty());
        let g = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let r = Orientation::canonical(&g);
        let s = CSpace::new(g, r.clone(), 0).unwrap();
        assert_eq!(s.forced_edges().0, r.darts(s.graph()).collect::<Vec<_>>());
        assert_eq!(s.extremes(), (r.clone(), r));
    }
}
