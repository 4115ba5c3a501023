use super::{DirectedEdge, MultiGraph, VertexId};

/// Fundamental cycles of the lowest-id depth-first spanning tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBasis {
    pub cycles: Vec<Vec<DirectedEdge>>,
}

impl CycleBasis {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

/// Each basis cycle starts with its non-tree edge in the `ends.0 -> ends.1`
/// direction and returns through the tree.
pub fn cycle_basis(g: &MultiGraph) -> CycleBasis {
    let n = g.num_vertices();
    let mut parent: Vec<Option<DirectedEdge>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut in_tree = vec![false; g.num_edges()];
    // iterative DFS, neighbours in increasing edge order
    let mut stack: Vec<(VertexId, usize)> = vec![(0, 0)];
    seen[0] = true;
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        let inc = g.incident(v);
        if *i < inc.len() {
            let e = inc[*i];
            *i += 1;
            let w = g.other_end(e, v);
            if !seen[w] {
                seen[w] = true;
                in_tree[e] = true;
                parent[w] = Some(DirectedEdge::new(e, w, v));
                depth[w] = depth[v] + 1;
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }
    let mut cycles = Vec::new();
    for e in g.edges() {
        if in_tree[e] {
            continue;
        }
        let (u, w) = g.ends(e);
        // walk w and u up to their common ancestor
        let (mut a, mut b) = (w, u);
        let mut up_from_w = Vec::new();
        let mut up_from_u = Vec::new();
        while a != b {
            if depth[a] >= depth[b] {
                let p = parent[a].expect("non-root has parent");
                up_from_w.push(p);
                a = p.head;
            } else {
                let p = parent[b].expect("non-root has parent");
                up_from_u.push(p);
                b = p.head;
            }
        }
        let mut cycle = vec![DirectedEdge::new(e, u, w)];
        cycle.extend(up_from_w);
        cycle.extend(up_from_u.into_iter().rev().map(DirectedEdge::reversed));
        cycles.push(cycle);
    }
    CycleBasis { cycles }
}

/// True when the darts form a closed walk.
pub(crate) fn is_closed(cycle: &[DirectedEdge]) -> bool {
    !cycle.is_empty()
        && cycle.windows(2).all(|w| w[0].head == w[1].tail)
        && cycle.last().map(|d| d.head) == cycle.first().map(|d| d.tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let c4 = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let b = cycle_basis(&c4);
        assert_eq!(b.len(), 1);
        assert_eq!(b.cycles[0].len(), 4);
        let tree = MultiGraph::new(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert!(cycle_basis(&tree).is_empty());
        let k4 = MultiGraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let b = cycle_basis(&k4);
        assert_eq!(b.len(), 3);
        assert!(b.cycles.iter().all(|c| is_closed(c)));
    }

    #[test]
    fn parallel_edges_give_two_cycles() {
        let g = MultiGraph::new(2, &[(0, 1), (0, 1), (1, 0)]).unwrap();
        let b = cycle_basis(&g);
        assert_eq!(b.len(), 2);
        assert!(b.cycles.iter().all(|c| c.len() == 2 && is_closed(c)));
    }
}
