use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::{MultiGraph, VertexId};
use crate::error::{Error, Result};
use crate::orientation::Orientation;

/// A partition of the vertex set. Classes are sorted internally and
/// numbered by their lowest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub classes: Vec<Vec<VertexId>>,
    class_of: Vec<usize>,
}

impl Partition {
    pub fn from_classes(n: usize, mut classes: Vec<Vec<VertexId>>) -> Self {
        for c in &mut classes {
            c.sort_unstable();
        }
        classes.sort_unstable_by_key(|c| c[0]);
        let mut class_of = vec![usize::MAX; n];
        for (i, c) in classes.iter().enumerate() {
            for &v in c {
                class_of[v] = i;
            }
        }
        Partition { classes, class_of }
    }

    pub fn class_of(&self, v: VertexId) -> usize {
        self.class_of[v]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn all_singletons(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

/// Strongly connected components of the orientation (mutual accessibility).
pub fn accessibility_partition(g: &MultiGraph, r: &Orientation) -> Partition {
    let mut dg = DiGraph::<(), ()>::with_capacity(g.num_vertices(), g.num_edges());
    let nodes: Vec<_> = g.vertices().map(|_| dg.add_node(())).collect();
    for e in g.edges() {
        let d = r.dart(g, e);
        dg.add_edge(nodes[d.tail], nodes[d.head], ());
    }
    let classes = tarjan_scc(&dg).into_iter().map(|c| c.into_iter().map(|n| n.index()).collect()).collect();
    Partition::from_classes(g.num_vertices(), classes)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring(pub Vec<Color>);

impl Coloring {
    pub fn color(&self, v: VertexId) -> Color {
        self.0[v]
    }

    pub fn is_black(&self, v: VertexId) -> bool {
        self.0[v] == Color::Black
    }

    pub fn flipped(&self) -> Coloring {
        Coloring(self.0.iter().map(|c| c.flip()).collect())
    }
}

/// Proper 2-coloring with the lowest vertex black.
pub fn bipartite_coloring(g: &MultiGraph) -> Result<Coloring> {
    let n = g.num_vertices();
    let mut color: Vec<Option<Color>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    color[0] = Some(Color::Black);
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        let cv = color[v].expect("queued vertices are colored");
        for (_, w) in g.neighbors(v) {
            match color[w] {
                None => {
                    color[w] = Some(cv.flip());
                    parent[w] = v;
                    queue.push_back(w);
                }
                Some(cw) if cw == cv => return Err(Error::NotBipartite { witness: odd_cycle(&parent, v, w) }),
                _ => {}
            }
        }
    }
    Ok(Coloring(color.into_iter().map(|c| c.expect("connected")).collect()))
}

/// Closes the BFS-tree paths of `a` and `b` (adjacent, same color) into a cycle.
fn odd_cycle(parent: &[usize], a: VertexId, b: VertexId) -> Vec<VertexId> {
    let path = |mut v: VertexId| {
        let mut p = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            p.push(v);
        }
        p
    };
    let pa = path(a);
    let pb = path(b);
    let lca = *pa.iter().find(|v| pb.contains(v)).expect("common root");
    let mut cycle: Vec<VertexId> = pa.iter().copied().take_while(|&v| v != lca).collect();
    cycle.push(lca);
    let back: Vec<VertexId> = pb.iter().copied().take_while(|&v| v != lca).collect();
    cycle.extend(back.into_iter().rev());
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::rectangle_grid;

    fn c4() -> MultiGraph {
        MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn acyclic_orientation_gives_singletons() {
        let g = c4();
        let r = Orientation::from_darts(&g, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let p = accessibility_partition(&g, &r);
        assert_eq!(p.len(), 4);
        assert!(p.all_singletons());
    }

    #[test]
    fn directed_cycle_is_one_class() {
        let g = c4();
        let r = Orientation::from_darts(&g, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let p = accessibility_partition(&g, &r);
        assert_eq!(p.classes, vec![vec![0, 1, 2, 3]]);
    }

    /// Oracle: v ~ w iff each reaches the other by forward paths, found by
    /// exhaustive path search.
    fn reach(g: &MultiGraph, r: &Orientation, from: VertexId) -> Vec<bool> {
        let mut seen = vec![false; g.num_vertices()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(v) = stack.pop() {
            for &e in g.incident(v) {
                let d = r.dart(g, e);
                if d.tail == v && !seen[d.head] {
                    seen[d.head] = true;
                    stack.push(d.head);
                }
            }
        }
        seen
    }

    #[test]
    fn two_directed_triangles_joined_by_an_edge() {
        let g = MultiGraph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]).unwrap();
        let r = Orientation::from_darts(&g, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]);
        let p = accessibility_partition(&g, &r);
        assert_eq!(p.len(), 2);
        let reach_all: Vec<Vec<bool>> = g.vertices().map(|v| reach(&g, &r, v)).collect();
        for v in g.vertices() {
            for w in g.vertices() {
                let mutual = reach_all[v][w] && reach_all[w][v];
                assert_eq!(mutual, p.class_of(v) == p.class_of(w));
            }
        }
    }

    #[test]
    fn colorings() {
        let c = bipartite_coloring(&c4()).unwrap();
        assert_eq!(c.0, vec![Color::Black, Color::White, Color::Black, Color::White]);
        let tri = MultiGraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        match bipartite_coloring(&tri) {
            Err(Error::NotBipartite { witness }) => {
                let mut w = witness.clone();
                w.sort();
                assert_eq!(w, vec![0, 1, 2]);
            }
            other => panic!("{other:?}"),
        }
        let grid = rectangle_grid(3, 3);
        let c = bipartite_coloring(&grid).unwrap();
        for e in grid.edges() {
            let (a, b) = grid.ends(e);
            assert_ne!(c.color(a), c.color(b));
        }
    }
}
