//! Integer spanning-tree counts by the matrix-tree theorem.

use crate::graph::{MultiGraph, VertexId};

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn determinant(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Laplacian with row and column `root` deleted.
pub fn reduced_laplacian(g: &MultiGraph, root: VertexId) -> Vec<Vec<i128>> {
    let n = g.num_vertices();
    let idx = |v: VertexId| if v < root { v } else { v - 1 };
    let mut m = vec![vec![0i128; n - 1]; n - 1];
    for e in g.edges() {
        let (u, v) = g.ends(e);
        for (a, b) in [(u, v), (v, u)] {
            if a != root {
                m[idx(a)][idx(a)] += 1;
                if b != root {
                    m[idx(a)][idx(b)] -= 1;
                }
            }
        }
    }
    m
}

/// Number of spanning trees.
pub fn spanning_tree_count(g: &MultiGraph) -> u128 {
    determinant(reduced_laplacian(g, 0)) as u128
}
