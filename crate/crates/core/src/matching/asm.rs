use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::orientation::{height_function, EdgeBias, Orientation, Q};

/// Square matrix over {-1, 0, 1}, row major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AsmMatrix {
    pub n: usize,
    pub entries: Vec<i8>,
}

impl AsmMatrix {
    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.n + col]
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Non-zero entries alternate in sign, starting and ending with +1, in
    /// every row and column.
    pub fn is_alternating_sign(&self) -> bool {
        let line_ok = |line: &mut dyn Iterator<Item = i8>| {
            let nz: Vec<i8> = line.filter(|&x| x != 0).collect();
            !nz.is_empty()
                && nz.iter().enumerate().all(|(i, &x)| x == if i % 2 == 0 { 1 } else { -1 })
                && nz.len() % 2 == 1
        };
        (0..self.n).all(|r| line_ok(&mut (0..self.n).map(|c| self.get(r, c))))
            && (0..self.n).all(|c| line_ok(&mut (0..self.n).map(|r| self.get(r, c))))
    }

    /// The permutation `row -> column`, when the matrix has no -1.
    pub fn permutation(&self) -> Option<Vec<usize>> {
        if self.entries.iter().any(|&x| x < 0) {
            return None;
        }
        (0..self.n).map(|r| (0..self.n).find(|&c| self.get(r, c) == 1)).collect()
    }
}

/// Permutation matrix with a 1 at `(i, perm[i])`.
pub fn permutation_matrix(perm: &[usize]) -> AsmMatrix {
    let n = perm.len();
    let mut entries = vec![0; n * n];
    for (i, &j) in perm.iter().enumerate() {
        entries[i * n + j] = 1;
    }
    AsmMatrix { n, entries }
}

/// The matrix of signed corner sums `-UL + UR + LL - LR` of the height
/// function over the grid squares. Heights use bias 1/2 with `v*` at the
/// upper-left corner; vertex `y(n+1)+x` sits in row `y`, column `x`.
pub fn asm_of_orientation(g: &MultiGraph, r: &Orientation, n: usize) -> Result<AsmMatrix> {
    let w = n + 1;
    if g.num_vertices() != w * w || g.num_edges() != 2 * n * w {
        return Err(Error::WrongFamily(format!("not the pinned grid of order {n}")));
    }
    let h = height_function(g, r, 0, &EdgeBias::half(g))?;
    let at = |x: usize, y: usize| h.get(y * w + x);
    let mut entries = Vec::with_capacity(n * n);
    for row in 0..n {
        for col in 0..n {
            let s: Q = -at(col, row) + at(col + 1, row) + at(col, row + 1) - at(col + 1, row + 1);
            if !s.is_integer() || s.to_integer().abs() > 1 {
                return Err(Error::WrongFamily(format!("corner sum {s} at ({row}, {col})")));
            }
            entries.push(s.to_integer() as i8);
        }
    }
    Ok(AsmMatrix { n, entries })
}
