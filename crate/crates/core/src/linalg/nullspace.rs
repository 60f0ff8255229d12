use num_complex::Complex64 as C64;

use super::ComplexMatrix;

/// Reduced row-echelon decomposition with partial pivoting.
///
/// A column becomes a pivot when the largest remaining entry in it exceeds
/// `tol · max(1, max|M|)`; everything else is treated as numerically zero.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    reduced: ComplexMatrix,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(m: &ComplexMatrix, tol: f64) -> Self {
        let (rows, cols) = m.shape();
        let mut a = m.clone();
        let cutoff = tol * m.max_abs().max(1.0);
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..cols {
            if r == rows {
                break;
            }
            let (best, mag) = (r..rows)
                .map(|i| (i, a[(i, col)].norm()))
                .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if mag <= cutoff {
                for i in r..rows {
                    a[(i, col)] = C64::new(0.0, 0.0);
                }
                continue;
            }
            if best != r {
                for j in 0..cols {
                    let tmp = a[(r, j)];
                    a[(r, j)] = a[(best, j)];
                    a[(best, j)] = tmp;
                }
            }
            let inv = 1.0 / a[(r, col)];
            for j in col..cols {
                a[(r, j)] *= inv;
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = a[(i, col)];
                if f == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in col..cols {
                    let v = a[(r, j)];
                    a[(i, j)] -= f * v;
                }
            }
            pivots.push(col);
            r += 1;
        }
        Self { reduced: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// One basis vector per free column.
    pub fn null_space(&self) -> Vec<Vec<C64>> {
        let cols = self.reduced.cols();
        let free: Vec<usize> = (0..cols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![C64::new(0.0, 0.0); cols];
                v[f] = C64::new(1.0, 0.0);
                for (row, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.reduced[(row, f)];
                }
                v
            })
            .collect()
    }
}

pub fn rank(m: &ComplexMatrix, tol: f64) -> usize {
    RowEchelon::new(m, tol).rank()
}

pub fn null_space(m: &ComplexMatrix, tol: f64) -> Vec<Vec<C64>> {
    RowEchelon::new(m, tol).null_space()
}
