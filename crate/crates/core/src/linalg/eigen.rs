//! Cyclic Jacobi eigendecomposition for dense Hermitian matrices.
//!
//! Each rotation zeroes one off-diagonal pair `(p, q)` with a 2×2 unitary
//! that first rotates the phase of `a_pq` onto the real axis and then applies
//! the classical real Jacobi rotation. Sweeps run over all pairs in row order
//! until the off-diagonal Frobenius mass drops below machine precision
//! relative to the whole matrix.

use num_complex::Complex64 as C64;

use super::{ComplexMatrix, LinalgError};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and matching orthonormal eigenvectors, stored as
/// the columns of `vectors`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Vec<C64> {
        (0..self.vectors.rows())
            .map(|i| self.vectors[(i, k)])
            .collect()
    }
}

fn check_hermitian(m: &ComplexMatrix, tol: f64) -> Result<(), LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let asymmetry = m.hermiticity_defect();
    if asymmetry > tol {
        return Err(LinalgError::NotHermitian { asymmetry, tol });
    }
    Ok(())
}

fn off_diagonal_norm_sqr(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// The input is accepted when `max |M − M†| ≤ tol` and is symmetrized before
/// the iteration starts.
pub fn hermitian_eigen(m: &ComplexMatrix, tol: f64) -> Result<HermitianEigen, LinalgError> {
    check_hermitian(m, tol)?;
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let total = a.frobenius_norm().powi(2);
    let threshold = (f64::EPSILON * f64::EPSILON) * total;

    let mut converged = n == 1 || total == 0.0;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        converged = off_diagonal_norm_sqr(&a) <= threshold;
    }
    if !converged {
        return Err(LinalgError::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

/// Apply one Jacobi rotation annihilating `a[(p, q)]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip rotations whose effect is below the representable precision of
    // the diagonal.
    if g < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = C64::new(0.0, 0.0);
        a[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let phase = apq / g;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // U = diag(1, conj(phase)) · [[c, s], [-s, c]] on the (p, q) plane.
    let upp = C64::new(c, 0.0);
    let upq = C64::new(s, 0.0);
    let uqp = -phase.conj() * s;
    let uqq = phase.conj() * c;

    let n = a.rows();
    // A ← A U
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * upp + akq * uqp;
        a[(k, q)] = akp * upq + akq * uqq;
    }
    // A ← U† A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
        a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    // V ← V U
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * upp + vkq * uqp;
        v[(k, q)] = vkp * upq + vkq * uqq;
    }
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, tol: f64) -> Result<Vec<f64>, LinalgError> {
    hermitian_eigen(m, tol).map(|e| e.values)
}

/// Sum of absolute eigenvalues, `‖M‖₁` for Hermitian `M`.
pub fn trace_norm_hermitian(m: &ComplexMatrix, tol: f64) -> Result<f64, LinalgError> {
    Ok(hermitian_eigenvalues(m, tol)?.iter().map(|l| l.abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DEFAULT_HERMITIAN_TOL;

    fn real(m: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_fn(m.len(), m[0].len(), |i, j| C64::new(m[i][j], 0.0))
    }

    #[test]
    fn diagonal_spectrum_is_sorted() {
        let m = ComplexMatrix::from_real_diagonal(&[3.0, -1.0, 2.0]);
        assert_eq!(
            hermitian_eigenvalues(&m, DEFAULT_HERMITIAN_TOL).unwrap(),
            vec![-1.0, 2.0, 3.0]
        );
    }

    #[test]
    fn pauli_x() {
        let m = real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let vals = hermitian_eigenvalues(&m, DEFAULT_HERMITIAN_TOL).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-15 && (vals[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pauli_y_has_complex_eigenvectors() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = C64::new(0.0, -1.0);
        m[(1, 0)] = C64::new(0.0, 1.0);
        let e = hermitian_eigen(&m, DEFAULT_HERMITIAN_TOL).unwrap();
        for k in 0..2 {
            let v = e.vector(k);
            let mv = m.mul_vec(&v);
            for i in 0..2 {
                assert!((mv[i] - v[i] * e.values[k]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn rejects_non_hermitian_with_measured_asymmetry() {
        let m = real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        match hermitian_eigenvalues(&m, 1e-9) {
            Err(LinalgError::NotHermitian { asymmetry, .. }) => {
                assert!((asymmetry - 1.0).abs() < 1e-15)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_non_square() {
        assert!(matches!(
            hermitian_eigenvalues(&ComplexMatrix::zeros(2, 3), 1e-9),
            Err(LinalgError::NotSquare { .. })
        ));
    }

    #[test]
    fn trace_norm_of_indefinite_diagonal() {
        let m = ComplexMatrix::from_real_diagonal(&[1.0, -2.0]);
        assert!((trace_norm_hermitian(&m, 1e-9).unwrap() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_spectrum() {
        let m = ComplexMatrix::identity(9).scale_real(0.5);
        let vals = hermitian_eigenvalues(&m, 1e-9).unwrap();
        assert!(vals.iter().all(|&l| l == 0.5));
    }
}
