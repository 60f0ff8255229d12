//! Seedable random matrices and states for property checks.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{kron, ComplexMatrix, ComplexVector};

/// Standard complex Gaussian, `E|z|² = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-random unitary: QR of a Ginibre matrix, with the phases of `R`'s
/// diagonal folded back into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let z = ginibre(rng, n, n);
    let mut q = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut col: Vec<C64> = (0..n).map(|i| z[(i, j)]).collect();
        // Modified Gram-Schmidt; r_jj ends up real positive, which is the
        // phase normalization.
        for k in 0..j {
            let proj: C64 = (0..n).map(|i| q[(i, k)].conj() * col[i]).sum();
            for (i, c) in col.iter_mut().enumerate() {
                *c -= proj * q[(i, k)];
            }
        }
        let norm = col.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for (i, c) in col.iter().enumerate() {
            q[(i, j)] = c / norm;
        }
    }
    q
}

pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    ginibre(rng, n, n).hermitian_part()
}

/// Normalized Haar-random pure state vector.
pub fn pure_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexVector {
    let v: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    ComplexVector(v.into_iter().map(|c| c / norm).collect())
}

/// Full-rank mixed state `G G† / tr(G G†)` from a square Ginibre matrix.
pub fn density_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n, n);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    m.scale_real(1.0 / tr).hermitian_part()
}

/// Random product state `ρA ⊗ ρB` of two qutrits.
pub fn product_state<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    let a = density_matrix(rng, 3);
    let b = density_matrix(rng, 3);
    kron(&a, &b).expect("3x3 factors")
}
