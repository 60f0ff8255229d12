#![allow(dead_code)]

use num_complex::Complex64 as C64;
use qutrit_lindblad::linalg::ComplexMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Builds an `n×n` complex matrix from `2n²` interleaved real parts.
pub fn from_parts(n: usize, parts: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| {
        let k = 2 * (i * n + j);
        C64::new(parts[k], parts[k + 1])
    })
}

/// Single-atom Kraus channel `ρ ↦ PρP + ⟨e|ρ|e⟩|g⟩⟨g|` reached by pure
/// `e → g` damping, with `P` the projector on `{u, g}`.
pub fn metastable_limit_kraus() -> [ComplexMatrix; 2] {
    let p = ComplexMatrix::from_real_diagonal(&[0.0, 1.0, 1.0]);
    let jump = ComplexMatrix::unit(3, 2, 0);
    [p, jump]
}
