//! Dense complex linear algebra for bipartite qutrit states.

mod eigen;
mod matrix;
mod nullspace;

use thiserror::Error;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, trace_norm_hermitian, HermitianEigen};
pub use matrix::{ComplexMatrix, ComplexVector};
pub use nullspace::{null_space, rank, RowEchelon};

/// Local dimension of one atom.
pub const LEVELS: usize = 3;
/// Dimension of the two-atom Hilbert space.
pub const PAIR_DIM: usize = LEVELS * LEVELS;

/// Default gate on `max |M − M†|` before an eigensolve.
pub const DEFAULT_HERMITIAN_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("expected shape {expected:?}, found {found:?}")]
    Shape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: max |M - M^dag| = {asymmetry:e} exceeds {tol:e}")]
    NotHermitian { asymmetry: f64, tol: f64 },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("Jacobi iteration did not converge in {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("Kronecker product of size {0} overflows")]
    Overflow(usize),
}

/// Position in the ordered product basis `{e_a ⊗ e_b}`.
///
/// Levels are zero-based here (`0, 1, 2` for `e1, e2, e3`); `flat = 3a + b`.
/// The one-based labels used when printing matrix elements are
/// `flat + 1`, so `ρ_15` is the `(e1⊗e1, e2⊗e2)` coherence.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisIndex {
    pub a: usize,
    pub b: usize,
}

impl BasisIndex {
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a < LEVELS && b < LEVELS, "level index out of range");
        Self { a, b }
    }

    pub fn flat(self) -> usize {
        LEVELS * self.a + self.b
    }

    pub fn from_flat(flat: usize) -> Self {
        assert!(flat < PAIR_DIM, "flat index out of range");
        Self {
            a: flat / LEVELS,
            b: flat % LEVELS,
        }
    }

    /// Iterates the product basis in storage order.
    pub fn all() -> impl Iterator<Item = BasisIndex> {
        (0..PAIR_DIM).map(Self::from_flat)
    }
}

/// Kronecker product with the left factor's index major.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let rows = a
        .rows()
        .checked_mul(b.rows())
        .ok_or(LinalgError::Overflow(usize::MAX))?;
    let cols = a
        .cols()
        .checked_mul(b.cols())
        .ok_or(LinalgError::Overflow(usize::MAX))?;
    rows.checked_mul(cols).ok_or(LinalgError::Overflow(rows))?;
    let (br, bc) = b.shape();
    Ok(ComplexMatrix::from_fn(rows, cols, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    }))
}

fn check_pair_dim(rho: &ComplexMatrix) -> Result<(), LinalgError> {
    if rho.shape() != (PAIR_DIM, PAIR_DIM) {
        return Err(LinalgError::Shape {
            expected: (PAIR_DIM, PAIR_DIM),
            found: rho.shape(),
        });
    }
    Ok(())
}

/// Partial transpose on the first factor:
/// `(ρ^{T_A})_{(a,b),(c,d)} = ρ_{(c,b),(a,d)}`.
pub fn partial_transpose_a(rho: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    check_pair_dim(rho)?;
    Ok(ComplexMatrix::from_fn(PAIR_DIM, PAIR_DIM, |i, j| {
        let (r, c) = (BasisIndex::from_flat(i), BasisIndex::from_flat(j));
        rho[(
            BasisIndex::new(c.a, r.b).flat(),
            BasisIndex::new(r.a, c.b).flat(),
        )]
    }))
}

/// Partial transpose on the second factor.
pub fn partial_transpose_b(rho: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    check_pair_dim(rho)?;
    Ok(ComplexMatrix::from_fn(PAIR_DIM, PAIR_DIM, |i, j| {
        let (r, c) = (BasisIndex::from_flat(i), BasisIndex::from_flat(j));
        rho[(
            BasisIndex::new(r.a, c.b).flat(),
            BasisIndex::new(c.a, r.b).flat(),
        )]
    }))
}

/// Reduced state of atom A.
pub fn partial_trace_b(rho: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    check_pair_dim(rho)?;
    Ok(ComplexMatrix::from_fn(LEVELS, LEVELS, |a, c| {
        (0..LEVELS)
            .map(|b| rho[(BasisIndex::new(a, b).flat(), BasisIndex::new(c, b).flat())])
            .sum()
    }))
}

/// Reduced state of atom B.
pub fn partial_trace_a(rho: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    check_pair_dim(rho)?;
    Ok(ComplexMatrix::from_fn(LEVELS, LEVELS, |b, d| {
        (0..LEVELS)
            .map(|a| rho[(BasisIndex::new(a, b).flat(), BasisIndex::new(a, d).flat())])
            .sum()
    }))
}
