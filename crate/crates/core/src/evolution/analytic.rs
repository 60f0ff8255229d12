//! Closed-form solutions of the two-atom system II master equation.

use num_complex::Complex64 as C64;

use super::EvolutionError;
use crate::linalg::{ComplexMatrix, PAIR_DIM};
use crate::lindblad::SystemIIParams;
use crate::states::{DensityMatrix, IsotropicParams};

/// Flat indices of `|11⟩, |22⟩, |33⟩` (labels 1, 5, 9).
pub const DIAGONAL_SUPPORT: [usize; 3] = [0, 4, 8];

/// Entries outside the `{1,5,9}` block smaller than this are treated as zero.
const SUPPORT_TOL: f64 = 1e-12;

fn check_time(t: f64) -> Result<(), EvolutionError> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(EvolutionError::InvalidParameter(format!(
            "time {t} must be non-negative"
        )));
    }
    Ok(())
}

/// Sets the one-based element `(i, j)` and its Hermitian partner.
fn set_pair(m: &mut ComplexMatrix, i: usize, j: usize, z: C64) {
    m[(i - 1, j - 1)] = z;
    m[(j - 1, i - 1)] = z.conj();
}

fn set_real(m: &mut ComplexMatrix, i: usize, z: f64) {
    m[(i - 1, i - 1)] = C64::new(z, 0.0);
}

/// `ρ(t)` for an initial state supported on `span{|11⟩, |22⟩, |33⟩}`,
/// without validating the output.
///
/// Populations `ρ55` decay as `e^{−2γu t}`; this is the rate that keeps
/// `Σ ρ_ii(t) = 1` together with the `ρ66`, `ρ88`, `ρ99` feeding terms.
pub fn analytic_ii_general_matrix(
    rho0: &ComplexMatrix,
    params: SystemIIParams,
    t: f64,
) -> Result<ComplexMatrix, EvolutionError> {
    check_time(t)?;
    if rho0.shape() != (PAIR_DIM, PAIR_DIM) {
        return Err(EvolutionError::Dimension {
            state: rho0.rows(),
            generator: PAIR_DIM,
        });
    }
    let mut max_outside: f64 = 0.0;
    for i in 0..PAIR_DIM {
        for j in 0..PAIR_DIM {
            if !(DIAGONAL_SUPPORT.contains(&i) && DIAGONAL_SUPPORT.contains(&j)) {
                max_outside = max_outside.max(rho0[(i, j)].norm());
            }
        }
    }
    if max_outside > SUPPORT_TOL {
        return Err(EvolutionError::UnsupportedInitialForm { max_outside });
    }

    let (ge, gu) = (params.gamma_e(), params.gamma_u());
    let r = |i: usize, j: usize| rho0[(i - 1, j - 1)];
    let (r11, r55, r99) = (r(1, 1).re, r(5, 5).re, r(9, 9).re);
    let de = (-ge * t).exp();
    let du = (-gu * t).exp();
    let de2 = (-2.0 * ge * t).exp();
    let du2 = (-2.0 * gu * t).exp();

    let mut m = ComplexMatrix::zeros(PAIR_DIM, PAIR_DIM);
    set_real(&mut m, 1, de2 * r11);
    set_pair(&mut m, 1, 5, r(1, 5) * (-(ge + gu) * t).exp());
    set_pair(&mut m, 1, 9, r(1, 9) * de);
    set_real(&mut m, 3, (de - de2) * r11);
    set_real(&mut m, 5, du2 * r55);
    set_pair(&mut m, 5, 9, r(5, 9) * du);
    set_real(&mut m, 6, (du - du2) * r55);
    set_real(&mut m, 7, (de - de2) * r11);
    set_real(&mut m, 8, (du - du2) * r55);
    set_real(
        &mut m,
        9,
        (1.0 + de2 - 2.0 * de) * r11 + (1.0 + du2 - 2.0 * du) * r55 + r99,
    );
    Ok(m)
}

/// Validated form of [`analytic_ii_general_matrix`].
pub fn analytic_ii_general(
    rho0: &DensityMatrix,
    params: SystemIIParams,
    t: f64,
) -> Result<DensityMatrix, EvolutionError> {
    Ok(DensityMatrix::new(analytic_ii_general_matrix(
        rho0.matrix(),
        params,
        t,
    )?)?)
}

/// `W(t)` for the isotropic initial state, without validating the output.
pub fn analytic_ii_isotropic_matrix(
    p: IsotropicParams,
    params: SystemIIParams,
    t: f64,
) -> ComplexMatrix {
    let p = p.p();
    let (ge, gu) = (params.gamma_e(), params.gamma_u());
    let de = (-ge * t).exp();
    let du = (-gu * t).exp();
    let de2 = (-2.0 * ge * t).exp();
    let du2 = (-2.0 * gu * t).exp();
    let deu = (-(ge + gu) * t).exp();
    let a = (1.0 + 2.0 * p) / 9.0;
    let b = (1.0 - p) / 9.0;

    let w33 = -b * deu - a * de2 + de / 3.0;
    let w66 = -b * deu - a * du2 + du / 3.0;
    let mut m = ComplexMatrix::zeros(PAIR_DIM, PAIR_DIM);
    set_real(&mut m, 1, a * de2);
    set_pair(&mut m, 1, 5, C64::new(p / 3.0 * deu, 0.0));
    set_pair(&mut m, 1, 9, C64::new(p / 3.0 * de, 0.0));
    set_real(&mut m, 2, b * deu);
    set_real(&mut m, 3, w33);
    set_real(&mut m, 4, b * deu);
    set_real(&mut m, 5, a * du2);
    set_pair(&mut m, 5, 9, C64::new(p / 3.0 * du, 0.0));
    set_real(&mut m, 6, w66);
    set_real(&mut m, 7, w33);
    set_real(&mut m, 8, w66);
    set_real(
        &mut m,
        9,
        1.0 + a * (de2 + du2) + 2.0 * b * deu - 2.0 / 3.0 * (de + du),
    );
    m
}

/// Validated form of [`analytic_ii_isotropic_matrix`].
pub fn analytic_ii_isotropic(
    p: IsotropicParams,
    params: SystemIIParams,
    t: f64,
) -> Result<DensityMatrix, EvolutionError> {
    check_time(t)?;
    Ok(DensityMatrix::new(analytic_ii_isotropic_matrix(
        p, params, t,
    ))?)
}

/// `N(t) = (e^{−2γe t} + e^{−(γe+γu)t} + e^{−2γu t})/3` for `Ψ_max`.
pub fn negativity_psimax_closed_form(params: SystemIIParams, t: f64) -> f64 {
    let (ge, gu) = (params.gamma_e(), params.gamma_u());
    ((-2.0 * ge * t).exp() + (-(ge + gu) * t).exp() + (-2.0 * gu * t).exp()) / 3.0
}
