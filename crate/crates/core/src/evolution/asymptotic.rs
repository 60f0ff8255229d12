//! Stationary limits of system II at maximal interference (`γu = 0`).
//!
//! With `|u⟩` metastable only the `e → g` channel acts, so every excitation
//! of `|e⟩` ends up in `|g⟩` while the `{u, g}` block of each atom is frozen.

use num_complex::Complex64 as C64;

use super::EvolutionError;
use crate::linalg::{ComplexMatrix, PAIR_DIM};
use crate::states::{DensityMatrix, IsotropicParams, PureStateParams};

/// Long-time limit of any two-atom state under the `γu = 0` dynamics.
///
/// Non-vanishing elements (one-based labels, Hermitian partners implied):
/// `55, 56, 58, 59, 68` are copied, `66 = ρ44 + ρ66`, `69 = ρ47 + ρ69`,
/// `88 = ρ22 + ρ88`, `89 = ρ23 + ρ89`, `99 = ρ11 + ρ33 + ρ77 + ρ99`.
pub fn asymptotic_state_max_interference(
    rho0: &DensityMatrix,
) -> Result<DensityMatrix, EvolutionError> {
    if rho0.dim() != PAIR_DIM {
        return Err(EvolutionError::Dimension {
            state: rho0.dim(),
            generator: PAIR_DIM,
        });
    }
    let r = |i: usize, j: usize| rho0.element(i, j);
    let mut m = ComplexMatrix::zeros(PAIR_DIM, PAIR_DIM);
    let mut set = |i: usize, j: usize, z: C64| {
        m[(i - 1, j - 1)] = z;
        m[(j - 1, i - 1)] = z.conj();
    };
    set(5, 5, r(5, 5));
    set(5, 6, r(5, 6));
    set(5, 8, r(5, 8));
    set(5, 9, r(5, 9));
    set(6, 8, r(6, 8));
    set(6, 6, r(4, 4) + r(6, 6));
    set(6, 9, r(4, 7) + r(6, 9));
    set(8, 8, r(2, 2) + r(8, 8));
    set(8, 9, r(2, 3) + r(8, 9));
    set(9, 9, r(1, 1) + r(3, 3) + r(7, 7) + r(9, 9));
    Ok(DensityMatrix::new(m)?)
}

/// `N(ρ_as) = sinφ cosφ sinθ` for the pure family.
pub fn asymptotic_negativity_pure(params: PureStateParams) -> f64 {
    let (sp, cp) = params.phi().sin_cos();
    sp * cp * params.theta().sin()
}

/// `N(W_as)`: zero up to `p = 2/5`, then `(5p − 2)/9`.
pub fn asymptotic_isotropic_negativity(params: IsotropicParams) -> f64 {
    let p = params.p();
    if p <= 0.4 {
        0.0
    } else {
        (5.0 * p - 2.0) / 9.0
    }
}

/// Asymptotic isotropic state `W_as` and its negativity.
pub fn asymptotic_isotropic(params: IsotropicParams) -> (DensityMatrix, f64) {
    let p = params.p();
    let mut m = ComplexMatrix::zeros(PAIR_DIM, PAIR_DIM);
    m[(4, 4)] = C64::new((1.0 + 2.0 * p) / 9.0, 0.0);
    m[(4, 8)] = C64::new(p / 3.0, 0.0);
    m[(8, 4)] = C64::new(p / 3.0, 0.0);
    m[(5, 5)] = C64::new(2.0 * (1.0 - p) / 9.0, 0.0);
    m[(7, 7)] = C64::new(2.0 * (1.0 - p) / 9.0, 0.0);
    m[(8, 8)] = C64::new(2.0 * (2.0 + p) / 9.0, 0.0);
    let state = DensityMatrix::new(m).expect("W_as is a valid state for p in [0, 1]");
    (state, asymptotic_isotropic_negativity(params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{ground_state, isotropic_state, negativity, psi_max_state, pure_density};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn ground_state_is_fixed() {
        let out = asymptotic_state_max_interference(&ground_state()).unwrap();
        assert_eq!(out, ground_state());
    }

    #[test]
    fn psi_max_asymptote() {
        let out = asymptotic_state_max_interference(&psi_max_state()).unwrap();
        let third = 1.0 / 3.0;
        for i in 1..=9 {
            for j in 1..=9 {
                let expected = match (i, j) {
                    (5, 5) | (5, 9) | (9, 5) => third,
                    (9, 9) => 2.0 * third,
                    _ => 0.0,
                };
                assert!((out.element(i, j).re - expected).abs() < 1e-15, "({i},{j})");
            }
        }
        assert!((negativity(&out).unwrap() - third).abs() < 1e-12);
    }

    #[test]
    fn pure_family_keeps_four_elements() {
        let params = PureStateParams::new(0.6, 1.1).unwrap();
        let out = asymptotic_state_max_interference(&pure_density(params)).unwrap();
        let (st, ct) = params.theta().sin_cos();
        let (sp, cp) = params.phi().sin_cos();
        let mut nonzero = 0;
        for i in 1..=9 {
            for j in 1..=9 {
                if out.element(i, j).norm() > 1e-15 {
                    nonzero += 1;
                }
            }
        }
        assert_eq!(nonzero, 4);
        assert!((out.element(5, 5).re - sp * sp * st * st).abs() < 1e-15);
        assert!((out.element(5, 9).re - cp * sp * st).abs() < 1e-15);
        assert!((out.element(9, 9).re - (cp * cp + sp * sp * ct * ct)).abs() < 1e-15);
    }

    #[test]
    fn special_cases_of_the_pure_family() {
        let phi = 0.7;
        // θ = 0: all entanglement is lost.
        let p0 = PureStateParams::new(0.0, phi).unwrap();
        assert_eq!(asymptotic_negativity_pure(p0), 0.0);
        let out = asymptotic_state_max_interference(&pure_density(p0)).unwrap();
        assert!(out.matrix().max_abs_diff(ground_state().matrix()) < 1e-15);
        // θ = π/2: the state does not move.
        let p2 = PureStateParams::new(FRAC_PI_2, phi).unwrap();
        let rho = pure_density(p2);
        let out = asymptotic_state_max_interference(&rho).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
        assert!((asymptotic_negativity_pure(p2) - phi.sin() * phi.cos()).abs() < 1e-15);
        // θ = π/4: strictly positive.
        let p1 = PureStateParams::new(PI / 4.0, phi).unwrap();
        let expected = phi.sin() * phi.cos() / 2f64.sqrt();
        assert!((asymptotic_negativity_pure(p1) - expected).abs() < 1e-15);
        assert!(expected > 0.0);
    }

    #[test]
    fn isotropic_asymptote() {
        let n = |p| asymptotic_isotropic_negativity(IsotropicParams::new(p).unwrap());
        assert_eq!(n(0.4), 0.0);
        assert!((n(1.0) - 1.0 / 3.0).abs() < 1e-15);
        let params = IsotropicParams::new(0.75).unwrap();
        let (state, n_as) = asymptotic_isotropic(params);
        assert!((n_as - 7.0 / 36.0).abs() < 1e-15);
        let mapped = asymptotic_state_max_interference(&isotropic_state(params)).unwrap();
        assert!(mapped.matrix().max_abs_diff(state.matrix()) < 1e-15);
        assert!((negativity(&mapped).unwrap() - 7.0 / 36.0).abs() < 1e-12);
    }
}
