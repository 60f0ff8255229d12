mod common;

use std::f64::consts::FRAC_PI_2;

use common::rng;
use qutrit_lindblad::linalg::kron;
use qutrit_lindblad::random;
use qutrit_lindblad::states::{
    isotropic_state, negativity, negativity_isotropic_closed_form, negativity_pure_closed_form,
    negativity_routes, pure_density, DensityMatrix, IsotropicParams, PureStateParams,
};
use rand::Rng;

#[test]
fn pure_family_matches_closed_form() {
    let mut r = rng(21);
    for _ in 0..200 {
        let params = PureStateParams::new(
            r.random_range(0.0..=FRAC_PI_2),
            r.random_range(0.0..=FRAC_PI_2),
        )
        .unwrap();
        let numeric = negativity(&pure_density(params)).unwrap();
        let closed = negativity_pure_closed_form(params);
        assert!(
            (numeric - closed).abs() <= 1e-10,
            "{params:?}: {numeric} vs {closed}"
        );
    }
}

#[test]
fn isotropic_family_matches_closed_form() {
    for k in 0..=10 {
        let params = IsotropicParams::new(k as f64 / 10.0).unwrap();
        let numeric = negativity(&isotropic_state(params)).unwrap();
        assert!((numeric - negativity_isotropic_closed_form(params)).abs() <= 1e-10);
    }
}

#[test]
fn negativity_is_invariant_under_local_unitaries() {
    let mut r = rng(22);
    for _ in 0..50 {
        let rho = random::density_matrix(&mut r, 9);
        let mixed_in = isotropic_state(IsotropicParams::new(0.8).unwrap());
        // Blend with an entangled state so the invariance is not trivially 0 = 0.
        let rho =
            DensityMatrix::new(&rho.scale_real(0.3) + &mixed_in.matrix().scale_real(0.7)).unwrap();
        let u = kron(
            &random::haar_unitary(&mut r, 3),
            &random::haar_unitary(&mut r, 3),
        )
        .unwrap();
        let rotated = DensityMatrix::new(&(&u * rho.matrix()) * &u.adjoint()).unwrap();
        let (a, b) = (negativity(&rho).unwrap(), negativity(&rotated).unwrap());
        assert!(a > 0.0);
        assert!((a - b).abs() <= 1e-10, "{a} vs {b}");
    }
}

#[test]
fn product_states_have_zero_negativity() {
    let mut r = rng(23);
    for _ in 0..100 {
        let rho = DensityMatrix::new(random::product_state(&mut r)).unwrap();
        assert_eq!(negativity(&rho).unwrap(), 0.0);
    }
}

#[test]
fn negativity_routes_agree_on_random_states() {
    let mut r = rng(24);
    for _ in 0..100 {
        let psi = random::pure_vector(&mut r, 9);
        let (trace_norm, negative_sum) = negativity_routes(&psi.projector()).unwrap();
        assert!((trace_norm - negative_sum).abs() <= 1e-12);
        assert!(negative_sum > 0.0);
    }
}
