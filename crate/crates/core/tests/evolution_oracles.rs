mod common;

use common::{metastable_limit_kraus, rng};
use num_complex::Complex64 as C64;
use qutrit_lindblad::evolution::{
    analytic_ii_general, analytic_ii_isotropic, asymptotic_state_max_interference,
    detect_steady_state, negativity_psimax_closed_form,
};
use qutrit_lindblad::linalg::{kron, ComplexMatrix, ComplexVector};
use qutrit_lindblad::lindblad::{
    generator_system_i, generator_system_ii, Atoms, SystemIIParams, SystemIParams,
};
use qutrit_lindblad::random;
use qutrit_lindblad::states::{
    ground_state, isotropic_state, negativity, psi_max_state, pure_density, DensityMatrix,
    IsotropicParams, PureStateParams,
};
use qutrit_lindblad::{evolve_rk4, IntegratorSettings};
use std::f64::consts::PI;

fn ii(ge: f64, gu: f64) -> SystemIIParams {
    SystemIIParams::new(ge, gu).unwrap()
}

#[test]
fn rk4_tracks_exact_system_ii_solution() {
    let rho0 = pure_density(PureStateParams::new(PI / 8.0, PI / 6.0).unwrap());
    for gu in [0.0, 0.3, 1.0] {
        let params = ii(1.0, gu);
        let traj = evolve_rk4(
            &generator_system_ii(params, Atoms::Two),
            &rho0,
            &IntegratorSettings::new(1e-3, 3.0).sample_every(100),
        )
        .unwrap();
        for (t, state) in traj.times.iter().zip(&traj.states) {
            let exact = analytic_ii_general(&rho0, params, *t).unwrap();
            assert!(
                state.matrix().max_abs_diff(exact.matrix()) <= 1e-9,
                "gu={gu} t={t}"
            );
        }
    }
}

#[test]
fn rk4_tracks_isotropic_solution() {
    let p = IsotropicParams::new(0.75).unwrap();
    let params = ii(1.0, 0.25);
    let traj = evolve_rk4(
        &generator_system_ii(params, Atoms::Two),
        &isotropic_state(p),
        &IntegratorSettings::new(1e-3, 3.0).sample_every(100),
    )
    .unwrap();
    for (t, state) in traj.times.iter().zip(&traj.states) {
        let exact = analytic_ii_isotropic(p, params, *t).unwrap();
        assert!(state.matrix().max_abs_diff(exact.matrix()) <= 1e-9, "t={t}");
    }
}

#[test]
fn wrong_u_population_rate_breaks_trace() {
    // Replacing e^{-2γu t} by e^{-2γe t} in the |22⟩ population no longer
    // sums to one once γe ≠ γu.
    let (ge, gu, t) = (1.0f64, 0.25f64, 1.5f64);
    let rho0 = psi_max_state();
    let good = analytic_ii_general(&rho0, ii(ge, gu), t).unwrap();
    let r55 = rho0.element(5, 5).re;
    let wrong = good.matrix().trace().re - good.element(5, 5).re + (-2.0 * ge * t).exp() * r55;
    assert!((good.matrix().trace().re - 1.0).abs() < 1e-14);
    assert!((wrong - 1.0).abs() > 1e-2);
}

#[test]
fn psimax_negativity_follows_closed_form() {
    let params = ii(1.0, 0.1);
    let traj = evolve_rk4(
        &generator_system_ii(params, Atoms::Two),
        &psi_max_state(),
        &IntegratorSettings::new(1e-3, 5.0).sample_every(50),
    )
    .unwrap();
    for (t, n) in traj.times.iter().zip(&traj.negativities) {
        assert!(
            (n - negativity_psimax_closed_form(params, *t)).abs() <= 1e-6,
            "t={t}"
        );
    }
}

#[test]
fn closed_form_decreases_with_u_decay() {
    for t in [0.1, 0.5, 1.0, 3.0, 10.0] {
        let mut prev = f64::INFINITY;
        for k in 0..=20 {
            let n = negativity_psimax_closed_form(ii(1.0, k as f64 * 0.05), t);
            assert!(n < prev, "t={t} k={k}");
            prev = n;
        }
    }
}

#[test]
fn system_i_without_interference_matches_system_ii() {
    // At β = 0 and equal rates both models are two independent decay
    // channels into the ground level.
    let mut r = rng(41);
    let a = generator_system_i(SystemIParams::new(1.0, 1.0, 0.0).unwrap(), Atoms::Two);
    let b = generator_system_ii(ii(1.0, 1.0), Atoms::Two);
    for _ in 0..10 {
        let rho = random::ginibre(&mut r, 9, 9);
        assert!(a.apply(&rho).unwrap().max_abs_diff(&b.apply(&rho).unwrap()) <= 1e-12);
    }
    let settings = IntegratorSettings::new(1e-2, 5.0).sample_every(50);
    let ta = evolve_rk4(&a, &psi_max_state(), &settings).unwrap();
    let tb = evolve_rk4(&b, &psi_max_state(), &settings).unwrap();
    for (x, y) in ta.states.iter().zip(&tb.states) {
        assert!(x.matrix().max_abs_diff(y.matrix()) <= 1e-12);
    }
}

/// `exp(−Γt/2)` for the symmetric damping matrix, via
/// `exp(m + B) = e^m (cosh d + B sinh d / d)` with `B² = d²`.
fn excited_propagator(gamma: [[f64; 2]; 2], t: f64) -> [[f64; 2]; 2] {
    let s = -t / 2.0;
    let m = s * (gamma[0][0] + gamma[1][1]) / 2.0;
    let b = [
        [s * gamma[0][0] - m, s * gamma[0][1]],
        [s * gamma[1][0], s * gamma[1][1] - m],
    ];
    let d = (b[0][0] * b[0][0] + b[0][1] * b[1][0]).sqrt();
    let shc = if d == 0.0 { 1.0 } else { d.sinh() / d };
    let em = m.exp();
    [
        [em * (d.cosh() + b[0][0] * shc), em * b[0][1] * shc],
        [em * b[1][0] * shc, em * (d.cosh() + b[1][1] * shc)],
    ]
}

#[test]
fn single_atom_excited_block_decays_through_damping_matrix() {
    let mut r = rng(42);
    for beta in [0.0, 0.6, 0.9, 1.0] {
        let params = SystemIParams::new(1.0, 0.9, beta).unwrap();
        let gen = generator_system_i(params, Atoms::One);
        let rho0 = DensityMatrix::new(random::density_matrix(&mut r, 3)).unwrap();
        let t = 20.0;
        let traj = evolve_rk4(&gen, &rho0, &IntegratorSettings::new(1e-2, t)).unwrap();
        let e = excited_propagator(params.damping_matrix(), t);
        let out = traj.final_state();
        for i in 0..2 {
            for j in 0..2 {
                let mut expect = C64::new(0.0, 0.0);
                for k in 0..2 {
                    for l in 0..2 {
                        expect += rho0.matrix()[(k, l)] * e[i][k] * e[j][l];
                    }
                }
                assert!(
                    (out.matrix()[(i, j)] - expect).norm() <= 1e-9,
                    "beta={beta} ({i},{j})"
                );
            }
        }
    }
}

#[test]
fn damping_eigenvalues_set_the_slow_rate() {
    let params = SystemIParams::new(1.0, 0.9, 0.9).unwrap();
    let [slow, fast] = params.damping_eigenvalues();
    let g = params.damping_matrix();
    let tr = g[0][0] + g[1][1];
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    assert!((slow + fast - tr).abs() < 1e-14);
    assert!((slow * fast - det).abs() < 1e-14);
    assert!(slow > 0.09 && slow < 0.1);
}

fn apply_local_kraus(rho: &ComplexMatrix) -> ComplexMatrix {
    let ks = metastable_limit_kraus();
    let mut out = ComplexMatrix::zeros(9, 9);
    for a in &ks {
        for b in &ks {
            let k = kron(a, b).unwrap();
            out = &out + &(&(&k * rho) * &k.adjoint());
        }
    }
    out
}

#[test]
fn asymptotic_map_is_local_metastable_channel() {
    let mut r = rng(43);
    for _ in 0..50 {
        let rho = DensityMatrix::new(random::density_matrix(&mut r, 9)).unwrap();
        let map = asymptotic_state_max_interference(&rho).unwrap();
        assert!(map.matrix().max_abs_diff(&apply_local_kraus(rho.matrix())) <= 1e-14);
    }
}

#[test]
fn long_runs_reach_the_asymptotic_map() {
    let mut r = rng(44);
    let gen = generator_system_ii(ii(1.0, 0.0), Atoms::Two);
    for _ in 0..3 {
        let rho = DensityMatrix::new(random::density_matrix(&mut r, 9)).unwrap();
        let traj = evolve_rk4(
            &gen,
            &rho,
            &IntegratorSettings::new(1e-2, 40.0).sample_every(100),
        )
        .unwrap();
        let expect = asymptotic_state_max_interference(&rho).unwrap();
        assert!(traj.final_state().matrix().max_abs_diff(expect.matrix()) <= 1e-7);
    }
}

#[test]
fn metastable_bell_pairs_are_stationary() {
    let gen = generator_system_ii(ii(1.0, 0.0), Atoms::Two);
    for phi in [0.2, PI / 4.0, 1.3] {
        for sign in [1.0, -1.0] {
            let mut v = vec![C64::new(0.0, 0.0); 9];
            v[4] = C64::new(phi.sin(), 0.0);
            v[8] = C64::new(sign * phi.cos(), 0.0);
            let rho = DensityMatrix::from_pure(&ComplexVector(v)).unwrap();
            let traj = evolve_rk4(
                &gen,
                &rho,
                &IntegratorSettings::new(1e-2, 10.0).sample_every(10),
            )
            .unwrap();
            for s in &traj.states {
                assert!(s.matrix().max_abs_diff(rho.matrix()) <= 1e-9);
            }
            assert!((traj.final_negativity() - phi.sin() * phi.cos()).abs() <= 1e-9);
        }
    }
}

#[test]
fn interference_slows_system_i_disentanglement() {
    let rho0 = pure_density(PureStateParams::new(PI / 8.0, PI / 6.0).unwrap());
    let settings = IntegratorSettings::new(1e-2, 8.0).sample_every(20);
    let runs: Vec<Vec<f64>> = [0.0, 0.3, 0.6, 0.9, 0.99]
        .iter()
        .map(|&b| {
            let gen = generator_system_i(SystemIParams::new(1.0, 0.9, b).unwrap(), Atoms::Two);
            evolve_rk4(&gen, &rho0, &settings).unwrap().negativities
        })
        .collect();
    for w in runs.windows(2) {
        for (lo, hi) in w[0].iter().zip(&w[1]) {
            assert!(hi + 1e-6 >= *lo);
        }
    }
}

#[test]
fn steady_state_detection_examples() {
    let settings = IntegratorSettings::new(1e-2, 50.0).sample_every(10);
    let traj = evolve_rk4(
        &generator_system_ii(ii(1.0, 0.5), Atoms::Two),
        &psi_max_state(),
        &settings,
    )
    .unwrap();
    let s = detect_steady_state(&traj, 5.0, 1e-6).unwrap();
    assert!(s.state.matrix().max_abs_diff(ground_state().matrix()) <= 1e-6);

    let traj = evolve_rk4(
        &generator_system_ii(ii(1.0, 0.0), Atoms::Two),
        &psi_max_state(),
        &settings,
    )
    .unwrap();
    let s = detect_steady_state(&traj, 5.0, 1e-6).unwrap();
    let expect = asymptotic_state_max_interference(&psi_max_state()).unwrap();
    assert!(s.state.matrix().max_abs_diff(expect.matrix()) <= 1e-6);
    assert!((s.negativity - 1.0 / 3.0).abs() <= 1e-6);

    let gen = generator_system_i(SystemIParams::new(1.0, 1.0, 1.0).unwrap(), Atoms::Two);
    let traj = evolve_rk4(&gen, &psi_max_state(), &settings).unwrap();
    let s = detect_steady_state(&traj, 5.0, 1e-6).unwrap();
    assert!(s.negativity > 0.05);
    assert!(negativity(&s.state).unwrap() > 0.05);
}
