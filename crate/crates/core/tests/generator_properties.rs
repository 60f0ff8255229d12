mod common;

use common::rng;
use num_complex::Complex64 as C64;
use qutrit_lindblad::linalg::{kron, null_space, rank, ComplexMatrix};
use qutrit_lindblad::lindblad::{
    generator_system_i, generator_system_ii, Atoms, LindbladGenerator, SystemIIParams,
    SystemIParams,
};
use qutrit_lindblad::random;
use qutrit_lindblad::states::{ground_state, psi_max_state};

fn generators() -> Vec<LindbladGenerator> {
    let mut out = Vec::new();
    for atoms in [Atoms::One, Atoms::Two] {
        for beta in [0.0, 0.5, 1.0] {
            out.push(generator_system_i(
                SystemIParams::new(1.0, 0.9, beta).unwrap(),
                atoms,
            ));
        }
        for gu in [0.0, 0.25, 1.0] {
            out.push(generator_system_ii(
                SystemIIParams::new(1.0, gu).unwrap(),
                atoms,
            ));
        }
        out.push(
            generator_system_i(SystemIParams::new(1.0, 0.6, 0.8).unwrap(), atoms)
                .with_level_shifts(1.5, -0.7)
                .unwrap(),
        );
    }
    out
}

#[test]
fn trace_annihilation_on_matrix_units() {
    for g in generators() {
        let n = g.dim();
        for i in 0..n {
            for j in 0..n {
                let out = g.apply(&ComplexMatrix::unit(n, i, j)).unwrap();
                assert!(out.trace().norm() <= 1e-13);
            }
        }
    }
}

#[test]
fn hermiticity_is_preserved() {
    let mut r = rng(31);
    for g in generators() {
        for _ in 0..10 {
            let rho = random::hermitian(&mut r, g.dim());
            let lhs = g.apply(&rho).unwrap().adjoint();
            let rhs = g.apply(&rho.adjoint()).unwrap();
            assert!(lhs.max_abs_diff(&rhs) <= 1e-14);
        }
    }
}

#[test]
fn sparse_kernel_matches_dense_definition() {
    let mut r = rng(32);
    for g in generators() {
        for _ in 0..5 {
            let rho = random::ginibre(&mut r, g.dim(), g.dim());
            let fast = g.apply(&rho).unwrap();
            let slow = g.apply_dense(&rho).unwrap();
            assert!(fast.max_abs_diff(&slow) <= 1e-13);
        }
    }
}

#[test]
fn generator_is_linear() {
    let mut r = rng(33);
    let g = generator_system_i(SystemIParams::new(1.0, 0.9, 0.7).unwrap(), Atoms::Two);
    let (a, b) = (C64::new(0.3, -1.2), C64::new(-2.0, 0.5));
    for _ in 0..10 {
        let x = random::ginibre(&mut r, 9, 9);
        let y = random::ginibre(&mut r, 9, 9);
        let lhs = g.apply(&(&x.scale(a) + &y.scale(b))).unwrap();
        let rhs = &g.apply(&x).unwrap().scale(a) + &g.apply(&y).unwrap().scale(b);
        assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }
}

#[test]
fn superoperator_agrees_with_apply() {
    let mut r = rng(34);
    for g in generators() {
        let s = g.superoperator_matrix();
        let n = g.dim();
        for _ in 0..5 {
            let rho = random::ginibre(&mut r, n, n);
            let via_s =
                ComplexMatrix::from_vec_columns(n, n, &s.mul_vec(&rho.vec_columns())).unwrap();
            assert!(via_s.max_abs_diff(&g.apply(&rho).unwrap()) <= 1e-12);
        }
    }
}

#[test]
fn independent_atoms_act_locally() {
    let mut r = rng(35);
    let p = SystemIParams::new(1.0, 0.8, 0.6).unwrap();
    let single = generator_system_i(p, Atoms::One);
    let pair = generator_system_i(p, Atoms::Two);
    for _ in 0..10 {
        let ra = random::density_matrix(&mut r, 3);
        let rb = random::density_matrix(&mut r, 3);
        let lhs = pair.apply(&kron(&ra, &rb).unwrap()).unwrap();
        let rhs = &kron(&single.apply(&ra).unwrap(), &rb).unwrap()
            + &kron(&ra, &single.apply(&rb).unwrap()).unwrap();
        assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }
}

#[test]
fn stationary_states_are_annihilated() {
    let g = generator_system_ii(SystemIIParams::new(1.0, 0.25).unwrap(), Atoms::Two);
    assert!(g.apply(ground_state().matrix()).unwrap().max_abs() <= 1e-12);
    // At γu = 0 any state on the {u, g} block of both atoms is stationary.
    let g = generator_system_ii(SystemIIParams::new(1.0, 0.0).unwrap(), Atoms::Two);
    let mut r = rng(36);
    let block = random::density_matrix(&mut r, 2);
    let embed = ComplexMatrix::from_fn(3, 3, |i, j| {
        if i > 0 && j > 0 {
            block[(i - 1, j - 1)]
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let rho = kron(&embed, &embed).unwrap();
    assert!(g.apply(&rho).unwrap().max_abs() <= 1e-12);
}

#[test]
fn initial_slope_of_excited_population() {
    let ge = 0.8;
    let g = generator_system_ii(SystemIIParams::new(ge, 0.3).unwrap(), Atoms::Two);
    let d = g.apply(psi_max_state().matrix()).unwrap();
    assert!((d[(0, 0)].re - (-2.0 * ge / 3.0)).abs() <= 1e-15);
}

#[test]
fn null_space_of_ergodic_and_non_ergodic_dynamics() {
    let gg = ground_state().matrix().vec_columns();
    for gu in [0.1, 0.25, 1.0] {
        let s = generator_system_ii(SystemIIParams::new(1.0, gu).unwrap(), Atoms::Two)
            .superoperator_matrix();
        let kernel = null_space(&s, 1e-8);
        assert_eq!(kernel.len(), 1, "gu = {gu}");
        // The kernel vector is proportional to vec(|gg><gg|).
        let v = &kernel[0];
        let scale = v[80];
        for (a, b) in v.iter().zip(&gg) {
            assert!((a - b * scale).norm() < 1e-12);
        }
    }
    let s = generator_system_ii(SystemIIParams::new(1.0, 0.0).unwrap(), Atoms::Two)
        .superoperator_matrix();
    assert_eq!(81 - rank(&s, 1e-8), 16);

    let s = generator_system_i(SystemIParams::new(1.0, 0.9, 1.0).unwrap(), Atoms::Two)
        .superoperator_matrix();
    assert!(81 - rank(&s, 1e-8) > 1);
    let s = generator_system_i(SystemIParams::new(1.0, 0.9, 0.9).unwrap(), Atoms::Two)
        .superoperator_matrix();
    assert_eq!(81 - rank(&s, 1e-8), 1);
}
