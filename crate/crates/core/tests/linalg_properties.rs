mod common;

use common::{from_parts, rng};
use proptest::prelude::*;
use qutrit_lindblad::linalg::{
    hermitian_eigen, kron, partial_transpose_a, partial_transpose_b, trace_norm_hermitian,
    ComplexMatrix,
};
use qutrit_lindblad::random;

fn parts(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 2 * n * n)
}

proptest! {
    #[test]
    fn partial_transpose_is_an_involution(p in parts(9)) {
        let m = from_parts(9, &p);
        let twice = partial_transpose_a(&partial_transpose_a(&m).unwrap()).unwrap();
        prop_assert_eq!(twice, m);
    }

    #[test]
    fn partial_transpose_preserves_trace(p in parts(9)) {
        let m = from_parts(9, &p);
        let pt = partial_transpose_a(&m).unwrap();
        prop_assert!((pt.trace() - m.trace()).norm() <= 1e-12);
    }

    #[test]
    fn partial_transpose_preserves_hermiticity(p in parts(9)) {
        let h = from_parts(9, &p).hermitian_part();
        prop_assert_eq!(partial_transpose_a(&h).unwrap().hermiticity_defect(), 0.0);
    }

    #[test]
    fn kron_mixed_product(a in parts(3), b in parts(3), c in parts(3), d in parts(3)) {
        let (a, b, c, d) = (from_parts(3, &a), from_parts(3, &b), from_parts(3, &c), from_parts(3, &d));
        let lhs = &kron(&a, &b).unwrap() * &kron(&c, &d).unwrap();
        let rhs = kron(&(&a * &c), &(&b * &d)).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }
}

#[test]
fn eigensolver_residuals_on_random_hermitian() {
    let mut r = rng(11);
    for _ in 0..200 {
        let m = random::hermitian(&mut r, 9);
        let e = hermitian_eigen(&m, 1e-9).unwrap();
        let sum: f64 = e.values.iter().sum();
        assert!(
            (sum - m.trace().re).abs() <= 1e-12,
            "sum {sum} vs trace {}",
            m.trace().re
        );
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        let scale = m.norm_inf();
        for k in 0..9 {
            let v = e.vector(k);
            let mv = m.mul_vec(&v);
            let residual = mv
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - b * e.values[k]).norm())
                .fold(0.0, f64::max);
            assert!(residual <= 1e-10 * scale, "residual {residual}");
        }
        let vv = &e.vectors.adjoint() * &e.vectors;
        assert!(vv.max_abs_diff(&ComplexMatrix::identity(9)) < 1e-12);
    }
}

#[test]
fn eigensolver_on_superoperator_sized_input() {
    let mut r = rng(12);
    let m = random::hermitian(&mut r, 81);
    let e = hermitian_eigen(&m, 1e-9).unwrap();
    let sum: f64 = e.values.iter().sum();
    assert!((sum - m.trace().re).abs() <= 1e-10);
}

#[test]
fn negativity_convention_does_not_depend_on_transposed_factor() {
    let mut r = rng(13);
    for _ in 0..20 {
        let rho = random::density_matrix(&mut r, 9);
        let a = trace_norm_hermitian(&partial_transpose_a(&rho).unwrap(), 1e-9).unwrap();
        let b = trace_norm_hermitian(&partial_transpose_b(&rho).unwrap(), 1e-9).unwrap();
        assert!((a - b).abs() < 1e-12);
    }
}
