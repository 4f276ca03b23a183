mod common;

use common::{max_diff, pure_state, rng, tetrahedron_point};
use proptest::prelude::*;
use twinscope::linalg::{c64, eigh, identity, partial_trace, tensor, Matrix, Subsystem};
use twinscope::mds::build_T;
use twinscope::random::unitary2;
use twinscope::schmidt::{operator_schmidt, pure_schmidt, pure_twin_partner};
use twinscope::twins::pauli_coords;
use twinscope::TVector;

fn expected_spectrum(t: &TVector) -> Vec<f64> {
    let scale = (1.0 + t.0.iter().map(|x| x * x).sum::<f64>()).sqrt();
    let mut v: Vec<f64> = std::iter::once(1.0).chain(t.0.iter().map(|x| x.abs())).map(|x| x / scale).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn padded(mut v: Vec<f64>) -> Vec<f64> {
    v.resize(4, 0.0);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn schmidt_squares_are_reduced_eigenvalues(phi in pure_state()) {
        let ps = pure_schmidt(&phi).unwrap();
        let rho1 = partial_trace(&(&phi * phi.adjoint()), Subsystem::First).unwrap();
        let ev: Vec<f64> = eigh(&rho1, 1e-10).unwrap().values.into_iter().filter(|&l| l > 1e-9).collect();
        let sq: Vec<f64> = ps.coefficients.iter().map(|c| c * c).collect();
        prop_assert_eq!(sq.len(), ev.len());
        prop_assert!(max_diff(&sq, &ev) <= 1e-10);
        prop_assert!((ps.reconstruct() - &phi).norm() <= 1e-10);
    }

    #[test]
    fn bell_diagonal_operator_spectrum(t in tetrahedron_point()) {
        let os = operator_schmidt(&build_T(&t)).unwrap();
        prop_assert!(max_diff(&padded(os.coefficients), &expected_spectrum(&t)) <= 1e-10);
    }

    #[test]
    fn operator_spectrum_is_local_unitary_invariant(t in tetrahedron_point(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let local = tensor(&unitary2(&mut r), &unitary2(&mut r));
        let rho = build_T(&t);
        let moved = &local * &rho * local.adjoint();
        let a = padded(operator_schmidt(&rho).unwrap().coefficients);
        let b = padded(operator_schmidt(&moved).unwrap().coefficients);
        prop_assert!(max_diff(&a, &b) <= 1e-10);
    }

    #[test]
    fn pure_twin_partner_solves_vector_equation(phi in pure_state(), x in -1.0..1.0f64, y in -1.0..1.0f64) {
        // Any function of rho1 is accepted.
        let rho1 = partial_trace(&(&phi * phi.adjoint()), Subsystem::First).unwrap();
        let e = eigh(&rho1, 1e-10).unwrap();
        let d = Matrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c64(x, 0.0), c64(y, 0.0)]));
        let a1 = &e.vectors * d * e.vectors.adjoint();
        let a1 = (&a1 + a1.adjoint()) * c64(0.5, 0.0);
        let a2 = pure_twin_partner(&a1, &phi).unwrap();
        let lhs = tensor(&a1, &identity(2)) * &phi;
        let rhs = tensor(&identity(2), &a2) * &phi;
        prop_assert!((lhs - rhs).norm() <= 1e-10);
    }

    #[test]
    fn distinct_t_gives_pauli_bases(t in tetrahedron_point()) {
        let a: Vec<f64> = t.0.iter().map(|x| x.abs()).collect();
        let distinct = a.iter().all(|&x| x > 1e-3 && x < 1.0 - 1e-3)
            && (a[0] - a[1]).abs() > 1e-3 && (a[1] - a[2]).abs() > 1e-3 && (a[0] - a[2]).abs() > 1e-3;
        prop_assume!(distinct);
        let os = operator_schmidt(&build_T(&t)).unwrap();
        let scale = (1.0 + t.0.iter().map(|x| x * x).sum::<f64>()).sqrt();
        for ((c, l), r) in os.coefficients.iter().zip(&os.left_ops).zip(&os.right_ops) {
            let lc = pauli_coords(l);
            let rc = pauli_coords(r);
            let m = (0..4).max_by(|&i, &j| lc[i].abs().total_cmp(&lc[j].abs())).unwrap();
            for k in 0..4 {
                let want = if k == m { std::f64::consts::FRAC_1_SQRT_2 } else { 0.0 };
                prop_assert!((lc[k].abs() - want).abs() <= 1e-9);
            }
            let tm = if m == 0 { 1.0 } else { t.0[m - 1] };
            prop_assert!((c - tm.abs() / scale).abs() <= 1e-10);
            prop_assert!((rc[m] - tm.signum() * lc[m]).abs() <= 1e-9);
        }
    }
}
