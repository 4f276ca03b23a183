//! Schmidt canonical expansions.
//!
//! Two levels share one engine: a state vector in C²⊗C² (coefficient matrix
//! `C[i][j] = ⟨ij|Φ⟩`) and a two-qubit operator viewed as a vector in
//! Hilbert–Schmidt space (coefficient matrix over the normalized Pauli
//! products `σ_i/√2 ⊗ σ_j/√2`). In both cases the left basis is chosen
//! canonically inside each degenerate singular subspace and the right partner
//! is read off as `Cᵀ·conj(u)`, so every phase ambiguity lands on the right.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::linalg::{
    c64, canonical_subspace_basis, degenerate_clusters, hs_inner, hs_norm, identity, max_abs,
    partial_trace, pauli_basis, require_hermitian, svd, tensor, CVector, Matrix, Subsystem,
    RANK_TOL,
};

/// Input norms must be within this of one.
pub const NORM_TOL: f64 = 1e-10;
/// Hermiticity and commutator tolerance for observables handed to the pure-state twin map.
pub const OBSERVABLE_TOL: f64 = 1e-9;

struct Expansion {
    coefficients: Vec<f64>,
    left: Vec<CVector>,
    right: Vec<CVector>,
    multiplicities: Vec<usize>,
}

fn expand(coeffs: &Matrix) -> Result<Expansion> {
    let dec = svd(coeffs)?;
    let largest = dec.singular_values.first().copied().unwrap_or(0.0);
    if largest == 0.0 {
        return Err(Error::ZeroInput);
    }
    let kept: Vec<f64> = dec
        .singular_values
        .iter()
        .copied()
        .take_while(|&s| s > RANK_TOL * largest)
        .collect();

    let mut out = Expansion {
        coefficients: Vec::with_capacity(kept.len()),
        left: Vec::with_capacity(kept.len()),
        right: Vec::with_capacity(kept.len()),
        multiplicities: Vec::new(),
    };
    let ct = coeffs.transpose();
    for range in degenerate_clusters(&kept, RANK_TOL) {
        out.multiplicities.push(range.len());
        let raw: Vec<CVector> = range.map(|k| dec.u.column(k).into_owned()).collect();
        for u in canonical_subspace_basis(&raw) {
            let w = &ct * u.conjugate();
            let c = w.norm();
            out.coefficients.push(c);
            out.right.push(w / c64(c, 0.0));
            out.left.push(u);
        }
    }
    Ok(out)
}

/// Schmidt expansion of a normalized two-qubit state vector.
#[derive(Debug, Clone)]
pub struct PureSchmidt {
    /// Positive, descending; their squares are the common nonzero spectrum of both reduced states.
    pub coefficients: Vec<f64>,
    pub left_vectors: Vec<CVector>,
    pub right_vectors: Vec<CVector>,
    pub schmidt_rank: usize,
    /// Sizes of runs of equal coefficients, in order.
    pub multiplicities: Vec<usize>,
}

impl PureSchmidt {
    pub fn reconstruct(&self) -> CVector {
        let mut out = CVector::zeros(4);
        for ((c, l), r) in self
            .coefficients
            .iter()
            .zip(&self.left_vectors)
            .zip(&self.right_vectors)
        {
            out += l.kronecker(r) * c64(*c, 0.0);
        }
        out
    }

    /// Projector onto the range of the second reduced state.
    pub fn range_projector(&self) -> RangeProjector {
        let mut projector = Matrix::zeros(2, 2);
        for r in &self.right_vectors {
            projector += r * r.adjoint();
        }
        RangeProjector {
            complement: identity(2) - &projector,
            projector,
        }
    }
}

pub fn pure_schmidt(phi: &CVector) -> Result<PureSchmidt> {
    if phi.len() != 4 {
        return Err(Error::DimensionMismatch {
            op: "pure_schmidt",
            expected: "4-vector".into(),
            found: format!("{}-vector", phi.len()),
        });
    }
    let norm = phi.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::Unnormalized { norm });
    }
    let coeffs = Matrix::from_fn(2, 2, |i, j| phi[2 * i + j]);
    let e = expand(&coeffs)?;
    Ok(PureSchmidt {
        schmidt_rank: e.coefficients.len(),
        coefficients: e.coefficients,
        left_vectors: e.left,
        right_vectors: e.right,
        multiplicities: e.multiplicities,
    })
}

/// An antiunitary map on C², stored as "complex-conjugate in the computational
/// basis, then apply `unitary_part`".
#[derive(Debug, Clone)]
pub struct AntiunitaryMap {
    pub unitary_part: Matrix,
}

impl AntiunitaryMap {
    pub fn apply(&self, v: &CVector) -> CVector {
        &self.unitary_part * v.conjugate()
    }

    /// Unitary part of the map applied twice, `W·conj(W)`.
    pub fn squared(&self) -> Matrix {
        &self.unitary_part * self.unitary_part.conjugate()
    }

    /// `U A U⁻¹` for a linear operator `A`.
    pub fn conjugate_operator(&self, a: &Matrix) -> Matrix {
        &self.unitary_part * a.conjugate() * self.unitary_part.adjoint()
    }
}

/// The correlation operator sending each left Schmidt vector to its right partner.
/// Only full-rank expansions define it on the whole space.
pub fn correlation_operator(ps: &PureSchmidt) -> Result<AntiunitaryMap> {
    if ps.schmidt_rank < 2 {
        return Err(Error::RankDeficient {
            rank: ps.schmidt_rank,
        });
    }
    let mut w = Matrix::zeros(2, 2);
    for (l, r) in ps.left_vectors.iter().zip(&ps.right_vectors) {
        w += r * l.transpose();
    }
    Ok(AntiunitaryMap { unitary_part: w })
}

#[derive(Debug, Clone)]
pub struct RangeProjector {
    pub projector: Matrix,
    pub complement: Matrix,
}

/// Second-subsystem twin of `a1` for the pure state `phi`.
///
/// The component on the null space of the second reduced state is set to zero.
pub fn pure_twin_partner(a1: &Matrix, phi: &CVector) -> Result<Matrix> {
    if a1.shape() != (2, 2) {
        return Err(Error::DimensionMismatch {
            op: "pure_twin_partner",
            expected: "2x2".into(),
            found: format!("{}x{}", a1.nrows(), a1.ncols()),
        });
    }
    require_hermitian(a1, OBSERVABLE_TOL)?;
    let ps = pure_schmidt(phi)?;
    let rho = phi * phi.adjoint();
    let rho1 = partial_trace(&rho, Subsystem::First)?;
    let norm = hs_norm(&(a1 * &rho1 - &rho1 * a1));
    if norm > OBSERVABLE_TOL {
        return Err(Error::CommutatorViolation { norm });
    }
    // U_a A1 U_a⁻¹ Q2, written in the Schmidt bases: conj(⟨k|A1|l⟩) |k'⟩⟨l'|.
    let mut a2 = Matrix::zeros(2, 2);
    for (lk, rk) in ps.left_vectors.iter().zip(&ps.right_vectors) {
        for (ll, rl) in ps.left_vectors.iter().zip(&ps.right_vectors) {
            let elem = lk.dotc(&(a1 * ll));
            a2 += rk * rl.adjoint() * elem.conj();
        }
    }
    Ok(a2)
}

/// Schmidt expansion of an operator as a Hilbert–Schmidt supervector.
#[derive(Debug, Clone)]
pub struct OperatorSchmidt {
    /// Positive, descending; squares are the common spectrum of both reduced superoperators.
    pub coefficients: Vec<f64>,
    pub left_ops: Vec<Matrix>,
    pub right_ops: Vec<Matrix>,
    pub schmidt_rank: usize,
    pub multiplicities: Vec<usize>,
    /// Hilbert–Schmidt norm of the decomposed operator.
    pub norm: f64,
}

impl OperatorSchmidt {
    /// Squared coefficients.
    pub fn spectrum(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c * c).collect()
    }
}

fn pauli_product_coefficients(rho: &Matrix) -> Matrix {
    let p = pauli_basis();
    Matrix::from_fn(4, 4, |i, j| {
        let basis = tensor(&p[i], &p[j]) * c64(0.5, 0.0);
        hs_inner(&basis, rho).expect("4x4")
    })
}

fn op_from_coords(coords: &CVector) -> Matrix {
    let p = pauli_basis();
    let mut out = Matrix::zeros(2, 2);
    for (i, z) in coords.iter().enumerate() {
        out += &p[i] * (*z * FRAC_1_SQRT_2);
    }
    out
}

pub fn operator_schmidt(rho: &Matrix) -> Result<OperatorSchmidt> {
    if rho.shape() != (4, 4) {
        return Err(Error::DimensionMismatch {
            op: "operator_schmidt",
            expected: "4x4".into(),
            found: format!("{}x{}", rho.nrows(), rho.ncols()),
        });
    }
    require_hermitian(rho, OBSERVABLE_TOL)?;
    let norm = hs_norm(rho);
    if norm == 0.0 {
        return Err(Error::ZeroInput);
    }
    let coeffs = pauli_product_coefficients(rho) / c64(norm, 0.0);
    let e = expand(&coeffs)?;
    Ok(OperatorSchmidt {
        schmidt_rank: e.coefficients.len(),
        coefficients: e.coefficients,
        left_ops: e.left.iter().map(op_from_coords).collect(),
        right_ops: e.right.iter().map(op_from_coords).collect(),
        multiplicities: e.multiplicities,
        norm,
    })
}

/// `norm · Σ c_k left_k ⊗ right_k`.
pub fn reconstruct(os: &OperatorSchmidt, norm: f64) -> Matrix {
    let mut out = Matrix::zeros(4, 4);
    for ((c, l), r) in os.coefficients.iter().zip(&os.left_ops).zip(&os.right_ops) {
        out += tensor(l, r) * c64(c * norm, 0.0);
    }
    out
}

/// Closed-form expansion of `(1/4)(I⊗I + Σ t_i σ_i⊗σ_i)`: coefficients
/// `(1, |t_i|)/√(1+Σt²)` on `σ_i/√2 ⊗ sg(t_i)σ_i/√2`. Terms with `t_i = 0`
/// are dropped, so the rank may be below four.
pub fn bell_diagonal_expansion(t: [f64; 3]) -> OperatorSchmidt {
    let p = pauli_basis();
    let scale = 1.0 / (1.0 + t.iter().map(|x| x * x).sum::<f64>()).sqrt();
    let h = c64(FRAC_1_SQRT_2, 0.0);
    let mut terms: Vec<(f64, Matrix, Matrix)> = vec![(scale, &p[0] * h, &p[0] * h)];
    for (i, &ti) in t.iter().enumerate() {
        if ti != 0.0 {
            terms.push((
                scale * ti.abs(),
                &p[i + 1] * h,
                &p[i + 1] * c64(ti.signum() * FRAC_1_SQRT_2, 0.0),
            ));
        }
    }
    terms.sort_by(|a, b| b.0.total_cmp(&a.0));
    let coefficients: Vec<f64> = terms.iter().map(|t| t.0).collect();
    let multiplicities = degenerate_clusters(&coefficients, RANK_TOL)
        .into_iter()
        .map(|r| r.len())
        .collect();
    OperatorSchmidt {
        schmidt_rank: terms.len(),
        coefficients,
        left_ops: terms.iter().map(|t| t.1.clone()).collect(),
        right_ops: terms.iter().map(|t| t.2.clone()).collect(),
        multiplicities,
        norm: 0.5 / scale,
    }
}

/// Largest entry of `reconstruct(operator_schmidt(rho)) - rho`.
pub fn round_trip_residual(rho: &Matrix) -> Result<f64> {
    let os = operator_schmidt(rho)?;
    Ok(max_abs(&(reconstruct(&os, os.norm) - rho)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigh, pauli, unitarity_deviation};

    const H: f64 = FRAC_1_SQRT_2;

    fn ket(v: [f64; 4]) -> CVector {
        CVector::from_iterator(4, v.iter().map(|&x| c64(x, 0.0)))
    }

    fn ket2(a: f64, b: f64) -> CVector {
        CVector::from_vec(vec![c64(a, 0.0), c64(b, 0.0)])
    }

    fn vclose(a: &CVector, b: &CVector, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn mclose(a: &Matrix, b: &Matrix, tol: f64) -> bool {
        max_abs(&(a - b)) <= tol
    }

    fn singlet() -> CVector {
        ket([0.0, H, -H, 0.0])
    }

    #[test]
    fn singlet_expansion_matches_correlation_operator_example() {
        let ps = pure_schmidt(&singlet()).unwrap();
        assert_eq!(ps.schmidt_rank, 2);
        assert_eq!(ps.multiplicities, vec![2]);
        for c in &ps.coefficients {
            assert!((c - H).abs() < 1e-15);
        }
        assert!(vclose(&ps.left_vectors[0], &ket2(1.0, 0.0), 1e-15));
        assert!(vclose(&ps.left_vectors[1], &ket2(0.0, 1.0), 1e-15));
        assert!(vclose(&ps.right_vectors[0], &ket2(0.0, 1.0), 1e-15));
        assert!(vclose(&ps.right_vectors[1], &ket2(-1.0, 0.0), 1e-15));
        assert!(vclose(&ps.reconstruct(), &singlet(), 1e-15));
    }

    #[test]
    fn product_state_has_rank_one() {
        let ps = pure_schmidt(&ket([0.0, 1.0, 0.0, 0.0])).unwrap();
        assert_eq!(ps.schmidt_rank, 1);
        assert_eq!(ps.coefficients, vec![1.0]);
        assert!(matches!(
            correlation_operator(&ps),
            Err(Error::RankDeficient { rank: 1 })
        ));
        let q = ps.range_projector();
        assert!(mclose(&(&q.projector * &q.projector), &q.projector, 1e-15));
        assert!(mclose(&(&q.projector + &q.complement), &identity(2), 0.0));
    }

    #[test]
    fn unnormalized_input_rejected() {
        assert!(matches!(
            pure_schmidt(&ket([1.0, 1.0, 0.0, 0.0])),
            Err(Error::Unnormalized { .. })
        ));
    }

    #[test]
    fn psi3_correlation_operator() {
        let psi3 = ket([0.0, H, H, 0.0]);
        let ps = pure_schmidt(&psi3).unwrap();
        for c in &ps.coefficients {
            assert!((c - H).abs() < 1e-15);
        }
        let ua = correlation_operator(&ps).unwrap();
        assert!(vclose(&ua.apply(&ket2(1.0, 0.0)), &ket2(0.0, 1.0), 1e-15));
        assert!(vclose(&ua.apply(&ket2(0.0, 1.0)), &ket2(1.0, 0.0), 1e-15));
    }

    #[test]
    fn correlation_operator_is_antilinear() {
        let ua = correlation_operator(&pure_schmidt(&singlet()).unwrap()).unwrap();
        let plus = ket2(1.0, 0.0);
        let i = c64(0.0, 1.0);
        assert!(vclose(&ua.apply(&(&plus * i)), &(ua.apply(&plus) * -i), 1e-15));
        assert!(unitarity_deviation(&ua.unitary_part) < 1e-12);
        // Singlet: applying the map twice gives -I.
        assert!(mclose(&ua.squared(), &(identity(2) * c64(-1.0, 0.0)), 1e-15));
    }

    #[test]
    fn psi3_twin_of_sigma3_is_minus_sigma3() {
        let psi3 = ket([0.0, H, H, 0.0]);
        let s3 = pauli(3).unwrap();
        let a2 = pure_twin_partner(&s3, &psi3).unwrap();
        assert!(mclose(&a2, &(-s3), 1e-15));
    }

    #[test]
    fn identity_is_its_own_twin() {
        let phi = ket([0.6, 0.0, 0.0, 0.8]);
        let a2 = pure_twin_partner(&identity(2), &phi).unwrap();
        assert!(mclose(&a2, &identity(2), 1e-14));
        // Product state: the identity twin is only fixed on the range.
        let a2 = pure_twin_partner(&identity(2), &ket([0.0, 1.0, 0.0, 0.0])).unwrap();
        assert!(mclose(&a2, &Matrix::from_row_slice(2, 2, &[c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)]), 1e-15));
    }

    #[test]
    fn non_commuting_observable_rejected() {
        let phi = ket([0.6, 0.0, 0.0, 0.8]);
        let err = pure_twin_partner(&pauli(1).unwrap(), &phi).unwrap_err();
        match err {
            Error::CommutatorViolation { norm } => assert!(norm > 0.1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn operator_schmidt_examples() {
        // Maximally mixed state is a product supervector.
        let os = operator_schmidt(&(identity(4) * c64(0.25, 0.0))).unwrap();
        assert_eq!(os.schmidt_rank, 1);
        assert!((os.coefficients[0] - 1.0).abs() < 1e-15);

        let s = singlet();
        let os = operator_schmidt(&(&s * s.adjoint())).unwrap();
        assert_eq!(os.schmidt_rank, 4);
        for c in &os.coefficients {
            assert!((c - 0.5).abs() < 1e-14);
        }
        // Degenerate spectrum: left basis is the normalized Pauli set.
        let p = pauli_basis();
        for (k, l) in os.left_ops.iter().enumerate() {
            assert!(mclose(l, &(&p[k] * c64(H, 0.0)), 1e-14));
            let sign = if k == 0 { 1.0 } else { -1.0 };
            assert!(mclose(&os.right_ops[k], &(&p[k] * c64(sign * H, 0.0)), 1e-14));
        }

        assert!(matches!(operator_schmidt(&Matrix::zeros(4, 4)), Err(Error::ZeroInput)));
    }

    #[test]
    fn closed_form_matches_numeric_for_edge_state() {
        let t = [0.4, -0.4, 1.0];
        let rho = bell_diagonal_expansion(t);
        let dense = reconstruct(&rho, rho.norm);
        let os = operator_schmidt(&dense).unwrap();
        let want = [1.0, 1.0, 0.4, 0.4].map(|x| x / 2.32_f64.sqrt());
        for (a, b) in os.coefficients.iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
        assert_eq!(os.multiplicities, vec![2, 2]);
        assert!(round_trip_residual(&dense).unwrap() < 1e-14);
    }

    #[test]
    fn centroid_reconstructs_maximally_mixed() {
        let os = bell_diagonal_expansion([0.0; 3]);
        assert_eq!(os.schmidt_rank, 1);
        let rho = reconstruct(&os, os.norm);
        assert!(mclose(&rho, &(identity(4) * c64(0.25, 0.0)), 1e-15));
    }

    #[test]
    fn schmidt_squares_match_reduced_spectrum() {
        let phi = ket([0.6, 0.0, 0.0, 0.8]);
        let ps = pure_schmidt(&phi).unwrap();
        let rho1 = partial_trace(&(&phi * phi.adjoint()), Subsystem::First).unwrap();
        let e = eigh(&rho1, 1e-12).unwrap();
        for (c, l) in ps.coefficients.iter().zip(e.values) {
            assert!((c * c - l).abs() < 1e-14);
        }
    }
}
