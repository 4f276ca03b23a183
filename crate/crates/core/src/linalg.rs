//! Small dense complex linear algebra.
//!
//! Everything here works on [`Matrix`], a heap-allocated complex matrix from
//! `nalgebra`. Eigen and singular value decompositions are delegated to
//! `faer`. Dimensions never exceed 32, so no attention is paid to blocking or
//! allocation.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Matrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;
pub type RMatrix = DMatrix<f64>;
pub type RVector = DVector<f64>;

/// Relative rank threshold shared by nullspaces and Schmidt spectra.
pub const RANK_TOL: f64 = 1e-9;

/// Components with modulus at or below this count as zero when choosing phases.
const PHASE_EPS: f64 = 1e-9;

fn to_faer<T: nalgebra::Scalar + Copy>(m: &DMatrix<T>) -> faer::Mat<T> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn from_faer<T: nalgebra::Scalar + Copy>(m: faer::MatRef<'_, T>) -> DMatrix<T> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| *m.get(i, j))
}

fn no_convergence(what: &str) -> Error {
    Error::Inconsistent(format!("{what} did not converge"))
}

/// Permutation sorting `values` descending.
fn descending(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    order
}

fn pick_columns<T: nalgebra::Scalar + Copy>(m: &DMatrix<T>, order: &[usize]) -> DMatrix<T> {
    DMatrix::from_fn(m.nrows(), order.len(), |i, k| m[(i, order[k])])
}

#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(n: usize) -> Matrix {
    Matrix::identity(n, n)
}

/// Pauli matrix by index; index 0 is the identity.
pub fn pauli(i: usize) -> Result<Matrix> {
    let (o, z) = (c64(1.0, 0.0), c64(0.0, 0.0));
    let m = match i {
        0 => [o, z, z, o],
        1 => [z, o, o, z],
        2 => [z, c64(0.0, -1.0), c64(0.0, 1.0), z],
        3 => [o, z, z, -o],
        _ => return Err(Error::IndexOutOfRange { what: "Pauli", index: i }),
    };
    Ok(Matrix::from_row_slice(2, 2, &m))
}

/// The four Pauli matrices `[I, σ1, σ2, σ3]`.
pub fn pauli_basis() -> [Matrix; 4] {
    [0, 1, 2, 3].map(|i| pauli(i).expect("index in range"))
}

/// `Σ x_i σ_i` over the three Pauli matrices.
pub fn pauli_vector(x: [f64; 3]) -> Matrix {
    let p = pauli_basis();
    (0..3).fold(Matrix::zeros(2, 2), |acc, i| acc + &p[i + 1] * c64(x[i], 0.0))
}

/// Levi-Civita symbol on `{1, 2, 3}`.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
        _ => 0.0,
    }
}

/// Kronecker product `a ⊗ b`.
pub fn tensor(a: &Matrix, b: &Matrix) -> Matrix {
    a.kronecker(b)
}

/// Which tensor factor of a two-qubit operator is kept by a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

fn require_shape(op: &'static str, m: &Matrix, rows: usize, cols: usize) -> Result<()> {
    if m.nrows() != rows || m.ncols() != cols {
        return Err(Error::DimensionMismatch {
            op,
            expected: format!("{rows}x{cols}"),
            found: format!("{}x{}", m.nrows(), m.ncols()),
        });
    }
    Ok(())
}

fn require_square(op: &'static str, m: &Matrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            op,
            expected: "square matrix".into(),
            found: format!("{}x{}", m.nrows(), m.ncols()),
        });
    }
    Ok(())
}

/// Reduced operator of a 4×4 two-qubit operator on the kept subsystem.
pub fn partial_trace(rho: &Matrix, keep: Subsystem) -> Result<Matrix> {
    require_shape("partial_trace", rho, 4, 4)?;
    let mut out = Matrix::zeros(2, 2);
    for a in 0..2 {
        for b in 0..2 {
            let mut acc = Complex64::default();
            for k in 0..2 {
                acc += match keep {
                    Subsystem::First => rho[(2 * a + k, 2 * b + k)],
                    Subsystem::Second => rho[(2 * k + a, 2 * k + b)],
                };
            }
            out[(a, b)] = acc;
        }
    }
    Ok(out)
}

/// Partial transpose of a 4×4 operator on the second subsystem.
pub fn partial_transpose(rho: &Matrix) -> Result<Matrix> {
    require_shape("partial_transpose", rho, 4, 4)?;
    Ok(Matrix::from_fn(4, 4, |r, c| {
        let (i, j) = (r / 2, r % 2);
        let (k, l) = (c / 2, c % 2);
        rho[(2 * i + l, 2 * k + j)]
    }))
}

/// Hilbert–Schmidt inner product `Tr(a† b)`.
pub fn hs_inner(a: &Matrix, b: &Matrix) -> Result<Complex64> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            op: "hs_inner",
            expected: format!("{}x{}", a.nrows(), a.ncols()),
            found: format!("{}x{}", b.nrows(), b.ncols()),
        });
    }
    Ok(a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum())
}

pub fn hs_norm(a: &Matrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entry modulus.
pub fn max_abs(m: &Matrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Outcome of a Hermiticity test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianCheck {
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl HermitianCheck {
    pub fn passes(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

pub fn hermitian_check(m: &Matrix, tolerance: f64) -> HermitianCheck {
    let max_deviation = if m.is_square() {
        max_abs(&(m - m.adjoint()))
    } else {
        f64::INFINITY
    };
    HermitianCheck {
        max_deviation,
        tolerance,
    }
}

pub fn require_hermitian(m: &Matrix, tol: f64) -> Result<()> {
    let check = hermitian_check(m, tol);
    if check.passes() {
        Ok(())
    } else {
        Err(Error::NotHermitian {
            deviation: check.max_deviation,
            tolerance: tol,
        })
    }
}

pub fn require_finite(m: &Matrix) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// Checks that `rho` is a density operator: Hermitian, unit trace and
/// positive semidefinite, each within `tol`.
pub fn require_state(rho: &Matrix, tol: f64) -> Result<()> {
    require_square("require_state", rho)?;
    require_finite(rho)?;
    let check = hermitian_check(rho, tol);
    if !check.passes() {
        return Err(Error::NotState(format!(
            "not Hermitian (deviation {:e})",
            check.max_deviation
        )));
    }
    let trace = rho.trace();
    if (trace - c64(1.0, 0.0)).norm() > tol {
        return Err(Error::NotState(format!("trace {} differs from 1", trace.re)));
    }
    let min = eigh(rho, tol)?.values.last().copied().unwrap_or(0.0);
    if min < -tol {
        return Err(Error::NotState(format!("negative eigenvalue {min:e}")));
    }
    Ok(())
}

/// Distance of `u† u` from the identity, entrywise.
pub fn unitarity_deviation(u: &Matrix) -> f64 {
    max_abs(&(u.adjoint() * u - identity(u.ncols())))
}

/// Multiplies `v` by the phase that makes its first non-negligible component real positive.
/// Returns the phase that was applied.
pub fn phase_normalize(v: &mut CVector) -> Complex64 {
    let first = v.iter().copied().find(|z| z.norm() > PHASE_EPS);
    match first {
        Some(z) => {
            let phase = z.conj() / z.norm();
            *v *= phase;
            phase
        }
        None => c64(1.0, 0.0),
    }
}

/// Deterministic orthonormal basis of `span(vectors)`.
///
/// Standard basis vectors are projected onto the span one at a time, always
/// taking the one with the largest remaining component (lowest index on
/// ties), then orthonormalized and phase-normalized. The result depends only
/// on the subspace, not on the particular input vectors.
pub fn canonical_subspace_basis(vectors: &[CVector]) -> Vec<CVector> {
    let Some(first) = vectors.first() else {
        return Vec::new();
    };
    let n = first.len();
    let mut projector = Matrix::zeros(n, n);
    for v in vectors {
        projector += v * v.adjoint();
    }
    let mut chosen: Vec<CVector> = Vec::with_capacity(vectors.len());
    while chosen.len() < vectors.len() {
        let mut best: Option<(f64, CVector)> = None;
        for j in 0..n {
            let mut w = projector.column(j).into_owned();
            for q in &chosen {
                let overlap = q.dotc(&w);
                w -= q * overlap;
            }
            let norm = w.norm();
            // Strictly larger by a margin, so exact ties fall to the lowest index.
            if best.as_ref().is_none_or(|(b, _)| norm > b + 1e-9) {
                best = Some((norm, w));
            }
        }
        let (norm, mut w) = best.expect("n > 0");
        if norm < 1e-12 {
            break;
        }
        w /= c64(norm, 0.0);
        phase_normalize(&mut w);
        chosen.push(w);
    }
    chosen
}

/// Splits a descending list into runs whose members agree within `tol` of the largest value.
pub(crate) fn degenerate_clusters(values: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(1.0);
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || (values[start] - values[i]).abs() > tol * scale {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// Hermitian eigendecomposition.
#[derive(Debug, Clone)]
pub struct Eigh {
    /// Descending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: Matrix,
}

impl Eigh {
    pub fn reconstruct(&self) -> Matrix {
        let d = Matrix::from_diagonal(&CVector::from_iterator(
            self.values.len(),
            self.values.iter().map(|&x| c64(x, 0.0)),
        ));
        &self.vectors * d * self.vectors.adjoint()
    }
}

/// Eigendecomposition of a Hermitian matrix. Eigenvalues come out descending;
/// each degenerate eigenspace gets the basis from [`canonical_subspace_basis`].
pub fn eigh(m: &Matrix, tol: f64) -> Result<Eigh> {
    require_square("eigh", m)?;
    require_finite(m)?;
    require_hermitian(m, tol)?;
    let herm = (m + m.adjoint()) * c64(0.5, 0.0);
    let eig = to_faer(&herm)
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|_| no_convergence("eigh"))?;
    let all: Vec<f64> = (0..m.nrows()).map(|i| eig.S()[i].re).collect();
    let vectors = from_faer(eig.U());
    let order = descending(&all);
    let values: Vec<f64> = order.iter().map(|&i| all[i]).collect();
    let raw: Vec<CVector> = order.iter().map(|&i| vectors.column(i).into_owned()).collect();
    let mut columns = Vec::with_capacity(raw.len());
    for range in degenerate_clusters(&values, RANK_TOL) {
        columns.extend(canonical_subspace_basis(&raw[range]));
    }
    Ok(Eigh {
        values,
        vectors: Matrix::from_columns(&columns),
    })
}

/// Thin singular value decomposition `m = u diag(s) v†`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: Matrix,
    /// Descending.
    pub singular_values: Vec<f64>,
    pub v: Matrix,
}

impl Svd {
    pub fn reconstruct(&self) -> Matrix {
        let d = Matrix::from_diagonal(&CVector::from_iterator(
            self.singular_values.len(),
            self.singular_values.iter().map(|&x| c64(x, 0.0)),
        ));
        &self.u * d * self.v.adjoint()
    }
}

pub fn svd(m: &Matrix) -> Result<Svd> {
    require_finite(m)?;
    if m.nrows().min(m.ncols()) == 0 {
        return Ok(Svd {
            u: Matrix::zeros(m.nrows(), 0),
            singular_values: Vec::new(),
            v: Matrix::zeros(m.ncols(), 0),
        });
    }
    let dec = to_faer(m).thin_svd().map_err(|_| no_convergence("svd"))?;
    let s: Vec<f64> = dec.S().column_vector().iter().map(|z| z.re).collect();
    let order = descending(&s);
    Ok(Svd {
        u: pick_columns(&from_faer(dec.U()), &order),
        singular_values: order.iter().map(|&i| s[i]).collect(),
        v: pick_columns(&from_faer(dec.V()), &order),
    })
}

/// Thin singular value decomposition of a real matrix, `m = u diag(s) vᵀ`.
#[derive(Debug, Clone)]
pub struct RealSvd {
    pub u: RMatrix,
    /// Descending.
    pub singular_values: Vec<f64>,
    pub v: RMatrix,
}

pub fn real_svd(m: &RMatrix) -> Result<RealSvd> {
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    if m.nrows().min(m.ncols()) == 0 {
        return Ok(RealSvd {
            u: RMatrix::zeros(m.nrows(), 0),
            singular_values: Vec::new(),
            v: RMatrix::zeros(m.ncols(), 0),
        });
    }
    let dec = to_faer(m).thin_svd().map_err(|_| no_convergence("svd"))?;
    let s: Vec<f64> = dec.S().column_vector().iter().copied().collect();
    let order = descending(&s);
    Ok(RealSvd {
        u: pick_columns(&from_faer(dec.U()), &order),
        singular_values: order.iter().map(|&i| s[i]).collect(),
        v: pick_columns(&from_faer(dec.V()), &order),
    })
}

/// Orthonormal basis of the null space of a real matrix.
#[derive(Debug, Clone)]
pub struct Nullspace {
    pub basis: Vec<RVector>,
    /// All singular values of the (row-padded) input, descending.
    pub singular_values: Vec<f64>,
    /// Absolute cut: singular values at or below it count as zero.
    pub threshold: f64,
    /// Smallest retained singular value over the largest discarded one.
    pub rank_gap: f64,
}

impl Nullspace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Null space of `m` with the rank decided at `tol` relative to the largest
/// singular value. A singular value within a factor of 100 of the cut makes
/// the decision ill-conditioned and is reported as an error.
pub fn real_nullspace(m: &RMatrix, tol: f64) -> Result<Nullspace> {
    let cols = m.ncols();
    if cols == 0 {
        return Ok(Nullspace {
            basis: Vec::new(),
            singular_values: Vec::new(),
            threshold: 0.0,
            rank_gap: f64::INFINITY,
        });
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    // Pad to at least square so the SVD yields a full right basis.
    let rows = m.nrows().max(cols);
    let mut padded = RMatrix::zeros(rows, cols);
    padded.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
    let dec = real_svd(&padded)?;
    let singular_values = dec.singular_values;
    let largest = singular_values[0];
    let threshold = tol * largest;
    if largest > 0.0 {
        if let Some(&s) = singular_values
            .iter()
            .find(|&&s| s > threshold / 100.0 && s < threshold * 100.0)
        {
            return Err(Error::IllConditionedRank {
                threshold,
                singular_value: s,
            });
        }
    }

    let kept_min = singular_values
        .iter()
        .copied()
        .filter(|&s| s > threshold)
        .fold(f64::INFINITY, f64::min);
    let discarded_max = singular_values
        .iter()
        .copied()
        .filter(|&s| s <= threshold)
        .fold(0.0, f64::max);
    let floor = (f64::EPSILON * largest).max(f64::MIN_POSITIVE);
    let rank_gap = if largest == 0.0 {
        f64::INFINITY
    } else {
        kept_min / discarded_max.max(floor)
    };

    let basis = singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= threshold)
        .map(|(i, _)| dec.v.column(i).into_owned())
        .collect();
    Ok(Nullspace {
        basis,
        singular_values,
        threshold,
        rank_gap,
    })
}

/// Largest residual of projecting each vector of `a` onto `span(b)`, both ways.
/// Both sets must be orthonormal.
pub fn subspace_distance(a: &[RVector], b: &[RVector]) -> f64 {
    fn one_way(a: &[RVector], b: &[RVector]) -> f64 {
        a.iter()
            .map(|x| {
                let mut r = x.clone();
                for y in b {
                    r -= y * y.dot(x);
                }
                r.norm()
            })
            .fold(0.0, f64::max)
    }
    let d = one_way(a, b).max(one_way(b, a));
    if a.len() != b.len() {
        d.max(1.0)
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: &Matrix, b: &Matrix, tol: f64) -> bool {
        a.shape() == b.shape() && max_abs(&(a - b)) <= tol
    }

    fn diag(v: &[f64]) -> Matrix {
        Matrix::from_diagonal(&CVector::from_iterator(v.len(), v.iter().map(|&x| c64(x, 0.0))))
    }

    #[test]
    fn tensor_examples() {
        assert!(close(&tensor(&identity(2), &identity(2)), &identity(4), 0.0));
        let s3 = pauli(3).unwrap();
        assert!(close(&tensor(&s3, &s3), &diag(&[1.0, -1.0, -1.0, 1.0]), 0.0));
        let s1 = pauli(1).unwrap();
        let mut ket00 = CVector::zeros(4);
        ket00[0] = c64(1.0, 0.0);
        let out = tensor(&s1, &s1) * ket00;
        assert_eq!(out[3], c64(1.0, 0.0));
        assert_eq!(out.iter().filter(|z| z.norm() > 0.0).count(), 1);
    }

    #[test]
    fn pauli_index_out_of_range() {
        assert!(matches!(pauli(4), Err(Error::IndexOutOfRange { index: 4, .. })));
        assert!(close(&pauli(0).unwrap(), &identity(2), 0.0));
        assert!(close(&pauli(3).unwrap(), &diag(&[1.0, -1.0]), 0.0));
    }

    #[test]
    fn pauli_product_rule() {
        let p = pauli_basis();
        let i = c64(0.0, 1.0);
        assert!(close(&(&p[1] * &p[2]), &(&p[3] * i), 1e-15));
        for a in 1..4 {
            for b in 1..4 {
                let mut expected = if a == b { identity(2) } else { Matrix::zeros(2, 2) };
                for m in 1..4 {
                    expected += &p[m] * (i * levi_civita(a, b, m));
                }
                assert!(close(&(&p[a] * &p[b]), &expected, 1e-12), "{a}{b}");
            }
        }
    }

    #[test]
    fn normalized_paulis_are_orthonormal() {
        let p = pauli_basis();
        for a in 0..4 {
            for b in 0..4 {
                let ip = hs_inner(&(&p[a] * c64(FRAC_1_SQRT_2, 0.0)), &(&p[b] * c64(FRAC_1_SQRT_2, 0.0)))
                    .unwrap();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((ip - c64(want, 0.0)).norm() < 1e-15);
            }
        }
        assert_eq!(hs_inner(&p[1], &p[1]).unwrap(), c64(2.0, 0.0));
        assert_eq!(hs_inner(&p[1], &p[2]).unwrap(), c64(0.0, 0.0));
    }

    #[test]
    fn hs_inner_dimension_mismatch() {
        assert!(hs_inner(&identity(2), &identity(4)).is_err());
    }

    #[test]
    fn partial_trace_of_singlet_is_maximally_mixed() {
        let h = c64(FRAC_1_SQRT_2, 0.0);
        let psi = CVector::from_vec(vec![c64(0.0, 0.0), h, -h, c64(0.0, 0.0)]);
        let rho = &psi * psi.adjoint();
        let half = identity(2) * c64(0.5, 0.0);
        assert!(close(&partial_trace(&rho, Subsystem::First).unwrap(), &half, 1e-15));
        assert!(close(&partial_trace(&rho, Subsystem::Second).unwrap(), &half, 1e-15));
        assert!(partial_trace(&identity(2), Subsystem::First).is_err());
    }

    #[test]
    fn partial_transpose_of_product_is_product_of_transposes() {
        let a = Matrix::from_row_slice(2, 2, &[c64(1.0, 0.0), c64(2.0, 1.0), c64(3.0, -1.0), c64(4.0, 0.0)]);
        let b = Matrix::from_row_slice(2, 2, &[c64(0.5, 0.0), c64(0.0, 2.0), c64(1.0, 1.0), c64(-1.0, 0.0)]);
        let pt = partial_transpose(&tensor(&a, &b)).unwrap();
        assert!(close(&pt, &tensor(&a, &b.transpose()), 1e-15));
    }

    #[test]
    fn eigh_examples() {
        let e = eigh(&pauli(3).unwrap(), 1e-12).unwrap();
        assert_eq!(e.values, vec![1.0, -1.0]);
        assert!((e.vectors[(0, 0)] - c64(1.0, 0.0)).norm() < 1e-15);
        assert!((e.vectors[(1, 1)].norm() - 1.0).abs() < 1e-15);

        let e = eigh(&(identity(2) * c64(0.5, 0.0)), 1e-12).unwrap();
        assert_eq!(e.values, vec![0.5, 0.5]);
        // Degenerate eigenspace gets the computational basis.
        assert!(close(&e.vectors, &identity(2), 1e-15));

        let not_herm = Matrix::from_row_slice(2, 2, &[c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)]);
        assert!(matches!(eigh(&not_herm, 1e-9), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn svd_examples() {
        assert_eq!(svd(&identity(2)).unwrap().singular_values, vec![1.0, 1.0]);
        assert_eq!(svd(&Matrix::zeros(2, 2)).unwrap().singular_values, vec![0.0, 0.0]);
        let h = c64(FRAC_1_SQRT_2, 0.0);
        let z = c64(0.0, 0.0);
        let singlet_coeffs = Matrix::from_row_slice(2, 2, &[z, h, -h, z]);
        for s in svd(&singlet_coeffs).unwrap().singular_values {
            assert!((s - FRAC_1_SQRT_2).abs() < 1e-15);
        }
    }

    #[test]
    fn nullspace_examples() {
        let ns = real_nullspace(&RMatrix::zeros(2, 2), RANK_TOL).unwrap();
        assert_eq!(ns.dimension(), 2);
        let ns = real_nullspace(&RMatrix::identity(3, 3), RANK_TOL).unwrap();
        assert_eq!(ns.dimension(), 0);
        // Wide input: one equation, three unknowns.
        let ns = real_nullspace(&RMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]), RANK_TOL).unwrap();
        assert_eq!(ns.dimension(), 2);
        for v in &ns.basis {
            assert!((v[0] + v[1]).abs() < 1e-14);
        }
    }

    #[test]
    fn nullspace_flags_ill_conditioned_rank() {
        let m = RMatrix::from_diagonal(&RVector::from_vec(vec![1.0, 1e-9]));
        assert!(matches!(
            real_nullspace(&m, RANK_TOL),
            Err(Error::IllConditionedRank { .. })
        ));
        let m = RMatrix::from_diagonal(&RVector::from_vec(vec![1.0, 1e-13]));
        let ns = real_nullspace(&m, RANK_TOL).unwrap();
        assert_eq!(ns.dimension(), 1);
        assert!((ns.rank_gap - 1e13).abs() / 1e13 < 1e-6);
    }

    #[test]
    fn canonical_basis_depends_only_on_span() {
        let h = c64(FRAC_1_SQRT_2, 0.0);
        let rotated = vec![
            CVector::from_vec(vec![h, h, c64(0.0, 0.0)]),
            CVector::from_vec(vec![h * c64(0.0, 1.0), -h * c64(0.0, 1.0), c64(0.0, 0.0)]),
        ];
        let b = canonical_subspace_basis(&rotated);
        assert_eq!(b.len(), 2);
        assert!((b[0][0] - c64(1.0, 0.0)).norm() < 1e-14);
        assert!((b[1][1] - c64(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn svd_of_nearly_diagonal_input() {
        // Diagonal up to one 1.4e-17 entry; some bidiagonal SVD codes lose
        // about 1e-2 in the middle singular values here.
        let d = [0.5, 0.4259553768887927, 0.06242346405307991, -0.04873318856091437];
        let mut r = RMatrix::from_diagonal(&RVector::from_row_slice(&d));
        r[(3, 0)] = 1.3877787807814457e-17;
        let want = [0.5, 0.4259553768887927, 0.06242346405307991, 0.04873318856091437];
        let real = real_svd(&r).unwrap();
        let cplx = svd(&r.map(|x| c64(x, 0.0))).unwrap();
        for k in 0..4 {
            assert!((real.singular_values[k] - want[k]).abs() < 1e-15);
            assert!((cplx.singular_values[k] - want[k]).abs() < 1e-15);
        }
    }
}
