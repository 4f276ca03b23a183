//! Bell-diagonal two-qubit states and the tetrahedron they fill.
//!
//! A state with maximally disordered subsystems is, up to local unitaries,
//! `T(t) = (1/4)(I⊗I + Σ t_i σ_i⊗σ_i)`. The same point can be given by its
//! weights over the four Bell projectors `T_0..T_3` (`T_0` is the singlet).
//! Axis indices `i` are 1-based throughout, matching `σ_1, σ_2, σ_3`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use nalgebra::Matrix3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    c64, eigh, hs_inner, hs_norm, identity, max_abs, partial_trace, pauli_basis, pauli_vector, real_svd,
    require_state, tensor, CVector, Matrix, RMatrix, Subsystem,
};

/// Tolerance for "|t_i| equals 1" and for weight negativity.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Bound on the canonicalization residual.
pub const CANONICAL_RESIDUAL_TOL: f64 = 1e-9;

/// Diagonal correlation components `(t_1, t_2, t_3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TVector(pub [f64; 3]);

impl TVector {
    pub fn new(t1: f64, t2: f64, t3: f64) -> Self {
        TVector([t1, t2, t3])
    }

    /// Component on axis `i ∈ {1, 2, 3}`.
    pub fn axis(&self, i: usize) -> f64 {
        self.0[i - 1]
    }

    pub fn in_cube(&self) -> bool {
        self.0.iter().all(|x| x.abs() <= 1.0)
    }
}

impl fmt::Display for TVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Mixing weights `(w_0, w_1, w_2, w_3)` over the Bell projectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellWeights(pub [f64; 4]);

impl BellWeights {
    pub fn min(&self) -> (usize, f64) {
        self.0
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (k, w)| if w < acc.1 { (k, w) } else { acc })
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Indices with weight above `tol`.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        (0..4).filter(|&k| self.0[k] > tol).collect()
    }
}

/// Next axis in the cycle 1 → 2 → 3 → 1.
pub fn next_axis(i: usize) -> usize {
    i % 3 + 1
}

fn bell_vector(k: usize) -> Result<CVector> {
    let h = FRAC_1_SQRT_2;
    let v = match k {
        0 => [0.0, h, -h, 0.0],
        1 => [h, 0.0, 0.0, -h],
        2 => [h, 0.0, 0.0, h],
        3 => [0.0, h, h, 0.0],
        _ => return Err(Error::IndexOutOfRange { what: "Bell state", index: k }),
    };
    Ok(CVector::from_iterator(4, v.iter().map(|&x| c64(x, 0.0))))
}

/// Bell state `ψ_k` and its projector `T_k`.
///
/// ψ₀ = (|+−⟩−|−+⟩)/√2, ψ₁ = (|++⟩−|−−⟩)/√2, ψ₂ = (|++⟩+|−−⟩)/√2,
/// ψ₃ = (|+−⟩+|−+⟩)/√2, so that `T_s` has `t_s = −1` and the other two
/// components `+1`, and `T_0` has all three equal to `−1`.
pub fn bell_state(k: usize) -> Result<(CVector, Matrix)> {
    let v = bell_vector(k)?;
    let p = &v * v.adjoint();
    Ok((v, p))
}

/// Sign pattern of `T_k`'s t-vector.
pub fn bell_t_vector(k: usize) -> Result<TVector> {
    match k {
        0 => Ok(TVector::new(-1.0, -1.0, -1.0)),
        1 => Ok(TVector::new(-1.0, 1.0, 1.0)),
        2 => Ok(TVector::new(1.0, -1.0, 1.0)),
        3 => Ok(TVector::new(1.0, 1.0, -1.0)),
        _ => Err(Error::IndexOutOfRange { what: "Bell state", index: k }),
    }
}

pub fn t_from_weights(w: &BellWeights) -> TVector {
    let [w0, w1, w2, w3] = w.0;
    TVector::new(
        -w1 + w2 + w3 - w0,
        w1 - w2 + w3 - w0,
        w1 + w2 - w3 - w0,
    )
}

/// Inverse of [`t_from_weights`] on the plane `Σ w = 1`. Negative entries mean
/// the point lies outside the tetrahedron.
pub fn weights_from_t(t: &TVector) -> BellWeights {
    let [t1, t2, t3] = t.0;
    BellWeights([
        (1.0 - t1 - t2 - t3) / 4.0,
        (1.0 - t1 + t2 + t3) / 4.0,
        (1.0 + t1 - t2 + t3) / 4.0,
        (1.0 + t1 + t2 - t3) / 4.0,
    ])
}

/// `(1/4)(I⊗I + Σ t_i σ_i⊗σ_i)`.
#[allow(non_snake_case)]
pub fn build_T(t: &TVector) -> Matrix {
    let p = pauli_basis();
    let mut m = identity(4);
    for (s, &ti) in p[1..].iter().zip(&t.0) {
        m += tensor(s, s) * c64(ti, 0.0);
    }
    m * c64(0.25, 0.0)
}

/// `Σ w_k T_k` built from the Bell projectors directly.
pub fn bell_mixture(w: &BellWeights) -> Matrix {
    let mut m = Matrix::zeros(4, 4);
    for (k, &wk) in w.0.iter().enumerate() {
        let (_, p) = bell_state(k).expect("k < 4");
        m += p * c64(wk, 0.0);
    }
    m
}

/// Both membership tests for the tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateCheck {
    pub is_state: bool,
    pub min_weight: f64,
    /// Bell index carrying the smallest weight; the witness when `is_state` is false.
    pub min_weight_index: usize,
    pub min_eigenvalue: f64,
    pub tolerance: f64,
}

/// Tetrahedron membership via Bell weights, cross-checked against the
/// smallest eigenvalue of `T(t)`.
pub fn is_state(t: &TVector, tol: f64) -> Result<StateCheck> {
    let w = weights_from_t(t);
    let (min_weight_index, min_weight) = w.min();
    let min_eigenvalue = eigh(&build_T(t), 1e-12)?
        .values
        .last()
        .copied()
        .expect("4 eigenvalues");
    let by_weight = min_weight >= -tol;
    let by_eigen = min_eigenvalue >= -tol;
    if by_weight != by_eigen && (min_weight - min_eigenvalue).abs() > tol {
        return Err(Error::Inconsistent(format!(
            "tetrahedron tests disagree at {t}: min weight {min_weight:e}, min eigenvalue {min_eigenvalue:e}"
        )));
    }
    Ok(StateCheck {
        is_state: by_weight,
        min_weight,
        min_weight_index,
        min_eigenvalue,
        tolerance: tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeCase {
    /// `t_i = +1`: mixture of the two non-singlet Bell states other than `T_i`.
    A,
    /// `t_i = −1`: mixture of the singlet with `T_i`.
    B,
}

impl fmt::Display for EdgeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeCase::A => "A",
            EdgeCase::B => "B",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MdsKind {
    BellVertex(usize),
    BinaryEdge {
        /// Axis with `|t_i| = 1`; the excluded Bell state in case A.
        index: usize,
        case: EdgeCase,
        /// `t_{i+2}` (cyclic), which runs over `(−1, 1)` along the edge.
        parameter: f64,
    },
    GenericInterior,
    NonState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MdsClass {
    pub kind: MdsKind,
    pub weights: BellWeights,
    pub detail: String,
}

impl MdsClass {
    /// The two Bell states of a binary edge with their weights.
    pub fn edge_mixture(&self) -> Option<[(usize, f64); 2]> {
        let MdsKind::BinaryEdge { index: i, case, parameter } = self.kind else {
            return None;
        };
        let j = next_axis(i);
        let m = next_axis(j);
        // parameter = t_m; on case A edges t_j = -t_m.
        Some(match case {
            EdgeCase::A => [(j, (1.0 + parameter) / 2.0), (m, (1.0 - parameter) / 2.0)],
            EdgeCase::B => [(i, (1.0 + parameter) / 2.0), (0, (1.0 - parameter) / 2.0)],
        })
    }
}

/// Place `t` in the vertex / edge / interior stratification of the tetrahedron.
pub fn classify(t: &TVector, tol: f64) -> Result<MdsClass> {
    let weights = weights_from_t(t);
    let check = is_state(t, tol)?;
    if !check.is_state {
        return Ok(MdsClass {
            kind: MdsKind::NonState,
            weights,
            detail: format!(
                "w{} = {} is negative; {t} lies outside the tetrahedron",
                check.min_weight_index, check.min_weight
            ),
        });
    }
    let unit: Vec<usize> = (1..=3).filter(|&i| t.axis(i).abs() >= 1.0 - tol).collect();
    let margin = t.0.iter().map(|x| 1.0 - x.abs()).fold(f64::INFINITY, f64::min);
    match unit.len() {
        3 => {
            let signs: Vec<bool> = t.0.iter().map(|&x| x > 0.0).collect();
            let k = match signs.as_slice() {
                [false, true, true] => 1,
                [true, false, true] => 2,
                [true, true, false] => 3,
                [false, false, false] => 0,
                _ => {
                    return Err(Error::Inconsistent(format!(
                        "vertex sign pattern of {t} passed the state test"
                    )))
                }
            };
            Ok(MdsClass {
                kind: MdsKind::BellVertex(k),
                weights,
                detail: format!("all |t_i| = 1; pure Bell state T{k}"),
            })
        }
        1 => {
            let i = unit[0];
            let j = next_axis(i);
            let m = next_axis(j);
            let (tj, tm) = (t.axis(j), t.axis(m));
            // Weights are only known to -tol, which loosens the edge relation by a few tol.
            let slack = 8.0 * tol;
            let (case, violation) = if t.axis(i) > 0.0 {
                (EdgeCase::A, (tm + tj).abs())
            } else {
                (EdgeCase::B, (tm - tj).abs())
            };
            if violation > slack {
                return Err(Error::Inconsistent(format!(
                    "edge relation violated by {violation:e} at {t}"
                )));
            }
            let class = MdsClass {
                kind: MdsKind::BinaryEdge {
                    index: i,
                    case,
                    parameter: tm,
                },
                weights,
                detail: String::new(),
            };
            let [(ka, wa), (kb, wb)] = class.edge_mixture().expect("edge");
            Ok(MdsClass {
                detail: format!(
                    "|t{i}| = 1, case {case}: {wa}*T{ka} + {wb}*T{kb}; margin of the other axes {:e}",
                    1.0 - tj.abs().max(tm.abs())
                ),
                ..class
            })
        }
        0 => Ok(MdsClass {
            kind: MdsKind::GenericInterior,
            weights,
            detail: format!("no |t_i| within {tol:e} of 1 (closest margin {margin:e})"),
        }),
        n => Err(Error::Inconsistent(format!(
            "{n} components of {t} have |t_i| = 1, impossible for a state"
        ))),
    }
}

/// `(u1 ⊗ u2) ρ (u1 ⊗ u2)† = T(t)` up to `residual` (Hilbert–Schmidt norm).
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub u1: Matrix,
    pub u2: Matrix,
    pub t: TVector,
    pub residual: f64,
}

/// Largest deviation of either reduced state from `I/2`.
pub fn mds_deviation(rho: &Matrix) -> Result<f64> {
    let half = identity(2) * c64(0.5, 0.0);
    let d1 = max_abs(&(partial_trace(rho, Subsystem::First)? - &half));
    let d2 = max_abs(&(partial_trace(rho, Subsystem::Second)? - &half));
    Ok(d1.max(d2))
}

pub fn is_mds(rho: &Matrix, tol: f64) -> Result<bool> {
    require_state(rho, tol)?;
    Ok(mds_deviation(rho)? <= tol)
}

/// `C_ij = Tr[ρ σ_i⊗σ_j]`, `i, j ∈ {1,2,3}`.
pub fn correlation_matrix(rho: &Matrix) -> Matrix3<f64> {
    let p = pauli_basis();
    Matrix3::from_fn(|i, j| {
        hs_inner(&tensor(&p[i + 1], &p[j + 1]), rho)
            .expect("4x4")
            .re
    })
}

/// Unit quaternion `(w, x, y, z)` of a rotation matrix, with `w ≥ 0`.
fn rotation_quaternion(r: &Matrix3<f64>) -> [f64; 4] {
    let tr = r.trace();
    let q = if tr > 0.0 {
        let s = (tr + 1.0).sqrt() * 2.0;
        [s / 4.0, (r[(2, 1)] - r[(1, 2)]) / s, (r[(0, 2)] - r[(2, 0)]) / s, (r[(1, 0)] - r[(0, 1)]) / s]
    } else if r[(0, 0)] > r[(1, 1)] && r[(0, 0)] > r[(2, 2)] {
        let s = (1.0 + r[(0, 0)] - r[(1, 1)] - r[(2, 2)]).sqrt() * 2.0;
        [(r[(2, 1)] - r[(1, 2)]) / s, s / 4.0, (r[(0, 1)] + r[(1, 0)]) / s, (r[(0, 2)] + r[(2, 0)]) / s]
    } else if r[(1, 1)] > r[(2, 2)] {
        let s = (1.0 + r[(1, 1)] - r[(0, 0)] - r[(2, 2)]).sqrt() * 2.0;
        [(r[(0, 2)] - r[(2, 0)]) / s, (r[(0, 1)] + r[(1, 0)]) / s, s / 4.0, (r[(1, 2)] + r[(2, 1)]) / s]
    } else {
        let s = (1.0 + r[(2, 2)] - r[(0, 0)] - r[(1, 1)]).sqrt() * 2.0;
        [(r[(1, 0)] - r[(0, 1)]) / s, (r[(0, 2)] + r[(2, 0)]) / s, (r[(1, 2)] + r[(2, 1)]) / s, s / 4.0]
    };
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let sign = if q[0] < 0.0 { -1.0 } else { 1.0 };
    q.map(|x| sign * x / n)
}

/// SU(2) element `U` with `U σ_j U† = Σ_k R_kj σ_k`, taking the lift with
/// nonnegative trace.
pub fn lift_rotation(r: &Matrix3<f64>) -> Matrix {
    let [w, x, y, z] = rotation_quaternion(r);
    let p = pauli_basis();
    let mi = c64(0.0, -1.0);
    &p[0] * c64(w, 0.0) + pauli_vector([x, y, z]) * mi
}

/// Rotation induced by conjugation with a 2×2 unitary.
pub fn adjoint_rotation(u: &Matrix) -> Matrix3<f64> {
    let p = pauli_basis();
    Matrix3::from_fn(|k, j| {
        let rotated = u * &p[j + 1] * u.adjoint();
        hs_inner(&p[k + 1], &rotated).expect("2x2").re / 2.0
    })
}

/// Local unitaries bringing an MDS state to the form `T(t)`.
///
/// `t` is canonical: `|t_i|` descending, all components nonnegative except
/// possibly the last, which carries the sign of `det C`.
pub fn canonicalize(rho: &Matrix, tol: f64) -> Result<CanonicalForm> {
    require_state(rho, tol)?;
    let deviation = mds_deviation(rho)?;
    if deviation > tol {
        return Err(Error::NotMds { deviation });
    }
    let c = correlation_matrix(rho);
    let dec = real_svd(&RMatrix::from_fn(3, 3, |i, j| c[(i, j)]))?;
    let mut p = Matrix3::from_fn(|r, k| dec.u[(r, k)]);
    let mut q = Matrix3::from_fn(|r, k| dec.v[(r, k)]);
    let mut s: [f64; 3] = std::array::from_fn(|k| dec.singular_values[k]);
    if p.determinant() < 0.0 {
        p.column_mut(2).neg_mut();
        s[2] = -s[2];
    }
    if q.determinant() < 0.0 {
        q.column_mut(2).neg_mut();
        s[2] = -s[2];
    }
    let u1 = lift_rotation(&p.transpose());
    let u2 = lift_rotation(&q.transpose());
    let t = TVector(s);
    let local = tensor(&u1, &u2);
    let residual = hs_norm(&(&local * rho * local.adjoint() - build_T(&t)));
    Ok(CanonicalForm { u1, u2, t, residual })
}

/// Stratum of the tetrahedron to draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// All four weights strictly positive.
    Interior,
    /// Three weights positive, `w_missing = 0`.
    Face { missing: usize },
    /// Open edge with `|t_index| = 1`.
    Edge { index: usize, case: EdgeCase },
    Vertex(usize),
}

/// Point on the open edge `|t_i| = 1` with `t_{i+2} = parameter`.
pub fn edge_point(index: usize, case: EdgeCase, parameter: f64) -> Result<TVector> {
    if !(1..=3).contains(&index) {
        return Err(Error::IndexOutOfRange { what: "axis", index });
    }
    let j = next_axis(index);
    let m = next_axis(j);
    let mut t = [0.0; 3];
    t[m - 1] = parameter;
    match case {
        EdgeCase::A => {
            t[index - 1] = 1.0;
            t[j - 1] = -parameter;
        }
        EdgeCase::B => {
            t[index - 1] = -1.0;
            t[j - 1] = parameter;
        }
    }
    Ok(TVector(t))
}

const MIN_SAMPLED_WEIGHT: f64 = 1e-3;

fn dirichlet(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let e: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        let total: f64 = e.iter().sum();
        let w: Vec<f64> = e.iter().map(|x| x / total).collect();
        if w.iter().all(|&x| x >= MIN_SAMPLED_WEIGHT) {
            return w;
        }
    }
}

/// Deterministic pseudorandom point of the requested stratum.
pub fn sample_tetrahedron(seed: u64, region: Region) -> Result<TVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match region {
        Region::Vertex(k) => bell_t_vector(k),
        Region::Edge { index, case } => edge_point(index, case, rng.random_range(-0.9..0.9)),
        Region::Interior => {
            let w = dirichlet(&mut rng, 4);
            Ok(t_from_weights(&BellWeights([w[0], w[1], w[2], w[3]])))
        }
        Region::Face { missing } => {
            if missing > 3 {
                return Err(Error::IndexOutOfRange { what: "Bell state", index: missing });
            }
            let mut w = dirichlet(&mut rng, 3).into_iter();
            let mut full = [0.0; 4];
            for (k, slot) in full.iter_mut().enumerate() {
                if k != missing {
                    *slot = w.next().expect("three weights");
                }
            }
            Ok(t_from_weights(&BellWeights(full)))
        }
    }
}

/// All six open edges as (axis, case) pairs.
pub fn all_edges() -> [(usize, EdgeCase); 6] {
    [
        (1, EdgeCase::A),
        (2, EdgeCase::A),
        (3, EdgeCase::A),
        (1, EdgeCase::B),
        (2, EdgeCase::B),
        (3, EdgeCase::B),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pauli, unitarity_deviation};

    fn mclose(a: &Matrix, b: &Matrix, tol: f64) -> bool {
        max_abs(&(a - b)) <= tol
    }

    fn tclose(a: &TVector, b: &TVector, tol: f64) -> bool {
        a.0.iter().zip(b.0).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn bell_states_have_the_stated_t_vectors() {
        let p = pauli_basis();
        for k in 0..4 {
            let (_, proj) = bell_state(k).unwrap();
            let t: Vec<f64> = (1..4)
                .map(|i| hs_inner(&tensor(&p[i], &p[i]), &proj).unwrap().re)
                .collect();
            assert!(tclose(&TVector([t[0], t[1], t[2]]), &bell_t_vector(k).unwrap(), 1e-15));
            assert!(mclose(&build_T(&bell_t_vector(k).unwrap()), &proj, 1e-15));
            for l in 0..4 {
                let (_, other) = bell_state(l).unwrap();
                let overlap = hs_inner(&proj, &other).unwrap().re;
                assert!((overlap - if k == l { 1.0 } else { 0.0 }).abs() < 1e-15);
            }
        }
        assert!(bell_state(4).is_err());
    }

    #[test]
    fn singlet_vector_sign() {
        let (v, _) = bell_state(0).unwrap();
        assert!((v[1] - c64(FRAC_1_SQRT_2, 0.0)).norm() < 1e-16);
        assert!((v[2] + c64(FRAC_1_SQRT_2, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn weight_conversions() {
        let t = t_from_weights(&BellWeights([0.0, 0.3, 0.7, 0.0]));
        assert!(tclose(&t, &TVector::new(0.4, -0.4, 1.0), 1e-15));
        assert_eq!(t_from_weights(&BellWeights([1.0, 0.0, 0.0, 0.0])), TVector::new(-1.0, -1.0, -1.0));
        assert_eq!(t_from_weights(&BellWeights([0.25; 4])), TVector::new(0.0, 0.0, 0.0));

        assert_eq!(weights_from_t(&TVector::new(-1.0, -1.0, -1.0)).0, [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(weights_from_t(&TVector::new(1.0, 1.0, 1.0)).0, [-0.5, 0.5, 0.5, 0.5]);
        let w = weights_from_t(&TVector::new(0.4, -0.4, 1.0));
        for (a, b) in w.0.iter().zip([0.0, 0.3, 0.7, 0.0]) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn build_t_examples() {
        assert!(mclose(&build_T(&TVector::new(0.0, 0.0, 0.0)), &(identity(4) * c64(0.25, 0.0)), 0.0));
        // (1/2)(|++><++| + |--><--|)
        let mut eq10a = Matrix::zeros(4, 4);
        eq10a[(0, 0)] = c64(0.5, 0.0);
        eq10a[(3, 3)] = c64(0.5, 0.0);
        assert!(mclose(&build_T(&TVector::new(0.0, 0.0, 1.0)), &eq10a, 1e-16));
        let (_, singlet) = bell_state(0).unwrap();
        assert!(mclose(&build_T(&TVector::new(-1.0, -1.0, -1.0)), &singlet, 1e-15));
    }

    #[test]
    fn eigenvalues_of_edge_state() {
        let e = eigh(&build_T(&TVector::new(0.4, -0.4, 1.0)), 1e-12).unwrap();
        for (a, b) in e.values.iter().zip([0.7, 0.3, 0.0, 0.0]) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn state_membership_examples() {
        let c = is_state(&TVector::new(1.0, 1.0, 1.0), BOUNDARY_TOL).unwrap();
        assert!(!c.is_state);
        assert_eq!(c.min_weight_index, 0);
        assert_eq!(c.min_weight, -0.5);
        assert!(is_state(&TVector::new(-1.0, -1.0, -1.0), BOUNDARY_TOL).unwrap().is_state);
        let c = is_state(&TVector::new(0.9, 0.9, 0.9), BOUNDARY_TOL).unwrap();
        assert!(!c.is_state);
        assert!((c.min_eigenvalue - c.min_weight).abs() < 1e-14);
    }

    #[test]
    fn classify_examples() {
        let c = classify(&TVector::new(0.4, -0.4, 1.0), BOUNDARY_TOL).unwrap();
        match c.kind {
            MdsKind::BinaryEdge { index, case, .. } => {
                assert_eq!((index, case), (3, EdgeCase::A));
            }
            other => panic!("{other:?}"),
        }
        let [(k1, w1), (k2, w2)] = c.edge_mixture().unwrap();
        assert_eq!((k1, k2), (1, 2));
        assert!((w1 - 0.3).abs() < 1e-15 && (w2 - 0.7).abs() < 1e-15);

        let c = classify(&TVector::new(0.6, 0.6, -1.0), BOUNDARY_TOL).unwrap();
        assert!(matches!(c.kind, MdsKind::BinaryEdge { index: 3, case: EdgeCase::B, .. }));
        let [(k1, w1), (k2, w2)] = c.edge_mixture().unwrap();
        assert_eq!((k1, k2), (3, 0));
        assert!((w1 - 0.8).abs() < 1e-15 && (w2 - 0.2).abs() < 1e-15);

        let c = classify(&TVector::new(0.2, 0.1, -0.05), BOUNDARY_TOL).unwrap();
        assert_eq!(c.kind, MdsKind::GenericInterior);
        assert!(c.weights.0.iter().all(|&w| w > 0.0));

        let c = classify(&TVector::new(1.0, 1.0, 1.0), BOUNDARY_TOL).unwrap();
        assert_eq!(c.kind, MdsKind::NonState);
    }

    #[test]
    fn vertex_sign_table() {
        for (t, k) in [
            ([-1.0, 1.0, 1.0], 1),
            ([1.0, -1.0, 1.0], 2),
            ([1.0, 1.0, -1.0], 3),
            ([-1.0, -1.0, -1.0], 0),
        ] {
            let c = classify(&TVector(t), BOUNDARY_TOL).unwrap();
            assert_eq!(c.kind, MdsKind::BellVertex(k));
        }
        for t in [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]] {
            assert!(!is_state(&TVector(t), BOUNDARY_TOL).unwrap().is_state);
        }
    }

    #[test]
    fn edge_weights_match_weight_inversion() {
        for (i, case) in all_edges() {
            for seed in 0..5 {
                let t = sample_tetrahedron(seed, Region::Edge { index: i, case }).unwrap();
                let c = classify(&t, BOUNDARY_TOL).unwrap();
                let w = weights_from_t(&t);
                for (k, wk) in c.edge_mixture().unwrap() {
                    assert!((w.0[k] - wk).abs() < 1e-14);
                }
                assert_eq!(w.support(1e-12).len(), 2);
            }
        }
    }

    #[test]
    fn two_unit_components_is_an_internal_error() {
        // Not a state for any tolerance that keeps it off a vertex, so force it with a loose tol.
        let err = classify(&TVector::new(1.0, 1.0, -0.97), 1e-2).unwrap_err();
        assert!(err.is_internal(), "{err:?}");
    }

    #[test]
    fn edge_sampler_example() {
        let t = edge_point(3, EdgeCase::A, 0.6).unwrap();
        assert_eq!(t, TVector::new(-0.6, 0.6, 1.0));
        let t = edge_point(3, EdgeCase::B, 0.6).unwrap();
        assert_eq!(t, TVector::new(0.6, 0.6, -1.0));
        assert_eq!(sample_tetrahedron(7, Region::Vertex(0)).unwrap(), TVector::new(-1.0, -1.0, -1.0));
        for seed in 0..20 {
            let t = sample_tetrahedron(seed, Region::Interior).unwrap();
            assert!(weights_from_t(&t).0.iter().all(|&w| w > 0.0));
            assert_eq!(t, sample_tetrahedron(seed, Region::Interior).unwrap());
        }
    }

    #[test]
    fn lift_reproduces_rotation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let q: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
            let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            let p = pauli_basis();
            let u = &p[0] * c64(q[0] / n, 0.0)
                + pauli_vector([q[1], q[2], q[3]]) * c64(0.0, -1.0 / n);
            assert!(unitarity_deviation(&u) < 1e-14);
            let r = adjoint_rotation(&u);
            assert!((r.determinant() - 1.0).abs() < 1e-12);
            let lifted = lift_rotation(&r);
            assert!(lifted.trace().re >= 0.0);
            assert!((lifted.trace().im).abs() < 1e-14);
            assert!((adjoint_rotation(&lifted) - r).abs().max() < 1e-12);
        }
        // Rotations by pi hit the zero-trace branch.
        let r = Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, -1.0, -1.0));
        let u = lift_rotation(&r);
        assert!(mclose(&(&u * c64(0.0, 1.0)), &pauli(1).unwrap(), 1e-15) || mclose(&(&u * c64(0.0, -1.0)), &pauli(1).unwrap(), 1e-15));
    }

    #[test]
    fn canonicalize_fixed_points() {
        let mixed = identity(4) * c64(0.25, 0.0);
        let f = canonicalize(&mixed, 1e-9).unwrap();
        assert_eq!(f.t, TVector::new(0.0, 0.0, 0.0));
        assert!(f.residual < 1e-15);

        let rho = build_T(&TVector::new(0.4, -0.4, 1.0));
        let f = canonicalize(&rho, 1e-9).unwrap();
        assert!(tclose(&f.t, &TVector::new(1.0, 0.4, -0.4), 1e-12));
        assert!(f.residual < 1e-12);

        let not_mds = tensor(
            &Matrix::from_row_slice(2, 2, &[c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)]),
            &(identity(2) * c64(0.5, 0.0)),
        );
        assert!(!is_mds(&not_mds, 1e-9).unwrap());
        assert!(matches!(canonicalize(&not_mds, 1e-9), Err(Error::NotMds { .. })));
        assert!(is_mds(&bell_state(2).unwrap().1, 1e-9).unwrap());
        assert!(is_mds(&bell_mixture(&BellWeights([0.1, 0.2, 0.3, 0.4])), 1e-9).unwrap());
    }
}
