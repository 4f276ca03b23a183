//! Twin observables on two-qubit states.
//!
//! A pair `(A1, A2)` of Hermitian operators is a twin pair for `ρ` when
//! `(A1⊗I)ρ = (I⊗A2)ρ`. [`twin_space`] solves this condition by brute force
//! over the eight real Pauli coordinates of the pair; the analytic
//! constructions ([`analytic_edge_twins`], [`bell_twin_partner`],
//! [`simultaneous_twins`]) are checked against it.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::linalg::{
    c64, canonical_subspace_basis, eigh, hs_inner, hs_norm, identity, partial_transpose,
    pauli_basis, real_nullspace, require_hermitian, require_state, subspace_distance, tensor,
    CVector, Matrix, RMatrix, RVector,
};
use crate::mds::{bell_state, bell_t_vector, BellWeights, EdgeCase, MdsClass, MdsKind};

/// Tolerance used to validate input states.
pub const STATE_TOL: f64 = 1e-8;
/// Twin residuals and subspace comparisons, absolute on Hilbert–Schmidt norms.
pub const TWIN_TOL: f64 = 1e-9;
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalue separation below which an observable counts as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Hermitian operators on the first and second qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservablePair {
    pub a1: Matrix,
    pub a2: Matrix,
}

impl ObservablePair {
    pub fn new(a1: Matrix, a2: Matrix) -> Result<Self> {
        for a in [&a1, &a2] {
            if a.shape() != (2, 2) {
                return Err(Error::DimensionMismatch {
                    op: "ObservablePair",
                    expected: "2x2".into(),
                    found: format!("{}x{}", a.nrows(), a.ncols()),
                });
            }
            require_hermitian(a, HERMITIAN_TOL)?;
        }
        Ok(ObservablePair { a1, a2 })
    }

    /// `a1 = Σ x_i σ_i`, `a2 = Σ y_i σ_i`.
    pub fn from_pauli(x: [f64; 4], y: [f64; 4]) -> Self {
        ObservablePair {
            a1: from_pauli_coords(&x),
            a2: from_pauli_coords(&y),
        }
    }

    /// Coordinates in the orthonormal real basis `{σ_i/√2}` of each factor,
    /// first qubit then second.
    pub fn coordinates(&self) -> RVector {
        let x = pauli_coords(&self.a1);
        let y = pauli_coords(&self.a2);
        RVector::from_iterator(8, x.iter().chain(&y).map(|v| v * std::f64::consts::SQRT_2))
    }

    pub fn from_coordinates(c: &RVector) -> Self {
        let x: [f64; 4] = std::array::from_fn(|i| c[i] * FRAC_1_SQRT_2);
        let y: [f64; 4] = std::array::from_fn(|i| c[4 + i] * FRAC_1_SQRT_2);
        ObservablePair::from_pauli(x, y)
    }

    /// `Re Tr(a1† a1') + Re Tr(a2† a2')`.
    pub fn inner(&self, other: &ObservablePair) -> f64 {
        hs_inner(&self.a1, &other.a1).expect("2x2").re + hs_inner(&self.a2, &other.a2).expect("2x2").re
    }
}

/// `(α, β_1, β_2, β_3)` with `a = αI + Σ β_i σ_i`, from the Hermitian part of `a`.
pub fn pauli_coords(a: &Matrix) -> [f64; 4] {
    let p = pauli_basis();
    std::array::from_fn(|i| hs_inner(&p[i], a).expect("2x2").re / 2.0)
}

pub fn from_pauli_coords(x: &[f64; 4]) -> Matrix {
    let p = pauli_basis();
    p.iter()
        .zip(x)
        .fold(Matrix::zeros(2, 2), |acc, (s, &v)| acc + s * c64(v, 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwinCheck {
    pub is_twin: bool,
    /// `‖(a1⊗I)ρ − (I⊗a2)ρ‖_HS`.
    pub residual: f64,
}

pub fn twin_residual(pair: &ObservablePair, rho: &Matrix) -> f64 {
    let left = tensor(&pair.a1, &identity(2)) * rho;
    let right = tensor(&identity(2), &pair.a2) * rho;
    hs_norm(&(left - right))
}

pub fn is_twin_pair(pair: &ObservablePair, rho: &Matrix, tol: f64) -> Result<TwinCheck> {
    require_state(rho, STATE_TOL)?;
    let residual = twin_residual(pair, rho);
    Ok(TwinCheck {
        is_twin: residual <= tol,
        residual,
    })
}

/// All twin pairs of a state, as a real vector space.
#[derive(Debug, Clone)]
pub struct TwinSpace {
    /// Orthonormal under [`ObservablePair::inner`]; `(I, I)/2` first.
    pub basis: Vec<ObservablePair>,
    pub dimension: usize,
    pub has_nontrivial: bool,
    /// Rank-decision margin of the oracle; `None` for closed-form spaces.
    pub singular_value_gap: Option<f64>,
}

impl TwinSpace {
    fn from_coordinates(coords: Vec<RVector>, gap: Option<f64>) -> Self {
        let basis: Vec<ObservablePair> = coords.iter().map(ObservablePair::from_coordinates).collect();
        TwinSpace {
            dimension: basis.len(),
            has_nontrivial: basis.len() > 1,
            basis,
            singular_value_gap: gap,
        }
    }

    pub fn coordinates(&self) -> Vec<RVector> {
        self.basis.iter().map(ObservablePair::coordinates).collect()
    }

    /// Distance of `pair` from this space, in the combined norm.
    pub fn residual_of(&self, pair: &ObservablePair) -> f64 {
        let x = pair.coordinates();
        let mut r = x.clone();
        for b in self.coordinates() {
            r -= &b * b.dot(&x);
        }
        r.norm()
    }

    /// Largest mutual projection residual between the two spaces (at least 1
    /// when the dimensions differ).
    pub fn distance(&self, other: &TwinSpace) -> f64 {
        subspace_distance(&self.coordinates(), &other.coordinates())
    }
}

fn trivial_coordinates() -> RVector {
    let mut e = RVector::zeros(8);
    e[0] = FRAC_1_SQRT_2;
    e[4] = FRAC_1_SQRT_2;
    e
}

/// Real 32×8 system whose null space is the twin space of `rho`.
pub fn twin_system(rho: &Matrix) -> RMatrix {
    let p = pauli_basis();
    let id = identity(2);
    let h = c64(FRAC_1_SQRT_2, 0.0);
    let mut m = RMatrix::zeros(32, 8);
    for col in 0..8 {
        let op = if col < 4 {
            tensor(&p[col], &id) * rho * h
        } else {
            tensor(&id, &p[col - 4]) * rho * (-h)
        };
        for (idx, z) in op.iter().enumerate() {
            m[(idx, col)] = z.re;
            m[(16 + idx, col)] = z.im;
        }
    }
    m
}

fn space_from_system(system: &RMatrix, tol: f64) -> Result<TwinSpace> {
    let ns = real_nullspace(system, tol)?;
    let e = trivial_coordinates();
    let mut in_span = e.clone();
    for v in &ns.basis {
        in_span -= v * v.dot(&e);
    }
    if in_span.norm() > TWIN_TOL {
        return Err(Error::Inconsistent(format!(
            "trivial twin (I, I) missing from the oracle null space (residual {:e})",
            in_span.norm()
        )));
    }
    let rest: Vec<CVector> = ns
        .basis
        .iter()
        .map(|v| {
            let r = v - &e * e.dot(v);
            CVector::from_iterator(8, r.iter().map(|&x| c64(x, 0.0)))
        })
        .collect();
    let mut coords = vec![e];
    coords.extend(
        canonical_subspace_basis(&rest)
            .into_iter()
            .map(|v| RVector::from_iterator(8, v.iter().map(|z| z.re))),
    );
    if coords.len() != ns.dimension() {
        return Err(Error::Inconsistent(format!(
            "canonical twin basis has {} vectors for a {}-dimensional null space",
            coords.len(),
            ns.dimension()
        )));
    }
    Ok(TwinSpace::from_coordinates(coords, Some(ns.rank_gap)))
}

/// Brute-force twin space: the real null space of the linearized twin condition.
pub fn twin_space(rho: &Matrix, tol: f64) -> Result<TwinSpace> {
    require_state(rho, STATE_TOL)?;
    space_from_system(&twin_system(rho), tol)
}

/// Pairs that are twins for every state in the list, from one stacked system.
pub fn simultaneous_twins(states: &[Matrix], tol: f64) -> Result<TwinSpace> {
    if states.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut stacked = RMatrix::zeros(32 * states.len(), 8);
    for (n, rho) in states.iter().enumerate() {
        require_state(rho, STATE_TOL)?;
        stacked
            .view_mut((32 * n, 0), (32, 8))
            .copy_from(&twin_system(rho));
    }
    space_from_system(&stacked, tol)
}

/// Closed-form twin space of a binary edge: `(I, I)` and `(σ_i, ±σ_i)`,
/// plus sign on case A edges and minus on case B.
pub fn analytic_edge_twins(cls: &MdsClass) -> Result<TwinSpace> {
    let MdsKind::BinaryEdge { index, case, .. } = cls.kind else {
        return Err(Error::NotEdge);
    };
    let sign = match case {
        EdgeCase::A => 1.0,
        EdgeCase::B => -1.0,
    };
    let mut axis = RVector::zeros(8);
    axis[index] = FRAC_1_SQRT_2;
    axis[4 + index] = sign * FRAC_1_SQRT_2;
    Ok(TwinSpace::from_coordinates(vec![trivial_coordinates(), axis], None))
}

/// Twin of `a1` on the Bell state `T_k`: the Pauli component `β_i` picks up
/// the sign of `t_i` for `T_k`, so `T_s` flips `β_s` and `T_0` flips all three.
/// Only the Hermitian part of `a1` is used.
pub fn bell_twin_partner(k: usize, a1: &Matrix) -> Result<Matrix> {
    let signs = bell_t_vector(k)?;
    let [alpha, b1, b2, b3] = pauli_coords(a1);
    Ok(from_pauli_coords(&[
        alpha,
        signs.0[0] * b1,
        signs.0[1] * b2,
        signs.0[2] * b3,
    ]))
}

/// Positive-partial-transpose verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PptVerdict {
    pub separable: bool,
    pub min_eigenvalue: f64,
}

pub fn ppt_separable(rho: &Matrix, tol: f64) -> Result<PptVerdict> {
    require_state(rho, STATE_TOL)?;
    let pt = partial_transpose(rho)?;
    let min_eigenvalue = eigh(&pt, STATE_TOL)?
        .values
        .last()
        .copied()
        .expect("4 eigenvalues");
    Ok(PptVerdict {
        separable: min_eigenvalue >= -tol,
        min_eigenvalue,
    })
}

/// A state given both as a mixture of product states and as a Bell mixture.
#[derive(Debug, Clone)]
pub struct SeparableForm {
    pub label: &'static str,
    pub product_form: Matrix,
    pub bell_form: Matrix,
    pub bell_weights: BellWeights,
    pub description: &'static str,
}

fn ket_projector(bits: [usize; 2]) -> Matrix {
    let mut m = Matrix::zeros(4, 4);
    let idx = 2 * bits[0] + bits[1];
    m[(idx, idx)] = c64(1.0, 0.0);
    m
}

/// The two equal-weight Bell mixtures that are equal mixtures of
/// computational-basis product states.
pub fn biorthogonal_separable_forms() -> Vec<SeparableForm> {
    let half = c64(0.5, 0.0);
    let bell = |k: usize| bell_state(k).expect("k < 4").1;
    vec![
        SeparableForm {
            label: "T1+T2",
            product_form: (ket_projector([0, 0]) + ket_projector([1, 1])) * half,
            bell_form: (bell(1) + bell(2)) * half,
            bell_weights: BellWeights([0.0, 0.5, 0.5, 0.0]),
            description: "(1/2)(|+><+| (x) |+><+| + |-><-| (x) |-><-|)",
        },
        SeparableForm {
            label: "T0+T3",
            product_form: (ket_projector([0, 1]) + ket_projector([1, 0])) * half,
            bell_form: (bell(0) + bell(3)) * half,
            bell_weights: BellWeights([0.5, 0.0, 0.0, 0.5]),
            description: "(1/2)(|+><+| (x) |-><-| + |-><-| (x) |+><+|)",
        },
    ]
}

/// Outcome statistics of measuring `a1` on the first qubit and `a2` on the second.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    /// `[i][j]`: probability of the `i`-th largest eigenvalue of `a1` together
    /// with the `j`-th largest of `a2`.
    pub joint_distribution: [[f64; 2]; 2],
    pub a1_eigenvalues: [f64; 2],
    pub a2_eigenvalues: [f64; 2],
    /// Weight off the diagonal pairing of sorted eigenvalues.
    pub mismatch_probability: f64,
    pub expectation_gap: f64,
}

fn spectral_projectors(a: &Matrix) -> Result<([f64; 2], [Matrix; 2])> {
    let e = eigh(a, HERMITIAN_TOL)?;
    let gap = e.values[0] - e.values[1];
    if gap <= DEGENERACY_TOL {
        return Err(Error::DegenerateObservable { gap });
    }
    let proj = |k: usize| {
        let v = e.vectors.column(k).into_owned();
        &v * v.adjoint()
    };
    Ok(([e.values[0], e.values[1]], [proj(0), proj(1)]))
}

pub fn distant_correlation(pair: &ObservablePair, rho: &Matrix) -> Result<CorrelationReport> {
    require_state(rho, STATE_TOL)?;
    let (l1, p1) = spectral_projectors(&pair.a1)?;
    let (l2, p2) = spectral_projectors(&pair.a2)?;
    let mut joint = [[0.0; 2]; 2];
    for (i, pa) in p1.iter().enumerate() {
        for (j, pb) in p2.iter().enumerate() {
            joint[i][j] = (tensor(pa, pb) * rho).trace().re;
        }
    }
    let id = identity(2);
    let e1 = (tensor(&pair.a1, &id) * rho).trace().re;
    let e2 = (tensor(&id, &pair.a2) * rho).trace().re;
    Ok(CorrelationReport {
        mismatch_probability: joint[0][1] + joint[1][0],
        joint_distribution: joint,
        a1_eigenvalues: l1,
        a2_eigenvalues: l2,
        expectation_gap: (e1 - e2).abs(),
    })
}
