//! Seeded random inputs: unitaries, observables, pure states, weights.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c64, pauli_basis, pauli_vector, CVector, Matrix};
use crate::mds::BellWeights;

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Haar-random element of SU(2), times a random global phase.
pub fn unitary2<R: Rng + ?Sized>(rng: &mut R) -> Matrix {
    let q: [f64; 4] = std::array::from_fn(|_| normal(rng));
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let p = pauli_basis();
    let su2 = &p[0] * c64(q[0] / n, 0.0)
        + pauli_vector([q[1], q[2], q[3]]) * c64(0.0, -1.0 / n);
    let phase = rng.random_range(0.0..std::f64::consts::TAU);
    su2 * c64(phase.cos(), phase.sin())
}

/// `a0 I + Σ a_i σ_i` with standard normal coefficients.
pub fn hermitian2<R: Rng + ?Sized>(rng: &mut R) -> Matrix {
    let p = pauli_basis();
    p.iter()
        .fold(Matrix::zeros(2, 2), |acc, s| acc + s * c64(normal(rng), 0.0))
}

/// Uniformly random normalized vector in C^n.
pub fn pure_state<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVector {
    let v = CVector::from_fn(n, |_, _| c64(normal(rng), normal(rng)));
    let norm = v.norm();
    v / c64(norm, 0.0)
}

/// Bell weights supported exactly on `support`, each at least `floor`.
pub fn weights_on<R: Rng + ?Sized>(rng: &mut R, support: &[usize], floor: f64) -> BellWeights {
    loop {
        let mut w = [0.0; 4];
        let e: Vec<f64> = support
            .iter()
            .map(|_| -(1.0 - rng.random::<f64>()).ln())
            .collect();
        let total: f64 = e.iter().sum();
        for (&k, x) in support.iter().zip(&e) {
            w[k] = x / total;
        }
        if support.iter().all(|&k| w[k] >= floor) {
            return BellWeights(w);
        }
    }
}
