#![allow(dead_code)]

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twinscope::linalg::{c64, CVector, Matrix};
use twinscope::mds::{t_from_weights, BellWeights};
use twinscope::TVector;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-1.0..1.0f64, 2 * rows * cols).prop_map(move |v| {
        Matrix::from_fn(rows, cols, |i, j| {
            let k = 2 * (i * cols + j);
            c64(v[k], v[k + 1])
        })
    })
}

pub fn hermitian(n: usize) -> impl Strategy<Value = Matrix> {
    complex_matrix(n, n).prop_map(|m| (&m + m.adjoint()) * c64(0.5, 0.0))
}

pub fn pure_state() -> impl Strategy<Value = CVector> {
    proptest::collection::vec(-1.0..1.0f64, 8)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2)
        .prop_map(|v| {
            let z = CVector::from_fn(4, |i, _| c64(v[2 * i], v[2 * i + 1]));
            let n = z.norm();
            z / c64(n, 0.0)
        })
}

/// Bell weights with every component at least `floor`.
pub fn weights(floor: f64) -> impl Strategy<Value = BellWeights> {
    proptest::array::uniform4(0.0..1.0f64).prop_map(move |x| {
        let s: f64 = x.iter().sum::<f64>() + 1e-12;
        let free = 1.0 - 4.0 * floor;
        BellWeights(x.map(|v| floor + free * (v + 0.25e-12) / s))
    })
}

pub fn tetrahedron_point() -> impl Strategy<Value = TVector> {
    weights(0.0).prop_map(|w| t_from_weights(&w))
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
