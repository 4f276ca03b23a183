//! State specifications: command-line t-vectors and weights, and the plain-text
//! matrix / pure-state file format.
//!
//! ```text
//! matrix 4 4
//! 0.5 0 0 0.5
//! 0 0 0 0
//! 0 0 0 0
//! 0.5 0 0 0.5
//! ```
//!
//! or `pure 4` followed by four amplitudes. Complex entries are written
//! `re+imi` (`0.5`, `-0.25i`, `1e-3-2e-2i`, `i`). Lines starting with `#` are
//! ignored.

use crate::error::{Error, Result};
use crate::linalg::{c64, require_state, CVector, Matrix};
use crate::mds::{build_T, t_from_weights, weights_from_t, BellWeights, TVector};
use num_complex::Complex64;

/// Tolerance for validating loaded matrices and vectors.
pub const INPUT_TOL: f64 = 1e-8;
const WEIGHT_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    T(TVector),
    Weights(BellWeights),
    Matrix(Matrix),
    Pure(CVector),
}

impl StateSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            StateSpec::T(_) => "t",
            StateSpec::Weights(_) => "weights",
            StateSpec::Matrix(_) => "matrix",
            StateSpec::Pure(_) => "pure",
        }
    }

    /// Bell-diagonal coordinates when the input was given that way.
    pub fn t_vector(&self) -> Option<TVector> {
        match self {
            StateSpec::T(t) => Some(*t),
            StateSpec::Weights(w) => Some(t_from_weights(w)),
            _ => None,
        }
    }

    pub fn weights(&self) -> Option<BellWeights> {
        match self {
            StateSpec::T(t) => Some(weights_from_t(t)),
            StateSpec::Weights(w) => Some(*w),
            _ => None,
        }
    }

    /// Density matrix of the input. Not validated for t-vectors and weights.
    pub fn density(&self) -> Matrix {
        match self {
            StateSpec::T(t) => build_T(t),
            StateSpec::Weights(w) => build_T(&t_from_weights(w)),
            StateSpec::Matrix(m) => m.clone(),
            StateSpec::Pure(v) => v * v.adjoint(),
        }
    }
}

fn parse_reals<const N: usize>(s: &str, what: &str) -> Result<[f64; N]> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("{what}: {p:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    let arr: [f64; N] = parts
        .try_into()
        .map_err(|v: Vec<f64>| Error::Parse(format!("{what}: expected {N} values, got {}", v.len())))?;
    if arr.iter().any(|x| !x.is_finite()) {
        return Err(Error::Parse(format!("{what}: non-finite value")));
    }
    Ok(arr)
}

pub fn parse_t(s: &str) -> Result<TVector> {
    parse_reals::<3>(s, "--t").map(TVector)
}

pub fn parse_weights(s: &str) -> Result<BellWeights> {
    let w = BellWeights(parse_reals::<4>(s, "--weights")?);
    if (w.sum() - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::Parse(format!("--weights: sum {} is not 1", w.sum())));
    }
    Ok(w)
}

/// Pauli coefficients `α,β1,β2,β3` of a Hermitian 2×2 observable.
pub fn parse_observable(s: &str, flag: &str) -> Result<[f64; 4]> {
    parse_reals::<4>(s, flag)
}

pub fn parse_complex(tok: &str) -> Result<Complex64> {
    let bad = || Error::Parse(format!("malformed complex number {tok:?}"));
    let Some(body) = tok.strip_suffix('i') else {
        return tok.parse::<f64>().map(|re| c64(re, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(c64(re, im))
}

/// Parses and validates an input file's contents.
pub fn parse_state_file(text: &str) -> Result<StateSpec> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input file".into()))?
        .split_whitespace()
        .collect();
    let entries: Vec<Complex64> = lines
        .flat_map(str::split_whitespace)
        .map(parse_complex)
        .collect::<Result<_>>()?;
    match header.as_slice() {
        ["matrix", "4", "4"] => {
            if entries.len() != 16 {
                return Err(Error::Parse(format!("matrix 4 4 needs 16 entries, found {}", entries.len())));
            }
            let m = Matrix::from_row_slice(4, 4, &entries);
            require_state(&m, INPUT_TOL)?;
            Ok(StateSpec::Matrix(m))
        }
        ["pure", "4"] => {
            if entries.len() != 4 {
                return Err(Error::Parse(format!("pure 4 needs 4 entries, found {}", entries.len())));
            }
            let v = CVector::from_vec(entries);
            let norm = v.norm();
            if (norm - 1.0).abs() > INPUT_TOL {
                return Err(Error::Unnormalized { norm });
            }
            Ok(StateSpec::Pure(v))
        }
        _ => Err(Error::Parse(format!(
            "unrecognized header {:?}; expected `matrix 4 4` or `pure 4`",
            header.join(" ")
        ))),
    }
}
