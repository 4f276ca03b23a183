//! Twin observables and Schmidt decompositions for two-qubit states.
//!
//! - [`linalg`]: small dense complex linear algebra (Pauli matrices, partial
//!   traces, Hermitian eigendecomposition, SVD, real null spaces).
//! - [`schmidt`]: Schmidt expansions of state vectors and of density
//!   operators viewed as Hilbert–Schmidt supervectors.
//! - [`mds`]: Bell-diagonal states, the tetrahedron of `t`-vectors, its
//!   vertex/edge/interior classification and local-unitary canonical form.
//! - [`twins`]: the twin condition, a brute-force solver for it, and the
//!   closed-form twin families it is checked against.
//! - [`verify`]: the property checks run by `twinscope verify`.
//! - [`cli`]: argument parsing and report output for the `twinscope` binary.

pub mod cli;
pub mod error;
pub mod linalg;
pub mod mds;
pub mod random;
pub mod schmidt;
pub mod twins;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{Matrix, RANK_TOL};
pub use mds::{BellWeights, MdsClass, MdsKind, TVector};
pub use schmidt::{OperatorSchmidt, PureSchmidt};
pub use twins::{ObservablePair, TwinSpace};
