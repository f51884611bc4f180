//! Einstein velocity addition on the unit ball of R^3, the isomorphic
//! composition of invertible qubit density matrices, and the rapidity and
//! trace metrics relating the two, plus a seeded Monte Carlo harness that
//! certifies every algebraic axiom and metric inequality at floating-point
//! precision.
//!
//! Modules:
//!
//! - [`hermitian2`]: closed-form 2x2 Hermitian spectral kernel (matrix
//!   functions, congruence, Frobenius norm).
//! - [`gyrovector`]: Einstein addition, Thomas gyrations, Lorentz boosts,
//!   scalar multiplication and rapidity on the (closed) ball.
//! - [`density`]: Bloch-vector/density-matrix correspondence, the state
//!   composition, square roots, inverses.
//! - [`metrics`]: gyrometric, rapidity metric, trace metric, the
//!   overlap/determinant upper bound, geodesics and path lengths.
//! - [`verify`]: deterministic property suites with machine-readable
//!   reports.
//!
//! Everything numeric is `f64`, pure, and `Copy` or cheap to clone; no
//! operation mutates shared state, so parallel callers need no locking.

pub mod density;
pub mod error;
pub mod gyrovector;
pub mod hermitian2;
pub mod metrics;
pub mod verify;

pub use density::{DensityMatrix, PauliVector, PAULI};
pub use error::{Error, Result};
pub use gyrovector::{BlochVector, Boost4, Rapidity, Rotation3};
pub use hermitian2::{Complex2x2, Hermitian2, MatFun, Spectrum2};
pub use metrics::PathSampler;
pub use verify::{SuiteReport, TrialConfig};
