//! Geometric associative r-matrices on Weierstrass cubic curves.
//!
//! The crate builds the tensor-valued solutions of the associative
//! Yang–Baxter equation (AYBE) that arise from stable vector bundles on the
//! three kinds of Weierstrass cubic (elliptic, nodal, cuspidal) and checks
//! the identities they are expected to satisfy: AYBE and its dual form,
//! unitarity, the classical and quantum Yang–Baxter equations, gauge
//! equivalence, degenerations and commutativity of Dunkl operators.
//!
//! Module overview:
//!
//! * [`tensorcore`]: dense tensors in `Mat_n ⊗ Mat_n` and `Mat_n^{⊗3}`.
//! * [`thetafn`]: Jacobi theta functions and `sn`, `cn`, `dn`.
//! * [`curves`]: Weierstrass data, discriminant classification, Eisenstein sums.
//! * [`bundles`]: automorphy factors and matrix triples with canonical forms.
//! * [`rmatrix`]: construction engines `ev ∘ res⁻¹` for each curve type.
//! * [`catalog`]: closed-form solutions used as oracles.
//! * [`verify`]: residual evaluators and limit extractors.
//! * [`cli`]: command-line front end.

pub mod bundles;
pub mod catalog;
pub mod cli;
pub mod curves;
pub mod error;
pub mod linalg;
pub mod rmatrix;
pub mod tensorcore;
pub mod thetafn;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
