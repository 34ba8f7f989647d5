//! Entanglement entropy of a PT-symmetric bosonic system coupled to a bath.
//!
//! The crate has two independent routes to the same physics:
//!
//! - [`closed_form`] evaluates the analytic Dyson-map solution (metric
//!   parameters, effective Hermitian coupling, reduced-state eigenvalues and
//!   Von Neumann entropy) with real-valued branches in the unbroken regime,
//!   at the exceptional point and in the broken regime.
//! - [`fock`] builds every operator as a dense matrix on a truncated Fock
//!   basis and checks the algebra, the PT symmetry, the coupled ODEs, the
//!   time-dependent Dyson equation and the state propagation numerically.
//!
//! [`entropy`] holds the general density-matrix machinery shared by both:
//! metric-weighted density matrices, the similarity map to the Hermitian
//! frame, partial traces and spectral entropy.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// tolerance checks are written so that NaN fails them
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod closed_form;
pub mod entropy;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod params;
pub mod roots;

pub use closed_form::{Asymptote, EntropyPoint, MetricSolution};
pub use entropy::{BipartiteLabel, DensityMatrix, Ensemble, ModeLayout};
pub use error::{Error, Result};
pub use fock::{CheckReport, FockBasis, FockOperator};
pub use linalg::{CMatrix, C64};
pub use params::{ModelParams, Regime, RegimeKind};
