//! Brute-force oracle on truncated Fock spaces.
//!
//! Every operator is a dense matrix assembled from ladder-operator actions on
//! occupation vectors `(n_a, n_q1, ..., n_qN)` with total excitation capped at
//! 1 or 2. All model operators conserve the total excitation number, so the
//! truncated spaces are invariant and every identity checked here is exact
//! up to rounding.

pub mod algebra;
pub mod basis;
pub mod discrepancy;
pub mod dyson;
pub mod ode;
pub mod operators;
pub mod propagate;
pub mod pt;
pub mod report;

pub use algebra::commutator_table_check;
pub use basis::FockBasis;
pub use discrepancy::{discrepancy_report, DiscrepancyReport, Finding};
pub use dyson::{build_eta, build_metric, dyson_residual, DysonMap, DysonResidual, DysonSetup};
pub use ode::{integrate_alpha_beta, richardson_ratio, OdeOptions, Trajectory};
pub use operators::{build_generators, build_h, build_h_nonhermitian, build_h_with, Coupling, FockOperator, Generators};
pub use propagate::{propagate_state, GeneratorChoice, Propagation, PropagationPoint};
pub use pt::pt_check;
pub use report::CheckReport;

use crate::linalg::{eigenvalues, C64};
use crate::params::ModelParams;

/// Eigenvalues of the single-excitation block of `H`, sorted by real then
/// imaginary part.
pub fn sector_spectrum(basis: &FockBasis, params: &ModelParams) -> [C64; 2] {
    let block = build_h_nonhermitian(basis, params).sector_block();
    let mut ev = eigenvalues(&block);
    ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    [ev[0], ev[1]]
}
