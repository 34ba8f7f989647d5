#![allow(dead_code)]

use proptest::prelude::*;
use ptent_core::linalg::{hermitian_eigen, re};
use ptent_core::{CMatrix, ModelParams, C64};

pub fn cmatrix(dim: usize, entries: &[f64]) -> CMatrix {
    CMatrix::from_fn(dim, |i, j| {
        let k = 2 * (i * dim + j);
        C64::new(entries[k], entries[k + 1])
    })
}

/// Random complex matrix with entries in [-1, 1].
pub fn any_matrix(dim: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec(-1.0f64..1.0, 2 * dim * dim).prop_map(move |v| cmatrix(dim, &v))
}

/// `A A^dagger / tr`, a full-rank density matrix almost surely.
pub fn density(a: &CMatrix) -> CMatrix {
    let m = a.matmul(&a.adjoint());
    let tr = m.trace().re;
    m.scale_re(1.0 / tr)
}

/// `1 + 0.4 A`, invertible and well conditioned for `|A_ij| <= 1/dim`.
pub fn near_identity(a: &CMatrix) -> CMatrix {
    let d = a.dim();
    &CMatrix::identity(d) + &a.scale(re(0.4 / d as f64))
}

pub fn sorted_hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    hermitian_eigen(m).values
}

/// Parameter sets with `g + kappa > 0` that satisfy the reality condition.
pub fn any_params() -> impl Strategy<Value = ModelParams> {
    (0.05f64..1.5, 0.0f64..1.5, 1usize..=5, 0.2f64..2.0, 0.0f64..1.0, 0.0f64..1.6).prop_filter_map(
        "reality condition",
        |(g, kappa, n, c1, c2, gamma)| ModelParams::new(1.0, g, kappa, n, c1, c2, gamma).ok().filter(|p| p.check_reality().is_ok()),
    )
}
