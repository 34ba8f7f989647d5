//! Density matrices for Hermitian and non-Hermitian frames, the similarity
//! map between them, partial traces and spectral Von Neumann entropy.
//!
//! In the non-Hermitian frame a pure state `|psi>` normalized with respect
//! to the metric `rho` has density matrix `|psi><psi| rho`. It is
//! Hermitian with respect to the metric inner product,
//! `rho varrho_H = varrho_H^dagger rho`, and `eta varrho_H eta^-1` is an
//! ordinary Hermitian density matrix when `rho = eta^dagger eta`.

use alloc::vec::Vec;

#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{dot, eigenvalues, hermitian_eigen, CMatrix, Lu, C64};

/// Trace tolerance for density matrices.
pub const TRACE_TOLERANCE: f64 = 1e-10;
/// Largest anti-Hermitian residual that is symmetrized away before an
/// entropy evaluation.
pub const HERMITICITY_TOLERANCE: f64 = 1e-10;
/// Eigenvalues in `[-NEGATIVE_CLAMP, 0)` are treated as zero.
pub const NEGATIVE_CLAMP: f64 = 1e-10;
/// Largest 1-norm condition number accepted by [`similarity_map`].
pub const MAX_CONDITION: f64 = 1e12;

/// Unit-trace square matrix. Hermiticity is not required here, since
/// non-Hermitian-frame density matrices are only metric-Hermitian.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let tr = matrix.trace();
        let dev = (tr - C64::new(1.0, 0.0)).norm();
        if !(dev <= TRACE_TOLERANCE) {
            return Err(Error::NotADensityMatrix {
                reason: "trace differs from 1",
                value: dev,
            });
        }
        Ok(Self { matrix })
    }

    /// Projector `|psi><psi|` onto a unit vector.
    pub fn pure(state: &[C64]) -> Result<Self> {
        density_from_ensemble(&Ensemble::pure(state.to_vec()), None)
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Eigenvalues sorted by real part, from the general eigensolver.
    pub fn spectrum(&self) -> Vec<C64> {
        let mut ev = eigenvalues(&self.matrix);
        ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        ev
    }

    /// `max |rho M - M^dagger rho|`.
    pub fn metric_hermiticity_residual(&self, metric: &CMatrix) -> f64 {
        let lhs = metric.matmul(&self.matrix);
        let rhs = self.matrix.adjoint().matmul(metric);
        (&lhs - &rhs).max_abs()
    }
}

/// Weighted mix of pure states.
#[derive(Clone, Debug, PartialEq)]
pub struct Ensemble {
    weights: Vec<f64>,
    states: Vec<Vec<C64>>,
}

impl Ensemble {
    pub fn new(weights: Vec<f64>, states: Vec<Vec<C64>>) -> Result<Self> {
        if weights.len() != states.len() {
            return Err(Error::InvalidWeights {
                reason: "one weight per state required",
            });
        }
        if weights.is_empty() {
            return Err(Error::InvalidWeights { reason: "empty ensemble" });
        }
        if weights.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::InvalidWeights {
                reason: "weights must lie in [0, 1]",
            });
        }
        if (weights.iter().sum::<f64>() - 1.0).abs() > TRACE_TOLERANCE {
            return Err(Error::InvalidWeights {
                reason: "weights must sum to 1",
            });
        }
        let dim = states[0].len();
        if let Some(bad) = states.iter().find(|s| s.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(Self { weights, states })
    }

    pub fn pure(state: Vec<C64>) -> Self {
        Self {
            weights: alloc::vec![1.0],
            states: alloc::vec![state],
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn states(&self) -> &[Vec<C64>] {
        &self.states
    }

    pub fn dim(&self) -> usize {
        self.states[0].len()
    }
}

/// `sum_i p_i |psi_i><psi_i|`, right-multiplied by the metric when given.
/// Every state must have unit norm in the relevant inner product.
pub fn density_from_ensemble(ensemble: &Ensemble, metric: Option<&CMatrix>) -> Result<DensityMatrix> {
    let dim = ensemble.dim();
    if let Some(m) = metric {
        if m.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: m.dim(),
            });
        }
    }
    let mut acc = CMatrix::zeros(dim);
    for (index, (p, psi)) in ensemble.weights.iter().zip(&ensemble.states).enumerate() {
        let norm_sq = match metric {
            Some(m) => dot(psi, &m.mul_vec(psi)).re,
            None => dot(psi, psi).re,
        };
        if !((norm_sq - 1.0).abs() <= TRACE_TOLERANCE) {
            return Err(Error::NonNormalizedState { index, norm_sq });
        }
        acc = &acc + &CMatrix::outer(psi, psi).scale_re(*p);
    }
    if let Some(m) = metric {
        acc = acc.matmul(m);
    }
    DensityMatrix::new(acc)
}

/// 1-norm condition number, infinite for a numerically singular matrix.
pub fn condition_number(m: &CMatrix) -> f64 {
    match Lu::new(m) {
        Some(lu) => m.norm_1() * lu.inverse().norm_1(),
        None => f64::INFINITY,
    }
}

/// `eta rho eta^-1`.
pub fn similarity_map(rho: &DensityMatrix, eta: &CMatrix) -> Result<DensityMatrix> {
    if eta.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: eta.dim(),
        });
    }
    let lu = Lu::new(eta).ok_or(Error::SingularEta {
        condition: f64::INFINITY,
    })?;
    let inv = lu.inverse();
    let condition = eta.norm_1() * inv.norm_1();
    if !(condition <= MAX_CONDITION) {
        return Err(Error::SingularEta { condition });
    }
    DensityMatrix::new(eta.matmul(rho.matrix()).matmul(&inv))
}

/// Occupation labels of a basis, one vector per basis index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeLayout {
    modes: usize,
    labels: Vec<Vec<u8>>,
}

impl ModeLayout {
    pub fn new(labels: Vec<Vec<u8>>) -> Result<Self> {
        let modes = labels.first().map_or(0, Vec::len);
        if labels.iter().any(|l| l.len() != modes) {
            return Err(Error::LabelMismatch {
                reason: "occupation vectors have different lengths",
            });
        }
        let mut sorted: Vec<&Vec<u8>> = labels.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::LabelMismatch {
                reason: "duplicate occupation vector",
            });
        }
        Ok(Self { modes, labels })
    }

    /// Full tensor product of modes with local dimensions `dims`, first mode
    /// most significant.
    pub fn tensor(dims: &[usize]) -> Self {
        let total: usize = dims.iter().product();
        let mut labels = Vec::with_capacity(total);
        for mut idx in 0..total {
            let mut occ = alloc::vec![0u8; dims.len()];
            for (slot, &d) in occ.iter_mut().zip(dims).rev() {
                *slot = (idx % d) as u8;
                idx /= d;
            }
            labels.push(occ);
        }
        Self {
            modes: dims.len(),
            labels,
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Vec<u8>] {
        &self.labels
    }
}

/// Split of the mode list into a kept and a traced-out subsystem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteLabel {
    keep: Vec<usize>,
    trace_out: Vec<usize>,
}

impl BipartiteLabel {
    pub fn new(keep: Vec<usize>, trace_out: Vec<usize>, modes: usize) -> Result<Self> {
        let mut seen = alloc::vec![false; modes];
        for &m in keep.iter().chain(&trace_out) {
            if m >= modes {
                return Err(Error::LabelMismatch {
                    reason: "mode index out of range",
                });
            }
            if seen[m] {
                return Err(Error::LabelMismatch {
                    reason: "mode listed twice",
                });
            }
            seen[m] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::LabelMismatch {
                reason: "mode sets do not cover every mode",
            });
        }
        Ok(Self { keep, trace_out })
    }

    /// Keep mode `a` (index 0), trace out bath modes `1..=n_bath`.
    pub fn system_vs_bath(n_bath: usize) -> Self {
        Self {
            keep: alloc::vec![0],
            trace_out: (1..=n_bath).collect(),
        }
    }

    pub fn keep(&self) -> &[usize] {
        &self.keep
    }

    pub fn trace_out(&self) -> &[usize] {
        &self.trace_out
    }
}

/// Reduced density matrix together with the occupation labels of its basis
/// (kept modes only, lexicographic).
#[derive(Clone, Debug)]
pub struct ReducedState {
    pub rho: DensityMatrix,
    pub labels: Vec<Vec<u8>>,
}

/// Trace over the modes in `label.trace_out()`. Basis states of a truncated
/// space are treated as embedded in the full tensor product.
pub fn partial_trace(rho: &DensityMatrix, layout: &ModeLayout, label: &BipartiteLabel) -> Result<ReducedState> {
    if layout.len() != rho.dim() {
        return Err(Error::LabelMismatch {
            reason: "layout size differs from matrix dimension",
        });
    }
    if label.keep.len() + label.trace_out.len() != layout.modes() {
        return Err(Error::LabelMismatch {
            reason: "bipartition mode count differs from layout",
        });
    }
    let project = |occ: &Vec<u8>, idx: &[usize]| -> Vec<u8> { idx.iter().map(|&m| occ[m]).collect() };
    let kept: Vec<Vec<u8>> = layout.labels.iter().map(|o| project(o, &label.keep)).collect();
    let env: Vec<Vec<u8>> = layout.labels.iter().map(|o| project(o, &label.trace_out)).collect();

    let mut reduced_labels = kept.clone();
    reduced_labels.sort();
    reduced_labels.dedup();
    let slot: Vec<usize> = kept
        .iter()
        .map(|k| reduced_labels.binary_search(k).expect("label present"))
        .collect();

    let m = rho.matrix();
    let mut out = CMatrix::zeros(reduced_labels.len());
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            if env[i] == env[j] {
                out[(slot[i], slot[j])] += m[(i, j)];
            }
        }
    }
    Ok(ReducedState {
        rho: DensityMatrix::new(out)?,
        labels: reduced_labels,
    })
}

/// `-sum p ln p` with `0 ln 0 = 0`; negative entries count as zero.
pub fn entropy_of_spectrum(values: &[f64]) -> f64 {
    let s: f64 = values
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum();
    s.max(0.0)
}

/// Eigenvalues of a Hermitian density matrix after symmetrization, with
/// small negative values clamped to zero.
pub fn hermitian_spectrum(rho: &DensityMatrix) -> Result<Vec<f64>> {
    let m = rho.matrix();
    let residual = 0.5 * m.hermiticity_residual();
    if !(residual <= HERMITICITY_TOLERANCE) {
        return Err(Error::NotADensityMatrix {
            reason: "anti-Hermitian part too large",
            value: residual,
        });
    }
    let mut values = hermitian_eigen(m).values;
    if let Some(&min) = values.first() {
        if min < -NEGATIVE_CLAMP {
            return Err(Error::NotADensityMatrix {
                reason: "negative eigenvalue",
                value: min,
            });
        }
    }
    for v in &mut values {
        *v = v.max(0.0);
    }
    Ok(values)
}

/// `-tr(rho ln rho)` in nats for a Hermitian frame density matrix.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(entropy_of_spectrum(&hermitian_spectrum(rho)?))
}

/// Entropy from the general spectrum, for metric-Hermitian density matrices
/// whose eigenvalues are real but whose matrix is not Hermitian.
pub fn spectral_entropy(rho: &DensityMatrix) -> Result<f64> {
    let spectrum = rho.spectrum();
    let scale = spectrum.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut values = Vec::with_capacity(spectrum.len());
    for z in spectrum {
        if z.im.abs() > 1e-8 * scale {
            return Err(Error::NotADensityMatrix {
                reason: "complex eigenvalue",
                value: z.im,
            });
        }
        if z.re < -1e-8 * scale {
            return Err(Error::NotADensityMatrix {
                reason: "negative eigenvalue",
                value: z.re,
            });
        }
        values.push(z.re);
    }
    Ok(entropy_of_spectrum(&values))
}
