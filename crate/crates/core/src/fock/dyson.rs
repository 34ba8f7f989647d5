
use super::basis::FockBasis;
use super::operators::{build_generators, build_h_nonhermitian, hermitian_from, Coupling, FockOperator, Generators};
use crate::closed_form::MetricSolution;
use crate::error::Result;
use crate::linalg::{expm, hermitian_eigen, CMatrix, C64, I};
use crate::params::ModelParams;

/// `eta = exp(beta A_y) exp(alpha N_AQ)` with its inverse and time
/// derivative, all from closed-form factors.
#[derive(Clone, Debug)]
pub struct DysonMap {
    pub alpha: f64,
    pub beta: f64,
    pub alpha_dot: f64,
    pub beta_dot: f64,
    pub eta: CMatrix,
    pub eta_inv: CMatrix,
    pub eta_dot: CMatrix,
}

impl DysonMap {
    pub fn at(t: f64, gens: &Generators, solution: &MetricSolution) -> Self {
        let (alpha, beta) = solution.alpha_beta(t);
        let alpha_dot = solution.alpha_rhs(alpha, beta);
        let beta_dot = solution.beta_rhs(alpha, beta);
        let ey = expm(&gens.a_y.scale_re(beta));
        let ez = expm(&gens.n_aq.scale_re(alpha));
        let eta = ey.matmul(&ez);
        let eta_inv = expm(&gens.n_aq.scale_re(-alpha)).matmul(&expm(&gens.a_y.scale_re(-beta)));
        // product rule with constant generators
        let eta_dot = &gens.a_y.matmul(&eta).scale_re(beta_dot) + &ey.matmul(&gens.n_aq).matmul(&ez).scale_re(alpha_dot);
        Self {
            alpha,
            beta,
            alpha_dot,
            beta_dot,
            eta,
            eta_inv,
            eta_dot,
        }
    }

    /// `eta^dagger eta`.
    pub fn metric(&self) -> CMatrix {
        self.eta.adjoint().matmul(&self.eta)
    }

    /// `eta^-1 eta^-dagger`.
    pub fn metric_inverse(&self) -> CMatrix {
        self.eta_inv.matmul(&self.eta_inv.adjoint())
    }

    /// 1-norm condition number of `eta`.
    pub fn condition(&self) -> f64 {
        self.eta.norm_1() * self.eta_inv.norm_1()
    }

    /// Smallest and largest eigenvalue of the metric. The smallest one is
    /// taken as the reciprocal of the largest eigenvalue of the inverse
    /// metric, which keeps full relative accuracy when `eta` is badly
    /// conditioned.
    pub fn metric_extremes(&self) -> (f64, f64) {
        let top = |m: &CMatrix| hermitian_eigen(m).values.last().copied().unwrap_or(0.0);
        (1.0 / top(&self.metric_inverse()), top(&self.metric()))
    }

    /// `eta H eta^-1 + i eta_dot eta^-1`.
    pub fn transformed(&self, h_nonhermitian: &CMatrix) -> CMatrix {
        let conj = self.eta.matmul(h_nonhermitian).matmul(&self.eta_inv);
        &conj + &self.eta_dot.matmul(&self.eta_inv).scale(I)
    }
}

pub fn build_eta(t: f64, basis: &FockBasis, params: &ModelParams) -> Result<FockOperator> {
    let solution = MetricSolution::new(*params)?;
    let map = DysonMap::at(t, &build_generators(basis), &solution);
    Ok(FockOperator::new(basis, map.eta))
}

pub fn build_metric(t: f64, basis: &FockBasis, params: &ModelParams) -> Result<FockOperator> {
    let solution = MetricSolution::new(*params)?;
    let map = DysonMap::at(t, &build_generators(basis), &solution);
    Ok(FockOperator::new(basis, map.metric()))
}

/// Residuals of the time-dependent Dyson equation at one instant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DysonResidual {
    pub t: f64,
    /// `max |h - (eta H eta^-1 + i eta_dot eta^-1)|` on the whole basis.
    pub residual: f64,
    /// Same, restricted to the `[|1_a 0_q>, symmetric bath]` sector.
    pub sector_residual: f64,
    /// `max |anti-Hermitian part of eta H eta^-1 + i eta_dot eta^-1|`.
    pub anti_hermitian: f64,
    pub sector_anti_hermitian: f64,
    /// 1-norm condition number of `eta`.
    pub condition: f64,
}

/// Constant pieces reused across sample times.
#[derive(Clone, Debug)]
pub struct DysonSetup {
    pub basis: FockBasis,
    pub params: ModelParams,
    pub solution: MetricSolution,
    pub generators: Generators,
    pub h: CMatrix,
}

impl DysonSetup {
    pub fn new(basis: &FockBasis, params: &ModelParams) -> Result<Self> {
        let solution = MetricSolution::new(*params)?;
        Ok(Self {
            basis: basis.clone(),
            params: *params,
            solution,
            generators: build_generators(basis),
            h: build_h_nonhermitian(basis, params).matrix,
        })
    }

    pub fn map(&self, t: f64) -> DysonMap {
        DysonMap::at(t, &self.generators, &self.solution)
    }

    pub fn residual(&self, t: f64, coupling: Coupling) -> DysonResidual {
        let map = self.map(t);
        let rhs = map.transformed(&self.h);
        let mu = coupling.evaluate(&self.solution, t);
        let h = hermitian_from(&self.generators, self.params.nu, mu);
        let diff = &h - &rhs;
        let anti = rhs.anti_hermitian_part();
        let sector = self.basis.sector();
        DysonResidual {
            t,
            residual: diff.max_abs(),
            sector_residual: diff.compress(&sector).max_abs(),
            anti_hermitian: anti.max_abs(),
            sector_anti_hermitian: anti.compress(&sector).max_abs(),
            condition: map.condition(),
        }
    }
}

pub fn dyson_residual(t: f64, basis: &FockBasis, params: &ModelParams, coupling: Coupling) -> Result<DysonResidual> {
    Ok(DysonSetup::new(basis, params)?.residual(t, coupling))
}

/// `max |(mu_true - mu) A_x|` expected when `mu` replaces the true coupling.
pub fn coupling_gap(setup: &DysonSetup, t: f64, coupling: Coupling) -> f64 {
    let gap = setup.solution.mu(t) - coupling.evaluate(&setup.solution, t);
    setup.generators.a_x.scale(C64::new(gap, 0.0)).max_abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigenvalues;

    #[test]
    fn eta_is_identity_when_alpha_and_beta_vanish() {
        // g = 1, kappa = c1 gives tanh 2alpha(0) = 0
        let b = FockBasis::new(2, 1).unwrap();
        let p = ModelParams::new(1.0, 1.0, 0.5, 2, 0.5, 0.0, 0.3).unwrap();
        let (a, bt) = MetricSolution::new(p).unwrap().alpha_beta(0.0);
        assert!(a.abs() < 1e-15 && bt == 0.0);
        let eta = build_eta(0.0, &b, &p).unwrap().matrix;
        assert!((&eta - &CMatrix::identity(b.dim())).max_abs() < 1e-14);
    }

    #[test]
    fn eta_at_origin_is_diagonal_in_sector() {
        let b = FockBasis::new(2, 1).unwrap();
        let p = ModelParams::unbroken_example(2);
        let eta = build_eta(0.0, &b, &p).unwrap().sector_block();
        let alpha = MetricSolution::new(p).unwrap().alpha(0.0);
        assert!(eta[(0, 1)].norm() < 1e-14 && eta[(1, 0)].norm() < 1e-14);
        assert!((eta[(0, 0)].re - alpha.exp()).abs() < 1e-13);
        assert!((eta[(1, 1)].re - (-alpha).exp()).abs() < 1e-13);
    }

    #[test]
    fn metric_positive_definite() {
        let b = FockBasis::new(2, 2).unwrap();
        for p in [
            ModelParams::unbroken_example(2),
            ModelParams::exceptional_example(2),
            ModelParams::broken_example(2),
        ] {
            let setup = DysonSetup::new(&b, &p).unwrap();
            for t in [0.0, 1.0, 4.0, 10.0] {
                let (lo, hi) = setup.map(t).metric_extremes();
                assert!(lo > 0.0 && hi >= lo, "{p:?} t={t}: {lo} {hi}");
            }
        }
        let rho = build_metric(1.0, &b, &ModelParams::unbroken_example(2)).unwrap();
        assert!(eigenvalues(&rho.matrix).iter().all(|z| z.re > 0.0));
    }

    #[test]
    fn residuals_vanish_for_true_coupling() {
        for (p, t) in [
            (ModelParams::unbroken_example(1), 0.5),
            (ModelParams::broken_example(3), 2.0),
            (ModelParams::exceptional_example(2), 3.0),
        ] {
            for cap in [1, 2] {
                let b = FockBasis::new(p.n_bath, cap).unwrap();
                let r = dyson_residual(t, &b, &p, Coupling::True).unwrap();
                assert!(r.residual < 1e-8, "{p:?} cap {cap}: {r:?}");
                assert!(r.anti_hermitian < 1e-8, "{r:?}");
            }
        }
    }

    #[test]
    fn printed_coupling_leaves_the_gap() {
        let b = FockBasis::new(1, 1).unwrap();
        let p = ModelParams::unbroken_example(1);
        let setup = DysonSetup::new(&b, &p).unwrap();
        let r = setup.residual(0.5, Coupling::Printed);
        let gap = coupling_gap(&setup, 0.5, Coupling::Printed);
        assert!(gap > 0.1);
        assert!((r.residual - gap).abs() < 1e-8);
        assert!(r.anti_hermitian < 1e-8);
    }
}
