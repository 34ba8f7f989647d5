//! Closed-form metric solution and entropy evolution.
//!
//! The Dyson map is `eta(t) = exp(beta A_y) exp(alpha N_AQ)`. With
//! `Delta = g^2 - kappa^2`, `T = t + c2` and `x = 2 sqrt(N) T` everything
//! is expressed through the two entire functions
//!
//! ```text
//! S(x) = sin(sqrt(Delta) x) / sqrt(Delta)      C(x) = cos(sqrt(Delta) x)
//! ```
//!
//! which continue to `sinh`/`cosh` for `Delta < 0` and to `x`/`1` at the
//! exceptional point, so all three regimes share one real-valued code path:
//!
//! ```text
//! sigma = sinh(2 beta)       = c1 S(x)
//! cosh(2 beta)               = sqrt(1 + sigma^2)
//! tanh(2 alpha)              = (-g kappa cosh^2 2beta + c1 C r) / (g^2 cosh^2 2beta + c1^2 C^2)
//! mu(t)                      = sqrt(N) r / cosh^2(2 beta)
//! mu_I(t)                    = atan2(r S(x), C(x)) / 2        (unwrapped)
//! ```
//!
//! with `r = sqrt(c1^2 + Delta)`.

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

use crate::entropy::entropy_of_spectrum;
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::params::{ModelParams, Regime, RegimeKind, SERIES_BAND};
use crate::roots;

/// Reduced-state eigenvalues and entropy (nats) at one instant.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EntropyPoint {
    pub t: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub entropy: f64,
}

/// Long-time entropy floor of the broken regime.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Asymptote {
    pub entropy: f64,
    pub xi: f64,
}

/// Time-dependent metric solution for one parameter set.
#[derive(Clone, Copy, Debug)]
pub struct MetricSolution {
    params: ModelParams,
    regime: Regime,
    delta: f64,
    /// `sqrt(c1^2 + Delta)`
    r: f64,
    series: bool,
}

impl MetricSolution {
    pub fn new(params: ModelParams) -> Result<Self> {
        params.validate()?;
        params.check_reality()?;
        let delta = params.discriminant();
        let scale = params.g * params.g + params.kappa * params.kappa;
        Ok(Self {
            params,
            regime: params.regime(),
            delta,
            r: (params.c1 * params.c1 + delta).sqrt(),
            series: delta.abs() < SERIES_BAND * scale,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    #[inline]
    fn arg(&self, t: f64) -> f64 {
        2.0 * self.params.sqrt_n() * (t + self.params.c2)
    }

    fn use_series(&self, x: f64) -> bool {
        self.series && self.delta.abs() * x * x <= 1.0
    }

    /// `sin(sqrt(Delta) x) / sqrt(Delta)` continued to all `Delta`.
    fn sin_like(&self, x: f64) -> f64 {
        let d = self.delta;
        if self.use_series(x) {
            let z = -d * x * x;
            let mut term = x;
            let mut sum = x;
            for k in 0..40 {
                term *= z / ((2 * k + 2) * (2 * k + 3)) as f64;
                sum += term;
                if term.abs() <= 1e-17 * sum.abs() {
                    break;
                }
            }
            sum
        } else if d > 0.0 {
            let s = d.sqrt();
            (s * x).sin() / s
        } else if d < 0.0 {
            let s = (-d).sqrt();
            (s * x).sinh() / s
        } else {
            x
        }
    }

    /// `cos(sqrt(Delta) x)` continued to all `Delta`.
    fn cos_like(&self, x: f64) -> f64 {
        let d = self.delta;
        if self.use_series(x) {
            let z = -d * x * x;
            let mut term = 1.0;
            let mut sum = 1.0;
            for k in 0..40 {
                term *= z / ((2 * k + 1) * (2 * k + 2)) as f64;
                sum += term;
                if term.abs() <= 1e-17 * sum.abs() {
                    break;
                }
            }
            sum
        } else if d > 0.0 {
            (d.sqrt() * x).cos()
        } else if d < 0.0 {
            ((-d).sqrt() * x).cosh()
        } else {
            1.0
        }
    }

    /// `sigma(t) = sinh(2 beta(t))`.
    pub fn sigma(&self, t: f64) -> f64 {
        self.params.c1 * self.sin_like(self.arg(t))
    }

    pub fn sigma_dot(&self, t: f64) -> f64 {
        2.0 * self.params.sqrt_n() * self.params.c1 * self.cos_like(self.arg(t))
    }

    pub fn beta(&self, t: f64) -> f64 {
        0.5 * self.sigma(t).asinh()
    }

    /// `alpha(t)` from the root of the beta-dot equation. Written as
    /// `alpha = ln((1 + tanh 2alpha) / (1 - tanh 2alpha)) / 4` with both
    /// factors expanded, so it stays accurate when `tanh 2alpha -> -1`.
    pub fn alpha(&self, t: f64) -> f64 {
        let ModelParams { g, kappa, c1, .. } = self.params;
        let x = self.arg(t);
        let sigma = c1 * self.sin_like(x);
        let ch2 = 1.0 + sigma * sigma;
        let cc = c1 * self.cos_like(x);
        let plus = g * (g - kappa) * ch2 + cc * (cc + self.r);
        let minus = g * (g + kappa) * ch2 + cc * (cc - self.r);
        0.25 * (plus / minus).ln()
    }

    pub fn alpha_beta(&self, t: f64) -> (f64, f64) {
        (self.alpha(t), self.beta(t))
    }

    /// `tanh(2 alpha)` as printed: `(-N g kappa + b sqrt(b^2 + N Delta)) / (N g^2 + b^2)`
    /// with `b = beta-dot`, evaluated through the identity
    /// `b^2 + N Delta = N (c1^2 + Delta) / cosh^2(2 beta)`.
    pub fn tanh_two_alpha(&self, t: f64) -> f64 {
        let ModelParams { g, kappa, .. } = self.params;
        let n = self.params.n_bath as f64;
        let ch = (1.0 + self.sigma(t).powi(2)).sqrt();
        let bdot = self.sigma_dot(t) / (2.0 * ch);
        let root = self.params.sqrt_n() * self.r / ch;
        (-n * g * kappa + bdot * root) / (n * g * g + bdot * bdot)
    }

    /// Right-hand side of the alpha equation at a state `(alpha, beta)`.
    pub fn alpha_rhs(&self, alpha: f64, beta: f64) -> f64 {
        -(2.0 * beta).tanh() * self.coupling_even(alpha)
    }

    /// Right-hand side of the beta equation at a state `(alpha, beta)`.
    pub fn beta_rhs(&self, alpha: f64, _beta: f64) -> f64 {
        let ModelParams { g, kappa, .. } = self.params;
        let e = (2.0 * alpha).exp();
        0.5 * self.params.sqrt_n() * ((g + kappa) * e - (g - kappa) / e)
    }

    /// `sqrt(N) (g cosh 2alpha + kappa sinh 2alpha)`, cancellation-free.
    fn coupling_even(&self, alpha: f64) -> f64 {
        let ModelParams { g, kappa, .. } = self.params;
        let e = (2.0 * alpha).exp();
        0.5 * self.params.sqrt_n() * ((g + kappa) * e + (g - kappa) / e)
    }

    pub fn alpha_dot(&self, t: f64) -> f64 {
        let (a, b) = self.alpha_beta(t);
        self.alpha_rhs(a, b)
    }

    pub fn beta_dot(&self, t: f64) -> f64 {
        let (a, b) = self.alpha_beta(t);
        self.beta_rhs(a, b)
    }

    /// Coupling of `A_x` produced by the Dyson construction,
    /// `sqrt(N) (g cosh 2alpha + kappa sinh 2alpha) / cosh 2beta`.
    pub fn mu(&self, t: f64) -> f64 {
        let (a, b) = self.alpha_beta(t);
        self.coupling_even(a) / (2.0 * b).cosh()
    }

    /// Closed form `sqrt(N) r / cosh^2(2 beta)`, the derivative of
    /// [`mu_integral`](Self::mu_integral).
    pub fn mu_closed(&self, t: f64) -> f64 {
        let sigma = self.sigma(t);
        self.params.sqrt_n() * self.r / (1.0 + sigma * sigma)
    }

    /// The standalone coupling expression
    /// `Delta sqrt(N) r / (c1^2 + 2 Delta - c1^2 cos(4 sqrt(N) sqrt(Delta) T))`.
    /// Equal to half of [`mu`](Self::mu).
    pub fn mu_printed(&self, t: f64) -> f64 {
        let x = self.arg(t);
        let c1 = self.params.c1;
        let numer_scale = self.params.sqrt_n() * self.r;
        if self.series || self.delta == 0.0 {
            let sigma = c1 * self.sin_like(x);
            numer_scale / (2.0 * (1.0 + sigma * sigma))
        } else {
            let d = self.delta;
            d * numer_scale / (c1 * c1 + 2.0 * d - c1 * c1 * self.cos_like(2.0 * x))
        }
    }

    /// Continuous antiderivative of `mu`, `mu_I(-c2) = 0`.
    pub fn mu_integral(&self, t: f64) -> f64 {
        let x = self.arg(t);
        let theta = if self.delta > 0.0 {
            let sd = self.delta.sqrt();
            let turns = (sd * x / PI).round();
            let xs = x - turns * PI / sd;
            (self.r * self.sin_like(xs)).atan2(self.cos_like(xs)) + turns * PI
        } else {
            (self.r * self.sin_like(x)).atan2(self.cos_like(x))
        };
        0.5 * theta
    }

    /// `lim_{t -> inf} mu_I(t)` when finite (exceptional and broken regimes).
    pub fn mu_integral_limit(&self) -> Option<f64> {
        match self.regime.kind {
            RegimeKind::Unbroken => None,
            RegimeKind::Exceptional => Some(FRAC_PI_4),
            RegimeKind::Broken => Some(0.5 * (self.r / (-self.delta).sqrt()).atan()),
        }
    }

    /// `(cos^2(mu_I - gamma), sin^2(mu_I - gamma))`.
    pub fn lambda_pair(&self, t: f64) -> (f64, f64) {
        lambdas_at(self.mu_integral(t), self.params.gamma)
    }

    pub fn entropy(&self, t: f64) -> EntropyPoint {
        let (lambda1, lambda2) = self.lambda_pair(t);
        EntropyPoint {
            t,
            lambda1,
            lambda2,
            entropy: entropy_of_spectrum(&[lambda1, lambda2]),
        }
    }

    /// `lim_{t -> inf} S(t)` for any `gamma`, when the limit exists.
    pub fn long_time_entropy(&self) -> Option<f64> {
        self.mu_integral_limit().map(|mu| {
            let (l1, l2) = lambdas_at(mu, self.params.gamma);
            entropy_of_spectrum(&[l1, l2])
        })
    }

    /// Smallest `t > 0` at which the entropy vanishes, i.e. where
    /// `mu_I(t) - gamma` hits a multiple of `pi/2`.
    pub fn sudden_death_time(&self) -> Option<f64> {
        let gamma = self.params.gamma;
        let mu0 = self.mu_integral(0.0);
        let steps = ((mu0 - gamma) / FRAC_PI_2).floor() + 1.0;
        let target = gamma + steps * FRAC_PI_2;
        if let Some(limit) = self.mu_integral_limit() {
            if target >= limit {
                return None;
            }
        }
        let f = |t: f64| self.mu_integral(t) - target;
        let scale = self.params.sqrt_n() * self.params.g.abs().max(self.params.kappa.abs());
        let hi = roots::bracket_upward(&f, 0.0, 0.25 / scale, 200)?;
        roots::bisect(&f, 0.0, hi)
    }
}

fn lambdas_at(mu_integral: f64, gamma: f64) -> (f64, f64) {
    let phase = mu_integral - gamma;
    let c = phase.cos();
    let s = phase.sin();
    (c * c, s * s)
}

/// `E^(+-)_{m,N} = m (nu +- sqrt(N) sqrt(g^2 - kappa^2))`, as `(E+, E-)`.
pub fn energy_spectrum(params: &ModelParams, m: u32) -> (C64, C64) {
    let split = C64::new(params.discriminant(), 0.0).sqrt() * params.sqrt_n();
    let m = m as f64;
    let nu = C64::new(params.nu, 0.0);
    ((nu + split) * m, (nu - split) * m)
}

/// Entropy floor `S_inf` of the broken regime for the maximally entangled
/// start, with `xi = sqrt(c1^2 + g^2 - kappa^2) / c1`.
pub fn asymptote(params: &ModelParams) -> Result<Asymptote> {
    params.validate()?;
    let regime = params.regime();
    if regime.kind != RegimeKind::Broken {
        return Err(Error::NotBrokenRegime {
            discriminant: regime.discriminant,
        });
    }
    params.check_reality()?;
    if (params.gamma - FRAC_PI_4).abs() > 1e-12 {
        return Err(Error::NonMaximalInitialState { gamma: params.gamma });
    }
    let xi = (params.c1 * params.c1 + regime.discriminant).sqrt() / params.c1;
    let entropy = entropy_of_spectrum(&[0.5 * (1.0 + xi), 0.5 * (1.0 - xi)]);
    Ok(Asymptote { entropy, xi })
}

pub fn classify_regime(params: &ModelParams) -> Regime {
    crate::params::classify_regime(params)
}

pub fn sigma(t: f64, params: &ModelParams) -> Result<f64> {
    Ok(MetricSolution::new(*params)?.sigma(t))
}

pub fn alpha_beta(t: f64, params: &ModelParams) -> Result<(f64, f64)> {
    Ok(MetricSolution::new(*params)?.alpha_beta(t))
}

pub fn mu(t: f64, params: &ModelParams) -> Result<f64> {
    Ok(MetricSolution::new(*params)?.mu(t))
}

pub fn mu_printed(t: f64, params: &ModelParams) -> Result<f64> {
    Ok(MetricSolution::new(*params)?.mu_printed(t))
}

pub fn mu_integral(t: f64, params: &ModelParams) -> Result<f64> {
    Ok(MetricSolution::new(*params)?.mu_integral(t))
}

pub fn lambda_pair(t: f64, params: &ModelParams) -> Result<(f64, f64)> {
    Ok(MetricSolution::new(*params)?.lambda_pair(t))
}

pub fn entropy(t: f64, params: &ModelParams) -> Result<EntropyPoint> {
    Ok(MetricSolution::new(*params)?.entropy(t))
}

pub fn sudden_death_time(params: &ModelParams) -> Result<Option<f64>> {
    Ok(MetricSolution::new(*params)?.sudden_death_time())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::LN_2;

    fn sol(p: ModelParams) -> MetricSolution {
        MetricSolution::new(p).unwrap()
    }

    #[test]
    fn sigma_vanishes_at_origin_in_every_regime() {
        for p in [
            ModelParams::unbroken_example(2),
            ModelParams::exceptional_example(2),
            ModelParams::broken_example(2),
        ] {
            assert_eq!(sol(p).sigma(0.0), 0.0);
            assert_eq!(sol(p).beta(0.0), 0.0);
        }
    }

    #[test]
    fn sigma_branch_values() {
        // sin(2 sqrt(0.4)) / sqrt(0.4) and sinh(2 sqrt(0.4)) / sqrt(0.4)
        let w = 0.4f64.sqrt();
        assert_abs_diff_eq!(sol(ModelParams::unbroken_example(1)).sigma(1.0), (2.0 * w).sin() / w, epsilon = 1e-15);
        assert_abs_diff_eq!(sol(ModelParams::unbroken_example(1)).sigma(1.0), 1.5077435364043035, epsilon = 1e-12);
        assert_abs_diff_eq!(sol(ModelParams::broken_example(1)).sigma(1.0), 2.5776620475654615, epsilon = 1e-12);
        assert_abs_diff_eq!(sol(ModelParams::exceptional_example(1)).sigma(1.5), 3.0, epsilon = 1e-15);
    }

    #[test]
    fn alpha_at_origin_for_pure_g_coupling() {
        // zeta(0) = sqrt(2) + 1, e^{2 alpha} = zeta
        let p = ModelParams::new(1.0, 1.0, 0.0, 1, 1.0, 0.0, FRAC_PI_4).unwrap();
        let (a, b) = sol(p).alpha_beta(0.0);
        assert_eq!(b, 0.0);
        assert_abs_diff_eq!(a, 0.5 * (2.0f64.sqrt() + 1.0).ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(a, 0.44068679350977147, epsilon = 1e-14);
    }

    #[test]
    fn alpha_matches_printed_tanh_and_zeta_forms() {
        let s = sol(ModelParams::unbroken_example(2).with_c1(1.3).with_c2(0.2));
        let p = *s.params();
        let d = p.discriminant();
        for k in 0..40 {
            let t = 0.137 * k as f64;
            let a = s.alpha(t);
            assert_abs_diff_eq!((2.0 * a).tanh(), s.tanh_two_alpha(t), epsilon = 1e-12);
            let x = 2.0 * p.sqrt_n() * d.sqrt() * (t + p.c2);
            let r = (p.c1 * p.c1 + d).sqrt();
            let zeta = 2.0f64.sqrt()
                * ((p.g - p.kappa) / (p.g + p.kappa)).sqrt()
                * (r + p.c1 * x.cos())
                / (p.c1 * p.c1 + 2.0 * d - p.c1 * p.c1 * (2.0 * x).cos()).sqrt();
            assert_abs_diff_eq!((2.0 * a).exp(), zeta, epsilon = 1e-11 * zeta.max(1.0));
        }
    }

    #[test]
    fn mu_at_origin() {
        let p = ModelParams::new(1.0, 1.0, 0.0, 1, 1.0, 0.0, FRAC_PI_4).unwrap();
        assert_abs_diff_eq!(sol(p).mu(0.0), 2.0f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(sol(p).mu_printed(0.0), 2.0f64.sqrt() / 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(sol(ModelParams::unbroken_example(1)).mu(0.0), 1.4f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn exceptional_mu_decays() {
        let s = sol(ModelParams::exceptional_example(1));
        for t in [1.0, 10.0, 100.0] {
            let expect = 1.0 / (1.0 + 4.0 * t * t);
            assert_abs_diff_eq!(s.mu(t), expect, epsilon = 1e-12);
        }
        assert!(s.mu(1e6) < 1e-12);
    }

    #[test]
    fn mu_integral_branches() {
        assert_eq!(sol(ModelParams::unbroken_example(1)).mu_integral(0.0), 0.0);
        let ex = sol(ModelParams::exceptional_example(1));
        assert_abs_diff_eq!(ex.mu_integral(1.0), 0.5 * 2.0f64.atan(), epsilon = 1e-15);
        assert_abs_diff_eq!(ex.mu_integral(1.0), 0.5535743588970452, epsilon = 1e-13);
        let br = sol(ModelParams::broken_example(3));
        let limit = 0.5 * (0.6f64.sqrt() / 0.4f64.sqrt()).atan();
        assert_abs_diff_eq!(br.mu_integral(60.0), limit, epsilon = 1e-12);
        assert_abs_diff_eq!(br.mu_integral_limit().unwrap(), 0.44303856189630686, epsilon = 1e-14);
    }

    #[test]
    fn mu_integral_is_continuous_across_tangent_poles() {
        let s = sol(ModelParams::unbroken_example(1));
        let quarter = FRAC_PI_4 / 0.4f64.sqrt();
        for k in 1..8 {
            let t = (2 * k - 1) as f64 * quarter;
            let lo = s.mu_integral(t - 1e-9);
            let hi = s.mu_integral(t + 1e-9);
            assert!((hi - lo).abs() < 1e-8, "jump at {t}: {lo} -> {hi}");
            assert_abs_diff_eq!(s.mu_integral(t), (2 * k - 1) as f64 * FRAC_PI_4, epsilon = 1e-12);
        }
    }

    #[test]
    fn lambda_pair_examples() {
        let (l1, l2) = sol(ModelParams::unbroken_example(1)).lambda_pair(0.0);
        assert_abs_diff_eq!(l1, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(l2, 0.5, epsilon = 1e-15);
        let br = sol(ModelParams::broken_example(1));
        let (l1, l2) = br.lambda_pair(80.0);
        let xi = 0.6f64.sqrt();
        assert_abs_diff_eq!(l1, 0.5 * (1.0 + xi), epsilon = 1e-12);
        assert_abs_diff_eq!(l2, 0.5 * (1.0 - xi), epsilon = 1e-12);
        assert_abs_diff_eq!(l1, 0.8872983346207417, epsilon = 1e-12);
    }

    #[test]
    fn entropy_starts_maximal_and_hits_zero_at_death_time() {
        let s = sol(ModelParams::unbroken_example(1));
        assert_abs_diff_eq!(s.entropy(0.0).entropy, LN_2, epsilon = 1e-15);
        let t = s.sudden_death_time().unwrap();
        let at = s.entropy(t);
        assert!(at.entropy < 1e-12, "{at:?}");
        assert_abs_diff_eq!(at.lambda1, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn sudden_death_time_values() {
        let one = sol(ModelParams::unbroken_example(1)).sudden_death_time().unwrap();
        assert_abs_diff_eq!(one, PI / (4.0 * 0.4f64.sqrt()), epsilon = 1e-12);
        assert_abs_diff_eq!(one, 1.2418235332245127, epsilon = 1e-12);
        let two = sol(ModelParams::unbroken_example(2)).sudden_death_time().unwrap();
        assert_abs_diff_eq!(two, 0.8781018413800908, epsilon = 1e-12);
        let four = sol(ModelParams::unbroken_example(4)).sudden_death_time().unwrap();
        assert_abs_diff_eq!(four, one / 2.0, epsilon = 1e-12);
        assert_eq!(sol(ModelParams::broken_example(1)).sudden_death_time(), None);
        assert_eq!(sol(ModelParams::exceptional_example(1)).sudden_death_time(), None);
    }

    #[test]
    fn sudden_death_respects_offsets_and_small_gamma() {
        // a gamma below the broken-regime limit is reached in finite time
        let s = sol(ModelParams::broken_example(1).with_gamma(0.3));
        let t = s.sudden_death_time().unwrap();
        assert_abs_diff_eq!(s.mu_integral(t), 0.3, epsilon = 1e-14);
        // with c2 != 0 the first zero is still strictly in the future
        let s = sol(ModelParams::unbroken_example(1).with_c2(0.5));
        let t = s.sudden_death_time().unwrap();
        assert!(t > 0.0);
        assert!(s.entropy(t).entropy < 1e-12);
    }

    #[test]
    fn asymptote_reproduces_floor() {
        let a = asymptote(&ModelParams::broken_example(1)).unwrap();
        assert_abs_diff_eq!(a.xi, 0.6f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(a.entropy, 0.3521268061190673, epsilon = 1e-13);
        assert!((a.entropy - 0.3521).abs() < 5e-4);
        let big = asymptote(&ModelParams::broken_example(1).with_c1(1e4)).unwrap();
        assert!(big.entropy < 1e-7);
    }

    #[test]
    fn asymptote_errors() {
        assert!(matches!(
            asymptote(&ModelParams::unbroken_example(1)),
            Err(Error::NotBrokenRegime { .. })
        ));
        assert!(matches!(
            asymptote(&ModelParams::exceptional_example(1)),
            Err(Error::NotBrokenRegime { .. })
        ));
        assert!(matches!(
            asymptote(&ModelParams::broken_example(1).with_c1(0.6)),
            Err(Error::RealityConditionViolated { .. })
        ));
        assert!(matches!(
            asymptote(&ModelParams::broken_example(1).with_gamma(0.2)),
            Err(Error::NonMaximalInitialState { .. })
        ));
    }

    #[test]
    fn spectrum_values() {
        let p = ModelParams::new(1.0, 0.5, 0.3, 1, 1.0, 0.0, FRAC_PI_4).unwrap();
        let (ep, em) = energy_spectrum(&p, 1);
        assert_abs_diff_eq!(ep.re, 1.4, epsilon = 1e-15);
        assert_abs_diff_eq!(em.re, 0.6, epsilon = 1e-15);
        assert_eq!(ep.im, 0.0);
        assert_eq!(energy_spectrum(&p, 0), (C64::new(0.0, 0.0), C64::new(0.0, 0.0)));
        let q = ModelParams::new(2.0, 0.3, 0.7, 1, 1.0, 0.0, FRAC_PI_4).unwrap();
        let (ep, em) = energy_spectrum(&q, 1);
        assert_abs_diff_eq!(ep.re, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ep.im, 0.4f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(em.im, -0.4f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(ep.im, 0.6324555320336759, epsilon = 1e-15);
    }

    #[test]
    fn series_band_is_continuous_with_direct_formulas() {
        // just inside and just outside the near-exceptional band
        let base = ModelParams::exceptional_example(2);
        let inside = sol(ModelParams {
            kappa: 0.5 + 1e-8,
            ..base
        });
        let outside = sol(ModelParams {
            kappa: 0.5 + 1e-6,
            ..base
        });
        let exact = sol(base);
        for t in [0.3, 2.0, 9.0] {
            assert_abs_diff_eq!(inside.mu_integral(t), exact.mu_integral(t), epsilon = 1e-6);
            assert_abs_diff_eq!(outside.mu_integral(t), exact.mu_integral(t), epsilon = 1e-4);
            assert_abs_diff_eq!(inside.mu(t), inside.mu_closed(t), epsilon = 1e-12);
            assert_abs_diff_eq!(inside.mu_printed(t) * 2.0, inside.mu(t), epsilon = 1e-12);
        }
    }
}
