//! Model parameters and the PT-regime classification.

use core::f64::consts::FRAC_PI_4;

#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

use crate::error::{Error, Result};

/// Physical couplings plus the integration constants of the metric solution.
///
/// `H = nu a^dag a + nu sum q_n^dag q_n + (g + kappa) a^dag sum q_n
///      + (g - kappa) a sum q_n^dag`
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModelParams {
    pub nu: f64,
    pub g: f64,
    pub kappa: f64,
    /// Number of bath oscillators `N`.
    pub n_bath: usize,
    /// Amplitude constant of the metric solution; canonicalized to `c1 > 0`.
    pub c1: f64,
    /// Time offset of the metric solution.
    pub c2: f64,
    /// Mixing angle of the initial state (radians).
    pub gamma: f64,
}

impl ModelParams {
    /// Validated constructor. The broken-regime reality condition is checked
    /// later, when a [`MetricSolution`](crate::MetricSolution) is built.
    pub fn new(nu: f64, g: f64, kappa: f64, n_bath: usize, c1: f64, c2: f64, gamma: f64) -> Result<Self> {
        let p = Self {
            nu,
            g,
            kappa,
            n_bath,
            c1,
            c2,
            gamma,
        };
        p.validate()?;
        Ok(p)
    }

    /// Unbroken-regime parameter set (`g = 0.7, kappa = 0.3, c1 = 1`).
    pub fn unbroken_example(n_bath: usize) -> Self {
        Self::preset(0.7, 0.3, n_bath)
    }

    /// Exceptional point `g = kappa = 0.5`, `c1 = 1`.
    pub fn exceptional_example(n_bath: usize) -> Self {
        Self::preset(0.5, 0.5, n_bath)
    }

    /// Broken-regime parameter set (`g = 0.3, kappa = 0.7, c1 = 1`).
    pub fn broken_example(n_bath: usize) -> Self {
        Self::preset(0.3, 0.7, n_bath)
    }

    fn preset(g: f64, kappa: f64, n_bath: usize) -> Self {
        Self {
            nu: 1.0,
            g,
            kappa,
            n_bath,
            c1: 1.0,
            c2: 0.0,
            gamma: FRAC_PI_4,
        }
    }

    pub fn with_bath(mut self, n_bath: usize) -> Self {
        self.n_bath = n_bath;
        self
    }

    pub fn with_nu(mut self, nu: f64) -> Self {
        self.nu = nu;
        self
    }

    pub fn with_c1(mut self, c1: f64) -> Self {
        self.c1 = c1;
        self
    }

    pub fn with_c2(mut self, c2: f64) -> Self {
        self.c2 = c2;
        self
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.nu, self.g, self.kappa, self.c1, self.c2, self.gamma];
        if finite.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "params",
                reason: "all parameters must be finite",
            });
        }
        if self.n_bath == 0 {
            return Err(Error::InvalidParameter {
                name: "n_bath",
                reason: "bath size must be at least 1",
            });
        }
        if self.c1 == 0.0 {
            return Err(Error::InvalidParameter {
                name: "c1",
                reason: "c1 must be nonzero",
            });
        }
        if self.c1 < 0.0 {
            return Err(Error::InvalidParameter {
                name: "c1",
                reason: "c1 must be positive (absorb the sign into c2)",
            });
        }
        if self.g == 0.0 && self.kappa == 0.0 {
            return Err(Error::InvalidParameter {
                name: "g,kappa",
                reason: "coupling-free model (g = kappa = 0)",
            });
        }
        if self.g + self.kappa <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "g,kappa",
                reason: "g + kappa must be positive for a real Dyson map",
            });
        }
        Ok(())
    }

    /// `g^2 - kappa^2`.
    #[inline]
    pub fn discriminant(&self) -> f64 {
        self.g * self.g - self.kappa * self.kappa
    }

    /// `sqrt(N)`.
    #[inline]
    pub fn sqrt_n(&self) -> f64 {
        (self.n_bath as f64).sqrt()
    }

    /// Boundedness from below of the unbroken spectrum,
    /// `nu > sqrt(N) sqrt(g^2 - kappa^2)`. Always true away from the
    /// unbroken regime, where the spectrum is not real anyway.
    pub fn bounded_below(&self) -> bool {
        let d = self.discriminant();
        d <= 0.0 || self.nu > self.sqrt_n() * d.sqrt()
    }

    pub fn regime(&self) -> Regime {
        classify_regime(self)
    }

    /// `c1^2 > kappa^2 - g^2`, required for a real metric in the broken
    /// regime and trivially true elsewhere.
    pub fn check_reality(&self) -> Result<()> {
        let threshold = -self.discriminant();
        let c1_sq = self.c1 * self.c1;
        if threshold > 0.0 && c1_sq <= threshold {
            return Err(Error::RealityConditionViolated { c1_sq, threshold });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum RegimeKind {
    Unbroken,
    Exceptional,
    Broken,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Regime {
    pub kind: RegimeKind,
    /// `g^2 - kappa^2`.
    pub discriminant: f64,
}

/// Relative width of the band around `g^2 = kappa^2` classified as the
/// exceptional point.
pub const EXCEPTIONAL_TOLERANCE: f64 = 1e-12;

/// Relative width of the band in which branch formulas switch to series
/// expansions about the exceptional point.
pub const SERIES_BAND: f64 = 1e-6;

pub fn classify_regime(params: &ModelParams) -> Regime {
    let g2 = params.g * params.g;
    let k2 = params.kappa * params.kappa;
    let discriminant = g2 - k2;
    let eps = EXCEPTIONAL_TOLERANCE * (g2 + k2).max(1.0);
    let kind = if discriminant.abs() <= eps {
        RegimeKind::Exceptional
    } else if discriminant > 0.0 {
        RegimeKind::Unbroken
    } else {
        RegimeKind::Broken
    };
    Regime { kind, discriminant }
}
