use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

use super::report::CheckReport;
use crate::closed_form::MetricSolution;
use crate::error::{Error, Result};
use crate::params::ModelParams;

pub const DEFAULT_DT: f64 = 1e-3;
/// Relative drift of the first integral that aborts an integration.
pub const DRIFT_TOLERANCE: f64 = 1e-6;
/// Accepted deviation of RK4 from the closed forms.
pub const ODE_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeOptions {
    pub t_max: f64,
    pub dt: f64,
    pub drift_tolerance: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            t_max: 10.0,
            dt: DEFAULT_DT,
            drift_tolerance: DRIFT_TOLERANCE,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub max_alpha_error: f64,
    pub max_beta_error: f64,
    /// Largest relative drift of `cosh^2(2beta) (beta_dot^2 + N Delta)`.
    pub max_drift: f64,
}

impl Trajectory {
    pub fn max_error(&self) -> f64 {
        self.max_alpha_error.max(self.max_beta_error)
    }
}

/// `cosh^2(2 beta) (beta_dot^2 + N Delta)` is conserved along exact
/// solutions. Returns `(value, scale)`.
fn first_integral(sol: &MetricSolution, alpha: f64, beta: f64) -> (f64, f64) {
    let p = sol.params();
    let n = p.n_bath as f64;
    let d = p.discriminant();
    let bd = sol.beta_rhs(alpha, beta);
    let ch2 = (2.0 * beta).cosh().powi(2);
    (ch2 * (bd * bd + n * d), ch2 * (bd * bd + n * d.abs()))
}

/// Classic RK4 on the coupled `(alpha, beta)` equations from the closed-form
/// initial values at `t = 0`, compared step by step with the closed forms.
pub fn integrate(params: &ModelParams, opts: OdeOptions) -> Result<Trajectory> {
    if !(opts.dt > 0.0 && opts.t_max >= 0.0 && opts.dt.is_finite() && opts.t_max.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "dt",
            reason: "step and horizon must be positive and finite",
        });
    }
    let sol = MetricSolution::new(*params)?;
    let steps = (opts.t_max / opts.dt).ceil().max(1.0) as usize;
    let h = opts.t_max / steps as f64;
    let f = |a: f64, b: f64| (sol.alpha_rhs(a, b), sol.beta_rhs(a, b));

    let (mut a, mut b) = sol.alpha_beta(0.0);
    let (j0, _) = first_integral(&sol, a, b);
    let mut out = Trajectory {
        times: Vec::with_capacity(steps + 1),
        alpha: Vec::with_capacity(steps + 1),
        beta: Vec::with_capacity(steps + 1),
        max_alpha_error: 0.0,
        max_beta_error: 0.0,
        max_drift: 0.0,
    };
    out.times.push(0.0);
    out.alpha.push(a);
    out.beta.push(b);
    for k in 1..=steps {
        let (k1a, k1b) = f(a, b);
        let (k2a, k2b) = f(a + 0.5 * h * k1a, b + 0.5 * h * k1b);
        let (k3a, k3b) = f(a + 0.5 * h * k2a, b + 0.5 * h * k2b);
        let (k4a, k4b) = f(a + h * k3a, b + h * k3b);
        a += h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        b += h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        let t = k as f64 * h;

        let (j, scale) = first_integral(&sol, a, b);
        let drift = (j - j0).abs() / scale;
        out.max_drift = out.max_drift.max(drift);
        if !(drift <= opts.drift_tolerance) {
            return Err(Error::StepSizeTooLarge { dt: h, drift });
        }
        let (ea, eb) = sol.alpha_beta(t);
        out.max_alpha_error = out.max_alpha_error.max((a - ea).abs());
        out.max_beta_error = out.max_beta_error.max((b - eb).abs());
        out.times.push(t);
        out.alpha.push(a);
        out.beta.push(b);
    }
    Ok(out)
}

/// RK4 trajectory plus a report of its deviation from the closed forms.
pub fn integrate_alpha_beta(params: &ModelParams, t_max: f64, dt: f64) -> Result<(Trajectory, CheckReport)> {
    let traj = integrate(
        params,
        OdeOptions {
            t_max,
            dt,
            ..OdeOptions::default()
        },
    )?;
    let report = CheckReport::new(
        format!("ode_vs_closed_form[N={},g={},kappa={}]", params.n_bath, params.g, params.kappa),
        traj.max_error(),
        ODE_TOLERANCE,
        format!(
            "t in [0,{t_max}], dt={dt}; max|d alpha|={:.3e}, max|d beta|={:.3e}, drift={:.3e}",
            traj.max_alpha_error, traj.max_beta_error, traj.max_drift
        ),
    );
    Ok((traj, report))
}

/// `err(dt) / err(dt/2)` for the maximum deviation from the closed forms;
/// close to 16 for a fourth-order method in its asymptotic range.
pub fn richardson_ratio(params: &ModelParams, t_max: f64, dt: f64) -> Result<f64> {
    let run = |h: f64| {
        integrate(
            params,
            OdeOptions {
                t_max,
                dt: h,
                drift_tolerance: f64::INFINITY,
            },
        )
    };
    let coarse = run(dt)?.max_error();
    let fine = run(0.5 * dt)?.max_error();
    Ok(coarse / fine)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_closed_forms_in_all_regimes() {
        for p in [
            ModelParams::unbroken_example(1),
            ModelParams::exceptional_example(2),
            ModelParams::broken_example(3),
        ] {
            let (traj, report) = integrate_alpha_beta(&p, 10.0, 1e-3).unwrap();
            assert!(report.pass, "{report:?}");
            assert!(traj.max_drift < 1e-9, "{report:?}");
            assert_eq!(traj.times.len(), 10_001);
        }
    }

    #[test]
    fn fourth_order_convergence() {
        let r = richardson_ratio(&ModelParams::unbroken_example(1), 2.0, 0.05).unwrap();
        assert!((r - 16.0).abs() < 4.0, "ratio {r}");
    }

    #[test]
    fn coarse_steps_trip_the_drift_guard() {
        let p = ModelParams::broken_example(3);
        let err = integrate(
            &p,
            OdeOptions {
                t_max: 10.0,
                dt: 0.5,
                drift_tolerance: DRIFT_TOLERANCE,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::StepSizeTooLarge { .. }));
    }
}
