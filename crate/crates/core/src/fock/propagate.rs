use alloc::vec::Vec;

#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

use super::basis::FockBasis;
use super::dyson::DysonSetup;
use super::operators::hermitian_from;
use crate::closed_form::MetricSolution;
use crate::entropy::{partial_trace, von_neumann_entropy, BipartiteLabel, DensityMatrix, ModeLayout};
use crate::error::{Error, Result};
use crate::linalg::{dot, expm, norm, re, CMatrix, Lu, C64, I};
use crate::params::ModelParams;

/// Largest RK4 substep for Schrodinger propagation.
pub const MAX_SUBSTEP: f64 = 1e-3;

/// Which Hermitian generator drives the first-excited state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorChoice {
    /// Schrodinger evolution under `h = nu (N_A + N_Q) + mu A_x`.
    HWithAx,
    /// Rotation of the sector coefficients by `mu_I` about `A_y`, the
    /// dynamics of the closed-form excited state.
    RotationAy,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PropagationPoint {
    pub t: f64,
    /// Reduced population of `|1_a>`.
    pub lambda1: f64,
    /// Reduced population of `|0_a>`.
    pub lambda2: f64,
    pub entropy: f64,
    pub norm: f64,
}

#[derive(Clone, Debug)]
pub struct Propagation {
    pub choice: GeneratorChoice,
    pub points: Vec<PropagationPoint>,
    /// `max | ||phi|| - 1 |`.
    pub max_norm_defect: f64,
    /// `max | <psi|rho|psi> - <psi0|rho0|psi0> |` with `psi = eta^-1 phi`
    /// (only for [`GeneratorChoice::HWithAx`]).
    pub max_metric_norm_defect: f64,
    /// `max |eta psi_H - phi| / |phi|` where `psi_H` is propagated under the
    /// non-Hermitian `H` (only for [`GeneratorChoice::HWithAx`]).
    pub max_frame_defect: f64,
}

/// `cos(mu_I(0) - gamma) |1_a 0_q> + sin(gamma - mu_I(0)) |S>`, the state
/// whose closed-form evolution gives `lambda1 = cos^2(mu_I - gamma)`.
pub fn initial_state(basis: &FockBasis, solution: &MetricSolution) -> Vec<C64> {
    let phase = solution.mu_integral(0.0) - solution.params().gamma;
    basis.embed([re(phase.cos()), re(-phase.sin())])
}

struct Reducer {
    layout: ModeLayout,
    label: BipartiteLabel,
}

impl Reducer {
    fn new(basis: &FockBasis) -> Self {
        Self {
            layout: basis.layout(),
            label: basis.system_vs_bath(),
        }
    }

    fn point(&self, t: f64, phi: &[C64]) -> Result<PropagationPoint> {
        let n = norm(phi);
        let unit: Vec<C64> = phi.iter().map(|z| z / n).collect();
        let reduced = partial_trace(&DensityMatrix::pure(&unit)?, &self.layout, &self.label)?;
        let pop = |occ: u8| {
            reduced
                .labels
                .iter()
                .position(|l| l[0] == occ)
                .map_or(0.0, |k| reduced.rho.matrix()[(k, k)].re)
        };
        Ok(PropagationPoint {
            t,
            lambda1: pop(1),
            lambda2: pop(0),
            entropy: von_neumann_entropy(&reduced.rho)?,
            norm: n,
        })
    }
}

fn check_grid(t_grid: &[f64]) -> Result<()> {
    let ok = !t_grid.is_empty()
        && t_grid.iter().all(|t| t.is_finite() && *t >= 0.0)
        && t_grid.windows(2).all(|w| w[0] <= w[1]);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "t_grid",
            reason: "time grid must be nonempty, non-negative and ascending",
        })
    }
}

pub fn propagate_state(t_grid: &[f64], basis: &FockBasis, params: &ModelParams, choice: GeneratorChoice) -> Result<Propagation> {
    check_grid(t_grid)?;
    let setup = DysonSetup::new(basis, params)?;
    match choice {
        GeneratorChoice::RotationAy => rotate(t_grid, &setup),
        GeneratorChoice::HWithAx => schrodinger(t_grid, &setup),
    }
}

fn rotate(t_grid: &[f64], setup: &DysonSetup) -> Result<Propagation> {
    let gens = &setup.generators;
    let sol = &setup.solution;
    let reducer = Reducer::new(&setup.basis);
    let phi0 = initial_state(&setup.basis, sol);
    let number = &gens.n_a + &gens.n_q;
    let mu0 = sol.mu_integral(0.0);
    let mut points = Vec::with_capacity(t_grid.len());
    let mut defect = 0.0f64;
    for &t in t_grid {
        let free = expm(&number.scale(C64::new(0.0, -setup.params.nu * t)));
        let turn = expm(&gens.a_y.scale(C64::new(0.0, -(sol.mu_integral(t) - mu0))));
        let phi = free.matmul(&turn).mul_vec(&phi0);
        let p = reducer.point(t, &phi)?;
        defect = defect.max((p.norm - 1.0).abs());
        points.push(p);
    }
    Ok(Propagation {
        choice: GeneratorChoice::RotationAy,
        points,
        max_norm_defect: defect,
        max_metric_norm_defect: 0.0,
        max_frame_defect: 0.0,
    })
}

fn rk4_step(y: &[C64], h: f64, f: impl Fn(f64, &[C64]) -> Vec<C64>, t: f64) -> Vec<C64> {
    let axpy = |a: &[C64], s: f64, b: &[C64]| -> Vec<C64> { a.iter().zip(b).map(|(x, d)| x + d * s).collect() };
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &axpy(y, 0.5 * h, &k1));
    let k3 = f(t + 0.5 * h, &axpy(y, 0.5 * h, &k2));
    let k4 = f(t + h, &axpy(y, h, &k3));
    (0..y.len())
        .map(|i| y[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0))
        .collect()
}

fn schrodinger(t_grid: &[f64], setup: &DysonSetup) -> Result<Propagation> {
    let gens = &setup.generators;
    let sol = &setup.solution;
    let nu = setup.params.nu;
    let reducer = Reducer::new(&setup.basis);
    let h_of = |t: f64| hermitian_from(gens, nu, sol.mu(t));
    let minus_i = -I;
    let rhs_h = |t: f64, y: &[C64]| -> Vec<C64> { h_of(t).mul_vec(y).into_iter().map(|z| z * minus_i).collect() };
    let big_h = &setup.h;
    let rhs_big = |_t: f64, y: &[C64]| -> Vec<C64> { big_h.mul_vec(y).into_iter().map(|z| z * minus_i).collect() };

    let mut phi = initial_state(&setup.basis, sol);
    let map0 = setup.map(0.0);
    let mut psi = map0.eta_inv.mul_vec(&phi);
    let metric_norm = |map_eta: &CMatrix, v: &[C64]| dot(v, &map_eta.adjoint().matmul(map_eta).mul_vec(v)).re;
    let m0 = metric_norm(&map0.eta, &psi);

    let mut t = 0.0;
    let mut points = Vec::with_capacity(t_grid.len());
    let mut norm_defect = 0.0f64;
    let mut metric_defect = 0.0f64;
    let mut frame_defect = 0.0f64;
    for &target in t_grid {
        let span = target - t;
        if span > 0.0 {
            let steps = (span / MAX_SUBSTEP).ceil() as usize;
            let h = span / steps as f64;
            for k in 0..steps {
                let tk = t + k as f64 * h;
                phi = rk4_step(&phi, h, rhs_h, tk);
                psi = rk4_step(&psi, h, rhs_big, tk);
            }
            t = target;
        }
        let map = setup.map(t);
        // psi from phi through the Dyson map, and psi_H propagated directly
        let pulled = Lu::new(&map.eta).map_or_else(|| map.eta_inv.mul_vec(&phi), |lu| lu.solve_vec(&phi));
        metric_defect = metric_defect.max((metric_norm(&map.eta, &pulled) - m0).abs());
        let pushed = map.eta.mul_vec(&psi);
        let diff: Vec<C64> = pushed.iter().zip(&phi).map(|(a, b)| a - b).collect();
        frame_defect = frame_defect.max(norm(&diff) / norm(&phi));
        let p = reducer.point(t, &phi)?;
        norm_defect = norm_defect.max((p.norm - 1.0).abs());
        points.push(p);
    }
    Ok(Propagation {
        choice: GeneratorChoice::HWithAx,
        points,
        max_norm_defect: norm_defect,
        max_metric_norm_defect: metric_defect,
        max_frame_defect: frame_defect,
    })
}
