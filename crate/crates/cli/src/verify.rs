//! The verification suite behind `ptent verify`.

use std::f64::consts::PI;

use anyhow::Result;
use ptent_core::closed_form::{asymptote, energy_spectrum};
use ptent_core::fock::{
    commutator_table_check, discrepancy_report, integrate_alpha_beta, propagate_state, pt_check, richardson_ratio, sector_spectrum,
    CheckReport, Coupling, DysonSetup, Finding, FockBasis, GeneratorChoice,
};
use ptent_core::{MetricSolution, ModelParams};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Scope;

pub const DYSON_TOLERANCE: f64 = 1e-8;
/// Sample times for Dyson residuals and metric positivity.
pub const DYSON_SAMPLES: usize = 50;
pub const DYSON_WINDOW: f64 = 5.0;

#[derive(Clone, Debug, Serialize)]
pub struct VerifyOutcome {
    pub reports: Vec<CheckReport>,
    pub overall_pass: bool,
    pub findings: Vec<Finding>,
}

impl VerifyOutcome {
    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| r.is_failure())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub scope: Scope,
    /// Scales the Dyson-check coupling; only for negative controls.
    pub tamper_mu: Option<f64>,
}

pub fn regimes(n: usize) -> [ModelParams; 3] {
    [
        ModelParams::unbroken_example(n),
        ModelParams::exceptional_example(n),
        ModelParams::broken_example(n),
    ]
}

fn tag(p: &ModelParams) -> String {
    format!("N={},g={},kappa={}", p.n_bath, p.g, p.kappa)
}

#[derive(Clone, Copy, Debug)]
enum Job {
    Ode(ModelParams),
    Dyson(ModelParams, usize),
    Metric(ModelParams),
    Pt(ModelParams, usize),
    Spectrum(ModelParams),
    Propagation(ModelParams),
    Commutators(usize, usize),
    Richardson,
    DeathTime,
    Asymptote,
}

fn sample_times() -> impl Iterator<Item = f64> {
    (0..DYSON_SAMPLES).map(|k| DYSON_WINDOW * k as f64 / (DYSON_SAMPLES - 1) as f64)
}

fn dyson(p: &ModelParams, cap: usize, coupling: Coupling) -> Result<Vec<CheckReport>> {
    let setup = DysonSetup::new(&FockBasis::new(p.n_bath, cap)?, p)?;
    let t = format!("{},cap={cap}", tag(p));
    let mut sector = Vec::new();
    let mut sector_anti = Vec::new();
    let mut full = Vec::new();
    let mut full_anti = Vec::new();
    let mut worst_condition = 0.0f64;
    for time in sample_times() {
        let r = setup.residual(time, coupling);
        sector.push(CheckReport::new("", r.sector_residual, DYSON_TOLERANCE, ""));
        sector_anti.push(CheckReport::new("", r.sector_anti_hermitian, DYSON_TOLERANCE, ""));
        full.push(CheckReport::new("", r.residual, DYSON_TOLERANCE, ""));
        full_anti.push(CheckReport::new("", r.anti_hermitian, DYSON_TOLERANCE, ""));
        worst_condition = worst_condition.max(r.condition);
    }
    let window = format!("t in [0,{DYSON_WINDOW}]");
    let mut out = vec![
        CheckReport::worst(format!("dyson_residual_sector[{t}]"), DYSON_TOLERANCE, &sector, window.clone()),
        CheckReport::worst(format!("dyson_anti_hermitian_sector[{t}]"), DYSON_TOLERANCE, &sector_anti, window.clone()),
    ];
    let full_notes = format!("{window}; whole truncated basis; max cond(eta) = {worst_condition:.3e}");
    let mut whole = CheckReport::worst(format!("dyson_residual_full[{t}]"), DYSON_TOLERANCE, &full, full_notes.clone());
    let mut whole_anti = CheckReport::worst(format!("dyson_anti_hermitian_full[{t}]"), DYSON_TOLERANCE, &full_anti, full_notes);
    if cap > 1 {
        // multi-excitation blocks see cond(eta)^2 amplification
        whole = whole.informational();
        whole_anti = whole_anti.informational();
    }
    out.push(whole);
    out.push(whole_anti);
    Ok(out)
}

fn metric(p: &ModelParams) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for cap in [1, 2] {
        let setup = DysonSetup::new(&FockBasis::new(p.n_bath, cap)?, p)?;
        let mut lowest = f64::INFINITY;
        let mut highest = 0.0f64;
        for t in sample_times() {
            let (lo, hi) = setup.map(t).metric_extremes();
            lowest = lowest.min(lo);
            highest = highest.max(hi);
        }
        out.push(CheckReport::new(
            format!("metric_positive[{},cap={cap}]", tag(p)),
            -lowest,
            0.0,
            format!("min eigenvalue {lowest:.6e}, max {highest:.6e} over {DYSON_SAMPLES} samples"),
        ));
    }
    Ok(out)
}

fn spectrum(p: &ModelParams) -> Result<Vec<CheckReport>> {
    let (plus, minus) = energy_spectrum(p, 1);
    let mut out = Vec::new();
    for cap in [1, 2] {
        let ev = sector_spectrum(&FockBasis::new(p.n_bath, cap)?, p);
        let direct = (ev[0] - plus).norm().max((ev[1] - minus).norm());
        let swapped = (ev[0] - minus).norm().max((ev[1] - plus).norm());
        out.push(CheckReport::new(
            format!("spectrum[{},cap={cap}]", tag(p)),
            direct.min(swapped),
            1e-10,
            format!("E+ = {plus}, E- = {minus}"),
        ));
    }
    Ok(out)
}

fn propagation(p: &ModelParams) -> Result<Vec<CheckReport>> {
    let basis = FockBasis::new(p.n_bath, 1)?;
    let long: Vec<f64> = (0..=40).map(|k| 0.25 * k as f64).collect();
    let short: Vec<f64> = (0..=20).map(|k| 0.25 * k as f64).collect();
    let ax = propagate_state(&long, &basis, p, GeneratorChoice::HWithAx)?;
    let frame = propagate_state(&short, &basis, p, GeneratorChoice::HWithAx)?;
    let ay = propagate_state(&long, &basis, p, GeneratorChoice::RotationAy)?;
    let sol = MetricSolution::new(*p)?;
    let closed = ay
        .points
        .iter()
        .map(|q| (q.entropy - sol.entropy(q.t).entropy).abs())
        .fold(0.0, f64::max);
    Ok(vec![
        CheckReport::new(format!("norm_conservation[{}]", tag(p)), ax.max_norm_defect, 1e-8, "h with A_x, t in [0,10]"),
        CheckReport::new(
            format!("metric_norm_conservation[{}]", tag(p)),
            frame.max_metric_norm_defect,
            1e-6,
            "<psi|rho|psi>, psi = eta^-1 phi, t in [0,5]",
        ),
        CheckReport::new(
            format!("frame_consistency[{}]", tag(p)),
            frame.max_frame_defect,
            1e-6,
            "|eta psi_H - phi| / |phi|, t in [0,5]",
        ),
        CheckReport::new(
            format!("rotation_vs_closed_form[{}]", tag(p)),
            closed,
            1e-8,
            "A_y rotation entropy against the closed form, t in [0,10]",
        ),
    ])
}

fn run(job: Job, tamper: Option<f64>) -> Result<Vec<CheckReport>> {
    let coupling = tamper.map_or(Coupling::True, Coupling::Scaled);
    match job {
        Job::Ode(p) => Ok(vec![integrate_alpha_beta(&p, 10.0, 1e-3)?.1]),
        Job::Dyson(p, cap) => dyson(&p, cap, coupling),
        Job::Metric(p) => metric(&p),
        Job::Pt(p, cap) => Ok(pt_check(&FockBasis::new(p.n_bath, cap)?, &p)),
        Job::Spectrum(p) => spectrum(&p),
        Job::Propagation(p) => propagation(&p),
        Job::Commutators(n, cap) => Ok(commutator_table_check(&FockBasis::new(n, cap)?)),
        Job::Richardson => {
            let p = ModelParams::unbroken_example(1);
            let r = richardson_ratio(&p, 2.0, 0.05)?;
            Ok(vec![CheckReport::new(
                "richardson_ratio[N=1,g=0.7,kappa=0.3]",
                (r - 16.0).abs(),
                4.0,
                format!("err(0.05)/err(0.025) = {r:.6}, t in [0,2]"),
            )])
        }
        Job::DeathTime => {
            let mut out = Vec::new();
            let mut previous = f64::INFINITY;
            for n in 1..=5 {
                let p = ModelParams::unbroken_example(n);
                let t = MetricSolution::new(p)?.sudden_death_time().unwrap_or(f64::NAN);
                let expected = PI / (4.0 * p.sqrt_n() * p.discriminant().sqrt());
                out.push(CheckReport::new(
                    format!("sudden_death[{}]", tag(&p)),
                    (t - expected).abs(),
                    1e-9,
                    format!("t* = {t:.12}, pi/(4 sqrt(N) sqrt(g^2-kappa^2)) = {expected:.12}"),
                ));
                out.push(CheckReport::new(
                    format!("sudden_death_decreasing[{}]", tag(&p)),
                    if t < previous { 0.0 } else { 1.0 },
                    0.0,
                    format!("previous {previous:.12}"),
                ));
                previous = t;
            }
            Ok(out)
        }
        Job::Asymptote => {
            let p = ModelParams::broken_example(1);
            let a = asymptote(&p)?;
            let s50 = MetricSolution::new(p)?.entropy(50.0).entropy;
            Ok(vec![
                CheckReport::new("asymptote[c1=1,g=0.3,kappa=0.7]", (a.entropy - 0.3521).abs(), 5e-4, format!("S_inf = {:.9}, xi = {:.9}", a.entropy, a.xi)),
                CheckReport::new("asymptote_vs_S50[c1=1,g=0.3,kappa=0.7]", (s50 - a.entropy).abs(), 1e-3, format!("S(50) = {s50:.9}")),
            ])
        }
    }
}

fn jobs(scope: Scope) -> Vec<Job> {
    let (sizes, caps): (&[usize], &[usize]) = match scope {
        Scope::Quick => (&[1, 2], &[1]),
        Scope::Full => (&[1, 2, 3], &[1, 2]),
    };
    let mut jobs = Vec::new();
    for &n in sizes {
        for p in regimes(n) {
            jobs.push(Job::Ode(p));
            jobs.push(Job::Metric(p));
            jobs.push(Job::Spectrum(p));
            jobs.push(Job::Propagation(p));
            for &cap in caps {
                jobs.push(Job::Dyson(p, cap));
                jobs.push(Job::Pt(p, cap));
            }
        }
        for &cap in caps {
            jobs.push(Job::Commutators(n, cap));
        }
    }
    jobs.extend([Job::Richardson, Job::DeathTime, Job::Asymptote]);
    jobs
}

pub fn run_suite(opts: SuiteOptions) -> Result<VerifyOutcome> {
    let per_job: Vec<Vec<CheckReport>> = jobs(opts.scope)
        .into_par_iter()
        .map(|job| run(job, opts.tamper_mu))
        .collect::<Result<_>>()?;
    let mut reports: Vec<CheckReport> = per_job.into_iter().flatten().collect();

    let sizes: &[usize] = match opts.scope {
        Scope::Quick => &[1, 2],
        Scope::Full => &[1, 2, 3],
    };
    let params: Vec<ModelParams> = sizes.iter().flat_map(|&n| regimes(n)).collect();
    let ledger = discrepancy_report(&params)?;
    reports.extend(ledger.reports);

    let overall_pass = reports.iter().all(|r| !r.is_failure());
    Ok(VerifyOutcome {
        reports,
        overall_pass,
        findings: ledger.findings,
    })
}
