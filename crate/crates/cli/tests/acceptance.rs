//! Acceptance suite: one PASS/FAIL line per criterion.

use std::f64::consts::{FRAC_PI_4, PI};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ptent_core::closed_form::{asymptote, energy_spectrum};
use ptent_core::entropy::{density_from_ensemble, similarity_map, spectral_entropy, von_neumann_entropy, Ensemble};
use ptent_core::fock::pt::{apply_pt, first_excited_states, pt_overlap};
use ptent_core::fock::{build_h_nonhermitian, integrate_alpha_beta, sector_spectrum, Coupling, DysonSetup, FockBasis};
use ptent_core::linalg::{dot, hermitian_eigen, re};
use ptent_core::{CMatrix, DensityMatrix, MetricSolution, ModelParams, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Tolerances, fixed here so the printed lines state what was checked.
const ASYMPTOTE_TARGET: f64 = 0.3521;
const ASYMPTOTE_TOL: f64 = 5e-4;
const S50_TOL: f64 = 1e-3;
const ODE_TOL: f64 = 1e-6;
const DYSON_TOL: f64 = 1e-8;
const DYSON_SAMPLES: usize = 50;
const DYSON_WINDOW: f64 = 5.0;
const SPECTRUM_TOL: f64 = 1e-10;
const PT_TOL: f64 = 1e-10;
const PT_OVERLAP_DEFECT: f64 = 0.01;
const DEATH_TOL: f64 = 1e-9;
const SPECTRUM_PRESERVATION_TOL: f64 = 1e-9;
const METRIC_HERMITICITY_TOL: f64 = 1e-10;
const RANDOM_CASES: usize = 100;
const RANDOM_SEED: u64 = 0x5eed_0001;
const PERIOD_TOL: f64 = 1e-9;
const EXCEPTIONAL_FLOOR: f64 = 1e-3;
const BROKEN_MARGIN: f64 = 1e-9;
const MU_RATIO_TOL: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn fig1(n: usize) -> ModelParams {
    ModelParams::unbroken_example(n)
}

fn fig2(n: usize) -> ModelParams {
    ModelParams::new(1.0, 0.5, 0.5, n, 1.0, 0.0, FRAC_PI_4).unwrap()
}

fn fig3(n: usize) -> ModelParams {
    ModelParams::new(1.0, 0.3, 0.7, n, 1.0, 0.0, FRAC_PI_4).unwrap()
}

fn criterion_1() -> Outcome {
    let (out, elapsed) = timed(|| {
        let p = fig3(1);
        let a = match asymptote(&p) {
            Ok(a) => a,
            Err(e) => return outcome(false, e.to_string()),
        };
        let s50 = MetricSolution::new(p).unwrap().entropy(50.0).entropy;
        let d1 = (a.entropy - ASYMPTOTE_TARGET).abs();
        let d2 = (s50 - a.entropy).abs();
        outcome(
            d1 < ASYMPTOTE_TOL && d2 < S50_TOL,
            format!(
                "S_inf = {:.6} (|S_inf - {ASYMPTOTE_TARGET}| = {d1:.2e} < {ASYMPTOTE_TOL:e}), |S(50) - S_inf| = {d2:.2e} < {S50_TOL:e}",
                a.entropy
            ),
        )
    });
    let fast = elapsed < Duration::from_secs(1);
    outcome(out.pass && fast, format!("{}; runtime {elapsed:.2?} < 1 s", out.detail))
}

fn criterion_2() -> Outcome {
    let (out, elapsed) = timed(|| {
        let mut worst = 0.0f64;
        for n in 1..=3 {
            for p in [fig1(n), fig2(n), fig3(n)] {
                match integrate_alpha_beta(&p, 10.0, 1e-3) {
                    Ok((traj, _)) => worst = worst.max(traj.max_error()),
                    Err(e) => return outcome(false, format!("N={n} g={} kappa={}: {e}", p.g, p.kappa)),
                }
            }
        }
        outcome(worst < ODE_TOL, format!("max |RK4 - closed form| over t in [0,10], dt=1e-3 = {worst:.2e} < {ODE_TOL:e}"))
    });
    let fast = elapsed < Duration::from_secs(10);
    outcome(out.pass && fast, format!("{}; runtime {elapsed:.2?} < 10 s", out.detail))
}

fn criterion_3() -> Outcome {
    let mut residual = 0.0f64;
    let mut anti = 0.0f64;
    for n in 1..=3 {
        for p in [fig1(n), fig2(n), fig3(n)] {
            let setup = DysonSetup::new(&FockBasis::new(n, 1).unwrap(), &p).unwrap();
            for k in 0..DYSON_SAMPLES {
                let t = DYSON_WINDOW * k as f64 / (DYSON_SAMPLES - 1) as f64;
                let r = setup.residual(t, Coupling::True);
                residual = residual.max(r.sector_residual).max(r.residual);
                anti = anti.max(r.sector_anti_hermitian).max(r.anti_hermitian);
            }
        }
    }
    outcome(
        residual < DYSON_TOL && anti < DYSON_TOL,
        format!(
            "{DYSON_SAMPLES} times in [0,{DYSON_WINDOW}] x 3 regimes x N=1..3: residual {residual:.2e}, anti-Hermitian part {anti:.2e}, both < {DYSON_TOL:e}"
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut worst = 0.0f64;
    let mut complex_pair = true;
    for n in 1..=5 {
        for p in [fig1(n), fig2(n), fig3(n)] {
            let (plus, minus) = energy_spectrum(&p, 1);
            let expected_plus = C64::new(p.nu, 0.0) + C64::new(p.discriminant(), 0.0).sqrt() * p.sqrt_n();
            let ev = sector_spectrum(&FockBasis::new(n, 1).unwrap(), &p);
            let direct = (ev[0] - plus).norm().max((ev[1] - minus).norm());
            let swapped = (ev[0] - minus).norm().max((ev[1] - plus).norm());
            worst = worst.max(direct.min(swapped)).max((plus - expected_plus).norm());
            if p.discriminant() < 0.0 {
                complex_pair &= ev[0].im.abs() > 0.1 && (ev[0] - ev[1].conj()).norm() < SPECTRUM_TOL;
            }
        }
    }
    outcome(
        worst < SPECTRUM_TOL && complex_pair,
        format!("max |eig(H block) - (nu +- sqrt(N) sqrt(g^2-kappa^2))| = {worst:.2e} < {SPECTRUM_TOL:e}; broken pair conjugate: {complex_pair}"),
    )
}

fn criterion_5() -> Outcome {
    let mut commutation = 0.0f64;
    let mut eigen_defect = 0.0f64;
    let mut broken_defect = f64::INFINITY;
    for n in 1..=3 {
        for cap in [1, 2] {
            let basis = FockBasis::new(n, cap).unwrap();
            let parity = basis.parity();
            let pm = CMatrix::real_diag(&parity);
            for p in [fig1(n), fig2(n), fig3(n)] {
                let h = build_h_nonhermitian(&basis, &p).matrix;
                commutation = commutation.max((&pm.matmul(&h.conj()).matmul(&pm) - &h).max_abs());
                let states = first_excited_states(&h, &p);
                if p.g > p.kappa {
                    for psi in &states {
                        let image = apply_pt(&parity, psi);
                        let d = image.iter().zip(psi).map(|(a, b)| (a + b).norm()).fold(0.0, f64::max);
                        eigen_defect = eigen_defect.max(d);
                    }
                } else if p.kappa > p.g {
                    for psi in &states {
                        broken_defect = broken_defect.min(1.0 - pt_overlap(&parity, psi));
                    }
                }
            }
        }
    }
    outcome(
        commutation == 0.0 && eigen_defect < PT_TOL && broken_defect > PT_OVERLAP_DEFECT,
        format!(
            "max |P conj(H) P - H| = {commutation:e}; kappa<g: max |PT psi + psi| = {eigen_defect:.2e} < {PT_TOL:e}; kappa>g: min(1 - |<psi|PT psi>|) = {broken_defect:.4} > {PT_OVERLAP_DEFECT}"
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut worst = 0.0f64;
    let mut decreasing = true;
    let mut previous = f64::INFINITY;
    for n in 1..=5 {
        let p = fig1(n);
        let Some(t) = MetricSolution::new(p).unwrap().sudden_death_time() else {
            return outcome(false, format!("no root for N={n}"));
        };
        let expected = PI / (4.0 * p.sqrt_n() * p.discriminant().sqrt());
        worst = worst.max((t - expected).abs());
        decreasing &= t < previous;
        previous = t;
    }
    outcome(
        worst < DEATH_TOL && decreasing,
        format!("max |t*(N) - pi/(4 sqrt(N) sqrt(g^2-kappa^2))| over N=1..5 = {worst:.2e} < {DEATH_TOL:e}; strictly decreasing: {decreasing}"),
    )
}

fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut spectrum_gap = 0.0f64;
    let mut entropy_gap = 0.0f64;
    let mut metric_residual = 0.0f64;
    for _ in 0..RANDOM_CASES {
        let dim = rng.gen_range(1..=8);
        let a = random_matrix(&mut rng, dim);
        let aa = a.matmul(&a.adjoint());
        let rho = DensityMatrix::new(aa.scale_re(1.0 / aa.trace().re)).unwrap();
        let eta = &CMatrix::identity(dim) + &random_matrix(&mut rng, dim).scale(re(0.4 / dim as f64));

        let mapped = match similarity_map(&rho, &eta) {
            Ok(m) => m,
            Err(e) => return outcome(false, e.to_string()),
        };
        let before = hermitian_eigen(rho.matrix()).values;
        for (x, z) in before.iter().zip(mapped.spectrum()) {
            spectrum_gap = spectrum_gap.max((x - z.re).abs()).max(z.im.abs());
        }
        let s0 = von_neumann_entropy(&rho).unwrap();
        entropy_gap = entropy_gap.max((s0 - spectral_entropy(&mapped).unwrap()).abs());

        let metric = eta.adjoint().matmul(&eta);
        let k = rng.gen_range(1..=3);
        let states: Vec<Vec<C64>> = (0..k)
            .map(|_| {
                let psi = random_matrix(&mut rng, dim).column(0);
                let n = dot(&psi, &metric.mul_vec(&psi)).re.sqrt();
                psi.iter().map(|z| z / n).collect()
            })
            .collect();
        let mut weights: Vec<f64> = (0..k).map(|_| rng.gen_range(0.1..1.0)).collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        let rho_h = density_from_ensemble(&Ensemble::new(weights, states).unwrap(), Some(&metric)).unwrap();
        metric_residual = metric_residual.max(rho_h.metric_hermiticity_residual(&metric));
    }
    outcome(
        spectrum_gap < SPECTRUM_PRESERVATION_TOL && entropy_gap < SPECTRUM_PRESERVATION_TOL && metric_residual < METRIC_HERMITICITY_TOL,
        format!(
            "{RANDOM_CASES} cases, dim <= 8, seed {RANDOM_SEED:#x}: spectrum gap {spectrum_gap:.2e}, entropy gap {entropy_gap:.2e} (< {SPECTRUM_PRESERVATION_TOL:e}), metric-Hermiticity {metric_residual:.2e} (< {METRIC_HERMITICITY_TOL:e})"
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut period_gap = 0.0f64;
    let mut touch = 0.0f64;
    let mut exceptional = 0.0f64;
    let mut broken_dip = f64::INFINITY;
    for n in 1..=5 {
        let p = fig1(n);
        let sol = MetricSolution::new(p).unwrap();
        let period = PI / (p.sqrt_n() * p.discriminant().sqrt());
        for k in 0..=1000 {
            let t = 10.0 * k as f64 / 1000.0;
            period_gap = period_gap.max((sol.entropy(t).entropy - sol.entropy(t + period).entropy).abs());
        }
        touch = touch.max(sol.entropy(sol.sudden_death_time().unwrap_or(f64::NAN)).entropy);

        exceptional = exceptional.max(MetricSolution::new(fig2(n)).unwrap().entropy(100.0).entropy);

        let p = fig3(n);
        let floor = asymptote(&p).unwrap().entropy;
        let sol = MetricSolution::new(p).unwrap();
        for k in 0..=50_000 {
            let t = 50.0 * k as f64 / 50_000.0;
            broken_dip = broken_dip.min(sol.entropy(t).entropy - floor);
        }
    }
    let pass = period_gap < PERIOD_TOL && touch < 1e-12 && exceptional < EXCEPTIONAL_FLOOR && broken_dip >= -BROKEN_MARGIN;
    outcome(
        pass,
        format!(
            "N=1..5: unbroken period gap {period_gap:.2e} < {PERIOD_TOL:e}, S(t*) = {touch:.1e}; exceptional S(100) <= {exceptional:.2e} < {EXCEPTIONAL_FLOOR:e}; broken min(S - S_inf) on [0,50] = {broken_dip:.2e} >= -{BROKEN_MARGIN:e}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let output = match Command::new(env!("CARGO_BIN_EXE_ptent")).args(["verify", "--scope", "full"]).output() {
        Ok(o) => o,
        Err(e) => return outcome(false, format!("cannot run ptent: {e}")),
    };
    let code = output.status.code();
    let json: Value = match serde_json::from_slice(&output.stdout) {
        Ok(v) => v,
        Err(e) => return outcome(false, format!("bad JSON: {e}")),
    };
    let findings = json["findings"].as_array().cloned().unwrap_or_default();
    let finding = |name: &str| findings.iter().find(|f| f["name"] == name).cloned();
    let ratio = finding("mu_factor").and_then(|f| f["value"].as_f64()).unwrap_or(f64::NAN);
    let bracket = finding("commutator[N_A,A_y]").and_then(|f| f["observed"].as_str().map(str::to_owned)).unwrap_or_default();
    let bracket_measured = bracket.contains("[N_A,A_y] = 1i*A_x");

    let reports = json["reports"].as_array().cloned().unwrap_or_default();
    let ratio_reports: Vec<&Value> = reports.iter().filter(|r| r["name"].as_str().is_some_and(|n| n.starts_with("mu_ratio["))).collect();
    let ratio_worst = ratio_reports.iter().filter_map(|r| r["max_residual"].as_f64()).fold(0.0, f64::max);
    let informational = ratio_reports.iter().all(|r| r["informational"] == true)
        && reports
            .iter()
            .filter(|r| r["name"].as_str().is_some_and(|n| n.starts_with("commutator_printed[N_A,A_y]")))
            .all(|r| r["informational"] == true && r["pass"] == false);
    let overall = json["overall_pass"] == true && code == Some(0);

    outcome(
        (ratio - 2.0).abs() < MU_RATIO_TOL && ratio_worst < MU_RATIO_TOL && !ratio_reports.is_empty() && bracket_measured && informational && overall,
        format!(
            "mu_true/mu_printed = {ratio:.12} (worst |ratio - 2| = {ratio_worst:.1e} < {MU_RATIO_TOL:e}); measured bracket: {}; informational only: {informational}; overall_pass with exit 0: {overall}",
            if bracket_measured { "[N_A,A_y] = 1i*A_x" } else { "missing" }
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("asymptote reproduction", criterion_1),
        ("ODE consistency", criterion_2),
        ("Dyson residual", criterion_3),
        ("single-excitation spectrum", criterion_4),
        ("PT suite", criterion_5),
        ("sudden-death scaling", criterion_6),
        ("entropy framework properties", criterion_7),
        ("regime phenomenology", criterion_8),
        ("discrepancy ledger", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let out = check();
        if !out.pass {
            failed += 1;
        }
        println!("criterion {}: {} [{name}] {}", k + 1, if out.pass { "PASS" } else { "FAIL" }, out.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
