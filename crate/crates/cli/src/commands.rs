//! Curve, figure, asymptote, death-time and spectrum commands.

use std::path::{Path, PathBuf};

use anyhow::Result;
use ptent_core::closed_form::{asymptote, energy_spectrum};
use ptent_core::fock::{sector_spectrum, FockBasis};
use ptent_core::{MetricSolution, ModelParams, C64};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::output::{csv_table, emit, json_bytes, list_paths, num, suffixed, write_atomic};

pub const CURVE_HEADER: [&str; 5] = ["t", "S", "lambda1", "lambda2", "mu_I"];

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurveRow {
    pub t: f64,
    #[serde(rename = "S")]
    pub entropy: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    #[serde(rename = "mu_I")]
    pub mu_integral: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Curve {
    pub n_bath: usize,
    pub params: ModelParams,
    pub rows: Vec<CurveRow>,
}

fn describe(p: &ModelParams) -> String {
    format!(
        "N={} nu={} g={} kappa={} c1={} c2={} gamma={}",
        p.n_bath, p.nu, p.g, p.kappa, p.c1, p.c2, p.gamma
    )
}

pub fn curve(params: ModelParams, times: &[f64]) -> Result<Curve> {
    let sol = MetricSolution::new(params)?;
    let rows = times
        .iter()
        .map(|&t| {
            let e = sol.entropy(t);
            CurveRow {
                t,
                entropy: e.entropy,
                lambda1: e.lambda1,
                lambda2: e.lambda2,
                mu_integral: sol.mu_integral(t),
            }
        })
        .collect();
    Ok(Curve {
        n_bath: params.n_bath,
        params,
        rows,
    })
}

/// One curve per bath size, computed in parallel, in bath-size order.
pub fn curves(config: &RunConfig, base: ModelParams) -> Result<Vec<Curve>> {
    let times = config.times();
    config
        .bath_sizes
        .par_iter()
        .map(|&n| {
            let p = base.with_bath(n);
            p.validate()?;
            curve(p, &times)
        })
        .collect()
}

fn curve_csv(c: &Curve) -> Result<Vec<u8>> {
    let rows: Vec<Vec<String>> = c
        .rows
        .iter()
        .map(|r| vec![num(r.t), num(r.entropy), num(r.lambda1), num(r.lambda2), num(r.mu_integral)])
        .collect();
    csv_table(&[describe(&c.params)], &CURVE_HEADER, &rows)
}

fn curve_bytes(c: &Curve, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => curve_csv(c),
        Format::Json => json_bytes(c),
    }
}

fn extension(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

/// Writes one file per bath size under `base`, or everything to stdout.
/// Returns the files written.
pub fn write_curves(curves: &[Curve], format: Format, base: Option<&Path>) -> Result<Vec<PathBuf>> {
    match base {
        Some(base) => {
            let files: Vec<(PathBuf, Vec<u8>)> = curves
                .par_iter()
                .map(|c| Ok((suffixed(base, c.n_bath, extension(format)), curve_bytes(c, format)?)))
                .collect::<Result<_>>()?;
            for (path, bytes) in &files {
                write_atomic(path, bytes)?;
            }
            Ok(files.into_iter().map(|(p, _)| p).collect())
        }
        None => {
            let bytes = match format {
                Format::Csv => {
                    let mut all = Vec::new();
                    for c in curves {
                        all.extend(curve_csv(c)?);
                    }
                    all
                }
                Format::Json => json_bytes(&curves)?,
            };
            emit(None, &bytes)?;
            Ok(Vec::new())
        }
    }
}

pub fn cmd_curve(config: &RunConfig) -> Result<()> {
    let curves = curves(config, config.params)?;
    let written = write_curves(&curves, config.format, config.out.as_deref())?;
    list_paths(&written)
}

/// `(name, g, kappa)` of the three figure parameter sets.
pub const FIGURES: [(&str, f64, f64); 3] = [("fig1", 0.7, 0.3), ("fig2", 0.5, 0.5), ("fig3", 0.3, 0.7)];

pub fn cmd_figures(config: &RunConfig) -> Result<()> {
    let dir = config.out.clone().unwrap_or_else(|| PathBuf::from("figures"));
    let mut written = Vec::new();
    for (name, g, kappa) in FIGURES {
        let base = ModelParams { g, kappa, ..config.params };
        let curves = curves(config, base)?;
        written.extend(write_curves(&curves, config.format, Some(&dir.join(name)))?);
    }
    list_paths(&written)
}

#[derive(Clone, Copy, Debug, Serialize)]
struct AsymptoteOut {
    #[serde(rename = "S_inf")]
    entropy: f64,
    xi: f64,
}

pub fn cmd_asymptote(config: &RunConfig) -> Result<()> {
    let p = config.params_for(config.bath_sizes[0])?;
    let a = asymptote(&p)?;
    let out = AsymptoteOut { entropy: a.entropy, xi: a.xi };
    let bytes = match config.format {
        Format::Csv => csv_table(&[describe(&p)], &["S_inf", "xi"], &[vec![num(a.entropy), num(a.xi)]])?,
        Format::Json => json_bytes(&out)?,
    };
    emit(config.out.as_deref(), &bytes)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeathTime {
    pub n_bath: usize,
    pub t_star: Option<f64>,
}

pub fn death_times(config: &RunConfig) -> Result<Vec<DeathTime>> {
    config
        .bath_sizes
        .par_iter()
        .map(|&n| {
            let sol = MetricSolution::new(config.params_for(n)?)?;
            Ok(DeathTime {
                n_bath: n,
                t_star: sol.sudden_death_time(),
            })
        })
        .collect()
}

pub fn cmd_death_time(config: &RunConfig) -> Result<()> {
    let rows = death_times(config)?;
    let bytes = match config.format {
        Format::Csv => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![r.n_bath.to_string(), r.t_star.map_or_else(|| "none".to_string(), num)])
                .collect();
            csv_table(&[describe(&config.params)], &["N", "t_star"], &table)?
        }
        Format::Json => json_bytes(&rows)?,
    };
    emit(config.out.as_deref(), &bytes)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub n_bath: usize,
    pub e_plus: [f64; 2],
    pub e_minus: [f64; 2],
    /// Largest distance from the formula to the diagonalized sector block.
    pub max_deviation: f64,
}

fn pair_distance(numeric: [C64; 2], plus: C64, minus: C64) -> f64 {
    let direct = (numeric[0] - plus).norm().max((numeric[1] - minus).norm());
    let swapped = (numeric[0] - minus).norm().max((numeric[1] - plus).norm());
    direct.min(swapped)
}

pub fn spectrum_rows(config: &RunConfig) -> Result<Vec<SpectrumRow>> {
    config
        .bath_sizes
        .par_iter()
        .map(|&n| {
            let p = config.params_for(n)?;
            let (plus, minus) = energy_spectrum(&p, 1);
            let numeric = sector_spectrum(&FockBasis::new(n, 1)?, &p);
            Ok(SpectrumRow {
                n_bath: n,
                e_plus: [plus.re, plus.im],
                e_minus: [minus.re, minus.im],
                max_deviation: pair_distance(numeric, plus, minus),
            })
        })
        .collect()
}

pub fn cmd_spectrum(config: &RunConfig) -> Result<()> {
    let rows = spectrum_rows(config)?;
    let bytes = match config.format {
        Format::Csv => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n_bath.to_string(),
                        num(r.e_plus[0]),
                        num(r.e_plus[1]),
                        num(r.e_minus[0]),
                        num(r.e_minus[1]),
                        num(r.max_deviation),
                    ]
                })
                .collect();
            csv_table(
                &[describe(&config.params)],
                &["N", "E_plus_re", "E_plus_im", "E_minus_re", "E_minus_im", "max_deviation"],
                &table,
            )?
        }
        Format::Json => json_bytes(&rows)?,
    };
    emit(config.out.as_deref(), &bytes)
}
