//! Run configuration: flags over a flat `key = value` file over defaults.

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use ptent_core::ModelParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    Quick,
    Full,
}

/// Invalid flag, config file entry or combination of settings.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn bad(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

/// Settings shared by every subcommand. All optional so that unset flags
/// fall through to the config file.
#[derive(Args, Clone, Debug, Default)]
pub struct Settings {
    #[arg(long, global = true)]
    pub nu: Option<f64>,
    #[arg(long, global = true)]
    pub g: Option<f64>,
    #[arg(long, global = true)]
    pub kappa: Option<f64>,
    /// Bath sizes, comma separated or repeated.
    #[arg(long = "bath-size", global = true, value_delimiter = ',', num_args = 1..)]
    pub bath_size: Option<Vec<usize>>,
    #[arg(long, global = true)]
    pub c1: Option<f64>,
    #[arg(long, global = true)]
    pub c2: Option<f64>,
    /// Initial-state angle; pi/4 is maximally entangled.
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    #[arg(long = "t-start", global = true)]
    pub t_start: Option<f64>,
    #[arg(long = "t-end", global = true)]
    pub t_end: Option<f64>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file (per-bath-size suffix added) or directory for `figures`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub scope: Option<Scope>,
    /// Flat `key = value` file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long = "tamper-mu", global = true, hide = true)]
    pub tamper_mu: Option<f64>,
}

impl Settings {
    /// Fills every unset field from `other`.
    pub fn or(self, other: Settings) -> Settings {
        Settings {
            nu: self.nu.or(other.nu),
            g: self.g.or(other.g),
            kappa: self.kappa.or(other.kappa),
            bath_size: self.bath_size.or(other.bath_size),
            c1: self.c1.or(other.c1),
            c2: self.c2.or(other.c2),
            gamma: self.gamma.or(other.gamma),
            t_start: self.t_start.or(other.t_start),
            t_end: self.t_end.or(other.t_end),
            samples: self.samples.or(other.samples),
            format: self.format.or(other.format),
            out: self.out.or(other.out),
            scope: self.scope.or(other.scope),
            config: self.config.or(other.config),
            tamper_mu: self.tamper_mu.or(other.tamper_mu),
        }
    }

    pub fn parse_file(path: &Path) -> Result<Settings, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read config {}: {e}", path.display())))?;
        Settings::parse_str(&text)
    }

    pub fn parse_str(text: &str) -> Result<Settings, ConfigError> {
        let mut s = Settings::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("config line {}: expected key = value", lineno + 1)))?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            let at = |e: String| bad(format!("config line {}: {key}: {e}", lineno + 1));
            let num = || value.parse::<f64>().map_err(|e| at(e.to_string()));
            match key.as_str() {
                "nu" => s.nu = Some(num()?),
                "g" => s.g = Some(num()?),
                "kappa" => s.kappa = Some(num()?),
                "c1" => s.c1 = Some(num()?),
                "c2" => s.c2 = Some(num()?),
                "gamma" => s.gamma = Some(num()?),
                "t_start" => s.t_start = Some(num()?),
                "t_end" => s.t_end = Some(num()?),
                "samples" => s.samples = Some(value.parse().map_err(|e: std::num::ParseIntError| at(e.to_string()))?),
                "bath_size" => {
                    let sizes = value
                        .split(',')
                        .map(|v| v.trim().parse::<usize>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| at(e.to_string()))?;
                    s.bath_size = Some(sizes);
                }
                "format" => s.format = Some(Format::from_str(value, true).map_err(at)?),
                "scope" => s.scope = Some(Scope::from_str(value, true).map_err(at)?),
                "out" => s.out = Some(PathBuf::from(value)),
                _ => return Err(bad(format!("config line {}: unknown key `{key}`", lineno + 1))),
            }
        }
        Ok(s)
    }

    /// Flags, then the config file they name, then defaults.
    pub fn resolve(self) -> Result<RunConfig, ConfigError> {
        let merged = match &self.config {
            Some(path) => {
                let file = Settings::parse_file(path)?;
                self.or(file)
            }
            None => self,
        };
        RunConfig::from_settings(merged)
    }
}

/// Fully resolved settings. `params.n_bath` holds the first bath size.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub params: ModelParams,
    pub t_start: f64,
    pub t_end: f64,
    pub samples: usize,
    pub bath_sizes: Vec<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub scope: Scope,
    pub tamper_mu: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::from_settings(Settings::default()).expect("defaults are valid")
    }
}

impl RunConfig {
    pub fn from_settings(s: Settings) -> Result<RunConfig, ConfigError> {
        let bath_sizes = s.bath_size.unwrap_or_else(|| (1..=5).collect());
        if bath_sizes.is_empty() {
            return Err(bad("bath-size list is empty"));
        }
        if bath_sizes.contains(&0) {
            return Err(bad("bath sizes must be at least 1"));
        }
        let t_start = s.t_start.unwrap_or(0.0);
        let t_end = s.t_end.unwrap_or(10.0);
        if !(t_start.is_finite() && t_end.is_finite() && t_end > t_start) {
            return Err(bad(format!("need finite t-end > t-start, got [{t_start}, {t_end}]")));
        }
        let samples = s.samples.unwrap_or(2001);
        if samples < 2 {
            return Err(bad(format!("samples must be at least 2, got {samples}")));
        }
        if let Some(f) = s.tamper_mu {
            if !f.is_finite() {
                return Err(bad("tamper factor must be finite"));
            }
        }
        let params = ModelParams {
            nu: s.nu.unwrap_or(1.0),
            g: s.g.unwrap_or(0.7),
            kappa: s.kappa.unwrap_or(0.3),
            n_bath: bath_sizes[0],
            c1: s.c1.unwrap_or(1.0),
            c2: s.c2.unwrap_or(0.0),
            gamma: s.gamma.unwrap_or(FRAC_PI_4),
        };
        Ok(RunConfig {
            params,
            t_start,
            t_end,
            samples,
            bath_sizes,
            format: s.format.unwrap_or(Format::Csv),
            out: s.out,
            scope: s.scope.unwrap_or(Scope::Quick),
            tamper_mu: s.tamper_mu,
        })
    }

    pub fn times(&self) -> Vec<f64> {
        let span = self.t_end - self.t_start;
        let last = (self.samples - 1) as f64;
        (0..self.samples)
            .map(|k| if k + 1 == self.samples { self.t_end } else { self.t_start + span * k as f64 / last })
            .collect()
    }

    /// Validated parameters for one bath size.
    pub fn params_for(&self, n_bath: usize) -> ptent_core::Result<ModelParams> {
        let p = self.params.with_bath(n_bath);
        p.validate()?;
        Ok(p)
    }
}
