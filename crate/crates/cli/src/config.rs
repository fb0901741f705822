//! Run configuration: an optional TOML file overridden by command-line flags.

use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use holant::holant::DEFAULT_ENUM_CAP;
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Human,
    Json,
}

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    mode: Option<Mode>,
    tol: Option<f64>,
    cap: Option<u64>,
    workers: Option<usize>,
    format: Option<Format>,
    seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub tol: f64,
    pub cap: u128,
    pub workers: Option<usize>,
    pub format: Format,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { mode: Mode::Exact, tol: DEFAULT_TOL, cap: DEFAULT_ENUM_CAP, workers: None, format: Format::Human, seed: DEFAULT_SEED }
    }
}

/// Flag values; `None` leaves the file or default value in place.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub mode: Option<Mode>,
    pub tol: Option<f64>,
    pub cap: Option<u128>,
    pub workers: Option<usize>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn load(file: Option<&Path>, o: &Overrides) -> Result<Self> {
        let fc = match file {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
                toml::from_str::<FileConfig>(&text).with_context(|| format!("parsing config {}", p.display()))?
            }
            None => FileConfig::default(),
        };
        let d = RunConfig::default();
        let cfg = RunConfig {
            mode: o.mode.or(fc.mode).unwrap_or(d.mode),
            tol: o.tol.or(fc.tol).unwrap_or(d.tol),
            cap: o.cap.or(fc.cap.map(u128::from)).unwrap_or(d.cap),
            workers: o.workers.or(fc.workers),
            format: o.format.or(fc.format).unwrap_or(d.format),
            seed: o.seed.or(fc.seed).unwrap_or(d.seed),
        };
        if !(cfg.tol > 0.0 && cfg.tol.is_finite()) {
            bail!("tolerance must be a positive finite number, got {}", cfg.tol);
        }
        if cfg.workers == Some(0) {
            bail!("worker count must be at least 1");
        }
        Ok(cfg)
    }
}
