//! Seeded Monte Carlo sweeps over Haar-random pairs.
//!
//! Every trial draws from its own [`SeededStream`](crate::SeededStream)
//! keyed by `(master_seed, dim, trial)`, per-trial outcomes are collected
//! in trial order and reduced sequentially, so results are bit-identical
//! for any worker count.

mod drivers;
mod output;
mod stats;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use drivers::{
    bound_check, run_conv_rate, run_entropy_curve, run_experiment, run_gain, run_gain_scatter, run_selfcat_locc,
    run_selfcat_slocc,
};
pub use output::{write_output, ExperimentOutput};
pub use stats::{bernoulli_stderr, mean_and_stderr};

pub const DEFAULT_GAIN_THRESHOLD: f64 = 1e-5;
pub const DEFAULT_MAX_DRAWS: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExperimentKind {
    /// Deterministic self-catalysis among incomparable pairs.
    #[serde(rename = "selfcat-locc")]
    SelfCatLocc,
    /// Mean normalized entropy against the Page value.
    #[serde(rename = "entropy")]
    EntropyCurve,
    /// Mean SLOCC conversion probabilities among incomparable pairs.
    #[serde(rename = "conv-rate")]
    ConvRate,
    /// Probabilistic self-catalysis among incomparable pairs.
    #[serde(rename = "selfcat-slocc")]
    SelfCatSlocc,
    /// Mean probability gain over self-catalytic pairs.
    #[serde(rename = "gain")]
    GainAvg,
    /// Raw `(p_direct, gain)` rows for self-catalytic pairs at one dimension.
    #[serde(rename = "gain-scatter")]
    GainScatter,
    /// Both sides of the lower bound on the improvable fraction.
    #[serde(rename = "bound")]
    BoundCheck,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        ExperimentKind::SelfCatLocc,
        ExperimentKind::EntropyCurve,
        ExperimentKind::ConvRate,
        ExperimentKind::SelfCatSlocc,
        ExperimentKind::GainAvg,
        ExperimentKind::GainScatter,
        ExperimentKind::BoundCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::SelfCatLocc => "selfcat-locc",
            ExperimentKind::EntropyCurve => "entropy",
            ExperimentKind::ConvRate => "conv-rate",
            ExperimentKind::SelfCatSlocc => "selfcat-slocc",
            ExperimentKind::GainAvg => "gain",
            ExperimentKind::GainScatter => "gain-scatter",
            ExperimentKind::BoundCheck => "bound",
        }
    }

    /// Kinds that condition on incomparable pairs.
    pub fn needs_incomparable_pairs(self) -> bool {
        !matches!(self, ExperimentKind::EntropyCurve | ExperimentKind::BoundCheck)
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::ConfigInvalid(format!("unknown experiment kind {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::ConfigInvalid(format!("unknown output format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub dims: Vec<usize>,
    pub trials_per_dim: u64,
    pub master_seed: u64,
    /// Relative gain `p2 > (1 + threshold) * p1` that counts as SLOCC self-catalysis.
    pub gain_threshold: f64,
    /// Copies of alpha attached as catalyst.
    pub copies: usize,
    /// Pair draws allowed per trial before giving up on incomparability.
    pub max_draws: u64,
    /// Thread count; `None` uses the global pool. Never affects results.
    #[serde(skip)]
    pub workers: Option<usize>,
    pub out_path: Option<PathBuf>,
    pub format: OutputFormat,
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind, dims: Vec<usize>, trials_per_dim: u64, master_seed: u64) -> Self {
        ExperimentConfig {
            kind,
            dims,
            trials_per_dim,
            master_seed,
            gain_threshold: DEFAULT_GAIN_THRESHOLD,
            copies: 1,
            max_draws: DEFAULT_MAX_DRAWS,
            workers: None,
            out_path: None,
            format: OutputFormat::Csv,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::ConfigInvalid(msg));
        if self.trials_per_dim == 0 {
            return bad("trials per dimension must be at least 1".into());
        }
        if self.dims.is_empty() {
            return bad("no dimensions given".into());
        }
        let min_dim = if self.kind.needs_incomparable_pairs() { 3 } else { 2 };
        if let Some(d) = self.dims.iter().find(|&&d| d < min_dim) {
            return bad(format!("dimension {d} below {min_dim} for {}", self.kind));
        }
        if self.kind == ExperimentKind::GainScatter && self.dims.len() != 1 {
            return bad("gain-scatter runs at a single dimension".into());
        }
        if self.gain_threshold.is_nan() || self.gain_threshold < 0.0 {
            return bad(format!("gain threshold {} must be >= 0", self.gain_threshold));
        }
        if self.workers == Some(0) {
            return bad("worker count must be at least 1".into());
        }
        Ok(())
    }
}

/// Bernoulli estimate at one dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub dim: usize,
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub stderr: f64,
}

impl EstimateRecord {
    pub fn bernoulli(dim: usize, successes: u64, trials: u64) -> Self {
        let estimate = successes as f64 / trials as f64;
        EstimateRecord { dim, trials, successes, estimate, stderr: bernoulli_stderr(estimate, trials) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyRow {
    pub dim: usize,
    pub trials: u64,
    pub mean_entropy: f64,
    pub stderr: f64,
    pub page_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvRateRow {
    pub dim: usize,
    pub trials: u64,
    pub mean_direct: f64,
    pub stderr_direct: f64,
    pub mean_max: f64,
    pub stderr_max: f64,
}

/// Mean gain over the self-catalytic pairs at one dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainRow {
    pub dim: usize,
    pub trials: u64,
    pub successes: u64,
    pub mean_gain: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterRow {
    pub p_direct: f64,
    pub gain: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub dim: usize,
    /// Fraction of pairs whose probability some catalyst improves.
    pub lhs: f64,
    pub lhs_stderr: f64,
    /// One half minus the fraction of LOCC-convertible pairs.
    pub rhs: f64,
    pub rhs_stderr: f64,
}

impl BoundRow {
    /// `lhs >= rhs` up to three combined standard errors.
    pub fn holds(&self) -> bool {
        let combined = self.lhs_stderr.hypot(self.rhs_stderr);
        self.lhs >= self.rhs - 3.0 * combined
    }
}
