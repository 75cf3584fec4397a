use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use super::{
    BoundRow, ConvRateRow, EntropyRow, EstimateRecord, ExperimentConfig, GainRow, OutputFormat, ScatterRow,
};
use crate::error::{Error, Result};

/// Typed result of one experiment run.
#[derive(Debug, Clone, PartialEq)]
pub enum ExperimentOutput {
    Estimates(Vec<EstimateRecord>),
    Entropy(Vec<EntropyRow>),
    ConvRate(Vec<ConvRateRow>),
    Gain(Vec<GainRow>),
    Scatter(Vec<ScatterRow>),
    Bound(Vec<BoundRow>),
}

impl ExperimentOutput {
    pub fn columns(&self) -> &'static [&'static str] {
        match self {
            ExperimentOutput::Estimates(_) => &["dim", "trials", "successes", "estimate", "stderr"],
            ExperimentOutput::Entropy(_) => &["dim", "trials", "mean_entropy", "stderr", "page_value"],
            ExperimentOutput::ConvRate(_) => {
                &["dim", "trials", "mean_direct", "stderr_direct", "mean_max", "stderr_max"]
            }
            ExperimentOutput::Gain(_) => &["dim", "trials", "successes", "mean_gain", "stderr"],
            ExperimentOutput::Scatter(_) => &["p_direct", "gain"],
            ExperimentOutput::Bound(_) => &["dim", "lhs", "lhs_stderr", "rhs", "rhs_stderr"],
        }
    }

    pub fn row_count(&self) -> usize {
        match self {
            ExperimentOutput::Estimates(r) => r.len(),
            ExperimentOutput::Entropy(r) => r.len(),
            ExperimentOutput::ConvRate(r) => r.len(),
            ExperimentOutput::Gain(r) => r.len(),
            ExperimentOutput::Scatter(r) => r.len(),
            ExperimentOutput::Bound(r) => r.len(),
        }
    }

    fn rows(&self) -> Vec<Vec<String>> {
        fn s(x: impl ToString) -> String {
            x.to_string()
        }
        match self {
            ExperimentOutput::Estimates(rows) => rows
                .iter()
                .map(|r| vec![s(r.dim), s(r.trials), s(r.successes), s(r.estimate), s(r.stderr)])
                .collect(),
            ExperimentOutput::Entropy(rows) => rows
                .iter()
                .map(|r| vec![s(r.dim), s(r.trials), s(r.mean_entropy), s(r.stderr), s(r.page_value)])
                .collect(),
            ExperimentOutput::ConvRate(rows) => rows
                .iter()
                .map(|r| {
                    vec![
                        s(r.dim),
                        s(r.trials),
                        s(r.mean_direct),
                        s(r.stderr_direct),
                        s(r.mean_max),
                        s(r.stderr_max),
                    ]
                })
                .collect(),
            ExperimentOutput::Gain(rows) => rows
                .iter()
                .map(|r| vec![s(r.dim), s(r.trials), s(r.successes), s(r.mean_gain), s(r.stderr)])
                .collect(),
            ExperimentOutput::Scatter(rows) => rows.iter().map(|r| vec![s(r.p_direct), s(r.gain)]).collect(),
            ExperimentOutput::Bound(rows) => rows
                .iter()
                .map(|r| vec![s(r.dim), s(r.lhs), s(r.lhs_stderr), s(r.rhs), s(r.rhs_stderr)])
                .collect(),
        }
    }

    fn rows_json(&self) -> serde_json::Value {
        fn to_value<T: Serialize>(rows: &[T]) -> serde_json::Value {
            serde_json::to_value(rows).expect("plain records serialize")
        }
        match self {
            ExperimentOutput::Estimates(r) => to_value(r),
            ExperimentOutput::Entropy(r) => to_value(r),
            ExperimentOutput::ConvRate(r) => to_value(r),
            ExperimentOutput::Gain(r) => to_value(r),
            ExperimentOutput::Scatter(r) => to_value(r),
            ExperimentOutput::Bound(r) => to_value(r),
        }
    }

    /// CSV with a leading `#` line echoing the configuration.
    pub fn to_csv(&self, cfg: &ExperimentConfig) -> String {
        let mut out = String::new();
        let dims: Vec<String> = cfg.dims.iter().map(ToString::to_string).collect();
        writeln!(
            out,
            "# majorcat {}, kind={}, seed={}, dims={}, trials={}, copies={}, gain_threshold={}, max_draws={}",
            env!("CARGO_PKG_VERSION"),
            cfg.kind,
            cfg.master_seed,
            dims.join(";"),
            cfg.trials_per_dim,
            cfg.copies,
            cfg.gain_threshold,
            cfg.max_draws
        )
        .unwrap();
        writeln!(out, "{}", self.columns().join(",")).unwrap();
        for row in self.rows() {
            writeln!(out, "{}", row.join(",")).unwrap();
        }
        out
    }

    /// `{"meta": {...}, "rows": [...]}` with one object per CSV row.
    pub fn to_json(&self, cfg: &ExperimentConfig) -> String {
        let doc = json!({
            "meta": {
                "tool": "majorcat",
                "version": env!("CARGO_PKG_VERSION"),
                "kind": cfg.kind,
                "seed": cfg.master_seed,
                "dims": cfg.dims,
                "trials": cfg.trials_per_dim,
                "copies": cfg.copies,
                "gain_threshold": cfg.gain_threshold,
                "max_draws": cfg.max_draws,
            },
            "rows": self.rows_json(),
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("json values serialize");
        text.push('\n');
        text
    }

    pub fn render(&self, cfg: &ExperimentConfig) -> String {
        match cfg.format {
            OutputFormat::Csv => self.to_csv(cfg),
            OutputFormat::Json => self.to_json(cfg),
        }
    }
}

/// Writes the rendered output to `path`.
pub fn write_output(output: &ExperimentOutput, cfg: &ExperimentConfig, path: &Path) -> Result<()> {
    std::fs::write(path, output.render(cfg)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
