use rayon::prelude::*;

use super::stats::{bernoulli_stderr, mean_and_stderr};
use super::{
    BoundRow, ConvRateRow, EntropyRow, EstimateRecord, ExperimentConfig, ExperimentKind, ExperimentOutput, GainRow,
    ScatterRow,
};
use crate::error::{Error, Result};
use crate::locc::majorizes;
use crate::random_states::{haar_schmidt, page_entropy, sample_incomparable_pair, PairSample, SeededStream, StreamRng};
use crate::slocc::{can_improve, vidal_probability};

/// Runs whichever experiment `cfg.kind` names.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    Ok(match cfg.kind {
        ExperimentKind::SelfCatLocc => ExperimentOutput::Estimates(run_selfcat_locc(cfg)?),
        ExperimentKind::SelfCatSlocc => ExperimentOutput::Estimates(run_selfcat_slocc(cfg)?),
        ExperimentKind::EntropyCurve => ExperimentOutput::Entropy(run_entropy_curve(cfg)?),
        ExperimentKind::ConvRate => ExperimentOutput::ConvRate(run_conv_rate(cfg)?),
        ExperimentKind::GainAvg => ExperimentOutput::Gain(run_gain(cfg)?),
        ExperimentKind::GainScatter => ExperimentOutput::Scatter(run_gain_scatter(cfg)?),
        ExperimentKind::BoundCheck => ExperimentOutput::Bound(bound_check(cfg)?),
    })
}

fn prepare(cfg: &ExperimentConfig, kind: ExperimentKind) -> Result<()> {
    if cfg.kind != kind {
        return Err(Error::ConfigInvalid(format!("expected kind {kind}, got {}", cfg.kind)));
    }
    cfg.validate()
}

/// Runs `body` on a pool with the configured worker count.
fn with_workers<R: Send>(cfg: &ExperimentConfig, body: impl FnOnce() -> R + Send) -> Result<R> {
    match cfg.workers {
        None => Ok(body()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::ConfigInvalid(format!("thread pool: {e}")))?;
            Ok(pool.install(body))
        }
    }
}

/// Evaluates `trial` once per trial index, in parallel, returning outcomes in trial order.
fn per_trial<O, F>(cfg: &ExperimentConfig, dim: usize, trial: F) -> Result<Vec<O>>
where
    O: Send,
    F: Fn(&mut StreamRng) -> Result<O> + Sync,
{
    (0..cfg.trials_per_dim)
        .into_par_iter()
        .map(|t| trial(&mut SeededStream::for_trial(cfg.master_seed, dim, t).rng()))
        .collect()
}

fn incomparable_pair(cfg: &ExperimentConfig, dim: usize, rng: &mut StreamRng) -> Result<PairSample> {
    sample_incomparable_pair(dim, rng, cfg.max_draws)
}

/// Direct and self-catalyzed SLOCC probabilities `(p1, p2)` for one incomparable pair.
fn slocc_gain_trial(cfg: &ExperimentConfig, dim: usize, rng: &mut StreamRng) -> Result<(f64, f64)> {
    let PairSample { alpha, beta, .. } = incomparable_pair(cfg, dim, rng)?;
    let power = alpha.tensor_power(cfg.copies);
    let p1 = vidal_probability(&alpha, &beta);
    let p2 = vidal_probability(&alpha.tensor(&power), &beta.tensor(&power));
    Ok((p1, p2))
}

fn is_gain(cfg: &ExperimentConfig, (p1, p2): (f64, f64)) -> bool {
    p2 > (1.0 + cfg.gain_threshold) * p1
}

/// Fraction of incomparable pairs with `alpha ⊗ alpha^N -> beta ⊗ alpha^N`.
pub fn run_selfcat_locc(cfg: &ExperimentConfig) -> Result<Vec<EstimateRecord>> {
    prepare(cfg, ExperimentKind::SelfCatLocc)?;
    with_workers(cfg, || {
        cfg.dims
            .iter()
            .map(|&dim| {
                let hits = per_trial(cfg, dim, |rng| {
                    let PairSample { alpha, beta, .. } = incomparable_pair(cfg, dim, rng)?;
                    let power = alpha.tensor_power(cfg.copies);
                    Ok(majorizes(&alpha.tensor(&power), &beta.tensor(&power)))
                })?;
                Ok(EstimateRecord::bernoulli(dim, count(&hits), cfg.trials_per_dim))
            })
            .collect()
    })?
}

/// Fraction of incomparable pairs whose SLOCC probability grows with alpha attached.
pub fn run_selfcat_slocc(cfg: &ExperimentConfig) -> Result<Vec<EstimateRecord>> {
    prepare(cfg, ExperimentKind::SelfCatSlocc)?;
    with_workers(cfg, || {
        cfg.dims
            .iter()
            .map(|&dim| {
                let hits = per_trial(cfg, dim, |rng| Ok(is_gain(cfg, slocc_gain_trial(cfg, dim, rng)?)))?;
                Ok(EstimateRecord::bernoulli(dim, count(&hits), cfg.trials_per_dim))
            })
            .collect()
    })?
}

/// Monte Carlo mean of the normalized entropy next to the Page value.
pub fn run_entropy_curve(cfg: &ExperimentConfig) -> Result<Vec<EntropyRow>> {
    prepare(cfg, ExperimentKind::EntropyCurve)?;
    with_workers(cfg, || {
        cfg.dims
            .iter()
            .map(|&dim| {
                let values = per_trial(cfg, dim, |rng| haar_schmidt(dim, rng)?.normalized_entropy())?;
                let (mean_entropy, stderr) = mean_and_stderr(&values);
                Ok(EntropyRow { dim, trials: cfg.trials_per_dim, mean_entropy, stderr, page_value: page_entropy(dim)? })
            })
            .collect()
    })?
}

/// Mean of `P(alpha -> beta)` and of the better direction over incomparable pairs.
pub fn run_conv_rate(cfg: &ExperimentConfig) -> Result<Vec<ConvRateRow>> {
    prepare(cfg, ExperimentKind::ConvRate)?;
    with_workers(cfg, || {
        cfg.dims
            .iter()
            .map(|&dim| {
                let probs = per_trial(cfg, dim, |rng| {
                    let PairSample { alpha, beta, .. } = incomparable_pair(cfg, dim, rng)?;
                    let forward = vidal_probability(&alpha, &beta);
                    let backward = vidal_probability(&beta, &alpha);
                    Ok((forward, forward.max(backward)))
                })?;
                let direct: Vec<f64> = probs.iter().map(|p| p.0).collect();
                let best: Vec<f64> = probs.iter().map(|p| p.1).collect();
                let (mean_direct, stderr_direct) = mean_and_stderr(&direct);
                let (mean_max, stderr_max) = mean_and_stderr(&best);
                Ok(ConvRateRow { dim, trials: cfg.trials_per_dim, mean_direct, stderr_direct, mean_max, stderr_max })
            })
            .collect()
    })?
}

/// Mean `p2 - p1` over the pairs that count as self-catalytic.
pub fn run_gain(cfg: &ExperimentConfig) -> Result<Vec<GainRow>> {
    prepare(cfg, ExperimentKind::GainAvg)?;
    with_workers(cfg, || {
        cfg.dims
            .iter()
            .map(|&dim| {
                let pairs = per_trial(cfg, dim, |rng| slocc_gain_trial(cfg, dim, rng))?;
                let gains: Vec<f64> =
                    pairs.into_iter().filter(|&p| is_gain(cfg, p)).map(|(p1, p2)| p2 - p1).collect();
                let (mean_gain, stderr) = mean_and_stderr(&gains);
                Ok(GainRow { dim, trials: cfg.trials_per_dim, successes: gains.len() as u64, mean_gain, stderr })
            })
            .collect()
    })?
}

/// `(p1, p2 - p1)` for every self-catalytic pair, in trial order.
pub fn run_gain_scatter(cfg: &ExperimentConfig) -> Result<Vec<ScatterRow>> {
    prepare(cfg, ExperimentKind::GainScatter)?;
    let dim = cfg.dims[0];
    let pairs = with_workers(cfg, || per_trial(cfg, dim, |rng| slocc_gain_trial(cfg, dim, rng)))??;
    Ok(pairs
        .into_iter()
        .filter(|&p| is_gain(cfg, p))
        .map(|(p1, p2)| ScatterRow { p_direct: p1, gain: p2 - p1 })
        .collect())
}

/// Estimates both sides of `P[improvable] >= 1/2 - P[alpha -> beta]` over
/// unconditioned Haar pairs.
pub fn bound_check(cfg: &ExperimentConfig) -> Result<Vec<BoundRow>> {
    prepare(cfg, ExperimentKind::BoundCheck)?;
    with_workers(cfg, || {
        cfg.dims
            .iter()
            .map(|&dim| {
                let flags = per_trial(cfg, dim, |rng| {
                    let alpha = haar_schmidt(dim, rng)?;
                    let beta = haar_schmidt(dim, rng)?;
                    // a rank mismatch leaves nothing to improve
                    let improvable = can_improve(&alpha, &beta).unwrap_or(false);
                    Ok((improvable, majorizes(&alpha, &beta)))
                })?;
                let trials = cfg.trials_per_dim;
                let improvable = flags.iter().filter(|f| f.0).count() as u64;
                let convertible = flags.iter().filter(|f| f.1).count() as u64;
                let lhs = improvable as f64 / trials as f64;
                let p_conv = convertible as f64 / trials as f64;
                Ok(BoundRow {
                    dim,
                    lhs,
                    lhs_stderr: bernoulli_stderr(lhs, trials),
                    rhs: 0.5 - p_conv,
                    rhs_stderr: bernoulli_stderr(p_conv, trials),
                })
            })
            .collect()
    })?
}

fn count(flags: &[bool]) -> u64 {
    flags.iter().filter(|&&f| f).count() as u64
}
