//! Haar-random Schmidt vectors and reproducible per-trial random streams.

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::locc::{verdict, ConversionVerdict};
use crate::schmidt::SchmidtVector;

pub type StreamRng = ChaCha8Rng;

/// Identifies one independent random sequence.
///
/// The generator is a ChaCha stream cipher keyed by `master_seed` with
/// `stream_id` selecting the nonce, so sequences are portable and do not
/// depend on how trials are scheduled across threads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeededStream {
    pub master_seed: u64,
    pub stream_id: u64,
}

const TRIAL_BITS: u32 = 40;

impl SeededStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        SeededStream { master_seed, stream_id }
    }

    /// Stream of trial `trial` at dimension `dim`.
    pub fn for_trial(master_seed: u64, dim: usize, trial: u64) -> Self {
        assert!(trial < 1 << TRIAL_BITS, "trial index {trial} exceeds 2^{TRIAL_BITS}");
        SeededStream { master_seed, stream_id: ((dim as u64) << TRIAL_BITS) | trial }
    }

    pub fn rng(&self) -> StreamRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// Schmidt vector of a Haar-random pure state on `C^n ⊗ C^n`.
///
/// Draws an `n x n` matrix of independent standard complex Gaussians; the
/// normalized squared singular values are the Schmidt coefficients.
pub fn haar_schmidt<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SchmidtVector<f64>> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { got: n, min: 2 });
    }
    let g = DMatrix::<Complex<f64>>::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(re, im)
    });
    let mut spectrum: Vec<f64> = g
        .singular_values()
        .iter()
        .map(|s| s * s)
        .map(|p| if p >= -1e-12 { p.max(0.0) } else { p })
        .collect();
    let total: f64 = spectrum.iter().sum();
    for p in &mut spectrum {
        *p /= total;
    }
    SchmidtVector::new(spectrum)
}

/// Mean normalized entanglement entropy of a Haar-random state on `C^d ⊗ C^d`:
/// `(1/ln d) * (sum_{k=d+1}^{d^2} 1/k - (d-1)/(2d))`.
pub fn page_entropy(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { got: d, min: 2 });
    }
    let harmonic: f64 = (d + 1..=d * d).map(|k| 1.0 / k as f64).sum();
    let d = d as f64;
    Ok((harmonic - (d - 1.0) / (2.0 * d)) / d.ln())
}

/// An incomparable pair and how many comparable draws preceded it.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSample {
    pub alpha: SchmidtVector<f64>,
    pub beta: SchmidtVector<f64>,
    pub rejections: u64,
}

/// Draws Haar pairs until one is incomparable, making at most `max_draws` draws.
pub fn sample_incomparable_pair<R: Rng + ?Sized>(n: usize, rng: &mut R, max_draws: u64) -> Result<PairSample> {
    for draw in 0..max_draws {
        let alpha = haar_schmidt(n, rng)?;
        let beta = haar_schmidt(n, rng)?;
        if verdict(&alpha, &beta) == ConversionVerdict::Incomparable {
            return Ok(PairSample { alpha, beta, rejections: draw });
        }
    }
    Err(Error::RejectionBudgetExhausted(max_draws))
}
