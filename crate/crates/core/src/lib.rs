//! Deterministic and stochastic LOCC convertibility, catalysis and
//! self-catalysis of bipartite pure states, decided from Schmidt vectors.
//!
//! Criteria are generic over [`Scalar`]: use [`Rational`] to reproduce
//! worked examples bit-exactly and `f64` for Monte Carlo throughput.

pub mod error;
pub mod experiments;
pub mod locc;
pub mod random_states;
pub mod scalar;
pub mod schmidt;
pub mod slocc;

pub use error::{Error, Result};
pub use locc::{
    extend_dimension, is_catalyst, majorizes, min_self_catalysis_copies, perturb, verdict,
    CatalysisReport, ConversionVerdict,
};
pub use random_states::{haar_schmidt, page_entropy, sample_incomparable_pair, PairSample, SeededStream};
pub use scalar::{AnyScalar, Mode, Rational, Scalar};
pub use schmidt::{make_vector, parse_vector, AnyVector, SchmidtVector};
pub use slocc::{
    can_improve, ceiling, feng_is_catalyst, is_prob_self_catalyst, minimizer_set,
    multi_copy_probability, oracle_is_prob_catalyst, slocc_report, vidal_probability, SloccReport,
};
