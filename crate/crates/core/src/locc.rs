//! Deterministic LOCC: majorization, comparability, catalysis and self-catalysis.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Mode, Scalar};
use crate::schmidt::SchmidtVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ConversionVerdict {
    /// alpha -> beta only.
    Forward,
    /// beta -> alpha only.
    Backward,
    /// Both directions.
    Equivalent,
    /// Neither direction.
    Incomparable,
}

impl fmt::Display for ConversionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConversionVerdict::Forward => "Forward",
            ConversionVerdict::Backward => "Backward",
            ConversionVerdict::Equivalent => "Equivalent",
            ConversionVerdict::Incomparable => "Incomparable",
        };
        f.write_str(s)
    }
}

/// Whether `alpha` converts to `beta` under LOCC, i.e. every prefix sum of
/// `alpha` is at most the matching prefix sum of `beta`.
///
/// The shorter vector is implicitly zero-padded, so prefix sums past its
/// length are 1.
pub fn majorizes<T: Scalar>(alpha: &SchmidtVector<T>, beta: &SchmidtVector<T>) -> bool {
    let sa = T::prefix_sums(alpha.coeffs());
    let sb = T::prefix_sums(beta.coeffs());
    let one = T::one();
    // a vector that ran out contributes its full (exactly 1) sum
    (0..sa.len().max(sb.len())).all(|k| sa.get(k).unwrap_or(&one).le_slack(sb.get(k).unwrap_or(&one)))
}

pub fn verdict<T: Scalar>(alpha: &SchmidtVector<T>, beta: &SchmidtVector<T>) -> ConversionVerdict {
    match (majorizes(alpha, beta), majorizes(beta, alpha)) {
        (true, true) => ConversionVerdict::Equivalent,
        (true, false) => ConversionVerdict::Forward,
        (false, true) => ConversionVerdict::Backward,
        (false, false) => ConversionVerdict::Incomparable,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalysisReport<T> {
    pub source: SchmidtVector<T>,
    pub target: SchmidtVector<T>,
    pub catalyst: SchmidtVector<T>,
    pub copies: usize,
    pub direct_verdict: ConversionVerdict,
    pub catalyzed: bool,
}

impl<T> CatalysisReport<T> {
    /// Catalyzed and impossible without the catalyst.
    pub fn is_kappa_access(&self) -> bool {
        self.catalyzed && self.direct_verdict == ConversionVerdict::Incomparable
    }
}

/// Tests `alpha ⊗ kappa^N -> beta ⊗ kappa^N`.
pub fn is_catalyst<T: Scalar>(
    alpha: &SchmidtVector<T>,
    beta: &SchmidtVector<T>,
    kappa: &SchmidtVector<T>,
    copies: usize,
) -> Result<CatalysisReport<T>> {
    if copies == 0 {
        return Err(Error::PreconditionFailed("catalyst copies must be at least 1".into()));
    }
    let power = kappa.tensor_power(copies);
    let catalyzed = majorizes(&alpha.tensor(&power), &beta.tensor(&power));
    Ok(CatalysisReport {
        source: alpha.clone(),
        target: beta.clone(),
        catalyst: kappa.clone(),
        copies,
        direct_verdict: verdict(alpha, beta),
        catalyzed,
    })
}

/// Smallest `N` in `1..=n_max` with `alpha ⊗ alpha^N -> beta ⊗ alpha^N`.
pub fn min_self_catalysis_copies<T: Scalar>(
    alpha: &SchmidtVector<T>,
    beta: &SchmidtVector<T>,
    n_max: usize,
) -> Result<Option<usize>> {
    let v = verdict(alpha, beta);
    if v != ConversionVerdict::Incomparable {
        return Err(Error::NotIncomparable(v.to_string()));
    }
    let mut power = alpha.clone();
    for n in 1..=n_max {
        if majorizes(&alpha.tensor(&power), &beta.tensor(&power)) {
            return Ok(Some(n));
        }
        power = power.tensor(alpha);
    }
    Ok(None)
}

/// Grows both vectors by one dimension:
/// `(a_1, …, a_n - eps, eps)` and `(b_1, …, b_m - eps', eps')`, re-sorted.
///
/// Only constructs the pair; callers re-check whatever verdicts they need.
pub fn extend_dimension<T: Scalar>(
    alpha: &SchmidtVector<T>,
    beta: &SchmidtVector<T>,
    eps: &T,
    eps_prime: &T,
) -> Result<(SchmidtVector<T>, SchmidtVector<T>)> {
    let a_last = alpha.last();
    if eps.is_negative() || eps.is_zero() || eps >= a_last {
        return Err(Error::EpsilonTooLarge { eps: eps.render(), bound: a_last.render() });
    }
    let b_last = beta.last();
    if eps_prime.is_negative() || (!eps_prime.is_zero() && eps_prime >= b_last) {
        return Err(Error::EpsilonTooLarge { eps: eps_prime.render(), bound: b_last.render() });
    }
    Ok((split_last(alpha, eps), split_last(beta, eps_prime)))
}

fn split_last<T: Scalar>(v: &SchmidtVector<T>, eps: &T) -> SchmidtVector<T> {
    let mut coeffs = v.coeffs().to_vec();
    let last = coeffs.pop().expect("non-empty by construction");
    coeffs.push(last.sub(eps));
    coeffs.push(eps.clone());
    coeffs.sort_by(|a, b| b.total_cmp(a));
    SchmidtVector::from_sorted(coeffs)
}

/// Adds centered uniform noise of amplitude `eps` to every entry, clamps at
/// zero, renormalizes and re-sorts.
///
/// The noise is shifted to zero mean, so each entry moves by at most
/// `2 * eps` and the result stays within `2 * eps` of `a` in the sup norm
/// whenever no entry had to be clamped.
pub fn perturb<T: Scalar, R: Rng + ?Sized>(
    a: &SchmidtVector<T>,
    eps: f64,
    rng: &mut R,
) -> Result<SchmidtVector<T>> {
    if T::MODE == Mode::Exact {
        return Err(Error::ExactModeUnsupported);
    }
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(Error::PreconditionFailed(format!("perturbation size {eps} must be finite and >= 0")));
    }
    if eps == 0.0 {
        return Ok(a.clone());
    }
    let noise: Vec<f64> = (0..a.len()).map(|_| rng.random_range(-eps..=eps)).collect();
    let mean = noise.iter().sum::<f64>() / noise.len() as f64;
    let entries: Vec<T> = a
        .coeffs()
        .iter()
        .zip(&noise)
        .map(|(c, u)| T::from_f64((c.to_f64() + (u - mean)).max(0.0)))
        .collect();
    let total = T::sum_slice(&entries);
    let mut coeffs: Vec<T> = entries.iter().map(|e| e.div(&total)).collect();
    coeffs.sort_by(|x, y| y.total_cmp(x));
    Ok(SchmidtVector::from_sorted(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ex(text: &str) -> SchmidtVector<Rational> {
        SchmidtVector::parse(text).unwrap()
    }

    fn fl(text: &str) -> SchmidtVector<f64> {
        SchmidtVector::parse(text).unwrap()
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&ex("1/2,1/2"), &ex("0.9,0.1")));
        assert!(!majorizes(&ex("0.4,0.4,0.1,0.1"), &ex("0.5,0.25,0.25")));
        assert!(!majorizes(&ex("0.5,0.25,0.25"), &ex("0.4,0.4,0.1,0.1")));
        // ties are satisfied
        assert!(majorizes(&ex("0.5,0.5"), &ex("0.5,0.5")));
    }

    #[test]
    fn float_slack_absorbs_rounding() {
        let a = SchmidtVector::new(vec![0.3, 0.3, 0.4]).unwrap();
        let b = SchmidtVector::new(vec![0.1 + 0.2, 0.7 - 1e-13]).unwrap();
        assert!(majorizes(&a, &b));
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(verdict(&ex("0.4,0.4,0.1,0.1"), &ex("0.5,0.25,0.25")), ConversionVerdict::Incomparable);
        let a = ex("0.7,0.2,0.1");
        assert_eq!(verdict(&a, &a), ConversionVerdict::Equivalent);
        assert_eq!(verdict(&ex("1/2,1/2"), &ex("0.9,0.1")), ConversionVerdict::Forward);
        assert_eq!(verdict(&ex("0.9,0.1"), &ex("1/2,1/2")), ConversionVerdict::Backward);
    }

    #[test]
    fn catalysis_examples() {
        let r = is_catalyst(&ex("0.4,0.4,0.1,0.1"), &ex("0.5,0.25,0.25"), &ex("0.6,0.4"), 1).unwrap();
        assert!(r.catalyzed);
        assert_eq!(r.direct_verdict, ConversionVerdict::Incomparable);
        assert!(r.is_kappa_access());
        let (a, b) = (ex("0.5,0.4,0.05,0.05"), ex("0.7,0.15,0.15"));
        assert!(is_catalyst(&a, &b, &ex("0.7,0.3"), 1).unwrap().catalyzed);
        assert!(is_catalyst(&a, &b, &ex("0.75,0.25"), 1).unwrap().catalyzed);
        assert!(!is_catalyst(&a, &b, &ex("1"), 1).unwrap().catalyzed);
        assert!(matches!(is_catalyst(&a, &b, &ex("0.7,0.3"), 0), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn self_catalysis_table_rows() {
        let beta = ex("0.950,0.030,0.020");
        assert_eq!(min_self_catalysis_copies(&ex("0.900,0.081,0.010,0.009"), &beta, 6).unwrap(), Some(1));
        assert_eq!(min_self_catalysis_copies(&ex("0.900,0.088,0.006,0.006"), &beta, 6).unwrap(), Some(2));
        assert_eq!(min_self_catalysis_copies(&ex("0.928,0.060,0.006,0.006"), &beta, 6).unwrap(), Some(6));
        assert_eq!(min_self_catalysis_copies(&ex("0.928,0.060,0.006,0.006"), &beta, 5).unwrap(), None);
        assert_eq!(
            min_self_catalysis_copies(&ex("0.900,0.081,0.010,0.009"), &ex("0.950,0.030,0.019,0.001"), 3).unwrap(),
            Some(1)
        );
    }

    #[test]
    fn self_catalysis_requires_incomparable_pair() {
        let err = min_self_catalysis_copies(&ex("1/2,1/2"), &ex("0.9,0.1"), 3).unwrap_err();
        assert_eq!(err, Error::NotIncomparable("Forward".into()));
    }

    #[test]
    fn extend_dimension_example() {
        let (a, b) = (ex("0.4,0.4,0.1,0.1"), ex("0.5,0.25,0.25"));
        let eps = Rational::parse_token("0.01").unwrap();
        let eps_prime = Rational::parse_token("0.005").unwrap();
        let (a2, b2) = extend_dimension(&a, &b, &eps, &eps_prime).unwrap();
        assert_eq!(a2, ex("0.4,0.4,0.1,0.09,0.01"));
        assert_eq!(b2, ex("0.5,0.25,0.245,0.005"));
        assert_eq!(verdict(&a2, &b2), ConversionVerdict::Incomparable);
        // fourth prefix sums 0.8 > 0.797, so the original catalyst no longer works
        assert!(!is_catalyst(&a2, &b2, &ex("0.6,0.4"), 1).unwrap().catalyzed);
        assert!(is_catalyst(&a2, &b2, &ex("0.62,0.38"), 1).unwrap().catalyzed);
    }

    #[test]
    fn extend_dimension_zero_and_errors() {
        let (a, b) = (fl("0.4,0.4,0.1,0.1"), fl("0.5,0.25,0.25"));
        let (_, b2) = extend_dimension(&a, &b, &0.01, &0.0).unwrap();
        assert_eq!(b2.coeffs(), &[0.5, 0.25, 0.25, 0.0]);
        assert!(matches!(extend_dimension(&a, &b, &0.1, &0.0), Err(Error::EpsilonTooLarge { .. })));
        assert!(matches!(extend_dimension(&a, &b, &0.0, &0.0), Err(Error::EpsilonTooLarge { .. })));
        assert!(matches!(extend_dimension(&a, &b, &0.01, &0.3), Err(Error::EpsilonTooLarge { .. })));
    }

    #[test]
    fn perturb_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = fl("0.900,0.081,0.010,0.009");
        assert_eq!(perturb(&a, 0.0, &mut rng).unwrap(), a);
        let p = perturb(&a, 1e-5, &mut rng).unwrap();
        let dist = a.coeffs().iter().zip(p.coeffs()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        assert!(dist <= 2e-5 + 1e-15, "{dist}");
        let wild = perturb(&fl("1,0"), 1.0, &mut rng).unwrap();
        assert!(wild.coeffs().windows(2).all(|w| w[0] >= w[1]));
        assert!((wild.sum() - 1.0).abs() < 1e-12);
        assert!(wild.coeffs().iter().all(|&c| c >= 0.0));
        assert_eq!(perturb(&ex("1/2,1/2"), 1e-5, &mut rng).unwrap_err(), Error::ExactModeUnsupported);
    }
}
