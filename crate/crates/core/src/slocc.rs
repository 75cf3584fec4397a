//! Stochastic LOCC: optimal conversion probability, its catalytic ceiling,
//! and the probabilistic catalyst criterion.
//!
//! Index convention: every index that crosses this module's public surface
//! (the minimizer set `L`, the tuple entries `r_i`) is 1-based, exactly as in
//! the mathematical statements. [`Aligned::beta_at`] is the single place
//! where a 1-based index is mapped onto a 0-based slice position; it maps
//! the sentinel `n + 1` to `None`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::schmidt::SchmidtVector;

/// Optimal single-copy conversion data for a pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SloccReport<T> {
    /// Optimal probability of alpha -> beta.
    pub p_direct: T,
    /// Interior indices attaining the minimum; empty when not improvable.
    pub minimizer_set: BTreeSet<usize>,
    /// `min(alpha_n / beta_n, 1)`.
    pub ceiling: T,
    /// Some catalyst raises `p_direct`.
    pub improvable: bool,
}

/// `alpha` trimmed to its rank `n` and `beta` zero-padded to length `n`.
struct Aligned<T> {
    alpha: Vec<T>,
    beta: Vec<T>,
}

impl<T: Scalar> Aligned<T> {
    /// `None` when beta has the larger Schmidt rank.
    fn new(alpha: &SchmidtVector<T>, beta: &SchmidtVector<T>) -> Option<Self> {
        let n = alpha.rank();
        if beta.rank() > n {
            return None;
        }
        let alpha = alpha.coeffs()[..n].to_vec();
        let mut beta = beta.coeffs()[..beta.rank()].to_vec();
        beta.resize(n, T::zero());
        Some(Aligned { alpha, beta })
    }

    fn n(&self) -> usize {
        self.alpha.len()
    }

    /// `beta_r` for `1 <= r <= n`; `None` for the sentinel `r = n + 1`.
    fn beta_at(&self, r: usize) -> Option<&T> {
        debug_assert!(r >= 1 && r <= self.n() + 1);
        self.beta.get(r - 1)
    }

    /// `(E_k(alpha), E_k(beta))` for `k = 1..=n`.
    ///
    /// Tails are accumulated from the small end, which keeps float-mode
    /// tails accurate and makes the tail of a zero block exactly zero.
    /// `E_1` is 1 by definition.
    fn tails(&self) -> Vec<(T, T)> {
        let mut out: Vec<(T, T)> =
            T::suffix_sums(&self.alpha).into_iter().zip(T::suffix_sums(&self.beta)).collect();
        out[0] = (T::one(), T::one());
        out
    }

    /// Minimum of `E_k(alpha)/E_k(beta)` over `k` with `E_k(beta) > 0`.
    fn probability(&self) -> T {
        let (num, den) = self.minimum(&self.tails());
        num.div(&den)
    }

    /// The tail pair attaining the minimal ratio.
    fn minimum(&self, tails: &[(T, T)]) -> (T, T) {
        let mut best: Option<&(T, T)> = None;
        for t in tails.iter().filter(|(_, tb)| !tb.is_zero()) {
            let better = match best {
                None => true,
                Some((bn, bd)) => T::quotient_cmp(&t.0, &t.1, bn, bd) == Ordering::Less,
            };
            if better {
                best = Some(t);
            }
        }
        best.expect("E_1(beta) = 1 is always a candidate").clone()
    }

    fn ceiling(&self) -> T {
        let a_n = self.alpha.last().expect("rank >= 1");
        let b_n = self.beta.last().expect("rank >= 1");
        if b_n.is_zero() {
            return T::one();
        }
        let r = a_n.div(b_n);
        if r < T::one() {
            r
        } else {
            T::one()
        }
    }

    fn report(&self) -> SloccReport<T> {
        let tails = self.tails();
        let (num, den) = self.minimum(&tails);
        let p_direct = num.div(&den);
        let ceiling = self.ceiling();
        let improvable = p_direct < ceiling && !p_direct.ratio_eq(&ceiling);
        let minimizer_set = if improvable { self.minimizers(&tails, &num, &den) } else { BTreeSet::new() };
        SloccReport { p_direct, minimizer_set, ceiling, improvable }
    }

    fn minimizers(&self, tails: &[(T, T)], num: &T, den: &T) -> BTreeSet<usize> {
        let n = self.n();
        tails
            .iter()
            .enumerate()
            .map(|(idx, t)| (idx + 1, t))
            .filter(|(l, (_, tb))| *l > 1 && *l < n && !tb.is_zero())
            .filter(|(_, (ta, tb))| T::quotient_eq(ta, tb, num, den))
            .map(|(l, _)| l)
            .collect()
    }
}

/// Optimal probability of converting alpha into beta by SLOCC.
///
/// Zero when beta has the larger Schmidt rank.
pub fn vidal_probability<T: Scalar>(alpha: &SchmidtVector<T>, beta: &SchmidtVector<T>) -> T {
    match Aligned::new(alpha, beta) {
        Some(al) => al.probability(),
        None => T::zero(),
    }
}

/// Probability of `alpha ⊗ alpha^N -> beta ⊗ alpha^N`.
pub fn multi_copy_probability<T: Scalar>(alpha: &SchmidtVector<T>, beta: &SchmidtVector<T>, copies: usize) -> T {
    let power = alpha.tensor_power(copies);
    vidal_probability(&alpha.tensor(&power), &beta.tensor(&power))
}

/// [`multi_copy_probability`] for every `N` in `0..=n_max`, sharing the powers.
pub fn multi_copy_series<T: Scalar>(alpha: &SchmidtVector<T>, beta: &SchmidtVector<T>, n_max: usize) -> Vec<T> {
    let mut power = SchmidtVector::product_state();
    let mut out = Vec::with_capacity(n_max + 1);
    for _ in 0..=n_max {
        out.push(vidal_probability(&alpha.tensor(&power), &beta.tensor(&power)));
        power = power.tensor(alpha);
    }
    out
}

fn aligned<T: Scalar>(alpha: &SchmidtVector<T>, beta: &SchmidtVector<T>) -> Result<Aligned<T>> {
    Aligned::new(alpha, beta).ok_or(Error::RankMismatch { source_rank: alpha.rank(), target_rank: beta.rank() })
}

/// `min(alpha_n / beta_n, 1)`: no catalyst can push the conversion probability past it.
pub fn ceiling<T: Scalar>(alpha: &SchmidtVector<T>, beta: &SchmidtVector<T>) -> Result<T> {
    Ok(aligned(alpha, beta)?.ceiling())
}

/// Whether some catalyst strictly raises the optimal probability.
pub fn can_improve<T: Scalar>(alpha: &SchmidtVector<T>, beta: &SchmidtVector<T>) -> Result<bool> {
    Ok(aligned(alpha, beta)?.report().improvable)
}

pub fn slocc_report<T: Scalar>(alpha: &SchmidtVector<T>, beta: &SchmidtVector<T>) -> Result<SloccReport<T>> {
    Ok(aligned(alpha, beta)?.report())
}

/// Interior indices `1 < l < n` (1-based) where `E_l(alpha)/E_l(beta)`
/// attains the optimal probability.
pub fn minimizer_set<T: Scalar>(alpha: &SchmidtVector<T>, beta: &SchmidtVector<T>) -> Result<BTreeSet<usize>> {
    let report = slocc_report(alpha, beta)?;
    if !report.improvable {
        return Err(not_improvable(&report));
    }
    Ok(report.minimizer_set)
}

fn not_improvable<T: Scalar>(report: &SloccReport<T>) -> Error {
    Error::PreconditionFailed(format!(
        "probability {} already equals the ceiling {}",
        report.p_direct.render(),
        report.ceiling.render()
    ))
}

/// Decides whether `kappa` is a probabilistic catalyst for alpha -> beta
/// by the combinatorial criterion over the minimizer set `L`.
///
/// Every non-increasing tuple `r_1 >= … >= r_k` drawn from `L ∪ {n+1}` with
/// `r_k != n+1` needs a witness `j < i` satisfying
/// `kappa_i/kappa_j < beta_{r_j}/beta_{r_i - 1}` or
/// `kappa_i/kappa_j > beta_{r_j - 1}/beta_{r_i}`; an inequality that touches
/// `beta_{n+1}` counts as violated.
pub fn feng_is_catalyst<T: Scalar>(
    alpha: &SchmidtVector<T>,
    beta: &SchmidtVector<T>,
    kappa: &SchmidtVector<T>,
) -> Result<bool> {
    let al = aligned(alpha, beta)?;
    let report = al.report();
    if !report.improvable {
        return Err(not_improvable(&report));
    }
    let kappa = kappa.trim_zeros();
    let kappa = kappa.coeffs();
    let sentinel = al.n() + 1;
    // descending so that tuples come out non-increasing
    let mut symbols: Vec<usize> = report.minimizer_set.iter().rev().copied().collect();
    symbols.insert(0, sentinel);

    let mut tuple = Vec::with_capacity(kappa.len());
    Ok(every_tuple(&symbols, kappa.len(), sentinel, &mut tuple, &mut |r| has_witness(&al, kappa, r)))
}

/// Depth-first enumeration of non-increasing tuples (positions index
/// `symbols`, which is sorted descending); returns false at the first tuple
/// rejected by `check`.
fn every_tuple(
    symbols: &[usize],
    len: usize,
    sentinel: usize,
    tuple: &mut Vec<usize>,
    check: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if tuple.len() == len {
        return *tuple.last().expect("len >= 1") == sentinel || check(tuple);
    }
    let start = match tuple.last() {
        Some(prev) => symbols.iter().position(|s| s == prev).expect("symbol from the list"),
        None => 0,
    };
    for idx in start..symbols.len() {
        tuple.push(symbols[idx]);
        let ok = every_tuple(symbols, len, sentinel, tuple, check);
        tuple.pop();
        if !ok {
            return false;
        }
    }
    true
}

fn has_witness<T: Scalar>(al: &Aligned<T>, kappa: &[T], r: &[usize]) -> bool {
    let k = kappa.len();
    for i in 1..k {
        for j in 0..i {
            let (ki, kj) = (&kappa[i], &kappa[j]);
            let (ri, rj) = (r[i], r[j]);
            // kappa_i/kappa_j < beta_{r_j}/beta_{r_i - 1}
            if let (Some(b_rj), Some(b_ri_prev)) = (al.beta_at(rj), al.beta_at(ri - 1)) {
                if ki.mul(b_ri_prev) < b_rj.mul(kj) {
                    return true;
                }
            }
            // kappa_i/kappa_j > beta_{r_j - 1}/beta_{r_i}
            if let (Some(b_rj_prev), Some(b_ri)) = (al.beta_at(rj - 1), al.beta_at(ri)) {
                if ki.mul(b_ri) > b_rj_prev.mul(kj) {
                    return true;
                }
            }
        }
    }
    false
}

/// The criterion with the source state itself as the catalyst.
pub fn is_prob_self_catalyst<T: Scalar>(alpha: &SchmidtVector<T>, beta: &SchmidtVector<T>) -> Result<bool> {
    feng_is_catalyst(alpha, beta, alpha)
}

/// Brute-force check: attach `kappa` and recompute the optimal probability.
pub fn oracle_is_prob_catalyst<T: Scalar>(
    alpha: &SchmidtVector<T>,
    beta: &SchmidtVector<T>,
    kappa: &SchmidtVector<T>,
) -> bool {
    vidal_probability(&alpha.tensor(kappa), &beta.tensor(kappa)) > vidal_probability(alpha, beta)
}
