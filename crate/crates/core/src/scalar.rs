//! Numeric modes for Schmidt vector components.
//!
//! Every criterion in this crate is generic over [`Scalar`], which has two
//! implementations: [`Rational`] (exact, arbitrary precision) and `f64`.
//! Keeping the mode in the type means exact and floating-point values can
//! never be combined by accident; the dynamic [`AnyScalar`] wrapper exists
//! for callers (the CLI, fixtures) that only learn the mode at runtime.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Prefix-sum slack used by floating-point majorization checks.
pub const FLOAT_MAJORIZATION_SLACK: f64 = 1e-12;
/// Entries at or below this are trailing zeros in floating-point mode.
pub const FLOAT_ZERO_THRESHOLD: f64 = 1e-15;
/// Accepted distance of an input sum from 1 before renormalization.
pub const FLOAT_NORMALIZATION_TOLERANCE: f64 = 1e-9;
/// Relative tolerance for equality of Vidal ratios in floating-point mode.
pub const FLOAT_RATIO_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

pub trait Scalar: Clone + fmt::Debug + PartialEq + PartialOrd + Send + Sync + 'static {
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_u64(v: u64) -> Self;
    /// Exact conversion of a finite double (every double is a dyadic rational).
    fn from_f64(x: f64) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;

    fn to_f64(&self) -> f64;
    fn is_negative(&self) -> bool;
    fn is_zero(&self) -> bool;

    /// Total order used for sorting; callers never feed NaN.
    fn total_cmp(&self, rhs: &Self) -> Ordering;

    /// Whether a trailing entry is dropped by `trim_zeros`.
    fn is_negligible(&self) -> bool;

    /// `self <= rhs`, with the floating-point majorization slack.
    fn le_slack(&self, rhs: &Self) -> bool;

    /// Equality of two conversion ratios (exact, or relative 1e-10).
    fn ratio_eq(&self, rhs: &Self) -> bool;

    /// Sum of a slice: exact, or Neumaier-compensated in float mode.
    fn sum_slice(values: &[Self]) -> Self {
        values.iter().fold(Self::zero(), |acc, v| acc.add(v))
    }

    /// `v_1, v_1 + v_2, …`. Exact results may be unreduced; use them for comparisons only.
    fn prefix_sums(values: &[Self]) -> Vec<Self> {
        let mut acc = Self::zero();
        values
            .iter()
            .map(|v| {
                acc = acc.add(v);
                acc.clone()
            })
            .collect()
    }

    /// `s_k = v_k + … + v_last`, accumulated from the small end. Same caveat as [`Scalar::prefix_sums`].
    fn suffix_sums(values: &[Self]) -> Vec<Self> {
        let mut out = values.to_vec();
        let mut acc = Self::zero();
        for (o, v) in out.iter_mut().zip(values).rev() {
            acc = acc.add(v);
            *o = acc.clone();
        }
        out
    }

    /// Compares `a_num / a_den` with `b_num / b_den` for positive denominators.
    fn quotient_cmp(a_num: &Self, a_den: &Self, b_num: &Self, b_den: &Self) -> Ordering {
        a_num.mul(b_den).total_cmp(&b_num.mul(a_den))
    }

    /// [`Scalar::ratio_eq`] applied to two quotients.
    fn quotient_eq(a_num: &Self, a_den: &Self, b_num: &Self, b_den: &Self) -> bool {
        a_num.div(a_den).ratio_eq(&b_num.div(b_den))
    }

    /// All products `x * y`, sorted non-increasing.
    fn sorted_products(rows: &[Self], cols: &[Self]) -> Vec<Self> {
        crate::schmidt::merge_products(rows, cols)
    }

    /// Parse one token of the vector text format.
    fn parse_token(token: &str) -> Result<Self>;

    /// Canonical rendering: `p/q` in exact mode, shortest round-trip decimal in float mode.
    fn render(&self) -> String;
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_u64(v: u64) -> Self {
        v as f64
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn total_cmp(&self, rhs: &Self) -> Ordering {
        f64::total_cmp(self, rhs)
    }
    fn is_negligible(&self) -> bool {
        *self <= FLOAT_ZERO_THRESHOLD
    }
    fn le_slack(&self, rhs: &Self) -> bool {
        *self <= *rhs + FLOAT_MAJORIZATION_SLACK
    }
    fn ratio_eq(&self, rhs: &Self) -> bool {
        let scale = self.abs().max(rhs.abs());
        (self - rhs).abs() <= FLOAT_RATIO_TOLERANCE * scale
    }
    fn sum_slice(values: &[Self]) -> Self {
        compensated_sum(values)
    }
    fn parse_token(token: &str) -> Result<Self> {
        let token = token.trim();
        let value = match token.split_once('/') {
            Some((p, q)) => parse_f64(p)? / parse_f64(q)?,
            None => parse_f64(token)?,
        };
        if !value.is_finite() {
            return Err(Error::Parse(format!("non-finite value {token:?}")));
        }
        Ok(value)
    }
    fn render(&self) -> String {
        format!("{self}")
    }
}

/// Neumaier summation.
pub fn compensated_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn parse_f64(s: &str) -> Result<f64> {
    let s = s.trim();
    let v = f64::from_str(s).map_err(|_| Error::Parse(format!("invalid number {s:?}")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("non-finite value {s:?}")));
    }
    Ok(v)
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_u64(v: u64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_f64(x: f64) -> Self {
        Rational::from_float(x).expect("finite value")
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn total_cmp(&self, rhs: &Self) -> Ordering {
        self.cmp(rhs)
    }
    fn is_negligible(&self) -> bool {
        Zero::is_zero(self)
    }
    fn le_slack(&self, rhs: &Self) -> bool {
        self <= rhs
    }
    fn ratio_eq(&self, rhs: &Self) -> bool {
        self == rhs
    }
    fn prefix_sums(values: &[Self]) -> Vec<Self> {
        let (denom, numers) = over_common_denominator(values);
        let mut acc = BigInt::zero();
        numers
            .into_iter()
            .map(|n| {
                acc += n;
                Rational::new_raw(acc.clone(), denom.clone())
            })
            .collect()
    }
    fn suffix_sums(values: &[Self]) -> Vec<Self> {
        let (denom, numers) = over_common_denominator(values);
        let mut acc = BigInt::zero();
        let mut out: Vec<Rational> = numers
            .into_iter()
            .rev()
            .map(|n| {
                acc += n;
                Rational::new_raw(acc.clone(), denom.clone())
            })
            .collect();
        out.reverse();
        out
    }
    fn quotient_cmp(a_num: &Self, a_den: &Self, b_num: &Self, b_den: &Self) -> Ordering {
        // (p/q) / (r/s) = p s / (q r), with every factor positive except possibly p
        let lhs = a_num.numer() * a_den.denom() * b_num.denom() * b_den.numer();
        let rhs = b_num.numer() * b_den.denom() * a_num.denom() * a_den.numer();
        lhs.cmp(&rhs)
    }
    fn quotient_eq(a_num: &Self, a_den: &Self, b_num: &Self, b_den: &Self) -> bool {
        Self::quotient_cmp(a_num, a_den, b_num, b_den) == Ordering::Equal
    }
    fn sorted_products(rows: &[Self], cols: &[Self]) -> Vec<Self> {
        let (dr, nr) = over_common_denominator(rows);
        let (dc, nc) = over_common_denominator(cols);
        let mut products: Vec<BigInt> = nr.iter().flat_map(|x| nc.iter().map(move |y| x * y)).collect();
        products.sort_unstable_by(|x, y| y.cmp(x));
        let denom = dr * dc;
        let mut out: Vec<Rational> = Vec::with_capacity(products.len());
        let mut previous: Option<BigInt> = None;
        for p in products {
            // equal products are adjacent, so each distinct value is reduced once
            let value = match (&previous, out.last()) {
                (Some(prev), Some(last)) if *prev == p => last.clone(),
                _ => Rational::new(p.clone(), denom.clone()),
            };
            out.push(value);
            previous = Some(p);
        }
        out
    }
    fn parse_token(token: &str) -> Result<Self> {
        let token = token.trim();
        match token.split_once('/') {
            Some((p, q)) => {
                let p = parse_decimal(p)?;
                let q = parse_decimal(q)?;
                if Zero::is_zero(&q) {
                    return Err(Error::Parse(format!("zero denominator in {token:?}")));
                }
                Ok(p / q)
            }
            None => parse_decimal(token),
        }
    }
    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Rewrites `values` as integer numerators over their least common denominator.
fn over_common_denominator(values: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let mut denom = BigInt::one();
    let mut last: Option<&BigInt> = None;
    for v in values {
        if last != Some(v.denom()) && !(&denom % v.denom()).is_zero() {
            denom = denom.lcm(v.denom());
        }
        last = Some(v.denom());
    }
    let mut scale = BigInt::one();
    let mut last: Option<&BigInt> = None;
    let numers = values
        .iter()
        .map(|v| {
            if last != Some(v.denom()) {
                scale = &denom / v.denom();
                last = Some(v.denom());
            }
            v.numer() * &scale
        })
        .collect();
    (denom, numers)
}

/// Parses a decimal literal (`-1.25`, `.5`, `3e-2`) into the exact rational it denotes.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid decimal literal {s:?}"));
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let exp: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str(&all_digits).map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// A scalar whose mode is only known at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyScalar {
    Exact(Rational),
    Float(f64),
}

impl AnyScalar {
    pub fn mode(&self) -> Mode {
        match self {
            AnyScalar::Exact(_) => Mode::Exact,
            AnyScalar::Float(_) => Mode::Float,
        }
    }

    pub fn parse(token: &str, mode: Mode) -> Result<Self> {
        Ok(match mode {
            Mode::Exact => AnyScalar::Exact(Rational::parse_token(token)?),
            Mode::Float => AnyScalar::Float(f64::parse_token(token)?),
        })
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            AnyScalar::Exact(r) => Scalar::to_f64(r),
            AnyScalar::Float(x) => *x,
        }
    }
}

impl fmt::Display for AnyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyScalar::Exact(r) => f.write_str(&r.render()),
            AnyScalar::Float(x) => f.write_str(&x.render()),
        }
    }
}

/// Rounds `x` half-away-from-zero to `places` decimals, exactly.
pub fn round_decimal(x: &Rational, places: u32) -> Rational {
    let scale = Rational::from_integer(num_traits::pow(BigInt::from(10u8), places as usize));
    (x * &scale).round() / scale
}
