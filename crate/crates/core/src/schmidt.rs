//! Ordered Schmidt vectors and the primitives every criterion is built from.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{AnyScalar, Mode, Rational, Scalar, FLOAT_NORMALIZATION_TOLERANCE};

/// Non-increasing vector of squared Schmidt coefficients summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtVector<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> SchmidtVector<T> {
    /// Validates, normalizes (float mode) and sorts `entries`.
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(neg) = entries.iter().find(|e| e.is_negative()) {
            return Err(Error::NegativeEntry(neg.render()));
        }
        let sum = sum_of(&entries);
        let mut coeffs = match T::MODE {
            Mode::Exact => {
                if sum != T::one() {
                    return Err(Error::BadNormalization(sum.render()));
                }
                entries
            }
            Mode::Float => {
                let dev = (sum.to_f64() - 1.0).abs();
                if !(dev <= FLOAT_NORMALIZATION_TOLERANCE) {
                    return Err(Error::BadNormalization(sum.render()));
                }
                entries.iter().map(|e| e.div(&sum)).collect()
            }
        };
        coeffs.sort_by(|a, b| b.total_cmp(a));
        Ok(SchmidtVector { coeffs })
    }

    /// Parses the comma-separated vector text format.
    pub fn parse(text: &str) -> Result<Self> {
        let entries = text
            .split(',')
            .map(|tok| {
                if tok.trim().is_empty() {
                    Err(Error::Parse(format!("empty token in {text:?}")))
                } else {
                    T::parse_token(tok)
                }
            })
            .collect::<Result<Vec<_>>>();
        if text.trim().is_empty() {
            return Err(Error::EmptyInput);
        }
        Self::new(entries?)
    }

    /// Caller guarantees the invariants (ordering, normalization).
    pub(crate) fn from_sorted(coeffs: Vec<T>) -> Self {
        debug_assert!(!coeffs.is_empty());
        debug_assert!(coeffs.windows(2).all(|w| w[0] >= w[1]));
        SchmidtVector { coeffs }
    }

    /// The product state with a single Schmidt coefficient.
    pub fn product_state() -> Self {
        SchmidtVector { coeffs: vec![T::one()] }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest entry.
    pub fn last(&self) -> &T {
        self.coeffs.last().expect("non-empty by construction")
    }

    /// Number of entries that survive `trim_zeros`.
    pub fn rank(&self) -> usize {
        self.coeffs.len() - self.coeffs.iter().rev().take_while(|c| c.is_negligible()).count()
    }

    pub fn sum(&self) -> T {
        sum_of(&self.coeffs)
    }

    /// Sorted tensor product.
    pub fn tensor(&self, other: &Self) -> Self {
        SchmidtVector { coeffs: T::sorted_products(&self.coeffs, &other.coeffs) }
    }

    /// `n`-fold tensor power; `n = 0` is the product state `(1)`.
    pub fn tensor_power(&self, n: usize) -> Self {
        let mut acc = Self::product_state();
        for _ in 0..n {
            acc = acc.tensor(self);
        }
        acc
    }

    /// Prefix sums `s_k = a_1 + ... + a_k` for `k = 1..len`.
    pub fn partial_sums(&self) -> Vec<T> {
        let mut acc = T::zero();
        self.coeffs
            .iter()
            .map(|c| {
                acc = acc.add(c);
                acc.clone()
            })
            .collect()
    }

    /// `E_k = 1 - (a_1 + ... + a_{k-1})`, with `k` counted from 1.
    pub fn tail(&self, k: usize) -> Result<T> {
        if k == 0 || k > self.len() {
            return Err(Error::IndexOutOfRange { index: k, len: self.len() });
        }
        let head = sum_of(&self.coeffs[..k - 1]);
        Ok(T::one().sub(&head))
    }

    /// Shannon entropy divided by `ln(len)`, evaluated in double precision.
    pub fn normalized_entropy(&self) -> Result<f64> {
        let n = self.len();
        if n < 2 {
            return Err(Error::DimensionTooSmall { got: n, min: 2 });
        }
        let h: f64 = self
            .coeffs
            .iter()
            .map(|c| c.to_f64())
            .filter(|&p| p > 0.0)
            .map(|p| -p * p.ln())
            .sum();
        Ok((h / (n as f64).ln()).clamp(0.0, 1.0))
    }

    /// Drops trailing zero entries (at least one entry is always kept).
    pub fn trim_zeros(&self) -> Self {
        let rank = self.rank().max(1);
        SchmidtVector { coeffs: self.coeffs[..rank].to_vec() }
    }

    /// Appends zeros up to length `n`.
    pub fn pad(&self, n: usize) -> Result<Self> {
        if n < self.len() {
            return Err(Error::IndexOutOfRange { index: n, len: self.len() });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, T::zero());
        Ok(SchmidtVector { coeffs })
    }

    pub fn render(&self) -> String {
        self.coeffs.iter().map(Scalar::render).collect::<Vec<_>>().join(",")
    }
}

impl<T: Scalar> fmt::Display for SchmidtVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

struct MergeHead<T> {
    value: T,
    row: usize,
    col: usize,
}

impl<T: Scalar> PartialEq for MergeHead<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Scalar> Eq for MergeHead<T> {}

impl<T: Scalar> PartialOrd for MergeHead<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for MergeHead<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        // ties broken by row so the merge order is fully determined
        self.value.total_cmp(&other.value).then_with(|| other.row.cmp(&self.row))
    }
}

/// Sorted products as a k-way merge of the rows `a_i * b` (each already
/// sorted), so no global sort is needed.
pub(crate) fn merge_products<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let (rows, cols) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if cols.is_empty() {
        return Vec::new();
    }
    let mut heap: BinaryHeap<MergeHead<T>> = rows
        .iter()
        .enumerate()
        .map(|(row, r)| MergeHead { value: r.mul(&cols[0]), row, col: 0 })
        .collect();
    let mut out = Vec::with_capacity(rows.len() * cols.len());
    while let Some(MergeHead { value, row, col }) = heap.pop() {
        out.push(value);
        if col + 1 < cols.len() {
            heap.push(MergeHead { value: rows[row].mul(&cols[col + 1]), row, col: col + 1 });
        }
    }
    out
}

pub(crate) fn sum_of<T: Scalar>(values: &[T]) -> T {
    T::sum_slice(values)
}

/// Builds a vector from runtime-typed scalars.
pub fn make_vector(entries: Vec<AnyScalar>) -> Result<AnyVector> {
    let Some(first) = entries.first() else {
        return Err(Error::EmptyInput);
    };
    match first.mode() {
        Mode::Exact => {
            let xs = entries
                .into_iter()
                .map(|e| match e {
                    AnyScalar::Exact(r) => Ok(r),
                    AnyScalar::Float(_) => Err(Error::MixedMode),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyVector::Exact(SchmidtVector::new(xs)?))
        }
        Mode::Float => {
            let xs = entries
                .into_iter()
                .map(|e| match e {
                    AnyScalar::Float(x) => Ok(x),
                    AnyScalar::Exact(_) => Err(Error::MixedMode),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyVector::Float(SchmidtVector::new(xs)?))
        }
    }
}

/// Parses the vector text format in the requested mode.
pub fn parse_vector(text: &str, mode: Mode) -> Result<AnyVector> {
    Ok(match mode {
        Mode::Exact => AnyVector::Exact(SchmidtVector::parse(text)?),
        Mode::Float => AnyVector::Float(SchmidtVector::parse(text)?),
    })
}

/// A Schmidt vector whose mode is only known at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyVector {
    Exact(SchmidtVector<Rational>),
    Float(SchmidtVector<f64>),
}

impl AnyVector {
    pub fn mode(&self) -> Mode {
        match self {
            AnyVector::Exact(_) => Mode::Exact,
            AnyVector::Float(_) => Mode::Float,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyVector::Exact(v) => v.len(),
            AnyVector::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn tensor(&self, other: &AnyVector) -> Result<AnyVector> {
        match (self, other) {
            (AnyVector::Exact(a), AnyVector::Exact(b)) => Ok(AnyVector::Exact(a.tensor(b))),
            (AnyVector::Float(a), AnyVector::Float(b)) => Ok(AnyVector::Float(a.tensor(b))),
            _ => Err(Error::MixedMode),
        }
    }

    pub fn render(&self) -> String {
        match self {
            AnyVector::Exact(v) => v.render(),
            AnyVector::Float(v) => v.render(),
        }
    }
}

impl fmt::Display for AnyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
