//! Truncated formal power series with exact rational coefficients.
//!
//! A [`TruncatedSeries`] stores the coefficients of indices `0..order` of a
//! power series in `z`. All arithmetic is exact (arbitrary-precision
//! rationals) and truncation-aware:
//!
//! - binary operations truncate to the minimum order of their operands,
//! - no coefficient beyond the stored order is ever fabricated,
//! - results are independent of evaluation order.
//!
//! Invariants:
//! - `order == coeffs.len()` and `order >= 1`
//! - coefficients are canonical rationals (positive denominator, lowest terms)

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational coefficient. `num_rational` keeps values in canonical form
/// (lowest terms, positive denominator), so equality is value equality.
pub type Coefficient = BigRational;

/// Errors from series construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series order must be at least 1")]
    InvalidOrder,
    #[error("series with zero constant term has no reciprocal")]
    NotInvertible,
    #[error("square root requires constant term exactly 1 (got {0})")]
    UnsupportedRadicand(Coefficient),
    #[error("divisor valuation exceeds dividend valuation")]
    NotDivisible,
    #[error("division by a series that is zero up to its order")]
    DivisionByZero,
    #[error("coefficient index {index} out of range for order {order}")]
    CoeffOutOfRange { index: usize, order: usize },
}

/// A power series known exactly up to (but excluding) `z^order`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Coefficient>,
}

impl TruncatedSeries {
    /// Build a series from low-order coefficients, zero-padded up to `order`.
    /// Coefficients beyond `order` are discarded.
    pub fn from_coeffs(coeffs: &[Coefficient], order: usize) -> Result<Self, SeriesError> {
        if order == 0 {
            return Err(SeriesError::InvalidOrder);
        }
        let mut c: Vec<Coefficient> = coeffs.iter().take(order).cloned().collect();
        c.resize(order, Coefficient::zero());
        Ok(Self { coeffs: c })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(coeffs: &[i64], order: usize) -> Result<Self, SeriesError> {
        let c: Vec<Coefficient> = coeffs
            .iter()
            .map(|&n| Coefficient::from_integer(BigInt::from(n)))
            .collect();
        Self::from_coeffs(&c, order)
    }

    /// The zero series at the given order. Panics if `order == 0`.
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "series order must be at least 1");
        Self {
            coeffs: vec![Coefficient::zero(); order],
        }
    }

    /// The constant series 1. Panics if `order == 0`.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Coefficient::one();
        s
    }

    /// The monomial `c * z^k`. A power at or beyond `order` is congruent to
    /// zero mod `z^order`, so it yields the zero series rather than an error.
    pub fn monomial(c: Coefficient, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Number of known coefficients (indices `0..order`).
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// The `n`-th coefficient.
    pub fn coeff(&self, n: usize) -> Result<&Coefficient, SeriesError> {
        self.coeffs.get(n).ok_or(SeriesError::CoeffOutOfRange {
            index: n,
            order: self.order(),
        })
    }

    /// All known coefficients, lowest power first.
    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient, or `None` if the series is
    /// zero up to its order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Whether the two series agree on indices `0..min(order)`.
    pub fn agrees_up_to_order(&self, other: &Self) -> bool {
        let n = self.order().min(other.order());
        self.coeffs[..n] == other.coeffs[..n]
    }

    /// Restrict to a smaller order. Requires `1 <= order <= self.order()`.
    pub fn truncated(&self, order: usize) -> Result<Self, SeriesError> {
        if order == 0 || order > self.order() {
            return Err(SeriesError::InvalidOrder);
        }
        Ok(Self {
            coeffs: self.coeffs[..order].to_vec(),
        })
    }

    /// Coefficientwise sum, truncated to the minimum order.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..n)
            .map(|i| &self.coeffs[i] + &other.coeffs[i])
            .collect();
        Self { coeffs }
    }

    /// Coefficientwise difference, truncated to the minimum order.
    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..n)
            .map(|i| &self.coeffs[i] - &other.coeffs[i])
            .collect();
        Self { coeffs }
    }

    /// Cauchy product, truncated to the minimum order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![Coefficient::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    /// Multiply every coefficient by a scalar.
    pub fn scale(&self, c: &Coefficient) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse up to the series order, by the coefficient
    /// recurrence b_0 = 1/a_0, b_n = -(1/a_0) * sum_{k=1..n} a_k b_{n-k}.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let n = self.order();
        let inv_a0 = a0.recip();
        let mut out = vec![Coefficient::zero(); n];
        out[0] = inv_a0.clone();
        for i in 1..n {
            let mut acc = Coefficient::zero();
            for k in 1..=i {
                if self.coeffs[k].is_zero() || out[i - k].is_zero() {
                    continue;
                }
                acc += &self.coeffs[k] * &out[i - k];
            }
            if !acc.is_zero() {
                out[i] = -(&inv_a0 * acc);
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Square root of a series with constant term exactly 1, taking the
    /// branch with constant term 1. Recurrence:
    /// r_n = (a_n - sum_{k=1..n-1} r_k r_{n-k}) / 2.
    pub fn sqrt_unit(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::UnsupportedRadicand(self.coeffs[0].clone()));
        }
        let n = self.order();
        let two = Coefficient::from_integer(BigInt::from(2));
        let mut out = vec![Coefficient::zero(); n];
        out[0] = Coefficient::one();
        for i in 1..n {
            let mut acc = self.coeffs[i].clone();
            for k in 1..i {
                if out[k].is_zero() || out[i - k].is_zero() {
                    continue;
                }
                acc -= &out[k] * &out[i - k];
            }
            if !acc.is_zero() {
                out[i] = acc / &two;
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Multiply by `z^k` (`k >= 0`) or divide by `z^-k` (`k < 0`).
    ///
    /// An upward shift genuinely knows `order + k` coefficients; a downward
    /// shift requires the discarded low coefficients to be zero and reduces
    /// the order accordingly.
    pub fn shift(&self, k: i64) -> Result<Self, SeriesError> {
        if k >= 0 {
            let k = k as usize;
            let mut coeffs = vec![Coefficient::zero(); self.order() + k];
            coeffs[k..].clone_from_slice(&self.coeffs);
            Ok(Self { coeffs })
        } else {
            let k = (-k) as usize;
            if k >= self.order() {
                return Err(SeriesError::InvalidOrder);
            }
            if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
                return Err(SeriesError::NotDivisible);
            }
            Ok(Self {
                coeffs: self.coeffs[k..].to_vec(),
            })
        }
    }

    /// Exact division where the divisor may have positive valuation: both
    /// operands are shifted down by the divisor's valuation, then multiplied
    /// by the reciprocal. The result's order shrinks by that valuation.
    pub fn div_valuation(&self, divisor: &Self) -> Result<Self, SeriesError> {
        let v = divisor.valuation().ok_or(SeriesError::DivisionByZero)?;
        if let Some(va) = self.valuation() {
            if va < v {
                return Err(SeriesError::NotDivisible);
            }
        } else if v >= self.order() {
            return Err(SeriesError::InvalidOrder);
        }
        let a = self.shift(-(v as i64))?;
        let b = divisor.shift(-(v as i64))?;
        Ok(a.mul(&b.recip()?))
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "z")?,
                1 => write!(f, "{c}*z")?,
                _ if c.is_one() => write!(f, "z^{i}")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}
