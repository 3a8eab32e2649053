//! Direct coefficient formulas and generating functions for the named
//! lattice-path families, plus the small exact-integer identities that tie
//! them together.
//!
//! Everything here is exact: the only division that appears (the `n/(n+2k)`
//! factor in Catalan powers, the `1/n` in Narayana numbers) is checked to be
//! an integer before the value is returned.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::automaton::ParallelTransition;
use crate::combinatorics::{binomial, catalan_numbers, ipow};
use crate::engine::{uniform_radical, EngineError};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("prefix of length {have} is too short: index {need} is required")]
    InsufficientPrefix { have: usize, need: usize },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

fn require_positive(name: &'static str, k: u64) -> Result<(), FamilyError> {
    if k == 0 {
        return Err(FamilyError::InvalidParameter {
            name,
            reason: "must be at least 1".into(),
        });
    }
    Ok(())
}

/// The `n`-th Catalan number, by the recurrence
/// `C_0 = 1`, `C_{n+1} = sum_i C_i C_{n-i}`.
pub fn catalan(n: usize) -> BigInt {
    catalan_numbers(n + 1).pop().unwrap()
}

/// Motzkin number `m_s = sum_n C_n binom(s, 2n)`.
pub fn motzkin_coeff(s: usize) -> BigInt {
    let cats = catalan_numbers(s / 2 + 1);
    let mut acc = BigInt::zero();
    for (n, cat) in cats.iter().enumerate() {
        acc += cat * binomial(s as i64, 2 * n as i64);
    }
    acc
}

/// k-colored Motzkin number `sum_n C_n binom(s, 2n) k^{s-2n}`.
pub fn kcolored_coeff(s: usize, k: u64) -> Result<BigInt, FamilyError> {
    require_positive("k", k)?;
    let kb = BigInt::from(k);
    let cats = catalan_numbers(s / 2 + 1);
    let mut acc = BigInt::zero();
    for (n, cat) in cats.iter().enumerate() {
        acc += cat * binomial(s as i64, 2 * n as i64) * ipow(&kb, (s - 2 * n) as u64);
    }
    Ok(acc)
}

/// GF of Motzkin paths: the uniform radical with f = g = h = z.
pub fn motzkin_gf(order: usize) -> TruncatedSeries {
    let z = ParallelTransition::unit(order + 2);
    uniform_radical(&z, &z, &z, order).expect("weights carry enough headroom")
}

/// GF of paths whose level step has length `k`:
/// `(1 - z^k - sqrt((1 - z^k)^2 - 4z^2)) / (2z^2)`. `k = 2` gives the
/// Schroeder numbers on the even positions.
pub fn gen_motzkin_gf(k: u64, order: usize) -> Result<TruncatedSeries, FamilyError> {
    require_positive("k", k)?;
    let z = ParallelTransition::unit(order + 2);
    let h = ParallelTransition::monomial(1u32, k as usize, order + 2);
    Ok(uniform_radical(&z, &z, &h, order)?)
}

/// GF of floor-constrained paths with rises, falls and level steps of every
/// length in `k` colors: the uniform radical with `h = kz/(1-z)`.
pub fn fk_gf(k: u64, order: usize) -> Result<TruncatedSeries, FamilyError> {
    require_positive("k", k)?;
    let z = ParallelTransition::unit(order + 2);
    let h = ParallelTransition::geometric(k, order + 2);
    Ok(uniform_radical(&z, &z, &h, order)?)
}

/// Coefficient formula for [`fk_gf`]:
/// `f^(k)_s = sum_{n,m} C_n binom(m+2n, m) binom(s-2n-1, s-m-2n) k^m`,
/// with the binomial conventions of [`crate::combinatorics::binomial`].
pub fn fk_coeff(s: usize, k: u64) -> Result<BigInt, FamilyError> {
    require_positive("k", k)?;
    let kb = BigInt::from(k);
    let cats = catalan_numbers(s / 2 + 1);
    let s = s as i64;
    let mut acc = BigInt::zero();
    for (n, cat) in cats.iter().enumerate() {
        let n = n as i64;
        for m in 0..=(s - 2 * n).max(0) {
            let b1 = binomial(m + 2 * n, m);
            let b2 = binomial(s - 2 * n - 1, s - m - 2 * n);
            if b1.is_zero() || b2.is_zero() {
                continue;
            }
            acc += cat * b1 * b2 * ipow(&kb, m as u64);
        }
    }
    Ok(acc)
}

/// Coefficient of the two-sided Motzkin GF:
/// `1 + sum_{n>=1} sum_k 2^n (n/(n+2k)) binom(n+2k, k) binom(s, 2n+2k)`.
pub fn grand_motzkin_coeff(s: usize) -> BigInt {
    let mut acc = BigInt::one();
    let two = BigInt::from(2);
    for n in 1..=(s / 2) {
        for k in 0..=((s - 2 * n) / 2) {
            let b = binomial(s as i64, (2 * n + 2 * k) as i64);
            if b.is_zero() {
                continue;
            }
            acc += ipow(&two, n as u64) * catalan_power(n as u64, k as u64) * b;
        }
    }
    acc
}

/// Generalized central trinomial coefficient (the coefficient of `x^n` in
/// `(a + bx + cx^2)^n`):
/// `T*_n = sum_k binom(2k, k) binom(n, 2k) b^{n-2k} (ac)^k`.
pub fn trinomial_coeff(a: u64, b: u64, c: u64, n: usize) -> BigInt {
    let (a, b, c) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
    let ac = &a * &c;
    let mut acc = BigInt::zero();
    for k in 0..=(n / 2) {
        acc += binomial(2 * k as i64, k as i64)
            * binomial(n as i64, 2 * k as i64)
            * ipow(&b, (n - 2 * k) as u64)
            * ipow(&ac, k as u64);
    }
    acc
}

/// GF of Motzkin paths with no level step on the axis, computed as
/// `R = 1 / (1 - z^2 M)`; it also satisfies `R = 1 + z^2 M R`,
/// `(1+z) R = 1 + z M` and the radical form
/// `(1 + z - sqrt(1 - 2z - 3z^2)) / (2z(1+z))`.
pub fn riordan_gf(order: usize) -> TruncatedSeries {
    let m = motzkin_gf(order);
    let z2m = m.shift(2).expect("upward shift");
    let one = TruncatedSeries::one(z2m.order());
    one.sub(&z2m)
        .recip()
        .expect("constant term 1")
        .truncated(order)
        .expect("order shrank")
}

/// The convolution `r_n = sum_{j=0}^{n-2} m_j r_{n-j-2}` given prefixes of
/// the two sequences. Empty for `n < 2`.
pub fn riordan_recurrence(
    n: usize,
    motzkin_prefix: &[BigInt],
    riordan_prefix: &[BigInt],
) -> Result<BigInt, FamilyError> {
    if n < 2 {
        return Ok(BigInt::zero());
    }
    let need = n - 1;
    for have in [motzkin_prefix.len(), riordan_prefix.len()] {
        if have < need {
            return Err(FamilyError::InsufficientPrefix { have, need });
        }
    }
    let mut acc = BigInt::zero();
    for j in 0..=(n - 2) {
        acc += &motzkin_prefix[j] * &riordan_prefix[n - j - 2];
    }
    Ok(acc)
}

/// Narayana number `N(n, k) = (1/n) binom(n, k) binom(n, k-1)` for
/// `1 <= k <= n`; the division is exact.
pub fn narayana(n: u64, k: u64) -> Result<BigInt, FamilyError> {
    require_positive("n", n)?;
    if k < 1 || k > n {
        return Err(FamilyError::InvalidParameter {
            name: "k",
            reason: format!("must satisfy 1 <= k <= n = {n}"),
        });
    }
    let prod = binomial(n as i64, k as i64) * binomial(n as i64, k as i64 - 1);
    let (q, r) = num_integer_div_rem(&prod, &BigInt::from(n));
    debug_assert!(r.is_zero(), "Narayana division must be exact");
    Ok(q)
}

/// `[u^k] C(u)^n = (n/(n+2k)) binom(n+2k, k)` for `n >= 1`; the rational
/// factor always cancels to an integer.
pub fn catalan_power_coeff(n: u64, k: u64) -> Result<BigInt, FamilyError> {
    require_positive("n", n)?;
    Ok(catalan_power(n, k))
}

fn catalan_power(n: u64, k: u64) -> BigInt {
    let prod = BigInt::from(n) * binomial((n + 2 * k) as i64, k as i64);
    let (q, r) = num_integer_div_rem(&prod, &BigInt::from(n + 2 * k));
    debug_assert!(r.is_zero(), "Catalan power division must be exact");
    q
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (a / b, a % b)
}

/// Coefficients of a counting series as integers; the series of every
/// counting family is integral by construction.
pub fn integer_terms(series: &TruncatedSeries, n: usize) -> Vec<BigInt> {
    assert!(
        n < series.order(),
        "requested term {n} of a series of order {}",
        series.order()
    );
    series.coeffs()[..=n]
        .iter()
        .map(|c| {
            assert!(
                c.is_integer() && !c.is_negative(),
                "counting series must have nonnegative integer coefficients (got {c})"
            );
            c.to_integer()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), BigInt::one());
        assert_eq!(catalan(3), BigInt::from(5));
        assert_eq!(catalan(5), BigInt::from(42));
    }

    #[test]
    fn motzkin_coeff_matches_series() {
        assert_eq!(motzkin_coeff(0), BigInt::one());
        assert_eq!(motzkin_coeff(4), BigInt::from(9));
        assert_eq!(motzkin_coeff(6), BigInt::from(51));
        let gf = motzkin_gf(10);
        for s in 0..10 {
            assert_eq!(motzkin_coeff(s), integer_terms(&gf, s)[s], "s = {s}");
        }
    }

    #[test]
    fn kcolored_values() {
        for s in 0..8 {
            assert_eq!(kcolored_coeff(s, 1).unwrap(), motzkin_coeff(s));
        }
        // 2-colored Motzkin numbers are shifted Catalan numbers.
        assert_eq!(kcolored_coeff(3, 2).unwrap(), BigInt::from(14));
        assert!(kcolored_coeff(3, 0).is_err());
    }

    #[test]
    fn gen_motzkin_gf_values() {
        let m1 = gen_motzkin_gf(1, 8).unwrap();
        assert_eq!(m1, motzkin_gf(8));
        let m2 = gen_motzkin_gf(2, 13).unwrap();
        assert_eq!(
            integer_terms(&m2, 12),
            big(&[1, 0, 2, 0, 6, 0, 22, 0, 90, 0, 394, 0, 1806])
        );
    }

    #[test]
    fn fk_gf_matches_displayed_radical() {
        // (1 - (1+k)z - sqrt(1 - (2+2k)z + (k^2+2k-3)z^2 + 8z^3 - 4z^4))
        //   / (2z^2 (1-z))
        for k in [1i64, 2, 3] {
            let order = 10;
            let w = order + 2;
            let radicand = TruncatedSeries::from_ints(
                &[1, -(2 + 2 * k), k * k + 2 * k - 3, 8, -4],
                w,
            )
            .unwrap();
            let num = TruncatedSeries::from_ints(&[1, -(1 + k)], w)
                .unwrap()
                .sub(&radicand.sqrt_unit().unwrap());
            let den = TruncatedSeries::from_ints(&[0, 0, 2, -2], w).unwrap();
            let direct = num.div_valuation(&den).unwrap();
            let gf = fk_gf(k as u64, order).unwrap();
            assert!(gf.agrees_up_to_order(&direct), "k = {k}");
        }
    }

    #[test]
    fn fk_coeff_values() {
        assert_eq!(fk_coeff(0, 1).unwrap(), BigInt::one());
        assert_eq!(fk_coeff(0, 7).unwrap(), BigInt::one());
        assert_eq!(fk_coeff(1, 2).unwrap(), BigInt::from(2));
        for k in [1, 2] {
            let gf = fk_gf(k, 12).unwrap();
            for s in 0..12 {
                assert_eq!(fk_coeff(s, k).unwrap(), integer_terms(&gf, s)[s], "s={s} k={k}");
            }
        }
    }

    #[test]
    fn grand_motzkin_values() {
        assert_eq!(grand_motzkin_coeff(0), BigInt::one());
        assert_eq!(grand_motzkin_coeff(2), BigInt::from(3));
        assert_eq!(grand_motzkin_coeff(5), BigInt::from(51));
    }

    #[test]
    fn trinomial_values() {
        assert_eq!(trinomial_coeff(1, 1, 1, 2), BigInt::from(3));
        // Coefficient of x^2 in (1 + x^2)^2.
        assert_eq!(trinomial_coeff(1, 0, 1, 2), BigInt::from(2));
        assert_eq!(trinomial_coeff(2, 1, 1, 0), BigInt::one());
        for n in 0..20 {
            assert_eq!(trinomial_coeff(1, 1, 1, n), grand_motzkin_coeff(n), "n = {n}");
        }
    }

    /// Independent check of the trinomial formula: expand (a + bx + cx^2)^n
    /// by plain polynomial convolution and read off the x^n coefficient.
    #[test]
    fn trinomial_matches_polynomial_power_oracle() {
        fn poly_mul(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
            let mut out = vec![BigInt::zero(); p.len() + q.len() - 1];
            for (i, a) in p.iter().enumerate() {
                for (j, b) in q.iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            out
        }
        for (a, b, c) in [(1u64, 1u64, 1u64), (1, 2, 3), (2, 0, 1), (3, 1, 0)] {
            let base = [BigInt::from(a), BigInt::from(b), BigInt::from(c)];
            let mut power = vec![BigInt::one()];
            for n in 0..=10usize {
                assert_eq!(
                    trinomial_coeff(a, b, c, n),
                    power.get(n).cloned().unwrap_or_else(BigInt::zero),
                    "({a},{b},{c}) n = {n}"
                );
                power = poly_mul(&power, &base);
            }
        }
    }

    #[test]
    fn riordan_gf_values() {
        let r = riordan_gf(8);
        assert_eq!(integer_terms(&r, 7), big(&[1, 0, 1, 1, 3, 6, 15, 36]));
    }

    #[test]
    fn riordan_recurrence_values() {
        let m: Vec<BigInt> = (0..8).map(motzkin_coeff).collect();
        let r = integer_terms(&riordan_gf(10), 9);
        assert_eq!(riordan_recurrence(2, &m, &r).unwrap(), BigInt::one());
        assert_eq!(riordan_recurrence(4, &m, &r).unwrap(), BigInt::from(3));
        assert_eq!(riordan_recurrence(5, &m, &r).unwrap(), BigInt::from(6));
        for n in 2..10 {
            assert_eq!(riordan_recurrence(n, &m, &r).unwrap(), r[n], "n = {n}");
        }
        assert!(matches!(
            riordan_recurrence(12, &m, &r),
            Err(FamilyError::InsufficientPrefix { .. })
        ));
    }

    #[test]
    fn narayana_values() {
        assert_eq!(narayana(1, 1).unwrap(), BigInt::one());
        assert_eq!(narayana(4, 2).unwrap(), BigInt::from(6));
        assert_eq!(narayana(3, 3).unwrap(), BigInt::one());
        assert!(narayana(3, 4).is_err());
        assert!(narayana(3, 0).is_err());
    }

    #[test]
    fn catalan_power_values() {
        assert_eq!(catalan_power_coeff(1, 0).unwrap(), BigInt::one());
        for k in 0..10 {
            assert_eq!(catalan_power_coeff(1, k).unwrap(), catalan(k as usize));
        }
        assert_eq!(catalan_power_coeff(2, 1).unwrap(), BigInt::from(2));
    }
}
