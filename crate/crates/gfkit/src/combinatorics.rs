//! Exact integer combinatorics used by the coefficient formulas.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient with the convention used throughout the coefficient
/// sums: `binomial(a, 0) = 1` for every `a` (including negative `a`), and
/// `binomial(a, b) = 0` when `b < 0` or `0 <= a < b`.
///
/// The `a = -1, b = 0` corner arises from expanding `1/(1-z)^m` at `m = 0`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    if b == 0 {
        return BigInt::one();
    }
    if a < b {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

/// The first `len` Catalan numbers by the recurrence
/// C_0 = 1, C_{n+1} = sum_{i=0..n} C_i C_{n-i}.
pub fn catalan_numbers(len: usize) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = Vec::with_capacity(len);
    if len == 0 {
        return c;
    }
    c.push(BigInt::one());
    for n in 1..len {
        let mut acc = BigInt::zero();
        for i in 0..n {
            acc += &c[i] * &c[n - 1 - i];
        }
        c.push(acc);
    }
    c
}

/// `base^exp` with the empty-product convention `0^0 = 1`.
pub fn ipow(base: &BigInt, exp: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_interior_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(4, 4), BigInt::from(1));
    }

    #[test]
    fn binomial_convention_corners() {
        assert_eq!(binomial(-1, 0), BigInt::from(1));
        assert_eq!(binomial(7, -2), BigInt::from(0));
        assert_eq!(binomial(2, 3), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
    }

    #[test]
    fn catalan_prefix() {
        let c = catalan_numbers(8);
        let want = [1i64, 1, 2, 5, 14, 42, 132, 429];
        assert_eq!(c, want.map(BigInt::from));
    }

    #[test]
    fn ipow_corners() {
        assert_eq!(ipow(&BigInt::zero(), 0), BigInt::one());
        assert_eq!(ipow(&BigInt::zero(), 3), BigInt::zero());
        assert_eq!(ipow(&BigInt::from(3), 4), BigInt::from(81));
    }
}
