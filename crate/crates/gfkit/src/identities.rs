//! The cross-family identity suite: exact equalities between coefficient
//! formulas, generating-function coefficients and convolutions. Every check
//! reports the first failing index so a corrupted input is pinpointed.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinatorics::{binomial, ipow};
use crate::families::{
    catalan_power_coeff, gen_motzkin_gf, grand_motzkin_coeff, integer_terms, kcolored_coeff,
    motzkin_coeff, motzkin_gf, narayana, riordan_gf, riordan_recurrence, trinomial_coeff,
};
use crate::series::TruncatedSeries;

/// First mismatch of an identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityFailure {
    pub index: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// Outcome of one identity checked up to its bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: &'static str,
    pub checked_to: usize,
    pub failure: Option<IdentityFailure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn first_diff(lhs: &[BigInt], rhs: &[BigInt]) -> Option<IdentityFailure> {
    lhs.iter()
        .zip(rhs)
        .enumerate()
        .find(|(_, (l, r))| l != r)
        .map(|(index, (l, r))| IdentityFailure {
            index,
            lhs: l.clone(),
            rhs: r.clone(),
        })
}

/// `r_{n+1} + r_n = m_n` on the given sequence prefixes.
pub fn check_riordan_motzkin_sum(
    motzkin: &[BigInt],
    riordan: &[BigInt],
) -> Option<IdentityFailure> {
    let n = motzkin.len().min(riordan.len().saturating_sub(1));
    let lhs: Vec<BigInt> = (0..n).map(|i| &riordan[i + 1] + &riordan[i]).collect();
    first_diff(&lhs, &motzkin[..n])
}

/// `(1 + z) R(z) = 1 + z M(z)` up to the common order.
pub fn check_riordan_ratio(m: &TruncatedSeries, r: &TruncatedSeries) -> Option<IdentityFailure> {
    let order = m.order().min(r.order());
    let one_plus_z = TruncatedSeries::from_ints(&[1, 1], order).unwrap();
    let lhs = one_plus_z.mul(r);
    let rhs = TruncatedSeries::one(order).add(&m.shift(1).unwrap().truncated(order).unwrap());
    let lt = integer_terms(&lhs, order - 1);
    let rt = integer_terms(&rhs, order - 1);
    first_diff(&lt, &rt)
}

/// The identity suite, each equality checked exactly up to `bound` (a few
/// have their own documented caps).
pub fn run_identities(bound: usize) -> Vec<IdentityReport> {
    let mut reports = Vec::new();

    let motzkin_terms: Vec<BigInt> = (0..=bound + 1).map(motzkin_coeff).collect();
    let riordan_series = riordan_gf(bound + 2);
    let riordan_terms = integer_terms(&riordan_series, bound + 1);

    // r_{n+1} + r_n = m_n for n <= bound.
    reports.push(IdentityReport {
        name: "riordan_motzkin_sum",
        checked_to: bound,
        failure: check_riordan_motzkin_sum(
            &motzkin_terms[..=bound],
            &riordan_terms[..=bound + 1],
        ),
    });

    // (1 + z) R = 1 + z M up to order bound + 1.
    reports.push(IdentityReport {
        name: "riordan_gf_ratio",
        checked_to: bound,
        failure: check_riordan_ratio(&motzkin_gf(bound + 1), &riordan_series),
    });

    // r_n = sum_j m_j r_{n-j-2} (the R = 1 + z^2 M R convolution).
    reports.push(IdentityReport {
        name: "riordan_convolution",
        checked_to: bound,
        failure: (2..=bound)
            .filter_map(|n| {
                let got = riordan_recurrence(n, &motzkin_terms, &riordan_terms).unwrap();
                (got != riordan_terms[n]).then(|| IdentityFailure {
                    index: n,
                    lhs: got,
                    rhs: riordan_terms[n].clone(),
                })
            })
            .next(),
    });

    // m_s = sum_n C_n binom(s, 2n) against the GF coefficients.
    reports.push(IdentityReport {
        name: "motzkin_catalan_sum",
        checked_to: bound,
        failure: first_diff(
            &integer_terms(&motzkin_gf(bound + 1), bound),
            &motzkin_terms[..=bound],
        ),
    });

    // The 2-colored Motzkin numbers are the shifted Catalan numbers.
    reports.push(IdentityReport {
        name: "two_colored_catalan",
        checked_to: bound,
        failure: {
            let cats = crate::combinatorics::catalan_numbers(bound + 2);
            let lhs: Vec<BigInt> = (0..=bound).map(|n| kcolored_coeff(n, 2).unwrap()).collect();
            first_diff(&lhs, &cats[1..=bound + 1])
        },
    });

    // Schroeder numbers against the Narayana sum: m^2_n = sum_k N(n,k) 2^k.
    reports.push(IdentityReport {
        name: "schroeder_narayana",
        checked_to: bound,
        failure: {
            let gf = gen_motzkin_gf(2, 2 * bound + 1).unwrap();
            let coeffs = integer_terms(&gf, 2 * bound);
            (1..=bound)
                .filter_map(|n| {
                    let mut rhs = BigInt::zero();
                    for k in 1..=n {
                        rhs += narayana(n as u64, k as u64).unwrap()
                            * ipow(&BigInt::from(2), k as u64);
                    }
                    let lhs = coeffs[2 * n].clone();
                    (lhs != rhs).then_some(IdentityFailure { index: n, lhs, rhs })
                })
                .next()
        },
    });

    // Central trinomial coefficients equal the two-sided Motzkin counts.
    reports.push(IdentityReport {
        name: "trinomial_grand_motzkin",
        checked_to: bound,
        failure: {
            let lhs: Vec<BigInt> = (0..=bound).map(|n| trinomial_coeff(1, 1, 1, n)).collect();
            let rhs: Vec<BigInt> = (0..=bound).map(grand_motzkin_coeff).collect();
            first_diff(&lhs, &rhs)
        },
    });

    // Catalan powers: [u^k] C(u)^p = (p/(p+2k)) binom(p+2k, k), p <= 6.
    let catalan_power_bound = 6;
    reports.push(IdentityReport {
        name: "catalan_powers",
        checked_to: bound,
        failure: {
            let order = bound.max(1) + 1;
            let width = order + 1;
            let disc = TruncatedSeries::from_ints(&[1, -4], width).unwrap();
            let c = TruncatedSeries::one(width)
                .sub(&disc.sqrt_unit().unwrap())
                .div_valuation(&TruncatedSeries::from_ints(&[0, 2], width).unwrap())
                .unwrap();
            let mut power = TruncatedSeries::one(c.order());
            let mut failure = None;
            'outer: for p in 1..=catalan_power_bound {
                power = power.mul(&c);
                let coeffs = integer_terms(&power, order.min(power.order()) - 1);
                for (k, lhs) in coeffs.iter().enumerate() {
                    let rhs = catalan_power_coeff(p as u64, k as u64).unwrap();
                    if lhs != &rhs {
                        failure = Some(IdentityFailure {
                            index: k,
                            lhs: lhs.clone(),
                            rhs,
                        });
                        break 'outer;
                    }
                }
            }
            failure
        },
    });

    // binom(n,k) binom(n-k, n-2k) = binom(2k,k) binom(n,2k), n capped at 30.
    let absorption_bound = bound.min(30);
    reports.push(IdentityReport {
        name: "binomial_absorption",
        checked_to: absorption_bound,
        failure: {
            let mut failure = None;
            'outer: for n in 0..=absorption_bound as i64 {
                for k in 0..=n {
                    let lhs = binomial(n, k) * binomial(n - k, n - 2 * k);
                    let rhs = binomial(2 * k, k) * binomial(n, 2 * k);
                    if lhs != rhs {
                        failure = Some(IdentityFailure {
                            index: n as usize,
                            lhs,
                            rhs,
                        });
                        break 'outer;
                    }
                }
            }
            failure
        },
    });

    reports
}
