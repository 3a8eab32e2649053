//! Generating-function computation: equation solving for finite automata,
//! continued-fraction evaluation for line-shaped automata, and the uniform
//! closed forms (radical and coefficient-sum routes).
//!
//! All routes return exact [`TruncatedSeries`] values and are meant to agree
//! coefficient-for-coefficient wherever more than one applies; the test
//! suites exploit that redundancy.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::automaton::{
    AutomatonError, BilinearSpec, LinearSpec, ParallelTransition, StateId, WeightedAutomaton,
};
use crate::combinatorics::{binomial, catalan_numbers, ipow};
use crate::series::{Coefficient, SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("inputs are stored at order {available} but order {required} is needed")]
    InsufficientOrder { required: usize, available: usize },
    #[error("continued-fraction depth must be at least 1")]
    InvalidDepth,
}

/// Per-state generating functions of a solved automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfSolution {
    series: Vec<TruncatedSeries>,
    initial: StateId,
}

impl GfSolution {
    /// The GF at the initial state: the automaton's word-count series.
    pub fn root(&self) -> &TruncatedSeries {
        &self.series[self.initial]
    }

    pub fn state(&self, q: StateId) -> &TruncatedSeries {
        &self.series[q]
    }

    pub fn order(&self) -> usize {
        self.series[self.initial].order()
    }

    /// Check that every equation `L_p = sum w L_q + [p final]` has exactly
    /// zero residual up to the solution order.
    pub fn residual_is_zero(&self, a: &WeightedAutomaton) -> bool {
        let w = self.order();
        let one = TruncatedSeries::one(w);
        for p in 0..a.num_states() {
            let mut res = self.series[p].clone();
            if a.is_final(p) {
                res = res.sub(&one);
            }
            for (src, dst, t) in a.edges() {
                if src != p {
                    continue;
                }
                let weight = truncate_to(t.series(), w);
                res = res.sub(&weight.mul(&self.series[dst]));
            }
            if !res.is_zero() {
                return false;
            }
        }
        true
    }
}

fn truncate_to(s: &TruncatedSeries, order: usize) -> TruncatedSeries {
    if s.order() <= order {
        s.clone()
    } else {
        s.truncated(order).expect("order >= 1")
    }
}

/// Solve the GF equation system `L_p = sum_{(p,q,w)} w L_q + [p final]` by
/// fixed-point iteration from the zero vector. Every weight has valuation
/// at least 1, so each round pins one more coefficient and the iteration is
/// stationary on all stored coefficients after at most `order + 1` rounds.
///
/// The solution order is the requested order, capped by the narrowest edge
/// weight: no coefficient is reported that the weights cannot support.
pub fn solve_system(a: &WeightedAutomaton, order: usize) -> Result<GfSolution, EngineError> {
    a.validate_convergent().required()?;
    if order == 0 {
        return Err(SeriesError::InvalidOrder.into());
    }
    let w = a
        .edges()
        .map(|(_, _, t)| t.order())
        .min()
        .unwrap_or(order)
        .min(order);

    let edges: Vec<(StateId, StateId, TruncatedSeries)> = a
        .edges()
        .map(|(s, d, t)| (s, d, truncate_to(t.series(), w)))
        .collect();
    let base: Vec<TruncatedSeries> = (0..a.num_states())
        .map(|q| {
            if a.is_final(q) {
                TruncatedSeries::one(w)
            } else {
                TruncatedSeries::zero(w)
            }
        })
        .collect();

    let mut cur = vec![TruncatedSeries::zero(w); a.num_states()];
    for _ in 0..=w {
        let mut next = base.clone();
        for (src, dst, weight) in &edges {
            next[*src] = next[*src].add(&weight.mul(&cur[*dst]));
        }
        if next == cur {
            break;
        }
        cur = next;
    }
    Ok(GfSolution {
        series: cur,
        initial: a.initial(),
    })
}

/// Depth beyond which deeper continued-fraction truncation cannot change the
/// coefficients below `z^order`: each level contributes a factor `f_i g_i`
/// of valuation at least 2.
pub fn cf_depth_bound(order: usize) -> usize {
    assert!(order >= 1, "order must be at least 1");
    order.div_ceil(2) + 1
}

/// Evaluate `E_start = 1 / (1 - h_start - f_start g_start E_{start+1})`
/// bottom-up over `depth` levels, everything truncated to `order`.
fn tail_at_depth(
    spec: &LinearSpec,
    start: usize,
    depth: usize,
    order: usize,
) -> Result<TruncatedSeries, EngineError> {
    if depth == 0 {
        return Err(EngineError::InvalidDepth);
    }
    let available = spec.order();
    if available < order {
        return Err(EngineError::InsufficientOrder {
            required: order,
            available,
        });
    }
    let one = TruncatedSeries::one(order);
    let last = start + depth - 1;
    let mut e = one.sub(&truncate_to(spec.h_at(last).series(), order)).recip()?;
    for i in (start..last).rev() {
        let fg = truncate_to(spec.f_at(i).series(), order)
            .mul(&truncate_to(spec.g_at(i).series(), order));
        let denom = one
            .sub(&truncate_to(spec.h_at(i).series(), order))
            .sub(&fg.mul(&e));
        e = denom.recip()?;
    }
    Ok(e)
}

/// The continued fraction of the half-line automaton, evaluated at the depth
/// that pins all coefficients below `z^order`.
pub fn linear_cf(spec: &LinearSpec, order: usize) -> Result<TruncatedSeries, EngineError> {
    linear_cf_at_depth(spec, cf_depth_bound(order), order)
}

/// Same with an explicit depth (levels `0..depth`).
pub fn linear_cf_at_depth(
    spec: &LinearSpec,
    depth: usize,
    order: usize,
) -> Result<TruncatedSeries, EngineError> {
    spec.validate_convergent().required()?;
    tail_at_depth(spec, 0, depth, order)
}

/// The continued fraction started at vertex `i` instead of vertex 0.
/// `cf_tail(spec, 0, order)` equals `linear_cf(spec, order)`.
pub fn cf_tail(spec: &LinearSpec, i: usize, order: usize) -> Result<TruncatedSeries, EngineError> {
    cf_tail_at_depth(spec, i, cf_depth_bound(order), order)
}

pub fn cf_tail_at_depth(
    spec: &LinearSpec,
    i: usize,
    depth: usize,
    order: usize,
) -> Result<TruncatedSeries, EngineError> {
    spec.validate_convergent().required()?;
    tail_at_depth(spec, i, depth, order)
}

/// GF of the two-sided line automaton:
/// `1 / (1 - h_0 - f_0 g_0 E_1 - f'_0 g'_0 E'_1)` with each side's tail
/// evaluated from vertex 1.
pub fn bilinear_gf(spec: &BilinearSpec, order: usize) -> Result<TruncatedSeries, EngineError> {
    bilinear_gf_at_depth(spec, cf_depth_bound(order), order)
}

pub fn bilinear_gf_at_depth(
    spec: &BilinearSpec,
    depth: usize,
    order: usize,
) -> Result<TruncatedSeries, EngineError> {
    spec.validate_convergent().required()?;
    let pos = spec.positive();
    let neg = spec.negative();
    let e1 = tail_at_depth(pos, 1, depth, order)?;
    let e1p = tail_at_depth(neg, 1, depth, order)?;
    let one = TruncatedSeries::one(order);
    let fg = truncate_to(pos.f_at(0).series(), order)
        .mul(&truncate_to(pos.g_at(0).series(), order));
    let fgp = truncate_to(neg.f_at(0).series(), order)
        .mul(&truncate_to(neg.g_at(0).series(), order));
    let denom = one
        .sub(&truncate_to(pos.h_at(0).series(), order))
        .sub(&fg.mul(&e1))
        .sub(&fgp.mul(&e1p));
    Ok(denom.recip()?)
}

fn int(n: u64) -> Coefficient {
    Coefficient::from_integer(BigInt::from(n))
}

/// Uniform weights describe the edges (0 -> 1, 1 -> 0, 0 -> 0); an improper
/// one is reported against its canonical edge.
fn require_proper(
    f: &ParallelTransition,
    g: &ParallelTransition,
    h: &ParallelTransition,
) -> Result<(), EngineError> {
    for (t, src, dst) in [(f, "0", "1"), (g, "1", "0"), (h, "0", "0")] {
        if !t.is_proper() {
            return Err(AutomatonError::NotConvergent(crate::automaton::NonConvergentEdge {
                src: src.into(),
                dst: dst.into(),
            })
            .into());
        }
    }
    Ok(())
}

/// Closed form for the uniform half-line automaton:
/// `(1 - h - sqrt((1-h)^2 - 4 f g)) / (2 f g)`, the branch with value 1 at
/// the origin (the empty word is accepted).
///
/// When `f g` vanishes up to the working order the automaton collapses to a
/// single looped vertex and `1/(1-h)` is returned instead of dividing by
/// zero. The division trims the result by `val(f g)` positions, so the
/// stored weights must be at least that much wider than `order`.
pub fn uniform_radical(
    f: &ParallelTransition,
    g: &ParallelTransition,
    h: &ParallelTransition,
    order: usize,
) -> Result<TruncatedSeries, EngineError> {
    require_proper(f, g, h)?;
    let w = f.order().min(g.order()).min(h.order());
    let fg = truncate_to(f.series(), w).mul(&truncate_to(g.series(), w));
    let one = TruncatedSeries::one(w);
    let one_minus_h = one.sub(&truncate_to(h.series(), w));

    let Some(v) = fg.valuation() else {
        if w < order {
            return Err(EngineError::InsufficientOrder {
                required: order,
                available: w,
            });
        }
        return Ok(one_minus_h.recip()?.truncated(order)?);
    };
    if w < order + v {
        return Err(EngineError::InsufficientOrder {
            required: order + v,
            available: w,
        });
    }

    let radicand = one_minus_h.mul(&one_minus_h).sub(&fg.scale(&int(4)));
    let root = radicand.sqrt_unit()?;
    let numerator = one_minus_h.sub(&root);
    let b = numerator.div_valuation(&fg.scale(&int(2)))?;
    Ok(b.truncated(order)?)
}

/// The same GF by the double coefficient sum
/// `sum_{n,m} C_n binom(m+2n, m) (f g)^n h^m`, with the index ranges cut
/// where a term's valuation reaches `order`.
pub fn uniform_sum(
    f: &ParallelTransition,
    g: &ParallelTransition,
    h: &ParallelTransition,
    order: usize,
) -> Result<TruncatedSeries, EngineError> {
    require_proper(f, g, h)?;
    let w = f.order().min(g.order()).min(h.order());
    if w < order {
        return Err(EngineError::InsufficientOrder {
            required: order,
            available: w,
        });
    }
    let fs = truncate_to(f.series(), order);
    let gs = truncate_to(g.series(), order);
    let hs = truncate_to(h.series(), order);
    let fg = fs.mul(&gs);

    let hpows = powers_below(&hs, order);
    let catalan = catalan_numbers(order / 2 + 1);

    let mut acc = TruncatedSeries::zero(order);
    let mut fg_pow = TruncatedSeries::one(order);
    for (n, cat) in catalan.iter().enumerate() {
        let Some(vn) = fg_pow.valuation() else { break };
        for (m, hp) in hpows.iter().enumerate() {
            let vm = hp.valuation().unwrap_or(0);
            if vn + vm >= order {
                break;
            }
            let c = cat * binomial((m + 2 * n) as i64, m as i64);
            acc = acc.add(&fg_pow.mul(hp).scale(&Coefficient::from_integer(c)));
        }
        fg_pow = fg_pow.mul(&fg);
        if fg_pow.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Nonvanishing powers `s^0, s^1, ...` whose valuation stays below `order`.
fn powers_below(s: &TruncatedSeries, order: usize) -> Vec<TruncatedSeries> {
    let mut pows = vec![TruncatedSeries::one(order)];
    if let Some(v) = s.valuation() {
        let mut m = 1;
        while m * v < order {
            let next = pows.last().unwrap().mul(s);
            if next.is_zero() {
                break;
            }
            pows.push(next);
            m += 1;
        }
    }
    pows
}

/// Closed form for the uniform two-sided automaton:
/// `1 / sqrt((1-h)^2 - 4 f g)`.
pub fn bilinear_radical(
    f: &ParallelTransition,
    g: &ParallelTransition,
    h: &ParallelTransition,
    order: usize,
) -> Result<TruncatedSeries, EngineError> {
    require_proper(f, g, h)?;
    let w = f.order().min(g.order()).min(h.order());
    if w < order {
        return Err(EngineError::InsufficientOrder {
            required: order,
            available: w,
        });
    }
    let fg = truncate_to(f.series(), order).mul(&truncate_to(g.series(), order));
    let one = TruncatedSeries::one(order);
    let one_minus_h = one.sub(&truncate_to(h.series(), order));
    let radicand = one_minus_h.mul(&one_minus_h).sub(&fg.scale(&int(4)));
    Ok(radicand.sqrt_unit()?.recip()?)
}

/// The two-sided GF for `g = f` by the triple sum
/// `1/(1-h) + sum 2^n (n/(n+2k)) binom(n+2k, k) binom(l+2n+2k, l)
/// f^{2n+2k} h^l`.
pub fn bilinear_sum(
    f: &ParallelTransition,
    h: &ParallelTransition,
    order: usize,
) -> Result<TruncatedSeries, EngineError> {
    require_proper(f, f, h)?;
    let w = f.order().min(h.order());
    if w < order {
        return Err(EngineError::InsufficientOrder {
            required: order,
            available: w,
        });
    }
    let fs = truncate_to(f.series(), order);
    let hs = truncate_to(h.series(), order);
    let one = TruncatedSeries::one(order);
    let mut acc = one.sub(&hs).recip()?;

    let f2 = fs.mul(&fs);
    let f2pows = powers_below(&f2, order);
    let hpows = powers_below(&hs, order);

    // Terms with the same exponent pair share the series product
    // f^{2(n+k)} h^l, so the scalar factors are accumulated per pair first
    // and each product is multiplied in once. j = n + k >= 1 throughout.
    let mut scalars =
        vec![vec![BigRational::from_integer(BigInt::zero()); hpows.len()]; f2pows.len()];
    for n in 1u64.. {
        if n as usize >= f2pows.len() {
            break;
        }
        for k in 0u64.. {
            let j = (n + k) as usize;
            if j >= f2pows.len() {
                break;
            }
            let fpow = &f2pows[j];
            let Some(vf) = fpow.valuation() else { break };
            let base = BigRational::new(
                BigInt::from(n) * binomial((n + 2 * k) as i64, k as i64) * ipow(&BigInt::from(2), n),
                BigInt::from(n + 2 * k),
            );
            for (l, hp) in hpows.iter().enumerate() {
                let vl = hp.valuation().unwrap_or(0);
                if vf + vl >= order {
                    break;
                }
                scalars[j][l] += &base
                    * BigRational::from_integer(binomial(
                        (l as u64 + 2 * n + 2 * k) as i64,
                        l as i64,
                    ));
            }
        }
    }
    for (j, row) in scalars.iter().enumerate() {
        for (l, c) in row.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&f2pows[j].mul(&hpows[l]).scale(c));
            }
        }
    }
    Ok(acc)
}
