//! Independent ground truth for the sequence computations.
//!
//! Two deliberately separate code paths:
//!
//! - [`brute_paths`]: exhaustive recursion over lattice-path steps. It knows
//!   nothing about automata or series; it shares nothing with the rest of
//!   the crate beyond integer arithmetic, so a mistake in an automaton
//!   encoding cannot hide here.
//! - [`dp_count`]: word counts of an automaton by backward dynamic
//!   programming over (state, remaining length), after expanding every
//!   transition into unit steps.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::automaton::{
    expand_unit_steps, AutomatonError, BilinearSpec, LinearSpec, StateId, WeightedAutomaton,
};

/// Lengths above this are refused by [`brute_paths`]; the enumeration is
/// exponential and the DP covers longer prefixes.
pub const BRUTE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("brute-force enumeration refused for n = {n} (cap {cap}); use the DP count instead")]
    BruteCapExceeded { n: usize, cap: usize },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// Level steps available to a path family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelSteps {
    /// Fixed list of (length, colors) level steps.
    Fixed(Vec<(usize, u64)>),
    /// A level step of every length `>= 1`, each in `colors` colors.
    AllLengths { colors: u64 },
}

/// A lattice-path counting problem: colored rise (1,1) and fall (1,-1)
/// steps, level steps, an optional non-negative-height constraint, an
/// optional ban on level steps starting at height 0, and the end condition
/// "height 0 after exactly n columns".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFamily {
    pub rise_colors: u64,
    pub fall_colors: u64,
    pub levels: LevelSteps,
    pub floor: bool,
    pub ban_axis_level: bool,
}

impl PathFamily {
    pub fn motzkin() -> Self {
        Self {
            rise_colors: 1,
            fall_colors: 1,
            levels: LevelSteps::Fixed(vec![(1, 1)]),
            floor: true,
            ban_axis_level: false,
        }
    }

    pub fn dyck() -> Self {
        Self {
            levels: LevelSteps::Fixed(vec![]),
            ..Self::motzkin()
        }
    }

    pub fn riordan() -> Self {
        Self {
            ban_axis_level: true,
            ..Self::motzkin()
        }
    }

    pub fn kcolored(k: u64) -> Self {
        Self {
            levels: LevelSteps::Fixed(vec![(1, k)]),
            ..Self::motzkin()
        }
    }

    /// Level step of length `k` only.
    pub fn gen_motzkin(k: usize) -> Self {
        Self {
            levels: LevelSteps::Fixed(vec![(k, 1)]),
            ..Self::motzkin()
        }
    }

    /// Level steps of every length, each in `k` colors.
    pub fn fk(k: u64) -> Self {
        Self {
            levels: LevelSteps::AllLengths { colors: k },
            ..Self::motzkin()
        }
    }

    pub fn grand_motzkin() -> Self {
        Self {
            floor: false,
            ..Self::motzkin()
        }
    }

    /// Unconstrained paths with `a`-colored rises, `c`-colored falls and
    /// `b`-colored unit level steps.
    pub fn trinomial(a: u64, b: u64, c: u64) -> Self {
        Self {
            rise_colors: a,
            fall_colors: c,
            levels: LevelSteps::Fixed(vec![(1, b)]),
            floor: false,
            ban_axis_level: false,
        }
    }
}

/// Count admissible paths of length exactly `n` by exhaustive recursion over
/// the step set. Branches that cannot return to height 0 in the remaining
/// columns contribute nothing and are cut; everything else is enumerated.
///
/// The recursion runs in `u128` (billions of nodes at the cap; heap-allocated
/// counts would dominate the runtime) and repeats in `BigInt` in the rare
/// case a count overflows.
pub fn brute_paths(family: &PathFamily, n: usize) -> Result<BigInt, OracleError> {
    if n > BRUTE_CAP {
        return Err(OracleError::BruteCapExceeded { n, cap: BRUTE_CAP });
    }
    match count_paths::<u128>(family, n, 0) {
        Some(count) => Ok(BigInt::from(count)),
        None => Ok(count_paths::<BigInt>(family, n, 0).expect("BigInt does not overflow")),
    }
}

trait PathCount: Clone + Zero + One + From<u64> {
    fn checked_add_to(&self, other: &Self) -> Option<Self>;
    fn checked_mul_by(&self, other: &Self) -> Option<Self>;
}

impl PathCount for u128 {
    fn checked_add_to(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn checked_mul_by(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
}

impl PathCount for BigInt {
    fn checked_add_to(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_mul_by(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
}

fn count_paths<T: PathCount>(family: &PathFamily, remaining: usize, height: i64) -> Option<T> {
    // A path must change height by |height| to end on the axis.
    if height.unsigned_abs() as usize > remaining {
        return Some(T::zero());
    }
    if remaining == 0 {
        return Some(if height == 0 { T::one() } else { T::zero() });
    }
    let mut acc = T::zero();
    let mut take = |colors: u64, sub: Option<T>| -> Option<()> {
        let sub = sub?;
        let contribution = if colors == 1 {
            sub
        } else {
            sub.checked_mul_by(&T::from(colors))?
        };
        acc = acc.checked_add_to(&contribution)?;
        Some(())
    };
    if family.rise_colors > 0 {
        take(
            family.rise_colors,
            count_paths(family, remaining - 1, height + 1),
        )?;
    }
    if family.fall_colors > 0 && (!family.floor || height > 0) {
        take(
            family.fall_colors,
            count_paths(family, remaining - 1, height - 1),
        )?;
    }
    if !(family.ban_axis_level && height == 0) {
        match &family.levels {
            LevelSteps::Fixed(steps) => {
                for &(len, colors) in steps {
                    if len >= 1 && len <= remaining && colors > 0 {
                        take(colors, count_paths(family, remaining - len, height))?;
                    }
                }
            }
            LevelSteps::AllLengths { colors } => {
                if *colors > 0 {
                    for len in 1..=remaining {
                        take(*colors, count_paths(family, remaining - len, height))?;
                    }
                }
            }
        }
    }
    Some(acc)
}

/// Backward DP table over an automaton whose transitions have been expanded
/// to unit steps: `counts(q, l)` is the number of accepted words of length
/// exactly `l` starting from state `q`.
#[derive(Debug, Clone)]
pub struct CountTable {
    counts: Vec<Vec<BigInt>>,
    initial: StateId,
}

impl CountTable {
    pub fn count(&self, q: StateId, remaining: usize) -> &BigInt {
        &self.counts[q][remaining]
    }

    /// Counts from the initial state for lengths `0..=n`.
    pub fn initial_counts(&self) -> &[BigInt] {
        &self.counts[self.initial]
    }
}

/// Build the DP table for word lengths up to `n`.
pub fn dp_table(a: &WeightedAutomaton, n: usize) -> Result<CountTable, OracleError> {
    let unit = expand_unit_steps(a, n)?;
    let edges: Vec<(StateId, StateId, BigInt)> = unit
        .edges()
        .map(|(s, d, w)| {
            let terms = w.terms();
            debug_assert!(terms.len() == 1 && terms[0].0 == 1);
            (s, d, terms[0].1.clone())
        })
        .collect();

    let states = unit.num_states();
    let mut counts = vec![vec![BigInt::zero(); n + 1]; states];
    for (q, row) in counts.iter_mut().enumerate() {
        if unit.is_final(q) {
            row[0] = BigInt::one();
        }
    }
    for l in 1..=n {
        let mut next: Vec<BigInt> = vec![BigInt::zero(); states];
        for (src, dst, mult) in &edges {
            let below = &counts[*dst][l - 1];
            if !below.is_zero() {
                next[*src] += mult * below;
            }
        }
        for (q, v) in next.into_iter().enumerate() {
            counts[q][l] = v;
        }
    }
    Ok(CountTable {
        counts,
        initial: unit.initial(),
    })
}

/// Word counts of lengths `0..=n` for a finite automaton.
pub fn dp_count(a: &WeightedAutomaton, n: usize) -> Result<Vec<BigInt>, OracleError> {
    Ok(dp_table(a, n)?.initial_counts().to_vec())
}

/// Word counts for a half-line specification: vertices beyond `n` are
/// unreachable in `n` steps, so the truncation to `n + 1` vertices is exact.
pub fn dp_count_linear(spec: &LinearSpec, n: usize) -> Result<Vec<BigInt>, OracleError> {
    let a = spec.truncation(n + 1)?;
    dp_count(&a, n)
}

/// Word counts for a two-sided specification (vertices `-n..=n`).
pub fn dp_count_bilinear(spec: &BilinearSpec, n: usize) -> Result<Vec<BigInt>, OracleError> {
    let a = spec.truncation(n + 1)?;
    dp_count(&a, n)
}
