//! Weighted counting automata and the line-shaped specifications that
//! generate them.
//!
//! Every edge carries a [`ParallelTransition`]: a series `sum_{n>=1} f_n z^n`
//! with nonnegative integer coefficients, standing for `f_n` disjoint chains
//! of `n` unit steps through hidden non-final states. Convergence of the word
//! counts is exactly the condition that no transition has a constant term,
//! which [`WeightedAutomaton::validate_convergent`] checks.

mod textfmt;

pub use textfmt::parse_automaton;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::series::{Coefficient, SeriesError, TruncatedSeries};

/// Index into an automaton's state table.
pub type StateId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("transition coefficient of z^{index} is not a nonnegative integer ({value})")]
    BadTransitionCoefficient { index: usize, value: String },
    #[error("state {0} is out of range")]
    UnknownState(StateId),
    #[error("the set of final states is empty")]
    NoFinalStates,
    #[error("truncation must keep at least one state")]
    InvalidTruncation,
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("automaton is not convergent: {0}")]
    NotConvergent(NonConvergentEdge),
    #[error("transition multiplicity {0} is too large to expand")]
    MultiplicityTooLarge(BigInt),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    MissingDirective(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A series-weighted edge label `sum_{n} f_n z^n` with nonnegative integer
/// coefficients.
///
/// A *proper* transition also has zero constant term; that part of the
/// contract is checked by convergence validation rather than at construction,
/// so that malformed automata can be represented and then rejected with a
/// pointer to the offending edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelTransition {
    series: TruncatedSeries,
}

impl ParallelTransition {
    /// Wrap a series, checking that all coefficients are nonnegative integers.
    pub fn new(series: TruncatedSeries) -> Result<Self, AutomatonError> {
        for (i, c) in series.coeffs().iter().enumerate() {
            if !c.is_integer() || c < &Coefficient::zero() {
                return Err(AutomatonError::BadTransitionCoefficient {
                    index: i,
                    value: c.to_string(),
                });
            }
        }
        Ok(Self { series })
    }

    /// The zero weight (no transition).
    pub fn zero(order: usize) -> Self {
        Self {
            series: TruncatedSeries::zero(order),
        }
    }

    /// The unit step `z`.
    pub fn unit(order: usize) -> Self {
        Self::monomial(1u32, 1, order)
    }

    /// `c * z^k`. Powers at or beyond `order` truncate to zero.
    pub fn monomial(c: impl Into<BigInt>, k: usize, order: usize) -> Self {
        let c: BigInt = c.into();
        assert!(c >= BigInt::zero(), "transition coefficients are nonnegative");
        Self {
            series: TruncatedSeries::monomial(Coefficient::from_integer(c), k, order),
        }
    }

    /// `c * z` (c parallel unit steps).
    pub fn scaled_unit(c: impl Into<BigInt>, order: usize) -> Self {
        Self::monomial(c, 1, order)
    }

    /// `c * z / (1 - z)`: `c` parallel steps of every length `>= 1`.
    pub fn geometric(c: impl Into<BigInt>, order: usize) -> Self {
        let c = Coefficient::from_integer(c.into());
        assert!(c >= Coefficient::zero(), "transition coefficients are nonnegative");
        let coeffs: Vec<Coefficient> = (0..order)
            .map(|i| if i == 0 { Coefficient::zero() } else { c.clone() })
            .collect();
        Self {
            series: TruncatedSeries::from_coeffs(&coeffs, order).unwrap(),
        }
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }

    /// Whether the constant term is zero (the convergence requirement).
    pub fn is_proper(&self) -> bool {
        self.series.coeffs()[0].is_zero()
    }

    /// The nonzero terms as (power, multiplicity) pairs.
    pub fn terms(&self) -> Vec<(usize, BigInt)> {
        self.series
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.to_integer()))
            .collect()
    }

    fn merged_with(&self, other: &Self) -> Self {
        Self {
            series: self.series.add(&other.series),
        }
    }
}

/// The edge a convergence check rejected, by state label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonConvergentEdge {
    pub src: String,
    pub dst: String,
}

impl fmt::Display for NonConvergentEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "transition {} -> {} has a nonzero constant term",
            self.src, self.dst
        )
    }
}

/// Outcome of convergence validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConvergenceVerdict {
    Accepted,
    Rejected(NonConvergentEdge),
}

impl ConvergenceVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, ConvergenceVerdict::Accepted)
    }

    /// Turn a rejection into an error, for operations that require a
    /// convergent input.
    pub fn required(self) -> Result<(), AutomatonError> {
        match self {
            ConvergenceVerdict::Accepted => Ok(()),
            ConvergenceVerdict::Rejected(edge) => Err(AutomatonError::NotConvergent(edge)),
        }
    }
}

/// A finite counting automaton: labelled states, one initial state, a
/// nonempty final set, and at most one [`ParallelTransition`] per ordered
/// state pair (parallel edges merge by series addition).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedAutomaton {
    labels: Vec<String>,
    initial: StateId,
    finals: BTreeSet<StateId>,
    edges: BTreeMap<(StateId, StateId), ParallelTransition>,
}

impl WeightedAutomaton {
    pub fn new(
        labels: Vec<String>,
        initial: StateId,
        finals: impl IntoIterator<Item = StateId>,
    ) -> Result<Self, AutomatonError> {
        let n = labels.len();
        if initial >= n {
            return Err(AutomatonError::UnknownState(initial));
        }
        let finals: BTreeSet<StateId> = finals.into_iter().collect();
        if finals.is_empty() {
            return Err(AutomatonError::NoFinalStates);
        }
        if let Some(&bad) = finals.iter().find(|&&q| q >= n) {
            return Err(AutomatonError::UnknownState(bad));
        }
        Ok(Self {
            labels,
            initial,
            finals,
            edges: BTreeMap::new(),
        })
    }

    /// Add an edge; a duplicate ordered pair merges by series addition.
    pub fn add_edge(
        &mut self,
        src: StateId,
        dst: StateId,
        weight: ParallelTransition,
    ) -> Result<(), AutomatonError> {
        let n = self.labels.len();
        if src >= n {
            return Err(AutomatonError::UnknownState(src));
        }
        if dst >= n {
            return Err(AutomatonError::UnknownState(dst));
        }
        self.edges
            .entry((src, dst))
            .and_modify(|w| *w = w.merged_with(&weight))
            .or_insert(weight);
        Ok(())
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, q: StateId) -> &str {
        &self.labels[q]
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals.contains(&q)
    }

    pub fn edges(&self) -> impl Iterator<Item = (StateId, StateId, &ParallelTransition)> {
        self.edges.iter().map(|(&(s, d), w)| (s, d, w))
    }

    pub fn edge(&self, src: StateId, dst: StateId) -> Option<&ParallelTransition> {
        self.edges.get(&(src, dst))
    }

    /// Accept iff every transition has zero constant term. With a finite
    /// edge set this is exactly the condition that makes every length-n word
    /// count a finite sum; the rejected edge is reported by label.
    pub fn validate_convergent(&self) -> ConvergenceVerdict {
        for (src, dst, w) in self.edges() {
            if !w.is_proper() {
                return ConvergenceVerdict::Rejected(NonConvergentEdge {
                    src: self.labels[src].clone(),
                    dst: self.labels[dst].clone(),
                });
            }
        }
        ConvergenceVerdict::Accepted
    }
}

/// Replace every transition `sum f_k z^k` (terms with `k <= n`; higher terms
/// cannot affect counts of length `<= n` and are discarded) by `f_k` disjoint
/// chains of `k` unit steps through fresh non-final hidden states.
///
/// Parallel unit steps between the same pair of states are kept in the merged
/// form `c*z`, per the one-edge-per-pair normalization; word counts of every
/// length `<= n` are preserved.
pub fn expand_unit_steps(
    a: &WeightedAutomaton,
    n: usize,
) -> Result<WeightedAutomaton, AutomatonError> {
    a.validate_convergent().required()?;
    let order = (n + 1).max(2);
    let mut out = WeightedAutomaton::new(
        a.labels.clone(),
        a.initial,
        a.finals.iter().copied(),
    )?;
    let mut hidden = 0usize;
    for (src, dst, w) in a.edges() {
        for (k, mult) in w.terms() {
            if k > n {
                continue;
            }
            if k == 1 {
                out.add_edge(src, dst, ParallelTransition::scaled_unit(mult, order))?;
                continue;
            }
            let copies = u64::try_from(&mult)
                .map_err(|_| AutomatonError::MultiplicityTooLarge(mult.clone()))?;
            for _ in 0..copies {
                let mut prev = src;
                for _ in 0..k - 1 {
                    let h = out.labels.len();
                    out.labels.push(format!("#h{hidden}"));
                    hidden += 1;
                    out.add_edge(prev, h, ParallelTransition::unit(order))?;
                    prev = h;
                }
                out.add_edge(prev, dst, ParallelTransition::unit(order))?;
            }
        }
    }
    Ok(out)
}

/// Generator `i -> weight` for one edge kind of a line-shaped automaton:
/// a default weight shared by all vertices plus sparse per-vertex overrides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap {
    default: ParallelTransition,
    overrides: BTreeMap<usize, ParallelTransition>,
}

impl GeneratorMap {
    pub fn uniform(default: ParallelTransition) -> Self {
        Self {
            default,
            overrides: BTreeMap::new(),
        }
    }

    /// Replace the weight at one vertex (a zero weight means "absent").
    pub fn with_override(mut self, i: usize, weight: ParallelTransition) -> Self {
        self.overrides.insert(i, weight);
        self
    }

    pub fn at(&self, i: usize) -> &ParallelTransition {
        self.overrides.get(&i).unwrap_or(&self.default)
    }

    pub fn is_uniform(&self) -> bool {
        self.overrides.values().all(|w| w == &self.default)
    }

    fn min_order(&self) -> usize {
        self.overrides
            .values()
            .map(ParallelTransition::order)
            .fold(self.default.order(), usize::min)
    }

    fn first_improper(&self) -> Option<usize> {
        if !self.default.is_proper() {
            // The default applies from vertex 0 on, except where overridden.
            return (0..).find(|i| self.overrides.get(i).is_none_or(|w| !w.is_proper()));
        }
        self.overrides
            .iter()
            .find(|(_, w)| !w.is_proper())
            .map(|(&i, _)| i)
    }
}

/// The half-line automaton on vertices 0, 1, 2, ... with forward weights
/// `f_i` (i -> i+1), backward weights `g_i` (i+1 -> i) and loops `h_i`;
/// vertex 0 is both initial and the only final vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSpec {
    f: GeneratorMap,
    g: GeneratorMap,
    h: GeneratorMap,
}

impl LinearSpec {
    pub fn new(f: GeneratorMap, g: GeneratorMap, h: GeneratorMap) -> Self {
        Self { f, g, h }
    }

    pub fn f_at(&self, i: usize) -> &ParallelTransition {
        self.f.at(i)
    }

    pub fn g_at(&self, i: usize) -> &ParallelTransition {
        self.g.at(i)
    }

    pub fn h_at(&self, i: usize) -> &ParallelTransition {
        self.h.at(i)
    }

    /// Working order of the stored weights.
    pub fn order(&self) -> usize {
        self.f
            .min_order()
            .min(self.g.min_order())
            .min(self.h.min_order())
    }

    /// Uniform specs admit the closed-form evaluation routes.
    pub fn is_uniform(&self) -> bool {
        self.f.is_uniform() && self.g.is_uniform() && self.h.is_uniform()
    }

    pub fn validate_convergent(&self) -> ConvergenceVerdict {
        let checks = [
            (&self.f, 0usize, 1usize),
            (&self.g, 1, 0),
            (&self.h, 0, 0),
        ];
        for (map, doff, soff) in checks {
            if let Some(i) = map.first_improper() {
                return ConvergenceVerdict::Rejected(NonConvergentEdge {
                    src: (i + soff).to_string(),
                    dst: (i + doff).to_string(),
                });
            }
        }
        ConvergenceVerdict::Accepted
    }

    /// Keep vertices `0..s` and the edges between them; vertex 0 stays
    /// initial and final. Words too short to reach the deleted vertices are
    /// counted identically to the full automaton.
    pub fn truncation(&self, s: usize) -> Result<WeightedAutomaton, AutomatonError> {
        if s == 0 {
            return Err(AutomatonError::InvalidTruncation);
        }
        let labels: Vec<String> = (0..s).map(|i| i.to_string()).collect();
        let mut a = WeightedAutomaton::new(labels, 0, [0])?;
        for i in 0..s {
            let h = self.h.at(i);
            if !h.is_zero() {
                a.add_edge(i, i, h.clone())?;
            }
            if i + 1 < s {
                let f = self.f.at(i);
                if !f.is_zero() {
                    a.add_edge(i, i + 1, f.clone())?;
                }
                let g = self.g.at(i);
                if !g.is_zero() {
                    a.add_edge(i + 1, i, g.clone())?;
                }
            }
        }
        Ok(a)
    }
}

/// The two-sided line automaton on all integers (the "bilinear" shape):
/// vertex 0 is initial and final, the positive half carries `(f, g, h)` and
/// the negative half the primed triple `(f', g', h')`, mirrored so that
/// `g'_i` leads away from 0 (`-i -> -(i+1)`) and `f'_i` back toward it.
///
/// The loop at vertex 0 is the positive side's `h_0`; the negative side's
/// index-0 loop never applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearSpec {
    pos: LinearSpec,
    neg: LinearSpec,
}

impl BilinearSpec {
    pub fn new(pos: LinearSpec, neg: LinearSpec) -> Self {
        Self { pos, neg }
    }

    pub fn positive(&self) -> &LinearSpec {
        &self.pos
    }

    pub fn negative(&self) -> &LinearSpec {
        &self.neg
    }

    pub fn order(&self) -> usize {
        self.pos.order().min(self.neg.order())
    }

    pub fn is_uniform(&self) -> bool {
        self.pos.is_uniform() && self.neg.is_uniform()
    }

    pub fn validate_convergent(&self) -> ConvergenceVerdict {
        match self.pos.validate_convergent() {
            ConvergenceVerdict::Accepted => self.neg.validate_convergent(),
            rejected => rejected,
        }
    }

    /// Keep vertices `-(s-1)..=s-1`.
    pub fn truncation(&self, s: usize) -> Result<WeightedAutomaton, AutomatonError> {
        if s == 0 {
            return Err(AutomatonError::InvalidTruncation);
        }
        let idx = |v: i64| (v + s as i64 - 1) as StateId;
        let labels: Vec<String> = (-(s as i64 - 1)..=(s as i64 - 1))
            .map(|v| v.to_string())
            .collect();
        let mut a = WeightedAutomaton::new(labels, idx(0), [idx(0)])?;
        for i in 0..s {
            let v = i as i64;
            let h = self.pos.h_at(i);
            if !h.is_zero() {
                a.add_edge(idx(v), idx(v), h.clone())?;
            }
            if i >= 1 {
                let hn = self.neg.h_at(i);
                if !hn.is_zero() {
                    a.add_edge(idx(-v), idx(-v), hn.clone())?;
                }
            }
            if i + 1 < s {
                let f = self.pos.f_at(i);
                if !f.is_zero() {
                    a.add_edge(idx(v), idx(v + 1), f.clone())?;
                }
                let g = self.pos.g_at(i);
                if !g.is_zero() {
                    a.add_edge(idx(v + 1), idx(v), g.clone())?;
                }
                let gp = self.neg.g_at(i);
                if !gp.is_zero() {
                    a.add_edge(idx(-v), idx(-v - 1), gp.clone())?;
                }
                let fp = self.neg.f_at(i);
                if !fp.is_zero() {
                    a.add_edge(idx(-v - 1), idx(-v), fp.clone())?;
                }
            }
        }
        Ok(a)
    }
}

/// A family specification: one-sided or two-sided line automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Linear(LinearSpec),
    Bilinear(BilinearSpec),
}

impl FamilySpec {
    pub fn validate_convergent(&self) -> ConvergenceVerdict {
        match self {
            FamilySpec::Linear(s) => s.validate_convergent(),
            FamilySpec::Bilinear(s) => s.validate_convergent(),
        }
    }
}

/// Parameters accepted by [`family_spec`]; unset values default to 1.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub k: Option<u64>,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub c: Option<u64>,
}

impl FamilyParams {
    pub fn k_or_default(&self) -> u64 {
        self.k.unwrap_or(1)
    }

    pub fn abc_or_default(&self) -> (u64, u64, u64) {
        (
            self.a.unwrap_or(1),
            self.b.unwrap_or(1),
            self.c.unwrap_or(1),
        )
    }
}

fn positive_k(params: &FamilyParams) -> Result<u64, AutomatonError> {
    let k = params.k_or_default();
    if k == 0 {
        return Err(AutomatonError::InvalidParameter {
            name: "k",
            reason: "must be at least 1".into(),
        });
    }
    Ok(k)
}

/// Build the named family's line specification with weights stored at the
/// given series order.
///
/// Known families: `motzkin` (f=g=h=z), `dyck` (no loops), `riordan`
/// (loop removed at vertex 0), `kcolored` (h=kz), `gen_motzkin` (h=z^k),
/// `fk` (h = kz/(1-z)), `grand_motzkin` (two-sided, all z) and `trinomial`
/// (two-sided, f=az, g=cz, h=bz).
pub fn family_spec(
    name: &str,
    params: &FamilyParams,
    order: usize,
) -> Result<FamilySpec, AutomatonError> {
    let unit = || GeneratorMap::uniform(ParallelTransition::unit(order));
    let spec = match name {
        "motzkin" => FamilySpec::Linear(LinearSpec::new(unit(), unit(), unit())),
        "dyck" => FamilySpec::Linear(LinearSpec::new(
            unit(),
            unit(),
            GeneratorMap::uniform(ParallelTransition::zero(order)),
        )),
        "riordan" => FamilySpec::Linear(LinearSpec::new(
            unit(),
            unit(),
            GeneratorMap::uniform(ParallelTransition::unit(order))
                .with_override(0, ParallelTransition::zero(order)),
        )),
        "kcolored" => {
            let k = positive_k(params)?;
            FamilySpec::Linear(LinearSpec::new(
                unit(),
                unit(),
                GeneratorMap::uniform(ParallelTransition::scaled_unit(k, order)),
            ))
        }
        "gen_motzkin" => {
            let k = positive_k(params)?;
            FamilySpec::Linear(LinearSpec::new(
                unit(),
                unit(),
                GeneratorMap::uniform(ParallelTransition::monomial(1u32, k as usize, order)),
            ))
        }
        "fk" => {
            let k = positive_k(params)?;
            FamilySpec::Linear(LinearSpec::new(
                unit(),
                unit(),
                GeneratorMap::uniform(ParallelTransition::geometric(k, order)),
            ))
        }
        "grand_motzkin" => {
            let side = || LinearSpec::new(unit(), unit(), unit());
            FamilySpec::Bilinear(BilinearSpec::new(side(), side()))
        }
        "trinomial" => {
            let (a, b, c) = params.abc_or_default();
            let side = || {
                LinearSpec::new(
                    GeneratorMap::uniform(ParallelTransition::scaled_unit(a, order)),
                    GeneratorMap::uniform(ParallelTransition::scaled_unit(c, order)),
                    GeneratorMap::uniform(ParallelTransition::scaled_unit(b, order)),
                )
            };
            FamilySpec::Bilinear(BilinearSpec::new(side(), side()))
        }
        other => return Err(AutomatonError::UnknownFamily(other.to_string())),
    };
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TruncatedSeries;

    fn motzkin(order: usize) -> LinearSpec {
        match family_spec("motzkin", &FamilyParams::default(), order).unwrap() {
            FamilySpec::Linear(s) => s,
            _ => unreachable!(),
        }
    }

    #[test]
    fn parallel_transition_rejects_fractions_and_negatives() {
        let half = TruncatedSeries::from_coeffs(
            &[Coefficient::zero(), Coefficient::new(1.into(), 2.into())],
            3,
        )
        .unwrap();
        assert!(matches!(
            ParallelTransition::new(half),
            Err(AutomatonError::BadTransitionCoefficient { index: 1, .. })
        ));
        let neg = TruncatedSeries::from_ints(&[0, -1], 3).unwrap();
        assert!(ParallelTransition::new(neg).is_err());
    }

    #[test]
    fn improper_transition_is_representable_but_rejected() {
        let one = ParallelTransition::new(TruncatedSeries::one(3)).unwrap();
        assert!(!one.is_proper());
        let mut a = WeightedAutomaton::new(vec!["p".into(), "q".into()], 0, [0]).unwrap();
        a.add_edge(0, 1, one).unwrap();
        match a.validate_convergent() {
            ConvergenceVerdict::Rejected(edge) => {
                assert_eq!(edge.src, "p");
                assert_eq!(edge.dst, "q");
            }
            ConvergenceVerdict::Accepted => panic!("constant edge must be rejected"),
        }
    }

    #[test]
    fn parallel_edges_merge_by_addition() {
        let mut a = WeightedAutomaton::new(vec!["p".into(), "q".into()], 0, [0]).unwrap();
        a.add_edge(0, 1, ParallelTransition::unit(4)).unwrap();
        a.add_edge(0, 1, ParallelTransition::monomial(1u32, 2, 4)).unwrap();
        let w = a.edge(0, 1).unwrap();
        assert_eq!(w.terms(), vec![(1, BigInt::from(1)), (2, BigInt::from(1))]);
    }

    #[test]
    fn automaton_constructor_validations() {
        assert!(matches!(
            WeightedAutomaton::new(vec!["p".into()], 0, []),
            Err(AutomatonError::NoFinalStates)
        ));
        assert!(matches!(
            WeightedAutomaton::new(vec!["p".into()], 3, [0]),
            Err(AutomatonError::UnknownState(3))
        ));
        let mut a = WeightedAutomaton::new(vec!["p".into()], 0, [0]).unwrap();
        assert!(matches!(
            a.add_edge(0, 1, ParallelTransition::unit(3)),
            Err(AutomatonError::UnknownState(1))
        ));
    }

    #[test]
    fn motzkin_truncations() {
        let spec = motzkin(8);
        let a1 = spec.truncation(1).unwrap();
        assert_eq!(a1.num_states(), 1);
        assert_eq!(a1.edge(0, 0).unwrap(), &ParallelTransition::unit(8));

        let a2 = spec.truncation(2).unwrap();
        assert_eq!(a2.num_states(), 2);
        for (s, d) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(a2.edge(s, d).unwrap(), &ParallelTransition::unit(8));
        }
        assert!(spec.truncation(0).is_err());
    }

    #[test]
    fn family_specs_are_convergent() {
        let names = ["motzkin", "dyck", "riordan", "kcolored", "gen_motzkin", "fk"];
        for name in names {
            let params = FamilyParams {
                k: Some(2),
                ..Default::default()
            };
            let spec = family_spec(name, &params, 6).unwrap();
            assert!(spec.validate_convergent().is_accepted(), "{name}");
        }
        for name in ["grand_motzkin", "trinomial"] {
            let spec = family_spec(name, &FamilyParams::default(), 6).unwrap();
            assert!(spec.validate_convergent().is_accepted(), "{name}");
        }
    }

    #[test]
    fn family_spec_errors() {
        assert!(matches!(
            family_spec("nope", &FamilyParams::default(), 4),
            Err(AutomatonError::UnknownFamily(_))
        ));
        let zero_k = FamilyParams {
            k: Some(0),
            ..Default::default()
        };
        assert!(matches!(
            family_spec("kcolored", &zero_k, 4),
            Err(AutomatonError::InvalidParameter { name: "k", .. })
        ));
    }

    #[test]
    fn riordan_spec_shape() {
        let spec = match family_spec("riordan", &FamilyParams::default(), 5).unwrap() {
            FamilySpec::Linear(s) => s,
            _ => unreachable!(),
        };
        assert!(spec.h_at(0).is_zero());
        assert_eq!(spec.h_at(1), &ParallelTransition::unit(5));
        assert_eq!(spec.h_at(7), &ParallelTransition::unit(5));
        assert!(!spec.is_uniform());
    }

    #[test]
    fn colored_and_uniform_spec_shapes() {
        let params = FamilyParams {
            k: Some(2),
            ..Default::default()
        };
        let spec = match family_spec("kcolored", &params, 5).unwrap() {
            FamilySpec::Linear(s) => s,
            _ => unreachable!(),
        };
        for i in [0usize, 3, 9] {
            assert_eq!(spec.f_at(i), &ParallelTransition::unit(5));
            assert_eq!(spec.g_at(i), &ParallelTransition::unit(5));
            assert_eq!(spec.h_at(i), &ParallelTransition::scaled_unit(2u32, 5));
        }
        assert!(spec.is_uniform());
    }

    #[test]
    fn expand_unit_steps_shapes() {
        // weight 2z: two parallel unit edges (stored merged as 2z).
        let mut a = WeightedAutomaton::new(vec!["p".into(), "q".into()], 0, [1]).unwrap();
        a.add_edge(0, 1, ParallelTransition::scaled_unit(2u32, 4)).unwrap();
        let e = expand_unit_steps(&a, 3).unwrap();
        assert_eq!(e.num_states(), 2);
        assert_eq!(e.edge(0, 1).unwrap().terms(), vec![(1, BigInt::from(2))]);

        // weight z^2: one chain with one hidden state.
        let mut b = WeightedAutomaton::new(vec!["p".into(), "q".into()], 0, [1]).unwrap();
        b.add_edge(0, 1, ParallelTransition::monomial(1u32, 2, 4)).unwrap();
        let e = expand_unit_steps(&b, 3).unwrap();
        assert_eq!(e.num_states(), 3);
        assert!(e.edge(0, 1).is_none());
        assert_eq!(e.edge(0, 2).unwrap().terms(), vec![(1, BigInt::from(1))]);
        assert_eq!(e.edge(2, 1).unwrap().terms(), vec![(1, BigInt::from(1))]);
        assert!(!e.is_final(2));

        // weight 2z + z^2: two unit edges plus one 2-chain.
        let mut c = WeightedAutomaton::new(vec!["p".into(), "q".into()], 0, [1]).unwrap();
        let w = ParallelTransition::new(TruncatedSeries::from_ints(&[0, 2, 1], 4).unwrap()).unwrap();
        c.add_edge(0, 1, w).unwrap();
        let e = expand_unit_steps(&c, 3).unwrap();
        assert_eq!(e.num_states(), 3);
        assert_eq!(e.edge(0, 1).unwrap().terms(), vec![(1, BigInt::from(2))]);
        assert_eq!(e.edge(0, 2).unwrap().terms(), vec![(1, BigInt::from(1))]);
        assert_eq!(e.edge(2, 1).unwrap().terms(), vec![(1, BigInt::from(1))]);
    }

    #[test]
    fn expand_unit_steps_requires_convergence() {
        let mut a = WeightedAutomaton::new(vec!["p".into()], 0, [0]).unwrap();
        a.add_edge(0, 0, ParallelTransition::new(TruncatedSeries::one(3)).unwrap())
            .unwrap();
        assert!(matches!(
            expand_unit_steps(&a, 3),
            Err(AutomatonError::NotConvergent(_))
        ));
    }

    #[test]
    fn bilinear_truncation_shape() {
        let spec = match family_spec("grand_motzkin", &FamilyParams::default(), 6).unwrap() {
            FamilySpec::Bilinear(s) => s,
            _ => unreachable!(),
        };
        let a = spec.truncation(2).unwrap();
        assert_eq!(a.num_states(), 3);
        assert_eq!(a.label(a.initial()), "0");
        assert!(a.is_final(a.initial()));
        // 0 <-> 1 and 0 <-> -1, loops everywhere.
        let pairs: Vec<_> = a.edges().map(|(s, d, _)| (s, d)).collect();
        assert_eq!(pairs.len(), 7);
    }
}
