//! Exact enumeration of lattice-path families via weighted counting
//! automata.
//!
//! The pipeline: an automaton (finite, or a line-shaped specification of an
//! infinite one) carries series-weighted transitions; its generating
//! function is computed by solving the GF equation system, by evaluating a
//! continued fraction, or by a closed form — all over truncated power series
//! with arbitrary-precision rational coefficients, so every reported
//! coefficient is exact. Independent brute-force path enumeration and an
//! automaton DP cross-check each route.
//!
//! Layering, bottom up:
//!
//! - [`series`]: truncated power series arithmetic over exact rationals.
//! - [`combinatorics`]: binomials, Catalan numbers, integer powers.
//! - [`automaton`]: weighted counting automata, line specifications, the
//!   text description format.
//! - [`engine`]: GF equation solving, continued fractions, closed forms.
//! - [`oracle`]: brute-force path counts and DP word counts.
//! - [`families`]: named-family formulas and generating functions.
//! - [`catalog`]: family registry binding methods and oracles together.
//! - [`identities`]: the cross-family identity suite.
//!
//! # Quick start
//!
//! ```
//! use gfkit::{family_spec, linear_cf, FamilyParams, FamilySpec};
//! use gfkit::oracle::{brute_paths, PathFamily};
//!
//! // The half-line automaton with unit rise, fall and loop weights counts
//! // Motzkin paths; its GF is a continued fraction.
//! let spec = match family_spec("motzkin", &FamilyParams::default(), 8)? {
//!     FamilySpec::Linear(s) => s,
//!     _ => unreachable!(),
//! };
//! let gf = linear_cf(&spec, 8)?;
//! let m4 = gf.coeff(4)?.to_integer();
//!
//! // Exhaustive path enumeration agrees.
//! assert_eq!(m4, brute_paths(&PathFamily::motzkin(), 4)?);
//! assert_eq!(m4, 9.into());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod automaton;
pub mod catalog;
pub mod combinatorics;
pub mod engine;
pub mod families;
pub mod identities;
pub mod oracle;
pub mod series;

pub use automaton::{
    expand_unit_steps, family_spec, parse_automaton, AutomatonError, BilinearSpec,
    ConvergenceVerdict, FamilyParams, FamilySpec, GeneratorMap, LinearSpec, ParallelTransition,
    StateId, WeightedAutomaton,
};
pub use catalog::{FamilyCatalogEntry, Method, FAMILY_NAMES};
pub use engine::{
    bilinear_gf, bilinear_radical, bilinear_sum, cf_depth_bound, cf_tail, linear_cf,
    solve_system, uniform_radical, uniform_sum, EngineError, GfSolution,
};
pub use families::FamilyError;
pub use oracle::{brute_paths, dp_count, CountTable, LevelSteps, OracleError, PathFamily};
pub use series::{Coefficient, SeriesError, TruncatedSeries};
