//! Plain-text automaton description format.
//!
//! One statement per line; `#` starts a comment and blank lines are ignored:
//!
//! ```text
//! initial q0
//! final q0 q2
//! q0 q1 0 2 1      # edge q0 -> q1 with weight 2z + z^2
//! q1 q0 0 1
//! ```
//!
//! - `initial <state>` names the initial state (required, exactly once).
//! - `final <state>...` names the final states (required, at least one).
//! - Every other line is an edge `src dst c0 c1 ... cm` with weight
//!   `c0 + c1*z + ... + cm*z^m`; the `c_i` are nonnegative integers.
//!
//! States are declared implicitly by first mention. A nonzero `c0` parses
//! fine but fails convergence validation, which is reported against the
//! offending edge. Coefficients of `z^order` and above are dropped: they
//! cannot contribute to any word count below the working order.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{AutomatonError, ParallelTransition, StateId, WeightedAutomaton};
use crate::series::{Coefficient, TruncatedSeries};

/// Parse the text format into an automaton whose edge weights are stored at
/// the given series order. Errors carry the 1-based line number.
pub fn parse_automaton(input: &str, order: usize) -> Result<WeightedAutomaton, AutomatonError> {
    if order == 0 {
        return Err(AutomatonError::Series(
            crate::series::SeriesError::InvalidOrder,
        ));
    }

    let mut labels: Vec<String> = Vec::new();
    let intern = |name: &str, labels: &mut Vec<String>| -> StateId {
        match labels.iter().position(|l| l == name) {
            Some(id) => id,
            None => {
                labels.push(name.to_string());
                labels.len() - 1
            }
        }
    };

    let mut initial: Option<StateId> = None;
    let mut finals: Vec<StateId> = Vec::new();
    let mut edges: Vec<(StateId, StateId, ParallelTransition)> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = text.split_whitespace().collect();
        match tokens[0] {
            "initial" => {
                if tokens.len() != 2 {
                    return Err(AutomatonError::Parse {
                        line,
                        message: "expected 'initial <state>'".into(),
                    });
                }
                if initial.is_some() {
                    return Err(AutomatonError::Parse {
                        line,
                        message: "duplicate 'initial' line".into(),
                    });
                }
                initial = Some(intern(tokens[1], &mut labels));
            }
            "final" => {
                if tokens.len() < 2 {
                    return Err(AutomatonError::Parse {
                        line,
                        message: "expected 'final <state>...' with at least one state".into(),
                    });
                }
                if !finals.is_empty() {
                    return Err(AutomatonError::Parse {
                        line,
                        message: "duplicate 'final' line".into(),
                    });
                }
                for name in &tokens[1..] {
                    finals.push(intern(name, &mut labels));
                }
            }
            _ => {
                if tokens.len() < 3 {
                    return Err(AutomatonError::Parse {
                        line,
                        message: "expected 'src dst c0 c1 ... cm' with at least one coefficient"
                            .into(),
                    });
                }
                let src = intern(tokens[0], &mut labels);
                let dst = intern(tokens[1], &mut labels);
                let mut coeffs: Vec<Coefficient> = Vec::with_capacity(tokens.len() - 2);
                for tok in &tokens[2..] {
                    let value: BigInt = tok.parse().map_err(|_| AutomatonError::Parse {
                        line,
                        message: format!("'{tok}' is not an integer coefficient"),
                    })?;
                    if value < BigInt::zero() {
                        return Err(AutomatonError::Parse {
                            line,
                            message: format!("coefficient {value} is negative"),
                        });
                    }
                    coeffs.push(Coefficient::from_integer(value));
                }
                let series = TruncatedSeries::from_coeffs(&coeffs, order)?;
                edges.push((src, dst, ParallelTransition::new(series)?));
            }
        }
    }

    let initial = initial
        .ok_or_else(|| AutomatonError::MissingDirective("missing 'initial' line".into()))?;
    if finals.is_empty() {
        return Err(AutomatonError::MissingDirective(
            "missing 'final' line".into(),
        ));
    }

    let mut a = WeightedAutomaton::new(labels, initial, finals)?;
    for (src, dst, w) in edges {
        a.add_edge(src, dst, w)?;
    }
    Ok(a)
}
