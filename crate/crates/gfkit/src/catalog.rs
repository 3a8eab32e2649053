//! Registry binding each named sequence family to its evaluation methods
//! (continued fraction, closed forms, coefficient formula) and to its
//! brute-force path oracle, so that callers need no per-family logic.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::automaton::{
    family_spec, BilinearSpec, FamilyParams, FamilySpec, LinearSpec, ParallelTransition,
};
use crate::engine::{
    bilinear_gf, bilinear_gf_at_depth, bilinear_radical, bilinear_sum, linear_cf,
    linear_cf_at_depth, uniform_radical, uniform_sum,
};
use crate::families::{
    catalan, fk_coeff, grand_motzkin_coeff, integer_terms, kcolored_coeff, motzkin_coeff,
    narayana, riordan_gf, riordan_recurrence, trinomial_coeff, FamilyError,
};
use crate::oracle::{brute_paths, dp_count_bilinear, dp_count_linear, PathFamily};

/// Evaluation routes a catalog family may support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Continued-fraction evaluation (or the equation solution for
    /// two-sided families).
    Cf,
    /// Closed-form radical expression.
    Radical,
    /// Coefficient double/triple sum evaluated as a series.
    Sum,
    /// Direct per-coefficient formula.
    Formula,
    /// Dynamic-programming word counts over the truncated automaton.
    Dp,
    /// Exhaustive path enumeration (capped; see [`crate::oracle::BRUTE_CAP`]).
    Brute,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Cf,
        Method::Radical,
        Method::Sum,
        Method::Formula,
        Method::Dp,
        Method::Brute,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Cf => "cf",
            Method::Radical => "radical",
            Method::Sum => "sum",
            Method::Formula => "formula",
            Method::Dp => "dp",
            Method::Brute => "brute",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == s)
    }
}

/// Families the catalog resolves, with their parameter names.
pub const FAMILY_NAMES: [(&str, &str); 9] = [
    ("motzkin", ""),
    ("dyck", ""),
    ("riordan", ""),
    ("schroeder", ""),
    ("kcolored", "k"),
    ("gen_motzkin", "k"),
    ("fk", "k"),
    ("grand_motzkin", ""),
    ("trinomial", "a b c"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    /// Uniform half-line family addressed by `family_spec` name and `k`.
    Uniform { family: &'static str, k: u64 },
    Riordan,
    /// Uniform two-sided family with rise/level/fall colors `(a, b, c)`.
    Bilinear { a: u64, b: u64, c: u64 },
    /// Even-position subsequence of the `gen_motzkin(2)` series: term `i`
    /// reads coefficient `2i` (path length `2i`).
    Schroeder,
}

/// A sequence family bound to concrete parameters: its line-automaton
/// specification, every applicable evaluation method, and its path oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyCatalogEntry {
    name: &'static str,
    params: Vec<(&'static str, u64)>,
    kind: Kind,
}

impl FamilyCatalogEntry {
    /// Look up a family by name, binding and validating its parameters.
    pub fn resolve(name: &str, params: &FamilyParams) -> Result<Self, FamilyError> {
        let k = params.k_or_default();
        let positive_k = || -> Result<u64, FamilyError> {
            if k == 0 {
                Err(FamilyError::InvalidParameter {
                    name: "k",
                    reason: "must be at least 1".into(),
                })
            } else {
                Ok(k)
            }
        };
        let entry = match name {
            "motzkin" => Self {
                name: "motzkin",
                params: vec![],
                kind: Kind::Uniform {
                    family: "motzkin",
                    k: 1,
                },
            },
            "dyck" => Self {
                name: "dyck",
                params: vec![],
                kind: Kind::Uniform {
                    family: "dyck",
                    k: 1,
                },
            },
            "riordan" => Self {
                name: "riordan",
                params: vec![],
                kind: Kind::Riordan,
            },
            "schroeder" => Self {
                name: "schroeder",
                params: vec![],
                kind: Kind::Schroeder,
            },
            "kcolored" => Self {
                name: "kcolored",
                params: vec![("k", positive_k()?)],
                kind: Kind::Uniform {
                    family: "kcolored",
                    k,
                },
            },
            "gen_motzkin" => Self {
                name: "gen_motzkin",
                params: vec![("k", positive_k()?)],
                kind: Kind::Uniform {
                    family: "gen_motzkin",
                    k,
                },
            },
            "fk" => Self {
                name: "fk",
                params: vec![("k", positive_k()?)],
                kind: Kind::Uniform { family: "fk", k },
            },
            "grand_motzkin" => Self {
                name: "grand_motzkin",
                params: vec![],
                kind: Kind::Bilinear { a: 1, b: 1, c: 1 },
            },
            "trinomial" => {
                let (a, b, c) = params.abc_or_default();
                Self {
                    name: "trinomial",
                    params: vec![("a", a), ("b", b), ("c", c)],
                    kind: Kind::Bilinear { a, b, c },
                }
            }
            other => {
                let known: Vec<&str> = FAMILY_NAMES.iter().map(|(n, _)| *n).collect();
                return Err(FamilyError::InvalidParameter {
                    name: "family",
                    reason: format!("unknown family '{other}' (known: {})", known.join(", ")),
                });
            }
        };
        Ok(entry)
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn params(&self) -> &[(&'static str, u64)] {
        &self.params
    }

    /// Methods this family supports; no direct formula is known for
    /// `gen_motzkin` with general `k`, and the triple sum needs equal rise
    /// and fall weights.
    pub fn methods(&self) -> Vec<Method> {
        match &self.kind {
            Kind::Uniform { family, .. } => {
                let mut ms = vec![Method::Cf, Method::Radical, Method::Sum];
                if *family != "gen_motzkin" {
                    ms.push(Method::Formula);
                }
                ms.extend([Method::Dp, Method::Brute]);
                ms
            }
            Kind::Riordan => vec![
                Method::Cf,
                Method::Radical,
                Method::Formula,
                Method::Dp,
                Method::Brute,
            ],
            Kind::Bilinear { a, c, .. } => {
                let mut ms = vec![Method::Cf, Method::Radical];
                if a == c {
                    ms.push(Method::Sum);
                }
                ms.extend([Method::Formula, Method::Dp, Method::Brute]);
                ms
            }
            Kind::Schroeder => Method::ALL.to_vec(),
        }
    }

    pub fn has_method(&self, method: Method) -> bool {
        self.methods().contains(&method)
    }

    pub fn default_method(&self) -> Method {
        Method::Cf
    }

    /// The lattice-path model backing the brute-force oracle.
    pub fn path_family(&self) -> PathFamily {
        match &self.kind {
            Kind::Uniform { family, k } => match *family {
                "motzkin" => PathFamily::motzkin(),
                "dyck" => PathFamily::dyck(),
                "kcolored" => PathFamily::kcolored(*k),
                "gen_motzkin" => PathFamily::gen_motzkin(*k as usize),
                "fk" => PathFamily::fk(*k),
                _ => unreachable!("unknown uniform family"),
            },
            Kind::Riordan => PathFamily::riordan(),
            Kind::Bilinear { a, b, c } => PathFamily::trinomial(*a, *b, *c),
            Kind::Schroeder => PathFamily::gen_motzkin(2),
        }
    }

    /// Path length that realizes sequence index `i` (doubled for the
    /// even-position Schroeder view).
    pub fn path_length(&self, i: usize) -> usize {
        match self.kind {
            Kind::Schroeder => 2 * i,
            _ => i,
        }
    }

    fn linear_spec(&self, order: usize) -> Result<LinearSpec, FamilyError> {
        let (family, k) = match &self.kind {
            Kind::Uniform { family, k } => (*family, *k),
            Kind::Riordan => ("riordan", 1),
            Kind::Schroeder => ("gen_motzkin", 2),
            Kind::Bilinear { .. } => unreachable!("two-sided family"),
        };
        let params = FamilyParams {
            k: Some(k),
            ..Default::default()
        };
        match family_spec(family, &params, order).map_err(crate::engine::EngineError::from)? {
            FamilySpec::Linear(s) => Ok(s),
            FamilySpec::Bilinear(_) => unreachable!(),
        }
    }

    fn bilinear_spec(&self, order: usize) -> Result<BilinearSpec, FamilyError> {
        let Kind::Bilinear { a, b, c } = self.kind else {
            unreachable!("one-sided family")
        };
        let params = FamilyParams {
            a: Some(a),
            b: Some(b),
            c: Some(c),
            k: None,
        };
        match family_spec("trinomial", &params, order).map_err(crate::engine::EngineError::from)? {
            FamilySpec::Bilinear(s) => Ok(s),
            FamilySpec::Linear(_) => unreachable!(),
        }
    }

    /// The uniform weight triple (f, g, h) at the given stored width.
    fn uniform_triple(
        &self,
        width: usize,
    ) -> (ParallelTransition, ParallelTransition, ParallelTransition) {
        let z = ParallelTransition::unit(width);
        match &self.kind {
            Kind::Uniform { family, k } => {
                let h = match *family {
                    "motzkin" => ParallelTransition::unit(width),
                    "dyck" => ParallelTransition::zero(width),
                    "kcolored" => ParallelTransition::scaled_unit(*k, width),
                    "gen_motzkin" => ParallelTransition::monomial(1u32, *k as usize, width),
                    "fk" => ParallelTransition::geometric(*k, width),
                    _ => unreachable!(),
                };
                (z.clone(), z, h)
            }
            Kind::Schroeder => (
                z.clone(),
                z,
                ParallelTransition::monomial(1u32, 2, width),
            ),
            Kind::Bilinear { a, b, c } => (
                ParallelTransition::scaled_unit(*a, width),
                ParallelTransition::scaled_unit(*c, width),
                ParallelTransition::scaled_unit(*b, width),
            ),
            Kind::Riordan => unreachable!("riordan is not uniform"),
        }
    }

    /// Terms `a(0)..a(n)` by the chosen method.
    ///
    /// `depth` overrides the continued-fraction depth for [`Method::Cf`];
    /// [`Method::Brute`] refuses past the enumeration cap.
    pub fn terms(&self, method: Method, n: usize, depth: Option<usize>) -> Result<Vec<BigInt>, FamilyError> {
        if !self.has_method(method) {
            return Err(FamilyError::InvalidParameter {
                name: "method",
                reason: format!("family '{}' has no method '{}'", self.name, method.name()),
            });
        }
        // The even-position view reads coefficient 2n, so it works at the
        // doubled order throughout.
        let last = self.path_length(n);
        let order = last + 1;
        let series_terms = |series: &crate::series::TruncatedSeries| -> Vec<BigInt> {
            let all = integer_terms(series, last);
            (0..=n).map(|i| all[self.path_length(i)].clone()).collect()
        };

        match (&self.kind, method) {
            (Kind::Bilinear { a, b, c }, m) => {
                let spec = self.bilinear_spec(order)?;
                match m {
                    Method::Cf => {
                        let series = match depth {
                            Some(d) => bilinear_gf_at_depth(&spec, d, order)?,
                            None => bilinear_gf(&spec, order)?,
                        };
                        Ok(series_terms(&series))
                    }
                    Method::Radical => {
                        let (f, g, h) = self.uniform_triple(order);
                        Ok(series_terms(&bilinear_radical(&f, &g, &h, order)?))
                    }
                    Method::Sum => {
                        let (f, _, h) = self.uniform_triple(order);
                        Ok(series_terms(&bilinear_sum(&f, &h, order)?))
                    }
                    Method::Formula => {
                        if self.name == "grand_motzkin" {
                            Ok((0..=n).map(grand_motzkin_coeff).collect())
                        } else {
                            Ok((0..=n).map(|i| trinomial_coeff(*a, *b, *c, i)).collect())
                        }
                    }
                    Method::Dp => Ok(dp_count_bilinear(&spec, n)?),
                    Method::Brute => self.brute_terms(n),
                }
            }
            (Kind::Riordan, m) => match m {
                Method::Cf => {
                    let spec = self.linear_spec(order)?;
                    let series = match depth {
                        Some(d) => linear_cf_at_depth(&spec, d, order)?,
                        None => linear_cf(&spec, order)?,
                    };
                    Ok(series_terms(&series))
                }
                Method::Radical => Ok(series_terms(&riordan_gf(order))),
                Method::Formula => {
                    let motzkin: Vec<BigInt> = (0..=n).map(motzkin_coeff).collect();
                    let mut r = Vec::with_capacity(n + 1);
                    for i in 0..=n {
                        let value = match i {
                            0 => BigInt::from(1),
                            1 => BigInt::zero(),
                            _ => riordan_recurrence(i, &motzkin, &r)?,
                        };
                        r.push(value);
                    }
                    Ok(r)
                }
                Method::Dp => {
                    let spec = self.linear_spec(order)?;
                    Ok(dp_count_linear(&spec, n)?)
                }
                Method::Brute => self.brute_terms(n),
                Method::Sum => unreachable!("filtered by has_method"),
            },
            (_, m) => {
                // Uniform one-sided families, including the even-position view.
                match m {
                    Method::Cf => {
                        let spec = self.linear_spec(order)?;
                        let series = match depth {
                            Some(d) => linear_cf_at_depth(&spec, d, order)?,
                            None => linear_cf(&spec, order)?,
                        };
                        Ok(series_terms(&series))
                    }
                    Method::Radical => {
                        let (f, g, h) = self.uniform_triple(order + 2);
                        Ok(series_terms(&uniform_radical(&f, &g, &h, order)?))
                    }
                    Method::Sum => {
                        let (f, g, h) = self.uniform_triple(order);
                        Ok(series_terms(&uniform_sum(&f, &g, &h, order)?))
                    }
                    Method::Formula => match &self.kind {
                        Kind::Uniform { family, k } => match *family {
                            "motzkin" => Ok((0..=n).map(motzkin_coeff).collect()),
                            "dyck" => Ok((0..=n)
                                .map(|i| {
                                    if i % 2 == 0 {
                                        catalan(i / 2)
                                    } else {
                                        BigInt::zero()
                                    }
                                })
                                .collect()),
                            "kcolored" => (0..=n).map(|i| kcolored_coeff(i, *k)).collect(),
                            "fk" => (0..=n).map(|i| fk_coeff(i, *k)).collect(),
                            _ => unreachable!("filtered by has_method"),
                        },
                        Kind::Schroeder => (0..=n)
                            .map(|i| {
                                if i == 0 {
                                    return Ok(BigInt::from(1));
                                }
                                let mut acc = BigInt::zero();
                                for j in 1..=i {
                                    acc += narayana(i as u64, j as u64)?
                                        * crate::combinatorics::ipow(&BigInt::from(2), j as u64);
                                }
                                Ok(acc)
                            })
                            .collect(),
                        _ => unreachable!(),
                    },
                    Method::Dp => {
                        let spec = self.linear_spec(order)?;
                        let counts = dp_count_linear(&spec, last)?;
                        Ok((0..=n).map(|i| counts[self.path_length(i)].clone()).collect())
                    }
                    Method::Brute => self.brute_terms(n),
                }
            }
        }
    }

    /// Brute-force terms `a(0)..a(n)`; errors past the enumeration cap.
    pub fn brute_terms(&self, n: usize) -> Result<Vec<BigInt>, FamilyError> {
        let paths = self.path_family();
        (0..=n)
            .map(|i| Ok(brute_paths(&paths, self.path_length(i))?))
            .collect()
    }
}

impl From<crate::oracle::OracleError> for FamilyError {
    fn from(e: crate::oracle::OracleError) -> Self {
        match e {
            crate::oracle::OracleError::BruteCapExceeded { n, cap } => {
                FamilyError::InvalidParameter {
                    name: "n",
                    reason: format!("brute-force enumeration refused for n = {n} (cap {cap})"),
                }
            }
            crate::oracle::OracleError::Automaton(a) => {
                FamilyError::Engine(crate::engine::EngineError::Automaton(a))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn entry(name: &str, params: FamilyParams) -> FamilyCatalogEntry {
        FamilyCatalogEntry::resolve(name, &params).unwrap()
    }

    #[test]
    fn resolve_validates() {
        assert!(FamilyCatalogEntry::resolve("nope", &FamilyParams::default()).is_err());
        let zero_k = FamilyParams {
            k: Some(0),
            ..Default::default()
        };
        assert!(FamilyCatalogEntry::resolve("kcolored", &zero_k).is_err());
    }

    #[test]
    fn all_methods_agree_per_family() {
        let cases: Vec<(&str, FamilyParams)> = vec![
            ("motzkin", FamilyParams::default()),
            ("dyck", FamilyParams::default()),
            ("riordan", FamilyParams::default()),
            ("schroeder", FamilyParams::default()),
            (
                "kcolored",
                FamilyParams {
                    k: Some(3),
                    ..Default::default()
                },
            ),
            (
                "gen_motzkin",
                FamilyParams {
                    k: Some(2),
                    ..Default::default()
                },
            ),
            (
                "fk",
                FamilyParams {
                    k: Some(2),
                    ..Default::default()
                },
            ),
            ("grand_motzkin", FamilyParams::default()),
            (
                "trinomial",
                FamilyParams {
                    a: Some(1),
                    b: Some(2),
                    c: Some(3),
                    k: None,
                },
            ),
        ];
        for (name, params) in cases {
            let e = entry(name, params);
            let n = 8;
            let reference = e.terms(e.default_method(), n, None).unwrap();
            for m in e.methods() {
                if m == Method::Brute && e.path_length(n) > crate::oracle::BRUTE_CAP {
                    continue;
                }
                let got = e.terms(m, n, None).unwrap();
                assert_eq!(got, reference, "{name} via {}", m.name());
            }
        }
    }

    #[test]
    fn schroeder_terms() {
        let e = entry("schroeder", FamilyParams::default());
        let terms = e.terms(Method::Radical, 6, None).unwrap();
        assert_eq!(terms, big(&[1, 2, 6, 22, 90, 394, 1806]));
        assert_eq!(e.terms(Method::Formula, 6, None).unwrap(), terms);
    }

    #[test]
    fn unknown_method_is_rejected() {
        let e = entry("gen_motzkin", FamilyParams {
            k: Some(2),
            ..Default::default()
        });
        assert!(!e.has_method(Method::Formula));
        assert!(e.terms(Method::Formula, 4, None).is_err());
    }

    #[test]
    fn brute_cap_is_enforced() {
        let e = entry("motzkin", FamilyParams::default());
        assert!(e.brute_terms(crate::oracle::BRUTE_CAP + 1).is_err());
    }
}
