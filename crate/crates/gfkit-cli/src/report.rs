//! JSON report emitted by `gfkit verify`.
//!
//! Keys appear in declaration order and maps are sorted, so parsing an
//! emitted report and re-serializing it reproduces the bytes exactly.
//! Sequence terms are strings: they are arbitrary-precision integers and
//! must never pass through a float.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceReport {
    pub family: String,
    pub params: BTreeMap<String, u64>,
    pub order: usize,
    pub methods: BTreeMap<String, Vec<String>>,
    pub agreement: Vec<Agreement>,
    pub timings_ms: BTreeMap<String, u64>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agreement {
    pub pair: String,
    pub agree: bool,
    pub first_diff: Option<FirstDiff>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstDiff {
    pub index: usize,
    pub lhs: String,
    pub rhs: String,
}

impl SequenceReport {
    pub fn all_agree(&self) -> bool {
        self.agreement.iter().all(|a| a.agree)
    }

    /// Compare every pair of method columns on their overlap range.
    pub fn compute_agreement(methods: &BTreeMap<String, Vec<String>>) -> Vec<Agreement> {
        let names: Vec<&String> = methods.keys().collect();
        let mut agreement = Vec::new();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                let (lhs, rhs) = (&methods[names[i]], &methods[names[j]]);
                let overlap = lhs.len().min(rhs.len());
                let first_diff = (0..overlap)
                    .find(|&t| lhs[t] != rhs[t])
                    .map(|index| FirstDiff {
                        index,
                        lhs: lhs[index].clone(),
                        rhs: rhs[index].clone(),
                    });
                agreement.push(Agreement {
                    pair: format!("{}/{}", names[i], names[j]),
                    agree: first_diff.is_none(),
                    first_diff,
                });
            }
        }
        agreement
    }

    /// Serialized form, newline-terminated.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn terms_to_strings(terms: &[BigInt]) -> Vec<String> {
    terms.iter().map(BigInt::to_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disagreement_reports_first_index_and_values() {
        let mut methods = BTreeMap::new();
        methods.insert("cf".to_string(), vec!["1".into(), "2".into(), "4".into()]);
        methods.insert("dp".to_string(), vec!["1".into(), "2".into(), "5".into()]);
        let agreement = SequenceReport::compute_agreement(&methods);
        assert_eq!(agreement.len(), 1);
        assert_eq!(agreement[0].pair, "cf/dp");
        assert!(!agreement[0].agree);
        let diff = agreement[0].first_diff.as_ref().unwrap();
        assert_eq!(diff.index, 2);
        assert_eq!(diff.lhs, "4");
        assert_eq!(diff.rhs, "5");
    }

    #[test]
    fn agreement_uses_overlap_range_only() {
        let mut methods = BTreeMap::new();
        methods.insert("cf".to_string(), vec!["1".into(), "1".into(), "2".into()]);
        methods.insert("brute".to_string(), vec!["1".into(), "1".into()]);
        let agreement = SequenceReport::compute_agreement(&methods);
        assert!(agreement[0].agree);
    }
}
