//! Machine-readable suite reports.
//!
//! Exact scalars appear twice per case: as a grammar-compatible string
//! (re-parseable with the expression parser) and as an object mapping the
//! eps exponent to a "num/den" coefficient string. Everything outside the
//! `timing` block is deterministic given the suite parameters and seed.

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use weylver_core::eps::EpsScalar;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SuiteParameters {
    pub n: usize,
    #[serde(rename = "N")]
    pub nn: usize,
    pub deg: u32,
    pub cases: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CaseResult {
    pub index: usize,
    pub input: String,
    pub expected: String,
    pub got: String,
    pub expected_eps: BTreeMap<String, String>,
    pub got_eps: BTreeMap<String, String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Wall time and timestamp; excluded from the determinism contract.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Timing {
    pub wall_time_ms: u128,
    pub timestamp_unix_ms: u128,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub parameters: SuiteParameters,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
    pub timing: Timing,
}

/// The eps-exponent -> "num/den" object form of a scalar.
pub fn eps_object(v: &EpsScalar) -> BTreeMap<String, String> {
    v.terms()
        .map(|(e, c)| (e.to_string(), format!("{}/{}", c.numer(), c.denom())))
        .collect()
}

pub fn case(index: usize, input: String, expected: &EpsScalar, got: &EpsScalar) -> CaseResult {
    CaseResult {
        index,
        input,
        expected: expected.to_string(),
        got: got.to_string(),
        expected_eps: eps_object(expected),
        got_eps: eps_object(got),
        pass: expected == got,
    }
}

/// A case whose verdict is a plain predicate (rendered as 1/0).
pub fn flag_case(index: usize, input: String, pass: bool) -> CaseResult {
    let expected = EpsScalar::one();
    let got = if pass {
        EpsScalar::one()
    } else {
        EpsScalar::zero()
    };
    case(index, input, &expected, &got)
}

impl SuiteReport {
    pub fn assemble(
        suite: &str,
        parameters: SuiteParameters,
        mut cases: Vec<CaseResult>,
        wall_time_ms: u128,
    ) -> Self {
        cases.sort_by_key(|c| c.index);
        let total = cases.len();
        let passed = cases.iter().filter(|c| c.pass).count();
        let summary = Summary {
            total,
            passed,
            failed: total - passed,
        };
        let timestamp_unix_ms = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis())
            .unwrap_or(0);
        SuiteReport {
            suite: suite.to_string(),
            parameters,
            cases,
            summary,
            timing: Timing {
                wall_time_ms,
                timestamp_unix_ms,
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {} (n={}, N={}, deg={}, cases={}, seed={})\n",
            self.suite,
            self.parameters.n,
            self.parameters.nn,
            self.parameters.deg,
            self.parameters.cases,
            self.parameters.seed
        ));
        for c in &self.cases {
            if c.pass {
                out.push_str(&format!("  [pass] {:>3}  {}\n", c.index, c.input));
            } else {
                out.push_str(&format!(
                    "  [FAIL] {:>3}  {}\n         expected {}\n         got      {}\n",
                    c.index, c.input, c.expected, c.got
                ));
            }
        }
        out.push_str(&format!(
            "  {} / {} passed ({} failed) in {} ms\n",
            self.summary.passed, self.summary.total, self.summary.failed, self.timing.wall_time_ms
        ));
        out
    }
}
