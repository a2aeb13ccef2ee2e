//! Machine-readable verification outcomes.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A computed value recorded without a verdict.
    Reported,
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// A value stated in the literature on these algebras.
    Published,
    /// Computed independently of the code under test.
    Derived,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub value: Value,
    pub source: Source,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub claim: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
    pub actual: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Fingerprint of the conventions, coefficients and seeds in force.
    pub config: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl VerificationReport {
    /// Pass iff `actual == expected`.
    pub fn compare(
        name: impl Into<String>,
        claim: impl Into<String>,
        expected: impl Serialize,
        source: Source,
        actual: impl Serialize,
        config: &str,
    ) -> VerificationReport {
        let expected = serde_json::to_value(expected).expect("serializable");
        let actual = serde_json::to_value(actual).expect("serializable");
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        VerificationReport {
            name: name.into(),
            claim: claim.into(),
            status,
            expected: Some(Expected { value: expected, source }),
            actual,
            witness: None,
            config: config.to_string(),
            wall_time_ms: None,
        }
    }

    /// A predicate check. A failing predicate must carry a witness.
    pub fn predicate(
        name: impl Into<String>,
        claim: impl Into<String>,
        holds: bool,
        actual: impl Serialize,
        witness: Option<Value>,
        config: &str,
    ) -> VerificationReport {
        let mut r = VerificationReport {
            name: name.into(),
            claim: claim.into(),
            status: if holds { Status::Pass } else { Status::Fail },
            expected: None,
            actual: serde_json::to_value(actual).expect("serializable"),
            witness,
            config: config.to_string(),
            wall_time_ms: None,
        };
        if !holds && r.witness.is_none() {
            r.witness = Some(Value::String("no witness available".into()));
        }
        r
    }

    pub fn reported(
        name: impl Into<String>,
        claim: impl Into<String>,
        expected: Option<Expected>,
        actual: impl Serialize,
        config: &str,
    ) -> VerificationReport {
        VerificationReport {
            name: name.into(),
            claim: claim.into(),
            status: Status::Reported,
            expected,
            actual: serde_json::to_value(actual).expect("serializable"),
            witness: None,
            config: config.to_string(),
            wall_time_ms: None,
        }
    }

    pub fn with_witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_time(mut self, ms: f64) -> Self {
        self.wall_time_ms = Some(ms);
        self
    }

    /// Whether the invariant "a failure carries a witness or both values" holds.
    pub fn is_well_formed(&self) -> bool {
        self.status != Status::Fail || self.witness.is_some() || self.expected.is_some()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub reported: usize,
}

/// A list of checks plus the configuration that produced them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportSet {
    pub fingerprint: String,
    pub config: Value,
    pub tally: Tally,
    pub checks: Vec<VerificationReport>,
}

impl ReportSet {
    pub fn new(fingerprint: String, config: Value, checks: Vec<VerificationReport>) -> ReportSet {
        let mut tally = Tally::default();
        for c in &checks {
            match c.status {
                Status::Pass => tally.pass += 1,
                Status::Fail => tally.fail += 1,
                Status::Reported => tally.reported += 1,
            }
        }
        ReportSet {
            fingerprint,
            config,
            tally,
            checks,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.tally.fail == 0
    }

    /// Drops wall-clock times so that equal configurations give equal bytes.
    pub fn canonical(mut self) -> ReportSet {
        for c in &mut self.checks {
            c.wall_time_ms = None;
        }
        self
    }

    /// Fixed-width text table, one line per check.
    pub fn summary_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(5);
        let mut s = format!("{:<width$}  {:<8}  actual\n", "check", "status");
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Reported => "reported",
            };
            let mut actual = c.actual.to_string();
            if actual.len() > 60 {
                actual.truncate(57);
                actual.push_str("...");
            }
            s.push_str(&format!("{:<width$}  {:<8}  {}\n", c.name, status, actual));
        }
        s.push_str(&format!(
            "\n{} pass, {} fail, {} reported\n",
            self.tally.pass, self.tally.fail, self.tally.reported
        ));
        s
    }
}
