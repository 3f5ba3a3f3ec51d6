//! Machine-readable verification reports.
//!
//! A report carries one record per check with a status, a witness payload on
//! failure, and wall-clock timing. Given the same inputs and seed, reports
//! are byte-stable except for the timing fields.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A check whose failure would contradict one of the verified claims.
    Falsified,
    BudgetExceeded,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportCheck {
    pub name: String,
    pub claim: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub suite: String,
    pub params: serde_json::Value,
    pub seed: u64,
    pub budget: u64,
    pub status: Status,
    pub checks: Vec<ReportCheck>,
}

impl Report {
    pub fn new(suite: &str, params: serde_json::Value, seed: u64, budget: u64) -> Self {
        Report {
            tool: "lw".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            suite: suite.into(),
            params,
            seed,
            budget,
            status: Status::Pass,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: ReportCheck) {
        self.checks.push(check);
        self.recompute_status();
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = ReportCheck>) {
        self.checks.extend(checks);
        self.recompute_status();
    }

    fn recompute_status(&mut self) {
        let mut status = Status::Pass;
        for c in &self.checks {
            match c.status {
                Status::Fail | Status::Falsified => {
                    status = c.status;
                    break;
                }
                Status::BudgetExceeded => status = Status::BudgetExceeded,
                Status::Pass => {}
            }
        }
        self.status = status;
    }

    /// Exit-code contract: 0 all pass, 1 any failure or falsification,
    /// 2 budget exhaustion without failures.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail | Status::Falsified => 1,
            Status::BudgetExceeded => 2,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).unwrap();
        s.push('\n');
        s
    }
}

/// Converts a core check (from the construction or pipeline verifiers).
pub fn from_core(check: &layered_wheel::construction::Check, elapsed_ms: u64) -> ReportCheck {
    ReportCheck {
        name: check.name.clone(),
        claim: check.claim.clone(),
        status: if check.passed { Status::Pass } else { Status::Fail },
        witness: check.witness.as_ref().map(|w| serde_json::Value::String(w.clone())),
        elapsed_ms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_aggregation_and_exit_codes() {
        let mut r = Report::new("t", serde_json::json!({}), 0, 0);
        assert_eq!(r.exit_code(), 0);
        r.push(ReportCheck {
            name: "a".into(),
            claim: "c".into(),
            status: Status::BudgetExceeded,
            witness: None,
            elapsed_ms: 0,
        });
        assert_eq!(r.exit_code(), 2);
        r.push(ReportCheck {
            name: "b".into(),
            claim: "c".into(),
            status: Status::Falsified,
            witness: None,
            elapsed_ms: 0,
        });
        assert_eq!(r.exit_code(), 1);
    }
}
