use std::collections::BTreeMap;

use bwcert_core::SpreadRegime;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(passed: bool) -> Self {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub claim: String,
    pub status: Status,
    /// What the theory predicts for this field.
    pub expected: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub witness: Value,
    pub counts: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl Check {
    pub fn new(name: &str, claim: &str, expected_pass: bool, passed: bool) -> Self {
        Check {
            name: name.to_string(),
            claim: claim.to_string(),
            status: Status::from_bool(passed),
            expected: Status::from_bool(expected_pass),
            reason: None,
            witness: Value::Null,
            counts: BTreeMap::new(),
            millis: None,
        }
    }

    pub fn skipped(name: &str, claim: &str, reason: &str) -> Self {
        Check {
            status: Status::Skipped,
            expected: Status::Skipped,
            reason: Some(reason.to_string()),
            ..Check::new(name, claim, true, true)
        }
    }

    pub fn witness<T: Serialize>(mut self, w: &T) -> Self {
        self.witness = serde_json::to_value(w).expect("witness serializes");
        self
    }

    pub fn count<T: Serialize>(mut self, key: &str, v: T) -> Self {
        self.counts
            .insert(key.to_string(), serde_json::to_value(v).expect("count serializes"));
        self
    }

    pub fn violated(&self) -> bool {
        self.status != Status::Skipped && self.status != self.expected
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    TheoremViolation,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub field: String,
    pub regime: SpreadRegime,
    pub parameters: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(
        command: &str,
        field: String,
        regime: SpreadRegime,
        parameters: BTreeMap<String, Value>,
        checks: Vec<Check>,
    ) -> Self {
        let verdict = if checks.iter().any(Check::violated) {
            Verdict::TheoremViolation
        } else {
            Verdict::Confirmed
        };
        Report {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            field,
            regime,
            parameters,
            checks,
            verdict,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Confirmed => 0,
            Verdict::TheoremViolation => 2,
        }
    }

    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        // serde_json's map is ordered by key unless `preserve_order` is on
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value prints");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} over {} (regime {})\n", self.command, self.field, self.regime);
        for c in &self.checks {
            let mut line = format!("  {:<8} {:<28}", c.status.as_str(), c.name);
            if c.status != Status::Skipped {
                line.push_str(&format!(" expected {}", c.expected.as_str()));
            }
            if let Some(r) = &c.reason {
                line.push_str(&format!(" ({r})"));
            }
            if let Some(ms) = c.millis {
                line.push_str(&format!(" [{ms} ms]"));
            }
            s.push_str(line.trim_end());
            s.push('\n');
        }
        let verdict = match self.verdict {
            Verdict::Confirmed => "confirmed",
            Verdict::TheoremViolation => "THEOREM VIOLATION",
        };
        s.push_str(&format!("verdict: {verdict}\n"));
        s
    }
}
