use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use segalkit::oracle::Certificate;
use segalkit::schema::Expected;
use segalkit::Error;

use crate::Command;

/// Sizes a command reports; these are what an expected-results block checks.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Measures {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub objects: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arrows: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    ParseError,
    BudgetExceeded,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub status: Status,
    pub measures: Measures,
    pub details: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::CheckSegal { .. } => "check-segal",
        Command::CheckComplete { .. } => "check-complete",
        Command::CheckGroupoid { .. } => "check-groupoid",
        Command::Externalize { .. } => "externalize",
        Command::Exponential { .. } => "exponential",
        Command::Tensor { .. } => "tensor",
        Command::Cotensor { .. } => "cotensor",
        Command::Core { .. } => "core",
        Command::Yoneda { .. } => "yoneda",
        Command::KanCheck { .. } => "kan-check",
        Command::CounterexampleDemo { .. } => "counterexample-demo",
        Command::Suite { .. } => "suite",
    }
}

pub fn inputs(c: &Command) -> Vec<String> {
    let paths = match c {
        Command::CheckSegal { file }
        | Command::CheckComplete { file }
        | Command::CheckGroupoid { file }
        | Command::Externalize { file }
        | Command::Tensor { file, .. }
        | Command::Cotensor { file, .. }
        | Command::Core { file }
        | Command::KanCheck { file }
        | Command::Suite { file } => vec![file],
        Command::Exponential { target, source } => vec![target, source],
        Command::Yoneda { source, target } => vec![source, target],
        Command::CounterexampleDemo { .. } => vec![],
    };
    paths.into_iter().map(|p| p.display().to_string()).collect()
}

impl Report {
    pub fn new(command: &Command, pass: bool, measures: Measures, details: Value) -> Self {
        Self {
            command: command_name(command).into(),
            inputs: inputs(command),
            status: if pass { Status::Pass } else { Status::Fail },
            measures,
            details,
            certificates: Vec::new(),
            mismatches: Vec::new(),
            error: None,
        }
    }

    pub fn error(command: &Command, e: &Error) -> Self {
        let status = match e {
            Error::Malformed(_) => Status::ParseError,
            e if e.is_budget() => Status::BudgetExceeded,
            _ => Status::Fail,
        };
        Self {
            status,
            error: Some(e.to_string()),
            ..Self::new(command, false, Measures::default(), Value::Null)
        }
    }

    /// Attaches a certificate; a failed one fails the report.
    pub fn certify(&mut self, c: Certificate) {
        if !c.passed {
            self.status = Status::Fail;
        }
        self.certificates.push(c);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Compares with an expected block; a matching expected failure counts as a pass.
    pub fn expect(&mut self, expected: &Expected) {
        let m = &self.measures;
        let mut mismatches = Vec::new();
        if let Some(pass) = expected.pass {
            if pass != self.passed() {
                mismatches.push(format!("expected pass = {pass}"));
            }
        }
        let mut compare = |what: &str, want: Option<String>, got: Option<String>| {
            if let Some(want) = want {
                if got.as_ref() != Some(&want) {
                    mismatches.push(format!("expected {what} {want}, got {}", got.unwrap_or_else(|| "nothing".into())));
                }
            }
        };
        compare("objects", expected.objects.map(|n| n.to_string()), m.objects.map(|n| n.to_string()));
        compare("arrows", expected.arrows.map(|n| n.to_string()), m.arrows.map(|n| n.to_string()));
        compare("levels", expected.levels.as_ref().map(|l| format!("{l:?}")), m.levels.as_ref().map(|l| format!("{l:?}")));
        let expected_outcome = expected.pass.is_some() && mismatches.is_empty();
        if !mismatches.is_empty() {
            self.status = Status::Fail;
        } else if expected_outcome && self.status == Status::Fail {
            self.status = Status::Pass;
        }
        self.mismatches = mismatches;
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::ParseError => 2,
            Status::BudgetExceeded => 3,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ParseError => "PARSE ERROR",
            Status::BudgetExceeded => "BUDGET EXCEEDED",
        };
        let mut head = self.command.clone();
        for i in &self.inputs {
            head.push(' ');
            head.push_str(i);
        }
        let _ = writeln!(out, "{head}: {status}");
        let m = &self.measures;
        if let (Some(o), Some(a)) = (m.objects, m.arrows) {
            let _ = writeln!(out, "  {o} objects, {a} arrows");
        }
        if let Some(l) = &m.levels {
            let _ = writeln!(out, "  levels {l:?}");
        }
        if let Value::Array(items) = &self.details {
            for item in items.iter().filter_map(|i| i.get("summary").and_then(Value::as_str)) {
                let _ = writeln!(out, "  {item}");
            }
        } else if let Some(s) = self.details.get("summary").and_then(Value::as_str) {
            let _ = writeln!(out, "  {s}");
        }
        for c in &self.certificates {
            let _ = writeln!(out, "  certificate {}: {}", c.claim, if c.passed { "passed" } else { "failed" });
        }
        for m in &self.mismatches {
            let _ = writeln!(out, "  {m}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "  error: {e}");
        }
        out
    }
}
