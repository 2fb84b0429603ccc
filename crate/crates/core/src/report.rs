//! Verification records and suite reports.

use std::fmt;

use serde_json::{json, Map, Value};

use crate::qcoeff::CoefficientMode;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of a single check.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub name: String,
    /// Source label of the statement being checked, e.g. `"prop:TTp"`.
    pub anchor: String,
    pub params: Vec<i64>,
    pub mode: String,
    pub status: Status,
    pub detail: Option<String>,
    /// Nonzero residue that refutes (or fails to confirm) the check.
    pub witness: Option<Value>,
    pub trace: Option<Value>,
    /// Set for identity-catalogue checks.
    pub identity: Option<String>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, status: Status) -> Self {
        VerificationReport {
            name: name.into(),
            anchor: anchor.into(),
            params: Vec::new(),
            mode: "symbolic".into(),
            status,
            detail: None,
            witness: None,
            trace: None,
            identity: None,
        }
    }

    pub fn with_params(mut self, params: Vec<i64>) -> Self {
        self.params = params;
        self
    }

    pub fn with_mode(mut self, mode: &CoefficientMode) -> Self {
        self.mode = mode.label().into();
        self
    }

    pub fn with_mode_label(mut self, mode: &str) -> Self {
        self.mode = mode.into();
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_trace(mut self, trace: Value) -> Self {
        self.trace = Some(trace);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), json!(self.name));
        if let Some(id) = &self.identity {
            m.insert("identity".into(), json!(id));
        }
        m.insert("anchor".into(), json!(self.anchor));
        m.insert("params".into(), json!(self.params));
        m.insert("mode".into(), json!(self.mode));
        m.insert("status".into(), json!(self.status.as_str()));
        if let Some(d) = &self.detail {
            m.insert("detail".into(), json!(d));
        }
        if let Some(w) = &self.witness {
            m.insert("witness".into(), w.clone());
        }
        if let Some(t) = &self.trace {
            m.insert("trace".into(), t.clone());
        }
        Value::Object(m)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} {:?} ({}, {})",
            self.status, self.name, self.params, self.anchor, self.mode
        )?;
        if let Some(d) = &self.detail {
            write!(f, ": {d}")?;
        }
        Ok(())
    }
}

/// A suite run: ordered records plus the configuration that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: String,
    pub config: Value,
    pub records: Vec<VerificationReport>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl Report {
    pub fn new(suite: impl Into<String>, config: Value) -> Self {
        Report {
            suite: suite.into(),
            config,
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, r: VerificationReport) {
        self.records.push(r);
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = VerificationReport>) {
        self.records.extend(rs);
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for r in &self.records {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Inconclusive => s.inconclusive += 1,
            }
        }
        s
    }

    /// 1 if anything failed, else 2 if anything was inconclusive, else 0.
    pub fn exit_code(&self) -> i32 {
        let s = self.summary();
        if s.fail > 0 {
            1
        } else if s.inconclusive > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Value {
        let s = self.summary();
        json!({
            "suite": self.suite,
            "engineVersion": ENGINE_VERSION,
            "config": self.config,
            "summary": {"pass": s.pass, "fail": s.fail, "inconclusive": s.inconclusive},
            "records": self.records.iter().map(VerificationReport::to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (engine {})", self.suite, ENGINE_VERSION)?;
        for r in &self.records {
            writeln!(f, "  {r}")?;
        }
        let s = self.summary();
        write!(f, "{} pass, {} fail, {} inconclusive", s.pass, s.fail, s.inconclusive)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_contract() {
        let mut r = Report::new("t", json!({}));
        assert_eq!(r.exit_code(), 0);
        r.push(VerificationReport::new("a", "x", Status::Pass));
        assert_eq!(r.exit_code(), 0);
        r.push(VerificationReport::new("b", "x", Status::Inconclusive));
        assert_eq!(r.exit_code(), 2);
        r.push(VerificationReport::new("c", "x", Status::Fail));
        assert_eq!(r.exit_code(), 1);
    }
}
