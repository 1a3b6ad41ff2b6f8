use std::fmt;

use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// A computed value, not a check.
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub name: String,
    pub object: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
}

impl Record {
    pub fn new(name: impl Into<String>, object: &str, verdict: Verdict) -> Self {
        Record { name: name.into(), object: object.to_string(), verdict, witness: None, bound: None }
    }

    pub fn check(name: impl Into<String>, object: &str, ok: bool) -> Self {
        Record::new(name, object, if ok { Verdict::Pass } else { Verdict::Fail })
    }

    pub fn info(name: impl Into<String>, object: &str, value: impl Into<String>) -> Self {
        Record::new(name, object, Verdict::Info).with_witness(value)
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn with_bound(mut self, b: Option<u32>) -> Self {
        self.bound = b;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub schema: u32,
    pub input_digest: String,
    pub checks: Vec<Record>,
    pub status: Verdict,
}

impl Report {
    pub fn new(input_digest: String, checks: Vec<Record>) -> Self {
        let status = if checks.iter().any(|c| c.verdict == Verdict::Fail) { Verdict::Fail } else { Verdict::Pass };
        Report { version: concat!("plethory-cli ", env!("CARGO_PKG_VERSION")).to_string(), schema: SCHEMA, input_digest, checks, status }
    }

    pub fn passed(&self) -> bool {
        self.status == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
                Verdict::Info => "    ",
            };
            write!(f, "{tag}  {:<14} {}", c.object, c.name)?;
            if let Some(b) = c.bound {
                write!(f, " (degree ≤ {b})")?;
            }
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "status: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}
