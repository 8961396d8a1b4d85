//! Check records and experiment reports.

use std::collections::BTreeMap;
use std::time::Instant;

use cutbranch_core::{Error, RVector, Scalar};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Undecided => "UNDECIDED",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub claim: String,
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    pub values: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub wall_ms: u64,
}

/// What a check body reports back.
#[derive(Debug, Default)]
pub struct Outcome {
    pub pass: bool,
    pub witness: Option<RVector>,
    pub values: Vec<(String, String)>,
    pub detail: Option<String>,
}

impl Outcome {
    pub fn new(pass: bool) -> Self {
        Outcome { pass, ..Outcome::default() }
    }

    pub fn value(mut self, key: &str, v: impl ToString) -> Self {
        self.values.push((key.to_string(), v.to_string()));
        self
    }

    pub fn witness(mut self, w: RVector) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

pub type Body = Box<dyn FnOnce() -> cutbranch_core::Result<Outcome> + Send>;

/// A check waiting to run.
pub struct Check {
    pub id: String,
    pub claim: String,
    pub anchor: String,
    pub body: Body,
}

impl Check {
    pub fn new(id: impl Into<String>, claim: impl Into<String>, anchor: impl Into<String>, body: impl FnOnce() -> cutbranch_core::Result<Outcome> + Send + 'static) -> Self {
        Check { id: id.into(), claim: claim.into(), anchor: anchor.into(), body: Box::new(body) }
    }

    /// Runs the body. Budget errors become `undecided`, other errors `fail`.
    pub fn run(self) -> CheckRecord {
        let start = Instant::now();
        let result = (self.body)();
        let wall_ms = start.elapsed().as_millis() as u64;
        let (status, witness, values, detail) = match result {
            Ok(o) => (
                if o.pass { Status::Pass } else { Status::Fail },
                o.witness.map(|w| w.iter().map(|v| v.to_text()).collect()),
                o.values.into_iter().collect(),
                o.detail,
            ),
            Err(Error::Budget(msg)) => (Status::Undecided, None, BTreeMap::new(), Some(format!("budget exceeded: {msg}"))),
            Err(e) => (Status::Fail, None, BTreeMap::new(), Some(e.to_string())),
        };
        CheckRecord { id: self.id, claim: self.claim, anchor: self.anchor, status, witness, values, detail, wall_ms }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub instance: Value,
    pub checks: Vec<CheckRecord>,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status != Status::Pass)
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["experiment", "id", "claim", "anchor", "status", "witness", "values", "detail", "wall_ms"])?;
        for c in &self.checks {
            let values = c.values.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";");
            w.write_record([
                self.experiment.as_str(),
                &c.id,
                &c.claim,
                &c.anchor,
                c.status.label(),
                &c.witness.as_ref().map(|w| w.join(",")).unwrap_or_default(),
                &values,
                c.detail.as_deref().unwrap_or(""),
                &c.wall_ms.to_string(),
            ])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{:9} {}  {}", c.status.label(), c.id, c.claim));
            if let Some(d) = &c.detail {
                out.push_str(&format!("  [{d}]"));
            }
            out.push('\n');
        }
        let pass = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        out.push_str(&format!("{}: {pass}/{} checks passed\n", self.experiment, self.checks.len()));
        out
    }
}
