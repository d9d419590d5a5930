//! Verifiers that reduce each classification result to exact finite checks
//! and explicit witnesses, plus the report format they share.

pub mod fixtures;
pub mod oracle;
mod verifiers;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};

pub use verifiers::*;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Passed by exhibiting the described counterexample.
    Witness(String),
    Skipped(String),
}

impl Status {
    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Witness(_) => "WITNESS",
            Status::Skipped(_) => "SKIPPED",
        }
    }
}

/// One exact check with the values it was decided on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub passed: bool,
    pub values: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem_id: String,
    pub status: Status,
    pub details: Vec<SubCheck>,
    pub seed: u64,
    pub elapsed_ms: u64,
}

impl TheoremReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &SubCheck> {
        self.details.iter().filter(|c| !c.passed)
    }
}

/// Collects sub-checks while a verifier runs.
pub struct ReportBuilder {
    id: String,
    seed: u64,
    checks: Vec<SubCheck>,
    witness: Option<String>,
    skipped: Option<String>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(id: &str, seed: u64) -> Self {
        ReportBuilder {
            id: id.to_string(),
            seed,
            checks: Vec::new(),
            witness: None,
            skipped: None,
            started: Instant::now(),
        }
    }

    /// Records a check and returns its outcome.
    pub fn check<K, V, I>(&mut self, name: &str, passed: bool, values: I) -> bool
    where
        K: Into<String>,
        V: ToString,
        I: IntoIterator<Item = (K, V)>,
    {
        let values = values.into_iter().map(|(k, v)| (k.into(), v.to_string())).collect();
        self.checks.push(SubCheck { name: name.to_string(), passed, values });
        passed
    }

    /// Records a failed check for an error raised mid-verification.
    pub fn error(&mut self, name: &str, err: &Error) {
        self.check(name, false, [("error", err.to_string())]);
    }

    /// Marks the report as passed by the given counterexample.
    pub fn witness(&mut self, description: impl Into<String>) {
        self.witness = Some(description.into());
    }

    pub fn skip(&mut self, reason: impl Into<String>) {
        self.skipped = Some(reason.into());
    }

    /// Runs a fallible body, turning an error into a failed check.
    pub fn run(mut self, body: impl FnOnce(&mut ReportBuilder) -> Result<()>) -> TheoremReport {
        if let Err(e) = body(&mut self) {
            self.error("verifier aborted", &e);
        }
        self.finish()
    }

    pub fn finish(self) -> TheoremReport {
        let status = if self.checks.iter().any(|c| !c.passed) {
            Status::Fail
        } else if let Some(reason) = self.skipped {
            Status::Skipped(reason)
        } else if let Some(w) = self.witness {
            Status::Witness(w)
        } else {
            Status::Pass
        };
        TheoremReport {
            theorem_id: self.id,
            status,
            details: self.checks,
            seed: self.seed,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        }
    }
}

type Verifier = fn(u64) -> TheoremReport;

/// Every shipped verifier with its default instance, in report order.
pub fn registry() -> Vec<(&'static str, Verifier)> {
    vec![
        ("rotation-span", default_rotation_span as Verifier),
        ("newton-family:zero", |s| default_newton_family("newton-family:zero", s)),
        ("newton-family:cyclic", |s| default_newton_family("newton-family:cyclic", s)),
        ("newton-family:dense", |s| default_newton_family("newton-family:dense", s)),
        ("conformal-uniqueness:cgn:cyclic", |s| default_conformal("conformal-uniqueness:cgn:cyclic", s)),
        ("conformal-uniqueness:cgn:dense", |s| default_conformal("conformal-uniqueness:cgn:dense", s)),
        ("conformal-uniqueness:cg:cyclic", |s| default_conformal("conformal-uniqueness:cg:cyclic", s)),
        ("conformal-uniqueness:cg:dense", |s| default_conformal("conformal-uniqueness:cg:dense", s)),
        ("conformal-uniqueness:rest:cyclic", |s| default_conformal("conformal-uniqueness:rest:cyclic", s)),
        ("conformal-uniqueness:rest:dense", |s| default_conformal("conformal-uniqueness:rest:dense", s)),
        ("conformal-uniqueness:full", |s| default_conformal("conformal-uniqueness:full", s)),
        ("poincare-nogo:cyclic", |s| default_poincare_nogo("poincare-nogo:cyclic", s)),
        ("poincare-nogo:dense", |s| default_poincare_nogo("poincare-nogo:dense", s)),
        ("join-meet", default_join_meet),
        ("causality:standard", |s| default_causality("causality:standard", s)),
        ("causality:nonstandard", |s| default_causality("causality:nonstandard", s)),
        ("causality:rotated", |s| default_causality("causality:rotated", s)),
        ("causality:absolute", default_absolute_simultaneity),
        ("alexandrov", default_alexandrov),
        ("malament", default_malament),
        ("hogarth", default_hogarth),
        ("subgroup-dichotomy", default_subgroup_dichotomy),
        ("rest-pencil", default_rest_pencil),
    ]
}

pub fn theorem_ids() -> Vec<&'static str> {
    registry().into_iter().map(|(id, _)| id).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    /// Theorem ids or family prefixes (`causality` selects `causality:*`);
    /// empty selects everything.
    pub selection: Vec<String>,
    pub seed: u64,
    pub report: Option<PathBuf>,
    pub format: ReportFormat,
}

fn selects(token: &str, id: &str) -> bool {
    token == "all" || id == token || id.strip_prefix(token).is_some_and(|rest| rest.starts_with(':'))
}

/// Runs the selected verifiers (in parallel) and writes the report if a path is set.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<TheoremReport>> {
    let all = registry();
    for token in &config.selection {
        if !all.iter().any(|(id, _)| selects(token, id)) {
            return Err(Error::Precondition(format!("unknown theorem id `{token}`")));
        }
    }
    let chosen: Vec<_> = all
        .into_iter()
        .filter(|(id, _)| config.selection.is_empty() || config.selection.iter().any(|t| selects(t, id)))
        .collect();
    let seed = config.seed;
    let reports = std::thread::scope(|scope| {
        let handles: Vec<_> = chosen.iter().map(|&(_, f)| scope.spawn(move || f(seed))).collect();
        handles.into_iter().map(|h| h.join().expect("verifier panicked")).collect::<Vec<_>>()
    });
    if let Some(path) = &config.report {
        let body = match config.format {
            ReportFormat::Text => text_report(&reports),
            ReportFormat::Json => json_report(&reports, true),
        };
        std::fs::write(path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(reports)
}

pub fn any_failed(reports: &[TheoremReport]) -> bool {
    reports.iter().any(|r| r.status.is_fail())
}

/// JSON array of reports; `timing = false` drops `elapsed_ms` so runs can be
/// compared byte for byte.
pub fn json_report(reports: &[TheoremReport], timing: bool) -> String {
    let mut value = serde_json::to_value(reports).expect("reports serialize");
    if !timing {
        for r in value.as_array_mut().expect("array") {
            r.as_object_mut().expect("object").remove("elapsed_ms");
        }
    }
    let mut s = serde_json::to_string_pretty(&value).expect("json");
    s.push('\n');
    s
}

pub fn text_report(reports: &[TheoremReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = write!(out, "{:<8} {:<36} {:>3} checks {:>6} ms", r.status.label(), r.theorem_id, r.details.len(), r.elapsed_ms);
        match &r.status {
            Status::Witness(w) => {
                let _ = write!(out, "  {w}");
            }
            Status::Skipped(why) => {
                let _ = write!(out, "  {why}");
            }
            _ => {}
        }
        out.push('\n');
        for c in r.failed_checks() {
            let _ = writeln!(out, "    failed: {}", c.name);
            for (k, v) in &c.values {
                let _ = writeln!(out, "      {k} = {v}");
            }
        }
    }
    let failed = reports.iter().filter(|r| r.status.is_fail()).count();
    let _ = writeln!(out, "{} theorems, {} failed", reports.len(), failed);
    out
}
