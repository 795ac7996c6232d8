//! The `run` subcommand: load groups, evaluate checks, render reports.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use qdeg::theorems::{run_checks, CheckKind, CheckReport, CheckRequest, CitedDegrees, Verdict};
use qdeg::PermGroup;

use crate::corpus::lookup;
use crate::error::CliError;
use crate::groupfile::parse_group_file;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

/// Where a group comes from: `corpus:NAME` or a file path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    Corpus(String),
    File(PathBuf),
}

impl GroupSource {
    pub fn parse(s: &str) -> Self {
        match s.strip_prefix("corpus:") {
            Some(name) => GroupSource::Corpus(name.to_string()),
            None => GroupSource::File(PathBuf::from(s)),
        }
    }

    pub fn label(&self) -> String {
        match self {
            GroupSource::Corpus(name) => name.clone(),
            GroupSource::File(path) => path.display().to_string(),
        }
    }

    /// The group and any degree sets registered for it.
    pub fn load(&self) -> Result<(PermGroup, Vec<CitedDegrees>), CliError> {
        match self {
            GroupSource::Corpus(name) => {
                let entry = lookup(name)?;
                Ok((entry.group()?, entry.cited))
            }
            GroupSource::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
                Ok((parse_group_file(&text)?.to_group()?, Vec::new()))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub p: u64,
    pub q: u64,
    pub checks: BTreeSet<CheckKind>,
    pub ibr_cap: u128,
    pub enum_cap: u128,
    pub seed: u64,
}

pub fn run_one(source: &GroupSource, opts: &RunOptions) -> Result<CheckReport, CliError> {
    let (g, cited) = source.load()?;
    let mut req = CheckRequest::new(source.label(), opts.p, opts.q, opts.checks.clone())?;
    req.ibr_cap = opts.ibr_cap;
    req.enum_cap = opts.enum_cap;
    req.seed = opts.seed;
    Ok(run_checks(&req, &g, &cited)?)
}

/// Runs every source on its own thread; results keep the input order.
pub fn run_many(sources: &[GroupSource], opts: &RunOptions) -> Vec<Result<CheckReport, CliError>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = sources.iter().map(|src| s.spawn(move || run_one(src, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    })
}

/// A violation anywhere wins over errors elsewhere.
pub fn exit_code(results: &[Result<CheckReport, CliError>]) -> i32 {
    if results.iter().any(|r| matches!(r, Ok(rep) if rep.has_violation())) {
        EXIT_VIOLATION
    } else if results.iter().any(Result::is_err) {
        EXIT_ERROR
    } else {
        EXIT_OK
    }
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "true",
        Some(false) => "false",
        None => "n/a",
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Consistent => "consistent",
        Verdict::Violation => "VIOLATION",
        Verdict::HypothesisFails => "hypothesis fails",
        Verdict::NotApplicable => "not applicable",
    }
}

pub fn render_text(report: &CheckReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "group {} (order {}), p = {}, q = {}, seed {}",
        report.group, report.order, report.p, report.q, report.seed
    );
    for (name, rec) in &report.checks {
        let ms = report.timings.get(name).copied().unwrap_or(0.0);
        let _ = writeln!(out, "  {name}: {} [{}] ({ms:.1} ms)", verdict_str(rec.verdict), rec.status);
        let sides = [("hypothesis", rec.hypothesis), ("conclusion", rec.conclusion), ("left", rec.left), ("right", rec.right)];
        let sides: Vec<String> = sides.iter().filter_map(|(k, v)| v.map(|b| format!("{k} {b}"))).collect();
        if !sides.is_empty() {
            let _ = writeln!(out, "    {}", sides.join(", "));
        }
        for (cond, value) in &rec.conditions {
            let _ = writeln!(out, "    {cond}: {}", yes_no(*value));
        }
        if let Some(d) = &rec.degrees {
            let _ = writeln!(out, "    degrees: {d:?}");
        }
        for w in &rec.witnesses {
            let _ = writeln!(out, "    witness: {}", serde_json::to_string(w).unwrap_or_default());
        }
        for n in &rec.notes {
            let _ = writeln!(out, "    note: {n}");
        }
    }
    out
}

pub fn render_json(report: &CheckReport) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

/// Renders results in input order; errors go to the returned error list.
pub fn render(results: &[Result<CheckReport, CliError>], sources: &[GroupSource], format: Format) -> (String, Vec<String>) {
    let mut errors = Vec::new();
    let mut reports = Vec::new();
    for (r, src) in results.iter().zip(sources) {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => errors.push(format!("{}: {e}", src.label())),
        }
    }
    let out = match format {
        Format::Text => reports.iter().map(|r| render_text(r)).collect::<Vec<_>>().join("\n"),
        Format::Json if reports.len() == 1 => render_json(reports[0]),
        Format::Json => serde_json::to_string_pretty(&reports).expect("reports serialize"),
    };
    (out, errors)
}
