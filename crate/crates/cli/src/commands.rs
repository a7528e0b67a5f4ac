//! Command implementations. Each returns the rendered output and leaves
//! printing and exit codes to the binary.

use std::fmt::Write as _;
use std::time::Duration;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use subblock_codes::asymptotic::{rate_sweep_point, threshold_root, RateFamily as CoreRateFamily, Threshold};
use subblock_codes::exact_oracle::{exact_size, OracleConfig};
use subblock_codes::finite_bounds::{bound_report, BoundConfig};
use subblock_codes::{CodeFamily, CodeParams, Error, SpaceKind};

use crate::figures::{figure_table, FigureSpec, Gap};
use crate::table::{Cell, Table};
use crate::verify::{run_suite, Level, Ops};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug)]
pub struct CommandError {
    pub code: i32,
    pub message: String,
}

impl CommandError {
    pub fn usage(message: impl Into<String>) -> Self {
        CommandError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceCap { .. } => EXIT_CAP,
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::InternalConsistency(_) => EXIT_VERIFY,
            _ => EXIT_USAGE,
        };
        CommandError {
            code,
            message: e.to_string(),
        }
    }
}

pub type CommandResult = Result<Output, CommandError>;

/// Human-readable text, the JSON form of the same numbers, and the exit
/// code (nonzero only for a failed verification).
#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: EXIT_OK }
    }

    fn table(t: Table) -> Self {
        let json = serde_json::to_value(&t).expect("tables serialise");
        Output::ok(t.to_csv(), json)
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("values serialise");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Cscc,
    Secc,
}

impl From<Family> for CodeFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::Cscc => CodeFamily::Cscc,
            Family::Secc => CodeFamily::Secc,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Cscc,
    Secc,
    Cwc,
    Hwc,
    Unconstrained,
}

impl From<Kind> for SpaceKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Cscc => SpaceKind::Cscc,
            Kind::Secc => SpaceKind::Secc,
            Kind::Cwc => SpaceKind::Cwc,
            Kind::Hwc => SpaceKind::Hwc,
            Kind::Unconstrained => SpaceKind::Unconstrained,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RateFamily {
    Cscc,
    Secc,
    Cwc,
}

impl RateFamily {
    fn core(self) -> CoreRateFamily {
        match self {
            RateFamily::Cscc => CoreRateFamily::Cscc,
            RateFamily::Secc => CoreRateFamily::Secc,
            RateFamily::Cwc => CoreRateFamily::Cwc,
        }
    }

    fn label(self) -> &'static str {
        match self {
            RateFamily::Cscc => "cscc",
            RateFamily::Secc => "secc",
            RateFamily::Cwc => "cwc",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ThresholdChoice {
    Tilde,
    Hat,
    Grave,
    All,
}

impl ThresholdChoice {
    fn thresholds(self) -> Vec<Threshold> {
        match self {
            ThresholdChoice::Tilde => vec![Threshold::Tilde],
            ThresholdChoice::Hat => vec![Threshold::Hat],
            ThresholdChoice::Grave => vec![Threshold::Grave],
            ThresholdChoice::All => Threshold::ALL.to_vec(),
        }
    }
}

/// A δ list, either explicit or `start:stop:step` inclusive of `stop`.
pub fn parse_grid(list: &[f64], grid: Option<&str>) -> Result<Vec<f64>, CommandError> {
    let deltas = match grid {
        Some(g) => {
            let parts: Vec<f64> = g
                .split(':')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| CommandError::usage(format!("bad grid {g:?}: {e}")))?;
            let [start, stop, step] = parts[..] else {
                return Err(CommandError::usage(format!("grid must be start:stop:step, got {g:?}")));
            };
            if !(step > 0.0) || !(stop >= start) {
                return Err(CommandError::usage(format!("grid needs step > 0 and stop ≥ start, got {g:?}")));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize;
            if count > 1_000_000 {
                return Err(CommandError::usage(format!("grid {g:?} has more than a million points")));
            }
            // rounded so that 0.1 + 2·0.1 prints as 0.3
            (0..=count)
                .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
                .collect()
        }
        None => list.to_vec(),
    };
    if deltas.is_empty() {
        return Err(CommandError::usage("empty δ grid"));
    }
    if let Some(d) = deltas.iter().find(|d| !(0.0..=1.0).contains(*d)) {
        return Err(CommandError::usage(format!("δ values must lie in [0, 1], got {d}")));
    }
    Ok(deltas)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn metadata(rest: String) -> String {
    format!("sbcodes {} {rest}", env!("CARGO_PKG_VERSION"))
}

pub fn bound(
    family: Family,
    p: &CodeParams,
    method: Option<&str>,
    cfg: &BoundConfig,
) -> CommandResult {
    let report = bound_report(p, family.into(), cfg)?;
    let candidates: Vec<_> = report
        .candidates
        .iter()
        .filter(|c| method.is_none_or(|m| c.method.contains(m)))
        .collect();
    if let Some(m) = method {
        if candidates.is_empty() {
            return Err(CommandError::usage(format!("no bound method matches {m:?}")));
        }
    }
    let mut text = String::new();
    writeln!(text, "{:?} {p}", report.family).unwrap();
    for c in &candidates {
        writeln!(text, "  {:<5} {:>12}  {}", c.direction.to_string(), c.value, c.method).unwrap();
    }
    for s in &report.skipped {
        writeln!(text, "  skipped: {s}").unwrap();
    }
    writeln!(text, "best lower {} [{}]", report.lower.value, report.lower.method).unwrap();
    writeln!(text, "best upper {} [{}]", report.upper.value, report.upper.method).unwrap();
    let json = json!({
        "params": p,
        "family": report.family,
        "candidates": candidates,
        "skipped": report.skipped,
        "lower": report.lower,
        "upper": report.upper,
    });
    Ok(Output::ok(text, json))
}

pub fn exact(kind: Kind, p: &CodeParams, cfg: &OracleConfig) -> CommandResult {
    let kind: SpaceKind = kind.into();
    let r = exact_size(p, kind, cfg)?;
    // CWC, HWC and unconstrained words are shown unsplit
    let split = matches!(kind, SpaceKind::Cscc | SpaceKind::Secc);
    let words: Vec<String> = r
        .witness
        .iter()
        .map(|w| if split { w.format_subblocks(p.subblock_len()) } else { w.to_string() })
        .collect();
    let mut text = format!("{}\n", r.size);
    for w in &words {
        writeln!(text, "{w}").unwrap();
    }
    let json = json!({
        "params": p,
        "kind": kind,
        "value": r.size.to_string(),
        "direction": "exact",
        "method": "max-clique",
        "witness": words,
        "nodes": r.nodes,
    });
    Ok(Output::ok(text, json))
}

pub fn rate(family: RateFamily, l: u32, ws: u32, deltas: &[f64]) -> CommandResult {
    let mut rows = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let pt = rate_sweep_point(family.core(), l, ws, d)?;
        let cell = |v: Option<f64>| v.map_or(Cell::Empty, Cell::Num);
        rows.push(vec![
            Cell::Num(d),
            cell(pt.gv_lower.value()),
            cell(pt.sp_upper.value()),
            Cell::Text(pt.flag()),
        ]);
    }
    Ok(Output::table(Table {
        metadata: metadata(format!("rate family={} L={l} w_s={ws} delta={}", family.label(), join(deltas))),
        header: ["delta", "gv_lower", "sp_upper", "validity_flag"].map(String::from).to_vec(),
        rows,
    }))
}

pub fn gap(which: Gap, l: u32, ws: u32, deltas: &[f64]) -> CommandResult {
    let mut rows = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let v = which.sweep(l, d, ws)?;
        rows.push(vec![
            Cell::Num(d),
            v.value().map_or(Cell::Empty, Cell::Num),
            Cell::Text(v.flag().into()),
        ]);
    }
    Ok(Output::table(Table {
        metadata: metadata(format!("gap={} L={l} w_s={ws} delta={}", which.label(), join(deltas))),
        header: ["delta", "gap_lower", "validity_flag"].map(String::from).to_vec(),
        rows,
    }))
}

pub fn threshold(choice: ThresholdChoice, lengths: &[u32]) -> CommandResult {
    if lengths.is_empty() {
        return Err(CommandError::usage("empty length list"));
    }
    let which = choice.thresholds();
    let mut header = vec!["L".to_string()];
    header.extend(which.iter().map(|t| format!("root_{}", t.label())));
    let mut rows = Vec::new();
    for &l in lengths {
        let mut row = vec![Cell::Int(l as u64)];
        for &t in &which {
            row.push(Cell::Num(threshold_root(t, l)?));
        }
        rows.push(row);
    }
    let labels: Vec<&str> = which.iter().map(|t| t.label()).collect();
    Ok(Output::table(Table {
        metadata: metadata(format!("threshold={} w_s=L/2 L={}", labels.join(","), join(lengths))),
        header,
        rows,
    }))
}

pub fn figure(spec: &FigureSpec) -> Result<(Output, Table), CommandError> {
    let t = figure_table(spec)?;
    Ok((Output::table(t.clone()), t))
}

#[derive(Serialize)]
struct CheckRow<'a> {
    name: &'a str,
    passed: bool,
    detail: &'a str,
    seconds: f64,
}

pub fn verify(level: Level, oracle_budget: Duration) -> CommandResult {
    let outcomes = run_suite(level, &Ops::default(), oracle_budget);
    let mut text = String::new();
    let mut rows = Vec::new();
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        let secs = o.elapsed.as_secs_f64();
        writeln!(text, "{status}  {:<62} {secs:>8.2}s  {}", o.name, o.detail).unwrap();
        rows.push(CheckRow {
            name: &o.name,
            passed: o.passed,
            detail: &o.detail,
            seconds: secs,
        });
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    writeln!(text, "{} checks, {failed} failed", outcomes.len()).unwrap();
    let json = json!({ "checks": rows, "failed": failed });
    let mut out = Output::ok(text, json);
    if failed > 0 {
        out.code = EXIT_VERIFY;
    }
    Ok(out)
}
