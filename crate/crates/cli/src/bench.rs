//! Benchmark harness: runs every system listed in a directory's
//! `manifest.toml` and compares the counters with the expected values.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use invbasis::involutive::involutive_basis;
use invbasis::quasistable::{hd_quasi_stable, pommaret_basis, replay, QuasiStableConfig};
use invbasis::{Division, MonomialOrdering, PolySystem};
use serde::Deserialize;

use crate::alloc;
use crate::report::StatsReport;
use crate::CliError;

#[derive(Debug, Deserialize)]
pub struct Manifest {
    pub system: Vec<SystemEntry>,
}

#[derive(Debug, Deserialize)]
pub struct SystemEntry {
    pub name: String,
    pub file: PathBuf,
    #[serde(default)]
    pub homogenize: bool,
    pub janet: Option<BTreeMap<String, Expected>>,
    pub quasistable: Option<BTreeMap<String, Expected>>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
pub struct Expected {
    pub value: u64,
    pub tolerance: Tolerance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tolerance {
    Exact,
    Soft,
    Informational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Csv,
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub jobs: usize,
    pub stable: bool,
    pub seed: u64,
    pub only: Vec<String>,
}

struct Task<'a> {
    entry: &'a SystemEntry,
    quasistable: bool,
}

#[derive(Debug, Clone)]
pub struct CellCheck {
    pub system: String,
    pub algorithm: String,
    pub field: String,
    pub expected: u64,
    pub actual: Option<u64>,
    pub tolerance: Tolerance,
}

impl CellCheck {
    pub fn status(&self) -> &'static str {
        match (self.tolerance, self.actual == Some(self.expected)) {
            (Tolerance::Informational, _) => "info",
            (_, true) => "pass",
            (Tolerance::Exact, false) => "FAIL",
            (Tolerance::Soft, false) => "differs",
        }
    }
}

pub struct BenchResult {
    pub rows: Vec<StatsReport>,
    pub checks: Vec<CellCheck>,
    pub errors: Vec<String>,
}

impl BenchResult {
    pub fn exact_failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status() == "FAIL").count()
    }
}

pub fn load_manifest(dir: &Path) -> Result<Manifest, CliError> {
    let path = dir.join("manifest.toml");
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_system(dir: &Path, entry: &SystemEntry) -> Result<PolySystem, String> {
    let path = dir.join(&entry.file);
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    PolySystem::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run_task(dir: &Path, task: &Task<'_>, seed: u64) -> Result<StatsReport, String> {
    let sys = read_system(dir, task.entry)?;
    let ord = MonomialOrdering::DegRevLex;
    let baseline = alloc::reset_peak();
    let start = Instant::now();
    if task.quasistable {
        let sys = sys.homogenized();
        let cfg = QuasiStableConfig { seed, ord, ..Default::default() };
        let out = hd_quasi_stable(&sys.polys, &cfg).map_err(|e| format!("{}: {e}", task.entry.name))?;
        let pommaret = pommaret_basis(&replay(&out.log.changes, &sys.polys), ord)
            .map_err(|e| format!("{}: {e}", task.entry.name))?;
        let mut stats = out.stats.clone();
        stats.basis_size = pommaret.stats.basis_size;
        stats.max_deg = pommaret.stats.max_deg;
        let elapsed = start.elapsed();
        Ok(StatsReport::new("quasistable", &task.entry.name, &stats, out.chen(), elapsed, alloc::peak_since(baseline)))
    } else {
        let sys = if task.entry.homogenize { sys.homogenized() } else { sys };
        let out = involutive_basis(&sys.polys, Division::Janet, ord).map_err(|e| format!("{}: {e}", task.entry.name))?;
        let elapsed = start.elapsed();
        Ok(StatsReport::new("janet", &task.entry.name, &out.stats, 0, elapsed, alloc::peak_since(baseline)))
    }
}

fn cell(report: &StatsReport, field: &str) -> Option<u64> {
    Some(match field {
        "poly" => report.basis_size as u64,
        "deg" => report.max_deg as u64,
        "c1" => report.c1,
        "c2" => report.c2,
        "syz" => report.syz,
        "hd" => report.hd,
        "redz" => report.redz,
        "chen" => report.chen,
        "time" => report.time_ms,
        "memory" => report.mem_bytes,
        _ => return None,
    })
}

pub fn run(dir: &Path, manifest: &Manifest, opts: &BenchOptions) -> BenchResult {
    let tasks: Vec<Task<'_>> = manifest
        .system
        .iter()
        .filter(|e| opts.only.is_empty() || opts.only.contains(&e.name))
        .flat_map(|e| {
            let mut t = Vec::new();
            if e.janet.is_some() {
                t.push(Task { entry: e, quasistable: false });
            }
            if e.quasistable.is_some() {
                t.push(Task { entry: e, quasistable: true });
            }
            t
        })
        .collect();

    let slots: Vec<Mutex<Option<Result<StatsReport, String>>>> = tasks.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..opts.jobs.max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(task) = tasks.get(i) else { break };
                let r = run_task(dir, task, opts.seed);
                *slots[i].lock().unwrap() = Some(r);
            });
        }
    });

    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut errors = Vec::new();
    for (task, slot) in tasks.iter().zip(slots) {
        let algorithm = if task.quasistable { "quasistable" } else { "janet" };
        let expected = if task.quasistable { &task.entry.quasistable } else { &task.entry.janet };
        let result = slot.into_inner().unwrap().expect("every task ran");
        let report = match result {
            Ok(r) => Some(if opts.stable { r.stabilized() } else { r }),
            Err(e) => {
                errors.push(e);
                None
            }
        };
        for (field, exp) in expected.iter().flatten() {
            checks.push(CellCheck {
                system: task.entry.name.clone(),
                algorithm: algorithm.to_string(),
                field: field.clone(),
                expected: exp.value,
                actual: report.as_ref().and_then(|r| cell(r, field)),
                tolerance: exp.tolerance,
            });
        }
        rows.extend(report);
    }
    rows.sort_by(|a, b| (&a.input, &a.algorithm).cmp(&(&b.input, &b.algorithm)));
    BenchResult { rows, checks, errors }
}

pub fn render(result: &BenchResult, format: Format) -> String {
    let mut out = String::new();
    let header = ["system", "algorithm", "time_ms", "memory_kib", "C1", "C2", "syz", "HD", "redz", "poly", "chen", "deg"];
    let row_cells = |r: &StatsReport| {
        vec![
            r.input.clone(),
            r.algorithm.clone(),
            r.time_ms.to_string(),
            (r.mem_bytes / 1024).to_string(),
            r.c1.to_string(),
            r.c2.to_string(),
            r.syz.to_string(),
            r.hd.to_string(),
            r.redz.to_string(),
            r.basis_size.to_string(),
            r.chen.to_string(),
            r.max_deg.to_string(),
        ]
    };
    let check_cells = |c: &CellCheck| {
        vec![
            c.system.clone(),
            c.algorithm.clone(),
            c.field.clone(),
            c.expected.to_string(),
            c.actual.map_or_else(|| "-".to_string(), |v| v.to_string()),
            format!("{:?}", c.tolerance).to_lowercase(),
            c.status().to_string(),
        ]
    };
    let check_header = ["system", "algorithm", "field", "expected", "actual", "tolerance", "status"];
    match format {
        Format::Markdown => {
            let _ = writeln!(out, "| {} |", header.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
            for r in &result.rows {
                let _ = writeln!(out, "| {} |", row_cells(r).join(" | "));
            }
            let _ = writeln!(out);
            let _ = writeln!(out, "| {} |", check_header.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(check_header.len()));
            for c in &result.checks {
                let _ = writeln!(out, "| {} |", check_cells(c).join(" | "));
            }
        }
        Format::Csv => {
            let _ = writeln!(out, "{}", header.join(","));
            for r in &result.rows {
                let _ = writeln!(out, "{}", row_cells(r).join(","));
            }
            let _ = writeln!(out);
            let _ = writeln!(out, "{}", check_header.join(","));
            for c in &result.checks {
                let _ = writeln!(out, "{}", check_cells(c).join(","));
            }
        }
    }
    for e in &result.errors {
        let _ = writeln!(out, "\nerror: {e}");
    }
    let _ = writeln!(
        out,
        "\n{} checks, {} exact failures, {} soft differences",
        result.checks.len(),
        result.exact_failures(),
        result.checks.iter().filter(|c| c.status() == "differs").count()
    );
    out
}
