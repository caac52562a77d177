mod alloc;
mod bench;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use invbasis::hilbert::HilbertEvaluator;
use invbasis::involutive::{involutive_basis_with, EngineConfig, EngineError};
use invbasis::moller::{groebner_basis_with, GroebnerConfig};
use invbasis::quasistable::{hd_quasi_stable, QuasiStableConfig, QuasiStableError};
use invbasis::{Division, PolySystem, Polynomial, RunStats};
use serde::Serialize;

use crate::report::StatsReport;

#[global_allocator]
static GLOBAL: alloc::CountingAlloc = alloc::CountingAlloc;

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input; exit code 1.
    Input(String),
    /// A non-termination guard fired; exit code 2.
    Guard(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Guard(_) => 2,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        CliError::Guard(e.to_string())
    }
}

impl From<QuasiStableError> for CliError {
    fn from(e: QuasiStableError) -> Self {
        match e {
            QuasiStableError::NotHomogeneous | QuasiStableError::EmptySet => CliError::Input(e.to_string()),
            _ => CliError::Guard(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "invbasis", version, about = "Involutive and Groebner bases over the rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Input system file.
    input: PathBuf,
    /// Write stats JSON here instead of stderr.
    #[arg(long)]
    stats_json: Option<PathBuf>,
    /// Zero time and memory in the stats output.
    #[arg(long)]
    stable_stats: bool,
    /// Homogenize the input with a new smallest variable `h`.
    #[arg(long)]
    homogenize: bool,
}

#[derive(Args, Clone)]
struct EngineFlags {
    /// Disable syzygy-signature pruning.
    #[arg(long)]
    no_syzygy: bool,
    /// Disable the involutive product and chain criteria.
    #[arg(long)]
    no_criteria: bool,
    /// Abort when a prolongation exceeds this degree.
    #[arg(long)]
    degree_cap: Option<u32>,
    /// Check head autoreduction at every loop head.
    #[arg(long)]
    debug: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum DivisionArg {
    Janet,
    Pommaret,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Md,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Groebner basis with signature pruning.
    Groebner {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        no_syzygy: bool,
    },
    /// Minimal Janet basis.
    Janet {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        engine: EngineFlags,
    },
    /// Minimal Pommaret basis (the ideal must be in quasi-stable position).
    Pommaret {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        engine: EngineFlags,
    },
    /// Search for a linear change giving a finite Pommaret basis.
    Quasistable {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Scalar draws per obstruction.
        #[arg(long, default_value_t = 25)]
        max_retries: usize,
        /// Recompute Janet bases without Hilbert-driven pruning.
        #[arg(long)]
        no_hilbert_driven: bool,
        /// Write the accepted changes as JSON.
        #[arg(long)]
        emit_change_log: Option<PathBuf>,
        #[arg(long)]
        debug: bool,
    },
    /// Hilbert function read off an involutive basis.
    Hilbert {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "janet")]
        division: DivisionArg,
        /// Largest degree to print (default: max basis degree + 3).
        #[arg(long)]
        upto: Option<u32>,
    },
    /// Run every system in a benchmark directory.
    Bench {
        dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "md")]
        format: FormatArg,
        #[arg(long)]
        stable_stats: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict to these system names.
        #[arg(long)]
        only: Vec<String>,
    },
}

#[derive(Serialize)]
struct ChangeRecord {
    target: String,
    addend: String,
    scalar: String,
}

fn read_input(common: &Common) -> Result<PolySystem, CliError> {
    let text = std::fs::read_to_string(&common.input)
        .map_err(|e| CliError::Input(format!("{}: {e}", common.input.display())))?;
    let sys = PolySystem::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", common.input.display())))?;
    if sys.polys.is_empty() {
        return Err(CliError::Input(format!("{}: no polynomials", common.input.display())));
    }
    Ok(if common.homogenize { sys.homogenized() } else { sys })
}

fn input_name(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn emit_stats(common: &Common, report: StatsReport) -> Result<(), CliError> {
    let report = if common.stable_stats { report.stabilized() } else { report };
    let json = report.to_json();
    match &common.stats_json {
        Some(path) => std::fs::write(path, json + "\n")
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            eprintln!("{json}");
            Ok(())
        }
    }
}

fn print_basis(sys: &PolySystem, basis: Vec<Polynomial>) {
    let out = PolySystem { vars: sys.vars.clone(), ord: sys.ord, polys: basis };
    print!("{}", out.to_text());
}

fn engine_config(division: Division, sys: &PolySystem, flags: &EngineFlags) -> EngineConfig {
    let mut cfg = EngineConfig::new(division, sys.ord);
    cfg.prune_syzygies = !flags.no_syzygy;
    cfg.use_criteria = !flags.no_criteria;
    cfg.degree_cap = flags.degree_cap;
    cfg.debug_checks = flags.debug;
    cfg
}

fn run_involutive(division: Division, common: &Common, flags: &EngineFlags) -> Result<(), CliError> {
    let sys = read_input(common)?;
    let cfg = engine_config(division, &sys, flags);
    let baseline = alloc::reset_peak();
    let start = Instant::now();
    let out = match involutive_basis_with(&sys.polys, &cfg, None) {
        Ok(out) => out,
        Err(EngineError::DegreeCapExceeded { cap, partial }) => {
            eprintln!("degree cap {cap} exceeded; partial basis follows");
            print_basis(&sys, partial);
            return Err(CliError::Guard(format!("degree cap {cap} exceeded; the ideal is probably not in quasi-stable position")));
        }
        Err(e) => return Err(e.into()),
    };
    let elapsed = start.elapsed();
    let mem = alloc::peak_since(baseline);
    print_basis(&sys, out.basis);
    emit_stats(common, StatsReport::new(&division.to_string(), &input_name(&common.input), &out.stats, 0, elapsed, mem))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Groebner { common, no_syzygy } => {
            let sys = read_input(&common)?;
            let baseline = alloc::reset_peak();
            let start = Instant::now();
            let out = groebner_basis_with(&sys.polys, sys.ord, GroebnerConfig { prune_syzygies: !no_syzygy });
            let elapsed = start.elapsed();
            let mem = alloc::peak_since(baseline);
            print_basis(&sys, out.basis);
            emit_stats(&common, StatsReport::new("groebner", &input_name(&common.input), &out.stats, 0, elapsed, mem))
        }
        Command::Janet { common, engine } => run_involutive(Division::Janet, &common, &engine),
        Command::Pommaret { common, engine } => run_involutive(Division::Pommaret, &common, &engine),
        Command::Quasistable { common, seed, max_retries, no_hilbert_driven, emit_change_log, debug } => {
            let sys = read_input(&common)?;
            let cfg = QuasiStableConfig {
                ord: sys.ord,
                seed,
                max_retries,
                hilbert_driven: !no_hilbert_driven,
                debug_checks: debug,
                ..Default::default()
            };
            let baseline = alloc::reset_peak();
            let start = Instant::now();
            let out = hd_quasi_stable(&sys.polys, &cfg)?;
            let elapsed = start.elapsed();
            let mem = alloc::peak_since(baseline);
            let names = sys.vars.names();
            let records: Vec<ChangeRecord> = out
                .log
                .changes
                .iter()
                .map(|c| ChangeRecord {
                    target: names[c.target].clone(),
                    addend: names[c.addend].clone(),
                    scalar: c.scalar.to_string(),
                })
                .collect();
            for r in &records {
                println!("# change: {} -> {} + {}*{}", r.target, r.target, r.scalar, r.addend);
            }
            if let Some(path) = emit_change_log {
                let json = serde_json::to_string_pretty(&records).expect("plain records serialize");
                std::fs::write(&path, json + "\n").map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            }
            let stats: RunStats = out.stats.clone();
            print_basis(&sys, out.log.final_janet.clone());
            let name = if no_hilbert_driven { "quasistable-baseline" } else { "hdquasistable" };
            emit_stats(&common, StatsReport::new(name, &input_name(&common.input), &stats, out.chen(), elapsed, mem))
        }
        Command::Hilbert { common, division, upto } => {
            let sys = read_input(&common)?;
            let division = match division {
                DivisionArg::Janet => Division::Janet,
                DivisionArg::Pommaret => Division::Pommaret,
            };
            let baseline = alloc::reset_peak();
            let start = Instant::now();
            let out = involutive_basis_with(&sys.polys, &EngineConfig::new(division, sys.ord), None)?;
            let lms: Vec<_> = out.basis.iter().filter_map(|p| p.lm().cloned()).collect();
            let hf = HilbertEvaluator::from_lms(sys.vars.len(), &lms, division)
                .map_err(|e| CliError::Guard(e.to_string()))?;
            let upto = upto.unwrap_or(out.stats.max_deg + 3);
            for s in 0..=upto {
                println!("{s} {}", hf.eval(s));
            }
            let elapsed = start.elapsed();
            let mem = alloc::peak_since(baseline);
            emit_stats(&common, StatsReport::new("hilbert", &input_name(&common.input), &out.stats, 0, elapsed, mem))
        }
        Command::Bench { dir, jobs, format, stable_stats, seed, only } => {
            let manifest = bench::load_manifest(&dir)?;
            let format = match format {
                FormatArg::Md => bench::Format::Markdown,
                FormatArg::Csv => bench::Format::Csv,
            };
            let opts = bench::BenchOptions { jobs, stable: stable_stats, seed, only };
            let result = bench::run(&dir, &manifest, &opts);
            print!("{}", bench::render(&result, format));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Input(msg) => eprintln!("error: {msg}"),
                CliError::Guard(msg) => eprintln!("aborted: {msg}"),
            }
            ExitCode::from(e.code())
        }
    }
}
