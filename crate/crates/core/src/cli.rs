//! Command-line front end.
//!
//! Exit codes: 0 success (including `--help`), 1 usage error, 2 runtime
//! error. Everything is validated before any run starts, and output files
//! are written only after the whole experiment has finished.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};

use crate::analysis::{friedman_statistic, rank_by_mean, win_count};
use crate::error::Error;
use crate::harness::{
    export_report, export_report_traces, load_custom_suite, load_results_matrix, run_experiment, ExperimentPlan,
    ExperimentReport, ReportFormat, SuiteSource,
};
use crate::objectives::{cec2019_suite, classical_suite, ObjectiveSpec};
use crate::optimizers::{Algorithm, AlgorithmConfig};

pub const WORKERS_ENV: &str = "SWARM_OPT_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "swarm-opt", version, about = "Whale, bat and whale-bat optimizers on benchmark suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the functions of a suite.
    ListFunctions {
        /// classical or cec2019
        #[arg(long)]
        suite: String,
    },
    /// Run one algorithm over a suite and summarize the runs.
    Run {
        #[arg(long)]
        algorithm: Algorithm,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Run several algorithms and compare their means.
    Compare {
        /// Comma-separated, e.g. woa,woa-bat
        #[arg(long, value_delimiter = ',', required = true)]
        algorithms: Vec<Algorithm>,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Rank algorithms from a results file and compute the Friedman statistic.
    Rank {
        /// Report (csv or json) or a function,algorithm,value table
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Args)]
struct RunFlags {
    /// classical, cec2019, or a custom suite file
    #[arg(long)]
    suite: String,
    /// Function id to run; repeat for several (default: whole suite)
    #[arg(long = "function")]
    functions: Vec<String>,
    /// Dimension for scalable functions (default: catalog dimension)
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, default_value_t = 30)]
    pop: usize,
    #[arg(long, default_value_t = 500)]
    iters: usize,
    #[arg(long, default_value_t = 30)]
    runs: usize,
    /// Base seed (default: drawn from system entropy and printed)
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json
    #[arg(long, default_value = "csv")]
    format: ReportFormat,
    /// Keep per-run convergence traces in the output
    #[arg(long)]
    trace: bool,
    /// Concurrent runs (default: $SWARM_OPT_WORKERS, else all cores)
    #[arg(long)]
    workers: Option<usize>,
}

enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    let result = match cli.command {
        Command::ListFunctions { suite } => list_functions(&suite, out),
        Command::Run { algorithm, flags } => run_cmd(&[algorithm], &flags, out, err).map(|_| ()),
        Command::Compare { algorithms, flags } => compare(&algorithms, &flags, out, err),
        Command::Rank { input } => rank(&input, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}\n");
            let _ = write!(err, "{}", Cli::command().render_usage());
            let _ = writeln!(err);
            1
        }
        Err(Failure::Runtime(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn parse_suite(s: &str) -> Result<SuiteSource, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

fn list_functions(suite: &str, out: &mut dyn Write) -> Result<(), Failure> {
    let specs: Vec<ObjectiveSpec> = match parse_suite(suite)? {
        SuiteSource::Classical => classical_suite(),
        SuiteSource::Cec2019 => cec2019_suite(),
        SuiteSource::Custom(path) => load_custom_suite(&path)?.1,
    };
    let rows = specs
        .iter()
        .map(|s| {
            vec![
                s.id().to_string(),
                s.name().to_string(),
                s.dimension().to_string(),
                range(s),
                s.known_min().map_or("-".to_string(), sig6),
                s.modality().to_string(),
            ]
        })
        .collect();
    print_table(out, &["id", "name", "dim", "range", "known_min", "modality"], rows);
    Ok(())
}

fn range(spec: &ObjectiveSpec) -> String {
    let b = spec.bounds();
    let (lo, hi) = (b.lower(), b.upper());
    if lo.iter().all(|&v| v == lo[0]) && hi.iter().all(|&v| v == hi[0]) {
        format!("[{}, {}]", lo[0], hi[0])
    } else {
        "per-dimension".to_string()
    }
}

fn workers(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(WORKERS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("{WORKERS_ENV}=`{v}` is not a positive integer"))),
        _ => Ok(None),
    }
}

/// Builds and validates the plan, runs it, prints the summary and writes files.
fn run_cmd(
    algorithms: &[Algorithm],
    flags: &RunFlags,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<ExperimentReport, Failure> {
    let mut unique: Vec<Algorithm> = Vec::new();
    for &a in algorithms {
        if !unique.contains(&a) {
            unique.push(a);
        }
    }
    let seed = match flags.seed {
        Some(s) => s,
        None => {
            let s = rand::random::<u64>();
            let _ = writeln!(err, "note: no --seed given; using seed {s} (replay with --seed {s})");
            s
        }
    };
    let mut plan = ExperimentPlan::new(parse_suite(&flags.suite)?, unique);
    plan.functions = flags.functions.clone();
    plan.config = AlgorithmConfig {
        population: flags.pop,
        iterations: flags.iters,
        ..AlgorithmConfig::default()
    };
    plan.runs = flags.runs;
    plan.base_seed = seed;
    plan.trace = flags.trace;
    plan.dim = flags.dim;
    plan.workers = workers(flags.workers)?;
    plan.resolve().map_err(|e| Failure::Usage(e.to_string()))?;
    if let Some(path) = &flags.out {
        check_writable_dir(path)?;
    } else if flags.trace {
        let _ = writeln!(err, "warning: --trace has no effect without --out");
    }

    let report = run_experiment(&plan)?;
    for w in &report.warnings {
        let _ = writeln!(err, "warning: {w}");
    }

    if algorithms.len() == 1 {
        let _ = writeln!(out, "seed: {seed}");
        let rows = report
            .cells
            .iter()
            .map(|c| {
                let s = &c.summary;
                vec![
                    c.function.clone(),
                    c.algorithm.to_string(),
                    c.dim.to_string(),
                    sig6(s.mean),
                    sig6(s.std),
                    sig6(s.best),
                    sig6(s.worst),
                    sig6(s.median),
                ]
            })
            .collect();
        print_table(out, &["function", "algorithm", "dim", "mean", "std", "best", "worst", "median"], rows);
    }

    if let Some(path) = &flags.out {
        export_report(&report, path, flags.format)?;
        if flags.trace && flags.format == ReportFormat::Csv {
            export_report_traces(&report, &trace_path(path))?;
        }
    }
    Ok(report)
}

/// `results.csv` → `results.trace.csv`.
fn trace_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.trace.csv"))
}

fn check_writable_dir(path: &Path) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if dir.is_dir() {
        Ok(())
    } else {
        Err(Failure::Runtime(Error::MissingFile { path: dir.to_path_buf() }))
    }
}

fn compare(algorithms: &[Algorithm], flags: &RunFlags, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    if algorithms.len() < 2 {
        return Err(Failure::Usage("compare needs at least two algorithms".into()));
    }
    let report = run_cmd(algorithms, flags, out, err)?;
    let _ = writeln!(out, "seed: {}", report.plan.base_seed);

    let functions: Vec<&str> = {
        let mut f: Vec<&str> = Vec::new();
        for c in &report.cells {
            if !f.contains(&c.function.as_str()) {
                f.push(&c.function);
            }
        }
        f
    };
    let means: Vec<Vec<f64>> = algorithms
        .iter()
        .map(|&a| {
            functions
                .iter()
                .map(|f| report.cell(f, a).map_or(f64::NAN, |c| c.summary.mean))
                .collect()
        })
        .collect();

    let mut header = vec!["function".to_string()];
    header.extend(algorithms.iter().map(|a| a.to_string()));
    let rows = functions
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut row = vec![f.to_string()];
            row.extend(means.iter().map(|col| sig6(col[i])));
            row
        })
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    print_table(out, &header, rows);

    let _ = writeln!(out);
    for (j, a) in algorithms.iter().enumerate().skip(1) {
        let w = win_count(&means[j], &means[0])?;
        let _ = writeln!(
            out,
            "{a} vs {}: {} wins, {} ties, {} losses",
            algorithms[0], w.wins, w.ties, w.losses
        );
    }
    Ok(())
}

fn rank(input: &Path, out: &mut dyn Write) -> Result<(), Failure> {
    let matrix = load_results_matrix(input)?;
    let table = rank_by_mean(&matrix);

    let mut header = vec!["function"];
    header.extend(table.algorithms.iter().map(String::as_str));
    let mut rows: Vec<Vec<String>> = table
        .functions
        .iter()
        .zip(&table.per_function_ranks)
        .map(|(f, ranks)| {
            let mut row = vec![f.clone()];
            row.extend(ranks.iter().map(|&r| sig6(r)));
            row
        })
        .collect();
    let mut sums = vec!["rank sum".to_string()];
    sums.extend(table.per_algorithm_sum.iter().map(|&s| sig6(s)));
    let mut overall = vec!["overall".to_string()];
    overall.extend(table.overall_rank.iter().map(|&r| sig6(r)));
    rows.push(sums);
    rows.push(overall);
    print_table(out, &header, rows);

    let _ = writeln!(out);
    match friedman_statistic(&table) {
        Ok(chi2) => {
            let _ = writeln!(
                out,
                "friedman chi-square: {} (N = {}, k = {}, df = {})",
                sig6(chi2),
                table.functions.len(),
                table.algorithms.len(),
                table.algorithms.len() - 1
            );
        }
        Err(e) => {
            let _ = writeln!(out, "friedman chi-square: n/a ({e})");
        }
    }
    Ok(())
}

/// Formats with 6 significant digits.
pub fn sig6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        format!("{:.*}", (5 - exp).max(0) as usize, v)
    } else {
        format!("{v:.5e}")
    }
}

fn print_table(out: &mut dyn Write, header: &[&str], rows: Vec<Vec<String>>) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == 0 {
                    format!("{c:<width$}", width = widths[i])
                } else {
                    format!("{c:>width$}", width = widths[i])
                }
            })
            .collect::<Vec<_>>()
            .join("  ")
    };
    let _ = writeln!(out, "{}", line(header.to_vec()).trim_end());
    for row in &rows {
        let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()).trim_end());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["swarm-opt"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn sig6_examples() {
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(1.0), "1.00000");
        assert_eq!(sig6(-1.031628453), "-1.03163");
        assert_eq!(sig6(0.397887), "0.397887");
        assert_eq!(sig6(12214.3), "12214.3");
        assert_eq!(sig6(1.2e-74), "1.20000e-74");
        assert_eq!(sig6(2.1e10), "2.10000e10");
    }

    #[test]
    fn list_functions_rows() {
        let (code, out, _) = call(&["list-functions", "--suite", "classical"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 24);
        let (code, out, _) = call(&["list-functions", "--suite", "cec2019"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 11);
        let (code, _, err) = call(&["list-functions", "--suite", "bogus"]);
        assert_eq!(code, 1);
        assert!(err.contains("Usage"));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&["run", "--algorithm", "pso", "--suite", "classical"]).0, 1);
        assert_eq!(call(&["run", "--algorithm", "woa", "--suite", "classical", "--bogus"]).0, 1);
        assert_eq!(call(&["run", "--algorithm", "woa", "--suite", "classical", "--pop", "0"]).0, 1);
        assert_eq!(call(&["run", "--algorithm", "woa", "--suite", "classical", "--function", "F99"]).0, 1);
        assert_eq!(call(&["compare", "--algorithms", "woa", "--suite", "classical"]).0, 1);
        assert_eq!(call(&[]).0, 1);
    }

    #[test]
    fn help_exits_zero() {
        for sub in [&["--help"][..], &["run", "--help"], &["compare", "--help"], &["rank", "--help"], &["list-functions", "--help"]] {
            let (code, out, _) = call(sub);
            assert_eq!(code, 0);
            assert!(out.contains("Usage"));
        }
    }

    #[test]
    fn trace_path_sits_next_to_output() {
        assert_eq!(trace_path(Path::new("out/r.csv")), PathBuf::from("out/r.trace.csv"));
    }
}
