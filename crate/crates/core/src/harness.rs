//! Experiment orchestration: expand a plan into seeded runs, execute them
//! concurrently, summarize each (function, algorithm) cell and persist.
//!
//! Every run gets `base_seed + h(function, algorithm, run)` as its seed, with
//! `h` a fixed 64-bit hash, so a cell's results do not depend on which other
//! cells are in the plan or on the order they execute in.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{summarize_runs, ResultsMatrix, StatSummary};
use crate::error::{Error, Result};
use crate::objectives::{
    cec2005_instance, cec2019_suite, classical_suite, find_function, load_transform_data, shifted_wrap, ObjectiveSpec,
};
use crate::optimizers::{optimize, Algorithm, AlgorithmConfig, ConvergenceTrace, RunResult};

/// Where a plan's functions come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteSource {
    Classical,
    Cec2019,
    /// A suite file; see [`CustomSuite`].
    Custom(PathBuf),
}

impl fmt::Display for SuiteSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuiteSource::Classical => f.write_str("classical"),
            SuiteSource::Cec2019 => f.write_str("cec2019"),
            SuiteSource::Custom(p) => write!(f, "{}", p.display()),
        }
    }
}

impl FromStr for SuiteSource {
    type Err = Error;

    /// `classical`, `cec2019`, or a path to a custom suite file.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(SuiteSource::Classical),
            "cec2019" => Ok(SuiteSource::Cec2019),
            _ if s.ends_with(".json") || Path::new(s).exists() => Ok(SuiteSource::Custom(PathBuf::from(s))),
            _ => Err(Error::UnknownSuite(s.to_string())),
        }
    }
}

/// A custom suite file:
///
/// ```json
/// {
///   "name": "shifted",
///   "functions": [
///     {"base": "classical/F9", "dim": 10, "transform": "f9_shift.json"},
///     {"cec2005": 6, "transform": "cec2005_f6_d10.json"}
///   ]
/// }
/// ```
///
/// Transform paths are resolved relative to the suite file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CustomSuite {
    pub name: String,
    pub functions: Vec<CustomEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CustomEntry {
    Cec2005 {
        cec2005: usize,
        transform: PathBuf,
    },
    Base {
        /// `suite/id`, e.g. `classical/F9`.
        base: String,
        #[serde(default)]
        dim: Option<usize>,
        #[serde(default)]
        transform: Option<PathBuf>,
    },
}

pub fn load_custom_suite(path: &Path) -> Result<(String, Vec<ObjectiveSpec>)> {
    let text = read_text(path)?;
    let suite: CustomSuite = serde_json::from_str(&text).map_err(|e| Error::Malformed {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut specs = Vec::with_capacity(suite.functions.len());
    for entry in &suite.functions {
        let spec = match entry {
            CustomEntry::Cec2005 { cec2005, transform } => {
                cec2005_instance(*cec2005, &load_transform_data(dir.join(transform))?)?
            }
            CustomEntry::Base { base, dim, transform } => {
                let (s, id) = base.split_once('/').ok_or_else(|| Error::Malformed {
                    path: path.to_path_buf(),
                    message: format!("base `{base}` is not of the form suite/id"),
                })?;
                let mut spec = find_function(s, id)?;
                if let Some(d) = dim {
                    spec = spec.with_dimension(*d)?;
                }
                match transform {
                    Some(t) => shifted_wrap(&spec, &load_transform_data(dir.join(t))?)?,
                    None => spec,
                }
            }
        };
        specs.push(spec);
    }
    if specs.is_empty() {
        return Err(Error::Empty("custom suite"));
    }
    Ok((suite.name, specs))
}

fn default_runs() -> usize {
    30
}

/// Everything needed to reproduce an experiment. Also the plan-file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub suite: SuiteSource,
    /// Function ids to keep; empty keeps the whole suite.
    #[serde(default)]
    pub functions: Vec<String>,
    pub algorithms: Vec<Algorithm>,
    #[serde(default)]
    pub config: AlgorithmConfig,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub base_seed: u64,
    /// Keep every run's convergence trace in the report.
    #[serde(default)]
    pub trace: bool,
    /// Dimension for scalable functions; fixed-dimension functions ignore it.
    #[serde(default)]
    pub dim: Option<usize>,
    /// Concurrent runs; `None` uses every core.
    #[serde(default)]
    pub workers: Option<usize>,
}

impl ExperimentPlan {
    pub fn new(suite: SuiteSource, algorithms: Vec<Algorithm>) -> Self {
        ExperimentPlan {
            suite,
            functions: Vec::new(),
            algorithms,
            config: AlgorithmConfig::default(),
            runs: default_runs(),
            base_seed: 0,
            trace: false,
            dim: None,
            workers: None,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = read_text(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Malformed {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    /// Checks the plan and resolves its functions, without running anything.
    ///
    /// Returns the suite label, the functions and any warnings.
    pub fn resolve(&self) -> Result<(String, Vec<ObjectiveSpec>, Vec<String>)> {
        if self.runs == 0 {
            return Err(Error::InvalidConfig("runs must be positive".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::InvalidConfig("at least one algorithm is required".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::InvalidConfig("workers must be positive".into()));
        }
        if self.dim == Some(0) {
            return Err(Error::InvalidConfig("dimension must be positive".into()));
        }
        self.config.validate()?;

        let (label, catalog) = match &self.suite {
            SuiteSource::Classical => ("classical".to_string(), classical_suite()),
            SuiteSource::Cec2019 => ("cec2019".to_string(), cec2019_suite()),
            SuiteSource::Custom(path) => load_custom_suite(path)?,
        };
        let selected: Vec<ObjectiveSpec> = if self.functions.is_empty() {
            catalog
        } else {
            self.functions
                .iter()
                .map(|id| {
                    catalog
                        .iter()
                        .find(|s| s.id().eq_ignore_ascii_case(id))
                        .cloned()
                        .ok_or_else(|| Error::UnknownFunction(format!("{label}/{id}")))
                })
                .collect::<Result<_>>()?
        };

        let mut warnings = Vec::new();
        let mut functions = Vec::with_capacity(selected.len());
        for spec in selected {
            match self.dim {
                Some(d) if d != spec.dimension() && spec.is_scalable() => functions.push(spec.with_dimension(d)?),
                Some(d) if d != spec.dimension() => {
                    warnings.push(format!(
                        "{} has fixed dimension {}; dimension {d} ignored",
                        spec.id(),
                        spec.dimension()
                    ));
                    functions.push(spec);
                }
                _ => functions.push(spec),
            }
        }
        Ok((label, functions, warnings))
    }
}

/// FNV-1a over the cell identity, then a splitmix64 finalizer.
pub fn run_seed_offset(function: &str, algorithm: &str, run: usize) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let bytes = function
        .bytes()
        .chain([0xff])
        .chain(algorithm.bytes())
        .chain([0xff])
        .chain((run as u64).to_le_bytes());
    for b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(PRIME);
    }
    h = (h ^ (h >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h = (h ^ (h >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    h ^ (h >> 31)
}

pub fn run_seed(base_seed: u64, function: &str, algorithm: &str, run: usize) -> u64 {
    base_seed.wrapping_add(run_seed_offset(function, algorithm, run))
}

/// Metadata of one finished run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run: usize,
    pub seed: u64,
    pub best_fitness: f64,
    pub evaluations: u64,
    pub elapsed_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<ConvergenceTrace>,
}

/// One (function, algorithm) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub suite: String,
    pub function: String,
    pub algorithm: Algorithm,
    pub dim: usize,
    pub pop: usize,
    pub iters: usize,
    pub runs: usize,
    pub base_seed: u64,
    pub summary: StatSummary,
    /// Wall-clock total over the cell's runs.
    pub elapsed_ms: f64,
    pub run_records: Vec<RunRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub plan: ExperimentPlan,
    pub tool_version: String,
    /// Seconds since the Unix epoch when the experiment finished.
    pub timestamp: u64,
    #[serde(default)]
    pub warnings: Vec<String>,
    pub cells: Vec<CellReport>,
}

impl ExperimentReport {
    /// Copy with all wall-clock fields zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.timestamp = 0;
        for cell in &mut r.cells {
            cell.elapsed_ms = 0.0;
            for run in &mut cell.run_records {
                run.elapsed_ms = 0.0;
            }
        }
        r
    }

    pub fn cell(&self, function: &str, algorithm: Algorithm) -> Option<&CellReport> {
        self.cells
            .iter()
            .find(|c| c.function.eq_ignore_ascii_case(function) && c.algorithm == algorithm)
    }

    /// Means as a function × algorithm matrix, in plan order.
    pub fn results_matrix(&self) -> Result<ResultsMatrix> {
        ResultsMatrix::from_records(
            self.cells
                .iter()
                .map(|c| (c.function.clone(), c.algorithm.name().to_string(), c.summary.mean)),
        )
    }
}

/// Runs every (function, algorithm, run) of the plan.
///
/// Everything is validated, and every seed derived and checked for
/// collisions, before the first run starts.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<ExperimentReport> {
    let (suite, functions, warnings) = plan.resolve()?;

    let mut jobs = Vec::with_capacity(functions.len() * plan.algorithms.len() * plan.runs);
    let mut seen = HashSet::new();
    for (fi, f) in functions.iter().enumerate() {
        for &alg in &plan.algorithms {
            for run in 0..plan.runs {
                let seed = run_seed(plan.base_seed, f.id(), alg.name(), run);
                if !seen.insert(seed) {
                    return Err(Error::Degenerate(format!(
                        "seed collision at {} / {} / run {run}; choose another base seed",
                        f.id(),
                        alg
                    )));
                }
                jobs.push((fi, alg, run, seed));
            }
        }
    }

    let execute = || -> Result<Vec<(RunRecord, usize, Algorithm)>> {
        jobs.par_iter()
            .map(|&(fi, alg, run, seed)| {
                let result = optimize(alg, &functions[fi], &plan.config, seed)?;
                Ok((record(run, result, plan.trace), fi, alg))
            })
            .collect()
    };
    let finished = match plan.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("cannot start {n} workers: {e}")))?
            .install(execute)?,
        None => execute()?,
    };

    let mut cells = Vec::with_capacity(functions.len() * plan.algorithms.len());
    for chunk in finished.chunks(plan.runs) {
        let (_, fi, alg) = chunk[0];
        let f = &functions[fi];
        let records: Vec<RunRecord> = chunk.iter().map(|(r, _, _)| r.clone()).collect();
        let fitnesses: Vec<f64> = records.iter().map(|r| r.best_fitness).collect();
        cells.push(CellReport {
            suite: suite.clone(),
            function: f.id().to_string(),
            algorithm: alg,
            dim: f.dimension(),
            pop: plan.config.population,
            iters: plan.config.iterations,
            runs: plan.runs,
            base_seed: plan.base_seed,
            summary: summarize_runs(&fitnesses)?,
            elapsed_ms: records.iter().map(|r| r.elapsed_ms).sum(),
            run_records: records,
        });
    }

    Ok(ExperimentReport {
        plan: plan.clone(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        warnings,
        cells,
    })
}

fn record(run: usize, result: RunResult, keep_trace: bool) -> RunRecord {
    RunRecord {
        run,
        seed: result.seed,
        best_fitness: result.best_fitness,
        evaluations: result.evaluations,
        elapsed_ms: result.elapsed.as_secs_f64() * 1e3,
        trace: keep_trace.then_some(result.trace),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(Error::InvalidConfig(format!("unknown format `{s}` (expected csv or json)"))),
        }
    }
}

/// One line of the CSV summary export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub suite: String,
    pub function: String,
    pub algorithm: Algorithm,
    pub dim: usize,
    pub pop: usize,
    pub iters: usize,
    pub runs: usize,
    pub base_seed: u64,
    pub mean: f64,
    pub std: f64,
    pub best: f64,
    pub worst: f64,
    pub median: f64,
    pub elapsed_ms: f64,
}

impl From<&CellReport> for SummaryRow {
    fn from(c: &CellReport) -> Self {
        SummaryRow {
            suite: c.suite.clone(),
            function: c.function.clone(),
            algorithm: c.algorithm,
            dim: c.dim,
            pop: c.pop,
            iters: c.iters,
            runs: c.runs,
            base_seed: c.base_seed,
            mean: c.summary.mean,
            std: c.summary.std,
            best: c.summary.best,
            worst: c.summary.worst,
            median: c.summary.median,
            elapsed_ms: c.elapsed_ms,
        }
    }
}

pub const CSV_HEADER: &str = "suite,function,algorithm,dim,pop,iters,runs,base_seed,mean,std,best,worst,median,elapsed_ms";

/// Writes the report; CSV carries one summary row per cell, JSON the whole report.
///
/// The file appears only once fully written.
pub fn export_report(report: &ExperimentReport, path: &Path, format: ReportFormat) -> Result<()> {
    let bytes = match format {
        ReportFormat::Json => serde_json::to_vec_pretty(report).map_err(|e| Error::Malformed {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?,
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for cell in &report.cells {
                w.serialize(SummaryRow::from(cell)).map_err(|e| csv_error(path, e))?;
            }
            w.into_inner().map_err(|e| Error::Malformed {
                path: path.to_path_buf(),
                message: e.to_string(),
            })?
        }
    };
    write_atomic(path, &bytes)
}

pub fn import_report_json(path: &Path) -> Result<ExperimentReport> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Malformed {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn import_summary_csv(path: &Path) -> Result<Vec<SummaryRow>> {
    let text = read_text(path)?;
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers().map_err(|e| csv_error(path, e))?.iter().map(str::to_string).collect();
    if header.join(",") != CSV_HEADER {
        return Err(Error::Malformed {
            path: path.to_path_buf(),
            message: format!("line 1: expected header `{CSV_HEADER}`"),
        });
    }
    r.deserialize().map(|row| row.map_err(|e| csv_error(path, e))).collect()
}

/// Reads a function × algorithm matrix for ranking.
///
/// Accepts a JSON report, a JSON [`ResultsMatrix`], or a CSV with a
/// `function` column, an `algorithm` column and a `mean` or `value` column
/// (so report CSVs and hand-entered tables both work).
pub fn load_results_matrix(path: &Path) -> Result<ResultsMatrix> {
    let text = read_text(path)?;
    let malformed = |message: String| Error::Malformed {
        path: path.to_path_buf(),
        message,
    };
    if text.trim_start().starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| malformed(e.to_string()))?;
        if value.get("cells").is_some() {
            let report: ExperimentReport = serde_json::from_value(value).map_err(|e| malformed(e.to_string()))?;
            return report.results_matrix();
        }
        return serde_json::from_value::<ResultsMatrix>(value)
            .map_err(|e| malformed(e.to_string()))
            .and_then(|m| ResultsMatrix::new(m.functions().to_vec(), m.algorithms().to_vec(), m.means().to_vec()));
    }

    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| csv_error(path, e))?.clone();
    let col = |name: &str| header.iter().position(|h| h.eq_ignore_ascii_case(name));
    let (f, a) = match (col("function"), col("algorithm")) {
        (Some(f), Some(a)) => (f, a),
        _ => return Err(malformed("line 1: header needs `function` and `algorithm` columns".into())),
    };
    let v = col("mean")
        .or_else(|| col("value"))
        .ok_or_else(|| malformed("line 1: header needs a `mean` or `value` column".into()))?;
    let mut records = Vec::new();
    for row in r.records() {
        let row = row.map_err(|e| csv_error(path, e))?;
        let line = row.position().map_or(0, |p| p.line());
        let field = |i: usize| {
            row.get(i)
                .ok_or_else(|| malformed(format!("line {line}: missing column {}", i + 1)))
        };
        let raw = field(v)?;
        let value: f64 = raw
            .parse()
            .map_err(|_| malformed(format!("line {line}: `{raw}` is not a number")))?;
        if !value.is_finite() {
            return Err(malformed(format!("line {line}: `{raw}` is not finite")));
        }
        records.push((field(f)?.to_string(), field(a)?.to_string(), value));
    }
    ResultsMatrix::from_records(records).map_err(|e| malformed(e.to_string()))
}

/// Writes `iteration,best_fitness`, one row per iteration starting at 1.
pub fn export_trace(result: &RunResult, path: &Path) -> Result<()> {
    write_trace(&result.trace, path)
}

pub fn write_trace(trace: &ConvergenceTrace, path: &Path) -> Result<()> {
    if trace.is_empty() {
        return Err(Error::Empty("convergence trace"));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["iteration", "best_fitness"]).map_err(|e| csv_error(path, e))?;
    for (i, v) in trace.best_so_far().iter().enumerate() {
        w.write_record([(i + 1).to_string(), v.to_string()])
            .map_err(|e| csv_error(path, e))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Malformed {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    write_atomic(path, &bytes)
}

/// Writes every kept trace of a report as
/// `function,algorithm,run,iteration,best_fitness`.
pub fn export_report_traces(report: &ExperimentReport, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["function", "algorithm", "run", "iteration", "best_fitness"])
        .map_err(|e| csv_error(path, e))?;
    let mut any = false;
    for cell in &report.cells {
        for run in &cell.run_records {
            let Some(trace) = &run.trace else { continue };
            any = true;
            for (i, v) in trace.best_so_far().iter().enumerate() {
                w.write_record([
                    cell.function.clone(),
                    cell.algorithm.name().to_string(),
                    run.run.to_string(),
                    (i + 1).to_string(),
                    v.to_string(),
                ])
                .map_err(|e| csv_error(path, e))?;
            }
        }
    }
    if !any {
        return Err(Error::Empty("convergence trace"));
    }
    let bytes = w.into_inner().map_err(|e| Error::Malformed {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    write_atomic(path, &bytes)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let name = path.file_name().ok_or_else(|| Error::Io {
        path: path.to_path_buf(),
        source: std::io::Error::new(std::io::ErrorKind::InvalidInput, "not a file path"),
    })?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    let write = || -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    };
    write().map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::io(path, e)
    })
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingFile {
            path: path.to_path_buf(),
        },
        _ => Error::io(path, e),
    })
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let message = match e.position() {
        Some(p) => format!("line {}: {e}", p.line()),
        None => e.to_string(),
    };
    Error::Malformed {
        path: path.to_path_buf(),
        message,
    }
}
