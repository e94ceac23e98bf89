//! A small experiment: two algorithms over part of the classical suite,
//! summarized and exported as CSV and JSON.
//!
//! cargo run --release --example experiment_report -- [output directory]

use std::path::PathBuf;

use swarm_opt::harness::{export_report, run_experiment, ExperimentPlan, ReportFormat, SuiteSource};
use swarm_opt::optimizers::Algorithm;

fn main() -> swarm_opt::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let mut plan = ExperimentPlan::new(SuiteSource::Classical, vec![Algorithm::Woa, Algorithm::WoaBat]);
    plan.functions = ["F1", "F5", "F9", "F16"].map(String::from).to_vec();
    plan.runs = 10;
    plan.base_seed = 2024;
    plan.dim = Some(10);
    plan.config.iterations = 200;

    let report = run_experiment(&plan)?;
    for cell in &report.cells {
        let s = &cell.summary;
        println!(
            "{:<4} {:<8} mean {:>11.4e}  std {:>10.3e}  median {:>11.4e}",
            cell.function, cell.algorithm, s.mean, s.std, s.median
        );
    }
    export_report(&report, &dir.join("report.csv"), ReportFormat::Csv)?;
    export_report(&report, &dir.join("report.json"), ReportFormat::Json)?;
    println!("wrote report.csv and report.json to {}", dir.display());
    Ok(())
}
