use std::fs;

use swarm_opt::harness::{
    export_report, export_trace, import_report_json, import_summary_csv, load_results_matrix, run_experiment,
    ExperimentPlan, ReportFormat, SuiteSource, CSV_HEADER,
};
use swarm_opt::objectives::classical_function;
use swarm_opt::optimizers::{optimize, Algorithm, AlgorithmConfig};
use swarm_opt::Error;

fn plan() -> ExperimentPlan {
    let mut p = ExperimentPlan::new(SuiteSource::Classical, vec![Algorithm::Woa]);
    p.functions = vec!["F1".into()];
    p.runs = 3;
    p.base_seed = 7;
    p.config = AlgorithmConfig { population: 10, iterations: 30, ..Default::default() };
    p
}

#[test]
fn same_plan_same_report() {
    let a = run_experiment(&plan()).unwrap().without_timing();
    let mut p = plan();
    p.workers = Some(1);
    let mut b = run_experiment(&p).unwrap().without_timing();
    b.plan.workers = None;
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn adding_a_function_leaves_other_cells_alone() {
    let alone = run_experiment(&plan()).unwrap();
    let mut p = plan();
    p.functions = vec!["F9".into(), "F1".into()];
    p.algorithms = vec![Algorithm::Bat, Algorithm::Woa];
    let more = run_experiment(&p).unwrap();
    assert_eq!(more.cells.len(), 4);
    assert_eq!(alone.cells[0].summary, more.cell("F1", Algorithm::Woa).unwrap().summary);
}

#[test]
fn plan_expansion_counts() {
    let mut p = plan();
    p.functions.clear();
    p.algorithms = vec![Algorithm::Woa, Algorithm::WoaBat];
    p.runs = 2;
    p.config.iterations = 2;
    let r = run_experiment(&p).unwrap();
    assert_eq!(r.cells.len(), 46);
    assert!(r.cells.iter().all(|c| c.run_records.len() == 2));
    let seeds: std::collections::HashSet<u64> = r.cells.iter().flat_map(|c| c.run_records.iter().map(|x| x.seed)).collect();
    assert_eq!(seeds.len(), 92);
}

#[test]
fn csv_export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let report = run_experiment(&plan()).unwrap();
    export_report(&report, &path, ReportFormat::Csv).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
    assert_eq!(text.lines().count(), 2);
    let rows = import_summary_csv(&path).unwrap();
    let s = &report.cells[0].summary;
    assert_eq!((rows[0].mean, rows[0].std, rows[0].best, rows[0].worst, rows[0].median), (s.mean, s.std, s.best, s.worst, s.median));
    let m = load_results_matrix(&path).unwrap();
    assert_eq!(m.means()[0][0], s.mean);
}

#[test]
fn json_export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let mut p = plan();
    p.trace = true;
    let report = run_experiment(&p).unwrap();
    export_report(&report, &path, ReportFormat::Json).unwrap();
    assert_eq!(import_report_json(&path).unwrap(), report);
    assert_eq!(load_results_matrix(&path).unwrap(), report.results_matrix().unwrap());
    let names: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 1, "temporary file left behind: {names:?}");
}

#[test]
fn unwritable_path_is_reported() {
    let report = run_experiment(&plan()).unwrap();
    let path = std::path::Path::new("/nonexistent-dir/r.csv");
    match export_report(&report, path, ReportFormat::Csv) {
        Err(Error::Io { path: p, .. }) => assert_eq!(p, path),
        other => panic!("{other:?}"),
    }
}

#[test]
fn trace_export_has_one_row_per_iteration() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let r = optimize(Algorithm::WoaBat, &classical_function(10, Some(5)), &AlgorithmConfig { population: 8, iterations: 25, ..Default::default() }, 4).unwrap();
    export_trace(&r, &path).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("iteration,best_fitness"));
    let values: Vec<f64> = lines
        .enumerate()
        .map(|(i, l)| {
            let (it, v) = l.split_once(',').unwrap();
            assert_eq!(it.parse::<usize>().unwrap(), i + 1);
            v.parse().unwrap()
        })
        .collect();
    assert_eq!(values.len(), 25);
    assert!(values.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn malformed_tables_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    fs::write(&path, "function,algorithm,value\nF1,a,1\nF1,b,oops\n").unwrap();
    let msg = load_results_matrix(&path).unwrap_err().to_string();
    assert!(msg.contains("line 3"), "{msg}");
    assert!(matches!(load_results_matrix(&dir.path().join("missing.csv")), Err(Error::MissingFile { .. })));
}

#[test]
fn custom_suite_and_plan_files() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("shift.json"), r#"{"dim": 3, "shift": [1.0, -2.0, 0.5], "bias": 0}"#).unwrap();
    fs::write(
        dir.path().join("suite.json"),
        r#"{"name": "shifted", "functions": [{"base": "classical/F9", "dim": 3, "transform": "shift.json"}, {"base": "classical/F16"}]}"#,
    )
    .unwrap();
    let plan_path = dir.path().join("plan.json");
    let suite = dir.path().join("suite.json");
    fs::write(
        &plan_path,
        format!(r#"{{"suite": {{"custom": {}}}, "algorithms": ["woa"], "runs": 2, "config": {{"population": 10, "iterations": 50}}}}"#, serde_json::to_string(&suite).unwrap()),
    )
    .unwrap();
    let p = ExperimentPlan::load(&plan_path).unwrap();
    let r = run_experiment(&p).unwrap();
    assert_eq!(r.cells[0].function, "F9-shifted");
    assert_eq!(r.cells[0].suite, "shifted");
    assert_eq!(r.cells[0].dim, 3);
    assert_eq!(r.cells[1].function, "F16");
}
