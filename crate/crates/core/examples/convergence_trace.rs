//! Writes one convergence trace per optimizer as plot-ready CSV.
//!
//! cargo run --example convergence_trace -- [output directory]

use std::path::PathBuf;

use swarm_opt::harness::export_trace;
use swarm_opt::objectives::classical_function;
use swarm_opt::optimizers::{optimize, Algorithm, AlgorithmConfig};

fn main() -> swarm_opt::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let ackley = classical_function(10, None);
    for alg in Algorithm::ALL {
        let result = optimize(alg, &ackley, &AlgorithmConfig::default(), 7)?;
        let path = dir.join(format!("ackley_{alg}.csv"));
        export_trace(&result, &path)?;
        println!("{alg}: final {:.3e}, trace in {}", result.best_fitness, path.display());
    }
    Ok(())
}
