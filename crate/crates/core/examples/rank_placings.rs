//! Ranks the five algorithms of the CEC2005 comparison from their
//! reference per-function placings and computes the Friedman statistic.

use std::path::Path;

use swarm_opt::analysis::{friedman_statistic, rank_by_mean};
use swarm_opt::harness::load_results_matrix;

fn main() -> swarm_opt::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/cec2005_placings.csv");
    let ranks = rank_by_mean(&load_results_matrix(&path)?);
    for (alg, (sum, overall)) in ranks.algorithms.iter().zip(ranks.per_algorithm_sum.iter().zip(&ranks.overall_rank)) {
        println!("{alg:<8} sum {sum:>5}  overall {overall:.2}");
    }
    println!("friedman chi-square {:.4}", friedman_statistic(&ranks)?);
    Ok(())
}
