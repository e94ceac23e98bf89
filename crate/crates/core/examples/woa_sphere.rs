//! Whale optimizer on the 30-dimensional sphere.

use swarm_opt::objectives::classical_function;
use swarm_opt::optimizers::{optimize, Algorithm, AlgorithmConfig};

fn main() -> swarm_opt::Result<()> {
    let sphere = classical_function(1, None);
    let result = optimize(Algorithm::Woa, &sphere, &AlgorithmConfig::default(), 42)?;
    println!("best fitness {:.3e} after {} evaluations", result.best_fitness, result.evaluations);
    for t in [0, 49, 99, 249, 499] {
        println!("  iteration {:>3}: {:.3e}", t + 1, result.trace.best_so_far()[t]);
    }
    Ok(())
}
