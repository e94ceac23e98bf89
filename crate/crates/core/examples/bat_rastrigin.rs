//! Plain bat algorithm on a 10-dimensional Rastrigin, with non-default
//! loudness decay and frequency range.

use swarm_opt::objectives::find_function;
use swarm_opt::optimizers::{optimize, Algorithm, AlgorithmConfig};

fn main() -> swarm_opt::Result<()> {
    let rastrigin = find_function("classical", "F9")?.with_dimension(10)?;
    let config = AlgorithmConfig {
        population: 40,
        iterations: 1000,
        alpha: 0.95,
        f_max: 1.0,
        ..AlgorithmConfig::default()
    };
    for seed in 1..=5 {
        let r = optimize(Algorithm::Bat, &rastrigin, &config, seed)?;
        println!("seed {seed}: best {:.4} in {:.0} ms", r.best_fitness, r.elapsed.as_secs_f64() * 1e3);
    }
    Ok(())
}
