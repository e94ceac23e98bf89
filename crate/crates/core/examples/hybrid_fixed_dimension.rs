//! Whale-bat hybrid on the fixed-dimension multimodal functions, in both
//! target modes.

use swarm_opt::objectives::classical_function;
use swarm_opt::optimizers::{optimize, Algorithm, AlgorithmConfig, HybridMode};

fn main() -> swarm_opt::Result<()> {
    for number in 14..=23 {
        let f = classical_function(number, None);
        let mut line = format!("{:<4} {:<16} known {:>9.5}", f.id(), f.name(), f.known_min().unwrap_or(f64::NAN));
        for mode in [HybridMode::RandBestSubstitution, HybridMode::Literal] {
            let config = AlgorithmConfig { hybrid_mode: mode, ..AlgorithmConfig::default() };
            let mean = (0..10)
                .map(|seed| optimize(Algorithm::WoaBat, &f, &config, seed).map(|r| r.best_fitness))
                .sum::<swarm_opt::Result<f64>>()?
                / 10.0;
            line += &format!("  {mode:?} {mean:>9.5}");
        }
        println!("{line}");
    }
    Ok(())
}
