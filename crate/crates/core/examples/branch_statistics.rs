//! Observes a whale run iteration by iteration and reports how often each
//! move was taken as the `a` coefficient shrinks.

use swarm_opt::numeric::RandomStream;
use swarm_opt::objectives::classical_function;
use swarm_opt::optimizers::{run_with, Algorithm, AlgorithmConfig, BranchCounts, RunObserver, RunOptions, SearchAgent};

#[derive(Default)]
struct Tally(Vec<BranchCounts>);

impl RunObserver for Tally {
    fn after_iteration(&mut self, _: usize, _: &[SearchAgent], branches: &BranchCounts, _: f64) {
        self.0.push(*branches);
    }
}

fn main() -> swarm_opt::Result<()> {
    let f = classical_function(11, Some(20));
    let config = AlgorithmConfig::default();
    let mut tally = Tally::default();
    let options = RunOptions { observer: Some(&mut tally), ..Default::default() };
    let r = run_with(Algorithm::Woa, &f, &config, &mut RandomStream::new(11), options)?;

    println!("iterations   encircle  search  spiral");
    for (i, chunk) in tally.0.chunks(100).enumerate() {
        let sum = |g: fn(&BranchCounts) -> usize| chunk.iter().map(g).sum::<usize>();
        println!(
            "{:>4}-{:<4}   {:>8}  {:>6}  {:>6}",
            i * 100 + 1,
            i * 100 + chunk.len(),
            sum(|c| c.encircle),
            sum(|c| c.search),
            sum(|c| c.spiral)
        );
    }
    println!("best {:.3e}", r.best_fitness);
    Ok(())
}
