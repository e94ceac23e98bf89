//! Shifted, rotated and biased variants of a base function, built the way
//! CEC-style suites are, then optimized.

use swarm_opt::numeric::RandomStream;
use swarm_opt::objectives::{cec2005_instance, classical_function, evaluate, shifted_wrap, TransformData};
use swarm_opt::optimizers::{optimize, Algorithm, AlgorithmConfig};

fn main() -> swarm_opt::Result<()> {
    let (c, s) = (0.6f64, 0.8f64);
    let data = TransformData {
        dimension: 2,
        shift: vec![1.5, -2.0],
        rotation: Some(vec![vec![c, -s], vec![s, c]]),
        bias: -330.0,
    };

    let rastrigin = classical_function(9, Some(2));
    let shifted = shifted_wrap(&rastrigin, &data)?;
    let at_shift = evaluate(&shifted, &[1.5, -2.0], &mut RandomStream::new(0))?;
    println!("{} at the shift point: {at_shift}", shifted.name());

    let cec = cec2005_instance(9, &data)?;
    let r = optimize(Algorithm::Woa, &cec, &AlgorithmConfig::default(), 3)?;
    println!("{} ({}): best {:.6} at {:?}", cec.id(), cec.name(), r.best_fitness, r.best_position.as_slice());
    Ok(())
}
