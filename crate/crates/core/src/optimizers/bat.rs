//! Bat algorithm.
//!
//! Velocities start at zero; loudness at `loudness_init`, pulse rate at
//! `pulse_rate_init`. Draw order per iteration, bat by bat:
//!
//! 1. `β`, giving `f`, then `v ← v + (x − x*)f` and candidate `x + v`;
//! 2. `u_pulse`; if `u_pulse > r_i` the candidate becomes a local walk
//!    around `x*` with one `ε` draw per dimension, scaled by mean loudness;
//! 3. clamp and evaluate the candidate;
//! 4. `u_loud`; the candidate replaces the bat when it is no worse and
//!    `u_loud < A_i`, after which `A_i ← αA_i` and `r_i ← r₀(1 − e^{−γ(t+1)})`.
//!
//! The elite is offered every candidate, accepted or not, so later bats in
//! the same iteration already fly toward it. Velocity is kept either way.

use super::{AlgorithmConfig, BatState, BranchCounts, Elite, Outcome, Run, SearchAgent};
use crate::error::Result;
use crate::numeric::{check_len, RandomSource, RealVector};

/// `f_min + (f_max − f_min)·β`.
pub fn bat_frequency(f_min: f64, f_max: f64, beta: f64) -> f64 {
    f_min + (f_max - f_min) * beta
}

/// Returns `(v', x')` with `v' = v + (x − x_best)·f` and `x' = x + v'`.
pub fn bat_velocity_position(x: &[f64], v: &[f64], x_best: &[f64], f: f64) -> Result<(RealVector, RealVector)> {
    check_len(x.len(), v.len())?;
    check_len(x.len(), x_best.len())?;
    let (v_next, x_next) = fly(x, v, x_best, f);
    Ok((RealVector::new(v_next)?, RealVector::new(x_next)?))
}

/// `x_best + ε·mean_loudness` with `ε ~ U[−1, 1)` per dimension.
pub fn bat_local_walk(x_best: &[f64], mean_loudness: f64, rng: &mut dyn RandomSource) -> RealVector {
    assert!(mean_loudness >= 0.0, "mean loudness must be nonnegative");
    RealVector::from_finite(walk(x_best, mean_loudness, rng))
}

pub(crate) fn fly(x: &[f64], v: &[f64], target: &[f64], f: f64) -> (Vec<f64>, Vec<f64>) {
    let v_next: Vec<f64> = (0..x.len()).map(|j| v[j] + (x[j] - target[j]) * f).collect();
    let x_next = x.iter().zip(&v_next).map(|(a, b)| a + b).collect();
    (v_next, x_next)
}

fn walk(x_best: &[f64], mean_loudness: f64, rng: &mut dyn RandomSource) -> Vec<f64> {
    x_best
        .iter()
        .map(|&b| b + (2.0 * rng.next_unit() - 1.0) * mean_loudness)
        .collect()
}

pub(crate) fn pulse_rate(config: &AlgorithmConfig, t: usize) -> f64 {
    config.pulse_rate_init * (1.0 - (-config.gamma * t as f64).exp())
}

pub(crate) fn initial_bat(x: Vec<f64>, fitness: f64, config: &AlgorithmConfig) -> SearchAgent {
    let dim = x.len();
    SearchAgent {
        position: RealVector::from_finite(x),
        fitness,
        bat: Some(BatState {
            velocity: RealVector::zeros(dim),
            frequency: 0.0,
            loudness: config.loudness_init,
            pulse_rate: config.pulse_rate_init,
        }),
    }
}

pub(super) fn run(run: &mut Run<'_, '_>, config: &AlgorithmConfig, positions: Vec<Vec<f64>>) -> Result<Outcome> {
    let mut agents: Vec<SearchAgent> = positions
        .into_iter()
        .map(|x| {
            let fitness = run.evaluate(&x);
            initial_bat(x, fitness, config)
        })
        .collect();
    let mut elite = Elite::from_agents(&agents);
    let mut trace = Vec::with_capacity(config.iterations);

    for t in 0..config.iterations {
        let mut counts = BranchCounts::default();
        for i in 0..agents.len() {
            let mean_loudness =
                agents.iter().map(|a| a.bat.as_ref().map_or(0.0, |b| b.loudness)).sum::<f64>() / agents.len() as f64;
            let agent = &mut agents[i];
            let state = agent.bat.as_mut().expect("bat agents carry bat state");

            state.frequency = bat_frequency(config.f_min, config.f_max, run.rng.next_unit());
            let (v_next, mut candidate) = fly(&agent.position, &state.velocity, &elite.position, state.frequency);
            state.velocity = RealVector::from_finite(v_next);
            counts.bat_fly += 1;
            if run.rng.next_unit() > state.pulse_rate {
                counts.local_walk += 1;
                candidate = walk(&elite.position, mean_loudness, &mut *run.rng);
            }
            let fitness = run.clamp_and_evaluate(&mut candidate);
            let u_loud = run.rng.next_unit();
            if fitness <= agent.fitness && u_loud < state.loudness {
                counts.accepted += 1;
                state.loudness *= config.alpha;
                state.pulse_rate = pulse_rate(config, t + 1);
                elite.offer(&candidate, fitness);
                agent.position = RealVector::from_finite(candidate);
                agent.fitness = fitness;
            } else {
                elite.offer(&candidate, fitness);
            }
        }
        trace.push(elite.fitness);
        run.notify(t, &agents, &counts, elite.fitness);
    }
    Ok(Outcome { elite, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{RandomStream, ScriptedStream};
    use crate::objectives::classical_function;
    use crate::optimizers::{run_with, Algorithm, RunObserver, RunOptions};
    use approx::assert_abs_diff_eq;

    #[test]
    fn frequency_examples() {
        assert_eq!(bat_frequency(0.0, 2.0, 0.0), 0.0);
        assert_eq!(bat_frequency(0.0, 2.0, 1.0), 2.0);
        assert_eq!(bat_frequency(0.0, 2.0, 0.25), 0.5);
    }

    #[test]
    fn velocity_position_examples() {
        let (v, x) = bat_velocity_position(&[1.0], &[0.5], &[0.0], 2.0).unwrap();
        assert_eq!((v[0], x[0]), (2.5, 3.5));
        let (v, x) = bat_velocity_position(&[1.0, 2.0], &[0.1, -0.2], &[1.0, 2.0], 1.5).unwrap();
        assert_eq!(v.as_slice(), &[0.1, -0.2]);
        assert_eq!(x.as_slice(), &[1.1, 1.8]);
        let (v, _) = bat_velocity_position(&[4.0], &[0.3], &[0.0], 0.0).unwrap();
        assert_eq!(v[0], 0.3);
        assert!(bat_velocity_position(&[1.0], &[0.0, 0.0], &[1.0], 1.0).is_err());
    }

    #[test]
    fn local_walk_examples() {
        // u = 1 is outside a unit stream, so script ε = ±1 through its limits
        let mut rng = ScriptedStream::new(vec![0.75, 0.25]);
        let w = bat_local_walk(&[0.0, 0.0], 1.0, &mut rng);
        assert_eq!(w.as_slice(), &[0.5, -0.5]);
        let mut rng = RandomStream::new(3);
        assert_eq!(bat_local_walk(&[1.0, 2.0], 0.0, &mut rng).as_slice(), &[1.0, 2.0]);
        for _ in 0..1000 {
            let w = bat_local_walk(&[0.0; 4], 0.5, &mut rng);
            let dist = w.iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!(dist <= 0.5 * 2.0);
        }
    }

    #[test]
    fn pulse_rate_tends_to_initial() {
        let c = AlgorithmConfig::default();
        assert_eq!(pulse_rate(&c, 0), 0.0);
        assert_abs_diff_eq!(pulse_rate(&c, 200), c.pulse_rate_init, epsilon = 1e-12);
    }

    struct Loudness(Vec<f64>);

    impl RunObserver for Loudness {
        fn after_iteration(&mut self, _: usize, agents: &[SearchAgent], _: &BranchCounts, _: f64) {
            self.0.push(agents[0].bat.as_ref().unwrap().loudness);
        }
    }

    #[test]
    fn one_acceptance_decays_loudness() {
        let f = classical_function(1, Some(1));
        let config = AlgorithmConfig { population: 1, iterations: 1, ..Default::default() };
        // x0 = 50; β = 0.5 (x = x* so v stays 0); u_pulse 0.9 > 0.5 → walk ε = 0 → 50;
        // fitness ties, u_loud 0.1 < 1 → accepted
        let mut rng = ScriptedStream::new(vec![0.75, 0.5, 0.9, 0.5, 0.1]);
        let mut obs = Loudness(Vec::new());
        let options = RunOptions { observer: Some(&mut obs), ..Default::default() };
        let result = run_with(Algorithm::Bat, &f, &config, &mut rng, options).unwrap();
        assert_eq!(obs.0, vec![0.9]);
        assert_eq!(result.best_fitness, 2500.0);
        assert_eq!(rng.remaining(), 0);
    }

    #[test]
    fn elite_preserved_from_initialization() {
        let f = classical_function(5, Some(4));
        let config = AlgorithmConfig { population: 1, iterations: 1, ..Default::default() };
        let options = RunOptions {
            initial_population: Some(vec![RealVector::filled(4, 1.0)]),
            ..Default::default()
        };
        let result = run_with(Algorithm::Bat, &f, &config, &mut RandomStream::new(1), options).unwrap();
        assert_abs_diff_eq!(result.best_fitness, 0.0, epsilon = 1e-6);
    }
}
