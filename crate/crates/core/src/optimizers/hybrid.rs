//! Whale-bat hybrid.
//!
//! The whale's encircle and search moves are replaced by bat flights; the
//! spiral stays. Draw order per iteration `t`, agent by agent:
//!
//! 1. `r`, `u_k`, `p` as in the whale optimizer;
//! 2. `p < 0.5`: if `|A| ≥ 1` a random agent index (drawn in both modes),
//!    then `β`; the bat flies toward the elite, or toward the random agent
//!    under [`HybridMode::RandBestSubstitution`];
//!    `p ≥ 0.5`: spiral around the elite, no draws.
//!
//! Candidates are built from the positions at the start of the iteration.
//! Each is then clamped, evaluated and kept only if no worse than the
//! agent's current fitness. A flight's new velocity and frequency are kept
//! with its position, so a rejected flight leaves the bat as it was.
//! Acceptance decays loudness and raises the pulse rate. Velocity persists
//! across spiral moves.

use super::bat::{bat_frequency, fly, initial_bat, pulse_rate};
use super::woa::spiral;
use super::{AlgorithmConfig, BranchCounts, Elite, HybridMode, Outcome, Run, SearchAgent};
use crate::error::Result;
use crate::numeric::{linear_a_schedule, CoefficientState, RealVector};

/// Keeps the candidate when its fitness is no worse than the agent's.
///
/// Bat state is carried over unchanged.
pub fn greedy_accept(old: SearchAgent, candidate_position: RealVector, candidate_fitness: f64) -> SearchAgent {
    if candidate_fitness <= old.fitness {
        SearchAgent {
            position: candidate_position,
            fitness: candidate_fitness,
            bat: old.bat,
        }
    } else {
        old
    }
}

/// Frequency and velocity of a bat flight, kept only if its candidate is accepted.
type Flight = (f64, Vec<f64>);

pub(super) fn run(run: &mut Run<'_, '_>, config: &AlgorithmConfig, positions: Vec<Vec<f64>>) -> Result<Outcome> {
    let mut agents: Vec<SearchAgent> = positions
        .into_iter()
        .map(|x| {
            let fitness = run.evaluate(&x);
            initial_bat(x, fitness, config)
        })
        .collect();
    let mut elite = Elite::from_agents(&agents);
    let n = agents.len();
    let mut trace = Vec::with_capacity(config.iterations);
    let mut candidates: Vec<(Vec<f64>, Option<Flight>)> = Vec::with_capacity(n);

    for t in 0..config.iterations {
        let a = linear_a_schedule(t, config.iterations)?;
        let mut counts = BranchCounts::default();
        candidates.clear();
        for i in 0..n {
            let coeff = CoefficientState::draw(a, &mut *run.rng);
            let candidate = if coeff.p < 0.5 {
                let explore = coeff.branch_a.abs() >= 1.0;
                let partner = if explore { Some(run.rng.index(n)) } else { None };
                let target = match (partner, config.hybrid_mode) {
                    (Some(j), HybridMode::RandBestSubstitution) => {
                        counts.bat_explore += 1;
                        agents[j].position.as_slice()
                    }
                    _ => {
                        counts.bat_exploit += 1;
                        elite.position.as_slice()
                    }
                };
                let frequency = bat_frequency(config.f_min, config.f_max, run.rng.next_unit());
                let agent = &agents[i];
                let state = agent.bat.as_ref().expect("hybrid agents carry bat state");
                let (v_next, x_next) = fly(&agent.position, &state.velocity, target, frequency);
                (x_next, Some((frequency, v_next)))
            } else {
                counts.spiral += 1;
                (spiral(&agents[i].position, &elite.position, config.spiral_b, coeff.k), None)
            };
            candidates.push(candidate);
        }
        for (agent, (mut candidate, flight)) in agents.iter_mut().zip(candidates.drain(..)) {
            let fitness = run.clamp_and_evaluate(&mut candidate);
            if fitness <= agent.fitness {
                counts.accepted += 1;
                let old = std::mem::replace(agent, placeholder());
                *agent = greedy_accept(old, RealVector::from_finite(candidate), fitness);
                if let Some(state) = agent.bat.as_mut() {
                    if let Some((frequency, velocity)) = flight {
                        state.frequency = frequency;
                        state.velocity = RealVector::from_finite(velocity);
                    }
                    state.loudness *= config.alpha;
                    state.pulse_rate = pulse_rate(config, t + 1);
                }
                elite.offer(&agent.position, agent.fitness);
            }
        }
        trace.push(elite.fitness);
        run.notify(t, &agents, &counts, elite.fitness);
    }
    Ok(Outcome { elite, trace })
}

fn placeholder() -> SearchAgent {
    SearchAgent {
        position: RealVector::zeros(0),
        fitness: f64::INFINITY,
        bat: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{RandomStream, ScriptedStream};
    use crate::objectives::{classical_function, find_function};
    use crate::optimizers::{run_with, Algorithm, BatState, RunObserver, RunOptions};

    fn agent(fitness: f64) -> SearchAgent {
        SearchAgent {
            position: RealVector::filled(1, fitness),
            fitness,
            bat: Some(BatState {
                velocity: RealVector::zeros(1),
                frequency: 0.0,
                loudness: 1.0,
                pulse_rate: 0.5,
            }),
        }
    }

    #[test]
    fn greedy_examples() {
        let kept = greedy_accept(agent(5.0), RealVector::filled(1, -1.0), 3.0);
        assert_eq!((kept.fitness, kept.position[0]), (3.0, -1.0));
        let kept = greedy_accept(agent(3.0), RealVector::filled(1, -1.0), 5.0);
        assert_eq!((kept.fitness, kept.position[0]), (3.0, 3.0));
        let kept = greedy_accept(agent(3.0), RealVector::filled(1, -1.0), 3.0);
        assert_eq!(kept.position[0], -1.0);
        assert!(kept.bat.is_some());
    }

    struct Fitnesses(Vec<Vec<f64>>);

    impl RunObserver for Fitnesses {
        fn after_iteration(&mut self, _: usize, agents: &[SearchAgent], _: &BranchCounts, _: f64) {
            self.0.push(agents.iter().map(|a| a.fitness).collect());
        }
    }

    #[test]
    fn per_agent_fitness_never_worsens() {
        let f = find_function("classical", "F10").unwrap().with_dimension(5).unwrap();
        let config = AlgorithmConfig { population: 12, iterations: 80, ..Default::default() };
        let mut obs = Fitnesses(Vec::new());
        let options = RunOptions { observer: Some(&mut obs), ..Default::default() };
        run_with(Algorithm::WoaBat, &f, &config, &mut RandomStream::new(8), options).unwrap();
        for w in obs.0.windows(2) {
            for (before, after) in w[0].iter().zip(&w[1]) {
                assert!(after <= before);
            }
        }
    }

    #[test]
    fn self_targeted_flight_stays_put() {
        let f = classical_function(1, Some(1));
        let config = AlgorithmConfig { population: 1, iterations: 1, ..Default::default() };
        // x0 = 50; r = 0.9 → A = 1.6, explore toward agent 0 (itself); β = 0.5 → v = 0
        let mut rng = ScriptedStream::new(vec![0.75, 0.9, 0.5, 0.1, 0.0, 0.5]);
        let result = run_with(Algorithm::WoaBat, &f, &config, &mut rng, RunOptions::default()).unwrap();
        assert_eq!(result.best_fitness, 2500.0);
        assert_eq!(rng.remaining(), 0);
    }
}
