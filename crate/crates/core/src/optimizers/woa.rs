//! Whale optimization.
//!
//! Draw order per iteration `t` (with `a = 2(1 − t/T)`), agent by agent:
//!
//! 1. `r` (branch coefficient), `u_k` (`k = 2u_k − 1`), `p`;
//! 2. encircle: the `A`/`C` draws;
//!    search: the random agent index, then the `A`/`C` draws;
//!    spiral: nothing.
//!
//! With [`CoefficientMode::PerAgent`] the `A`/`C` draws are a single `u_C`
//! (`A` reuses the branch scalar); with [`CoefficientMode::PerDimension`]
//! they are `(u_A, u_C)` pairs, one per dimension.
//!
//! Positions are overwritten in agent order, so a later agent that picks an
//! earlier one as its random partner sees the partner's new position. After
//! all moves every agent is clamped and evaluated in order, and the elite is
//! updated on strict improvement.

use std::f64::consts::PI;

use super::{BranchCounts, Elite, Outcome, Run, SearchAgent};
use crate::error::Result;
use crate::numeric::{check_len, coefficient_a, coefficient_c, linear_a_schedule, CoefficientState, RandomSource, RealVector};
use crate::optimizers::{AlgorithmConfig, CoefficientMode};

/// Which whale move an agent makes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WoaBranch {
    Encircle,
    Search,
    Spiral,
}

/// `p < 0.5` picks encircle (`|A| < 1`) or search (`|A| ≥ 1`); otherwise spiral.
pub fn select_branch(p: f64, branch_a: f64) -> WoaBranch {
    if p >= 0.5 {
        WoaBranch::Spiral
    } else if branch_a.abs() < 1.0 {
        WoaBranch::Encircle
    } else {
        WoaBranch::Search
    }
}

/// `x_best − A ⊙ |C ⊙ x_best − x|`.
pub fn woa_encircle_update(x: &[f64], x_best: &[f64], a: &[f64], c: &[f64]) -> Result<RealVector> {
    pull(x, x_best, a, c)
}

/// `x_rand − A ⊙ |C ⊙ x_rand − x|`.
pub fn woa_search_update(x: &[f64], x_rand: &[f64], a: &[f64], c: &[f64]) -> Result<RealVector> {
    pull(x, x_rand, a, c)
}

/// `e^{bk}·cos(2πk)·|x_best − x| + x_best`.
pub fn woa_spiral_update(x: &[f64], x_best: &[f64], b: f64, k: f64) -> Result<RealVector> {
    check_len(x_best.len(), x.len())?;
    RealVector::new(spiral(x, x_best, b, k))
}

fn pull(x: &[f64], target: &[f64], a: &[f64], c: &[f64]) -> Result<RealVector> {
    check_len(target.len(), x.len())?;
    check_len(target.len(), a.len())?;
    check_len(target.len(), c.len())?;
    let out = (0..x.len()).map(|j| target[j] - a[j] * (c[j] * target[j] - x[j]).abs()).collect();
    RealVector::new(out)
}

pub(crate) fn spiral(x: &[f64], x_best: &[f64], b: f64, k: f64) -> Vec<f64> {
    let scale = (b * k).exp() * (2.0 * PI * k).cos();
    x.iter().zip(x_best).map(|(&xi, &bi)| scale * (bi - xi).abs() + bi).collect()
}

/// `A` and `C` for one move. Per agent: `A` is the branch scalar and one
/// `u_C` is drawn. Per dimension: interleaved `(u_A, u_C)` pairs.
fn draw_ac(coeff: &CoefficientState, mode: CoefficientMode, dim: usize, rng: &mut dyn RandomSource) -> (Vec<f64>, Vec<f64>) {
    let a = coeff.a;
    if mode == CoefficientMode::PerAgent {
        return (vec![coeff.branch_a; dim], vec![coefficient_c(rng.next_unit()); dim]);
    }
    let mut av = Vec::with_capacity(dim);
    let mut cv = Vec::with_capacity(dim);
    for _ in 0..dim {
        av.push(coefficient_a(a, rng.next_unit()));
        cv.push(coefficient_c(rng.next_unit()));
    }
    (av, cv)
}

pub(super) fn run(run: &mut Run<'_, '_>, config: &AlgorithmConfig, positions: Vec<Vec<f64>>) -> Result<Outcome> {
    let mut agents: Vec<SearchAgent> = positions
        .into_iter()
        .map(|x| {
            let fitness = run.evaluate(&x);
            SearchAgent {
                position: RealVector::from_finite(x),
                fitness,
                bat: None,
            }
        })
        .collect();
    let mut elite = Elite::from_agents(&agents);
    let n = agents.len();
    let dim = run.objective.dimension();
    let mut trace = Vec::with_capacity(config.iterations);

    for t in 0..config.iterations {
        let a = linear_a_schedule(t, config.iterations)?;
        let mut counts = BranchCounts::default();
        for i in 0..n {
            let coeff = CoefficientState::draw(a, &mut *run.rng);
            let x = &agents[i].position;
            let next = match select_branch(coeff.p, coeff.branch_a) {
                WoaBranch::Encircle => {
                    counts.encircle += 1;
                    let (av, cv) = draw_ac(&coeff, config.coefficient_mode, dim, &mut *run.rng);
                    woa_encircle_update(x, &elite.position, &av, &cv)?
                }
                WoaBranch::Search => {
                    counts.search += 1;
                    let j = run.rng.index(n);
                    let (av, cv) = draw_ac(&coeff, config.coefficient_mode, dim, &mut *run.rng);
                    woa_search_update(x, &agents[j].position, &av, &cv)?
                }
                WoaBranch::Spiral => {
                    counts.spiral += 1;
                    woa_spiral_update(x, &elite.position, config.spiral_b, coeff.k)?
                }
            };
            agents[i].position = next;
        }
        for agent in agents.iter_mut() {
            let mut x = std::mem::replace(&mut agent.position, RealVector::zeros(0)).into_vec();
            agent.fitness = run.clamp_and_evaluate(&mut x);
            elite.offer(&x, agent.fitness);
            agent.position = RealVector::from_finite(x);
        }
        trace.push(elite.fitness);
        run.notify(t, &agents, &counts, elite.fitness);
    }
    Ok(Outcome { elite, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::numeric::{RandomStream, ScriptedStream};
    use crate::objectives::{classical_function, find_function};
    use crate::optimizers::{run_with, Algorithm, RunObserver, RunOptions};
    use approx::assert_abs_diff_eq;

    #[test]
    fn encircle_examples() {
        let r = woa_encircle_update(&[1.0], &[3.0], &[0.5], &[2.0]).unwrap();
        assert_eq!(r.as_slice(), &[0.5]);
        let r = woa_encircle_update(&[4.0, -2.0], &[1.0, 1.0], &[0.0, 0.0], &[1.7, 0.3]).unwrap();
        assert_eq!(r.as_slice(), &[1.0, 1.0]);
        let r = woa_encircle_update(&[2.0], &[2.0], &[0.9], &[1.0]).unwrap();
        assert_eq!(r.as_slice(), &[2.0]);
        assert!(matches!(
            woa_encircle_update(&[1.0], &[1.0, 2.0], &[0.0, 0.0], &[0.0, 0.0]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn spiral_examples() {
        assert_eq!(woa_spiral_update(&[0.0], &[1.0], 1.0, 0.0).unwrap().as_slice(), &[2.0]);
        let r = woa_spiral_update(&[0.0], &[1.0], 1.0, 0.5).unwrap();
        assert_abs_diff_eq!(r[0], 1.0 - 0.5f64.exp(), epsilon = 1e-12);
        for k in [-1.0, -0.3, 0.0, 0.7] {
            assert_eq!(woa_spiral_update(&[3.0, -1.0], &[3.0, -1.0], 1.0, k).unwrap().as_slice(), &[3.0, -1.0]);
        }
    }

    #[test]
    fn search_examples() {
        assert_eq!(woa_search_update(&[2.0], &[-1.0], &[2.0], &[1.0]).unwrap().as_slice(), &[-7.0]);
        assert_eq!(woa_search_update(&[9.0], &[4.0], &[0.0], &[1.3]).unwrap().as_slice(), &[4.0]);
        assert_eq!(woa_search_update(&[4.0], &[4.0], &[1.5], &[1.0]).unwrap().as_slice(), &[4.0]);
    }

    #[test]
    fn branch_selection() {
        assert_eq!(select_branch(0.49, 0.99), WoaBranch::Encircle);
        assert_eq!(select_branch(0.49, -1.0), WoaBranch::Search);
        assert_eq!(select_branch(0.5, 0.0), WoaBranch::Spiral);
    }

    #[test]
    fn spiral_branch_frequency() {
        let mut rng = RandomStream::new(99);
        let mut spiral = 0;
        for _ in 0..10_000 {
            let c = CoefficientState::draw(1.0, &mut rng);
            if select_branch(c.p, c.branch_a) == WoaBranch::Spiral {
                spiral += 1;
            }
        }
        let share = spiral as f64 / 10_000.0;
        assert!((share - 0.5).abs() <= 0.02, "{share}");
    }

    #[test]
    fn elite_preserved_from_initialization() {
        let f1 = classical_function(1, Some(3));
        let config = AlgorithmConfig { population: 1, iterations: 1, ..Default::default() };
        let mut rng = RandomStream::new(5);
        let options = RunOptions {
            initial_population: Some(vec![RealVector::zeros(3)]),
            ..Default::default()
        };
        let result = run_with(Algorithm::Woa, &f1, &config, &mut rng, options).unwrap();
        assert_eq!(result.best_fitness, 0.0);
        assert_eq!(result.evaluations, 2);
    }

    struct LastCounts(Vec<BranchCounts>);

    impl RunObserver for LastCounts {
        fn after_iteration(&mut self, _: usize, _: &[SearchAgent], branches: &BranchCounts, _: f64) {
            self.0.push(*branches);
        }
    }

    #[test]
    fn no_search_branch_in_final_iteration() {
        let f = find_function("classical", "F9").unwrap().with_dimension(5).unwrap();
        let config = AlgorithmConfig { population: 20, iterations: 200, ..Default::default() };
        let mut obs = LastCounts(Vec::new());
        let mut rng = RandomStream::new(17);
        let options = RunOptions { observer: Some(&mut obs), ..Default::default() };
        run_with(Algorithm::Woa, &f, &config, &mut rng, options).unwrap();
        assert_eq!(obs.0.len(), 200);
        assert!(obs.0[0].search > 0);
        assert_eq!(obs.0.last().unwrap().search, 0);
        let total: usize = obs.0.iter().map(|c| c.encircle + c.search + c.spiral).sum();
        assert_eq!(total, 20 * 200);
    }

    #[test]
    fn scripted_single_agent_spiral() {
        // 1-D sphere on [-100, 100], one agent, one iteration
        let f = classical_function(1, Some(1));
        let config = AlgorithmConfig { population: 1, iterations: 1, ..Default::default() };
        // init u = 0.75 → x = 50; r, u_k = 0.75 (k = 0.5), p = 0.9 → spiral around itself
        let mut rng = ScriptedStream::new(vec![0.75, 0.3, 0.75, 0.9]);
        let result = run_with(Algorithm::Woa, &f, &config, &mut rng, RunOptions::default()).unwrap();
        assert_eq!(result.best_fitness, 2500.0);
        assert_eq!(rng.remaining(), 0);
    }
}
