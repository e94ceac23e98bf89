//! Population-based optimizers: whale (WOA), bat, and the whale-bat hybrid.
//!
//! All three minimize an [`ObjectiveSpec`] inside its bounds and are driven
//! by a single [`RandomSource`]; a seeded run is bit-for-bit reproducible.
//! The exact order of draws is documented on each optimizer module so a
//! [`ScriptedStream`](crate::numeric::ScriptedStream) can replay a run by hand.
//!
//! Shared conventions:
//!
//! * the initial population is uniform in bounds, drawn agent by agent and
//!   coordinate by coordinate before the first evaluation;
//! * positions are clamped to the bounds before every evaluation;
//! * the elite is replaced only by a strictly better fitness;
//! * one trace entry (best so far) is recorded per iteration.

mod bat;
mod hybrid;
mod woa;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{RandomSource, RandomStream, RealVector};
use crate::objectives::ObjectiveSpec;

pub use bat::{bat_frequency, bat_local_walk, bat_velocity_position};
pub use hybrid::greedy_accept;
pub use woa::{select_branch, woa_encircle_update, woa_search_update, woa_spiral_update, WoaBranch};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "woa")]
    Woa,
    #[serde(rename = "bat")]
    Bat,
    #[serde(rename = "woa-bat")]
    WoaBat,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Woa, Algorithm::Bat, Algorithm::WoaBat];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Woa => "woa",
            Algorithm::Bat => "bat",
            Algorithm::WoaBat => "woa-bat",
        }
    }

    /// Number of objective evaluations a complete run performs.
    ///
    /// All three evaluate the initial population once and every agent once
    /// per iteration, so the count is `population × (1 + iterations)`.
    pub fn evaluation_count(self, config: &AlgorithmConfig) -> u64 {
        config.population as u64 * (1 + config.iterations as u64)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "woa" => Ok(Algorithm::Woa),
            "bat" => Ok(Algorithm::Bat),
            "woa-bat" | "woabat" | "woa_bat" => Ok(Algorithm::WoaBat),
            _ => Err(Error::UnknownAlgorithm(s.to_string())),
        }
    }
}

/// How the hybrid's exploration branch picks its attractor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HybridMode {
    /// `|A| ≥ 1` pulls toward a random agent instead of the elite.
    #[default]
    RandBestSubstitution,
    /// Both `p < 0.5` branches pull toward the elite; the random agent is drawn but unused.
    Literal,
}

/// How many uniform draws back the whale coefficients `A` and `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientMode {
    /// One `A` and one `C` per agent per iteration, shared by every dimension.
    /// `A` is the same scalar that selects the branch.
    #[default]
    PerAgent,
    /// Fresh `A` and `C` for every dimension; the branch test uses its own scalar `A`.
    PerDimension,
}

/// Tunables for all three optimizers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AlgorithmConfig {
    pub population: usize,
    pub iterations: usize,
    /// Logarithmic spiral shape constant.
    pub spiral_b: f64,
    pub f_min: f64,
    pub f_max: f64,
    pub loudness_init: f64,
    pub pulse_rate_init: f64,
    /// Loudness decay factor on acceptance.
    pub alpha: f64,
    /// Pulse-rate growth constant.
    pub gamma: f64,
    pub hybrid_mode: HybridMode,
    pub coefficient_mode: CoefficientMode,
}

impl Default for AlgorithmConfig {
    fn default() -> Self {
        AlgorithmConfig {
            population: 30,
            iterations: 500,
            spiral_b: 1.0,
            f_min: 0.0,
            f_max: 2.0,
            loudness_init: 1.0,
            pulse_rate_init: 0.5,
            alpha: 0.9,
            gamma: 0.9,
            hybrid_mode: HybridMode::RandBestSubstitution,
            coefficient_mode: CoefficientMode::PerAgent,
        }
    }
}

impl AlgorithmConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.population == 0 {
            return bad("population must be positive");
        }
        if self.iterations == 0 {
            return bad("iterations must be positive");
        }
        if !self.spiral_b.is_finite() {
            return bad("spiral_b must be finite");
        }
        if !(self.f_min.is_finite() && self.f_max.is_finite() && self.f_min < self.f_max) {
            return bad("f_min must be below f_max");
        }
        if !(self.loudness_init.is_finite() && self.loudness_init >= 0.0) {
            return bad("loudness_init must be nonnegative");
        }
        if !(0.0..=1.0).contains(&self.pulse_rate_init) {
            return bad("pulse_rate_init must lie in [0, 1]");
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad("alpha must lie in (0, 1)");
        }
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return bad("gamma must be positive");
        }
        Ok(())
    }
}

/// Bat-specific state carried by bat and hybrid agents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatState {
    pub velocity: RealVector,
    pub frequency: f64,
    pub loudness: f64,
    pub pulse_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchAgent {
    pub position: RealVector,
    pub fitness: f64,
    /// Present for bat and hybrid agents.
    pub bat: Option<BatState>,
}

/// Best fitness so far, one entry per iteration. Nonincreasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConvergenceTrace(Vec<f64>);

impl ConvergenceTrace {
    pub fn new(best_so_far: Vec<f64>) -> Self {
        ConvergenceTrace(best_so_far)
    }

    pub fn best_so_far(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<f64> {
        self.0.last().copied()
    }

    pub fn is_monotone(&self) -> bool {
        self.0.windows(2).all(|w| w[1] <= w[0])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub algorithm: Algorithm,
    pub best_position: RealVector,
    pub best_fitness: f64,
    pub trace: ConvergenceTrace,
    pub evaluations: u64,
    pub elapsed: Duration,
    pub seed: u64,
}

/// How often each update rule fired during one iteration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchCounts {
    /// WOA shrinking encirclement (`p < 0.5`, `|A| < 1`).
    pub encircle: usize,
    /// WOA random-agent search (`p < 0.5`, `|A| ≥ 1`).
    pub search: usize,
    /// Spiral move (`p ≥ 0.5`), WOA and hybrid.
    pub spiral: usize,
    /// Hybrid bat move toward the elite.
    pub bat_exploit: usize,
    /// Hybrid bat move toward a random agent.
    pub bat_explore: usize,
    /// Bat moves (plain bat algorithm).
    pub bat_fly: usize,
    /// Bat local walks around the elite.
    pub local_walk: usize,
    /// Candidates kept by the acceptance rule (bat and hybrid).
    pub accepted: usize,
}

/// Instrumentation hook, called once at the end of every iteration.
pub trait RunObserver {
    fn after_iteration(&mut self, iteration: usize, agents: &[SearchAgent], branches: &BranchCounts, best_fitness: f64);
}

/// Extra inputs for [`run_with`].
#[derive(Default)]
pub struct RunOptions<'a> {
    /// Replaces the random initial population. Length must equal the population size.
    pub initial_population: Option<Vec<RealVector>>,
    pub observer: Option<&'a mut dyn RunObserver>,
}

/// Runs `algorithm` on a fresh seeded stream.
pub fn optimize(algorithm: Algorithm, objective: &ObjectiveSpec, config: &AlgorithmConfig, seed: u64) -> Result<RunResult> {
    let mut rng = RandomStream::new(seed);
    run_with(algorithm, objective, config, &mut rng, RunOptions::default())
}

pub fn woa_optimize(objective: &ObjectiveSpec, config: &AlgorithmConfig, seed: u64) -> Result<RunResult> {
    optimize(Algorithm::Woa, objective, config, seed)
}

pub fn bat_optimize(objective: &ObjectiveSpec, config: &AlgorithmConfig, seed: u64) -> Result<RunResult> {
    optimize(Algorithm::Bat, objective, config, seed)
}

pub fn woabat_optimize(objective: &ObjectiveSpec, config: &AlgorithmConfig, seed: u64) -> Result<RunResult> {
    optimize(Algorithm::WoaBat, objective, config, seed)
}

/// Runs `algorithm` on a caller-supplied random source.
pub fn run_with(
    algorithm: Algorithm,
    objective: &ObjectiveSpec,
    config: &AlgorithmConfig,
    rng: &mut dyn RandomSource,
    mut options: RunOptions<'_>,
) -> Result<RunResult> {
    config.validate()?;
    if let Some(init) = &options.initial_population {
        if init.len() != config.population {
            return Err(Error::InvalidConfig(format!(
                "initial population has {} agents, config expects {}",
                init.len(),
                config.population
            )));
        }
        for x in init {
            objective.bounds().check(x)?;
        }
    }
    let start = Instant::now();
    let mut run = Run::new(objective, rng, options.observer.take());
    let positions = run.initial_positions(config.population, options.initial_population.take());
    let outcome = match algorithm {
        Algorithm::Woa => woa::run(&mut run, config, positions)?,
        Algorithm::Bat => bat::run(&mut run, config, positions)?,
        Algorithm::WoaBat => hybrid::run(&mut run, config, positions)?,
    };
    let seed = run.rng.seed().unwrap_or(0);
    Ok(RunResult {
        algorithm,
        best_position: RealVector::from_finite(outcome.elite.position),
        best_fitness: outcome.elite.fitness,
        trace: ConvergenceTrace(outcome.trace),
        evaluations: run.evaluations,
        elapsed: start.elapsed(),
        seed,
    })
}

/// Shared per-run state.
pub(crate) struct Run<'a, 'o> {
    pub objective: &'a ObjectiveSpec,
    pub rng: &'a mut dyn RandomSource,
    pub observer: Option<&'o mut dyn RunObserver>,
    pub evaluations: u64,
}

impl<'a, 'o> Run<'a, 'o> {
    fn new(objective: &'a ObjectiveSpec, rng: &'a mut dyn RandomSource, observer: Option<&'o mut dyn RunObserver>) -> Self {
        Run {
            objective,
            rng,
            observer,
            evaluations: 0,
        }
    }

    fn initial_positions(&mut self, population: usize, given: Option<Vec<RealVector>>) -> Vec<Vec<f64>> {
        if let Some(given) = given {
            return given.into_iter().map(RealVector::into_vec).collect();
        }
        let bounds = self.objective.bounds();
        (0..population)
            .map(|_| {
                bounds
                    .lower()
                    .iter()
                    .zip(bounds.upper().iter())
                    .map(|(&lo, &hi)| self.rng.uniform(lo, hi))
                    .collect()
            })
            .collect()
    }

    /// Clamps `x` in place and evaluates it.
    pub fn clamp_and_evaluate(&mut self, x: &mut [f64]) -> f64 {
        self.objective.bounds().clamp_in_place(x);
        self.evaluate(x)
    }

    pub fn evaluate(&mut self, x: &[f64]) -> f64 {
        self.evaluations += 1;
        self.objective.eval_raw(x, &mut *self.rng)
    }

    pub fn notify(&mut self, iteration: usize, agents: &[SearchAgent], branches: &BranchCounts, best: f64) {
        if let Some(obs) = self.observer.as_deref_mut() {
            obs.after_iteration(iteration, agents, branches, best);
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Elite {
    pub position: Vec<f64>,
    pub fitness: f64,
}

impl Elite {
    /// First agent with the lowest fitness.
    pub fn from_agents(agents: &[SearchAgent]) -> Self {
        let mut best = &agents[0];
        for a in &agents[1..] {
            if a.fitness < best.fitness {
                best = a;
            }
        }
        Elite {
            position: best.position.to_vec(),
            fitness: best.fitness,
        }
    }

    /// Replaces the elite on strict improvement.
    pub fn offer(&mut self, x: &[f64], fitness: f64) -> bool {
        if fitness < self.fitness {
            self.position.clear();
            self.position.extend_from_slice(x);
            self.fitness = fitness;
            true
        } else {
            false
        }
    }
}

pub(crate) struct Outcome {
    pub elite: Elite,
    pub trace: Vec<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
            assert_eq!(serde_json::to_string(&a).unwrap(), format!("\"{}\"", a.name()));
        }
        assert!("pso".parse::<Algorithm>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(AlgorithmConfig::default().validate().is_ok());
        let cases = [
            AlgorithmConfig { population: 0, ..Default::default() },
            AlgorithmConfig { iterations: 0, ..Default::default() },
            AlgorithmConfig { f_min: 2.0, f_max: 2.0, ..Default::default() },
            AlgorithmConfig { alpha: 1.0, ..Default::default() },
            AlgorithmConfig { gamma: 0.0, ..Default::default() },
            AlgorithmConfig { pulse_rate_init: 1.5, ..Default::default() },
            AlgorithmConfig { loudness_init: -1.0, ..Default::default() },
        ];
        for c in cases {
            assert!(matches!(c.validate(), Err(Error::InvalidConfig(_))), "{c:?}");
        }
    }

    #[test]
    fn config_deserializes_with_defaults() {
        let c: AlgorithmConfig = serde_json::from_str(r#"{"population": 10, "hybrid_mode": "literal"}"#).unwrap();
        assert_eq!(c.population, 10);
        assert_eq!(c.iterations, 500);
        assert_eq!(c.hybrid_mode, HybridMode::Literal);
    }

    #[test]
    fn trace_monotonicity() {
        assert!(ConvergenceTrace::new(vec![5.0, 3.0, 3.0, 1.0]).is_monotone());
        assert!(!ConvergenceTrace::new(vec![1.0, 2.0]).is_monotone());
    }
}
