//! Benchmark objective functions.
//!
//! Every function is minimized. Catalogs:
//!
//! * [`classical_suite`]: the 23 classical functions (F1–F7 unimodal,
//!   F8–F13 scalable multimodal, F14–F23 fixed-dimension multimodal).
//! * [`cec2019_suite`]: the ten CEC2019 basic functions. F4–F10 are in base
//!   form (no shift, no rotation) with a `+1` bias so every minimum is 1.
//! * [`cec2005_catalog`]: metadata for CEC2005; instances need external
//!   shift/rotation data through [`load_transform_data`] and [`shifted_wrap`].

mod cec2019;
mod classical;
mod transform;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{check_len, Bounds, RandomSource, RealVector};

pub use cec2019::{cec2019_function, cec2019_suite};
pub use classical::{classical_function, classical_suite};
pub use transform::{
    cec2005_catalog, cec2005_instance, load_transform_data, shifted_wrap, Cec2005Entry,
    TransformData,
};

/// An objective evaluator. The random source is only read by noisy functions.
pub type Evaluator = dyn Fn(&[f64], &mut dyn RandomSource) -> f64 + Send + Sync;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Modality {
    Unimodal,
    Multimodal,
    FixedDimensionMultimodal,
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Modality::Unimodal => "unimodal",
            Modality::Multimodal => "multimodal",
            Modality::FixedDimensionMultimodal => "fixed-dimension multimodal",
        })
    }
}

/// A named benchmark function with its domain and known optimum.
///
/// Cloning is cheap; the evaluator is shared.
#[derive(Clone)]
pub struct ObjectiveSpec {
    suite: String,
    id: String,
    name: String,
    bounds: Bounds,
    evaluator: Arc<Evaluator>,
    known_min: Option<f64>,
    known_argmin: Option<RealVector>,
    modality: Modality,
    noisy: bool,
    resize: Option<fn(usize) -> ObjectiveSpec>,
}

impl ObjectiveSpec {
    pub fn new<F>(
        suite: impl Into<String>,
        id: impl Into<String>,
        name: impl Into<String>,
        bounds: Bounds,
        modality: Modality,
        evaluator: F,
    ) -> Self
    where
        F: Fn(&[f64], &mut dyn RandomSource) -> f64 + Send + Sync + 'static,
    {
        ObjectiveSpec {
            suite: suite.into(),
            id: id.into(),
            name: name.into(),
            bounds,
            evaluator: Arc::new(evaluator),
            known_min: None,
            known_argmin: None,
            modality,
            noisy: false,
            resize: None,
        }
    }

    /// Convenience constructor for functions that never read the random source.
    pub fn deterministic(
        suite: impl Into<String>,
        id: impl Into<String>,
        name: impl Into<String>,
        bounds: Bounds,
        modality: Modality,
        f: fn(&[f64]) -> f64,
    ) -> Self {
        ObjectiveSpec::new(suite, id, name, bounds, modality, move |x, _| f(x))
    }

    pub fn with_known_min(mut self, value: f64) -> Self {
        self.known_min = Some(value);
        self
    }

    pub fn with_known_argmin(mut self, x: RealVector) -> Self {
        self.known_argmin = Some(x);
        self
    }

    pub fn with_noise(mut self) -> Self {
        self.noisy = true;
        self
    }

    pub(crate) fn with_resize(mut self, resize: fn(usize) -> ObjectiveSpec) -> Self {
        self.resize = Some(resize);
        self
    }

    pub(crate) fn with_bounds(mut self, bounds: Bounds) -> Self {
        self.bounds = bounds;
        self
    }

    pub(crate) fn with_identity(mut self, suite: impl Into<String>, id: impl Into<String>, name: impl Into<String>) -> Self {
        self.suite = suite.into();
        self.id = id.into();
        self.name = name.into();
        self
    }

    pub fn suite(&self) -> &str {
        &self.suite
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.bounds.dim()
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn known_min(&self) -> Option<f64> {
        self.known_min
    }

    pub fn known_argmin(&self) -> Option<&RealVector> {
        self.known_argmin.as_ref()
    }

    pub fn modality(&self) -> Modality {
        self.modality
    }

    /// Whether evaluation draws from the random source (F7).
    pub fn is_noisy(&self) -> bool {
        self.noisy
    }

    /// Whether the function is defined for any dimension.
    pub fn is_scalable(&self) -> bool {
        self.resize.is_some()
    }

    /// Rebuilds a scalable function at another dimension.
    pub fn with_dimension(&self, dim: usize) -> Result<ObjectiveSpec> {
        if dim == self.dimension() {
            return Ok(self.clone());
        }
        match self.resize {
            Some(resize) if dim > 0 => Ok(resize(dim)),
            Some(_) => Err(Error::InvalidConfig("dimension must be positive".into())),
            None => Err(Error::InvalidConfig(format!(
                "{} has fixed dimension {}",
                self.id,
                self.dimension()
            ))),
        }
    }

    /// Evaluates without checking length or bounds.
    #[inline]
    pub(crate) fn eval_raw(&self, x: &[f64], rng: &mut dyn RandomSource) -> f64 {
        (self.evaluator)(x, rng)
    }
}

impl fmt::Debug for ObjectiveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObjectiveSpec")
            .field("suite", &self.suite)
            .field("id", &self.id)
            .field("name", &self.name)
            .field("dimension", &self.dimension())
            .field("known_min", &self.known_min)
            .field("modality", &self.modality)
            .field("noisy", &self.noisy)
            .finish_non_exhaustive()
    }
}

/// Evaluates `spec` at `x`, rejecting wrong lengths and out-of-bounds points.
///
/// `rng` feeds the noise term of noisy functions and is untouched otherwise.
pub fn evaluate(spec: &ObjectiveSpec, x: &[f64], rng: &mut dyn RandomSource) -> Result<f64> {
    check_len(spec.dimension(), x.len())?;
    spec.bounds.check(x)?;
    Ok(spec.eval_raw(x, rng))
}

/// Looks up a function by suite name (`classical` or `cec2019`) and id (`F1`, `f1`, ...).
pub fn find_function(suite: &str, id: &str) -> Result<ObjectiveSpec> {
    let catalog = match suite {
        "classical" => classical_suite(),
        "cec2019" => cec2019_suite(),
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    catalog
        .into_iter()
        .find(|s| s.id().eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownFunction(format!("{suite}/{id}")))
}

pub(crate) fn uniform_bounds(dim: usize, lo: f64, hi: f64) -> Bounds {
    Bounds::uniform(dim, lo, hi).expect("catalog bounds are valid")
}

pub(crate) fn point(components: &[f64]) -> RealVector {
    RealVector::new(components.to_vec()).expect("catalog points are finite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{RandomStream, ScriptedStream};

    #[test]
    fn evaluate_checks_shape_and_bounds() {
        let f1 = find_function("classical", "F1").unwrap();
        let mut rng = ScriptedStream::new(vec![]);
        assert_eq!(evaluate(&f1, &[0.0; 30], &mut rng).unwrap(), 0.0);
        assert!(matches!(
            evaluate(&f1, &[0.0; 29], &mut rng),
            Err(Error::LengthMismatch { expected: 30, actual: 29 })
        ));
        let mut outside = vec![0.0; 30];
        outside[4] = 100.5;
        assert!(matches!(
            evaluate(&f1, &outside, &mut rng),
            Err(Error::OutOfBounds { index: 4, .. })
        ));
    }

    #[test]
    fn lookup_is_case_insensitive_and_suite_scoped() {
        assert_eq!(find_function("classical", "f9").unwrap().name(), "Rastrigin");
        assert_eq!(find_function("cec2019", "F4").unwrap().dimension(), 10);
        assert!(matches!(find_function("classical", "F24"), Err(Error::UnknownFunction(_))));
        assert!(matches!(find_function("bogus", "F1"), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn resizing() {
        let f9 = find_function("classical", "F9").unwrap();
        let f9_10 = f9.with_dimension(10).unwrap();
        assert_eq!(f9_10.dimension(), 10);
        assert_eq!(f9_10.known_argmin().unwrap().len(), 10);
        let f14 = find_function("classical", "F14").unwrap();
        assert!(!f14.is_scalable());
        assert!(f14.with_dimension(30).is_err());
        assert_eq!(f14.with_dimension(2).unwrap().dimension(), 2);
        assert!(f9.with_dimension(0).is_err());
    }

    #[test]
    fn f8_minimum_scales_with_dimension() {
        let f8 = find_function("classical", "F8").unwrap();
        let min30 = f8.known_min().unwrap();
        assert!((min30 - (-418.9829 * 30.0)).abs() < 1e-2);
        let min5 = f8.with_dimension(5).unwrap().known_min().unwrap();
        assert!((min5 - (-418.9829 * 5.0)).abs() < 1e-3);
    }

    #[test]
    fn noisy_quartic_reads_the_stream() {
        let f7 = find_function("classical", "F7").unwrap();
        assert!(f7.is_noisy());
        let x = vec![0.5; 30];
        let mut a = RandomStream::new(11);
        let mut b = RandomStream::new(11);
        assert_eq!(evaluate(&f7, &x, &mut a).unwrap(), evaluate(&f7, &x, &mut b).unwrap());
        let mut scripted = ScriptedStream::new(vec![0.25]);
        let base: f64 = (1..=30).map(|i| i as f64 * 0.0625).sum();
        assert_eq!(evaluate(&f7, &x, &mut scripted).unwrap(), base + 0.25);
    }
}
