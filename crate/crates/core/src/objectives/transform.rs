//! Shift/rotate/bias wrappers and the CEC2005 catalog.
//!
//! A transform file is a single JSON object:
//!
//! ```json
//! { "dim": 2, "shift": [1.0, 2.0], "rotation": [[0, 1], [1, 0]], "bias": -450 }
//! ```
//!
//! `rotation` is optional (identity when absent) and is given row by row.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::cec2019::weierstrass;
use super::classical::{ackley, griewank, rastrigin, rosenbrock, schwefel_1_2, sphere};
use super::{uniform_bounds, Modality, ObjectiveSpec};
use crate::error::{Error, Result};
use crate::numeric::{Bounds, RealVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformData {
    #[serde(rename = "dim")]
    pub dimension: usize,
    pub shift: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<Vec<f64>>>,
    pub bias: f64,
}

impl TransformData {
    /// No shift, no rotation, no bias.
    pub fn identity(dimension: usize) -> Self {
        TransformData {
            dimension,
            shift: vec![0.0; dimension],
            rotation: None,
            bias: 0.0,
        }
    }

    /// Checks shapes and finiteness. `path` only labels the error.
    fn validate(&self, path: &Path) -> Result<()> {
        let inconsistent = |field, message: String| Error::Inconsistent {
            path: path.to_path_buf(),
            field,
            message,
        };
        if self.dimension == 0 {
            return Err(inconsistent("dim", "must be positive".into()));
        }
        if self.shift.len() != self.dimension {
            return Err(inconsistent(
                "shift",
                format!("has {} entries, dim is {}", self.shift.len(), self.dimension),
            ));
        }
        if let Some(i) = self.shift.iter().position(|v| !v.is_finite()) {
            return Err(inconsistent("shift", format!("entry {i} is not finite")));
        }
        if !self.bias.is_finite() {
            return Err(inconsistent("bias", "is not finite".into()));
        }
        if let Some(rows) = &self.rotation {
            if rows.len() != self.dimension {
                return Err(inconsistent(
                    "rotation",
                    format!("has {} rows, dim is {}", rows.len(), self.dimension),
                ));
            }
            for (r, row) in rows.iter().enumerate() {
                if row.len() != self.dimension {
                    return Err(inconsistent(
                        "rotation",
                        format!("row {r} has {} entries, dim is {}", row.len(), self.dimension),
                    ));
                }
                if let Some(c) = row.iter().position(|v| !v.is_finite()) {
                    return Err(inconsistent("rotation", format!("entry ({r}, {c}) is not finite")));
                }
            }
        }
        Ok(())
    }
}

/// Reads and validates a transform file.
pub fn load_transform_data(path: impl AsRef<Path>) -> Result<TransformData> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingFile {
            path: path.to_path_buf(),
        },
        _ => Error::io(path, e),
    })?;
    let data: TransformData = serde_json::from_str(&text).map_err(|e| Error::Malformed {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    data.validate(path)?;
    Ok(data)
}

/// Wraps `base` as `x ↦ base(R·(x − shift)) + bias`.
///
/// Bounds are those of `base`. The known minimum moves by `bias`; the known
/// argmin is carried over when it can be mapped back (no rotation, or a base
/// argmin at the origin).
pub fn shifted_wrap(base: &ObjectiveSpec, t: &TransformData) -> Result<ObjectiveSpec> {
    if t.dimension != base.dimension() {
        return Err(Error::LengthMismatch {
            expected: base.dimension(),
            actual: t.dimension,
        });
    }
    t.validate(&PathBuf::from("<transform>"))?;

    let dim = t.dimension;
    let shift = t.shift.clone();
    let rotation: Option<Vec<f64>> = t.rotation.as_ref().map(|rows| rows.concat());
    let bias = t.bias;
    let inner = base.clone();
    let evaluator = move |x: &[f64], rng: &mut dyn crate::numeric::RandomSource| {
        let z: Vec<f64> = x.iter().zip(&shift).map(|(v, s)| v - s).collect();
        let z = match &rotation {
            Some(m) => (0..dim)
                .map(|r| m[r * dim..(r + 1) * dim].iter().zip(&z).map(|(a, b)| a * b).sum())
                .collect(),
            None => z,
        };
        inner.eval_raw(&z, rng) + bias
    };

    let mut spec = ObjectiveSpec::new(
        base.suite(),
        format!("{}-shifted", base.id()),
        format!("Shifted {}", base.name()),
        base.bounds().clone(),
        base.modality(),
        evaluator,
    );
    if base.is_noisy() {
        spec = spec.with_noise();
    }
    if let Some(min) = base.known_min() {
        spec = spec.with_known_min(min + bias);
    }
    if let Some(z) = base.known_argmin() {
        let mapped = if t.rotation.is_none() {
            Some(z.iter().zip(&t.shift).map(|(a, s)| a + s).collect::<Vec<_>>())
        } else if z.iter().all(|&v| v == 0.0) {
            Some(t.shift.clone())
        } else {
            None
        };
        if let Some(x) = mapped {
            spec = spec.with_known_argmin(RealVector::new(x)?);
        }
    }
    Ok(spec)
}

/// One row of the CEC2005 catalog.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cec2005Entry {
    pub number: usize,
    pub name: &'static str,
    pub bias: f64,
    pub dimensions: [usize; 3],
    pub lower: f64,
    pub upper: f64,
    pub modality: Modality,
    /// Whether [`cec2005_instance`] can build this function.
    pub has_base: bool,
}

const CEC2005: [(&str, f64, f64, f64); 25] = [
    ("Shifted sphere", -450.0, -100.0, 100.0),
    ("Shifted Schwefel's problem 1.2", -450.0, -100.0, 100.0),
    ("Shifted rotated high conditioned elliptic", -450.0, -100.0, 100.0),
    ("Shifted Schwefel's problem 1.2 with noise in fitness", -450.0, -100.0, 100.0),
    ("Schwefel's problem 2.6 with global optimum on bounds", -310.0, -100.0, 100.0),
    ("Shifted Rosenbrock", 390.0, -100.0, 100.0),
    ("Shifted rotated Griewank without bounds", -180.0, 0.0, 600.0),
    ("Shifted rotated Ackley with global optimum on bounds", -140.0, -32.0, 32.0),
    ("Shifted Rastrigin", -330.0, -5.0, 5.0),
    ("Shifted rotated Rastrigin", -330.0, -5.0, 5.0),
    ("Shifted rotated Weierstrass", 90.0, -0.5, 0.5),
    ("Schwefel's problem 2.13", -460.0, -std::f64::consts::PI, std::f64::consts::PI),
    ("Expanded extended Griewank plus Rosenbrock (F8F2)", -130.0, -3.0, 1.0),
    ("Shifted rotated expanded Scaffer's F6", -300.0, -100.0, 100.0),
    ("Hybrid composition", 120.0, -5.0, 5.0),
    ("Rotated hybrid composition", 120.0, -5.0, 5.0),
    ("Rotated hybrid composition with noise in fitness", 120.0, -5.0, 5.0),
    ("Rotated hybrid composition", 10.0, -5.0, 5.0),
    ("Rotated hybrid composition with a narrow basin for the global optimum", 10.0, -5.0, 5.0),
    ("Rotated hybrid composition with the global optimum on the bounds", 10.0, -5.0, 5.0),
    ("Rotated hybrid composition", 360.0, -5.0, 5.0),
    ("Rotated hybrid composition with high condition number matrix", 360.0, -5.0, 5.0),
    ("Noncontinuous rotated hybrid composition", 360.0, -5.0, 5.0),
    ("Rotated hybrid composition", 260.0, -5.0, 5.0),
    ("Rotated hybrid composition without bounds", 260.0, 2.0, 5.0),
];

/// Base functions with a native evaluator; the others need the official code.
fn cec2005_base(number: usize) -> Option<fn(&[f64]) -> f64> {
    Some(match number {
        1 => sphere,
        2 => schwefel_1_2,
        3 => high_conditioned_elliptic,
        6 => |z| rosenbrock(&z.iter().map(|v| v + 1.0).collect::<Vec<_>>()),
        7 => griewank,
        8 => ackley,
        9 | 10 => rastrigin,
        11 => weierstrass,
        _ => return None,
    })
}

fn high_conditioned_elliptic(x: &[f64]) -> f64 {
    let n = x.len();
    if n == 1 {
        return x[0] * x[0];
    }
    x.iter()
        .enumerate()
        .map(|(i, v)| 1e6f64.powf(i as f64 / (n - 1) as f64) * v * v)
        .sum()
}

pub fn cec2005_catalog() -> Vec<Cec2005Entry> {
    CEC2005
        .iter()
        .enumerate()
        .map(|(i, &(name, bias, lower, upper))| {
            let number = i + 1;
            Cec2005Entry {
                number,
                name,
                bias,
                dimensions: [10, 30, 50],
                lower,
                upper,
                modality: if number <= 5 {
                    Modality::Unimodal
                } else {
                    Modality::Multimodal
                },
                has_base: cec2005_base(number).is_some(),
            }
        })
        .collect()
}

/// Builds CEC2005 function `number` from external transform data.
///
/// The catalog bias is applied; the bias field of `data` is ignored. Bounds
/// come from the catalog row.
pub fn cec2005_instance(number: usize, data: &TransformData) -> Result<ObjectiveSpec> {
    let entry = cec2005_catalog()
        .into_iter()
        .find(|e| e.number == number)
        .ok_or_else(|| Error::UnknownFunction(format!("cec2005/F{number}")))?;
    let f = cec2005_base(number).ok_or_else(|| {
        Error::InvalidConfig(format!(
            "CEC2005 F{number} ({}) has no native base function",
            entry.name
        ))
    })?;
    let dim = data.dimension;
    let base = ObjectiveSpec::deterministic(
        "cec2005",
        format!("F{number}"),
        entry.name,
        uniform_bounds(dim.max(1), entry.lower, entry.upper),
        entry.modality,
        f,
    )
    .with_known_min(0.0)
    .with_known_argmin(RealVector::zeros(dim.max(1)));
    let with_bias = TransformData {
        bias: entry.bias,
        ..data.clone()
    };
    let bounds: Bounds = uniform_bounds(dim.max(1), entry.lower, entry.upper);
    Ok(shifted_wrap(&base, &with_bias)?
        .with_bounds(bounds)
        .with_identity("cec2005", format!("F{number}"), entry.name))
}
