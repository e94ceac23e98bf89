use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in a real search space. Every component is finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = components.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(RealVector(components))
    }

    pub fn zeros(len: usize) -> Self {
        RealVector(vec![0.0; len])
    }

    pub fn filled(len: usize, value: f64) -> Self {
        assert!(value.is_finite(), "fill value must be finite");
        RealVector(vec![value; len])
    }

    /// Wraps components already known to be finite (clamped positions, computed updates).
    pub(crate) fn from_finite(components: Vec<f64>) -> Self {
        debug_assert!(components.iter().all(|v| v.is_finite()));
        RealVector(components)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for RealVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for RealVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        RealVector::new(v)
    }
}

impl From<RealVector> for Vec<f64> {
    fn from(v: RealVector) -> Self {
        v.0
    }
}

/// Box constraints, `lower[i] < upper[i]` for every coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBounds")]
pub struct Bounds {
    lower: RealVector,
    upper: RealVector,
}

#[derive(Deserialize)]
struct RawBounds {
    lower: RealVector,
    upper: RealVector,
}

impl TryFrom<RawBounds> for Bounds {
    type Error = Error;

    fn try_from(raw: RawBounds) -> Result<Self> {
        Bounds::new(raw.lower, raw.upper)
    }
}

impl Bounds {
    pub fn new(lower: RealVector, upper: RealVector) -> Result<Self> {
        check_len(lower.len(), upper.len())?;
        for (index, (&lo, &hi)) in lower.iter().zip(upper.iter()).enumerate() {
            if lo >= hi {
                return Err(Error::InvalidBounds {
                    index,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(Bounds { lower, upper })
    }

    /// The same interval on every coordinate.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Bounds::new(RealVector::new(vec![lower; dim])?, RealVector::new(vec![upper; dim])?)
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &RealVector {
        &self.lower
    }

    pub fn upper(&self) -> &RealVector {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(self.upper.iter()))
                .all(|(&v, (&lo, &hi))| lo <= v && v <= hi)
    }

    /// Returns the first violating coordinate, if any.
    pub fn check(&self, x: &[f64]) -> Result<()> {
        check_len(self.dim(), x.len())?;
        for (index, (&value, (&lower, &upper))) in
            x.iter().zip(self.lower.iter().zip(self.upper.iter())).enumerate()
        {
            if !(lower <= value && value <= upper) {
                return Err(Error::OutOfBounds {
                    index,
                    value,
                    lower,
                    upper,
                });
            }
        }
        Ok(())
    }

    pub(crate) fn clamp_in_place(&self, x: &mut [f64]) {
        for (v, (&lo, &hi)) in x.iter_mut().zip(self.lower.iter().zip(self.upper.iter())) {
            *v = v.clamp(lo, hi);
        }
    }
}

/// Projects `x` onto the box, coordinate by coordinate.
pub fn clamp_to_bounds(x: &[f64], bounds: &Bounds) -> Result<RealVector> {
    check_len(bounds.dim(), x.len())?;
    let mut out = x.to_vec();
    bounds.clamp_in_place(&mut out);
    RealVector::new(out)
}

pub(crate) fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, actual })
    }
}
