//! Shared numeric primitives: points, boxes, random draws and whale coefficients.

mod coefficients;
mod random;
mod vector;

pub use coefficients::{coefficient_a, coefficient_c, linear_a_schedule, CoefficientState};
pub use random::{RandomSource, RandomStream, ScriptedStream};
pub use vector::{clamp_to_bounds, Bounds, RealVector};

pub(crate) use vector::check_len;
