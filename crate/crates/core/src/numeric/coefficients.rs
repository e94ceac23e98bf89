//! Coefficient formulas driving the whale updates.

use crate::error::{Error, Result};
use crate::numeric::RandomSource;

/// Distance-control parameter, decreased linearly from 2 at `t = 0` to 0 at `t = total`.
pub fn linear_a_schedule(t: usize, total: usize) -> Result<f64> {
    if total == 0 {
        return Err(Error::InvalidConfig("iteration count must be positive".into()));
    }
    if t > total {
        return Err(Error::InvalidConfig(format!(
            "iteration {t} exceeds the schedule length {total}"
        )));
    }
    Ok(2.0 * (1.0 - t as f64 / total as f64))
}

/// `A = 2·a·r − a`, which lies in `[−a, a]` for `r ∈ [0, 1]`.
#[inline]
pub fn coefficient_a(a: f64, r: f64) -> f64 {
    2.0 * a * r - a
}

/// `C = 2·r`.
#[inline]
pub fn coefficient_c(r: f64) -> f64 {
    2.0 * r
}

/// The per-agent scalars a whale draws at the start of its move.
///
/// Draw order from the source is fixed: `r` for the branch coefficient, then
/// `k`, then `p`. Per-dimension `A` and `C` are drawn later, only by the
/// branches that use them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientState {
    /// Current value of the distance-control parameter.
    pub a: f64,
    /// Scalar `A` used only for the `|A| < 1` branch test.
    pub branch_a: f64,
    /// Spiral parameter in `[−1, 1)`.
    pub k: f64,
    /// Encircle/spiral switch in `[0, 1)`.
    pub p: f64,
}

impl CoefficientState {
    pub fn draw(a: f64, rng: &mut dyn RandomSource) -> Self {
        let branch_a = coefficient_a(a, rng.next_unit());
        let k = 2.0 * rng.next_unit() - 1.0;
        let p = rng.next_unit();
        CoefficientState { a, branch_a, k, p }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{RandomStream, ScriptedStream};

    #[test]
    fn schedule_endpoints() {
        assert_eq!(linear_a_schedule(0, 500).unwrap(), 2.0);
        assert_eq!(linear_a_schedule(500, 500).unwrap(), 0.0);
        assert_eq!(linear_a_schedule(250, 500).unwrap(), 1.0);
        assert!(linear_a_schedule(0, 0).is_err());
        assert!(linear_a_schedule(501, 500).is_err());
    }

    #[test]
    fn schedule_is_nonincreasing() {
        let total = 137;
        for t in 0..total {
            let now = linear_a_schedule(t, total).unwrap();
            let next = linear_a_schedule(t + 1, total).unwrap();
            assert!(now >= next);
            assert!((0.0..=2.0).contains(&now));
        }
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(coefficient_a(2.0, 1.0), 2.0);
        assert_eq!(coefficient_a(2.0, 0.0), -2.0);
        assert_eq!(coefficient_a(0.0, 0.73), 0.0);
        assert_eq!(coefficient_c(0.0), 0.0);
        assert_eq!(coefficient_c(0.5), 1.0);
        assert_eq!(coefficient_c(1.0), 2.0);
    }

    #[test]
    fn coefficient_ranges_on_random_inputs() {
        let mut rng = RandomStream::new(3);
        for _ in 0..10_000 {
            let a = 2.0 * rng.next_unit();
            let r = rng.next_unit();
            assert!(coefficient_a(a, r).abs() <= a);
            assert!((0.0..=2.0).contains(&coefficient_c(r)));
        }
        // closed endpoint r = 1
        assert!(coefficient_a(1.3, 1.0).abs() <= 1.3);
    }

    #[test]
    fn draw_order_is_r_then_k_then_p() {
        let mut s = ScriptedStream::new(vec![0.75, 0.25, 0.6]);
        let c = CoefficientState::draw(2.0, &mut s);
        assert_eq!(c.branch_a, 1.0);
        assert_eq!(c.k, -0.5);
        assert_eq!(c.p, 0.6);
    }
}
