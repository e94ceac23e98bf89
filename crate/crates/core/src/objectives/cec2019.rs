//! CEC2019 "100-digit" basic functions.
//!
//! F1–F3 are the fixed-dimension problems (Chebyshev fitting, inverse
//! Hilbert, Lennard-Jones). F4–F10 are evaluated in base form: no shift, no
//! rotation, no input scaling. All ten carry a `+1` bias, so every global
//! minimum value is 1.

use std::f64::consts::PI;

use super::classical::{ackley, griewank, rastrigin};
use super::{point, uniform_bounds, Modality, ObjectiveSpec};

const SUITE: &str = "cec2019";
const BIAS: f64 = 1.0;

type BaseFn = fn(&[f64]) -> f64;
type Resize = fn(usize) -> ObjectiveSpec;

pub fn cec2019_suite() -> Vec<ObjectiveSpec> {
    (1..=10).map(|i| cec2019_function(i, None)).collect()
}

/// Function `F{number}`, `number` in 1..=10. `dim` only applies to F4–F10.
pub fn cec2019_function(number: usize, dim: Option<usize>) -> ObjectiveSpec {
    match number {
        1 => ObjectiveSpec::deterministic(
            SUITE,
            "F1",
            "Storn's Chebyshev polynomial fitting",
            uniform_bounds(9, -8192.0, 8192.0),
            Modality::Multimodal,
            |x| chebyshev_fitting(x) + BIAS,
        )
        .with_known_min(1.0)
        .with_known_argmin(point(&[128.0, 0.0, -256.0, 0.0, 160.0, 0.0, -32.0, 0.0, 1.0])),
        2 => ObjectiveSpec::deterministic(
            SUITE,
            "F2",
            "Inverse Hilbert matrix",
            uniform_bounds(16, -16384.0, 16384.0),
            Modality::Multimodal,
            |x| inverse_hilbert(x) + BIAS,
        )
        .with_known_min(1.0)
        .with_known_argmin(point(&INVERSE_HILBERT_4)),
        3 => ObjectiveSpec::deterministic(
            SUITE,
            "F3",
            "Lennard-Jones minimum energy cluster",
            uniform_bounds(18, -4.0, 4.0),
            Modality::Multimodal,
            |x| lennard_jones(x) + BIAS,
        )
        .with_known_min(1.0)
        .with_known_argmin(point(&octahedron(LJ6_HALF_DIAGONAL))),
        4..=10 => scalable(number, dim.unwrap_or(10)),
        _ => panic!("CEC2019 functions are numbered 1..=10, got {number}"),
    }
}

fn scalable(number: usize, dim: usize) -> ObjectiveSpec {
    let (name, f, resize): (&str, BaseFn, Resize) = match number {
        4 => ("Rastrigin", |x| rastrigin(x) + BIAS, r4),
        5 => ("Griewank", |x| griewank(x) + BIAS, r5),
        6 => ("Weierstrass", |x| weierstrass(x) + BIAS, r6),
        7 => ("Modified Schwefel", |x| modified_schwefel(x) + BIAS, r7),
        8 => ("Expanded Schaffer F6", |x| expanded_schaffer_f6(x) + BIAS, r8),
        9 => ("Happy Cat", |x| happy_cat(x) + BIAS, r9),
        10 => ("Ackley", |x| ackley(x) + BIAS, r10),
        _ => unreachable!(),
    };
    ObjectiveSpec::deterministic(
        SUITE,
        format!("F{number}"),
        name,
        uniform_bounds(dim, -100.0, 100.0),
        Modality::Multimodal,
        f,
    )
    .with_known_min(1.0)
    .with_known_argmin(point(&vec![0.0; dim]))
    .with_resize(resize)
}

fn r4(d: usize) -> ObjectiveSpec {
    scalable(4, d)
}
fn r5(d: usize) -> ObjectiveSpec {
    scalable(5, d)
}
fn r6(d: usize) -> ObjectiveSpec {
    scalable(6, d)
}
fn r7(d: usize) -> ObjectiveSpec {
    scalable(7, d)
}
fn r8(d: usize) -> ObjectiveSpec {
    scalable(8, d)
}
fn r9(d: usize) -> ObjectiveSpec {
    scalable(9, d)
}
fn r10(d: usize) -> ObjectiveSpec {
    scalable(10, d)
}

/// Penalizes a degree-(n−1) polynomial (coefficients highest first) for
/// leaving [−1, 1] on [−1, 1], and for falling below T_{n−1}(1.2) at 1.2.
fn chebyshev_fitting(x: &[f64]) -> f64 {
    let n = x.len();
    let (mut a, mut b) = (1.0, 1.2);
    let mut target = 0.0;
    for _ in 0..n - 2 {
        target = 2.4 * b - a;
        a = b;
        b = target;
    }
    let horner = |y: f64| x[1..].iter().fold(x[0], |acc, &c| y * acc + c);

    let samples = 32 * n;
    let dy = 2.0 / samples as f64;
    let mut y = -1.0;
    let mut sum = 0.0;
    for _ in 0..=samples {
        let p = horner(y);
        if !(-1.0..=1.0).contains(&p) {
            sum += (1.0 - p.abs()).powi(2);
        }
        y += dy;
    }
    // the reference implementation checks the right end twice
    for _ in 0..2 {
        let p = horner(1.2);
        if p < target {
            sum += p * p;
        }
    }
    sum
}

const INVERSE_HILBERT_4: [f64; 16] = [
    16.0, -120.0, 240.0, -140.0, //
    -120.0, 1200.0, -2700.0, 1680.0, //
    240.0, -2700.0, 6480.0, -4200.0, //
    -140.0, 1680.0, -4200.0, 2800.0,
];

/// Σ |H·X − I| over entries, with X the input reshaped to a square matrix.
fn inverse_hilbert(x: &[f64]) -> f64 {
    let b = (x.len() as f64).sqrt() as usize;
    let mut sum = 0.0;
    for j in 0..b {
        for k in 0..b {
            let y: f64 = (0..b).map(|i| x[k + b * i] / (j + i + 1) as f64).sum();
            sum += if j == k { (y - 1.0).abs() } else { y.abs() };
        }
    }
    sum
}

/// Half-diagonal of the regular octahedron that minimizes six-atom energy.
const LJ6_HALF_DIAGONAL: f64 = 0.703_946_848_283_521_7;

fn octahedron(s: f64) -> Vec<f64> {
    vec![
        s, 0.0, 0.0, -s, 0.0, 0.0, //
        0.0, s, 0.0, 0.0, -s, 0.0, //
        0.0, 0.0, s, 0.0, 0.0, -s,
    ]
}

fn lennard_jones(x: &[f64]) -> f64 {
    let atoms = x.len() / 3;
    let mut sum = 0.0;
    for i in 0..atoms - 1 {
        for j in i + 1..atoms {
            let (a, b) = (3 * i, 3 * j);
            let d2 = (x[a] - x[b]).powi(2) + (x[a + 1] - x[b + 1]).powi(2) + (x[a + 2] - x[b + 2]).powi(2);
            let d6 = d2 * d2 * d2;
            sum += if d6 > 1e-10 { (1.0 / d6 - 2.0) / d6 } else { 1e20 };
        }
    }
    sum + 12.712_062_256_8
}

pub(crate) fn weierstrass(x: &[f64]) -> f64 {
    const A: f64 = 0.5;
    const B: f64 = 3.0;
    const K_MAX: i32 = 20;
    let mut offset = 0.0;
    for k in 0..=K_MAX {
        offset += A.powi(k) * (PI * B.powi(k)).cos();
    }
    let mut sum = 0.0;
    for &v in x {
        for k in 0..=K_MAX {
            sum += A.powi(k) * (2.0 * PI * B.powi(k) * (v + 0.5)).cos();
        }
    }
    sum - x.len() as f64 * offset
}

fn modified_schwefel(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mut sum = 0.0;
    for &v in x {
        let z = v + 420.968_746_227_503_6;
        let g = if z > 500.0 {
            let m = 500.0 - z % 500.0;
            m * m.sqrt().sin() - (z - 500.0).powi(2) / (10_000.0 * n)
        } else if z < -500.0 {
            let m = z.abs() % 500.0 - 500.0;
            m * m.abs().sqrt().sin() - (z + 500.0).powi(2) / (10_000.0 * n)
        } else {
            z * z.abs().sqrt().sin()
        };
        sum += g;
    }
    418.982_887_272_433_8 * n - sum
}

fn expanded_schaffer_f6(x: &[f64]) -> f64 {
    let n = x.len();
    let g = |a: f64, b: f64| {
        let r2 = a * a + b * b;
        0.5 + (r2.sqrt().sin().powi(2) - 0.5) / (1.0 + 0.001 * r2).powi(2)
    };
    (0..n).map(|i| g(x[i], x[(i + 1) % n])).sum()
}

fn happy_cat(x: &[f64]) -> f64 {
    const ALPHA: f64 = 0.125;
    let n = x.len() as f64;
    let (mut r2, mut sum) = (0.0, 0.0);
    for &v in x {
        let z = v - 1.0;
        r2 += z * z;
        sum += z;
    }
    (r2 - n).abs().powf(2.0 * ALPHA) + (0.5 * r2 + sum) / n + 0.5
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ScriptedStream;
    use approx::assert_abs_diff_eq;

    fn at(number: usize, x: &[f64]) -> f64 {
        cec2019_function(number, Some(x.len())).eval_raw(x, &mut ScriptedStream::new(vec![]))
    }

    #[test]
    fn catalog_shape() {
        let suite = cec2019_suite();
        assert_eq!(suite.len(), 10);
        let dims: Vec<usize> = suite.iter().map(|s| s.dimension()).collect();
        assert_eq!(dims, [9, 16, 18, 10, 10, 10, 10, 10, 10, 10]);
        assert_eq!(suite[0].bounds().upper()[0], 8192.0);
        assert_eq!(suite[1].bounds().upper()[0], 16384.0);
        assert_eq!(suite[2].bounds().lower()[0], -4.0);
        for s in &suite[3..] {
            assert_eq!(s.bounds().lower()[0], -100.0);
            assert_eq!(s.bounds().upper()[0], 100.0);
        }
        assert!(suite.iter().all(|s| s.known_min() == Some(1.0)));
    }

    #[test]
    fn base_forms_at_origin() {
        assert_eq!(at(4, &[0.0; 10]), 1.0);
        assert_abs_diff_eq!(at(10, &[0.0; 10]), 1.0, epsilon = 1e-12);
        assert_eq!(at(5, &[0.0; 10]), 1.0);
        assert_abs_diff_eq!(at(6, &[0.0; 10]), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(at(7, &[0.0; 10]), 1.0, epsilon = 1e-9);
        assert_eq!(at(8, &[0.0; 10]), 1.0);
        assert_abs_diff_eq!(at(9, &[0.0; 10]), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn fixed_problems_at_their_optima() {
        let cheb = [128.0, 0.0, -256.0, 0.0, 160.0, 0.0, -32.0, 0.0, 1.0];
        assert_abs_diff_eq!(at(1, &cheb), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(at(2, &INVERSE_HILBERT_4), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(at(3, &octahedron(LJ6_HALF_DIAGONAL)), 1.0, epsilon = 1e-8);
        // collapsed atoms hit the singular-distance guard
        assert!(at(3, &[0.0; 18]) > 1e19);
    }

    #[test]
    fn happy_cat_is_nonnegative_off_optimum() {
        // (0.5·r2 + Σz)/n + 0.5 = Σ(z+1)²/(2n) ≥ 0
        assert!(happy_cat(&[3.0, -2.0, 0.5]) > 0.0);
    }
}
