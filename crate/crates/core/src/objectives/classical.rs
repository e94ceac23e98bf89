//! The 23 classical benchmark functions.
//!
//! | id  | name                  | dim | range          | min                 |
//! |-----|-----------------------|-----|----------------|---------------------|
//! | F1  | sphere                | 30  | [-100, 100]    | 0                   |
//! | F2  | Schwefel 2.22         | 30  | [-10, 10]      | 0                   |
//! | F3  | Schwefel 1.2          | 30  | [-100, 100]    | 0                   |
//! | F4  | Schwefel 2.21         | 30  | [-100, 100]    | 0                   |
//! | F5  | Rosenbrock            | 30  | [-30, 30]      | 0                   |
//! | F6  | step                  | 30  | [-100, 100]    | 0                   |
//! | F7  | quartic with noise    | 30  | [-1.28, 1.28]  | 0                   |
//! | F8  | Schwefel 2.26         | 30  | [-500, 500]    | -418.9829 × dim     |
//! | F9  | Rastrigin             | 30  | [-5.12, 5.12]  | 0                   |
//! | F10 | Ackley                | 30  | [-32, 32]      | 0                   |
//! | F11 | Griewank              | 30  | [-600, 600]    | 0                   |
//! | F12 | penalized 1           | 30  | [-50, 50]      | 0                   |
//! | F13 | penalized 2           | 30  | [-50, 50]      | 0                   |
//! | F14 | Shekel foxholes       | 2   | [-65, 65]      | 0.998               |
//! | F15 | Kowalik               | 4   | [-5, 5]        | 0.000307            |
//! | F16 | six-hump camel        | 2   | [-5, 5]        | -1.0316             |
//! | F17 | Branin                | 2   | [-5, 5]        | 0.398               |
//! | F18 | Goldstein-Price       | 2   | [-2, 2]        | 3                   |
//! | F19 | Hartmann 3            | 3   | [0, 1]         | -3.86               |
//! | F20 | Hartmann 6            | 6   | [0, 1]         | -3.32               |
//! | F21 | Shekel 5              | 4   | [0, 10]        | -10.1532            |
//! | F22 | Shekel 7              | 4   | [0, 10]        | -10.4028            |
//! | F23 | Shekel 10             | 4   | [0, 10]        | -10.5363            |
//!
//! F19 is searched on the unit cube, where its −3.86 optimum lives. F6 is
//! the continuous step `Σ (x + 0.5)²`, minimized at `x = −0.5`.

use std::f64::consts::{E, PI};

use super::{point, uniform_bounds, Modality, ObjectiveSpec};
use crate::numeric::RandomSource;

const SUITE: &str = "classical";

/// Per-coordinate minimum of `-x·sin(√|x|)`, reached at x ≈ 420.9687.
const SCHWEFEL_MIN_PER_DIM: f64 = -418.982_887_272_433_8;
const SCHWEFEL_ARGMIN: f64 = 420.968_746_038_928_66;

type BaseFn = fn(&[f64]) -> f64;
type Resize = fn(usize) -> ObjectiveSpec;

pub fn classical_suite() -> Vec<ObjectiveSpec> {
    (1..=23).map(|i| classical_function(i, None)).collect()
}

/// Function `F{number}`, `number` in 1..=23. `dim` only applies to F1–F13.
pub fn classical_function(number: usize, dim: Option<usize>) -> ObjectiveSpec {
    match number {
        1..=13 => scalable(number, dim.unwrap_or(30)),
        14..=23 => fixed(number),
        _ => panic!("classical functions are numbered 1..=23, got {number}"),
    }
}

fn scalable(number: usize, dim: usize) -> ObjectiveSpec {
    use Modality::*;
    let (name, lo, hi, modality, f, resize): (&str, f64, f64, Modality, BaseFn, Resize) =
        match number {
            1 => ("Sphere", -100.0, 100.0, Unimodal, sphere, r1),
            2 => ("Schwefel 2.22", -10.0, 10.0, Unimodal, schwefel_2_22, r2),
            3 => ("Schwefel 1.2", -100.0, 100.0, Unimodal, schwefel_1_2, r3),
            4 => ("Schwefel 2.21", -100.0, 100.0, Unimodal, schwefel_2_21, r4),
            5 => ("Rosenbrock", -30.0, 30.0, Unimodal, rosenbrock, r5),
            6 => ("Step", -100.0, 100.0, Unimodal, step, r6),
            7 => ("Quartic with noise", -1.28, 1.28, Unimodal, quartic, r7),
            8 => ("Schwefel 2.26", -500.0, 500.0, Multimodal, schwefel_2_26, r8),
            9 => ("Rastrigin", -5.12, 5.12, Multimodal, rastrigin, r9),
            10 => ("Ackley", -32.0, 32.0, Multimodal, ackley, r10),
            11 => ("Griewank", -600.0, 600.0, Multimodal, griewank, r11),
            12 => ("Penalized 1", -50.0, 50.0, Multimodal, penalized_1, r12),
            13 => ("Penalized 2", -50.0, 50.0, Multimodal, penalized_2, r13),
            _ => unreachable!(),
        };
    let bounds = uniform_bounds(dim, lo, hi);
    let id = format!("F{number}");
    let spec = if number == 7 {
        ObjectiveSpec::new(SUITE, id, name, bounds, modality, move |x: &[f64], rng: &mut dyn RandomSource| {
            f(x) + rng.next_unit()
        })
        .with_noise()
    } else {
        ObjectiveSpec::deterministic(SUITE, id, name, bounds, modality, f)
    };
    let (min, argmin) = match number {
        5 => (0.0, vec![1.0; dim]),
        6 => (0.0, vec![-0.5; dim]),
        8 => (SCHWEFEL_MIN_PER_DIM * dim as f64, vec![SCHWEFEL_ARGMIN; dim]),
        12 => (0.0, vec![-1.0; dim]),
        13 => (0.0, vec![1.0; dim]),
        _ => (0.0, vec![0.0; dim]),
    };
    spec.with_known_min(min)
        .with_known_argmin(point(&argmin))
        .with_resize(resize)
}

macro_rules! resizers {
    ($($name:ident => $n:expr),* $(,)?) => {
        $(fn $name(dim: usize) -> ObjectiveSpec { scalable($n, dim) })*
    };
}

resizers!(r1 => 1, r2 => 2, r3 => 3, r4 => 4, r5 => 5, r6 => 6, r7 => 7, r8 => 8, r9 => 9,
          r10 => 10, r11 => 11, r12 => 12, r13 => 13);

fn fixed(number: usize) -> ObjectiveSpec {
    use Modality::FixedDimensionMultimodal as Fdm;
    let (name, dim, lo, hi, f, min, argmin): (&str, usize, f64, f64, BaseFn, f64, &[f64]) =
        match number {
            14 => (
                "Shekel foxholes",
                2,
                -65.0,
                65.0,
                foxholes,
                0.998_003_837_794_449,
                &[-31.978_332_112_713_616, -31.978_341_139_889_9],
            ),
            15 => (
                "Kowalik",
                4,
                -5.0,
                5.0,
                kowalik,
                3.074_859_878_056_054e-4,
                &[0.192_833_453_094_478_08, 0.190_836_239_766_866_23, 0.123_117_299_174_842_15, 0.135_765_990_090_199_55],
            ),
            16 => (
                "Six-hump camel",
                2,
                -5.0,
                5.0,
                six_hump_camel,
                -1.031_628_453_489_877_4,
                &[0.089_842_016_529_270_98, -0.712_656_401_380_720_2],
            ),
            17 => ("Branin", 2, -5.0, 5.0, branin, 0.397_887_357_729_738_16, &[PI, 2.275]),
            18 => ("Goldstein-Price", 2, -2.0, 2.0, goldstein_price, 3.0, &[0.0, -1.0]),
            19 => (
                "Hartmann 3",
                3,
                0.0,
                1.0,
                hartmann_3,
                -3.862_782_147_820_756,
                &[0.114_614_342_030_833_93, 0.555_648_850_790_536_8, 0.852_546_953_846_026],
            ),
            20 => (
                "Hartmann 6",
                6,
                0.0,
                1.0,
                hartmann_6,
                -3.322_368_011_415_515,
                &[
                    0.201_689_510_377_946_58,
                    0.150_010_691_464_563_25,
                    0.476_873_973_370_676_6,
                    0.275_332_428_854_379_6,
                    0.311_651_616_563_225_2,
                    0.657_300_530_846_477_1,
                ],
            ),
            21 => (
                "Shekel 5",
                4,
                0.0,
                10.0,
                shekel_5,
                -10.153_199_679_058_229,
                &[4.000_037_152_376_549, 4.000_133_278_657_566, 4.000_037_151_057_555, 4.000_133_277_090_425],
            ),
            22 => (
                "Shekel 7",
                4,
                0.0,
                10.0,
                shekel_7,
                -10.402_940_566_818_664,
                &[4.000_572_914_267_843, 4.000_689_365_862_991, 3.999_489_710_414_378, 3.999_606_160_387_538],
            ),
            23 => (
                "Shekel 10",
                4,
                0.0,
                10.0,
                shekel_10,
                -10.536_409_816_692_046,
                &[4.000_746_533_201_553, 4.000_592_934_538_832, 3.999_663_397_220_255_8, 3.999_509_801_285_225_5],
            ),
            _ => unreachable!(),
        };
    ObjectiveSpec::deterministic(SUITE, format!("F{number}"), name, uniform_bounds(dim, lo, hi), Fdm, f)
        .with_known_min(min)
        .with_known_argmin(point(argmin))
}

// ---- unimodal ----

pub(crate) fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn schwefel_2_22(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| v.abs()).sum();
    let prod: f64 = x.iter().map(|v| v.abs()).product();
    sum + prod
}

pub(crate) fn schwefel_1_2(x: &[f64]) -> f64 {
    let mut prefix = 0.0;
    x.iter()
        .map(|v| {
            prefix += v;
            prefix * prefix
        })
        .sum()
}

fn schwefel_2_21(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub(crate) fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
        .sum()
}

fn step(x: &[f64]) -> f64 {
    x.iter().map(|v| (v + 0.5).powi(2)).sum()
}

fn quartic(x: &[f64]) -> f64 {
    x.iter().enumerate().map(|(i, v)| (i + 1) as f64 * v.powi(4)).sum()
}

// ---- multimodal, scalable ----

fn schwefel_2_26(x: &[f64]) -> f64 {
    x.iter().map(|v| -v * v.abs().sqrt().sin()).sum()
}

pub(crate) fn rastrigin(x: &[f64]) -> f64 {
    x.iter()
        .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
        .sum()
}

pub(crate) fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq: f64 = x.iter().map(|v| v * v).sum();
    let cs: f64 = x.iter().map(|v| (2.0 * PI * v).cos()).sum();
    -20.0 * (-0.2 * (sq / n).sqrt()).exp() - (cs / n).exp() + 20.0 + E
}

pub(crate) fn griewank(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    sum - prod + 1.0
}

fn penalty(x: &[f64], a: f64, k: f64, m: i32) -> f64 {
    x.iter()
        .map(|&v| {
            if v > a {
                k * (v - a).powi(m)
            } else if v < -a {
                k * (-v - a).powi(m)
            } else {
                0.0
            }
        })
        .sum()
}

fn penalized_1(x: &[f64]) -> f64 {
    let n = x.len();
    let y = |v: f64| 1.0 + (v + 1.0) / 4.0;
    let mut s = 10.0 * (PI * y(x[0])).sin().powi(2);
    for i in 0..n - 1 {
        s += (y(x[i]) - 1.0).powi(2) * (1.0 + 10.0 * (PI * y(x[i + 1])).sin().powi(2));
    }
    s += (y(x[n - 1]) - 1.0).powi(2);
    PI / n as f64 * s + penalty(x, 10.0, 100.0, 4)
}

fn penalized_2(x: &[f64]) -> f64 {
    let n = x.len();
    let mut s = (3.0 * PI * x[0]).sin().powi(2);
    for i in 0..n - 1 {
        s += (x[i] - 1.0).powi(2) * (1.0 + (3.0 * PI * x[i + 1]).sin().powi(2));
    }
    s += (x[n - 1] - 1.0).powi(2) * (1.0 + (2.0 * PI * x[n - 1]).sin().powi(2));
    0.1 * s + penalty(x, 5.0, 100.0, 4)
}

// ---- fixed dimension ----

fn foxholes(x: &[f64]) -> f64 {
    const GRID: [f64; 5] = [-32.0, -16.0, 0.0, 16.0, 32.0];
    let mut s = 0.0;
    for j in 0..25 {
        let a0 = GRID[j % 5];
        let a1 = GRID[j / 5];
        s += 1.0 / ((j + 1) as f64 + (x[0] - a0).powi(6) + (x[1] - a1).powi(6));
    }
    1.0 / (1.0 / 500.0 + s)
}

fn kowalik(x: &[f64]) -> f64 {
    const A: [f64; 11] = [
        0.1957, 0.1947, 0.1735, 0.16, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246,
    ];
    const INV_B: [f64; 11] = [0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0];
    A.iter()
        .zip(INV_B.iter())
        .map(|(&a, &inv_b)| {
            let b = 1.0 / inv_b;
            (a - x[0] * (b * b + x[1] * b) / (b * b + x[2] * b + x[3])).powi(2)
        })
        .sum()
}

fn six_hump_camel(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    4.0 * a * a - 2.1 * a.powi(4) + a.powi(6) / 3.0 + a * b - 4.0 * b * b + 4.0 * b.powi(4)
}

fn branin(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (b - 5.1 / (4.0 * PI * PI) * a * a + 5.0 / PI * a - 6.0).powi(2)
        + 10.0 * (1.0 - 1.0 / (8.0 * PI)) * a.cos()
        + 10.0
}

fn goldstein_price(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let p = 1.0
        + (a + b + 1.0).powi(2) * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
    let q = 30.0
        + (2.0 * a - 3.0 * b).powi(2)
            * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
    p * q
}

const HARTMANN_C: [f64; 4] = [1.0, 1.2, 3.0, 3.2];

fn hartmann<const D: usize>(x: &[f64], a: &[[f64; D]; 4], p: &[[f64; D]; 4]) -> f64 {
    -(0..4)
        .map(|i| {
            let inner: f64 = (0..D).map(|j| a[i][j] * (x[j] - p[i][j]).powi(2)).sum();
            HARTMANN_C[i] * (-inner).exp()
        })
        .sum::<f64>()
}

fn hartmann_3(x: &[f64]) -> f64 {
    const A: [[f64; 3]; 4] = [[3.0, 10.0, 30.0], [0.1, 10.0, 35.0], [3.0, 10.0, 30.0], [0.1, 10.0, 35.0]];
    const P: [[f64; 3]; 4] = [
        [0.3689, 0.1170, 0.2673],
        [0.4699, 0.4387, 0.7470],
        [0.1091, 0.8732, 0.5547],
        [0.03815, 0.5743, 0.8828],
    ];
    hartmann(x, &A, &P)
}

fn hartmann_6(x: &[f64]) -> f64 {
    const A: [[f64; 6]; 4] = [
        [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
        [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
        [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
        [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
    ];
    const P: [[f64; 6]; 4] = [
        [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
        [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
        [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
        [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
    ];
    hartmann(x, &A, &P)
}

const SHEKEL_A: [[f64; 4]; 10] = [
    [4.0, 4.0, 4.0, 4.0],
    [1.0, 1.0, 1.0, 1.0],
    [8.0, 8.0, 8.0, 8.0],
    [6.0, 6.0, 6.0, 6.0],
    [3.0, 7.0, 3.0, 7.0],
    [2.0, 9.0, 2.0, 9.0],
    [5.0, 5.0, 3.0, 3.0],
    [8.0, 1.0, 8.0, 1.0],
    [6.0, 2.0, 6.0, 2.0],
    [7.0, 3.6, 7.0, 3.6],
];
const SHEKEL_C: [f64; 10] = [0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5];

fn shekel(x: &[f64], m: usize) -> f64 {
    -(0..m)
        .map(|i| {
            let d: f64 = (0..4).map(|j| (x[j] - SHEKEL_A[i][j]).powi(2)).sum();
            1.0 / (d + SHEKEL_C[i])
        })
        .sum::<f64>()
}

fn shekel_5(x: &[f64]) -> f64 {
    shekel(x, 5)
}

fn shekel_7(x: &[f64]) -> f64 {
    shekel(x, 7)
}

fn shekel_10(x: &[f64]) -> f64 {
    shekel(x, 10)
}
