//! Statistics over repeated runs and cross-algorithm comparison.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Summary of one cell's best fitnesses. `std` uses the `n − 1` denominator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatSummary {
    pub mean: f64,
    pub std: f64,
    pub best: f64,
    pub worst: f64,
    pub median: f64,
    /// Lower quartile (linear interpolation), for box plots.
    pub q1: f64,
    /// Upper quartile (linear interpolation), for box plots.
    pub q3: f64,
    pub n: usize,
}

pub fn summarize_runs(fitnesses: &[f64]) -> Result<StatSummary> {
    if fitnesses.is_empty() {
        return Err(Error::Empty("fitness sample"));
    }
    if let Some((index, &value)) = fitnesses.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::NonFinite { index, value });
    }
    let mut sorted = fitnesses.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    // summing in sorted order keeps the result independent of run order
    let mean = sorted.iter().sum::<f64>() / n as f64;
    let std = if n > 1 {
        (sorted.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(StatSummary {
        mean: mean.clamp(sorted[0], sorted[n - 1]),
        std,
        best: sorted[0],
        worst: sorted[n - 1],
        median: quantile(&sorted, 0.5),
        q1: quantile(&sorted, 0.25),
        q3: quantile(&sorted, 0.75),
        n,
    })
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Mean best fitness per (function, algorithm).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultsMatrix {
    functions: Vec<String>,
    algorithms: Vec<String>,
    /// Row per function, column per algorithm.
    means: Vec<Vec<f64>>,
}

impl ResultsMatrix {
    pub fn new(functions: Vec<String>, algorithms: Vec<String>, means: Vec<Vec<f64>>) -> Result<Self> {
        check_shape(&functions, &algorithms, &means)?;
        for row in &means {
            if let Some((index, &value)) = row.iter().enumerate().find(|(_, v)| !v.is_finite()) {
                return Err(Error::NonFinite { index, value });
            }
        }
        Ok(ResultsMatrix {
            functions,
            algorithms,
            means,
        })
    }

    /// Builds a matrix from long-format `(function, algorithm, value)` records.
    ///
    /// Rows and columns follow first appearance. Every cell must be filled
    /// exactly once.
    pub fn from_records<I, F, A>(records: I) -> Result<Self>
    where
        I: IntoIterator<Item = (F, A, f64)>,
        F: Into<String>,
        A: Into<String>,
    {
        let mut functions: Vec<String> = Vec::new();
        let mut algorithms: Vec<String> = Vec::new();
        let mut cells: Vec<(usize, usize, f64)> = Vec::new();
        for (f, a, v) in records {
            let (f, a) = (f.into(), a.into());
            let fi = position_or_push(&mut functions, f);
            let ai = position_or_push(&mut algorithms, a);
            cells.push((fi, ai, v));
        }
        let mut means = vec![vec![f64::NAN; algorithms.len()]; functions.len()];
        for (fi, ai, v) in cells {
            if !means[fi][ai].is_nan() {
                return Err(Error::InvalidConfig(format!(
                    "duplicate entry for {} / {}",
                    functions[fi], algorithms[ai]
                )));
            }
            means[fi][ai] = v;
        }
        for (fi, row) in means.iter().enumerate() {
            if let Some(ai) = row.iter().position(|v| v.is_nan()) {
                return Err(Error::InvalidConfig(format!(
                    "missing entry for {} / {}",
                    functions[fi], algorithms[ai]
                )));
            }
        }
        ResultsMatrix::new(functions, algorithms, means)
    }

    pub fn functions(&self) -> &[String] {
        &self.functions
    }

    pub fn algorithms(&self) -> &[String] {
        &self.algorithms
    }

    pub fn means(&self) -> &[Vec<f64>] {
        &self.means
    }

    /// The column for `algorithm`, if present.
    pub fn column(&self, algorithm: &str) -> Option<Vec<f64>> {
        let j = self.algorithms.iter().position(|a| a == algorithm)?;
        Some(self.means.iter().map(|row| row[j]).collect())
    }
}

fn position_or_push(list: &mut Vec<String>, item: String) -> usize {
    match list.iter().position(|x| *x == item) {
        Some(i) => i,
        None => {
            list.push(item);
            list.len() - 1
        }
    }
}

fn check_shape(functions: &[String], algorithms: &[String], rows: &[Vec<f64>]) -> Result<()> {
    if functions.is_empty() {
        return Err(Error::Empty("function list"));
    }
    if algorithms.is_empty() {
        return Err(Error::Empty("algorithm list"));
    }
    if rows.len() != functions.len() {
        return Err(Error::LengthMismatch {
            expected: functions.len(),
            actual: rows.len(),
        });
    }
    for row in rows {
        if row.len() != algorithms.len() {
            return Err(Error::LengthMismatch {
                expected: algorithms.len(),
                actual: row.len(),
            });
        }
    }
    Ok(())
}

/// Per-function ranks (1 = best, ties averaged) and their aggregates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankTable {
    pub functions: Vec<String>,
    pub algorithms: Vec<String>,
    pub per_function_ranks: Vec<Vec<f64>>,
    pub per_algorithm_sum: Vec<f64>,
    /// Rank sum divided by the number of functions.
    pub overall_rank: Vec<f64>,
}

impl RankTable {
    /// Aggregates ranks that are already known, such as a published rank table.
    pub fn from_ranks(functions: Vec<String>, algorithms: Vec<String>, ranks: Vec<Vec<f64>>) -> Result<Self> {
        check_shape(&functions, &algorithms, &ranks)?;
        let k = algorithms.len();
        let n = functions.len() as f64;
        let per_algorithm_sum: Vec<f64> = (0..k).map(|j| ranks.iter().map(|row| row[j]).sum()).collect();
        let overall_rank = per_algorithm_sum.iter().map(|s| s / n).collect();
        Ok(RankTable {
            functions,
            algorithms,
            per_function_ranks: ranks,
            per_algorithm_sum,
            overall_rank,
        })
    }

    pub fn overall(&self, algorithm: &str) -> Option<f64> {
        let j = self.algorithms.iter().position(|a| a == algorithm)?;
        Some(self.overall_rank[j])
    }
}

/// Ranks of one row, ascending (1 = lowest), ties sharing their average position.
pub fn average_ranks(row: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..row.len()).collect();
    order.sort_by(|&a, &b| row[a].total_cmp(&row[b]));
    let mut ranks = vec![0.0; row.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && row[order[j + 1]] == row[order[i]] {
            j += 1;
        }
        let shared = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = shared;
        }
        i = j + 1;
    }
    ranks
}

pub fn rank_by_mean(matrix: &ResultsMatrix) -> RankTable {
    let ranks = matrix.means.iter().map(|row| average_ranks(row)).collect();
    RankTable::from_ranks(matrix.functions.clone(), matrix.algorithms.clone(), ranks)
        .expect("a valid matrix has a valid shape")
}

/// Friedman chi-square, `12N/(k(k+1))·Σ R̄ⱼ² − 3N(k+1)`.
pub fn friedman_statistic(ranks: &RankTable) -> Result<f64> {
    let n = ranks.functions.len();
    let k = ranks.algorithms.len();
    if n < 2 || k < 2 {
        return Err(Error::Degenerate(format!(
            "Friedman test needs at least 2 functions and 2 algorithms, got {n} × {k}"
        )));
    }
    let (n, k) = (n as f64, k as f64);
    let sum_sq: f64 = ranks.overall_rank.iter().map(|r| r * r).sum();
    let chi2 = 12.0 * n / (k * (k + 1.0)) * sum_sq - 3.0 * n * (k + 1.0);
    // cancellation can leave a tiny negative value when all mean ranks are equal
    Ok(if chi2.abs() < 1e-9 * n * k { 0.0 } else { chi2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WinCount {
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
}

impl WinCount {
    pub fn wins_or_ties(&self) -> usize {
        self.wins + self.ties
    }

    pub fn total(&self) -> usize {
        self.wins + self.ties + self.losses
    }
}

/// Strict componentwise comparison for minimization: `a < b` is a win for `a`.
pub fn win_count(a_means: &[f64], b_means: &[f64]) -> Result<WinCount> {
    if a_means.len() != b_means.len() {
        return Err(Error::LengthMismatch {
            expected: a_means.len(),
            actual: b_means.len(),
        });
    }
    let mut c = WinCount { wins: 0, ties: 0, losses: 0 };
    for (a, b) in a_means.iter().zip(b_means) {
        if a < b {
            c.wins += 1;
        } else if a > b {
            c.losses += 1;
        } else {
            c.ties += 1;
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn names(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    #[test]
    fn summary_examples() {
        let s = summarize_runs(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!((s.mean, s.std), (1.0, 0.0));
        let s = summarize_runs(&[0.0, 2.0]).unwrap();
        assert_eq!(s.mean, 1.0);
        assert_abs_diff_eq!(s.std, 2f64.sqrt(), epsilon = 1e-15);
        let s = summarize_runs(&[5.0]).unwrap();
        assert_eq!((s.mean, s.std, s.best, s.worst, s.median), (5.0, 0.0, 5.0, 5.0, 5.0));
        assert!(matches!(summarize_runs(&[]), Err(Error::Empty(_))));
        assert!(summarize_runs(&[1.0, f64::NAN]).is_err());
    }

    #[test]
    fn quartiles() {
        let s = summarize_runs(&[4.0, 1.0, 3.0, 2.0, 5.0]).unwrap();
        assert_eq!((s.q1, s.median, s.q3), (2.0, 3.0, 4.0));
        let s = summarize_runs(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!((s.q1, s.median, s.q3), (1.75, 2.5, 3.25));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(average_ranks(&[3.0, 1.0, 2.0]), vec![3.0, 1.0, 2.0]);
        assert_eq!(average_ranks(&[1.0, 1.0, 5.0]), vec![1.5, 1.5, 3.0]);
        assert_eq!(average_ranks(&[2.0, 2.0, 2.0]), vec![2.0, 2.0, 2.0]);
    }

    #[test]
    fn friedman_examples() {
        let perfect = RankTable::from_ranks(names("F", 10), names("A", 3), vec![vec![1.0, 2.0, 3.0]; 10]).unwrap();
        assert_abs_diff_eq!(friedman_statistic(&perfect).unwrap(), 20.0, epsilon = 1e-12);
        let mixed = RankTable::from_ranks(names("F", 2), names("A", 2), vec![vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert_eq!(friedman_statistic(&mixed).unwrap(), 0.0);
        let tiny = RankTable::from_ranks(names("F", 1), names("A", 2), vec![vec![1.0, 2.0]]).unwrap();
        assert!(matches!(friedman_statistic(&tiny), Err(Error::Degenerate(_))));
    }

    #[test]
    fn win_count_examples() {
        let c = win_count(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(c, WinCount { wins: 0, ties: 3, losses: 0 });
        let c = win_count(&[1.0, 5.0], &[2.0, 4.0]).unwrap();
        assert_eq!((c.wins, c.losses), (1, 1));
        assert!(win_count(&[1.0], &[]).is_err());
    }

    #[test]
    fn matrix_from_records() {
        let m = ResultsMatrix::from_records(vec![
            ("F1", "woa", 1.0),
            ("F1", "bat", 2.0),
            ("F2", "bat", 4.0),
            ("F2", "woa", 3.0),
        ])
        .unwrap();
        assert_eq!(m.functions(), ["F1", "F2"]);
        assert_eq!(m.algorithms(), ["woa", "bat"]);
        assert_eq!(m.means(), [vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert_eq!(m.column("bat").unwrap(), vec![2.0, 4.0]);
        assert!(ResultsMatrix::from_records(vec![("F1", "woa", 1.0), ("F2", "bat", 1.0)]).is_err());
        assert!(ResultsMatrix::from_records(vec![("F1", "woa", 1.0), ("F1", "woa", 1.0)]).is_err());
    }

    #[test]
    fn rank_matches_brute_force_on_toy_matrix() {
        let m = ResultsMatrix::new(names("F", 2), names("A", 2), vec![vec![0.5, -1.0], vec![2.0, 3.0]]).unwrap();
        let t = rank_by_mean(&m);
        assert_eq!(t.per_function_ranks, vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        assert_eq!(t.overall_rank, vec![1.5, 1.5]);
    }

    fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<f64>>> {
        (2usize..6, 1usize..8).prop_flat_map(|(k, n)| {
            prop::collection::vec(prop::collection::vec(-1e3f64..1e3, k), n)
        })
    }

    proptest! {
        #[test]
        fn ranks_ignore_increasing_transforms(rows in matrix_strategy()) {
            for row in &rows {
                let transformed: Vec<f64> = row.iter().map(|v| v.powi(3) + 2.0 * v).collect();
                prop_assert_eq!(average_ranks(row), average_ranks(&transformed));
            }
        }

        #[test]
        fn ranks_are_permutation_equivariant(row in prop::collection::vec(-10i32..10, 2..7), seed in any::<u64>()) {
            let row: Vec<f64> = row.into_iter().map(f64::from).collect();
            let mut perm: Vec<usize> = (0..row.len()).collect();
            let mut s = seed;
            for i in (1..perm.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let permuted: Vec<f64> = perm.iter().map(|&i| row[i]).collect();
            let ranks = average_ranks(&row);
            let expected: Vec<f64> = perm.iter().map(|&i| ranks[i]).collect();
            prop_assert_eq!(average_ranks(&permuted), expected);
            let total: f64 = ranks.iter().sum();
            let k = row.len() as f64;
            prop_assert_eq!(total, k * (k + 1.0) / 2.0);
        }

        #[test]
        fn friedman_nonnegative(rows in matrix_strategy()) {
            prop_assume!(rows.len() >= 2);
            let k = rows[0].len();
            let m = ResultsMatrix::new(names("F", rows.len()), names("A", k), rows).unwrap();
            let t = rank_by_mean(&m);
            let chi2 = friedman_statistic(&t).unwrap();
            prop_assert!(chi2 >= 0.0);
            let all_equal = t.overall_rank.iter().all(|r| (r - t.overall_rank[0]).abs() < 1e-12);
            prop_assert_eq!(chi2 == 0.0, all_equal);
        }

        #[test]
        fn win_count_antisymmetric(pairs in prop::collection::vec((-5i32..5, -5i32..5), 0..30)) {
            let a: Vec<f64> = pairs.iter().map(|p| p.0 as f64).collect();
            let b: Vec<f64> = pairs.iter().map(|p| p.1 as f64).collect();
            let ab = win_count(&a, &b).unwrap();
            let ba = win_count(&b, &a).unwrap();
            prop_assert_eq!(ab.wins, ba.losses);
            prop_assert_eq!(ab.ties, ba.ties);
            prop_assert_eq!(ab.total(), a.len());
        }

        #[test]
        fn summary_is_order_independent(mut v in prop::collection::vec(-1e6f64..1e6, 1..40)) {
            let s1 = summarize_runs(&v).unwrap();
            v.reverse();
            let s2 = summarize_runs(&v).unwrap();
            prop_assert!(s1.best <= s1.median && s1.median <= s1.worst);
            prop_assert!(s1.best <= s1.mean && s1.mean <= s1.worst);
            prop_assert_eq!(s1, s2);
        }
    }
}
