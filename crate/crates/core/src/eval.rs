//! k-means on the final representation and external clustering metrics.

use std::fmt;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub const KMEANS_MAX_ITERS: usize = 300;
pub const KMEANS_SHIFT_TOL: f64 = 1e-6;

/// Outcome of one k-means restart.
#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub labels: Vec<usize>,
    /// Within-cluster sum of squares after each Lloyd iteration.
    pub wcss_trace: Vec<f64>,
}

impl Clustering {
    pub fn wcss(&self) -> f64 {
        self.wcss_trace.last().copied().unwrap_or(0.0)
    }
}

fn squared_distance(z: &Matrix, row: usize, center: &[f64]) -> f64 {
    center
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let d = z[(row, j)] - c;
            d * d
        })
        .sum()
}

fn plus_plus_seeding<R: Rng>(z: &Matrix, k: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let n = z.nrows();
    let row = |i: usize| z.row(i).iter().copied().collect::<Vec<f64>>();
    let mut centers = vec![row(rng.random_range(0..n))];
    let mut nearest: Vec<f64> = (0..n).map(|i| squared_distance(z, i, &centers[0])).collect();
    while centers.len() < k {
        let next = match WeightedIndex::new(&nearest) {
            Ok(dist) => dist.sample(rng),
            // Every point already coincides with a center.
            Err(_) => rng.random_range(0..n),
        };
        let c = row(next);
        for (i, d) in nearest.iter_mut().enumerate() {
            *d = d.min(squared_distance(z, i, &c));
        }
        centers.push(c);
    }
    centers
}

fn assign(z: &Matrix, centers: &[Vec<f64>], labels: &mut [usize]) -> f64 {
    let mut wcss = 0.0;
    for (i, label) in labels.iter_mut().enumerate() {
        let (best, dist) = centers
            .iter()
            .enumerate()
            .map(|(c, center)| (c, squared_distance(z, i, center)))
            .fold((0, f64::INFINITY), |acc, cur| if cur.1 < acc.1 { cur } else { acc });
        *label = best;
        wcss += dist;
    }
    wcss
}

/// One seeded Lloyd run with k-means++ seeding.
pub fn kmeans_single(z: &Matrix, k: usize, seed: u64) -> Result<Clustering> {
    let (n, m) = z.shape();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("k-means needs 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centers = plus_plus_seeding(z, k, &mut rng);
    let mut labels = vec![0; n];
    let mut wcss_trace = vec![assign(z, &centers, &mut labels)];

    for _ in 0..KMEANS_MAX_ITERS {
        let mut sums = vec![vec![0.0; m]; k];
        let mut counts = vec![0usize; k];
        for (i, &l) in labels.iter().enumerate() {
            counts[l] += 1;
            for j in 0..m {
                sums[l][j] += z[(i, j)];
            }
        }
        let mut shift: f64 = 0.0;
        for c in 0..k {
            // An empty cluster keeps its previous center.
            if counts[c] == 0 {
                continue;
            }
            let updated: Vec<f64> = sums[c].iter().map(|s| s / counts[c] as f64).collect();
            let moved: f64 = updated
                .iter()
                .zip(&centers[c])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            shift = shift.max(moved);
            centers[c] = updated;
        }
        wcss_trace.push(assign(z, &centers, &mut labels));
        if shift < KMEANS_SHIFT_TOL {
            break;
        }
    }
    Ok(Clustering { labels, wcss_trace })
}

/// `restarts` independent runs seeded `seed, seed + 1, …`, returned in
/// restart order.
pub fn kmeans(z: &Matrix, k: usize, restarts: usize, seed: u64) -> Result<Vec<Clustering>> {
    if k < 2 {
        return Err(Error::invalid(format!("k-means needs k >= 2, got {k}")));
    }
    (0..restarts as u64)
        .into_par_iter()
        .map(|r| kmeans_single(z, k, seed.wrapping_add(r)))
        .collect()
}

fn check_lengths(pred: &[usize], truth: &[usize]) -> Result<()> {
    if pred.len() != truth.len() {
        return Err(Error::invalid(format!(
            "label vectors differ in length: {} vs {}",
            pred.len(),
            truth.len()
        )));
    }
    if pred.is_empty() {
        return Err(Error::invalid("label vectors are empty"));
    }
    Ok(())
}

/// Dense contingency table, `rows = pred ids`, `cols = truth ids`.
fn contingency(pred: &[usize], truth: &[usize]) -> Vec<Vec<usize>> {
    let kp = pred.iter().max().map_or(0, |m| m + 1);
    let kt = truth.iter().max().map_or(0, |m| m + 1);
    let mut table = vec![vec![0usize; kt]; kp];
    for (&p, &t) in pred.iter().zip(truth) {
        table[p][t] += 1;
    }
    table
}

/// Minimum-cost perfect assignment on a square cost matrix (Hungarian
/// method with potentials). Returns `col_of_row`.
fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    // 1-based arrays; index 0 is a sentinel column.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut row_of_col = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of_col[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of_col[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if reduced < minv[j] {
                    minv[j] = reduced;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of_col[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of_col[j0] = row_of_col[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut col_of_row = vec![0; n];
    for j in 1..=n {
        if row_of_col[j] > 0 {
            col_of_row[row_of_col[j] - 1] = j - 1;
        }
    }
    col_of_row
}

/// Fraction of samples correctly labeled under the best one-to-one
/// matching of predicted clusters to classes.
pub fn accuracy(pred: &[usize], truth: &[usize]) -> Result<f64> {
    check_lengths(pred, truth)?;
    let table = contingency(pred, truth);
    let size = table.len().max(table[0].len());
    let cost: Vec<Vec<f64>> = (0..size)
        .map(|p| {
            (0..size)
                .map(|t| -(table.get(p).and_then(|r| r.get(t)).copied().unwrap_or(0) as f64))
                .collect()
        })
        .collect();
    let matching = hungarian(&cost);
    let matched: usize = matching
        .iter()
        .enumerate()
        .map(|(p, &t)| table.get(p).and_then(|r| r.get(t)).copied().unwrap_or(0))
        .sum();
    Ok(matched as f64 / pred.len() as f64)
}

fn entropy(counts: impl Iterator<Item = usize>, n: f64) -> f64 {
    counts
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Mutual information over the arithmetic mean of the two entropies.
/// Two single-cluster partitions count as identical (1.0); a single
/// cluster against a nontrivial partition gives 0.
pub fn nmi(pred: &[usize], truth: &[usize]) -> Result<f64> {
    check_lengths(pred, truth)?;
    let n = pred.len() as f64;
    let table = contingency(pred, truth);
    let row_sums: Vec<usize> = table.iter().map(|r| r.iter().sum()).collect();
    let col_sums: Vec<usize> = (0..table[0].len())
        .map(|t| table.iter().map(|r| r[t]).sum())
        .collect();
    let h_pred = entropy(row_sums.iter().copied(), n);
    let h_truth = entropy(col_sums.iter().copied(), n);
    if h_pred == 0.0 && h_truth == 0.0 {
        return Ok(1.0);
    }
    let mut mi = 0.0;
    for (p, row) in table.iter().enumerate() {
        for (t, &c) in row.iter().enumerate() {
            if c > 0 {
                let c = c as f64;
                mi += c / n * (c * n / (row_sums[p] as f64 * col_sums[t] as f64)).ln();
            }
        }
    }
    let denom = 0.5 * (h_pred + h_truth);
    Ok((mi / denom).clamp(0.0, 1.0))
}

fn choose2(x: usize) -> f64 {
    let x = x as f64;
    x * (x - 1.0) / 2.0
}

/// Adjusted Rand index. Degenerate cases where the expected and maximum
/// index coincide (both partitions trivial) return 1.0 if the partitions
/// agree and 0.0 otherwise.
pub fn ari(pred: &[usize], truth: &[usize]) -> Result<f64> {
    check_lengths(pred, truth)?;
    let table = contingency(pred, truth);
    let index: f64 = table.iter().flatten().map(|&c| choose2(c)).sum();
    let sum_rows: f64 = table.iter().map(|r| choose2(r.iter().sum())).sum();
    let sum_cols: f64 = (0..table[0].len())
        .map(|t| choose2(table.iter().map(|r| r[t]).sum()))
        .sum();
    let total = choose2(pred.len());
    let expected = if total > 0.0 { sum_rows * sum_cols / total } else { 0.0 };
    let max_index = 0.5 * (sum_rows + sum_cols);
    let denom = max_index - expected;
    if denom == 0.0 {
        return Ok(if index == max_index { 1.0 } else { 0.0 });
    }
    Ok((index - expected) / denom)
}

/// Per-restart metrics and their means.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub acc: Vec<f64>,
    pub nmi: Vec<f64>,
    pub ari: Vec<f64>,
    pub acc_mean: f64,
    pub nmi_mean: f64,
    pub ari_mean: f64,
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

impl MetricsReport {
    pub fn from_clusterings(clusterings: &[Clustering], truth: &[usize]) -> Result<Self> {
        if clusterings.is_empty() {
            return Err(Error::invalid("metrics need at least one clustering"));
        }
        let mut acc = Vec::with_capacity(clusterings.len());
        let mut nmi_v = Vec::with_capacity(clusterings.len());
        let mut ari_v = Vec::with_capacity(clusterings.len());
        for c in clusterings {
            acc.push(accuracy(&c.labels, truth)?);
            nmi_v.push(nmi(&c.labels, truth)?);
            ari_v.push(ari(&c.labels, truth)?);
        }
        Ok(Self {
            acc_mean: mean(&acc),
            nmi_mean: mean(&nmi_v),
            ari_mean: mean(&ari_v),
            acc,
            nmi: nmi_v,
            ari: ari_v,
        })
    }

    pub fn table_header() -> &'static str {
        "restart        ACC        NMI        ARI"
    }
}

/// Clusters `z` with `restarts` seeded k-means runs and scores every run.
pub fn evaluate(z: &Matrix, truth: &[usize], k: usize, restarts: usize, seed: u64) -> Result<MetricsReport> {
    if truth.len() != z.nrows() {
        return Err(Error::invalid(format!(
            "{} labels for {} samples",
            truth.len(),
            z.nrows()
        )));
    }
    let clusterings = kmeans(z, k, restarts, seed)?;
    MetricsReport::from_clusterings(&clusterings, truth)
}

impl fmt::Display for MetricsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", Self::table_header())?;
        for i in 0..self.acc.len() {
            writeln!(
                f,
                "{:>7} {:>10.4} {:>10.4} {:>10.4}",
                i, self.acc[i], self.nmi[i], self.ari[i]
            )?;
        }
        write!(
            f,
            "{:>7} {:>10.4} {:>10.4} {:>10.4}",
            "mean", self.acc_mean, self.nmi_mean, self.ari_mean
        )
    }
}
