//! Comparison methods: threshold-then-fit Bernoulli blockmodels, PCA plus
//! k-means on adjacency rows, and average-linkage hierarchical clustering.

use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::{BlockAssignment, WeightedGraph};
use crate::special::normal_cdf;
use crate::vb::{fit, FitConfig, FitResult};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The grid of cutoffs a thresholding baseline will try: absolute weights,
/// or quantiles of the off-diagonal weight distribution.
#[derive(Debug, Clone, PartialEq)]
pub enum ThresholdPlan {
    Absolute(Vec<f64>),
    Quantiles(Vec<f64>),
}

impl ThresholdPlan {
    /// Deciles 0.1 through 0.9.
    pub fn default_quantiles() -> Self {
        ThresholdPlan::Quantiles((1..=9).map(|i| i as f64 / 10.0).collect())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ThresholdPlan::Absolute(ts) => {
                if ts.is_empty() {
                    return Err(Error::InvalidInput("threshold list is empty".into()));
                }
                if ts.iter().any(|t| !t.is_finite()) {
                    return Err(Error::InvalidInput("thresholds must be finite".into()));
                }
            }
            ThresholdPlan::Quantiles(qs) => {
                if qs.is_empty() {
                    return Err(Error::InvalidInput("quantile list is empty".into()));
                }
                if qs.iter().any(|q| !q.is_finite() || *q <= 0.0 || *q >= 1.0) {
                    return Err(Error::InvalidInput(
                        "quantiles must lie strictly inside (0, 1)".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Absolute cutoff values for `graph`, interpolating quantiles over the
    /// sorted off-diagonal weights (linear between order statistics).
    pub fn resolve(&self, graph: &WeightedGraph) -> Result<Vec<f64>> {
        self.validate()?;
        match self {
            ThresholdPlan::Absolute(ts) => Ok(ts.clone()),
            ThresholdPlan::Quantiles(qs) => {
                let mut weights = graph.upper_weights();
                if weights.is_empty() {
                    return Err(Error::InvalidInput(
                        "graph has no vertex pairs to take quantiles over".into(),
                    ));
                }
                weights.sort_by(|a, b| a.partial_cmp(b).unwrap());
                Ok(qs.iter().map(|&q| quantile_sorted(&weights, q)).collect())
            }
        }
    }
}

fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let m = sorted.len();
    if m == 1 {
        return sorted[0];
    }
    let h = (m - 1) as f64 * q;
    let lo = h.floor() as usize;
    if lo + 1 >= m {
        return sorted[m - 1];
    }
    let frac = h - lo as f64;
    sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
}

/// Binarizes: weight strictly above `t` becomes 1, everything else 0.
pub fn threshold_graph(graph: &WeightedGraph, t: f64) -> WeightedGraph {
    let n = graph.n();
    let mut w = vec![0.0; n * n];
    for (i, j) in graph.pairs() {
        if graph.weight(i, j) > t {
            w[i * n + j] = 1.0;
            w[j * n + i] = 1.0;
        }
    }
    WeightedGraph::from_dense(n, w, Some(Family::Bernoulli))
        .expect("thresholded output is always a valid binary graph")
}

/// Probability that a normal draw with the given mean and variance exceeds
/// `t`. This is the Bernoulli parameter thresholding induces on a bundle.
pub fn exceedance_prob(mean: f64, variance: f64, t: f64) -> Result<f64> {
    if !variance.is_finite() || variance <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "variance must be positive, got {variance}"
        )));
    }
    if !mean.is_finite() || !t.is_finite() {
        return Err(Error::InvalidInput("mean and threshold must be finite".into()));
    }
    // 1 - Phi(z) computed as Phi(-z) to avoid cancellation in the tails.
    Ok(normal_cdf((mean - t) / variance.sqrt()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdedSbmReport {
    /// Absolute cutoffs actually applied, in plan order.
    pub thresholds: Vec<f64>,
    /// One Bernoulli fit per cutoff.
    pub fits: Vec<FitResult>,
    /// Index of the fit with the highest bound (ties: lowest index).
    pub best: usize,
}

impl ThresholdedSbmReport {
    pub fn best_fit(&self) -> &FitResult {
        &self.fits[self.best]
    }
}

/// Thresholds the graph at every cutoff in `plan` and fits a `k`-block
/// Bernoulli model to each binary graph. Tolerances, restart budget, and
/// seed come from `base`; its family, priors, and `k` are replaced by the
/// Bernoulli defaults for this baseline.
pub fn fit_thresholded_sbm(
    graph: &WeightedGraph,
    plan: &ThresholdPlan,
    k: usize,
    base: &FitConfig,
) -> Result<ThresholdedSbmReport> {
    let thresholds = plan.resolve(graph)?;
    let mut config = FitConfig::new(Family::Bernoulli, k);
    config.inner_tol = base.inner_tol;
    config.outer_tol = base.outer_tol;
    config.max_inner = base.max_inner;
    config.max_outer = base.max_outer;
    config.restarts = base.restarts;
    config.seed = base.seed;
    let mut fits = Vec::with_capacity(thresholds.len());
    for &t in &thresholds {
        let binary = threshold_graph(graph, t);
        fits.push(fit(&binary, &config)?);
    }
    let mut best = 0;
    for (i, f) in fits.iter().enumerate().skip(1) {
        if f.elbo > fits[best].elbo {
            best = i;
        }
    }
    Ok(ThresholdedSbmReport { thresholds, fits, best })
}

fn row_matrix(graph: &WeightedGraph) -> DMatrix<f64> {
    let n = graph.n();
    DMatrix::from_fn(n, n, |i, j| graph.weight(i, j))
}

/// Projects the adjacency rows onto their top-`k` principal components.
fn pca_scores(graph: &WeightedGraph, k: usize) -> DMatrix<f64> {
    let n = graph.n();
    let mut x = row_matrix(graph);
    for c in 0..n {
        let mean = x.column(c).sum() / n as f64;
        for r in 0..n {
            x[(r, c)] -= mean;
        }
    }
    let cov = x.transpose() * &x;
    let eig = cov.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut basis = DMatrix::zeros(n, k);
    for (out_c, &src_c) in order.iter().take(k).enumerate() {
        basis.set_column(out_c, &eig.eigenvectors.column(src_c));
    }
    x * basis
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

struct KmeansRun {
    labels: Vec<usize>,
    wcss: f64,
}

fn kmeans_once(points: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> KmeansRun {
    let n = points.len();
    let dim = points[0].len();

    // k-means++ seeding: first center uniform, then distance-squared
    // sampling; degenerate all-zero mass falls back to unchosen indices.
    let mut centers: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut chosen = vec![false; n];
    let first = rng.gen_range(0..n);
    centers.push(points[first].clone());
    chosen[first] = true;
    let mut d2 = vec![0.0f64; n];
    while centers.len() < k {
        let mut total = 0.0;
        for (i, p) in points.iter().enumerate() {
            let best = centers
                .iter()
                .map(|c| sq_dist(p, c))
                .fold(f64::INFINITY, f64::min);
            d2[i] = best;
            total += best;
        }
        let next = if total > 0.0 {
            let mut u = rng.gen::<f64>() * total;
            let mut pick = n - 1;
            for (i, &v) in d2.iter().enumerate() {
                u -= v;
                if u <= 0.0 {
                    pick = i;
                    break;
                }
            }
            pick
        } else {
            (0..n).find(|&i| !chosen[i]).unwrap_or(0)
        };
        chosen[next] = true;
        centers.push(points[next].clone());
    }

    let mut labels = vec![0usize; n];
    for _ in 0..100 {
        let mut changed = false;
        for (i, p) in points.iter().enumerate() {
            let mut best = 0;
            let mut best_d = f64::INFINITY;
            for (c, center) in centers.iter().enumerate() {
                let d = sq_dist(p, center);
                if d < best_d {
                    best_d = d;
                    best = c;
                }
            }
            if labels[i] != best {
                labels[i] = best;
                changed = true;
            }
        }

        let mut counts = vec![0usize; k];
        let mut sums = vec![vec![0.0f64; dim]; k];
        for (i, p) in points.iter().enumerate() {
            counts[labels[i]] += 1;
            for (s, &v) in sums[labels[i]].iter_mut().zip(p) {
                *s += v;
            }
        }
        for c in 0..k {
            if counts[c] == 0 {
                // Revive an empty cluster with the point farthest from its
                // current center.
                let far = (0..n)
                    .max_by(|&a, &b| {
                        sq_dist(&points[a], &centers[labels[a]])
                            .partial_cmp(&sq_dist(&points[b], &centers[labels[b]]))
                            .unwrap()
                            .then(b.cmp(&a))
                    })
                    .unwrap();
                labels[far] = c;
                centers[c] = points[far].clone();
                changed = true;
            } else {
                for (d, s) in centers[c].iter_mut().zip(&sums[c]) {
                    *d = s / counts[c] as f64;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let wcss = points
        .iter()
        .enumerate()
        .map(|(i, p)| sq_dist(p, &centers[labels[i]]))
        .sum();
    KmeansRun { labels, wcss }
}

/// Lloyd's algorithm with k-means++ seeding on the top-`k` principal
/// components of the adjacency rows; keeps the best of `restarts` runs by
/// within-cluster sum of squares. Deterministic per seed.
pub fn kmeans_labels(
    graph: &WeightedGraph,
    k: usize,
    restarts: usize,
    seed: u64,
) -> Result<BlockAssignment> {
    let n = graph.n();
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!(
            "k must lie in 1..={n}, got {k}"
        )));
    }
    if restarts == 0 {
        return Err(Error::InvalidInput("restarts must be at least 1".into()));
    }
    if k == 1 {
        return BlockAssignment::new(vec![0; n], 1);
    }
    let scores = pca_scores(graph, k);
    let points: Vec<Vec<f64>> = (0..n)
        .map(|i| scores.row(i).iter().cloned().collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<KmeansRun> = None;
    for _ in 0..restarts {
        let run = kmeans_once(&points, k, &mut rng);
        let better = match &best {
            None => true,
            Some(b) => run.wcss < b.wcss,
        };
        if better {
            best = Some(run);
        }
    }
    BlockAssignment::new(best.expect("restarts >= 1").labels, k)
}

/// Agglomerative clustering with average linkage on Euclidean distances
/// between adjacency rows, cut at `k` clusters. Ties pick the smallest
/// merged-index pair, so the result is deterministic.
pub fn hierarchical_labels(graph: &WeightedGraph, k: usize) -> Result<BlockAssignment> {
    let n = graph.n();
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!(
            "k must lie in 1..={n}, got {k}"
        )));
    }
    let rows = row_matrix(graph);
    let mut dist = vec![0.0f64; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let mut d = 0.0;
            for c in 0..n {
                let diff = rows[(i, c)] - rows[(j, c)];
                d += diff * diff;
            }
            let d = d.sqrt();
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    let mut size = vec![1usize; n];
    let mut alive = vec![true; n];
    let mut slot = (0..n).collect::<Vec<usize>>();
    for _ in 0..(n - k) {
        let mut best = (usize::MAX, usize::MAX);
        let mut best_d = f64::INFINITY;
        for i in 0..n {
            if !alive[i] {
                continue;
            }
            for j in (i + 1)..n {
                if !alive[j] {
                    continue;
                }
                if dist[i * n + j] < best_d {
                    best_d = dist[i * n + j];
                    best = (i, j);
                }
            }
        }
        let (a, b) = best;
        // Average linkage: the merged cluster's distance to any other is
        // the size-weighted mean of the parts' distances.
        let (sa, sb) = (size[a] as f64, size[b] as f64);
        for c in 0..n {
            if !alive[c] || c == a || c == b {
                continue;
            }
            let d = (sa * dist[a * n + c] + sb * dist[b * n + c]) / (sa + sb);
            dist[a * n + c] = d;
            dist[c * n + a] = d;
        }
        size[a] += size[b];
        alive[b] = false;
        for s in slot.iter_mut() {
            if *s == b {
                *s = a;
            }
        }
    }
    let mut remap = vec![usize::MAX; n];
    let mut next = 0;
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let s = slot[i];
        if remap[s] == usize::MAX {
            remap[s] = next;
            next += 1;
        }
        labels.push(remap[s]);
    }
    BlockAssignment::new(labels, k)
}
