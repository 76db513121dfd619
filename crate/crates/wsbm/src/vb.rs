//! Variational coordinate ascent for weighted stochastic block models.
//!
//! The factorized posterior keeps one categorical `mu_i` per vertex and one
//! conjugate pseudo-observation vector `tau_r` per edge bundle. A fit run
//! alternates:
//!
//! 1. expected bundle statistics from the current `mu`,
//! 2. the conjugate update `tau_r = tau0 + <T>_r` and its gradient `<eta>_r`,
//! 3. sequential sweeps of the `mu` rows in log domain,
//!
//! and tracks the evidence lower bound
//!
//! ```text
//! G = sum_{i<j} log h(A_ij)
//!   + sum_r (<T>_r + tau0 - tau_r) . <eta>_r
//!   + sum_r log Z(tau_r) / Z(tau0)
//!   + sum_i sum_z mu_i(z) log(mu0(z) / mu_i(z))
//! ```
//!
//! which is non-decreasing over iterations. [`fit`] runs several restarts
//! from random responsibilities and keeps the best bound.

use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::{BlockAssignment, BundleMap, WeightedGraph};
use crate::mat::Mat;
use crate::metrics::hard_assignment;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

#[derive(Debug, Clone, PartialEq)]
pub struct FitConfig {
    pub family: Family,
    pub k: usize,
    /// Prior pseudo-observations, one vector shared by all bundles.
    pub tau0: Vec<f64>,
    /// Prior label distribution, length `k`.
    pub mu0: Vec<f64>,
    /// Max-abs change of any `mu` entry that ends the inner sweeps.
    pub inner_tol: f64,
    /// Relative ELBO change that ends the outer loop.
    pub outer_tol: f64,
    pub max_inner: usize,
    pub max_outer: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl FitConfig {
    pub fn new(family: Family, k: usize) -> Self {
        let kk = k.max(1);
        FitConfig {
            family,
            k,
            tau0: family.default_prior(),
            mu0: vec![1.0 / kk as f64; kk],
            inner_tol: 1e-6,
            outer_tol: 1e-8,
            max_inner: 50,
            max_outer: 200,
            restarts: 10,
            seed: 0,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidInput("k must be at least 1".into()));
        }
        if n < 2 {
            return Err(Error::InvalidInput(
                "fitting needs at least two vertices".into(),
            ));
        }
        if self.k > n {
            log::warn!("k = {} exceeds n = {n}; expect empty blocks", self.k);
        }
        self.family
            .check_tau(&self.tau0)
            .map_err(|e| Error::InvalidInput(format!("tau0: {e}")))?;
        if self.mu0.len() != self.k {
            return Err(Error::InvalidInput(format!(
                "mu0 has {} entries, expected k = {}",
                self.mu0.len(),
                self.k
            )));
        }
        if self.mu0.iter().any(|p| !p.is_finite() || *p <= 0.0) {
            return Err(Error::InvalidInput(
                "mu0 entries must be positive and finite".into(),
            ));
        }
        let sum: f64 = self.mu0.iter().sum();
        if (sum - 1.0).abs() > 1e-6 {
            return Err(Error::InvalidInput(format!(
                "mu0 sums to {sum}, expected 1"
            )));
        }
        for (name, v) in [("inner_tol", self.inner_tol), ("outer_tol", self.outer_tol)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.max_inner == 0 || self.max_outer == 0 || self.restarts == 0 {
            return Err(Error::InvalidInput(
                "max_inner, max_outer, and restarts must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// The factorized posterior: responsibilities `mu` (n x k), bundle
/// posteriors `tau` (R x d), and the cached statistics they were built
/// from. Constructed only by [`VariationalState::from_mu`], which performs
/// the conjugate tau update, so the caches always match `mu` and `tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationalState {
    mu: Mat,
    tau: Mat,
    expected_t: Mat,
    expected_eta: Mat,
}

impl VariationalState {
    /// Builds the consistent state reached by one tau update from `mu`.
    pub fn from_mu(
        graph: &WeightedGraph,
        family: Family,
        tau0: &[f64],
        mu: Mat,
    ) -> Result<Self> {
        let expected_t = expected_bundle_stats(graph, &mu, family)?;
        let tau = update_tau(&expected_t, tau0, family)?;
        let d = family.dim();
        let mut expected_eta = Mat::zeros(tau.rows(), d);
        for r in 0..tau.rows() {
            family.expected_eta_into(tau.row(r), expected_eta.row_mut(r));
        }
        Ok(VariationalState { mu, tau, expected_t, expected_eta })
    }

    pub fn n(&self) -> usize {
        self.mu.rows()
    }

    pub fn k(&self) -> usize {
        self.mu.cols()
    }

    pub fn mu(&self) -> &Mat {
        &self.mu
    }

    pub fn tau(&self) -> &Mat {
        &self.tau
    }

    pub fn expected_t(&self) -> &Mat {
        &self.expected_t
    }

    pub fn expected_eta(&self) -> &Mat {
        &self.expected_eta
    }

    fn into_sweep_parts(self) -> (Mat, Mat) {
        (self.mu, self.expected_eta)
    }

    fn into_mu_tau(self) -> (Mat, Mat) {
        (self.mu, self.tau)
    }
}

fn check_row_stochastic(mu: &Mat) -> Result<()> {
    for i in 0..mu.rows() {
        let row = mu.row(i);
        let mut sum = 0.0;
        for &v in row {
            if !v.is_finite() || v < -1e-12 {
                return Err(Error::InvalidInput(format!(
                    "responsibility row {} has invalid entry {v}",
                    i + 1
                )));
            }
            sum += v;
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "responsibility row {} sums to {sum}, expected 1",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Expected sufficient statistics per bundle:
/// `<T>_r = sum_{i<j} w_ij(r) T(A_ij)` with
/// `w_ij(r) = mu_i(a) mu_j(b) + mu_i(b) mu_j(a)` for the bundle of the
/// unordered block pair `{a, b}` (single product when `a = b`). The
/// weights for any pair sum to 1 across bundles.
pub fn expected_bundle_stats(graph: &WeightedGraph, mu: &Mat, family: Family) -> Result<Mat> {
    let n = graph.n();
    if mu.rows() != n {
        return Err(Error::InvalidInput(format!(
            "mu has {} rows for a graph with {n} vertices",
            mu.rows()
        )));
    }
    let k = mu.cols();
    if k == 0 {
        return Err(Error::InvalidInput("mu must have at least one column".into()));
    }
    check_row_stochastic(mu)?;
    graph.validate_support(family)?;
    let bundles = BundleMap::new(k)?;
    let d = family.dim();
    let mut acc = vec![0.0f64; bundles.count() * d];
    let mut t = [0.0f64; 3];
    for i in 0..n {
        let mu_i = mu.row(i);
        for j in (i + 1)..n {
            family.suff_stat_into(graph.weight(i, j), &mut t[..d]);
            let mu_j = mu.row(j);
            for a in 0..k {
                let mia = mu_i[a];
                let mja = mu_j[a];
                let base = bundles.index(a, a) * d;
                let w = mia * mja;
                for c in 0..d {
                    acc[base + c] += w * t[c];
                }
                for b in (a + 1)..k {
                    let w = mia * mu_j[b] + mu_i[b] * mja;
                    let base = bundles.index(a, b) * d;
                    for c in 0..d {
                        acc[base + c] += w * t[c];
                    }
                }
            }
        }
    }
    Mat::from_vec(bundles.count(), d, acc)
}

/// Conjugate update `tau_r = tau0 + <T>_r`, checking that every resulting
/// row is proper (an improper row indicates a support violation upstream).
pub fn update_tau(expected_t: &Mat, tau0: &[f64], family: Family) -> Result<Mat> {
    let d = family.dim();
    if expected_t.cols() != d || tau0.len() != d {
        return Err(Error::InvalidInput(format!(
            "expected {d} statistic components for {family}, got {} and {}",
            expected_t.cols(),
            tau0.len()
        )));
    }
    let mut tau = Mat::zeros(expected_t.rows(), d);
    for r in 0..expected_t.rows() {
        let tr = expected_t.row(r);
        let out = tau.row_mut(r);
        for c in 0..d {
            out[c] = tr[c] + tau0[c];
        }
        family.check_tau(out)?;
    }
    Ok(tau)
}

/// Sequential Gauss-Seidel sweeps over the responsibility rows. Each
/// vertex's scores are
/// `s_i(z) = sum_{j != i} sum_{z'} mu_j(z') (T(A_ij) . <eta>_{R(z,z')})`,
/// normalized in log domain with max-subtraction. Updated rows are used
/// immediately within a sweep (ascending vertex order). Sweeping stops
/// when the max-abs entry change falls below `inner_tol` or after
/// `max_inner` sweeps; returns `(sweeps, converged)`.
pub fn update_mu_sweep(
    graph: &WeightedGraph,
    mu: &mut Mat,
    expected_eta: &Mat,
    family: Family,
    inner_tol: f64,
    max_inner: usize,
) -> Result<(usize, bool)> {
    let n = graph.n();
    let k = mu.cols();
    if mu.rows() != n {
        return Err(Error::InvalidInput(format!(
            "mu has {} rows for a graph with {n} vertices",
            mu.rows()
        )));
    }
    let bundles = BundleMap::new(k)?;
    let d = family.dim();
    if expected_eta.rows() != bundles.count() || expected_eta.cols() != d {
        return Err(Error::InvalidInput(format!(
            "expected_eta must be {}x{d}, got {}x{}",
            bundles.count(),
            expected_eta.rows(),
            expected_eta.cols()
        )));
    }
    if expected_eta.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidData(
            "expected_eta contains non-finite entries".into(),
        ));
    }
    if !inner_tol.is_finite() || inner_tol <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "inner_tol must be positive, got {inner_tol}"
        )));
    }
    if max_inner == 0 {
        return Err(Error::InvalidInput("max_inner must be at least 1".into()));
    }

    let mut m = vec![0.0f64; k * d];
    let mut s = vec![0.0f64; k];
    let mut t = [0.0f64; 3];
    let mut sweeps = 0;
    let mut converged = false;
    while sweeps < max_inner {
        sweeps += 1;
        let mut max_delta = 0.0f64;
        for i in 0..n {
            m.fill(0.0);
            for j in 0..n {
                if j == i {
                    continue;
                }
                family.suff_stat_into(graph.weight(i, j), &mut t[..d]);
                let mu_j = mu.row(j);
                for (zp, &w) in mu_j.iter().enumerate() {
                    let base = zp * d;
                    for c in 0..d {
                        m[base + c] += w * t[c];
                    }
                }
            }
            for (z, sz) in s.iter_mut().enumerate() {
                let mut total = 0.0;
                for zp in 0..k {
                    let eta = expected_eta.row(bundles.index(z, zp));
                    let base = zp * d;
                    let mut dot = 0.0;
                    for c in 0..d {
                        dot += m[base + c] * eta[c];
                    }
                    total += dot;
                }
                *sz = total;
            }
            let smax = s.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let mut norm = 0.0;
            for sz in s.iter_mut() {
                *sz = (*sz - smax).exp();
                norm += *sz;
            }
            let row = mu.row_mut(i);
            for z in 0..k {
                let new = s[z] / norm;
                max_delta = max_delta.max((new - row[z]).abs());
                row[z] = new;
            }
        }
        if max_delta < inner_tol {
            converged = true;
            break;
        }
    }
    Ok((sweeps, converged))
}

fn total_log_h(graph: &WeightedGraph, family: Family) -> Result<f64> {
    if family != Family::Poisson {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for (i, j) in graph.pairs() {
        sum += family.log_h(graph.weight(i, j))?;
    }
    Ok(sum)
}

fn elbo_terms(
    logh_sum: f64,
    state: &VariationalState,
    family: Family,
    tau0: &[f64],
    mu0: &[f64],
) -> Result<f64> {
    let d = family.dim();
    let logz0 = family.log_partition(tau0)?;
    let mut middle = 0.0;
    let mut logz = 0.0;
    for r in 0..state.tau.rows() {
        let tr = state.tau.row(r);
        let er = state.expected_eta.row(r);
        let tt = state.expected_t.row(r);
        for c in 0..d {
            middle += ((tt[c] + tau0[c]) - tr[c]) * er[c];
        }
        logz += family.log_partition(tr)? - logz0;
    }
    let ln_mu0: Vec<f64> = mu0.iter().map(|p| p.ln()).collect();
    let mut entropy = 0.0;
    for i in 0..state.mu.rows() {
        for (z, &v) in state.mu.row(i).iter().enumerate() {
            if v > 0.0 {
                entropy += v * (ln_mu0[z] - v.ln());
            }
        }
    }
    Ok(logh_sum + middle + logz + entropy)
}

/// Evidence lower bound of `state` on `graph`. The sum over pairs of
/// `log h`, the pseudo-observation inner product (exactly zero right after
/// a tau update, but always computed as written), the log-partition
/// ratios, and the label entropy relative to `mu0` (with `0 log 0 = 0`).
///
/// Errors if the state's cached statistics do not match this graph, which
/// catches states built from a different graph of the same size.
pub fn elbo(
    graph: &WeightedGraph,
    state: &VariationalState,
    family: Family,
    tau0: &[f64],
    mu0: &[f64],
) -> Result<f64> {
    family.check_tau(tau0)?;
    if mu0.len() != state.k() {
        return Err(Error::InvalidInput(format!(
            "mu0 has {} entries, expected k = {}",
            mu0.len(),
            state.k()
        )));
    }
    if mu0.iter().any(|p| !p.is_finite() || *p <= 0.0) {
        return Err(Error::InvalidInput(
            "mu0 entries must be positive and finite".into(),
        ));
    }
    let recomputed = expected_bundle_stats(graph, &state.mu, family)?;
    let scale = 1.0
        + recomputed
            .as_slice()
            .iter()
            .fold(0.0f64, |a, &v| a.max(v.abs()));
    if recomputed.max_abs_diff(&state.expected_t) > 1e-9 * scale {
        return Err(Error::InvalidInput(
            "state caches do not match this graph".into(),
        ));
    }
    let logh = total_log_h(graph, family)?;
    elbo_terms(logh, state, family, tau0, mu0)
}

/// Outcome of a fit: the winners' posteriors plus diagnostics. `mu` rows
/// are the per-vertex block responsibilities, `tau` rows follow
/// [`BundleMap`] order, `z` is the row-wise argmax of `mu`, and
/// `elbo_trace` holds the bound after every outer iteration of the
/// winning run.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub elbo: f64,
    pub mu: Mat,
    pub tau: Mat,
    pub z: BlockAssignment,
    pub iterations: usize,
    pub converged: bool,
    /// Seed of the restart that produced the result.
    pub seed: u64,
    /// Not serialized.
    pub elbo_trace: Vec<f64>,
    /// Fingerprint of the graph the fit ran on; `None` after loading from
    /// disk. Not serialized.
    pub graph_digest: Option<u64>,
}

struct RunOutcome {
    state: VariationalState,
    elbo: f64,
    trace: Vec<f64>,
    iterations: usize,
    converged: bool,
    seed: u64,
}

/// How a single restart seeds its responsibilities. Coordinate ascent only
/// amplifies structure that is already present in the starting point, and
/// near the uniform point the relevant gradient components vanish, so the
/// restarts deliberately start from different kinds of points: one informed
/// by a spectral clustering of the weight rows, the rest split between
/// random hard labelings (order-one overlap with any planted structure) and
/// flat Dirichlet draws (small simultaneous leanings in every direction).
enum InitKind {
    Labels(Vec<usize>),
    HardRandom,
    Dirichlet,
}

/// Mass kept on the chosen block when seeding from hard labels; the
/// remainder spreads uniformly so no block starts at exactly zero.
const LABEL_CONFIDENCE: f64 = 0.9;

fn init_mu<R: Rng>(n: usize, k: usize, kind: &InitKind, rng: &mut R) -> Mat {
    let mut mu = Mat::zeros(n, k);
    let spread = (1.0 - LABEL_CONFIDENCE) / k as f64;
    for i in 0..n {
        let row = mu.row_mut(i);
        if k == 1 {
            row[0] = 1.0;
            continue;
        }
        match kind {
            InitKind::Labels(labels) => {
                row.fill(spread);
                row[labels[i]] += LABEL_CONFIDENCE;
            }
            InitKind::HardRandom => {
                row.fill(spread);
                row[rng.gen_range(0..k)] += LABEL_CONFIDENCE;
            }
            InitKind::Dirichlet => {
                // Normalized unit-exponential draws are a symmetric
                // Dirichlet(1) sample.
                let mut sum = 0.0;
                for v in row.iter_mut() {
                    let u: f64 = rng.gen();
                    *v = -(1.0 - u).ln();
                    sum += *v;
                }
                if sum > 0.0 {
                    for v in row.iter_mut() {
                        *v /= sum;
                    }
                } else {
                    row.fill(1.0 / k as f64);
                }
            }
        }
    }
    mu
}

fn run_single(
    graph: &WeightedGraph,
    config: &FitConfig,
    run_seed: u64,
    kind: &InitKind,
    logh_sum: f64,
) -> Result<RunOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(run_seed);
    let mu = init_mu(graph.n(), config.k, kind, &mut rng);
    let mut state = VariationalState::from_mu(graph, config.family, &config.tau0, mu)?;
    let mut trace: Vec<f64> = Vec::new();
    let mut converged = false;
    loop {
        let g = elbo_terms(logh_sum, &state, config.family, &config.tau0, &config.mu0)?;
        if !g.is_finite() {
            return Err(Error::InvalidData(
                "evidence bound is not finite; the model is degenerate for this input".into(),
            ));
        }
        trace.push(g);
        let t = trace.len();
        if t >= 2 {
            let prev = trace[t - 2];
            if (g - prev).abs() <= config.outer_tol * (1.0 + prev.abs()) {
                converged = true;
                break;
            }
        }
        if t >= config.max_outer {
            break;
        }
        let (mut mu, eta) = state.into_sweep_parts();
        update_mu_sweep(
            graph,
            &mut mu,
            &eta,
            config.family,
            config.inner_tol,
            config.max_inner,
        )?;
        state = VariationalState::from_mu(graph, config.family, &config.tau0, mu)?;
    }
    Ok(RunOutcome {
        elbo: *trace.last().unwrap(),
        iterations: trace.len(),
        converged,
        seed: run_seed,
        state,
        trace,
    })
}

/// Multi-restart variational fit. Runs `config.restarts` independent runs
/// seeded `seed, seed+1, ...`, each alternating tau updates with mu sweeps
/// until the relative ELBO change drops below `outer_tol` (or `max_outer`
/// iterations), and keeps the run with the highest bound, breaking exact
/// ties toward the lowest seed. The first restart starts from a spectral
/// k-means clustering of the weight rows; the others start from random
/// points (see `InitKind`). Deterministic: identical inputs produce an
/// identical result.
pub fn fit(graph: &WeightedGraph, config: &FitConfig) -> Result<FitResult> {
    config.validate(graph.n())?;
    graph.validate_support(config.family)?;
    let logh_sum = total_log_h(graph, config.family)?;
    let seeded = crate::baselines::kmeans_labels(graph, config.k.min(graph.n()), 4, config.seed)
        .ok()
        .map(|a| a.as_slice().to_vec());
    let mut best: Option<RunOutcome> = None;
    for r in 0..config.restarts {
        let run_seed = config.seed.wrapping_add(r as u64);
        let kind = match (r, &seeded) {
            (0, Some(labels)) => InitKind::Labels(labels.clone()),
            (r, _) if r % 2 == 1 => InitKind::Dirichlet,
            _ => InitKind::HardRandom,
        };
        let outcome = run_single(graph, config, run_seed, &kind, logh_sum)?;
        let better = match &best {
            None => true,
            Some(b) => outcome.elbo > b.elbo,
        };
        if better {
            best = Some(outcome);
        }
    }
    let out = best.expect("restarts >= 1");
    let (mu, tau) = out.state.into_mu_tau();
    let z = hard_assignment(&mu)?;
    Ok(FitResult {
        family: config.family,
        n: graph.n(),
        k: config.k,
        elbo: out.elbo,
        mu,
        tau,
        z,
        iterations: out.iterations,
        converged: out.converged,
        seed: out.seed,
        elbo_trace: out.trace,
        graph_digest: Some(graph.digest()),
    })
}

#[derive(Serialize, Deserialize)]
struct FitDocument {
    version: u32,
    family: Family,
    k: usize,
    n: usize,
    elbo: f64,
    mu: Vec<Vec<f64>>,
    tau: Vec<Vec<f64>>,
    z: Vec<usize>,
    iterations: usize,
    converged: bool,
    seed: u64,
}

/// Writes a fit as a single-line JSON document (block labels 1-based).
pub fn save_fit(path: &Path, result: &FitResult) -> Result<()> {
    let doc = FitDocument {
        version: 1,
        family: result.family,
        k: result.k,
        n: result.n,
        elbo: result.elbo,
        mu: result.mu.to_nested(),
        tau: result.tau.to_nested(),
        z: result.z.as_slice().iter().map(|&l| l + 1).collect(),
        iterations: result.iterations,
        converged: result.converged,
        seed: result.seed,
    };
    let mut text = serde_json::to_string(&doc)
        .map_err(|e| Error::InvalidData(format!("could not serialize fit: {e}")))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Reads a fit document back, validating the schema, responsibility row
/// sums (within 1e-6), bundle posterior properness, and label ranges.
pub fn load_fit(path: &Path) -> Result<FitResult> {
    let text = fs::read_to_string(path)?;
    let doc: FitDocument = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidData(format!("fit document: {e}")))?;
    if doc.version != 1 {
        return Err(Error::InvalidData(format!(
            "unsupported fit document version {}",
            doc.version
        )));
    }
    if doc.k == 0 || doc.n == 0 {
        return Err(Error::InvalidData("fit document has empty dimensions".into()));
    }
    if doc.mu.len() != doc.n {
        return Err(Error::InvalidData(format!(
            "mu has {} rows, expected n = {}",
            doc.mu.len(),
            doc.n
        )));
    }
    let mu = Mat::from_rows(&doc.mu).map_err(|e| Error::InvalidData(e.to_string()))?;
    if mu.cols() != doc.k {
        return Err(Error::InvalidData(format!(
            "mu rows have {} entries, expected k = {}",
            mu.cols(),
            doc.k
        )));
    }
    for i in 0..mu.rows() {
        let row = mu.row(i);
        if row.iter().any(|v| !v.is_finite() || *v < -1e-12) {
            return Err(Error::InvalidData(format!(
                "mu row {} has invalid entries",
                i + 1
            )));
        }
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > 1e-6 {
            return Err(Error::InvalidData(format!(
                "mu row {} sums to {sum}, expected 1",
                i + 1
            )));
        }
    }
    let bundles = BundleMap::new(doc.k)?;
    let d = doc.family.dim();
    if doc.tau.len() != bundles.count() {
        return Err(Error::InvalidData(format!(
            "tau has {} rows, expected {} bundles",
            doc.tau.len(),
            bundles.count()
        )));
    }
    let tau = Mat::from_rows(&doc.tau).map_err(|e| Error::InvalidData(e.to_string()))?;
    if tau.cols() != d {
        return Err(Error::InvalidData(format!(
            "tau rows have {} entries, expected {d}",
            tau.cols()
        )));
    }
    for r in 0..tau.rows() {
        doc.family.check_tau(tau.row(r))?;
    }
    if doc.z.len() != doc.n {
        return Err(Error::InvalidData(format!(
            "z has {} labels, expected n = {}",
            doc.z.len(),
            doc.n
        )));
    }
    let mut labels = Vec::with_capacity(doc.n);
    for &l in &doc.z {
        if l == 0 || l > doc.k {
            return Err(Error::InvalidData(format!(
                "label {l} is out of range 1..={}",
                doc.k
            )));
        }
        labels.push(l - 1);
    }
    if !doc.elbo.is_finite() {
        return Err(Error::InvalidData("elbo must be finite".into()));
    }
    Ok(FitResult {
        family: doc.family,
        n: doc.n,
        k: doc.k,
        elbo: doc.elbo,
        mu,
        tau,
        z: BlockAssignment::new(labels, doc.k)?,
        iterations: doc.iterations,
        converged: doc.converged,
        seed: doc.seed,
        elbo_trace: Vec::new(),
        graph_digest: None,
    })
}
