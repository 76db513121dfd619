//! Dense weighted graphs, block assignments, and edge-bundle indexing.
//!
//! Graphs are complete: every unordered vertex pair `{i, j}` carries a
//! weight, stored symmetrically in a dense `n x n` buffer whose diagonal is
//! ignored by every consumer. Two text formats are supported:
//!
//! - dense matrix: `n` whitespace-separated rows of `n` reals; lines whose
//!   first non-blank character is `#` are comments;
//! - edge list: a `n <N>` header line followed by `i j w` records with
//!   1-based vertex ids; absent pairs either take an explicit fill value or
//!   are an error.
//!
//! Block assignments are stored 0-based in memory and 1-based on disk (one
//! integer per line).

use crate::error::{Error, Result};
use crate::family::Family;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    w: Vec<f64>,
    family_hint: Option<Family>,
}

impl WeightedGraph {
    /// Builds a graph from a row-major `n x n` weight buffer, checking
    /// symmetry, finiteness of off-diagonal entries, and (when a family
    /// hint is given) support membership.
    pub fn from_dense(n: usize, w: Vec<f64>, family_hint: Option<Family>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidData("graph must have at least one vertex".into()));
        }
        if w.len() != n * n {
            return Err(Error::InvalidData(format!(
                "weight buffer has {} entries, expected {n}x{n}",
                w.len()
            )));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let a = w[i * n + j];
                let b = w[j * n + i];
                if !a.is_finite() || !b.is_finite() {
                    return Err(Error::InvalidData(format!(
                        "non-finite weight at pair ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if a != b {
                    return Err(Error::InvalidData(format!(
                        "asymmetric weights at pair ({}, {}): {a} vs {b}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let g = WeightedGraph { n, w, family_hint };
        if let Some(f) = family_hint {
            g.validate_support(f)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family_hint(&self) -> Option<Family> {
        self.family_hint
    }

    /// Number of unordered vertex pairs, `n (n - 1) / 2`.
    pub fn pair_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.n && j < self.n);
        self.w[i * self.n + j]
    }

    /// Unordered pairs `(i, j)` with `i < j`, row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (i, j)))
    }

    /// Off-diagonal weights, one entry per unordered pair.
    pub fn upper_weights(&self) -> Vec<f64> {
        self.pairs().map(|(i, j)| self.weight(i, j)).collect()
    }

    /// Checks that every off-diagonal weight lies in the support of
    /// `family`, reporting the first offending pair.
    pub fn validate_support(&self, family: Family) -> Result<()> {
        for (i, j) in self.pairs() {
            let x = self.weight(i, j);
            if !family.supports(x) {
                return Err(Error::UnsupportedWeight {
                    family,
                    value: x,
                    i: i + 1,
                    j: j + 1,
                });
            }
        }
        Ok(())
    }

    /// FNV-1a fingerprint of the vertex count and off-diagonal weights,
    /// used to detect evidence comparisons across different graphs.
    pub fn digest(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        eat(&(self.n as u64).to_le_bytes());
        for (i, j) in self.pairs() {
            eat(&self.weight(i, j).to_bits().to_le_bytes());
        }
        h
    }

    pub fn load_dense(path: &Path, family_hint: Option<Family>) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row: Result<Vec<f64>> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>().map_err(|_| {
                        Error::InvalidData(format!(
                            "line {}: {tok:?} is not a real number",
                            lineno + 1
                        ))
                    })
                })
                .collect();
            rows.push(row?);
        }
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidData("matrix file contains no rows".into()));
        }
        let mut w = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidData(format!(
                    "row {} has {} values, expected {n} (matrix must be square)",
                    r + 1,
                    row.len()
                )));
            }
            w.extend_from_slice(row);
        }
        WeightedGraph::from_dense(n, w, family_hint)
    }

    pub fn load_edge_list(
        path: &Path,
        family_hint: Option<Family>,
        fill: Option<f64>,
    ) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let mut n: Option<usize> = None;
        let mut w: Vec<f64> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: String| Error::InvalidData(format!("line {}: {msg}", lineno + 1));
            match n {
                None => {
                    if toks.len() != 2 || toks[0] != "n" {
                        return Err(bad(format!(
                            "expected header \"n <count>\", got {line:?}"
                        )));
                    }
                    let count: usize = toks[1]
                        .parse()
                        .map_err(|_| bad(format!("{:?} is not a vertex count", toks[1])))?;
                    if count == 0 {
                        return Err(bad("vertex count must be positive".into()));
                    }
                    n = Some(count);
                    w = vec![f64::NAN; count * count];
                }
                Some(count) => {
                    if toks.len() != 3 {
                        return Err(bad(format!("expected \"i j w\", got {line:?}")));
                    }
                    let i: usize = toks[0]
                        .parse()
                        .map_err(|_| bad(format!("{:?} is not a vertex id", toks[0])))?;
                    let j: usize = toks[1]
                        .parse()
                        .map_err(|_| bad(format!("{:?} is not a vertex id", toks[1])))?;
                    let x: f64 = toks[2]
                        .parse()
                        .map_err(|_| bad(format!("{:?} is not a real number", toks[2])))?;
                    if i < 1 || i > count || j < 1 || j > count {
                        return Err(bad(format!(
                            "vertex ids must lie in 1..={count}, got ({i}, {j})"
                        )));
                    }
                    if i == j {
                        continue;
                    }
                    let (a, b) = (i - 1, j - 1);
                    let prev = w[a * count + b];
                    if !prev.is_nan() && prev != x {
                        return Err(bad(format!(
                            "conflicting duplicate for pair ({i}, {j}): {prev} vs {x}"
                        )));
                    }
                    w[a * count + b] = x;
                    w[b * count + a] = x;
                }
            }
        }
        let n = n.ok_or_else(|| Error::InvalidData("edge list has no header line".into()))?;
        for i in 0..n {
            for j in (i + 1)..n {
                if w[i * n + j].is_nan() {
                    match fill {
                        Some(v) => {
                            w[i * n + j] = v;
                            w[j * n + i] = v;
                        }
                        None => {
                            return Err(Error::InvalidData(format!(
                                "pair ({}, {}) is missing and no fill value was given",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                }
            }
        }
        for i in 0..n {
            w[i * n + i] = 0.0;
        }
        WeightedGraph::from_dense(n, w, family_hint)
    }

    pub fn save_dense(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{}", self.w[i * self.n + j]);
            }
            out.push('\n');
        }
        fs::write(path, out)?;
        Ok(())
    }
}

/// Which on-disk representation to parse a graph from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    DenseMatrix,
    EdgeList,
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dense" | "matrix" => Ok(GraphFormat::DenseMatrix),
            "edges" | "edge-list" | "edgelist" => Ok(GraphFormat::EdgeList),
            other => Err(Error::InvalidInput(format!(
                "unknown graph format {other:?}, expected \"dense\" or \"edge-list\""
            ))),
        }
    }
}

pub fn load_graph(
    path: &Path,
    format: GraphFormat,
    family_hint: Option<Family>,
    fill: Option<f64>,
) -> Result<WeightedGraph> {
    match format {
        GraphFormat::DenseMatrix => WeightedGraph::load_dense(path, family_hint),
        GraphFormat::EdgeList => WeightedGraph::load_edge_list(path, family_hint, fill),
    }
}

/// A hard partition of `n` vertices into `k` blocks, 0-based in memory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockAssignment {
    labels: Vec<usize>,
    k: usize,
}

impl BlockAssignment {
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("block count must be positive".into()));
        }
        if labels.is_empty() {
            return Err(Error::InvalidInput("assignment must cover at least one vertex".into()));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= k) {
            return Err(Error::InvalidInput(format!(
                "label {bad} is out of range for k = {k}"
            )));
        }
        Ok(BlockAssignment { labels, k })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.labels
    }

    /// Applies a block permutation: vertex labels `l` become `perm[l]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.k {
            return Err(Error::InvalidInput(format!(
                "permutation has {} entries, expected {}",
                perm.len(),
                self.k
            )));
        }
        let mut seen = vec![false; self.k];
        for &p in perm {
            if p >= self.k || seen[p] {
                return Err(Error::InvalidInput("not a permutation of 0..k".into()));
            }
            seen[p] = true;
        }
        let labels = self.labels.iter().map(|&l| perm[l]).collect();
        BlockAssignment::new(labels, self.k)
    }

    /// Reads one 1-based block label per line; `k` becomes the largest
    /// label seen.
    pub fn load_labels(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let mut labels = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let l: usize = line.parse().map_err(|_| {
                Error::InvalidData(format!(
                    "line {}: {line:?} is not a block label",
                    lineno + 1
                ))
            })?;
            if l == 0 {
                return Err(Error::InvalidData(format!(
                    "line {}: labels are 1-based, got 0",
                    lineno + 1
                )));
            }
            labels.push(l - 1);
        }
        if labels.is_empty() {
            return Err(Error::InvalidData("labels file contains no labels".into()));
        }
        let k = labels.iter().max().unwrap() + 1;
        BlockAssignment::new(labels, k)
    }

    pub fn save_labels(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        for &l in &self.labels {
            let _ = writeln!(out, "{}", l + 1);
        }
        fs::write(path, out)?;
        Ok(())
    }
}

/// Maps unordered block pairs `{a, b}` to bundle indices `0..k(k+1)/2`.
///
/// The order is row-major over `a <= b`: `(0,0), (0,1), ..., (0,k-1),
/// (1,1), ...` so that `index` and `pairs` enumerate bundles consistently
/// everywhere (posterior rows, serialized `tau`, reports).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BundleMap {
    k: usize,
}

impl BundleMap {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("block count must be positive".into()));
        }
        Ok(BundleMap { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of bundles, `k (k + 1) / 2`.
    pub fn count(&self) -> usize {
        self.k * (self.k + 1) / 2
    }

    /// Bundle index of the unordered pair `{a, b}` of 0-based block ids.
    #[inline]
    pub fn index(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.k && b < self.k);
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        u * self.k - u * (u + 1) / 2 + v
    }

    /// Block pairs `(a, b)` with `a <= b` in bundle-index order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.k;
        (0..k).flat_map(move |a| (a..k).map(move |b| (a, b)))
    }
}
