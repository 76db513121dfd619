//! Choosing the number of blocks by comparing evidence bounds.
//!
//! Each candidate `k` gets a full multi-restart fit; the bound difference
//! between two candidates approximates the log Bayes factor between them,
//! so the report picks the candidate with the highest bound.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::vb::{fit, FitConfig, FitResult};

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionEntry {
    pub k: usize,
    pub elbo: f64,
    pub result: FitResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionReport {
    /// One entry per candidate, ascending `k`.
    pub entries: Vec<SelectionEntry>,
    pub chosen_k: usize,
}

impl SelectionReport {
    pub fn chosen(&self) -> &SelectionEntry {
        self.entries
            .iter()
            .find(|e| e.k == self.chosen_k)
            .expect("chosen_k always names an entry")
    }

    /// `k,elbo,chosen` rows in ascending `k`, exactly one row flagged 1.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,elbo,chosen\n");
        for e in &self.entries {
            let flag = if e.k == self.chosen_k { 1 } else { 0 };
            out.push_str(&format!("{},{},{}\n", e.k, e.elbo, flag));
        }
        out
    }
}

/// Approximate log Bayes factor `G_a - G_b` between two fits of the same
/// data. Errors when the fits disagree on family or vertex count, or when
/// both carry graph fingerprints and the fingerprints differ.
pub fn log_bayes_factor(a: &FitResult, b: &FitResult) -> Result<f64> {
    if a.family != b.family {
        return Err(Error::InvalidInput(format!(
            "cannot compare fits of different families ({} vs {})",
            a.family, b.family
        )));
    }
    if a.n != b.n {
        return Err(Error::InvalidInput(format!(
            "cannot compare fits over different vertex counts ({} vs {})",
            a.n, b.n
        )));
    }
    if let (Some(da), Some(db)) = (a.graph_digest, b.graph_digest) {
        if da != db {
            return Err(Error::InvalidInput(
                "cannot compare fits of different graphs".into(),
            ));
        }
    }
    Ok(a.elbo - b.elbo)
}

fn best_entry(entries: &[SelectionEntry]) -> usize {
    let mut best = 0;
    for (i, e) in entries.iter().enumerate().skip(1) {
        // Strict improvement only, so exact ties keep the smaller k.
        if e.elbo > entries[best].elbo {
            best = i;
        }
    }
    best
}

/// Fits every `k` in `k_min..=k_max` with the same priors, tolerances,
/// restart budget, and seed policy from `base` (its `k` and `mu0` are
/// replaced per candidate, `mu0` with the uniform distribution) and picks
/// the candidate with the highest bound. Exact ties go to the smallest
/// `k`. Deterministic for fixed inputs.
pub fn select_k(
    graph: &WeightedGraph,
    base: &FitConfig,
    k_min: usize,
    k_max: usize,
) -> Result<SelectionReport> {
    if k_min == 0 {
        return Err(Error::InvalidInput("k_min must be at least 1".into()));
    }
    if k_max < k_min {
        return Err(Error::InvalidInput(format!(
            "empty candidate range {k_min}..={k_max}"
        )));
    }
    let mut entries = Vec::with_capacity(k_max - k_min + 1);
    for k in k_min..=k_max {
        let mut config = base.clone();
        config.k = k;
        config.mu0 = vec![1.0 / k as f64; k];
        let result = fit(graph, &config)?;
        entries.push(SelectionEntry { k, elbo: result.elbo, result });
    }
    let chosen_k = entries[best_entry(&entries)].k;
    Ok(SelectionReport { entries, chosen_k })
}
