//! Partition comparison: contingency tables and variation of information.
//!
//! Variation of information (VI) between partitions `P` and `Q` is
//! `H(P|Q) + H(Q|P)` in nats. It is a metric on partitions: zero exactly
//! for identical partitions (up to label names it is label-permutation
//! invariant), symmetric, obeys the triangle inequality, and is bounded by
//! `ln n` on `n` elements.

use crate::error::{Error, Result};
use crate::graph::BlockAssignment;
use crate::mat::Mat;

/// Joint block-occupancy counts of two partitions over the same vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contingency {
    counts: Vec<usize>,
    p_blocks: usize,
    q_blocks: usize,
    n: usize,
}

impl Contingency {
    pub fn from_assignments(p: &BlockAssignment, q: &BlockAssignment) -> Result<Self> {
        if p.n() != q.n() {
            return Err(Error::InvalidInput(format!(
                "partitions cover different vertex counts: {} vs {}",
                p.n(),
                q.n()
            )));
        }
        let (pk, qk) = (p.k(), q.k());
        let mut counts = vec![0usize; pk * qk];
        for i in 0..p.n() {
            counts[p.label(i) * qk + q.label(i)] += 1;
        }
        Ok(Contingency {
            counts,
            p_blocks: pk,
            q_blocks: qk,
            n: p.n(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self, a: usize, b: usize) -> usize {
        self.counts[a * self.q_blocks + b]
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.p_blocks)
            .map(|a| (0..self.q_blocks).map(|b| self.count(a, b)).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        (0..self.q_blocks)
            .map(|b| (0..self.p_blocks).map(|a| self.count(a, b)).sum())
            .collect()
    }
}

/// Collapses soft responsibilities to hard labels by row-wise argmax,
/// breaking ties toward the lowest block index.
pub fn hard_assignment(mu: &Mat) -> Result<BlockAssignment> {
    let (n, k) = (mu.rows(), mu.cols());
    if n == 0 || k == 0 {
        return Err(Error::InvalidInput("responsibility matrix must be non-empty".into()));
    }
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let row = mu.row(i);
        let mut best = 0usize;
        for (z, &v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "non-finite responsibility at vertex {}, block {}",
                    i + 1,
                    z + 1
                )));
            }
            if v > row[best] {
                best = z;
            }
        }
        labels.push(best);
    }
    BlockAssignment::new(labels, k)
}

/// Variation of information between two partitions, in nats.
pub fn vi(p: &BlockAssignment, q: &BlockAssignment) -> Result<f64> {
    let c = Contingency::from_assignments(p, q)?;
    let n = c.n() as f64;
    let row = c.row_sums();
    let col = c.col_sums();
    let mut total = 0.0;
    for a in 0..p.k() {
        for b in 0..q.k() {
            let nab = c.count(a, b);
            if nab == 0 {
                continue;
            }
            let nab_f = nab as f64;
            // ln(n_a / n_ab) + ln(n_b / n_ab), weighted by n_ab / n
            total += nab_f / n
                * ((row[a] as f64 / nab_f).ln() + (col[b] as f64 / nab_f).ln());
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn asg(labels: &[usize], k: usize) -> BlockAssignment {
        BlockAssignment::new(labels.to_vec(), k).unwrap()
    }

    #[test]
    fn contingency_counts_and_margins() {
        let p = asg(&[0, 0, 1, 1, 1], 2);
        let q = asg(&[0, 1, 1, 1, 2], 3);
        let c = Contingency::from_assignments(&p, &q).unwrap();
        assert_eq!(c.n(), 5);
        assert_eq!(c.count(0, 0), 1);
        assert_eq!(c.count(0, 1), 1);
        assert_eq!(c.count(1, 1), 2);
        assert_eq!(c.count(1, 2), 1);
        assert_eq!(c.row_sums(), vec![2, 3]);
        assert_eq!(c.col_sums(), vec![1, 3, 1]);
    }

    #[test]
    fn mismatched_lengths_are_invalid_input() {
        let p = asg(&[0, 1], 2);
        let q = asg(&[0, 1, 0], 2);
        let err = vi(&p, &q).unwrap_err();
        assert_eq!(err.kind(), crate::error::ErrorKind::Config);
    }

    #[test]
    fn identical_partitions_have_zero_vi() {
        let p = asg(&[0, 1, 2, 1, 0, 2, 2], 3);
        assert_eq!(vi(&p, &p).unwrap(), 0.0);
        // Renaming blocks does not change the partition.
        let renamed = p.relabel(&[2, 0, 1]).unwrap();
        assert_eq!(vi(&p, &renamed).unwrap(), 0.0);
    }

    #[test]
    fn halving_one_block_costs_ln_2() {
        let one = asg(&[0; 8], 1);
        let halves = asg(&[0, 0, 0, 0, 1, 1, 1, 1], 2);
        let d = vi(&one, &halves).unwrap();
        assert!((d - 2.0f64.ln()).abs() < 1e-12);
        // Symmetric in the arguments.
        assert_eq!(vi(&halves, &one).unwrap(), d);
    }

    #[test]
    fn splitting_both_blocks_in_half_costs_ln_2() {
        let p = asg(&[0, 0, 0, 0, 1, 1, 1, 1], 2);
        let q = asg(&[0, 0, 1, 1, 2, 2, 3, 3], 4);
        let d = vi(&p, &q).unwrap();
        assert!((d - 2.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn vi_is_bounded_by_ln_n() {
        let n = 9;
        let singletons = asg(&(0..n).collect::<Vec<_>>(), n);
        let one = asg(&vec![0; n], 1);
        let d = vi(&singletons, &one).unwrap();
        assert!((d - (n as f64).ln()).abs() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let p = asg(&(0..n).map(|_| rng.gen_range(0..4)).collect::<Vec<_>>(), 4);
            let q = asg(&(0..n).map(|_| rng.gen_range(0..3)).collect::<Vec<_>>(), 3);
            let d = vi(&p, &q).unwrap();
            assert!(d >= 0.0);
            assert!(d <= (n as f64).ln() + 1e-12);
        }
    }

    #[test]
    fn vi_satisfies_triangle_inequality_on_random_triples() {
        let n = 12;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut random = |k: usize| {
            let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            asg(&labels, k)
        };
        for _ in 0..30 {
            let a = random(3);
            let b = random(4);
            let c = random(2);
            let ab = vi(&a, &b).unwrap();
            let bc = vi(&b, &c).unwrap();
            let ac = vi(&a, &c).unwrap();
            assert!(ac <= ab + bc + 1e-12);
        }
    }

    #[test]
    fn vi_is_permutation_invariant() {
        let p = asg(&[0, 0, 1, 2, 2, 1, 0], 3);
        let q = asg(&[1, 0, 1, 2, 0, 2, 0], 3);
        let base = vi(&p, &q).unwrap();
        let d = vi(&p.relabel(&[1, 2, 0]).unwrap(), &q.relabel(&[2, 1, 0]).unwrap()).unwrap();
        assert!((d - base).abs() < 1e-12);
    }

    #[test]
    fn hard_assignment_breaks_ties_low() {
        let mu = Mat::from_rows(&[
            vec![0.2, 0.8],
            vec![0.5, 0.5],
            vec![0.9, 0.1],
        ])
        .unwrap();
        let a = hard_assignment(&mu).unwrap();
        assert_eq!(a.as_slice(), &[1, 0, 0]);
        assert_eq!(a.k(), 2);
    }

    #[test]
    fn hard_assignment_rejects_non_finite() {
        let mu = Mat::from_rows(&[vec![f64::NAN, 1.0]]).unwrap();
        assert!(hard_assignment(&mu).is_err());
    }
}
