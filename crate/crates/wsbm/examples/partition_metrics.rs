//! The variation of information in small, checkable pieces: hand fixtures
//! with known distances, metric behaviour on random partitions, and the
//! hard assignment extracted from a soft fit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wsbm::metrics::{hard_assignment, vi};
use wsbm::synth::{default_testbed, generate};
use wsbm::{fit, BlockAssignment, Family, FitConfig};

fn main() {
    let n = 12;
    let one_block = BlockAssignment::new(vec![0; n], 1).unwrap();
    let halves =
        BlockAssignment::new((0..n).map(|i| usize::from(i >= n / 2)).collect(), 2).unwrap();
    let quarters =
        BlockAssignment::new((0..n).map(|i| i / (n / 4)).collect(), 4).unwrap();

    println!("one block vs itself:      {:.6}", vi(&one_block, &one_block).unwrap());
    println!(
        "one block vs two halves:  {:.6} (ln 2 = {:.6})",
        vi(&one_block, &halves).unwrap(),
        2.0f64.ln()
    );
    println!(
        "halves vs quarters:       {:.6} (refinement costs ln 2 again)",
        vi(&halves, &quarters).unwrap()
    );

    // Distances are invariant to relabeling and bounded by ln n.
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let a = random_partition(n, &mut rng);
        let b = random_partition(n, &mut rng);
        worst = worst.max(vi(&a, &b).unwrap());
    }
    println!(
        "largest distance over 1000 random pairs: {worst:.4} (bound ln {n} = {:.4})",
        (n as f64).ln()
    );

    // A fit reports soft responsibilities; the hard partition is their
    // row-wise argmax.
    let spec = default_testbed(80, 50.0).unwrap();
    let (graph, truth) = generate(&spec).unwrap();
    let result = fit(&graph, &FitConfig::new(Family::Normal, 5)).unwrap();
    let z = hard_assignment(&result.mu).unwrap();
    assert_eq!(z, result.z);
    println!(
        "testbed fit vs planted labels: {:.6}",
        vi(&z, &truth).unwrap()
    );
}

fn random_partition(n: usize, rng: &mut ChaCha8Rng) -> BlockAssignment {
    let k = rng.gen_range(1..=5);
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    let k = labels.iter().max().unwrap() + 1;
    BlockAssignment::new(labels, k).unwrap()
}
