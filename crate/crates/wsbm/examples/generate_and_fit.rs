//! Sample the five-block testbed, fit it, and inspect what the posterior
//! learned about each bundle.

use wsbm::graph::BundleMap;
use wsbm::metrics::vi;
use wsbm::synth::{default_testbed, generate};
use wsbm::{fit, Family, FitConfig, MeanParams};

fn main() {
    let mut spec = default_testbed(120, 100.0).expect("testbed spec");
    spec.seed = 42;
    let (graph, truth) = generate(&spec).expect("generation");
    println!(
        "sampled {} vertices, {} pairs, family {}",
        graph.n(),
        graph.pair_count(),
        spec.family
    );

    let mut config = FitConfig::new(Family::Normal, 5);
    config.seed = 7;
    let result = fit(&graph, &config).expect("fit");
    println!(
        "fit: elbo {:.3}, {} outer iterations, converged: {}, best restart seed {}",
        result.elbo, result.iterations, result.converged, result.seed
    );

    let distance = vi(&result.z, &truth).expect("comparable partitions");
    println!("variation of information against planted labels: {distance:.6}");

    // Posterior bundle means, printed against the generating means. Block
    // labels are recovered only up to permutation, so sort both sides.
    let bundles = BundleMap::new(5).expect("bundle map");
    let mut learned: Vec<f64> = (0..bundles.count())
        .filter_map(|r| match Family::Normal.posterior_mean(result.tau.row(r)) {
            Ok(MeanParams::Normal { mean, .. }) => Some(mean),
            _ => None,
        })
        .collect();
    learned.sort_by(f64::total_cmp);
    let mut target: Vec<f64> = (0..bundles.count()).map(|r| 10.0 * (r + 1) as f64).collect();
    target.sort_by(f64::total_cmp);
    println!("bundle means, learned vs generating:");
    for (l, t) in learned.iter().zip(&target) {
        println!("  {l:8.3}  vs {t:6.1}");
    }
}
