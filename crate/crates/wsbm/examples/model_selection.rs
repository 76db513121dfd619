//! Choose the number of blocks by evidence: fit every candidate and keep
//! the largest bound. Differences of bounds approximate log Bayes factors
//! between candidates.

use wsbm::selection::{log_bayes_factor, select_k};
use wsbm::synth::{default_testbed, generate};
use wsbm::{Family, FitConfig};

fn main() {
    let mut spec = default_testbed(120, 100.0).expect("testbed spec");
    spec.seed = 3;
    let (graph, _) = generate(&spec).expect("generation");

    let mut base = FitConfig::new(Family::Normal, 2);
    base.seed = 19;
    let report = select_k(&graph, &base, 2, 8).expect("selection");

    print!("{}", report.to_csv());
    let chosen = report.chosen();
    println!("chosen k = {} (data were planted with k = 5)", chosen.k);

    // How decisively does the winner beat its neighbours?
    for entry in &report.entries {
        if entry.k == chosen.k {
            continue;
        }
        let lbf = log_bayes_factor(&chosen.result, &entry.result).expect("same graph");
        println!("log Bayes factor vs k = {}: {lbf:.2}", entry.k);
    }
}
