//! Why thresholding weighted edges can destroy the signal: a two-block
//! graph whose within- and between-block weights differ in mean but
//! overlap heavily. Every cutoff maps the two weight distributions to
//! nearly identical edge probabilities, while the weighted model keeps
//! the separation.

use wsbm::baselines::{exceedance_prob, fit_thresholded_sbm, ThresholdPlan};
use wsbm::metrics::vi;
use wsbm::synth::{generate, two_block_demo};
use wsbm::{fit, Family, FitConfig};

fn main() {
    for variance in [25.0, 2500.0] {
        println!("== edge variance {variance} ==");
        // Within-block mean 35, between-block mean 65.
        let mut spec = two_block_demo(120, variance).expect("demo spec");
        spec.seed = 31;
        let (graph, truth) = generate(&spec).expect("generation");

        // What a cutoff at the midpoint does to each weight distribution.
        let p_within = exceedance_prob(35.0, variance, 50.0).expect("probability");
        let p_between = exceedance_prob(65.0, variance, 50.0).expect("probability");
        println!(
            "cutoff 50: within-block edges survive with p = {p_within:.4}, \
             between-block with p = {p_between:.4}"
        );

        let mut config = FitConfig::new(Family::Normal, 2);
        config.seed = 5;
        let weighted = fit(&graph, &config).expect("weighted fit");
        let weighted_vi = vi(&weighted.z, &truth).expect("distance");

        let report =
            fit_thresholded_sbm(&graph, &ThresholdPlan::default_quantiles(), 2, &config)
                .expect("thresholded fits");
        println!("weighted fit:     vi {weighted_vi:.4}");
        let best = report.best_fit();
        for (t, f) in report.thresholds.iter().zip(&report.fits) {
            let d = vi(&f.z, &truth).expect("distance");
            let marker = if std::ptr::eq(f, best) { "  <- best bound" } else { "" };
            println!("  cutoff {t:7.2}: vi {d:.4}{marker}");
        }
        println!();
    }
}
