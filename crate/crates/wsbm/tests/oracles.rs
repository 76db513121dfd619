//! Closed forms checked against independent numerics: quadrature,
//! series summation, exhaustive enumeration, and finite differences.

mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use wsbm::mat::Mat;
use wsbm::vb::expected_bundle_stats;
use wsbm::{fit, Family, FitConfig, WeightedGraph};

/// Hand-derived values of the pseudo-observation integral
/// I(c) = iint exp(c . eta(m, t)) dm dt:
/// - I((0, c2, 1)) = 2 / c2 (Gaussian in m, then exponential in t)
/// - I((0, c2, 3)) = (2 pi sqrt(3))^-1 (2 / c2)^2 (Gaussian, then gamma)
/// Pins the quadrature machinery itself before it judges anything else.
#[test]
fn quadrature_reproduces_hand_integrals() {
    let anchors = [
        (vec![0.0, 1.0, 1.0], 2.0f64.ln()),
        (vec![0.0, 4.0, 1.0], 0.5f64.ln()),
        (vec![0.0, 2.0, 3.0], -(2.0 * PI * 3.0f64.sqrt()).ln()),
    ];
    for (c, exact) in anchors {
        let got = log_normal_pseudo_integral(&c);
        assert!(
            (got - exact).abs() < 1e-7,
            "integral for {c:?}: quadrature {got}, exact {exact}"
        );
    }
}

#[test]
fn normal_log_partition_matches_quadrature() {
    let taus = [
        vec![0.0, 1.0, 1.0],
        vec![3.0, 12.0, 2.0],
        vec![-4.0, 9.0, 4.5],
        vec![70.0, 4903.0, 3.0],
    ];
    for tau in taus {
        let closed = Family::Normal.log_partition(&tau).unwrap();
        let quad = log_normal_pseudo_integral(&tau);
        assert!(
            (closed - quad).abs() < 1e-6,
            "log partition at {tau:?}: closed {closed}, quadrature {quad}"
        );
    }
}

/// Marginal densities must integrate (or sum) to one. This exercises both
/// the log partition and the base measure of every family, because the
/// marginal of a single observation is exp(log h(x) + log Z(tau + T(x)) -
/// log Z(tau)).
#[test]
fn single_observation_marginals_normalize() {
    let marginal = |family: Family, tau: &[f64], x: f64| -> f64 {
        let t = family.suff_stat(x).unwrap();
        let shifted: Vec<f64> = tau.iter().zip(&t).map(|(a, b)| a + b).collect();
        (family.log_h(x).unwrap() + family.log_partition(&shifted).unwrap()
            - family.log_partition(tau).unwrap())
        .exp()
    };

    for tau in [vec![0.0, 0.0], vec![2.0, 5.0]] {
        let total = marginal(Family::Bernoulli, &tau, 0.0) + marginal(Family::Bernoulli, &tau, 1.0);
        assert!((total - 1.0).abs() < 1e-12, "bernoulli {tau:?}: {total}");
    }

    for tau in [vec![0.0, 0.1], vec![7.0, 0.5]] {
        let mut total = 0.0;
        for x in 0..=600 {
            total += marginal(Family::Poisson, &tau, x as f64);
        }
        assert!((total - 1.0).abs() < 1e-9, "poisson {tau:?}: {total}");
    }

    // Substituting x = e^w - tau1 turns the power tail into exponential
    // decay, so a plain Simpson grid suffices.
    for tau in [vec![2.0, 3.0], vec![0.5, 1.0]] {
        let f = |w: f64| -> f64 {
            let x = w.exp() - tau[0];
            if x < 0.0 {
                return 0.0;
            }
            marginal(Family::Exponential, &tau, x) * w.exp()
        };
        let total = simpson(f, tau[0].ln(), tau[0].ln() + 45.0, 120001);
        assert!((total - 1.0).abs() < 1e-8, "exponential {tau:?}: {total}");
    }

    // tau3 >= 7 keeps the predictive tails light enough to truncate.
    for tau in [vec![0.0, 8.0, 7.0], vec![14.0, 36.0, 8.0]] {
        let f = |x: f64| marginal(Family::Normal, &tau, x);
        let center = tau[0] / tau[2];
        let total = simpson(f, center - 300.0, center + 300.0, 120001);
        assert!((total - 1.0).abs() < 1e-8, "normal {tau:?}: {total}");
    }
}

#[test]
fn posterior_mean_probability_matches_beta_quadrature() {
    // Posterior over the success probability is Beta(tau1 + 1,
    // tau2 - tau1 + 1); integrate p against it numerically.
    let tau = [3.0, 10.0];
    let (a, b) = (tau[0] + 1.0, tau[1] - tau[0] + 1.0);
    let dens = |p: f64| p.powf(a - 1.0) * (1.0 - p).powf(b - 1.0);
    let norm = simpson(dens, 1e-12, 1.0 - 1e-12, 40001);
    let mean = simpson(|p| p * dens(p), 1e-12, 1.0 - 1e-12, 40001) / norm;
    match Family::Bernoulli.posterior_mean(&tau).unwrap() {
        wsbm::MeanParams::Bernoulli { p } => assert!((p - mean).abs() < 1e-8),
        other => panic!("wrong family: {other:?}"),
    }
}

#[test]
fn expected_eta_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for family in [
        Family::Bernoulli,
        Family::Poisson,
        Family::Exponential,
        Family::Normal,
    ] {
        for _ in 0..25 {
            let tau = random_proper_tau(family, &mut rng);
            let eta = family.expected_eta(&tau).unwrap();
            let fd = finite_diff_eta(family, &tau);
            for (e, f) in eta.iter().zip(&fd) {
                let rel = (e - f).abs() / e.abs().max(1.0);
                assert!(rel < 1e-5, "{family} at {tau:?}: eta {e}, fd {f}");
            }
        }
    }
}

pub fn random_proper_tau<R: Rng>(family: Family, rng: &mut R) -> Vec<f64> {
    match family {
        Family::Bernoulli => {
            let t1 = rng.gen_range(0.2..6.0);
            vec![t1, t1 + rng.gen_range(0.2..6.0)]
        }
        Family::Poisson => vec![rng.gen_range(0.2..8.0), rng.gen_range(0.1..4.0)],
        Family::Exponential => vec![rng.gen_range(0.1..4.0), rng.gen_range(0.2..8.0)],
        Family::Normal => {
            let t3 = rng.gen_range(0.5..6.0);
            let t1 = rng.gen_range(-4.0..4.0);
            vec![t1, t1 * t1 / t3 + rng.gen_range(0.5..20.0), t3]
        }
    }
}

#[test]
fn bundle_stats_match_exhaustive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // k = 2 on five vertices and k = 3 on four: 32 and 81 labelings.
    for (n, k) in [(5usize, 2usize), (4, 3)] {
        let mut w = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = rng.gen_range(-2.0..2.0);
                w[i * n + j] = v;
                w[j * n + i] = v;
            }
        }
        let g = WeightedGraph::from_dense(n, w, None).unwrap();
        let mut mu = Mat::zeros(n, k);
        for i in 0..n {
            let mut sum = 0.0;
            for z in 0..k {
                let v: f64 = rng.gen_range(0.05..1.0);
                mu.set(i, z, v);
                sum += v;
            }
            for z in 0..k {
                mu.set(i, z, mu.get(i, z) / sum);
            }
        }
        let fast = expected_bundle_stats(&g, &mu, Family::Normal).unwrap();
        let slow = enumerate_bundle_stats(&g, &mu, Family::Normal);
        for r in 0..fast.rows() {
            for d in 0..fast.cols() {
                let diff = (fast.get(r, d) - slow[r][d]).abs();
                assert!(diff < 1e-10, "bundle {r} stat {d}: off by {diff}");
            }
        }
    }
}

#[test]
fn one_block_bernoulli_fit_equals_exact_marginal() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for trial in 0..6 {
        let n = rng.gen_range(2..=6);
        let mut w = vec![0.0; n * n];
        let mut ones = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                let v = if rng.gen_bool(0.5) { 1.0 } else { 0.0 };
                ones += v as u64;
                w[i * n + j] = v;
                w[j * n + i] = v;
            }
        }
        let pairs = (n * (n - 1) / 2) as u64;
        let g = WeightedGraph::from_dense(n, w, Some(Family::Bernoulli)).unwrap();
        let mut config = FitConfig::new(Family::Bernoulli, 1);
        config.restarts = 1;
        let result = fit(&g, &config).unwrap();
        let exact = bernoulli_log_marginal_exact(ones, pairs - ones);
        assert!(
            (result.elbo - exact).abs() < 1e-9,
            "trial {trial}: fit {} vs exact {exact}",
            result.elbo
        );
    }
}

#[test]
fn one_block_normal_fit_matches_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let n = 4;
    let mut w = vec![0.0; n * n];
    let mut data = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v: f64 = rng.gen_range(-3.0..3.0);
            data.push(v);
            w[i * n + j] = v;
            w[j * n + i] = v;
        }
    }
    let g = WeightedGraph::from_dense(n, w, Some(Family::Normal)).unwrap();
    let mut config = FitConfig::new(Family::Normal, 1);
    config.restarts = 1;
    let result = fit(&g, &config).unwrap();
    let quad = normal_log_marginal_quadrature(&data, &config.tau0);
    assert!(
        (result.elbo - quad).abs() < 1e-6,
        "fit {} vs quadrature {quad}",
        result.elbo
    );
}
