//! Shared oracle helpers: numerical integration and exhaustive enumeration
//! routines that never touch the library's own closed forms, so agreement
//! is evidence rather than tautology.

#![allow(dead_code)]

use wsbm::mat::Mat;
use wsbm::{Family, WeightedGraph};

/// Composite Simpson on a uniform grid with `points` nodes (odd, >= 3).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, points: usize) -> f64 {
    assert!(points >= 3 && points % 2 == 1);
    let h = (b - a) / (points - 1) as f64;
    let mut acc = f(a) + f(b);
    for i in 1..points - 1 {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64);
    }
    acc * h / 3.0
}

/// Log of a 2-D integral of exp(log_f) over a uniform (x, y) grid via
/// Simpson weights in both axes, with max subtraction for stability.
pub fn log_simpson_2d<F: Fn(f64, f64) -> f64>(
    log_f: F,
    (x0, x1, nx): (f64, f64, usize),
    (y0, y1, ny): (f64, f64, usize),
) -> f64 {
    assert!(nx % 2 == 1 && ny % 2 == 1 && nx >= 3 && ny >= 3);
    let hx = (x1 - x0) / (nx - 1) as f64;
    let hy = (y1 - y0) / (ny - 1) as f64;
    let w1 = |i: usize, n: usize| -> f64 {
        if i == 0 || i == n - 1 {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        }
    };
    let mut vals = Vec::with_capacity(nx * ny);
    let mut max = f64::NEG_INFINITY;
    for i in 0..nx {
        let x = x0 + hx * i as f64;
        for j in 0..ny {
            let v = log_f(x, y0 + hy * j as f64);
            if v > max {
                max = v;
            }
            vals.push(v);
        }
    }
    let mut acc = 0.0;
    for i in 0..nx {
        for j in 0..ny {
            acc += w1(i, nx) * w1(j, ny) * (vals[i * ny + j] - max).exp();
        }
    }
    max + (acc * hx * hy / 9.0).ln()
}

/// Log of the Normal-family pseudo-observation integral
/// I(c) = integral over mean m and precision t of exp(c . eta(m, t)), where
/// eta(m, t) = (m t, -t/2, -(m^2 t)/2 - (1/2) ln(2 pi / t)).
/// Quadrature runs on (v, u) with m = mhat + s0 sinh(v), t = e^u, so the
/// grid resolves the peak finely and still reaches the slow power tails.
pub fn log_normal_pseudo_integral(c: &[f64]) -> f64 {
    assert_eq!(c.len(), 3);
    let (c1, c2, c3) = (c[0], c[1], c[2]);
    assert!(c3 > 0.0 && c2 - c1 * c1 / c3 > 0.0, "improper exponent");
    let mhat = c1 / c3;
    let b2 = c2 - c1 * c1 / c3;
    // Posterior-shape heuristics for grid placement only.
    let that = (c3 + 1.0) / b2;
    let s0 = 1.0 / (c3 * that).sqrt();
    let log_f = |v: f64, u: f64| -> f64 {
        let m = mhat + s0 * v.sinh();
        let t = u.exp();
        let dot = c1 * m * t - c2 * t / 2.0 - c3 * (m * m * t / 2.0)
            - (c3 / 2.0) * ((2.0 * std::f64::consts::PI).ln() - t.ln());
        // Jacobian dm dt = s0 cosh(v) e^u dv du
        dot + s0.ln() + v.cosh().ln() + u
    };
    // The sinh stretch must reach roughly e^{10.5} peak widths: slices with
    // t as small as e^{-21} that still hold ~1e-9 of the mass spread the
    // mean coordinate by a factor e^{10.5} beyond the peak width s0.
    log_simpson_2d(
        log_f,
        (-12.8, 12.8, 3601),
        (that.ln() - 32.0, that.ln() + 4.0, 3601),
    )
}

/// Log marginal likelihood of scalar draws under the Normal family with a
/// conjugate pseudo-observation prior, by 2-D quadrature. The normal base
/// density carries no extra factor, so the integrand with the data folded
/// in is exp((tau0 + sum T(x)) . eta) and the marginal is a ratio of two
/// pseudo-observation integrals.
pub fn normal_log_marginal_quadrature(data: &[f64], tau0: &[f64]) -> f64 {
    let mut c = tau0.to_vec();
    for &x in data {
        c[0] += x;
        c[1] += x * x;
        c[2] += 1.0;
    }
    log_normal_pseudo_integral(&c) - log_normal_pseudo_integral(tau0)
}

/// Exact log marginal of a Bernoulli dataset under the flat prior
/// (pseudo-observations (0, 0), i.e. Beta(1, 1)): s successes and f
/// failures integrate to s! f! / (s + f + 1)!.
pub fn bernoulli_log_marginal_exact(successes: u64, failures: u64) -> f64 {
    let mut log = 0.0;
    for v in 1..=successes {
        log += (v as f64).ln();
    }
    for v in 1..=failures {
        log += (v as f64).ln();
    }
    for v in 1..=(successes + failures + 1) {
        log -= (v as f64).ln();
    }
    log
}

/// Expected per-bundle sufficient statistics by brute force: enumerate all
/// k^n hard labelings, weight each by its product probability under mu,
/// and add up the pair statistics landing in each unordered bundle.
pub fn enumerate_bundle_stats(graph: &WeightedGraph, mu: &Mat, family: Family) -> Vec<Vec<f64>> {
    let n = graph.n();
    let k = mu.cols();
    let dim = family.dim();
    let bundles = k * (k + 1) / 2;
    let index = |a: usize, b: usize| -> usize {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        lo * k - lo * (lo + 1) / 2 + hi
    };
    let mut acc = vec![vec![0.0; dim]; bundles];
    let total = k.pow(n as u32);
    for code in 0..total {
        let mut z = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            z.push(c % k);
            c /= k;
        }
        let mut prob = 1.0;
        for (i, &zi) in z.iter().enumerate() {
            prob *= mu.get(i, zi);
        }
        if prob == 0.0 {
            continue;
        }
        for i in 0..n {
            for j in i + 1..n {
                let t = family.suff_stat(graph.weight(i, j)).unwrap();
                let row = &mut acc[index(z[i], z[j])];
                for (slot, tv) in row.iter_mut().zip(&t) {
                    *slot += prob * tv;
                }
            }
        }
    }
    acc
}

/// Central finite differences of log_partition, one coordinate at a time.
pub fn finite_diff_eta(family: Family, tau: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(tau.len());
    for j in 0..tau.len() {
        let h = 1e-5 * (1.0 + tau[j].abs());
        let mut hi = tau.to_vec();
        let mut lo = tau.to_vec();
        hi[j] += h;
        lo[j] -= h;
        let fhi = family.log_partition(&hi).unwrap();
        let flo = family.log_partition(&lo).unwrap();
        out.push((fhi - flo) / (2.0 * h));
    }
    out
}

/// Dense symmetric matrix from per-pair weights, for building small test
/// graphs without files.
pub fn dense_from_pairs(n: usize, weights: &[(usize, usize, f64)]) -> WeightedGraph {
    let mut w = vec![0.0; n * n];
    for &(i, j, v) in weights {
        w[i * n + j] = v;
        w[j * n + i] = v;
    }
    WeightedGraph::from_dense(n, w, None).unwrap()
}
