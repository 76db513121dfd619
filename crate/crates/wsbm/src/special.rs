//! Scalar special functions used by the exponential-family layer.
//!
//! `ln_gamma` and `digamma` are adapted from the statrs crate
//! (https://github.com/statrs-dev/statrs), version 0.16, Copyright (c) 2016
//! Michael Ma, distributed under the MIT license. `erfc` implements the
//! rational Chebyshev approximation of W. J. Cody, "Rational Chebyshev
//! approximation for the error function", Mathematics of Computation 23
//! (1969), the same scheme used by the netlib CALERF routine.

#![allow(clippy::excessive_precision)]

use std::f64::consts::{E, FRAC_1_SQRT_2, PI};

/// ln(pi)
pub const LN_PI: f64 = 1.1447298858494001741434273513530587116472948129153;

/// ln(2 * sqrt(e / pi))
const LN_2_SQRT_E_OVER_PI: f64 = 0.6207822376352452223455184457816472122518527279025978;

/// Auxiliary variable when evaluating `ln_gamma`.
const GAMMA_R: f64 = 10.900511;

/// Polynomial coefficients for approximating `ln_gamma`.
const GAMMA_DK: &[f64] = &[
    2.48574089138753565546e-5,
    1.05142378581721974210,
    -3.45687097222016235469,
    4.51227709466894823700,
    -2.98285225323576655721,
    1.05639711577126713077,
    -1.95428773191645869583e-1,
    1.70970543404441224307e-2,
    -5.71926117404305781283e-4,
    4.63399473359905636708e-6,
    -2.71994908488607703910e-9,
];

/// Natural log of the gamma function, accurate to about 16 significant
/// digits. Derived from "An Analysis of the Lanczos Gamma Approximation",
/// Glendon Ralph Pugh, 2004, p. 116.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, t| s + t.1 / (t.0 as f64 - x));

        LN_PI - (PI * x).sin().ln() - s.ln() - LN_2_SQRT_E_OVER_PI - (0.5 - x) * ((0.5 - x + GAMMA_R) / E).ln()
    } else {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, t| s + t.1 / (x + t.0 as f64 - 1.0));

        s.ln() + LN_2_SQRT_E_OVER_PI + (x - 0.5) * ((x - 0.5 + GAMMA_R) / E).ln()
    }
}

/// ln of the Beta function, `ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)`.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// Derivative of `ln_gamma`. Based on "Algorithm AS 103", Jose Bernardo,
/// Applied Statistics, Volume 25, Number 3, 1976, pages 315-317.
pub fn digamma(x: f64) -> f64 {
    let c = 12.0;
    let d1 = -0.57721566490153286;
    let d2 = 1.6449340668482264365;
    let s = 1e-6;
    let s3 = 1.0 / 12.0;
    let s4 = 1.0 / 120.0;
    let s5 = 1.0 / 252.0;
    let s6 = 1.0 / 240.0;
    let s7 = 1.0 / 132.0;

    if x == f64::NEG_INFINITY || x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x.floor() == x {
        return f64::NEG_INFINITY;
    }
    if x < 0.0 {
        return digamma(1.0 - x) + PI / (-PI * x).tan();
    }
    if x <= s {
        return d1 - 1.0 / x + d2 * x;
    }

    let mut result = 0.0;
    let mut z = x;
    while z < c {
        result -= 1.0 / z;
        z += 1.0;
    }

    if z >= c {
        let mut r = 1.0 / z;
        result += z.ln() - 0.5 * r;
        r *= r;
        result -= r * (s3 - r * (s4 - r * (s5 - r * (s6 - r * s7))));
    }

    result
}

const ERF_A: [f64; 5] = [
    3.16112374387056560e0,
    1.13864154151050156e2,
    3.77485237685302021e2,
    3.20937758913846947e3,
    1.85777706184603153e-1,
];
const ERF_B: [f64; 4] = [
    2.36012909523441209e1,
    2.44024637934444173e2,
    1.28261652607737228e3,
    2.84423683343917062e3,
];
const ERF_C: [f64; 9] = [
    5.64188496988670089e-1,
    8.88314979438837594e0,
    6.61191906371416295e1,
    2.98635138197400131e2,
    8.81952221241769090e2,
    1.71204761263407058e3,
    2.05107837782607147e3,
    1.23033935479799725e3,
    2.15311535474403846e-8,
];
const ERF_D: [f64; 8] = [
    1.57449261107098347e1,
    1.17693950891312499e2,
    5.37181101862009858e2,
    1.62138957456669019e3,
    3.29079923573345963e3,
    4.36261909014324716e3,
    3.43936767414372164e3,
    1.23033935480374942e3,
];
const ERF_P: [f64; 6] = [
    3.05326634961232344e-1,
    3.60344899949804439e-1,
    1.25781726111229246e-1,
    1.60837851487422766e-2,
    6.58749161529837803e-4,
    1.63153871373020978e-2,
];
const ERF_Q: [f64; 5] = [
    2.56852019228982242e0,
    1.87295284992346047e0,
    5.27905102951428412e-1,
    6.05183413124413191e-2,
    2.33520497626869185e-3,
];

/// 1 / sqrt(pi)
const FRAC_1_SQRT_PI: f64 = 0.56418958354775628695;

/// Splits exp(-y^2) as exp(-hi^2) * exp(-(y-hi)(y+hi)) with hi a multiple
/// of 1/16, which keeps the argument reduction exact and the tail accurate.
fn exp_neg_y_squared(y: f64) -> f64 {
    let hi = (y * 16.0).trunc() / 16.0;
    let del = (y - hi) * (y + hi);
    (-hi * hi).exp() * (-del).exp()
}

/// Complementary error function, relative accuracy about 1e-15 on the
/// positive axis down to the underflow threshold near x = 26.5.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let y = x.abs();
    let result = if y <= 0.46875 {
        let ysq = if y > 1.11e-16 { y * y } else { 0.0 };
        let mut num = ERF_A[4] * ysq;
        let mut den = ysq;
        for i in 0..3 {
            num = (num + ERF_A[i]) * ysq;
            den = (den + ERF_B[i]) * ysq;
        }
        let erf = x * (num + ERF_A[3]) / (den + ERF_B[3]);
        return 1.0 - erf;
    } else if y <= 4.0 {
        let mut num = ERF_C[8] * y;
        let mut den = y;
        for i in 0..7 {
            num = (num + ERF_C[i]) * y;
            den = (den + ERF_D[i]) * y;
        }
        exp_neg_y_squared(y) * (num + ERF_C[7]) / (den + ERF_D[7])
    } else if y < 26.543 {
        let ysq = 1.0 / (y * y);
        let mut num = ERF_P[5] * ysq;
        let mut den = ysq;
        for i in 0..4 {
            num = (num + ERF_P[i]) * ysq;
            den = (den + ERF_Q[i]) * ysq;
        }
        let r = ysq * (num + ERF_P[4]) / (den + ERF_Q[4]);
        exp_neg_y_squared(y) * (FRAC_1_SQRT_PI - r) / y
    } else {
        0.0
    };
    if x < 0.0 {
        2.0 - result
    } else {
        result
    }
}

/// Standard normal cumulative distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x * FRAC_1_SQRT_2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_rel(actual: f64, expected: f64, tol: f64) {
        let denom = expected.abs().max(1e-300);
        let rel = (actual - expected).abs() / denom;
        assert!(
            rel <= tol,
            "actual {actual:e} vs expected {expected:e}: rel err {rel:e} > {tol:e}"
        );
    }

    // Reference values computed with mpmath at 30 significant digits.
    const LN_GAMMA_REFS: &[(f64, f64)] = &[
        (0.001, 6.9071788853838536825),
        (0.005, 5.2954517999821278812),
        (0.02, 3.9008045160983759721),
        (0.1, 2.2527126517342059599),
        (0.25, 1.2880225246980774574),
        (0.5, 0.57236494292470008707),
        (1.0, 0.0),
        (1.5, -0.12078223763524522235),
        (2.0, 0.0),
        (3.7, 1.4280723266653879219),
        (5.5, 3.9578139676187162939),
        (10.0, 12.801827480081469611),
        (42.5, 115.90007047041453012),
        (123.456, 469.60554712992946873),
        (1000.0, 5905.2204232091812118),
        (12345.678, 103959.91990554606092),
        (1000000.0, 12815504.56914761166),
    ];

    const DIGAMMA_REFS: &[(f64, f64)] = &[
        (0.001, -1000.5755719318103005),
        (0.005, -200.56902091134438283),
        (0.02, -50.544789310456179789),
        (0.1, -10.423754940411076795),
        (0.25, -4.2274535333762654081),
        (0.5, -1.9635100260214234794),
        (1.0, -0.57721566490153286061),
        (1.5, 0.036489973978576520559),
        (2.0, 0.42278433509846713939),
        (3.7, 1.1671535393615113859),
        (5.5, 1.6110931485817511237),
        (10.0, 2.2517525890667211076),
        (42.5, 3.7376932365000936171),
        (123.456, 4.8118293238289853873),
        (1000.0, 6.9072551956488120521),
        (12345.678, 9.4210208207417608869),
        (1000000.0, 13.815510057964190771),
    ];

    const ERFC_REFS: &[(f64, f64)] = &[
        (-8.0, 2.0),
        (-4.0, 1.9999999845827420997),
        (-2.5, 1.9995930479825550411),
        (-1.0, 1.8427007929497148693),
        (-0.3, 1.3286267594591274276),
        (0.0, 1.0),
        (0.3, 0.67137324054087257236),
        (1.0, 0.15729920705028513066),
        (2.5, 0.00040695201744495893956),
        (4.0, 1.5417257900280018852e-8),
        (8.0, 1.122429717298292708e-29),
        (15.0, 7.2129941724512066666e-100),
        (25.0, 8.300172571196522752e-274),
    ];

    const NORMAL_CDF_REFS: &[(f64, f64)] = &[
        (-6.0, 9.865876450376981407e-10),
        (-3.0, 0.0013498980316300945267),
        (-0.3, 0.38208857781104736269),
        (0.0, 0.5),
        (0.3, 0.61791142218895263731),
        (1.0, 0.84134474606854294859),
        (3.0, 0.99865010196836990547),
        (6.0, 0.99999999901341235496),
    ];

    #[test]
    fn ln_gamma_matches_references() {
        for &(x, want) in LN_GAMMA_REFS {
            if want == 0.0 {
                assert!(ln_gamma(x).abs() < 1e-14, "ln_gamma({x}) = {}", ln_gamma(x));
            } else {
                assert_rel(ln_gamma(x), want, 1e-13);
            }
        }
    }

    #[test]
    fn ln_gamma_recurrence() {
        // ln_gamma(x + 1) = ln_gamma(x) + ln(x)
        for &x in &[0.3, 1.7, 4.2, 9.9, 55.5] {
            let lhs = ln_gamma(x + 1.0);
            let rhs = ln_gamma(x) + x.ln();
            assert_rel(lhs, rhs, 1e-13);
        }
    }

    #[test]
    fn ln_beta_symmetry_and_value() {
        // B(1, 1) = 1, B(2, 3) = 1/12
        assert!(ln_beta(1.0, 1.0).abs() < 1e-14);
        assert_rel(ln_beta(2.0, 3.0), (1.0f64 / 12.0).ln(), 1e-13);
        assert_rel(ln_beta(3.5, 0.7), ln_beta(0.7, 3.5), 1e-15);
    }

    #[test]
    fn digamma_matches_references() {
        for &(x, want) in DIGAMMA_REFS {
            assert_rel(digamma(x), want, 1e-12);
        }
    }

    #[test]
    fn digamma_recurrence() {
        // digamma(x + 1) = digamma(x) + 1/x
        for &x in &[0.2, 1.1, 6.3, 77.7] {
            assert_rel(digamma(x + 1.0), digamma(x) + 1.0 / x, 1e-12);
        }
    }

    #[test]
    fn erfc_matches_references() {
        for &(x, want) in ERFC_REFS {
            assert_rel(erfc(x), want, 1e-13);
        }
    }

    #[test]
    fn erfc_reflection_and_tail() {
        for &x in &[0.1, 0.7, 1.9, 3.3, 5.5] {
            let lhs = erfc(-x);
            let rhs = 2.0 - erfc(x);
            assert_rel(lhs, rhs, 1e-15);
        }
        assert_eq!(erfc(27.0), 0.0);
        assert_eq!(erfc(-27.0), 2.0);
    }

    #[test]
    fn normal_cdf_matches_references() {
        for &(x, want) in NORMAL_CDF_REFS {
            assert_rel(normal_cdf(x), want, 1e-13);
        }
    }

    #[test]
    fn normal_cdf_is_monotone() {
        let xs: Vec<f64> = (-60..=60).map(|i| i as f64 / 10.0).collect();
        for w in xs.windows(2) {
            assert!(normal_cdf(w[0]) < normal_cdf(w[1]));
        }
    }
}
