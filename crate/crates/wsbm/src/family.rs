//! Exponential-family edge-weight distributions with conjugate priors.
//!
//! Each family fixes a sufficient statistic `T(x)`, a base measure term
//! `log h(x)`, and a conjugate prior over its natural parameters encoded as
//! a pseudo-observation vector `tau` of the same dimension as `T`. The two
//! quantities inference needs are the log normalizer `log Z(tau)` of the
//! conjugate distribution and its gradient `expected_eta(tau)`, which equals
//! the posterior expectation of the natural parameters.
//!
//! Layout of `tau` mirrors `T(x)`:
//!
//! - `bernoulli`: `T = (x, 1)`, Beta posterior with `alpha = tau[0] + 1`,
//!   `beta = tau[1] - tau[0] + 1`.
//! - `poisson`: `T = (x, 1)`, Gamma posterior on the rate with
//!   `shape = tau[0] + 1`, `rate = tau[1]`.
//! - `exponential`: `T = (x, 1)`, Gamma posterior on the rate with
//!   `shape = tau[1] + 1`, `rate = tau[0]`.
//! - `normal`: `T = (x, x^2, 1)`, Normal-Gamma posterior over mean and
//!   precision.

use crate::error::{Error, Result};
use crate::special::{digamma, ln_beta, ln_gamma};
use rand::Rng;
use rand_distr::{Distribution, Exp, Normal, Poisson};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

pub const FAMILY_NAMES: [&str; 4] = ["bernoulli", "poisson", "exponential", "normal"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Bernoulli,
    Poisson,
    Exponential,
    Normal,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::Bernoulli => "bernoulli",
            Family::Poisson => "poisson",
            Family::Exponential => "exponential",
            Family::Normal => "normal",
        };
        f.write_str(name)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bernoulli" => Ok(Family::Bernoulli),
            "poisson" => Ok(Family::Poisson),
            "exponential" => Ok(Family::Exponential),
            "normal" => Ok(Family::Normal),
            other => Err(Error::InvalidInput(format!(
                "unknown family {other:?}, expected one of {}",
                FAMILY_NAMES.join(", ")
            ))),
        }
    }
}

/// Mean-style parameters, the natural way to describe a weight distribution
/// when generating data or reporting a fitted bundle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MeanParams {
    Bernoulli {
        p: f64,
    },
    Poisson {
        lambda: f64,
    },
    Exponential {
        rate: f64,
    },
    Normal {
        mean: f64,
        /// `None` when reporting a posterior whose precision has too little
        /// mass for the expected variance to exist.
        variance: Option<f64>,
    },
}

impl MeanParams {
    pub fn family(&self) -> Family {
        match self {
            MeanParams::Bernoulli { .. } => Family::Bernoulli,
            MeanParams::Poisson { .. } => Family::Poisson,
            MeanParams::Exponential { .. } => Family::Exponential,
            MeanParams::Normal { .. } => Family::Normal,
        }
    }

    /// Checks that the parameters belong to `family` and are usable for
    /// sampling, except that a missing normal variance is tolerated here
    /// and rejected only by [`Family::sample_weight`].
    pub fn validate_for(&self, family: Family) -> Result<()> {
        if self.family() != family {
            return Err(Error::InvalidInput(format!(
                "expected {family} parameters, found {} parameters",
                self.family()
            )));
        }
        match *self {
            MeanParams::Bernoulli { p } => {
                if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidInput(format!(
                        "bernoulli probability must lie in [0, 1], got {p}"
                    )));
                }
            }
            MeanParams::Poisson { lambda } => {
                if !lambda.is_finite() || lambda <= 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "poisson mean must be positive, got {lambda}"
                    )));
                }
            }
            MeanParams::Exponential { rate } => {
                if !rate.is_finite() || rate <= 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "exponential rate must be positive, got {rate}"
                    )));
                }
            }
            MeanParams::Normal { mean, variance } => {
                if !mean.is_finite() {
                    return Err(Error::InvalidInput(format!(
                        "normal mean must be finite, got {mean}"
                    )));
                }
                if let Some(v) = variance {
                    if !v.is_finite() || v <= 0.0 {
                        return Err(Error::InvalidInput(format!(
                            "normal variance must be positive, got {v}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl Family {
    /// Dimension of the sufficient statistic and of `tau`.
    pub fn dim(self) -> usize {
        match self {
            Family::Normal => 3,
            _ => 2,
        }
    }

    pub fn supports(self, x: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        match self {
            Family::Bernoulli => x == 0.0 || x == 1.0,
            Family::Poisson => x >= 0.0 && x.fract() == 0.0,
            Family::Exponential => x >= 0.0,
            Family::Normal => true,
        }
    }

    pub fn check_support(self, x: f64) -> Result<()> {
        if self.supports(x) {
            Ok(())
        } else {
            Err(Error::UnsupportedWeight {
                family: self,
                value: x,
                i: 0,
                j: 0,
            })
        }
    }

    /// Sufficient statistic `T(x)`.
    pub fn suff_stat(self, x: f64) -> Result<Vec<f64>> {
        self.check_support(x)?;
        let mut out = vec![0.0; self.dim()];
        self.suff_stat_into(x, &mut out);
        Ok(out)
    }

    /// `T(x)` written into a scratch slice; the caller guarantees support.
    #[inline]
    pub(crate) fn suff_stat_into(self, x: f64, out: &mut [f64]) {
        debug_assert!(self.supports(x));
        match self {
            Family::Normal => {
                out[0] = x;
                out[1] = x * x;
                out[2] = 1.0;
            }
            _ => {
                out[0] = x;
                out[1] = 1.0;
            }
        }
    }

    /// Log base measure `log h(x)`; zero except for the Poisson factorial.
    pub fn log_h(self, x: f64) -> Result<f64> {
        self.check_support(x)?;
        Ok(match self {
            Family::Poisson => -ln_gamma(x + 1.0),
            _ => 0.0,
        })
    }

    /// Prior pseudo-observations that keep every reachable posterior proper
    /// while staying weak (about one pseudo-edge of mass).
    pub fn default_prior(self) -> Vec<f64> {
        match self {
            Family::Bernoulli => vec![0.0, 0.0],
            Family::Poisson => vec![0.0, 0.1],
            Family::Exponential => vec![0.1, 0.0],
            Family::Normal => vec![0.0, 1.0, 1.0],
        }
    }

    /// Validates length, finiteness, and the properness constraints under
    /// which `log_partition` is a convergent integral.
    pub fn check_tau(self, tau: &[f64]) -> Result<()> {
        if tau.len() != self.dim() {
            return Err(Error::InvalidInput(format!(
                "tau for {self} must have {} components, got {}",
                self.dim(),
                tau.len()
            )));
        }
        if let Some(bad) = tau.iter().find(|t| !t.is_finite()) {
            return Err(Error::ImproperTau {
                family: self,
                constraint: format!("all components must be finite, got {bad}"),
            });
        }
        let fail = |constraint: String| Err(Error::ImproperTau { family: self, constraint });
        match self {
            Family::Bernoulli => {
                if tau[0] + 1.0 <= 0.0 {
                    return fail(format!("tau[0] + 1 must be positive, got {}", tau[0] + 1.0));
                }
                if tau[1] - tau[0] + 1.0 <= 0.0 {
                    return fail(format!(
                        "tau[1] - tau[0] + 1 must be positive, got {}",
                        tau[1] - tau[0] + 1.0
                    ));
                }
            }
            Family::Poisson => {
                if tau[0] + 1.0 <= 0.0 {
                    return fail(format!("tau[0] + 1 must be positive, got {}", tau[0] + 1.0));
                }
                if tau[1] <= 0.0 {
                    return fail(format!("tau[1] must be positive, got {}", tau[1]));
                }
            }
            Family::Exponential => {
                if tau[1] + 1.0 <= 0.0 {
                    return fail(format!("tau[1] + 1 must be positive, got {}", tau[1] + 1.0));
                }
                if tau[0] <= 0.0 {
                    return fail(format!("tau[0] must be positive, got {}", tau[0]));
                }
            }
            Family::Normal => {
                if tau[2] <= 0.0 {
                    return fail(format!("tau[2] must be positive, got {}", tau[2]));
                }
                let b2 = tau[1] - tau[0] * tau[0] / tau[2];
                if b2 <= 0.0 {
                    return fail(format!(
                        "tau[1] - tau[0]^2 / tau[2] must be positive, got {b2}"
                    ));
                }
            }
        }
        Ok(())
    }

    /// Log normalizer of the conjugate distribution with pseudo-observation
    /// vector `tau`.
    pub fn log_partition(self, tau: &[f64]) -> Result<f64> {
        self.check_tau(tau)?;
        Ok(match self {
            Family::Bernoulli => ln_beta(tau[0] + 1.0, tau[1] - tau[0] + 1.0),
            Family::Poisson => {
                let shape = tau[0] + 1.0;
                ln_gamma(shape) - shape * tau[1].ln()
            }
            Family::Exponential => {
                let shape = tau[1] + 1.0;
                ln_gamma(shape) - shape * tau[0].ln()
            }
            Family::Normal => {
                let a = (tau[2] + 1.0) / 2.0;
                let b = (tau[1] - tau[0] * tau[0] / tau[2]) / 2.0;
                ((1.0 - tau[2]) / 2.0) * (2.0 * PI).ln() - 0.5 * tau[2].ln() + ln_gamma(a)
                    - a * b.ln()
            }
        })
    }

    /// Gradient of `log_partition` at `tau`, equal to the expected natural
    /// parameters under the conjugate distribution.
    pub fn expected_eta(self, tau: &[f64]) -> Result<Vec<f64>> {
        self.check_tau(tau)?;
        let mut out = vec![0.0; self.dim()];
        self.expected_eta_into(tau, &mut out);
        Ok(out)
    }

    /// Gradient written into a scratch slice; the caller guarantees `tau`
    /// has already passed `check_tau`.
    pub(crate) fn expected_eta_into(self, tau: &[f64], out: &mut [f64]) {
        match self {
            Family::Bernoulli => {
                let alpha = tau[0] + 1.0;
                let beta = tau[1] - tau[0] + 1.0;
                let dg_beta = digamma(beta);
                out[0] = digamma(alpha) - dg_beta;
                out[1] = dg_beta - digamma(alpha + beta);
            }
            Family::Poisson => {
                let shape = tau[0] + 1.0;
                out[0] = digamma(shape) - tau[1].ln();
                out[1] = -shape / tau[1];
            }
            Family::Exponential => {
                let shape = tau[1] + 1.0;
                out[0] = -shape / tau[0];
                out[1] = digamma(shape) - tau[0].ln();
            }
            Family::Normal => {
                let t1 = tau[0];
                let t2 = tau[1];
                let t3 = tau[2];
                let b2 = t2 - t1 * t1 / t3;
                let a = (t3 + 1.0) / 2.0;
                out[0] = (t3 + 1.0) * t1 / (t3 * b2);
                out[1] = -(t3 + 1.0) / (2.0 * b2);
                out[2] = -0.5 * (2.0 * PI).ln() - 1.0 / (2.0 * t3) + 0.5 * digamma(a)
                    - 0.5 * (b2 / 2.0).ln()
                    - (t3 + 1.0) * t1 * t1 / (2.0 * t3 * t3 * b2);
            }
        }
    }

    /// Posterior expectation of the mean-style parameters at `tau`.
    pub fn posterior_mean(self, tau: &[f64]) -> Result<MeanParams> {
        self.check_tau(tau)?;
        Ok(match self {
            Family::Bernoulli => MeanParams::Bernoulli {
                p: (tau[0] + 1.0) / (tau[1] + 2.0),
            },
            Family::Poisson => MeanParams::Poisson {
                lambda: (tau[0] + 1.0) / tau[1],
            },
            Family::Exponential => MeanParams::Exponential {
                rate: (tau[1] + 1.0) / tau[0],
            },
            Family::Normal => {
                let mean = tau[0] / tau[2];
                let variance = if tau[2] > 1.0 {
                    Some((tau[1] - tau[0] * tau[0] / tau[2]) / (tau[2] - 1.0))
                } else {
                    None
                };
                MeanParams::Normal { mean, variance }
            }
        })
    }

    /// Draws one edge weight from the distribution described by `params`.
    pub fn sample_weight<R: Rng + ?Sized>(self, params: &MeanParams, rng: &mut R) -> Result<f64> {
        params.validate_for(self)?;
        Ok(match *params {
            MeanParams::Bernoulli { p } => {
                if rng.gen::<f64>() < p {
                    1.0
                } else {
                    0.0
                }
            }
            MeanParams::Poisson { lambda } => {
                let dist = Poisson::new(lambda)
                    .map_err(|e| Error::InvalidInput(format!("poisson mean {lambda}: {e}")))?;
                dist.sample(rng)
            }
            MeanParams::Exponential { rate } => {
                let dist = Exp::new(rate)
                    .map_err(|e| Error::InvalidInput(format!("exponential rate {rate}: {e}")))?;
                dist.sample(rng)
            }
            MeanParams::Normal { mean, variance } => {
                let v = variance.ok_or_else(|| {
                    Error::InvalidInput("normal variance is required for sampling".into())
                })?;
                let dist = Normal::new(mean, v.sqrt())
                    .map_err(|e| Error::InvalidInput(format!("normal({mean}, {v}): {e}")))?;
                dist.sample(rng)
            }
        })
    }
}
