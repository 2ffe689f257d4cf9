//! Reward environments with known means.
//!
//! Each arm's reward law is a [`RewardDistribution`] whose exact mean is
//! available in closed form, so pseudo-regret can be accounted from
//! suboptimality gaps instead of noisy realized rewards.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::math;

/// A parameterized reward law for a single arm.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(tag = "dist", rename_all = "snake_case")
)]
pub enum RewardDistribution {
    Gaussian {
        mu: f64,
        sigma: f64,
    },
    /// `shift + Exponential` where the exponential part has mean
    /// `mean_excess` (not rate `mean_excess`).
    ShiftedExponential {
        mean_excess: f64,
        shift: f64,
    },
    /// Logistic with the given mean and variance; the scale parameter is
    /// solved from the variance as `sqrt(3 * variance) / pi`.
    Logistic {
        mu: f64,
        variance: f64,
    },
    Bernoulli {
        p: f64,
    },
}

impl RewardDistribution {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Self::Gaussian { mu, sigma } => mu.is_finite() && sigma.is_finite() && sigma > 0.0,
            Self::ShiftedExponential { mean_excess, shift } => {
                mean_excess.is_finite() && shift.is_finite() && mean_excess > 0.0
            }
            Self::Logistic { mu, variance } => {
                mu.is_finite() && variance.is_finite() && variance > 0.0
            }
            Self::Bernoulli { p } => (0.0..=1.0).contains(&p),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(alloc::format!(
                "invalid reward distribution parameters: {self:?}"
            )))
        }
    }

    /// Exact mean of the law.
    pub fn mean(&self) -> f64 {
        match *self {
            Self::Gaussian { mu, .. } => mu,
            Self::ShiftedExponential { mean_excess, shift } => shift + mean_excess,
            Self::Logistic { mu, .. } => mu,
            Self::Bernoulli { p } => p,
        }
    }

    /// Exact standard deviation of the law.
    pub fn std_dev(&self) -> f64 {
        match *self {
            Self::Gaussian { sigma, .. } => sigma,
            Self::ShiftedExponential { mean_excess, .. } => mean_excess,
            Self::Logistic { variance, .. } => math::sqrt(variance),
            Self::Bernoulli { p } => math::sqrt(p * (1.0 - p)),
        }
    }

    /// One reward draw.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        self.validate()?;
        Ok(match *self {
            Self::Gaussian { mu, sigma } => mu + sigma * rng.sample::<f64, _>(StandardNormal),
            Self::ShiftedExponential { mean_excess, shift } => {
                shift + mean_excess * rng.sample::<f64, _>(Exp1)
            }
            Self::Logistic { mu, variance } => {
                let scale = math::sqrt(3.0 * variance) / core::f64::consts::PI;
                // Inverse CDF on u in (0, 1); the open interval guards ln(0).
                let u = loop {
                    let u: f64 = rng.random();
                    if u > 0.0 {
                        break u;
                    }
                };
                mu + scale * math::ln(u / (1.0 - u))
            }
            Self::Bernoulli { p } => {
                if rng.random_bool(p) {
                    1.0
                } else {
                    0.0
                }
            }
        })
    }
}

/// A fixed set of at least two arms with precomputed means and gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditInstance {
    arms: Vec<RewardDistribution>,
    means: Vec<f64>,
    gaps: Vec<f64>,
    mu_star: f64,
}

impl BanditInstance {
    pub fn new(arms: Vec<RewardDistribution>) -> Result<Self> {
        if arms.len() < 2 {
            return Err(Error::Config(alloc::format!(
                "a bandit instance needs at least 2 arms, got {}",
                arms.len()
            )));
        }
        for arm in &arms {
            arm.validate()?;
        }
        let means: Vec<f64> = arms.iter().map(RewardDistribution::mean).collect();
        let mu_star = means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let gaps = means.iter().map(|m| mu_star - m).collect();
        Ok(Self {
            arms,
            means,
            gaps,
            mu_star,
        })
    }

    #[inline]
    pub fn arm_count(&self) -> usize {
        self.arms.len()
    }

    pub fn arms(&self) -> &[RewardDistribution] {
        &self.arms
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    /// Suboptimality gaps `mu_star - mu_k`; exactly 0 for the best arm.
    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    pub fn mu_star(&self) -> f64 {
        self.mu_star
    }

    /// Mean suboptimality gap across all arms (the best arm contributes 0).
    pub fn mean_gap(&self) -> f64 {
        self.gaps.iter().sum::<f64>() / self.gaps.len() as f64
    }

    pub fn sample_reward<R: Rng + ?Sized>(&self, arm: usize, rng: &mut R) -> Result<f64> {
        self.arms
            .get(arm)
            .ok_or(Error::Config(alloc::format!(
                "arm {arm} out of range for {} arms",
                self.arms.len()
            )))?
            .sample(rng)
    }
}

/// Named instance families used by the experiment presets, plus an explicit
/// escape hatch.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(tag = "kind", rename_all = "snake_case")
)]
pub enum InstanceSpec {
    /// Gaussian arms, means Unif(5, 7), unit variance.
    GaussianUnif {
        arms: usize,
    },
    /// `Exp(mean_excess) + 5` arms with `mean_excess` Unif(0, 2).
    ExpShifted {
        arms: usize,
    },
    /// Logistic arms, means Unif(5, 7), variance 1.
    LogisticUnif {
        arms: usize,
    },
    /// Two Gaussian arms with means `(c+1, c)` and sigma 1.
    TwoArmShift {
        c: f64,
    },
    /// Two Gaussian arms with means `(1, 0)` and common sigma.
    TwoArmScale {
        sigma: f64,
    },
    /// Gaussian arms with means Unif(low, high) and common sigma.
    GaussianRange {
        arms: usize,
        low: f64,
        high: f64,
        sigma: f64,
    },
    Explicit {
        arms: Vec<RewardDistribution>,
    },
}

impl InstanceSpec {
    /// Number of arms the built instance will have.
    pub fn arm_count(&self) -> usize {
        match self {
            Self::GaussianUnif { arms }
            | Self::ExpShifted { arms }
            | Self::LogisticUnif { arms }
            | Self::GaussianRange { arms, .. } => *arms,
            Self::TwoArmShift { .. } | Self::TwoArmScale { .. } => 2,
            Self::Explicit { arms } => arms.len(),
        }
    }
}

/// Build a [`BanditInstance`] from a spec, drawing any random means from
/// `rng`.
pub fn make_instance<R: Rng + ?Sized>(spec: &InstanceSpec, rng: &mut R) -> Result<BanditInstance> {
    let arms = match spec {
        InstanceSpec::GaussianUnif { arms } => {
            return make_instance(
                &InstanceSpec::GaussianRange {
                    arms: *arms,
                    low: 5.0,
                    high: 7.0,
                    sigma: 1.0,
                },
                rng,
            )
        }
        InstanceSpec::ExpShifted { arms } => (0..*arms)
            .map(|_| {
                let mean_excess = loop {
                    let v = rng.random_range(0.0..2.0);
                    if v > 0.0 {
                        break v;
                    }
                };
                RewardDistribution::ShiftedExponential {
                    mean_excess,
                    shift: 5.0,
                }
            })
            .collect(),
        InstanceSpec::LogisticUnif { arms } => (0..*arms)
            .map(|_| RewardDistribution::Logistic {
                mu: rng.random_range(5.0..7.0),
                variance: 1.0,
            })
            .collect(),
        InstanceSpec::TwoArmShift { c } => {
            if !c.is_finite() {
                return Err(Error::Config(alloc::format!(
                    "shift c must be finite, got {c}"
                )));
            }
            alloc::vec![
                RewardDistribution::Gaussian {
                    mu: c + 1.0,
                    sigma: 1.0
                },
                RewardDistribution::Gaussian { mu: *c, sigma: 1.0 },
            ]
        }
        InstanceSpec::TwoArmScale { sigma } => alloc::vec![
            RewardDistribution::Gaussian {
                mu: 1.0,
                sigma: *sigma
            },
            RewardDistribution::Gaussian {
                mu: 0.0,
                sigma: *sigma
            },
        ],
        InstanceSpec::GaussianRange {
            arms,
            low,
            high,
            sigma,
        } => {
            if !(low.is_finite() && high.is_finite() && low < high) {
                return Err(Error::Config(alloc::format!(
                    "mean range must satisfy low < high, got [{low}, {high}]"
                )));
            }
            (0..*arms)
                .map(|_| RewardDistribution::Gaussian {
                    mu: rng.random_range(*low..*high),
                    sigma: *sigma,
                })
                .collect()
        }
        InstanceSpec::Explicit { arms } => arms.clone(),
    };
    BanditInstance::new(arms)
}
