//! Arm-index rules and bootstrap-leader selection.
//!
//! Every policy scores each arm with a (possibly randomized) index and pulls
//! the argmax. The residual-bootstrap index perturbs the sample mean with
//! weighted residuals plus two pseudo residuals `±sqrt(s+2)*sigma_a`;
//! conditional on the history it has mean `Ybar` and variance
//! `(s+2)^{-2} (RSS + PRSS)` for any zero-mean unit-variance weight law.
//! With Gaussian weights the index is exactly Gaussian, which gives an O(1)
//! fast path over the incremental statistics: no history needs to be stored.
//!
//! Baselines: vanilla residual bootstrap (no pseudo residuals, variance
//! `RSS / s^2`), follow-the-leader, Gaussian Thompson sampling with an
//! N(0, 1) prior and unit observation variance, Giro (bootstrap over a
//! {0, 1}-augmented history), and PHE (binomial pseudo-reward injection).

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Binomial, Distribution, StandardNormal};

use crate::armstats::{check_sigma_a, prss, pseudo_residuals, ArmStats, History};
use crate::error::{Error, Result};
use crate::math;
use crate::weights::WeightDistribution;

/// Which index rule to run, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(tag = "kind", rename_all = "snake_case")
)]
pub enum PolicySpec {
    /// Residual bootstrap exploration, Gaussian-weight fast path.
    RebootGaussian { sigma_a: f64 },
    /// Residual bootstrap exploration with explicit per-round resampling.
    RebootGeneric {
        sigma_a: f64,
        weights: WeightDistribution,
    },
    /// Residual bootstrap without pseudo residuals.
    VanillaRb { weights: WeightDistribution },
    /// Follow the leader: the raw sample mean.
    Ftl,
    /// Thompson sampling under an N(0, 1) prior and unit reward variance.
    GaussianTs,
    /// History bootstrap with `a` pseudo rewards of 0 and `a` of 1 per
    /// observation.
    Giro { a: u32 },
    /// Perturbed-history exploration: Binomial(ceil(a*s), 1/2) pseudo reward
    /// mass added to the reward sum.
    Phe { a: f64 },
}

impl PolicySpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::RebootGaussian { sigma_a } | Self::RebootGeneric { sigma_a, .. } => {
                check_sigma_a(sigma_a)
            }
            Self::Giro { a } => {
                if a == 0 {
                    Err(Error::Domain {
                        condition: "a >= 1",
                        value: 0.0,
                    })
                } else {
                    Ok(())
                }
            }
            Self::Phe { a } => {
                if a.is_finite() && a > 0.0 {
                    Ok(())
                } else {
                    Err(Error::Domain {
                        condition: "a > 0",
                        value: a,
                    })
                }
            }
            Self::VanillaRb { .. } | Self::Ftl | Self::GaussianTs => Ok(()),
        }
    }

    /// Whether the policy must keep raw reward histories; the others run off
    /// `ArmStats` alone, preserving O(K) storage.
    pub fn needs_history(&self) -> bool {
        matches!(
            self,
            Self::RebootGeneric { .. } | Self::VanillaRb { .. } | Self::Giro { .. }
        )
    }

    /// Short stable name used for CSV files and report rows.
    pub fn label(&self) -> String {
        match self {
            Self::RebootGaussian { sigma_a } => alloc::format!("reboot-{sigma_a}"),
            Self::RebootGeneric { sigma_a, weights } => {
                alloc::format!("reboot-generic-{sigma_a}-{weights}")
            }
            Self::VanillaRb { weights } => alloc::format!("vanilla-rb-{weights}"),
            Self::Ftl => String::from("ftl"),
            Self::GaussianTs => String::from("ts"),
            Self::Giro { a } => alloc::format!("giro-{a}"),
            Self::Phe { a } => alloc::format!("phe-{a}"),
        }
    }
}

/// Per-arm state owned by one episode: sufficient statistics always, raw
/// histories only when the policy needs them.
#[derive(Debug, Clone)]
pub struct PolicyState {
    stats: Vec<ArmStats>,
    histories: Option<Vec<History>>,
}

impl PolicyState {
    pub fn new(arms: usize, spec: &PolicySpec) -> Self {
        Self {
            stats: alloc::vec![ArmStats::new(); arms],
            histories: spec
                .needs_history()
                .then(|| alloc::vec![History::new(); arms]),
        }
    }

    pub fn record(&mut self, arm: usize, reward: f64) -> Result<()> {
        let stats = self
            .stats
            .get_mut(arm)
            .ok_or(Error::Config(alloc::format!("arm {arm} out of range")))?;
        stats.update(reward)?;
        if let Some(hs) = &mut self.histories {
            hs[arm].push(reward)?;
        }
        Ok(())
    }

    #[inline]
    pub fn arm_count(&self) -> usize {
        self.stats.len()
    }

    pub fn stats(&self, arm: usize) -> &ArmStats {
        &self.stats[arm]
    }

    pub fn history(&self, arm: usize) -> Option<&History> {
        self.histories.as_ref().map(|hs| &hs[arm])
    }

    pub fn pull_counts(&self) -> Vec<u64> {
        self.stats.iter().map(ArmStats::pulls).collect()
    }

    pub fn total_pulls(&self) -> u64 {
        self.stats.iter().map(ArmStats::pulls).sum()
    }
}

/// Fast-path residual bootstrap index: one draw from
/// `Normal(mean, (s+2)^{-2} (RSS + PRSS))`.
pub fn reboot_index_gaussian<R: Rng + ?Sized>(
    stats: &ArmStats,
    sigma_a: f64,
    rng: &mut R,
) -> Result<f64> {
    let s = stats.pulls();
    if s == 0 {
        return Err(Error::NoSamples);
    }
    let mean = stats.mean()?;
    let denom = (s + 2) as f64;
    let var = (stats.rss()? + prss(s, sigma_a)?) / (denom * denom);
    let z: f64 = rng.sample(StandardNormal);
    Ok(mean + math::sqrt(var) * z)
}

/// Generic-weight residual bootstrap index: perturbs the `s` residuals plus
/// the two pseudo residuals with fresh weights and averages over `s + 2`.
pub fn reboot_index_generic<R: Rng + ?Sized>(
    history: &History,
    sigma_a: f64,
    dist: WeightDistribution,
    rng: &mut R,
) -> Result<f64> {
    let s = history.len();
    if s == 0 {
        return Err(Error::NoSamples);
    }
    let mean = history.mean()?;
    let (e_plus, e_minus) = pseudo_residuals(s as u64, sigma_a)?;
    let mut acc = 0.0;
    for &y in history.rewards() {
        acc += dist.sample_one(rng) * (y - mean);
    }
    acc += dist.sample_one(rng) * e_plus;
    acc += dist.sample_one(rng) * e_minus;
    Ok(mean + acc / (s + 2) as f64)
}

/// Deterministic variant of [`reboot_index_generic`] taking the `s + 2`
/// weights explicitly (residual weights first, then the two pseudo-residual
/// weights).
pub fn reboot_index_with_weights(history: &History, sigma_a: f64, weights: &[f64]) -> Result<f64> {
    let s = history.len();
    if s == 0 {
        return Err(Error::NoSamples);
    }
    if weights.len() != s + 2 {
        return Err(Error::Config(alloc::format!(
            "need {} weights for a history of {s} rewards, got {}",
            s + 2,
            weights.len()
        )));
    }
    let mean = history.mean()?;
    let (e_plus, e_minus) = pseudo_residuals(s as u64, sigma_a)?;
    let mut acc = 0.0;
    for (&y, &w) in history.rewards().iter().zip(weights) {
        acc += w * (y - mean);
    }
    acc += weights[s] * e_plus;
    acc += weights[s + 1] * e_minus;
    Ok(mean + acc / (s + 2) as f64)
}

/// Vanilla residual bootstrap index: mean plus the average of the `s`
/// weighted residuals; no pseudo residuals, so conditional variance is
/// `RSS / s^2`.
pub fn vanilla_rb_index<R: Rng + ?Sized>(
    history: &History,
    dist: WeightDistribution,
    rng: &mut R,
) -> Result<f64> {
    let s = history.len();
    if s == 0 {
        return Err(Error::NoSamples);
    }
    let mean = history.mean()?;
    let mut acc = 0.0;
    for &y in history.rewards() {
        acc += dist.sample_one(rng) * (y - mean);
    }
    Ok(mean + acc / s as f64)
}

/// Deterministic variant of [`vanilla_rb_index`] with explicit weights
/// (one per observed reward).
pub fn vanilla_rb_index_with_weights(history: &History, weights: &[f64]) -> Result<f64> {
    let s = history.len();
    if s == 0 {
        return Err(Error::NoSamples);
    }
    if weights.len() != s {
        return Err(Error::Config(alloc::format!(
            "need {s} weights for a history of {s} rewards, got {}",
            weights.len()
        )));
    }
    let mean = history.mean()?;
    let mut acc = 0.0;
    for (&y, &w) in history.rewards().iter().zip(weights) {
        acc += w * (y - mean);
    }
    Ok(mean + acc / s as f64)
}

/// Follow-the-leader index: the sample mean itself.
pub fn ftl_index(stats: &ArmStats) -> Result<f64> {
    stats.mean()
}

/// Thompson sampling index under prior N(0, 1) and unit-variance Gaussian
/// likelihood: a draw from `Normal(s*Ybar/(s+1), 1/(s+1))`. With no samples
/// this is a prior draw, so it is defined at `s = 0`.
pub fn ts_gaussian_index<R: Rng + ?Sized>(stats: &ArmStats, rng: &mut R) -> f64 {
    let s = stats.pulls() as f64;
    let mean = stats.sum() / (s + 1.0);
    let sd = math::sqrt(1.0 / (s + 1.0));
    let z: f64 = rng.sample(StandardNormal);
    mean + sd * z
}

/// Giro index: augment the `s` observed rewards with `a` zeros and `a` ones
/// per observation, resample the augmented multiset with replacement at its
/// own size `s * (2a + 1)`, and return the resample mean.
pub fn giro_index<R: Rng + ?Sized>(history: &History, a: u32, rng: &mut R) -> Result<f64> {
    if a == 0 {
        return Err(Error::Domain {
            condition: "a >= 1",
            value: 0.0,
        });
    }
    let s = history.len();
    if s == 0 {
        return Err(Error::NoSamples);
    }
    let rewards = history.rewards();
    let pseudo = s * a as usize;
    let m = s + 2 * pseudo;
    // Positions [0, s) are observed rewards, [s, s+pseudo) zeros, the rest
    // ones; sampling positions avoids materializing the augmented multiset.
    let ones_from = s + pseudo;
    let mut total = 0.0;
    for _ in 0..m {
        let j = rng.random_range(0..m);
        if j < s {
            total += rewards[j];
        } else if j >= ones_from {
            total += 1.0;
        }
    }
    Ok(total / m as f64)
}

/// PHE index: the average of the perturbed history, `(sum + U) / (s + m)`
/// with `m = ceil(a * s)` pseudo rewards and `U ~ Binomial(m, 1/2)`.
///
/// The denominator counts real plus pseudo observations. Because `m/s`
/// wobbles with `s` whenever `a * s` is fractional, a common shift of all
/// reward means does not cancel across arms; this is the mechanism that
/// makes the policy sensitive to large reward offsets.
pub fn phe_index<R: Rng + ?Sized>(stats: &ArmStats, a: f64, rng: &mut R) -> Result<f64> {
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::Domain {
            condition: "a > 0",
            value: a,
        });
    }
    let s = stats.pulls();
    if s == 0 {
        return Err(Error::NoSamples);
    }
    let n_pseudo = math::ceil(a * s as f64) as u64;
    let u = Binomial::new(n_pseudo, 0.5)
        .expect("binomial with p = 1/2 is always valid")
        .sample(rng) as f64;
    Ok((stats.sum() + u) / ((s + n_pseudo) as f64))
}

/// Index of a single arm under `spec`, drawing any randomness from `rng`.
pub fn arm_index<R: Rng + ?Sized>(
    state: &PolicyState,
    spec: &PolicySpec,
    arm: usize,
    rng: &mut R,
) -> Result<f64> {
    let stats = state.stats(arm);
    let history = state.history(arm);
    match *spec {
        PolicySpec::RebootGaussian { sigma_a } => reboot_index_gaussian(stats, sigma_a, rng),
        PolicySpec::RebootGeneric { sigma_a, weights } => {
            reboot_index_generic(history.ok_or(Error::NoSamples)?, sigma_a, weights, rng)
        }
        PolicySpec::VanillaRb { weights } => {
            vanilla_rb_index(history.ok_or(Error::NoSamples)?, weights, rng)
        }
        PolicySpec::Ftl => ftl_index(stats),
        PolicySpec::GaussianTs => Ok(ts_gaussian_index(stats, rng)),
        PolicySpec::Giro { a } => giro_index(history.ok_or(Error::NoSamples)?, a, rng),
        PolicySpec::Phe { a } => phe_index(stats, a, rng),
    }
}

/// Follow the bootstrap leader: compute every arm's index with fresh
/// randomness and return the argmax, breaking exact ties uniformly at
/// random.
pub fn select_arm<R: Rng + ?Sized>(
    state: &PolicyState,
    spec: &PolicySpec,
    rng: &mut R,
) -> Result<usize> {
    let arms = state.arm_count();
    if arms == 0 {
        return Err(Error::Config(String::from("no arms to select from")));
    }
    let mut best = f64::NEG_INFINITY;
    let mut chosen = 0usize;
    let mut ties = 0u32;
    for arm in 0..arms {
        let index = arm_index(state, spec, arm, rng)?;
        if index > best {
            best = index;
            chosen = arm;
            ties = 1;
        } else if index == best {
            // Reservoir tie break: the i-th tied arm wins with probability
            // 1/i, which is uniform over all tied arms overall.
            ties += 1;
            if rng.random_range(0..ties) == 0 {
                chosen = arm;
            }
        }
    }
    Ok(chosen)
}
