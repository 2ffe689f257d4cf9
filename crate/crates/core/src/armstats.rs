//! Per-arm sufficient statistics and the pseudo-residual scheme.
//!
//! An arm's mean and residual sum of squares (RSS) are maintained
//! incrementally from three numbers: the pull count `s`, the running reward
//! sum, and the running sum of squared rewards. RSS is recovered as
//! `sum_sq - s * mean^2`, clamped at zero because the algebraic form can go
//! slightly negative under floating-point cancellation while RSS is by
//! definition a sum of squares.
//!
//! The exploration-aid side adds two pseudo residuals `±sqrt(s+2) * sigma_a`
//! whose sum of squares (PRSS) is `2 * (s+2) * sigma_a^2`. Policies that
//! resample explicit histories keep a [`History`] alongside the stats.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Incremental sufficient statistics for one arm.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ArmStats {
    pulls: u64,
    sum: f64,
    sum_sq: f64,
}

impl ArmStats {
    pub const fn new() -> Self {
        Self {
            pulls: 0,
            sum: 0.0,
            sum_sq: 0.0,
        }
    }

    /// Absorb one reward. Non-finite rewards are rejected so the invariants
    /// on `sum` and `sum_sq` cannot be poisoned.
    pub fn update(&mut self, reward: f64) -> Result<()> {
        if !reward.is_finite() {
            return Err(Error::NonFiniteReward { value: reward });
        }
        self.pulls += 1;
        self.sum += reward;
        self.sum_sq += reward * reward;
        Ok(())
    }

    #[inline]
    pub fn pulls(&self) -> u64 {
        self.pulls
    }

    #[inline]
    pub fn sum(&self) -> f64 {
        self.sum
    }

    /// Sample mean of the observed rewards.
    pub fn mean(&self) -> Result<f64> {
        if self.pulls == 0 {
            return Err(Error::NoSamples);
        }
        Ok(self.sum / self.pulls as f64)
    }

    /// Residual sum of squares, `max(0, sum_sq - s * mean^2)`.
    pub fn rss(&self) -> Result<f64> {
        let mean = self.mean()?;
        Ok((self.sum_sq - self.pulls as f64 * mean * mean).max(0.0))
    }
}

/// The pair of pseudo residuals `(+sqrt(s+2)*sigma_a, -sqrt(s+2)*sigma_a)`
/// appended to an arm's residual set before perturbation.
pub fn pseudo_residuals(pulls: u64, sigma_a: f64) -> Result<(f64, f64)> {
    check_sigma_a(sigma_a)?;
    if pulls == 0 {
        return Err(Error::NoSamples);
    }
    let e = math::sqrt((pulls + 2) as f64) * sigma_a;
    Ok((e, -e))
}

/// Pseudo residual sum of squares, `2 * (s+2) * sigma_a^2`.
pub fn prss(pulls: u64, sigma_a: f64) -> Result<f64> {
    check_sigma_a(sigma_a)?;
    if pulls == 0 {
        return Err(Error::NoSamples);
    }
    Ok(2.0 * (pulls + 2) as f64 * sigma_a * sigma_a)
}

pub(crate) fn check_sigma_a(sigma_a: f64) -> Result<()> {
    if !sigma_a.is_finite() || sigma_a <= 0.0 {
        return Err(Error::Domain {
            condition: "sigma_a > 0",
            value: sigma_a,
        });
    }
    Ok(())
}

/// Ordered rewards observed on one arm; kept only for policies that resample
/// the raw history (generic-weight bootstrap, vanilla residual bootstrap,
/// Giro).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct History {
    rewards: Vec<f64>,
}

impl History {
    pub const fn new() -> Self {
        Self {
            rewards: Vec::new(),
        }
    }

    pub fn from_rewards(rewards: &[f64]) -> Result<Self> {
        let mut h = Self::new();
        for &r in rewards {
            h.push(r)?;
        }
        Ok(h)
    }

    pub fn push(&mut self, reward: f64) -> Result<()> {
        if !reward.is_finite() {
            return Err(Error::NonFiniteReward { value: reward });
        }
        self.rewards.push(reward);
        Ok(())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.rewards.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.rewards.is_empty()
    }

    #[inline]
    pub fn rewards(&self) -> &[f64] {
        &self.rewards
    }

    pub fn mean(&self) -> Result<f64> {
        if self.rewards.is_empty() {
            return Err(Error::NoSamples);
        }
        Ok(self.rewards.iter().sum::<f64>() / self.rewards.len() as f64)
    }
}
