//! Bootstrap weight generation.
//!
//! Residual bootstrap perturbation needs i.i.d. weights with population mean
//! 0 and variance 1. Two such laws are supported: standard Gaussian and
//! Rademacher (±1 with equal probability).

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// A zero-mean, unit-variance bootstrap weight law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(rename_all = "snake_case")
)]
pub enum WeightDistribution {
    Gaussian,
    Rademacher,
}

impl WeightDistribution {
    /// One weight draw.
    #[inline]
    pub fn sample_one<R: Rng + ?Sized>(self, rng: &mut R) -> f64 {
        match self {
            Self::Gaussian => rng.sample(StandardNormal),
            Self::Rademacher => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Gaussian => "gaussian",
            Self::Rademacher => "rademacher",
        }
    }
}

impl core::fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// Draw exactly `n` independent weights from `dist`.
///
/// `n = 0` is rejected: every caller perturbs at least one residual.
pub fn sample_weights<R: Rng + ?Sized>(
    dist: WeightDistribution,
    n: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::EmptyWeightRequest);
    }
    Ok((0..n).map(|_| dist.sample_one(rng)).collect())
}
