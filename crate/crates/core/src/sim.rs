//! Episode runner, cross-run aggregation, and policy timing.
//!
//! An episode plays the standard interaction loop: rounds `1..=K` pull each
//! arm once in order, later rounds follow the bootstrap leader. Regret is
//! accounted as gap-weighted pull counts (pseudo-regret), recomputed from the
//! counts each round so the accounting identity
//! `regret(T) = sum_k gap_k * pulls_k` holds exactly.

use alloc::vec::Vec;

use crate::envs::BanditInstance;
use crate::error::{Error, Result};
use crate::policies::{select_arm, PolicySpec, PolicyState};
use crate::rng::{seeded_stream, ENV_STREAM, POLICY_STREAM};

/// One episode's trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    /// Cumulative pseudo-regret after each round; length equals the horizon.
    pub cumulative_regret: Vec<f64>,
    /// Final pull count per arm; sums to the horizon.
    pub pull_counts: Vec<u64>,
    /// Episode wall time in seconds; 0.0 when built without the `std`
    /// feature. Excluded from any determinism comparison.
    pub wall_time: f64,
}

impl RunRecord {
    pub fn horizon(&self) -> usize {
        self.cumulative_regret.len()
    }

    pub fn final_regret(&self) -> f64 {
        self.cumulative_regret.last().copied().unwrap_or(0.0)
    }

    /// Trajectory equality ignoring wall time.
    pub fn same_trajectory(&self, other: &Self) -> bool {
        self.cumulative_regret == other.cumulative_regret && self.pull_counts == other.pull_counts
    }
}

/// Play one episode. Fully deterministic given `(spec, instance, horizon,
/// seed)`: rewards come from one ChaCha stream, policy randomness from
/// another.
pub fn run_episode(
    spec: &PolicySpec,
    instance: &BanditInstance,
    horizon: usize,
    seed: u64,
) -> Result<RunRecord> {
    spec.validate()?;
    let arms = instance.arm_count();
    if horizon < arms {
        return Err(Error::Config(alloc::format!(
            "horizon {horizon} is shorter than the {arms}-arm initialization"
        )));
    }
    #[cfg(feature = "std")]
    let start = std::time::Instant::now();

    let mut env_rng = seeded_stream(seed, ENV_STREAM);
    let mut policy_rng = seeded_stream(seed, POLICY_STREAM);
    let mut state = PolicyState::new(arms, spec);
    let gaps = instance.gaps();
    let mut counts = alloc::vec![0u64; arms];
    let mut cumulative = Vec::with_capacity(horizon);

    for round in 0..horizon {
        let arm = if round < arms {
            round
        } else {
            select_arm(&state, spec, &mut policy_rng)?
        };
        let reward = instance.sample_reward(arm, &mut env_rng)?;
        state.record(arm, reward)?;
        counts[arm] += 1;
        let regret: f64 = gaps.iter().zip(&counts).map(|(g, &c)| g * c as f64).sum();
        cumulative.push(regret);
    }

    #[cfg(feature = "std")]
    let wall_time = start.elapsed().as_secs_f64();
    #[cfg(not(feature = "std"))]
    let wall_time = 0.0;

    Ok(RunRecord {
        cumulative_regret: cumulative,
        pull_counts: counts,
        wall_time,
    })
}

/// Per-round mean and standard error of the regret across runs.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretCurve {
    pub mean_regret: Vec<f64>,
    /// Sample standard deviation across runs divided by `sqrt(n_runs)`.
    pub stderr: Vec<f64>,
    pub n_runs: usize,
}

impl RegretCurve {
    pub fn horizon(&self) -> usize {
        self.mean_regret.len()
    }

    pub fn final_mean(&self) -> f64 {
        self.mean_regret.last().copied().unwrap_or(0.0)
    }

    pub fn final_stderr(&self) -> f64 {
        self.stderr.last().copied().unwrap_or(0.0)
    }
}

/// Aggregate at least two equal-horizon records into a [`RegretCurve`].
pub fn aggregate(records: &[RunRecord]) -> Result<RegretCurve> {
    let n = records.len();
    if n < 2 {
        return Err(Error::NotEnoughRuns { found: n });
    }
    let horizon = records[0].horizon();
    for r in records {
        if r.horizon() != horizon {
            return Err(Error::HorizonMismatch {
                expected: horizon,
                found: r.horizon(),
            });
        }
    }
    let nf = n as f64;
    let mut mean_regret = Vec::with_capacity(horizon);
    let mut stderr = Vec::with_capacity(horizon);
    for t in 0..horizon {
        let mean = records.iter().map(|r| r.cumulative_regret[t]).sum::<f64>() / nf;
        let ss = records
            .iter()
            .map(|r| {
                let d = r.cumulative_regret[t] - mean;
                d * d
            })
            .sum::<f64>();
        let sample_var = ss / (nf - 1.0);
        mean_regret.push(mean);
        stderr.push(crate::math::sqrt(sample_var / nf));
    }
    Ok(RegretCurve {
        mean_regret,
        stderr,
        n_runs: n,
    })
}

/// Wall-time summary of repeated episodes on a fixed instance.
#[cfg(feature = "std")]
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSummary {
    pub arms: usize,
    pub horizon: usize,
    pub median_seconds: f64,
    pub rep_seconds: Vec<f64>,
}

/// Seed for the benchmark's fixed Gaussian instance.
#[cfg(feature = "std")]
const BENCH_INSTANCE_SEED: u64 = 0x5eed;

/// Median episode wall time over `reps` runs of `spec` on a fixed Gaussian
/// instance with `arms` arms (means Unif(5, 7), unit variance).
#[cfg(feature = "std")]
pub fn benchmark(
    spec: &PolicySpec,
    arms: usize,
    horizon: usize,
    reps: usize,
) -> Result<BenchmarkSummary> {
    use crate::envs::{make_instance, InstanceSpec};
    use crate::rng::INSTANCE_STREAM;

    if reps == 0 {
        return Err(Error::Config(alloc::string::String::from(
            "benchmark needs at least one repetition",
        )));
    }
    let mut rng = seeded_stream(BENCH_INSTANCE_SEED, INSTANCE_STREAM);
    let instance = make_instance(&InstanceSpec::GaussianUnif { arms }, &mut rng)?;
    let mut rep_seconds: Vec<f64> = (0..reps)
        .map(|rep| Ok(run_episode(spec, &instance, horizon, rep as u64)?.wall_time))
        .collect::<Result<_>>()?;
    let mut sorted = rep_seconds.clone();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let mid = sorted.len() / 2;
    let median_seconds = if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        0.5 * (sorted[mid - 1] + sorted[mid])
    };
    rep_seconds.shrink_to_fit();
    Ok(BenchmarkSummary {
        arms,
        horizon,
        median_seconds,
        rep_seconds,
    })
}
