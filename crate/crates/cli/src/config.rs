//! Experiment configuration: JSON schema, named presets, and resolution
//! into an executable plan.
//!
//! A config either names a `preset` or spells out `experiments` explicitly;
//! every preset is expressible in the explicit form. Presets:
//!
//! - `figure1`: 10 Gaussian arms, means Unif(-1, 1), sigma 1; FTL vs
//!   vanilla residual bootstrap vs the bootstrap policy at sigma_a = 1.5.
//! - `figure2-shift`: two Gaussian arms (c+1, c) for c in {0, 10, 20};
//!   bootstrap (1.5) vs Giro (a=1) vs PHE (a=2.1).
//! - `figure2-scale`: two Gaussian arms (1, 0) with sigma in {1, 5, 10, 20}
//!   and sigma_a = 1.5 * sigma.
//! - `figure3-gaussian` / `figure3-exponential` / `figure3-logistic`:
//!   10 arms with means in [5, 7]; TS, Giro, PHE, bootstrap at
//!   sigma_a in {1.0, 1.5}.
//! - `table2`: wall-time grid K in {5, 10, 20} x T in {1000, 10000} for
//!   TS, Giro, PHE, and the bootstrap policy.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use reboot_core::envs::InstanceSpec;
use reboot_core::policies::PolicySpec;
use reboot_core::weights::WeightDistribution;

use crate::CliError;

pub const DEFAULT_RUNS: usize = 500;
pub const DEFAULT_HORIZON: usize = 10_000;
pub const DEFAULT_BENCH_REPS: usize = 5;

/// One labeled (instance, policies, horizon) experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub label: String,
    pub instance: InstanceSpec,
    pub policies: Vec<PolicySpec>,
    pub horizon: usize,
}

/// On-disk configuration for `reboot run`.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub experiments: Vec<ExperimentSpec>,
    #[serde(default)]
    pub runs: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

/// Command-line overrides applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub runs: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

/// A fully resolved, validated unit of work.
#[derive(Debug, Clone)]
pub enum Plan {
    Curves {
        experiments: Vec<ExperimentSpec>,
        runs: usize,
        seed: u64,
        out: PathBuf,
    },
    Timing {
        grid: Vec<(usize, usize)>,
        policies: Vec<PolicySpec>,
        reps: usize,
        out: PathBuf,
    },
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Merge CLI overrides, expand any preset, and validate.
    pub fn resolve(self, overrides: &Overrides) -> Result<Plan, CliError> {
        let runs = overrides.runs.or(self.runs).unwrap_or(DEFAULT_RUNS);
        let seed = overrides.seed.or(self.seed).unwrap_or(0);
        let out = overrides
            .out
            .clone()
            .or(self.out)
            .unwrap_or_else(|| PathBuf::from("out"));

        let plan = match (&self.preset, self.experiments.is_empty()) {
            (Some(_), false) => {
                return Err(CliError::Config(
                    "config sets both `preset` and `experiments`; choose one".into(),
                ))
            }
            (None, true) => {
                return Err(CliError::Config(
                    "config must set either `preset` or `experiments`".into(),
                ))
            }
            (Some(name), true) => preset_plan(name, runs, seed, out)?,
            (None, false) => Plan::Curves {
                experiments: self.experiments,
                runs,
                seed,
                out,
            },
        };
        validate_plan(&plan)?;
        Ok(plan)
    }
}

fn validate_plan(plan: &Plan) -> Result<(), CliError> {
    match plan {
        Plan::Curves {
            experiments, runs, ..
        } => {
            if *runs < 2 {
                return Err(CliError::Config(format!(
                    "need at least 2 runs for a standard error, got {runs}"
                )));
            }
            if experiments.is_empty() {
                return Err(CliError::Config("no experiments to run".into()));
            }
            for exp in experiments {
                if exp.policies.is_empty() {
                    return Err(CliError::Config(format!(
                        "experiment `{}` lists no policies",
                        exp.label
                    )));
                }
                for p in &exp.policies {
                    p.validate()
                        .map_err(|e| CliError::Config(format!("policy {}: {e}", p.label())))?;
                }
                let arms = exp.instance.arm_count();
                if arms < 2 {
                    return Err(CliError::Config(format!(
                        "experiment `{}` has {arms} arm(s); need at least 2",
                        exp.label
                    )));
                }
                if exp.horizon < arms {
                    return Err(CliError::Config(format!(
                        "experiment `{}`: horizon {} is shorter than the {arms}-arm initialization",
                        exp.label, exp.horizon
                    )));
                }
            }
        }
        Plan::Timing {
            grid,
            policies,
            reps,
            ..
        } => {
            if grid.is_empty() || policies.is_empty() || *reps == 0 {
                return Err(CliError::Config("empty timing plan".into()));
            }
            for p in policies {
                p.validate()
                    .map_err(|e| CliError::Config(format!("policy {}: {e}", p.label())))?;
            }
        }
    }
    Ok(())
}

fn baseline_policies() -> Vec<PolicySpec> {
    vec![
        PolicySpec::RebootGaussian { sigma_a: 1.5 },
        PolicySpec::Giro { a: 1 },
        PolicySpec::Phe { a: 2.1 },
    ]
}

fn figure3_policies() -> Vec<PolicySpec> {
    vec![
        PolicySpec::GaussianTs,
        PolicySpec::Giro { a: 1 },
        PolicySpec::Phe { a: 2.1 },
        PolicySpec::RebootGaussian { sigma_a: 1.0 },
        PolicySpec::RebootGaussian { sigma_a: 1.5 },
    ]
}

fn preset_plan(name: &str, runs: usize, seed: u64, out: PathBuf) -> Result<Plan, CliError> {
    let curves = |experiments: Vec<ExperimentSpec>| Plan::Curves {
        experiments,
        runs,
        seed,
        out: out.clone(),
    };
    let plan = match name {
        "figure1" => curves(vec![ExperimentSpec {
            label: "figure1".into(),
            instance: InstanceSpec::GaussianRange {
                arms: 10,
                low: -1.0,
                high: 1.0,
                sigma: 1.0,
            },
            policies: vec![
                PolicySpec::Ftl,
                PolicySpec::VanillaRb {
                    weights: WeightDistribution::Gaussian,
                },
                PolicySpec::RebootGaussian { sigma_a: 1.5 },
            ],
            horizon: DEFAULT_HORIZON,
        }]),
        "figure2-shift" => curves(
            [0.0, 10.0, 20.0]
                .into_iter()
                .map(|c| ExperimentSpec {
                    label: format!("shift-c{c}"),
                    instance: InstanceSpec::TwoArmShift { c },
                    policies: baseline_policies(),
                    horizon: DEFAULT_HORIZON,
                })
                .collect(),
        ),
        "figure2-scale" => curves(
            [1.0, 5.0, 10.0, 20.0]
                .into_iter()
                .map(|sigma| ExperimentSpec {
                    label: format!("scale-sigma{sigma}"),
                    instance: InstanceSpec::TwoArmScale { sigma },
                    policies: vec![
                        // Exploration aid scales with the reward noise.
                        PolicySpec::RebootGaussian {
                            sigma_a: 1.5 * sigma,
                        },
                        PolicySpec::Giro { a: 1 },
                        PolicySpec::Phe { a: 2.1 },
                    ],
                    horizon: DEFAULT_HORIZON,
                })
                .collect(),
        ),
        "figure3-gaussian" => curves(vec![ExperimentSpec {
            label: "figure3-gaussian".into(),
            instance: InstanceSpec::GaussianUnif { arms: 10 },
            policies: figure3_policies(),
            horizon: DEFAULT_HORIZON,
        }]),
        "figure3-exponential" => curves(vec![ExperimentSpec {
            label: "figure3-exponential".into(),
            instance: InstanceSpec::ExpShifted { arms: 10 },
            policies: figure3_policies(),
            horizon: DEFAULT_HORIZON,
        }]),
        "figure3-logistic" => curves(vec![ExperimentSpec {
            label: "figure3-logistic".into(),
            instance: InstanceSpec::LogisticUnif { arms: 10 },
            policies: figure3_policies(),
            horizon: DEFAULT_HORIZON,
        }]),
        "table2" => Plan::Timing {
            grid: vec![
                (5, 1_000),
                (10, 1_000),
                (20, 1_000),
                (5, 10_000),
                (10, 10_000),
                (20, 10_000),
            ],
            policies: vec![
                PolicySpec::GaussianTs,
                PolicySpec::Giro { a: 1 },
                PolicySpec::Phe { a: 2.1 },
                PolicySpec::RebootGaussian { sigma_a: 1.5 },
            ],
            reps: DEFAULT_BENCH_REPS,
            out,
        },
        other => {
            return Err(CliError::Config(format!(
                "unknown preset `{other}`; known presets: figure1, figure2-shift, \
                 figure2-scale, figure3-gaussian, figure3-exponential, figure3-logistic, table2"
            )))
        }
    };
    Ok(plan)
}

/// Parse a comma-separated policy list like `ts,giro,phe=2.1,reboot=1.7`.
pub fn parse_policies(list: &str) -> Result<Vec<PolicySpec>, CliError> {
    list.split(',')
        .map(|tok| parse_policy_token(tok.trim()))
        .collect()
}

fn parse_weights(s: &str) -> Result<WeightDistribution, CliError> {
    match s {
        "gaussian" => Ok(WeightDistribution::Gaussian),
        "rademacher" => Ok(WeightDistribution::Rademacher),
        other => Err(CliError::Config(format!(
            "unknown weight distribution `{other}` (gaussian | rademacher)"
        ))),
    }
}

fn parse_policy_token(tok: &str) -> Result<PolicySpec, CliError> {
    let (name, param) = match tok.split_once('=') {
        Some((n, p)) => (n, Some(p)),
        None => (tok, None),
    };
    let num = |p: Option<&str>, default: f64| -> Result<f64, CliError> {
        match p {
            None => Ok(default),
            Some(text) => text
                .parse::<f64>()
                .map_err(|_| CliError::Config(format!("bad parameter `{text}` in `{tok}`"))),
        }
    };
    let spec = match name {
        "ftl" => PolicySpec::Ftl,
        "ts" => PolicySpec::GaussianTs,
        "reboot" => PolicySpec::RebootGaussian {
            sigma_a: num(param, 1.5)?,
        },
        "reboot-generic" => PolicySpec::RebootGeneric {
            sigma_a: num(param, 1.5)?,
            weights: WeightDistribution::Gaussian,
        },
        "vanilla-rb" => PolicySpec::VanillaRb {
            weights: match param {
                None => WeightDistribution::Gaussian,
                Some(w) => parse_weights(w)?,
            },
        },
        "giro" => {
            let a = num(param, 1.0)?;
            if a.fract() != 0.0 || a < 1.0 {
                return Err(CliError::Config(format!(
                    "giro pseudo-reward rate must be a positive integer, got `{a}`"
                )));
            }
            PolicySpec::Giro { a: a as u32 }
        }
        "phe" => PolicySpec::Phe {
            a: num(param, 2.1)?,
        },
        other => {
            return Err(CliError::Config(format!(
                "unknown policy `{other}` (ftl | ts | reboot[=sigma_a] | \
                 reboot-generic[=sigma_a] | vanilla-rb[=weights] | giro[=a] | phe[=a])"
            )))
        }
    };
    spec.validate()
        .map_err(|e| CliError::Config(format!("policy `{tok}`: {e}")))?;
    Ok(spec)
}
