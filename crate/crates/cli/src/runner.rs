//! Parallel episode fan-out, aggregation, and file output.
//!
//! Runs are embarrassingly parallel: run `i` derives its seed as
//! `master + i` and draws its own instance (stream 2) and episode streams,
//! so the rayon fan-out produces byte-identical results to a sequential
//! loop and to any other thread schedule.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use reboot_core::envs::{make_instance, InstanceSpec};
use reboot_core::policies::PolicySpec;
use reboot_core::rng::{run_seed, seeded_stream, INSTANCE_STREAM};
use reboot_core::sim::{aggregate, run_episode, RegretCurve, RunRecord};

use crate::config::{ExperimentSpec, Plan};
use crate::CliError;

/// Aggregated result of one policy inside one experiment.
#[derive(Debug, Clone)]
pub struct PolicyOutcome {
    pub policy: PolicySpec,
    pub label: String,
    pub curve: RegretCurve,
    pub mean_wall_time: f64,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub label: String,
    pub horizon: usize,
    pub policies: Vec<PolicyOutcome>,
}

/// Run one policy for `runs` episodes. Each run re-draws its instance from
/// the spec with the run's own seed, so random-mean families average over
/// problem draws while deterministic families pin a single instance.
pub fn run_policy(
    policy: &PolicySpec,
    instance: &InstanceSpec,
    horizon: usize,
    runs: usize,
    master_seed: u64,
) -> Result<(RegretCurve, f64), CliError> {
    let records: Vec<RunRecord> = (0..runs)
        .into_par_iter()
        .map(|i| {
            let seed = run_seed(master_seed, i as u64);
            let mut instance_rng = seeded_stream(seed, INSTANCE_STREAM);
            let instance = make_instance(instance, &mut instance_rng)?;
            run_episode(policy, &instance, horizon, seed)
        })
        .collect::<Result<_, _>>()
        .map_err(CliError::from)?;
    let mean_wall_time = records.iter().map(|r| r.wall_time).sum::<f64>() / runs as f64;
    Ok((aggregate(&records)?, mean_wall_time))
}

pub fn run_experiment(
    exp: &ExperimentSpec,
    runs: usize,
    master_seed: u64,
) -> Result<ExperimentOutcome, CliError> {
    let policies = exp
        .policies
        .iter()
        .map(|policy| {
            let (curve, mean_wall_time) =
                run_policy(policy, &exp.instance, exp.horizon, runs, master_seed)?;
            Ok(PolicyOutcome {
                policy: *policy,
                label: policy.label(),
                curve,
                mean_wall_time,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(ExperimentOutcome {
        label: exp.label.clone(),
        horizon: exp.horizon,
        policies,
    })
}

/// Write a regret curve as `round,mean_regret,stderr` rows, one per round.
/// Values use scientific notation with 7 significant digits so reruns are
/// byte-identical.
pub fn write_curve_csv(path: &Path, curve: &RegretCurve) -> Result<(), CliError> {
    let mut buf = String::with_capacity(32 * curve.horizon() + 24);
    buf.push_str("round,mean_regret,stderr\n");
    for (i, (m, s)) in curve.mean_regret.iter().zip(&curve.stderr).enumerate() {
        buf.push_str(&format!("{},{:.6e},{:.6e}\n", i + 1, m, s));
    }
    fs::write(path, buf)?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct PolicySummary {
    policy: String,
    final_regret: f64,
    final_stderr: f64,
    mean_wall_time_seconds: f64,
    csv: String,
}

#[derive(Debug, Serialize)]
struct ExperimentSummary {
    label: String,
    horizon: usize,
    policies: Vec<PolicySummary>,
}

#[derive(Debug, Serialize)]
struct RunSummary {
    runs: usize,
    seed: u64,
    experiments: Vec<ExperimentSummary>,
}

fn csv_name(experiment: &str, policy: &str) -> String {
    format!("{experiment}__{policy}.csv")
}

/// Execute a resolved plan, writing CSVs plus `summary.json` (curves) or
/// `timings.csv` (timing grid) under the plan's output directory. Returns
/// the human-readable summary that `main` prints.
pub fn execute(plan: &Plan) -> Result<String, CliError> {
    match plan {
        Plan::Curves {
            experiments,
            runs,
            seed,
            out,
        } => execute_curves(experiments, *runs, *seed, out),
        Plan::Timing {
            grid,
            policies,
            reps,
            out,
        } => crate::bench::execute_timing(grid, policies, *reps, out),
    }
}

fn execute_curves(
    experiments: &[ExperimentSpec],
    runs: usize,
    seed: u64,
    out: &PathBuf,
) -> Result<String, CliError> {
    fs::create_dir_all(out)?;
    let mut rendered = String::new();
    let mut summaries = Vec::new();
    for exp in experiments {
        let outcome = run_experiment(exp, runs, seed)?;
        rendered.push_str(&format!(
            "experiment {} (T={}, {} runs, seed {})\n",
            outcome.label, outcome.horizon, runs, seed
        ));
        rendered.push_str(&format!(
            "  {:<28} {:>14} {:>12} {:>12}\n",
            "policy", "final regret", "stderr", "s/episode"
        ));
        let mut policies = Vec::new();
        for p in &outcome.policies {
            let csv = csv_name(&outcome.label, &p.label);
            write_curve_csv(&out.join(&csv), &p.curve)?;
            rendered.push_str(&format!(
                "  {:<28} {:>14.3} {:>12.3} {:>12.6}\n",
                p.label,
                p.curve.final_mean(),
                p.curve.final_stderr(),
                p.mean_wall_time
            ));
            policies.push(PolicySummary {
                policy: p.label.clone(),
                final_regret: p.curve.final_mean(),
                final_stderr: p.curve.final_stderr(),
                mean_wall_time_seconds: p.mean_wall_time,
                csv,
            });
        }
        summaries.push(ExperimentSummary {
            label: outcome.label,
            horizon: outcome.horizon,
            policies,
        });
    }
    let summary = RunSummary {
        runs,
        seed,
        experiments: summaries,
    };
    let mut file = fs::File::create(out.join("summary.json"))?;
    file.write_all(serde_json::to_string_pretty(&summary)?.as_bytes())?;
    file.write_all(b"\n")?;
    rendered.push_str(&format!("wrote {}\n", out.join("summary.json").display()));
    Ok(rendered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use reboot_core::envs::RewardDistribution;

    fn tiny_experiment() -> ExperimentSpec {
        ExperimentSpec {
            label: "tiny".into(),
            instance: InstanceSpec::Explicit {
                arms: vec![
                    RewardDistribution::Bernoulli { p: 1.0 },
                    RewardDistribution::Bernoulli { p: 0.0 },
                ],
            },
            policies: vec![PolicySpec::Ftl, PolicySpec::RebootGaussian { sigma_a: 1.5 }],
            horizon: 50,
        }
    }

    #[test]
    fn parallel_fanout_equals_sequential() {
        let exp = tiny_experiment();
        let (parallel, _) = run_policy(&exp.policies[1], &exp.instance, exp.horizon, 8, 5).unwrap();
        let sequential: Vec<RunRecord> = (0..8)
            .map(|i| {
                let seed = run_seed(5, i);
                let mut irng = seeded_stream(seed, INSTANCE_STREAM);
                let inst = make_instance(&exp.instance, &mut irng).unwrap();
                run_episode(&exp.policies[1], &inst, exp.horizon, seed).unwrap()
            })
            .collect();
        let sequential = aggregate(&sequential).unwrap();
        assert_eq!(parallel.mean_regret, sequential.mean_regret);
        assert_eq!(parallel.stderr, sequential.stderr);
    }

    #[test]
    fn csv_has_one_row_per_round_and_finite_fields() {
        let exp = tiny_experiment();
        let (curve, _) = run_policy(&exp.policies[0], &exp.instance, exp.horizon, 4, 0).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("curve.csv");
        write_curve_csv(&path, &curve).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "round,mean_regret,stderr");
        assert_eq!(lines.len(), exp.horizon + 1);
        for line in &lines[1..] {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 3);
            assert!(fields[1].parse::<f64>().unwrap().is_finite());
            assert!(fields[2].parse::<f64>().unwrap().is_finite());
        }
    }

    #[test]
    fn execute_writes_curves_and_summary() {
        let dir = tempfile::tempdir().unwrap();
        let plan = Plan::Curves {
            experiments: vec![tiny_experiment()],
            runs: 4,
            seed: 1,
            out: dir.path().join("out"),
        };
        execute(&plan).unwrap();
        assert!(dir.path().join("out/tiny__ftl.csv").exists());
        assert!(dir.path().join("out/tiny__reboot-1.5.csv").exists());
        let summary: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join("out/summary.json")).unwrap())
                .unwrap();
        assert_eq!(summary["runs"], 4);
        assert_eq!(
            summary["experiments"][0]["policies"]
                .as_array()
                .unwrap()
                .len(),
            2
        );
    }
}
