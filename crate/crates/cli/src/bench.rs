//! Wall-time comparison across policies, mirroring the run-time table:
//! rows are (K, T) grid points, columns are policies, cells are median
//! episode seconds.

use std::fs;
use std::path::Path;

use reboot_core::policies::PolicySpec;
use reboot_core::sim::benchmark;

use crate::CliError;

#[derive(Debug, Clone)]
pub struct TimingRow {
    pub arms: usize,
    pub horizon: usize,
    pub policy: String,
    pub median_seconds: f64,
}

/// Median episode time for every (grid point, policy) pair.
pub fn run_grid(
    grid: &[(usize, usize)],
    policies: &[PolicySpec],
    reps: usize,
) -> Result<Vec<TimingRow>, CliError> {
    let mut rows = Vec::with_capacity(grid.len() * policies.len());
    for &(arms, horizon) in grid {
        for policy in policies {
            let summary = benchmark(policy, arms, horizon, reps)?;
            rows.push(TimingRow {
                arms,
                horizon,
                policy: policy.label(),
                median_seconds: summary.median_seconds,
            });
        }
    }
    Ok(rows)
}

/// Pivot the rows into a (K, T) x policy table.
pub fn render_table(
    grid: &[(usize, usize)],
    policies: &[PolicySpec],
    rows: &[TimingRow],
) -> String {
    let mut out = String::new();
    out.push_str(&format!("{:>5} {:>7}", "K", "T"));
    for p in policies {
        out.push_str(&format!(" {:>14}", p.label()));
    }
    out.push('\n');
    for &(arms, horizon) in grid {
        out.push_str(&format!("{arms:>5} {horizon:>7}"));
        for p in policies {
            let label = p.label();
            let cell = rows
                .iter()
                .find(|r| r.arms == arms && r.horizon == horizon && r.policy == label)
                .map(|r| r.median_seconds)
                .unwrap_or(f64::NAN);
            out.push_str(&format!(" {cell:>14.4}"));
        }
        out.push('\n');
    }
    out
}

pub fn write_timings_csv(path: &Path, rows: &[TimingRow]) -> Result<(), CliError> {
    let mut buf = String::from("arms,horizon,policy,median_seconds\n");
    for r in rows {
        buf.push_str(&format!(
            "{},{},{},{:.6e}\n",
            r.arms, r.horizon, r.policy, r.median_seconds
        ));
    }
    fs::write(path, buf)?;
    Ok(())
}

/// Run a timing plan and write `timings.csv`; returns the rendered table.
pub fn execute_timing(
    grid: &[(usize, usize)],
    policies: &[PolicySpec],
    reps: usize,
    out: &Path,
) -> Result<String, CliError> {
    fs::create_dir_all(out)?;
    let rows = run_grid(grid, policies, reps)?;
    write_timings_csv(&out.join("timings.csv"), &rows)?;
    let mut table = render_table(grid, policies, &rows);
    table.push_str(&format!("wrote {}\n", out.join("timings.csv").display()));
    Ok(table)
}
