//! Rendering of the theory report: a human-readable table by default, JSON
//! on request.

use reboot_core::theory::TheoryReport;

use crate::CliError;

pub fn render_human(rep: &TheoryReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "theory report: sigma_a = {}, T = {}, gap = {}\n\n",
        rep.sigma_a, rep.horizon, rep.gap
    ));
    out.push_str(&format!("  C1(sigma_a)     = {:.6}\n", rep.c1));
    out.push_str(&format!("  C2(sigma_a)     = {:.6}\n", rep.c2));
    out.push_str(&format!("  M(r)            = {:.6}\n", rep.m_r));
    out.push_str(&format!("  regret bound    = {:.6}\n\n", rep.bound_value));
    out.push_str("  sample-size thresholds (log T scaled):\n");
    for (name, value) in rep.thresholds.as_pairs() {
        out.push_str(&format!("    {name} = {value:.6}\n"));
    }
    out.push_str("\n  tail checks (bound vs numeric CDF oracle):\n");
    for c in &rep.checks {
        let verdict = if !c.oracle_converged {
            "ORACLE FAILED"
        } else if c.holds {
            "ok"
        } else {
            "VIOLATED"
        };
        out.push_str(&format!(
            "    {:<28} bound {:>13.6e}  true {:>13.6e}  {}\n",
            c.id, c.bound, c.true_tail, verdict
        ));
    }
    let n_ok = rep.checks.iter().filter(|c| c.holds).count();
    out.push_str(&format!(
        "\n  {} of {} tail checks hold\n",
        n_ok,
        rep.checks.len()
    ));
    out
}

pub fn render_json(rep: &TheoryReport) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(rep)?)
}
