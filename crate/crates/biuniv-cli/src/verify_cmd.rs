//! `biuniv verify`: run the verification suite and emit a machine-readable
//! report. Exit 0 when every check passes, 1 when any fails.

use serde::Serialize;

use crate::args::{beta_grid, lambda_grid, Format, VerifyArgs};
use crate::checks::{all_checks, CheckResult, VerifyConfig};
use crate::fmt::{emit, fmt12};

#[derive(Serialize)]
struct VerifyReport {
    seed: u64,
    resolution: f64,
    samples: u64,
    checks: Vec<CheckResult>,
    all_pass: bool,
}

fn default_lattice(step: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| i as f64 * step).collect()
}

pub fn run(args: VerifyArgs) -> Result<i32, String> {
    if !(args.resolution > 0.0 && args.resolution <= 0.01) {
        return Err(format!(
            "resolution exceeds maximum: {} (must be in (0, 0.01])",
            args.resolution
        ));
    }
    if args.samples == 0 {
        return Err("--samples must be positive".into());
    }

    let lattice_lambdas = match &args.lambda_grid {
        Some(s) => lambda_grid(s)?,
        None => default_lattice(0.25, 5),
    };
    let lattice_betas = match &args.beta_grid {
        Some(s) => beta_grid(s)?,
        None => default_lattice(0.2, 5),
    };
    // The sign lattice defaults are denser; explicit grids override both.
    let sign_lambdas = match &args.lambda_grid {
        Some(s) => lambda_grid(s)?,
        None => default_lattice(0.1, 11),
    };
    let sign_betas = match &args.beta_grid {
        Some(s) => beta_grid(s)?,
        None => default_lattice(0.05, 20),
    };

    let cfg = VerifyConfig {
        lattice_lambdas,
        lattice_betas,
        sign_lambdas,
        sign_betas,
        c_intervals: 200,
        resolution: args.resolution,
        samples: args.samples,
        seed: args.seed,
    };

    let mut checks = Vec::new();
    for (name, check) in all_checks() {
        let result = check(&cfg);
        eprintln!(
            "{} {name} (worst residual {})",
            if result.pass { "ok  " } else { "FAIL" },
            fmt12(result.worst_residual),
        );
        checks.push(result);
    }
    let all_pass = checks.iter().all(|c| c.pass);
    if let Some(first) = checks.iter().find(|c| !c.pass) {
        eprintln!(
            "first failing check: {} with witness {:?}",
            first.check, first.witness
        );
    }

    let report = VerifyReport {
        seed: args.seed,
        resolution: args.resolution,
        samples: args.samples,
        checks,
        all_pass,
    };
    let content = match args.format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
        ),
        Format::Csv => {
            let mut out = String::from("check,pass,worst_residual,witness\n");
            for c in &report.checks {
                let witness = c
                    .witness
                    .iter()
                    .map(|(k, v)| format!("{k}={}", fmt12(*v)))
                    .collect::<Vec<_>>()
                    .join(";");
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    c.check,
                    c.pass,
                    fmt12(c.worst_residual),
                    witness
                ));
            }
            out
        }
    };
    emit(args.output.as_deref(), &content)?;
    Ok(if all_pass { 0 } else { 1 })
}
