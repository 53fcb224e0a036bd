use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "biuniv",
    version,
    about = "Coefficient bounds for bi-univalent function classes: compute, verify, sweep"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Compute every implemented bound at one (lambda, beta, phi) point (JSON).
    Bounds(BoundsArgs),
    /// Run the verification suite; exit 1 if any mathematical check fails.
    Verify(VerifyArgs),
    /// Sweep the Hankel bound and an empirical sampler maximum over a grid (CSV).
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhiKindArg {
    /// (1 + (1-2b)z)/(1-z): every coefficient is 2(1-b).
    Linear,
    /// ((1+z)/(1-z))^b: B1 = 2b, B2 = 2b^2.
    Power,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
pub struct BoundsArgs {
    /// Convex-combination weight, in [0, 1].
    #[arg(long)]
    pub lambda: f64,

    /// Order parameter for the Hankel bound (and the default phi), in [0, 1).
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,

    /// First Taylor coefficient of a custom phi (requires --phi-b2).
    #[arg(long, requires = "phi_b2", conflicts_with_all = ["phi_kind", "phi_param"])]
    pub phi_b1: Option<f64>,

    /// Second Taylor coefficient of a custom phi (requires --phi-b1).
    #[arg(long, requires = "phi_b1")]
    pub phi_b2: Option<f64>,

    /// Built-in phi family; defaults to linear at the given --beta.
    #[arg(long, value_enum)]
    pub phi_kind: Option<PhiKindArg>,

    /// Parameter of the built-in phi family (requires --phi-kind).
    #[arg(long, requires = "phi_kind")]
    pub phi_param: Option<f64>,

    /// Output format (bounds reports are JSON only).
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Lambda grid "a:b:step" for the oracle and sampler checks
    /// (also overrides the sign-suite lambda lattice when given).
    #[arg(long)]
    pub lambda_grid: Option<String>,

    /// Beta grid "a:b:step" for the oracle and sampler checks
    /// (also overrides the sign-suite beta lattice when given).
    #[arg(long)]
    pub beta_grid: Option<String>,

    /// Oracle grid step, at most 0.01.
    #[arg(long, default_value_t = 0.005)]
    pub resolution: f64,

    /// Accepted Caratheodory pairs / Schwarz draws per lattice point.
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,

    /// Seed for the deterministic sampling streams.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Lambda grid "a:b:step".
    #[arg(long, default_value = "0:1:0.25")]
    pub lambda_grid: String,

    /// Beta grid "a:b:step".
    #[arg(long, default_value = "0:0.8:0.2")]
    pub beta_grid: String,

    /// Sampler draws per grid cell.
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,

    /// Seed for the deterministic sampling streams.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Output format (sweeps are CSV only).
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Parse an "a:b:step" grid into ascending values, endpoints snapped.
pub fn parse_grid(spec: &str, name: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("{name}: expected \"a:b:step\", got {spec:?}"));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("{name}: {p:?} is not a number"))
        })
        .collect::<Result<_, _>>()?;
    let (a, b, step) = (nums[0], nums[1], nums[2]);
    if !a.is_finite() || !b.is_finite() || !step.is_finite() {
        return Err(format!("{name}: grid endpoints and step must be finite"));
    }
    if step <= 0.0 {
        return Err(format!("{name}: step must be positive"));
    }
    if b < a {
        return Err(format!("{name}: grid end {b} is below start {a}"));
    }
    let n = ((b - a) / step + 1e-9).floor() as usize;
    let mut values = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let v = a + step * i as f64;
        // Snap the last point onto the endpoint when it lands there.
        let v = if (v - b).abs() < 1e-9 * (1.0 + b.abs()) {
            b
        } else {
            v
        };
        values.push(v);
    }
    Ok(values)
}

/// Parse + domain-check a lambda grid.
pub fn lambda_grid(spec: &str) -> Result<Vec<f64>, String> {
    let values = parse_grid(spec, "--lambda-grid")?;
    for &v in &values {
        if !(0.0..=1.0).contains(&v) {
            return Err(format!("--lambda-grid: value {v} outside [0, 1]"));
        }
    }
    Ok(values)
}

/// Parse + domain-check a beta grid.
pub fn beta_grid(spec: &str) -> Result<Vec<f64>, String> {
    let values = parse_grid(spec, "--beta-grid")?;
    for &v in &values {
        if !(0.0..1.0).contains(&v) {
            return Err(format!("--beta-grid: value {v} outside [0, 1)"));
        }
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(
            parse_grid("0:1:0.25", "g").unwrap(),
            vec![0.0, 0.25, 0.5, 0.75, 1.0]
        );
        assert_eq!(parse_grid("0.5:0.5:1", "g").unwrap(), vec![0.5]);
        let g = parse_grid("0:1:0.3", "g").unwrap();
        assert_eq!(g.len(), 4);
        assert!((g[3] - 0.9).abs() < 1e-12);
        assert!(parse_grid("0:1", "g").is_err());
        assert!(parse_grid("0:1:0", "g").is_err());
        assert!(parse_grid("1:0:0.1", "g").is_err());
        assert!(parse_grid("0:x:0.1", "g").is_err());
    }

    #[test]
    fn grid_domains() {
        assert!(lambda_grid("0:1:0.25").is_ok());
        assert!(lambda_grid("0:1.5:0.25").is_err());
        assert!(beta_grid("0:0.8:0.2").is_ok());
        assert!(beta_grid("0:1:0.25").is_err());
    }
}
