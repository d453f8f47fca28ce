use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::UsageError;

#[derive(Debug, Parser)]
#[command(
    name = "specqm",
    version,
    about = "Spectral two-body scattering and bound-state studies"
)]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub task: Task,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Task {
    /// Phase shifts along a momentum sweep.
    Phase,
    /// Scattering lengths along a strength sweep.
    Alen,
    /// Bound states by each method against the closed-form roots.
    Bound,
    /// Average relative error E(N).
    Converge,
    /// Hydrogen-like levels from the log-singular momentum-space equation.
    Hydrogen,
    /// Quadrature and singular weights on the N-point grid.
    Weights,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Potential {
    Exp,
    Hulthen,
    Morse,
    Coulomb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    Phase,
    Length,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Opts {
    #[arg(long, global = true, value_enum, default_value = "exp")]
    pub potential: Potential,
    /// Strength `s = 2 mu V0 a^2`.
    #[arg(
        long,
        global = true,
        default_value_t = 0.8,
        allow_negative_numbers = true
    )]
    pub s: f64,
    #[arg(long, global = true, default_value_t = 1.0)]
    pub a: f64,
    /// Morse minimum; defaults to 0.8668/0.3408 in units of `a`.
    #[arg(long, global = true)]
    pub d: Option<f64>,
    /// Charge of the point-Coulomb model.
    #[arg(long = "Z", global = true, default_value_t = 1)]
    pub z: u32,
    #[arg(long, global = true, default_value_t = 0)]
    pub l: usize,
    /// Comma-separated node counts.
    #[arg(long = "N", global = true, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Cutoff radius; defaults to 30 a.
    #[arg(long = "R", global = true)]
    pub r: Option<f64>,
    #[arg(long, global = true)]
    pub sigma: Option<f64>,
    /// schrodinger, volterra, momentum, a comma list, or all.
    #[arg(long, global = true, default_value = "all")]
    pub method: String,
    /// min,max,count of the momentum or strength sweep.
    #[arg(long, global = true)]
    pub sweep: Option<String>,
    /// Quantity of the `converge` task.
    #[arg(long, global = true, value_enum, default_value = "phase")]
    pub quantity: QuantityArg,
    /// Point z of the singular weights in the `weights` task.
    #[arg(
        long,
        global = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub point: f64,
    /// Flat `key = value` file; command-line flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 lets the pool decide.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

/// Parses `min,max,count`.
pub fn parse_sweep(s: &str) -> Result<(f64, f64, usize), UsageError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || UsageError(format!("sweep must be min,max,count, got '{s}'"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let min: f64 = parts[0].parse().map_err(|_| bad())?;
    let max: f64 = parts[1].parse().map_err(|_| bad())?;
    let count: usize = parts[2].parse().map_err(|_| bad())?;
    if count == 0 || max.partial_cmp(&min).is_none_or(|o| o.is_lt()) {
        return Err(bad());
    }
    Ok((min, max, count))
}

/// Reads `key = value` lines; blank lines and `#` comments are skipped.
pub fn config_args(text: &str) -> Result<Vec<OsString>, UsageError> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| UsageError(format!("config line {}: expected key = value", no + 1)))?;
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() || key == "config" {
            return Err(UsageError(format!(
                "config line {}: invalid key '{key}'",
                no + 1
            )));
        }
        out.push(format!("--{key}").into());
        out.push(value.trim().into());
    }
    Ok(out)
}

fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

/// Splices the config-file flags in front of the command-line flags so the latter override them.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, UsageError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
    let extra = config_args(&text)?;
    let mut out: Vec<OsString> = args[..1].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[1..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_parsing() {
        assert_eq!(parse_sweep("0.1, 2, 5").unwrap(), (0.1, 2.0, 5));
        assert!(parse_sweep("1,0,5").is_err());
        assert!(parse_sweep("0,1").is_err());
        assert!(parse_sweep("0,1,0").is_err());
    }

    #[test]
    fn config_lines() {
        let args = config_args("# study\npotential = hulthen\n\nN = 16,32  # grid\n").unwrap();
        let args: Vec<String> = args.into_iter().map(|s| s.into_string().unwrap()).collect();
        assert_eq!(args, ["--potential", "hulthen", "--N", "16,32"]);
        assert!(config_args("potential hulthen").is_err());
    }

    #[test]
    fn command_line_overrides_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        std::io::Write::write_all(&mut f, b"s = 0.3\nl = 1\n").unwrap();
        let raw: Vec<OsString> = [
            "specqm",
            "--s",
            "0.1",
            "phase",
            "--config",
            f.path().to_str().unwrap(),
            "--s",
            "0.5",
        ]
        .iter()
        .map(OsString::from)
        .collect();
        let cli = Cli::try_parse_from(expand(raw).unwrap()).unwrap();
        assert_eq!(cli.opts.s, 0.5);
        assert_eq!(cli.opts.l, 1);
        assert_eq!(cli.task, Task::Phase);
    }
}
