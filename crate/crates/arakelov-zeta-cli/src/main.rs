//! `arakelov-zeta`: evaluation, zero atlases, scans and a verification suite
//! for the two-variable zeta function.

mod commands;
mod config;
mod error;
mod output;
mod verify;

use clap::{Args, Parser, Subcommand};
use config::{FileConfig, FlagConfig, OutputFormat, RunConfig};
use error::CliError;
use num_complex::Complex64;
use std::path::PathBuf;
use std::process::ExitCode;

/// Two-variable zeta function of the rationals: values, zeros, densities and checks.
#[derive(Debug, Parser)]
#[command(name = "arakelov-zeta", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every command; they override the configuration file
/// named by `ARAKELOV_ZETA_CONFIG`.
#[derive(Debug, Args)]
struct GlobalArgs {
    /// Working precision in bits (at most 53).
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Target absolute/relative tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output record format.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Write records to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script for the output file (CSV only).
    #[arg(long, global = true)]
    gnuplot: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate Z(w, s) and ξ(w, s) at a point or along the critical line.
    Eval(EvalArgs),
    /// Locate zeros of ξ(u, ·) with 0 < Im s ≤ tmax.
    Zeros(ZerosArgs),
    /// Count zeros N_u(T) and report the remainder S_u(T).
    Count(CountArgs),
    /// Follow a zero of ξ(u, ·) as u moves from u0 to u1.
    Track(TrackArgs),
    /// Sample the density of the semigroup member with parameters (u, v).
    Density(DensityArgs),
    /// Coefficient polynomials c*_m(w) of θ^w.
    Coeffs(CoeffsArgs),
    /// Invariants of an imaginary quadratic field.
    Field(FieldArgs),
    /// Sign changes of ξ_K(0, it) for an imaginary quadratic field.
    Signs(SignsArgs),
    /// Replay the verification suites and report each claim.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// First variable w, as `a`, `a,b` or `a+bi`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    w: Complex64,
    /// Second variable s.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, required_unless_present = "critical_line")]
    s: Option<Complex64>,
    /// Stream values on s = w/2 + it for t = 0, step, ..., tmax.
    #[arg(long, conflicts_with = "s")]
    critical_line: bool,
    #[arg(long, default_value_t = 10.0)]
    tmax: f64,
    #[arg(long, default_value_t = 0.1)]
    step: f64,
}

#[derive(Debug, Args)]
struct ZerosArgs {
    #[arg(long, allow_hyphen_values = true)]
    u: f64,
    #[arg(long)]
    tmax: f64,
    /// Search the whole strip |Re s − u/2| ≤ |u|/2 + 8 instead of the band around the critical line.
    #[arg(long)]
    full_strip: bool,
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(long, allow_hyphen_values = true)]
    u: f64,
    /// Height T; several values may be given.
    #[arg(long = "T", num_args = 1.., required = true)]
    t: Vec<f64>,
}

#[derive(Debug, Args)]
struct TrackArgs {
    #[arg(long, allow_hyphen_values = true)]
    u0: f64,
    #[arg(long, allow_hyphen_values = true)]
    u1: f64,
    /// Approximate zero of ξ(u0, ·).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    seed: Complex64,
    #[arg(long, default_value_t = 100)]
    steps: usize,
}

#[derive(Debug, Args)]
struct DensityArgs {
    #[arg(long)]
    u: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    v: f64,
    /// Half-width of the sampled interval (default depends on u).
    #[arg(long)]
    extent: Option<f64>,
    /// Grid spacing (default depends on u and v).
    #[arg(long)]
    step: Option<f64>,
}

#[derive(Debug, Args)]
struct CoeffsArgs {
    /// Largest index m.
    #[arg(long, default_value_t = 20)]
    order: usize,
}

#[derive(Debug, Args)]
struct FieldArgs {
    /// Field discriminant; omit for all supported fields.
    #[arg(long, allow_hyphen_values = true)]
    discriminant: Option<i64>,
}

#[derive(Debug, Args)]
struct SignsArgs {
    #[arg(long, allow_hyphen_values = true)]
    discriminant: i64,
    #[arg(long, default_value_t = 50.0)]
    tmax: f64,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = verify::Suite::All)]
    suite: verify::Suite,
}

/// Parses `a`, `a,b`, `a+bi` or `a-bi`.
fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t = text.trim();
    if let Some((a, b)) = t.split_once(',') {
        let re = a.trim().parse::<f64>().map_err(|e| format!("bad real part {a:?}: {e}"))?;
        let im = b.trim().parse::<f64>().map_err(|e| format!("bad imaginary part {b:?}: {e}"))?;
        return Ok(Complex64::new(re, im));
    }
    t.parse::<Complex64>().map_err(|e| format!("cannot parse {text:?} as a complex number: {e}"))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let g = cli.global;
    let cfg = RunConfig::resolve(
        FileConfig::from_env()?,
        FlagConfig {
            precision_bits: g.precision,
            tol: g.tol,
            thread_count: g.threads,
            output_format: g.format,
            output_path: g.out,
        },
    );
    if let Some(n) = cfg.thread_count {
        if n == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let ctx = cfg.context()?;
    let out = commands::Output::new(&cfg, g.gnuplot);
    match cli.command {
        Command::Eval(a) => match a.s {
            Some(s) if !a.critical_line => commands::eval_point(&out, a.w, s, &ctx)?,
            _ => commands::eval_line(&out, a.w, a.tmax, a.step, &ctx)?,
        },
        Command::Zeros(a) => commands::zeros(&out, a.u, a.tmax, a.full_strip, &ctx)?,
        Command::Count(a) => commands::count(&out, a.u, &a.t, &ctx)?,
        Command::Track(a) => commands::track(&out, a.u0, a.u1, a.seed, a.steps, &ctx)?,
        Command::Density(a) => commands::density(&out, a.u, a.v, a.extent, a.step, &ctx)?,
        Command::Coeffs(a) => commands::coeffs(&out, a.order)?,
        Command::Field(a) => commands::field(&out, a.discriminant, &ctx)?,
        Command::Signs(a) => commands::signs(&out, a.discriminant, a.tmax, a.step, &ctx)?,
        Command::Verify(a) => return verify::run(&out, a.suite, &ctx),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("arakelov-zeta: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_argument_forms() {
        assert_eq!(parse_complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex("0.5,42.04").unwrap(), Complex64::new(0.5, 42.04));
        assert_eq!(parse_complex("-1-2i").unwrap(), Complex64::new(-1.0, -2.0));
        assert!(parse_complex("one").is_err());
    }

    #[test]
    fn command_line_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
