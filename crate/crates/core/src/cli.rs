//! Command-line front end. `main.rs` only calls [`run`].

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::characters::Characters;
use crate::error::{Error, Result};
use crate::fields::FieldCtx;
use crate::hypergeo::{GParams, GnPlan};
use crate::padics::default_precision;
use crate::varieties::{DiagonalSurface, HessianCurve, WeierstrassCurve};
use crate::verify::{run_suite_with_threads, OutputFormat, SuiteConfig};

pub const THREADS_ENV: &str = "PADIC_HYPERGEO_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "padic-hypergeo",
    version,
    about = "Finite-field hypergeometric functions and point counts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate G[top; bottom | t] over F_q.
    Gn(GnArgs),
    /// Brute-force point counts.
    #[command(subcommand)]
    Count(CountKind),
    /// Run check families over a grid of fields and write a report.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
}

#[derive(Debug, Args)]
pub struct GnArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Comma-separated fractions, e.g. `1/4,3/4`.
    #[arg(long, allow_hyphen_values = true)]
    pub top: String,
    #[arg(long, allow_hyphen_values = true)]
    pub bottom: String,
    /// Field element: an integer, or base-p coefficients `c0,c1,...`.
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    #[arg(long)]
    pub precision: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum CountKind {
    /// X^d + Y^d = d lambda X^k Y^(d-k).
    Dsurface {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// y^2 = x^3 + a2 x^2 + a4 x + a6.
    Ec {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a2: String,
        #[arg(long, allow_hyphen_values = true)]
        a4: String,
        #[arg(long, allow_hyphen_values = true)]
        a6: String,
    },
    /// x^3 + y^3 + 1 = 3 a x y.
    Hessian {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Family ids or prefixes, comma-separated; `all` runs everything.
    #[arg(long, default_value = "all", value_delimiter = ',')]
    pub suite: Vec<String>,
    #[arg(long, default_value_t = 29)]
    pub pmax: u64,
    #[arg(long, default_value_t = 2)]
    pub rmax: u32,
    #[arg(long, default_value_t = 7)]
    pub dmax: u64,
    /// Overrides the per-field default precision.
    #[arg(long)]
    pub precision: Option<u32>,
    /// Report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    pub format: String,
    /// Worker threads; 0 means one per core.
    #[arg(long, env = THREADS_ENV, default_value_t = 0)]
    pub threads: usize,
    /// Record per-record wall time (makes reports non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Failures = 1,
    Usage = 2,
}

fn field(args: &FieldArgs) -> Result<FieldCtx> {
    FieldCtx::new(args.p, args.r)
}

fn warn_precision(out: &mut dyn Write, p: u64, r: u32, prec: u32) -> Result<()> {
    let need = default_precision(p, r);
    if prec < need {
        writeln!(
            out,
            "warning: precision {prec} is below {need}, the level at which integer values are recovered reliably"
        )
        .map_err(io_err)?;
    }
    Ok(())
}

fn io_err(e: std::io::Error) -> Error {
    Error::Config(format!("io: {e}"))
}

fn cmd_gn(a: &GnArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Exit> {
    let f = field(&a.field)?;
    let prec = match a.precision {
        Some(m) => {
            warn_precision(err, f.p(), f.r(), m)?;
            m
        }
        None => default_precision(f.p(), f.r()),
    };
    let params = GParams::parse(&a.top, &a.bottom)?;
    let t = f.parse(&a.t)?;
    let chars = Characters::new(&f, prec)?;
    let zq = chars.zq();
    let v = GnPlan::new(&chars, &params)?.eval(t);
    writeln!(
        out,
        "G{}({t}) over F_{} = {}",
        params.format(),
        f.q(),
        v.format(zq)
    )
    .map_err(io_err)?;
    let bound = (zq.p_pow(prec) / 4).min(i64::MAX as u64) as i64;
    if let Ok(n) = v.recover_integer(zq, -bound, bound) {
        writeln!(out, "{n}").map_err(io_err)?;
    }
    Ok(Exit::Ok)
}

fn cmd_count(kind: &CountKind, out: &mut dyn Write) -> Result<Exit> {
    let line = match kind {
        CountKind::Dsurface {
            field: fa,
            d,
            k,
            lambda,
        } => {
            let f = field(fa)?;
            let l = f.parse(lambda)?;
            let s = DiagonalSurface::new(*d, *k, l)?;
            let mut line = format!(
                "p={} r={} d={d} k={k} lambda={l}: projective={} affine={}",
                f.p(),
                f.r(),
                s.count_projective(),
                s.count_affine()
            );
            if s.p_admissible() {
                line.push_str(&format!(" r_q={} r_q'={}", s.r_q()?, s.r_q_prime()?));
            }
            line
        }
        CountKind::Ec {
            field: fa,
            a2,
            a4,
            a6,
        } => {
            let f = field(fa)?;
            let e = WeierstrassCurve::new(f.parse(a2)?, f.parse(a4)?, f.parse(a6)?);
            format!(
                "p={} r={} a2={} a4={} a6={}: points={} a_q={}",
                f.p(),
                f.r(),
                e.a2,
                e.a4,
                e.a6,
                e.count()?,
                e.trace()?
            )
        }
        CountKind::Hessian { field: fa, a } => {
            let f = field(fa)?;
            let c = HessianCurve::new(f.parse(a)?)?;
            format!(
                "p={} r={} a={}: affine={} projective={}",
                f.p(),
                f.r(),
                c.a,
                c.count_affine(),
                c.count_projective()
            )
        }
    };
    writeln!(out, "{line}").map_err(io_err)?;
    Ok(Exit::Ok)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Exit> {
    let format: OutputFormat = a.format.parse()?;
    let cfg = SuiteConfig {
        suite: a.suite.clone(),
        pmax: a.pmax,
        rmax: a.rmax,
        dmax: a.dmax,
        precision: a.precision,
        timings: a.timings,
    };
    cfg.families()?;
    if let (Some(m), Some(&(p, r))) = (a.precision, cfg.fields().last()) {
        warn_precision(err, p, r, m)?;
    }
    let threads = if a.threads == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        a.threads
    };
    let report = run_suite_with_threads(&cfg, threads)?;
    let text = report.render(format)?;
    match &a.out {
        Some(path) => std::fs::write(path, &text).map_err(io_err)?,
        None => out.write_all(text.as_bytes()).map_err(io_err)?,
    }
    let s = &report.summary;
    writeln!(
        err,
        "pass={} fail={} skip={} diagnostics={}",
        s.pass, s.fail, s.skip, s.diagnostics
    )
    .map_err(io_err)?;
    Ok(if report.is_success() {
        Exit::Ok
    } else {
        Exit::Failures
    })
}

/// Runs an already parsed command line.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let res = match &cli.command {
        Command::Gn(a) => cmd_gn(a, out, err),
        Command::Count(k) => cmd_count(k, out),
        Command::Verify(a) => cmd_verify(a, out, err),
    };
    res.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        Exit::Usage
    })
}

/// Parses `args` (program name first) and runs; clap usage errors exit 2.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                Exit::Usage as i32
            } else {
                Exit::Ok as i32
            };
        }
    };
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    execute(&cli, &mut out, &mut err) as i32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (Exit, String, String) {
        let cli =
            Cli::try_parse_from(std::iter::once("padic-hypergeo").chain(args.iter().copied()))
                .unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = execute(&cli, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn gn_vanishing_value() {
        let (code, out, _) = call(&[
            "gn", "--p", "7", "--top", "1/4,3/4", "--bottom", "0,1/2", "--t", "6",
        ]);
        assert_eq!(code, Exit::Ok);
        assert_eq!(out.lines().last(), Some("0"));
    }

    #[test]
    fn gn_rejects_denominator_divisible_by_p() {
        let (code, _, err) = call(&[
            "gn", "--p", "3", "--top", "1/6,1/2", "--bottom", "0,0", "--t", "1",
        ]);
        assert_eq!(code, Exit::Usage);
        assert!(err.contains("divisible by p"));
    }

    #[test]
    fn low_precision_warns() {
        let (_, _, err) = call(&[
            "gn",
            "--p",
            "5",
            "--top",
            "1/2",
            "--bottom",
            "0",
            "--t",
            "2",
            "--precision",
            "2",
        ]);
        assert!(err.starts_with("warning"));
    }

    #[test]
    fn counts() {
        let (_, out, _) = call(&[
            "count", "dsurface", "--p", "5", "--d", "2", "--k", "1", "--lambda", "1",
        ]);
        assert!(out.contains("projective=1 "));
        let (_, out, _) = call(&["count", "ec", "--p", "5", "--a4", "1", "--a6", "0"]);
        assert!(out.ends_with("points=4 a_q=2\n"));
        let (code, _, _) = call(&["count", "ec", "--p", "5", "--a4", "0", "--a6", "0"]);
        assert_eq!(code, Exit::Usage);
    }
}
