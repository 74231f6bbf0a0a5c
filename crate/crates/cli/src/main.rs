//! `vsum`: verification suites for divisor-sum identities, run from the
//! command line and emitting machine-readable tables.
//!
//! Exit codes: 0 = all residuals within thresholds, 1 = a verification
//! failed numerically, 2 = usage error. Output is deterministic
//! byte-for-byte for fixed arguments.

// `!(x > 0.0)` guards deliberately reject NaN along with the sign
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;

use clap::{Parser, Subcommand, ValueEnum};
use output::{Cell, Format, Table};
use std::f64::consts::PI;
use std::process::ExitCode;
use vsum_core::{arith, poisson, theta, voronoi};

#[derive(Parser)]
#[command(name = "vsum", version, about = "Divisor-sum and summation-formula verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Fmt::Csv)]
    format: Fmt,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Csv,
    Json,
}

impl From<Fmt> for Format {
    fn from(f: Fmt) -> Format {
        match f {
            Fmt::Csv => Format::Csv,
            Fmt::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sieve divisor counts and partial sums: rows (n, d, bigD)
    Divisor {
        /// Sieve limit (>= 1)
        #[arg(long)]
        limit: u64,
        /// Comma-separated checkpoints; defaults to every n up to 1000,
        /// then 100 log-spaced points
        #[arg(long)]
        checkpoints: Option<String>,
    },
    /// Scan the Dirichlet error term: rows (x, delta, normalizedDelta)
    DeltaScan {
        /// Upper end of the scan (>= 2)
        #[arg(long)]
        xmax: u64,
        /// Number of log-spaced points before rounding/deduplication
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Evaluate all Theta routes: rows mirror ThetaDecomposition
    Theta {
        /// Comma-separated t values; defaults to 25 log-spaced in [0.05, 20]
        #[arg(long, short = 't')]
        t: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        ///

        /// Exit 1 if any residual exceeds this
        #[arg(long, default_value_t = 1e-8)]
        threshold: f64,
    },
    /// Two-sided Poisson-summation residuals: rows (alpha, lhs, rhs, residual)
    Poisson {
        #[arg(long, value_enum)]
        which: Summand,
        /// Comma-separated alpha grid; defaults depend on the summand
        #[arg(long)]
        alphas: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 1e-8)]
        threshold: f64,
    },
    /// Full two-sided summation-formula report for one test function
    Voronoi {
        #[arg(long, value_enum)]
        testfn: TestFn,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long, default_value_t = 1e-6)]
        threshold: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Summand {
    Hreg,
    Eicombo,
    Zero,
}

#[derive(Clone, Copy, ValueEnum)]
enum TestFn {
    Poly,
    Bump,
    Frac,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn numeric_failure(msg: &str) -> ExitCode {
    eprintln!("verification failed: {msg}");
    ExitCode::from(1)
}

fn parse_f64_list(text: &str) -> Option<Vec<f64>> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().ok())
        .collect()
}

fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n)
        .map(|i| a * (b / a).powf(i as f64 / (n - 1) as f64))
        .collect()
}

fn emit(table: &Table, format: Fmt, out: &Option<std::path::PathBuf>) -> std::io::Result<()> {
    let text = table.render(format.into());
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Divisor { limit, checkpoints } => cmd_divisor(limit, checkpoints),
        Command::DeltaScan { xmax, points } => cmd_delta_scan(xmax, points),
        Command::Theta { t, tol, threshold } => cmd_theta(t, tol, threshold),
        Command::Poisson {
            which,
            alphas,
            tol,
            threshold,
        } => cmd_poisson(which, alphas, tol, threshold),
        Command::Voronoi {
            testfn,
            tol,
            threshold,
        } => cmd_voronoi(testfn, tol, threshold),
    };
    match result {
        Ok((table, failed)) => {
            if emit(&table, cli.format, &cli.out).is_err() {
                return usage_error("cannot write output file");
            }
            if let Some(msg) = failed {
                return numeric_failure(&msg);
            }
            ExitCode::SUCCESS
        }
        Err(CmdError::Usage(msg)) => usage_error(&msg),
        Err(CmdError::Numeric(msg)) => numeric_failure(&msg),
    }
}

enum CmdError {
    Usage(String),
    Numeric(String),
}

type CmdResult = Result<(Table, Option<String>), CmdError>;

impl From<vsum_core::Error> for CmdError {
    fn from(e: vsum_core::Error) -> CmdError {
        match e {
            vsum_core::Error::Domain(m) | vsum_core::Error::InvalidInput(m) => CmdError::Usage(m),
            other => CmdError::Numeric(other.to_string()),
        }
    }
}

fn cmd_divisor(limit: u64, checkpoints: Option<String>) -> CmdResult {
    let table = arith::divisor_sieve(limit)?;
    let points: Vec<u64> = match checkpoints {
        Some(text) => {
            let parsed: Option<Vec<u64>> = text
                .split(',')
                .map(|s| s.trim().parse::<u64>().ok())
                .collect();
            let mut v =
                parsed.ok_or_else(|| CmdError::Usage("bad checkpoint list".into()))?;
            v.sort_unstable();
            v.dedup();
            if v.iter().any(|&n| n == 0 || n > limit) {
                return Err(CmdError::Usage("checkpoints must lie in [1, limit]".into()));
            }
            v
        }
        None if limit <= 1000 => (1..=limit).collect(),
        None => {
            let mut v: Vec<u64> = log_grid(1.0, limit as f64, 100)
                .into_iter()
                .map(|x| x.round() as u64)
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        }
    };
    let mut out = Table::new(vec!["n", "d", "bigD"]);
    let mut acc: u64 = 0;
    let mut next = 0usize;
    for n in 1..=limit {
        acc += table.d(n);
        while next < points.len() && points[next] == n {
            out.push(vec![Cell::Int(n), Cell::Int(table.d(n)), Cell::Int(acc)]);
            next += 1;
        }
    }
    Ok((out, None))
}

fn cmd_delta_scan(xmax: u64, points: usize) -> CmdResult {
    if xmax < 2 {
        return Err(CmdError::Usage("xmax must be at least 2".into()));
    }
    if points == 0 {
        return Err(CmdError::Usage("points must be positive".into()));
    }
    let mut xs: Vec<u64> = log_grid(2.0, xmax as f64, points)
        .into_iter()
        .map(|x| x.round() as u64)
        .collect();
    xs.sort_unstable();
    xs.dedup();
    let mut out = Table::new(vec!["x", "delta", "normalizedDelta"]);
    for x in xs {
        let summary = arith::delta_term(x)?;
        out.push(vec![
            Cell::Int(x),
            Cell::Real(summary.delta),
            Cell::Real(summary.normalized_delta.unwrap_or(f64::NAN)),
        ]);
    }
    Ok((out, None))
}

fn cmd_theta(t: Option<String>, tol: f64, threshold: f64) -> CmdResult {
    if !(tol >= 1e-13) {
        return Err(CmdError::Usage("tol must be >= 1e-13".into()));
    }
    let grid = match t {
        Some(text) => {
            let v = parse_f64_list(&text)
                .ok_or_else(|| CmdError::Usage("bad t list".into()))?;
            if v.is_empty() || v.iter().any(|&t| !(t > 0.0)) {
                return Err(CmdError::Usage("t values must be positive".into()));
            }
            v
        }
        None => log_grid(0.05, 20.0, 25),
    };
    let mut out = Table::new(vec![
        "t",
        "thetaDirect",
        "thetaWigert",
        "thetaWeyl",
        "thetaOsc",
        "residualWigert",
        "residualDecomp",
    ]);
    let mut worst: f64 = 0.0;
    for t in grid {
        let d = theta::decompose(t, tol)?;
        worst = worst.max(d.residual_wigert).max(d.residual_decomp);
        out.push(vec![
            Cell::Real(d.t),
            Cell::Real(d.theta_direct),
            Cell::Real(d.theta_wigert),
            Cell::Real(d.theta_weyl),
            Cell::Real(d.theta_osc),
            Cell::Real(d.residual_wigert),
            Cell::Real(d.residual_decomp),
        ]);
    }
    let failed = (worst >= threshold)
        .then(|| format!("max theta residual {worst:.3e} >= threshold {threshold:.3e}"));
    Ok((out, failed))
}

fn cmd_poisson(which: Summand, alphas: Option<String>, tol: f64, threshold: f64) -> CmdResult {
    if !(tol >= 1e-13) {
        return Err(CmdError::Usage("tol must be >= 1e-13".into()));
    }
    let grid = match alphas {
        Some(text) => {
            let v = parse_f64_list(&text)
                .ok_or_else(|| CmdError::Usage("bad alpha list".into()))?;
            if v.is_empty() || v.iter().any(|&a| !(a > 0.0)) {
                return Err(CmdError::Usage("alpha values must be positive".into()));
            }
            v
        }
        None => match which {
            Summand::Hreg => vec![0.5, 1.0, 2.0, 5.0],
            Summand::Eicombo => {
                let mut v = Vec::new();
                for m in [1.0, 2.0] {
                    for t in [0.5, 1.0, 2.0] {
                        v.push(4.0 * PI * PI * m / t);
                    }
                }
                v.sort_by(f64::total_cmp);
                v.dedup();
                v
            }
            Summand::Zero => vec![1.0],
        },
    };
    let mut out = Table::new(vec!["alpha", "lhs", "rhs", "residual"]);
    let mut worst: f64 = 0.0;
    for alpha in grid {
        let (lhs, rhs) = match which {
            Summand::Hreg => {
                let spec = poisson::h_reg_spec();
                (
                    poisson::lhs_sum(&spec, alpha, tol)?,
                    poisson::rhs_sum(&spec, alpha, tol, 4096)?,
                )
            }
            Summand::Eicombo => {
                let spec = poisson::ei_combo_spec();
                (
                    poisson::lhs_sum(&spec, alpha, tol)?,
                    poisson::rhs_sum(&spec, alpha, tol, 4096)?,
                )
            }
            Summand::Zero => {
                let spec = poisson::zero_spec();
                (
                    poisson::lhs_sum(&spec, alpha, tol)?,
                    poisson::rhs_sum(&spec, alpha, tol, 4096)?,
                )
            }
        };
        let residual = (lhs - rhs).abs();
        worst = worst.max(residual);
        out.push(vec![
            Cell::Real(alpha),
            Cell::Real(lhs),
            Cell::Real(rhs),
            Cell::Real(residual),
        ]);
    }
    let failed = (worst >= threshold)
        .then(|| format!("max Poisson residual {worst:.3e} >= threshold {threshold:.3e}"));
    Ok((out, failed))
}

fn cmd_voronoi(testfn: TestFn, tol: f64, threshold: f64) -> CmdResult {
    if !(tol >= 1e-13) {
        return Err(CmdError::Usage("tol must be >= 1e-13".into()));
    }
    let f = match testfn {
        TestFn::Poly => voronoi::TestFunction::poly(),
        TestFn::Bump => voronoi::TestFunction::bump(),
        TestFn::Frac => voronoi::TestFunction::frac(),
    };
    let report = voronoi::evaluate(&f, tol)?;
    let mut out = Table::new(vec![
        "lhs",
        "weylTerm",
        "oscTerm",
        "oscTermViaEi",
        "residual",
        "crossRouteGap",
        "truncationN",
        "tol",
    ]);
    out.push(vec![
        Cell::Real(report.lhs),
        Cell::Real(report.weyl_term),
        Cell::Real(report.osc_term),
        Cell::Real(report.osc_term_via_ei),
        Cell::Real(report.residual),
        Cell::Real(report.cross_route_gap),
        Cell::Int(report.truncation_n),
        Cell::Real(report.tol),
    ]);
    let failed = (report.residual >= threshold).then(|| {
        format!(
            "residual {:.3e} >= threshold {threshold:.3e}",
            report.residual
        )
    });
    Ok((out, failed))
}
