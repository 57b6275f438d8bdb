//! Batch command-line surface: every subcommand performs one reproducible
//! verification run and emits a machine-readable JSON report (plus CSV for
//! the tabulating commands).
//!
//! Exit codes: 0 = verified/proved, 1 = check failed, 2 = indeterminate,
//! 64 = usage or parameter error, 65 = malformed data file, 69 = resource
//! budget exceeded, 70 = internal precision exhaustion, 74 = I/O error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use robin_core::bounds::{
    self, g_grid, grid_is_decreasing, mertens_check, scan_t, C1Source, CertStatus, GInfCoeff,
    GKind, GParams,
};
use robin_core::ca::{CaConfig, CaEnumerator};
use robin_core::divisor::small_scan;
use robin_core::error::Error;
use robin_core::primes::{theta_bound_check, PrimeTable};
use robin_core::report::IvF64;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "robin",
    version,
    about = "Rigorous interval-arithmetic checks of Robin's inequality and its t-free bound functions",
    disable_help_subcommand = true
)]
struct Cli {
    /// Working precision in bits (≥ 53).
    #[arg(long, global = true, env = "ROBIN_PRECISION", default_value_t = 100)]
    precision: u32,

    /// Write the JSON report to this path instead of stdout.
    #[arg(long, global = true)]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
enum C1Arg {
    /// Use the certified constant 2.645e-9.
    Constant,
    /// Recompute the certificate and use its upper end.
    Recomputed,
}

impl From<C1Arg> for C1Source {
    fn from(a: C1Arg) -> Self {
        match a {
            C1Arg::Constant => C1Source::Constant,
            C1Arg::Recomputed => C1Source::Recomputed,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
enum CoeffArg {
    /// 1.388e-10 (conservative, default).
    C1388,
    /// 1.338e-10 (variant).
    C1338,
}

impl From<CoeffArg> for GInfCoeff {
    fn from(a: CoeffArg) -> Self {
        match a {
            CoeffArg::C1388 => GInfCoeff::Proved1388,
            CoeffArg::C1338 => GInfCoeff::Variant1338,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
enum WhichG {
    GB,
    GInf,
}

#[derive(Args, Clone, Serialize)]
struct BoundArgs {
    /// Prime at which g_B is certified.
    #[arg(long, default_value_t = bounds::DEFAULT_SWITCH_PRIME)]
    switch_prime: u64,

    /// Source of the C₁ constant.
    #[arg(long, value_enum, default_value_t = C1Arg::Constant)]
    c1: C1Arg,

    /// Linear coefficient variant in g_∞'s denominator.
    #[arg(long, value_enum, default_value_t = CoeffArg::C1388)]
    ginf_coeff: CoeffArg,
}

impl BoundArgs {
    fn params(&self, t: u32, precision: u32) -> GParams {
        GParams {
            t,
            switch_prime: self.switch_prime,
            precision,
            c1_source: self.c1.into(),
            ginf_coeff: self.ginf_coeff.into(),
            ..GParams::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Certify one exponent t: g_B(switch prime; t) and g_∞(B; t) must be
    /// provably < 1.
    Certify {
        /// Exponent to certify (t ≥ 2). Never implicit.
        #[arg(long)]
        t: u32,
        #[command(flatten)]
        bound: BoundArgs,
    },

    /// Scan upward from t = 2 to the largest certifiable exponent.
    MaxT {
        #[command(flatten)]
        bound: BoundArgs,
        /// Also write a per-t CSV table (t, status, margins).
        #[arg(long)]
        csv: Option<PathBuf>,
    },

    /// Exhaustive counterexample scan over 3 ≤ n ≤ limit.
    SmallScan {
        #[arg(long)]
        limit: u64,
    },

    /// Greedy extremal-number run verifying the inequality up to
    /// 10^(10^target).
    Ca {
        /// Exponent of the target: stop once log10(n) ≥ 10^target.
        #[arg(long)]
        target_exp: f64,
        /// Write checkpoints to this path during the run.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Steps between checkpoints.
        #[arg(long, default_value_t = 1_000_000)]
        checkpoint_every: u64,
        /// Resume from a previously written checkpoint.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Track σ(n)/n exactly while n < 10^100 and verify the enclosure.
        #[arg(long)]
        track_exact: bool,
    },

    /// Tabulate g_B or g_∞ on a geometric grid and prove per-grid
    /// monotonicity.
    GTable {
        #[arg(long)]
        t: u32,
        /// Number of grid points.
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = WhichG::GB)]
        which: WhichG,
        /// Grid endpoints; defaults to the bound's validity range.
        #[arg(long)]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
        #[command(flatten)]
        bound: BoundArgs,
        /// Write the table as CSV (p, t, g_lo, g_hi).
        #[arg(long)]
        csv: Option<PathBuf>,
    },

    /// Check |θ(x) − x| ≤ √x·log²x/(8π) at all critical points of
    /// [x_min, x_max].
    ThetaCheck {
        #[arg(long, default_value_t = 599)]
        x_min: u64,
        #[arg(long)]
        x_max: u64,
    },

    /// Desk-check the Mertens product bounds: the lower bound at seeded
    /// random points, the upper bound at explicit points.
    MertensCheck {
        /// Sieve limit for the lower-bound samples.
        #[arg(long)]
        limit: u64,
        #[arg(long, default_value_t = 200)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Evaluation points for the upper bound (may exceed the limit;
        /// streamed). Repeatable.
        #[arg(long = "upper-point")]
        upper_points: Vec<u64>,
        #[command(flatten)]
        bound: BoundArgs,
    },
}

#[derive(Serialize)]
struct Envelope<C: Serialize, R: Serialize> {
    schema_version: u32,
    kind: &'static str,
    timestamp_unix: u64,
    config: C,
    result: R,
}

fn emit<C: Serialize, R: Serialize>(
    out: &Option<PathBuf>,
    kind: &'static str,
    config: C,
    result: R,
) -> Result<(), Error> {
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION,
        kind,
        timestamp_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        config,
        result,
    };
    let text = serde_json::to_string_pretty(&envelope).expect("report serializes");
    match out {
        Some(path) => fs::write(path, text + "\n")?,
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}")?;
        }
    }
    Ok(())
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Domain(_) | Error::Range(_) => 64,
        Error::Format(_) => 65,
        Error::Resource(_) => 69,
        Error::PrecisionExhausted(_) | Error::Structure(_) => 70,
        Error::Io(_) => 74,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let precision = cli.precision;
    let json = cli.json;
    match cli.command {
        Command::Certify { t, bound } => {
            let params = bound.params(t, precision);
            let result = bounds::certify_t(t, &params)?;
            let status = result.status;
            #[derive(Serialize)]
            struct Config {
                t: u32,
                precision: u32,
                params: GParams,
            }
            emit(
                &json,
                "certify",
                Config {
                    t,
                    precision,
                    params,
                },
                result.report(),
            )?;
            Ok(match status {
                CertStatus::Proved => 0,
                CertStatus::Failed => 1,
                CertStatus::Indeterminate => 2,
            })
        }

        Command::MaxT { bound, csv } => {
            let params = bound.params(2, precision);
            let (t_star, results) = scan_t(&params)?;
            if let Some(path) = csv {
                let mut text = String::from("t,status,margin_b,margin_inf\n");
                for r in &results {
                    text.push_str(&format!(
                        "{},{:?},{:e},{:e}\n",
                        r.t, r.status, r.margin_b, r.margin_inf
                    ));
                }
                fs::write(path, text)?;
            }
            #[derive(Serialize)]
            struct MaxTResult {
                max_certifiable_t: u32,
                scan: Vec<robin_core::bounds::CertReport>,
            }
            emit(
                &json,
                "max-t",
                params,
                MaxTResult {
                    max_certifiable_t: t_star,
                    scan: results.iter().map(|r| r.report()).collect(),
                },
            )?;
            Ok(0)
        }

        Command::SmallScan { limit } => {
            let report = small_scan(limit, precision)?;
            let ok = report.max_counterexample.is_none_or(|m| m <= 5040);
            #[derive(Serialize)]
            struct Config {
                limit: u64,
                precision: u32,
            }
            emit(&json, "small-scan", Config { limit, precision }, &report)?;
            Ok(if ok { 0 } else { 1 })
        }

        Command::Ca {
            target_exp,
            checkpoint,
            checkpoint_every,
            resume,
            track_exact,
        } => {
            let cfg = CaConfig {
                precision,
                checkpoint_every,
                checkpoint_path: checkpoint.clone(),
                track_exact,
                ..CaConfig::default()
            };
            let mut enumerator = match &resume {
                Some(path) => CaEnumerator::resume(path, cfg)?,
                None => CaEnumerator::new(cfg)?,
            };
            let report = enumerator.run_to_target(target_exp)?;
            let ok = report.ri_holds_beyond_5040;
            #[derive(Serialize)]
            struct Config {
                target_exp: f64,
                precision: u32,
                checkpoint: Option<PathBuf>,
                checkpoint_every: u64,
                resumed: bool,
                track_exact: bool,
            }
            emit(
                &json,
                "ca",
                Config {
                    target_exp,
                    precision,
                    checkpoint,
                    checkpoint_every,
                    resumed: resume.is_some(),
                    track_exact,
                },
                &report,
            )?;
            Ok(if ok { 0 } else { 1 })
        }

        Command::GTable {
            t,
            grid,
            which,
            from,
            to,
            bound,
            csv,
        } => {
            let params = bound.params(t, precision);
            let kind = match which {
                WhichG::GB => GKind::GB,
                WhichG::GInf => GKind::GInf,
            };
            let b_f64 = IvF64::from(&robin_core::numerics::Interval::from_u128(
                precision, params.b,
            ))
            .lo;
            let (lo, hi) = match kind {
                GKind::GB => (from.unwrap_or(599.0), to.unwrap_or(b_f64)),
                GKind::GInf => (from.unwrap_or(7.7e23), to.unwrap_or(10.0 * b_f64)),
            };
            let rows = g_grid(kind, t, &params, grid, lo, hi)?;
            let decreasing = grid_is_decreasing(&rows);
            if let Some(path) = csv {
                let mut text = String::from("p,t,g_lo,g_hi\n");
                for (p, g) in &rows {
                    let g = IvF64::from(g);
                    text.push_str(&format!("{p:e},{t},{:e},{:e}\n", g.lo, g.hi));
                }
                fs::write(path, text)?;
            }
            #[derive(Serialize)]
            struct GridResult {
                points: usize,
                from: f64,
                to: f64,
                which: WhichG,
                proved_nonincreasing: bool,
                first: IvF64,
                last: IvF64,
            }
            emit(
                &json,
                "g-table",
                params,
                GridResult {
                    points: rows.len(),
                    from: lo,
                    to: hi,
                    which,
                    proved_nonincreasing: decreasing,
                    first: IvF64::from(&rows.first().expect("non-empty grid").1),
                    last: IvF64::from(&rows.last().expect("non-empty grid").1),
                },
            )?;
            Ok(if decreasing { 0 } else { 1 })
        }

        Command::ThetaCheck { x_min, x_max } => {
            let table = PrimeTable::sieve_with(x_max, precision, 4 << 30)?;
            let report = theta_bound_check(x_min, x_max, &table)?;
            let ok = report.passed;
            #[derive(Serialize)]
            struct Config {
                x_min: u64,
                x_max: u64,
                precision: u32,
            }
            emit(
                &json,
                "theta-check",
                Config {
                    x_min,
                    x_max,
                    precision,
                },
                &report,
            )?;
            Ok(if ok { 0 } else { 1 })
        }

        Command::MertensCheck {
            limit,
            samples,
            seed,
            upper_points,
            bound,
        } => {
            let params = bound.params(2, precision);
            let table = PrimeTable::sieve_with(limit, precision, 4 << 30)?;
            let report = mertens_check(&table, samples, seed, &upper_points, &params)?;
            let ok = report.passed;
            #[derive(Serialize)]
            struct Config {
                limit: u64,
                samples: u64,
                seed: u64,
                upper_points: Vec<u64>,
                precision: u32,
            }
            emit(
                &json,
                "mertens-check",
                Config {
                    limit,
                    samples,
                    seed,
                    upper_points,
                    precision,
                },
                &report,
            )?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(64);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
