use clap::{Parser, Subcommand};
use egr_core::mordell::{brute_search_integral, build_mordell_with_unit, verify_generators};
use egr_core::pipeline::{load_config, parse_config, run_suite, write_reports, RunOptions, SuiteSpec};
use egr_core::quadfield::{fundamental_unit, FieldElem, QuadField};
use std::path::PathBuf;
use std::process::ExitCode;

const SHIPPED_CASES: &str = include_str!("../../core/data/cases.json");

const EXIT_FAILED: u8 = 2;
const EXIT_USAGE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "egr",
    version,
    about = "Decide existence of elliptic curves with everywhere good reduction over real quadratic fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every case of a config file and compare verdicts with the expected ones.
    Run {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Only run the case for this m.
        #[arg(long = "case")]
        case: Option<i64>,
        #[arg(long = "bound-M")]
        bound_m: Option<u32>,
        /// Box half-width of the brute-force cross-check (0 disables it).
        #[arg(long = "oracle-H")]
        oracle_h: Option<u64>,
        /// Directory for per-case JSON reports, summary and timings.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the generator data of one case and print the reports.
    VerifyGenerators {
        #[arg(long = "case")]
        case: i64,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// List integral points of y^2 = x^3 + sign * 1728 * eps^n in a coordinate box.
    Search {
        #[arg(long)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        sign: String,
        #[arg(long)]
        n: u32,
        #[arg(long = "H")]
        h: u64,
        /// Unit to use instead of the fundamental unit greater than 1.
        #[arg(long, allow_hyphen_values = true)]
        epsilon: Option<String>,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn suite(config: Option<PathBuf>) -> Result<SuiteSpec, ExitCode> {
    match config {
        Some(p) => load_config(&p),
        None => parse_config(SHIPPED_CASES),
    }
    .map_err(usage)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match cli.command {
        Command::Run {
            config,
            case,
            bound_m,
            oracle_h,
            out,
        } => {
            let suite = match suite(config) {
                Ok(s) => s,
                Err(code) => return code,
            };
            if let Some(m) = case {
                if !suite.cases.iter().any(|c| c.m() == m) {
                    return usage(format!("no case with m = {m}"));
                }
            }
            if bound_m == Some(0) {
                return usage("--bound-M must be positive");
            }
            let report = run_suite(&suite, case, RunOptions { bound_m, oracle_h });
            print!("{}", report.summary());
            if let Some(dir) = out {
                if let Err(e) = write_reports(&report, &dir) {
                    eprintln!("error: cannot write reports to {}: {e}", dir.display());
                    return ExitCode::from(EXIT_FAILED);
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Command::VerifyGenerators { case, config } => {
            let suite = match suite(config) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let Some(spec) = suite.cases.iter().find(|c| c.m() == case) else {
                return usage(format!("no case with m = {case}"));
            };
            let eps = spec.epsilon.clone().unwrap_or_else(|| fundamental_unit(spec.field));
            let mut ok = true;
            for cs in &spec.curves {
                let result =
                    build_mordell_with_unit(&eps, cs.sign, cs.n).and_then(|mc| verify_generators(&mc, &cs.data));
                match result {
                    Ok(r) => println!("{}", serde_json::to_string_pretty(&r).expect("report serializes")),
                    Err(e) => {
                        ok = false;
                        eprintln!("E_{}^{}: {e}", cs.n, if cs.sign > 0 { '+' } else { '-' });
                    }
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILED)
            }
        }
        Command::Search { m, sign, n, h, epsilon } => {
            let field = match QuadField::new(m) {
                Ok(f) => f,
                Err(e) => return usage(e),
            };
            let sign = match sign.as_str() {
                "+" | "+1" | "1" => 1,
                "-" | "-1" => -1,
                s => return usage(format!("sign must be + or -, got {s:?}")),
            };
            let eps = match epsilon {
                Some(s) => match FieldElem::parse(field, &s) {
                    Ok(e) => e,
                    Err(e) => return usage(e),
                },
                None => fundamental_unit(field),
            };
            let mc = match build_mordell_with_unit(&eps, sign, n) {
                Ok(mc) => mc,
                Err(e) => return usage(e),
            };
            match brute_search_integral(&mc, h) {
                Ok(set) => {
                    println!("{mc}");
                    for p in set.iter() {
                        println!("{p}");
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => usage(e),
            }
        }
    }
}
