//! weylver: exact verification of the Weyl-algebra trace cocycle and its
//! characteristic-class cross-checks.

mod parser;
mod report;
mod suites;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use weylver_core::lie::{check_caps, theta_eval, GlWeylElement};
use weylver_core::tau::tau_eval;
use weylver_core::ChainTensor;

use parser::{parse_element, parse_weyl_expression, Parsed};
use suites::{run_suite, SuiteOptions, SUITES};

#[derive(Parser)]
#[command(
    name = "weylver",
    version,
    about = "Exact-arithmetic verification of the Weyl algebra trace cocycle",
    long_about = None
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct CommonOpts {
    /// Dimension parameter n (p_1..p_n, q_1..q_n)
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Matrix size N of gl_N
    #[arg(long = "N", default_value_t = 1)]
    nn: usize,
    /// Degree bound used by the suite's generator
    #[arg(long, default_value_t = 3)]
    deg: u32,
    /// Number of random cases
    #[arg(long, default_value_t = 25)]
    cases: usize,
    /// Random seed
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Lift the desk-scale caps n <= 2, N <= 3
    #[arg(long, default_value_t = false)]
    override_caps: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run one verification suite and report every case
    Verify {
        /// Suite name (see --list-suites)
        suite: Option<String>,
        #[command(flatten)]
        opts: CommonOpts,
        /// List the available suites and exit
        #[arg(long, default_value_t = false)]
        list_suites: bool,
        /// Inject one failing case (self-test of the failure path)
        #[arg(long, default_value_t = false, hide = true)]
        self_test_fail: bool,
    },
    /// Evaluate one expression (moyal product, tau, or Theta)
    Eval {
        #[command(subcommand)]
        what: EvalCommand,
    },
    /// Run several suites and emit one combined report
    Report {
        /// Comma-separated suite names; defaults to all
        #[arg(long)]
        suites: Option<String>,
        #[command(flatten)]
        opts: CommonOpts,
        /// Write the combined JSON report to this file instead of stdout
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

#[derive(Subcommand)]
enum EvalCommand {
    /// Moyal product of two expressions
    Moyal {
        lhs: String,
        rhs: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// tau_2n of a tensor `a_0 | a_1 | ... | a_2n`
    Tau {
        chain: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Theta^N_2n of a wedge `a_1 ; a_2 ; ... ; a_2n` at a target element
    Theta {
        wedge: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long = "N", default_value_t = 1)]
        nn: usize,
        #[arg(long, default_value = "1")]
        target: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            suite,
            opts,
            list_suites,
            self_test_fail,
        } => {
            if list_suites {
                for s in SUITES {
                    println!("{s}");
                }
                return ExitCode::SUCCESS;
            }
            let Some(name) = suite else {
                eprintln!("error: missing suite name (or pass --list-suites)");
                return ExitCode::from(2);
            };
            let mut sopts = to_suite_options(&opts);
            sopts.inject_failure = self_test_fail;
            match run_suite(&name, &sopts) {
                Ok(report) => {
                    emit(&report_to_string(&report, opts.format));
                    if report.passed() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Eval { what } => match eval(what) {
            Ok(text) => {
                println!("{text}");
                ExitCode::SUCCESS
            }
            Err(message) => {
                eprintln!("error: {message}");
                ExitCode::from(2)
            }
        },
        Command::Report { suites, opts, out } => {
            let names: Vec<String> = match suites {
                Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
                None => SUITES.iter().map(|s| s.to_string()).collect(),
            };
            let sopts = to_suite_options(&opts);
            let mut reports = Vec::new();
            for name in &names {
                match run_suite(name, &sopts) {
                    Ok(r) => reports.push(r),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
            }
            let all_pass = reports.iter().all(|r| r.passed());
            let combined = serde_json::json!({
                "reports": reports,
                "summary": {
                    "suites": reports.len(),
                    "passed": reports.iter().filter(|r| r.passed()).count(),
                    "failed": reports.iter().filter(|r| !r.passed()).count(),
                }
            });
            let body = match opts.format {
                Format::Json => serde_json::to_string_pretty(&combined).unwrap(),
                Format::Text => reports
                    .iter()
                    .map(|r| r.to_text())
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, body + "\n") {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                    eprintln!("wrote {}", path.display());
                }
                None => emit(&body),
            }
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn to_suite_options(opts: &CommonOpts) -> SuiteOptions {
    SuiteOptions {
        n: opts.n,
        nn: opts.nn,
        deg: opts.deg,
        cases: opts.cases,
        seed: opts.seed,
        override_caps: opts.override_caps,
        inject_failure: false,
    }
}

fn report_to_string(report: &report::SuiteReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    }
}

fn emit(body: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{body}");
}

fn eval(what: EvalCommand) -> Result<String, String> {
    match what {
        EvalCommand::Moyal { lhs, rhs, n } => {
            check_caps(n, 1, false).map_err(|e| e.to_string())?;
            let f = parse_element(&lhs, n).map_err(|e| e.to_string())?;
            let g = parse_element(&rhs, n).map_err(|e| e.to_string())?;
            let prod = f.moyal(&g).map_err(|e| e.to_string())?;
            Ok(prod.to_string())
        }
        EvalCommand::Tau { chain, n } => {
            check_caps(n, 1, false).map_err(|e| e.to_string())?;
            let parsed = parse_weyl_expression(&chain, n).map_err(|e| e.to_string())?;
            let chain = match parsed {
                Parsed::Chain(c) => c,
                Parsed::Element(e) => ChainTensor::elementary(vec![e]),
                Parsed::Wedge(_) => {
                    return Err("tau takes a tensor (slots separated by `|`), not a wedge".into())
                }
            };
            let v = tau_eval(n, &chain).map_err(|e| e.to_string())?;
            Ok(v.to_string())
        }
        EvalCommand::Theta {
            wedge,
            n,
            nn,
            target,
        } => {
            check_caps(n, nn, false).map_err(|e| e.to_string())?;
            let parsed = parse_weyl_expression(&wedge, n).map_err(|e| e.to_string())?;
            let tensors = match parsed {
                Parsed::Wedge(ts) => ts,
                Parsed::Chain(c) => vec![c],
                Parsed::Element(e) => vec![ChainTensor::elementary(vec![e])],
            };
            let mut args = Vec::new();
            for t in &tensors {
                let e = single_slot_element(t).ok_or_else(|| {
                    "each wedge slot must be a single expression (no `|`)".to_string()
                })?;
                args.push(GlWeylElement::from_weyl(nn, &e));
            }
            let target = parse_element(&target, n).map_err(|e| e.to_string())?;
            let v = theta_eval(n, nn, &args, &GlWeylElement::from_weyl(nn, &target))
                .map_err(|e| e.to_string())?;
            Ok(v.to_string())
        }
    }
}

/// Rebuild the element of a degree-0 chain (one slot).
fn single_slot_element(c: &ChainTensor) -> Option<weylver_core::WeylElement> {
    if c.degree() != 0 {
        return None;
    }
    let mut out = weylver_core::WeylElement::zero(c.n());
    for (slots, coeff) in c.terms() {
        out = &out + &slots[0].scale(coeff);
    }
    Some(out)
}
