use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use ns_chern::arith::is_prime;
use ns_chern::chern::kummer_report;
use ns_chern::error::Error;
use ns_chern::lattice::gram_matrix;
use ns_chern::quat::{find_params, AlgebraParams, DEFAULT_Q_CAP};
use ns_chern::report::{self, Dec, SweepReport, SweepRow};

const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;

#[derive(Parser)]
#[command(
    name = "ns-chern",
    version,
    about = "Néron–Severi lattice and Chern class map of E×E over F_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the algebra parameters (p, q, a) and the order basis.
    Params(PrimeArgs),
    /// Print the Gram matrix of the NS basis with rank, signature and determinant.
    Gram(PrimeArgs),
    /// Print the 4×6 Chern class matrix over F_{p²}.
    C1(PrimeArgs),
    /// Print the kernel of c₁ over F_p and the audit of the printed basis.
    Kernel(PrimeArgs),
    /// Run every check; exit 0 on pass, 1 on failure, 2 on invalid input.
    Verify(PrimeArgs),
    /// Verify every prime in a range and print a summary table.
    Sweep(SweepArgs),
    /// Print the Kummer surface bookkeeping.
    Kummer(PrimeArgs),
}

#[derive(Args)]
struct PrimeArgs {
    /// Characteristic, an odd prime.
    #[arg(long)]
    p: u64,
    /// Override the auxiliary prime q.
    #[arg(long)]
    q: Option<u64>,
    /// Override the square root a of -p mod q.
    #[arg(long)]
    a: Option<u64>,
    /// Emit a single JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Upper bound for the search for q.
    #[arg(long, default_value_t = DEFAULT_Q_CAP)]
    q_cap: u64,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 3)]
    p_min: u64,
    #[arg(long, default_value_t = 200)]
    p_max: u64,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = DEFAULT_Q_CAP)]
    q_cap: u64,
}

fn resolve(args: &PrimeArgs) -> Result<AlgebraParams, Error> {
    let p = args.p;
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    match (args.q, args.a) {
        (None, None) => find_params(p, args.q_cap),
        (q, a) => {
            let q = match q {
                Some(q) => q,
                None => find_params(p, args.q_cap)?.q,
            };
            // Without an explicit a, take the smallest root; if there is none,
            // validation below reports the first violated condition.
            let a = a.unwrap_or_else(|| {
                (0..q)
                    .find(|&a| (a as u128 * a as u128 + p as u128).is_multiple_of(q as u128))
                    .unwrap_or(0)
            });
            AlgebraParams::new(p, q, a)
        }
    }
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce(&T) -> String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("report serializes")
        );
    } else {
        print!("{}", text(value));
    }
}

#[derive(Serialize)]
struct ParamsDoc {
    params: report::ParamsReport,
    order_basis: Vec<report::OrderBasisEntry>,
}

#[derive(Serialize)]
struct ChernDoc {
    params: report::ParamsReport,
    chern_matrix: Vec<Vec<report::WireFp2>>,
}

#[derive(Serialize)]
struct KernelDoc {
    params: report::ParamsReport,
    kernel: report::KernelReport,
    audit: report::AuditReport,
}

#[derive(Serialize)]
struct GramDoc {
    params: report::ParamsReport,
    gram: report::GramReport,
}

#[derive(Serialize)]
struct KummerDoc {
    params: report::ParamsReport,
    kummer: report::KummerSummary,
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Params(args) => {
            let params = resolve(&args)?;
            let doc = ParamsDoc {
                params: params.into(),
                order_basis: report::order_basis_report(params),
            };
            emit(args.json, &doc, |d| {
                report::render_params(&d.params) + &report::render_order_basis(&d.order_basis)
            });
        }
        Command::Gram(args) => {
            let params = resolve(&args)?;
            let doc = GramDoc {
                params: params.into(),
                gram: (&gram_matrix(params)).into(),
            };
            emit(args.json, &doc, |d| {
                report::render_params(&d.params) + &report::render_gram(&d.gram)
            });
        }
        Command::C1(args) => {
            let params = resolve(&args)?;
            let doc = ChernDoc {
                params: params.into(),
                chern_matrix: report::chern_rows(params),
            };
            emit(args.json, &doc, |d| {
                report::render_params(&d.params) + &report::render_chern(&d.chern_matrix)
            });
        }
        Command::Kernel(args) => {
            let params = resolve(&args)?;
            let doc = KernelDoc {
                params: params.into(),
                kernel: report::kernel_report(params),
                audit: report::audit_report(params)?,
            };
            emit(args.json, &doc, |d| {
                report::render_params(&d.params)
                    + &report::render_kernel(&d.kernel)
                    + &report::render_audit(&d.audit)
            });
        }
        Command::Verify(args) => {
            let params = resolve(&args)?;
            let r = report::run_report(params)?;
            emit(args.json, &r, report::render_run);
            return Ok(if r.pass { 0 } else { EXIT_FAIL });
        }
        Command::Sweep(args) => {
            let primes: Vec<u64> = (args.p_min.max(3)..=args.p_max)
                .filter(|&p| is_prime(p))
                .collect();
            let rows = primes
                .par_iter()
                .map(|&p| {
                    let params = find_params(p, args.q_cap)?;
                    report::run_report(params).map(|r| SweepRow::from(&r))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let all_pass = rows.iter().all(|r| r.pass);
            let doc = SweepReport {
                p_min: Dec(args.p_min),
                p_max: Dec(args.p_max),
                rows,
                all_pass,
            };
            emit(args.json, &doc, report::render_sweep);
            return Ok(if all_pass { 0 } else { EXIT_FAIL });
        }
        Command::Kummer(args) => {
            let params = resolve(&args)?;
            let doc = KummerDoc {
                params: params.into(),
                kummer: (&kummer_report(params)).into(),
            };
            emit(args.json, &doc, |d| {
                report::render_kummer(&d.params, &d.kummer)
            });
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err @ Error::Inconsistent(_)) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_FAIL)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
