//! Batch verification front end: runs the full check suite, regenerates the
//! published tables from computation, and exposes the individual engines for
//! ad-hoc queries.

mod render;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use primesplit::curvedb::Registry;
use primesplit::report::CheckStatus;
use primesplit::verify::{self, VerifyOptions};
use std::process::ExitCode;

const EX_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "primesplit", version, about = "Exact verification toolkit for prime splitting in quadratic fields generated by hyperelliptic curve points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every registered check and exit nonzero on any failure.
    VerifyAll(VerifyAllArgs),
    /// Regenerate one of the published tables from computation.
    Table(TableArgs),
    /// Invoke a single engine.
    Query(QueryArgs),
}

#[derive(Args)]
struct VerifyAllArgs {
    /// Sampling height for the empirical point checks.
    #[arg(long, default_value_t = 200)]
    height: i64,
    /// Restrict the per-level suites to one level.
    #[arg(long = "n")]
    level: Option<u32>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Test-only corruption hook; `registry` perturbs one stored coefficient.
    #[arg(long, value_name = "TARGET")]
    fault_inject: Option<String>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct TableArgs {
    /// Which table: 2, 3, 4 or disc.
    which: String,
    #[arg(long, value_enum, default_value_t = TableFormat::Md)]
    format: TableFormat,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum TableFormat {
    Md,
    Csv,
    Json,
}

#[derive(Args)]
struct QueryArgs {
    #[command(subcommand)]
    query: Query,
}

#[derive(Subcommand)]
enum Query {
    /// Behaviour of prime P in Q(sqrt(D)) for squarefree D.
    Split { d: String, p: u64 },
    /// Classify all points of height at most H on level N.
    Sample { n: u32, h: i64 },
    /// Distinct squarefree parts divisible by P once, from the root walk.
    Witness { n: u32, a: i64, p: u64, count: usize },
    /// Reduction type of the cubic-family member at parameter U modulo P.
    Reduce { u: String, p: u64 },
    /// Attained residue classes of F_N(m, n) mod P^L.
    Enumerate { n: u32, p: u64, l: u32 },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EX_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::VerifyAll(args) => verify_all(args),
        Command::Table(args) => table(args),
        Command::Query(args) => query(args.query),
    }
}

fn load_registry(fault: Option<&str>) -> Result<Registry, ExitCode> {
    let reg = match Registry::load() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("registry load failed: {e}");
            return Err(ExitCode::from(2));
        }
    };
    match fault {
        None => Ok(reg),
        Some("registry") => Ok(reg.with_fault()),
        Some(other) => {
            eprintln!("unknown fault-injection target {other:?}");
            Err(ExitCode::from(EX_USAGE))
        }
    }
}

fn verify_all(args: VerifyAllArgs) -> ExitCode {
    if let Some(jobs) = args.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let reg = match load_registry(args.fault_inject.as_deref()) {
        Ok(r) => r,
        Err(code) => return code,
    };
    if let Some(level) = args.level {
        if reg.get_curve(level).is_err() {
            eprintln!("level {level} is not supported (hyperelliptic levels only, 37 excluded)");
            return ExitCode::from(2);
        }
    }
    let opts = VerifyOptions {
        height: args.height,
        factor_height: args.height.min(60),
        level_filter: args.level,
        coherence_cases: 200,
    };
    let started = std::time::Instant::now();
    let reports = verify::run_all(&reg, &opts);
    let failed = reports.iter().filter(|r| r.status == CheckStatus::Fail).count();
    let skipped = reports.iter().filter(|r| r.status == CheckStatus::Skipped).count();
    match args.format {
        ReportFormat::Text => {
            for r in &reports {
                let tag = match r.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Skipped => "SKIP",
                };
                println!("{tag} {}", r.id);
                if r.status != CheckStatus::Pass {
                    for w in &r.witnesses {
                        println!("     {w}");
                    }
                }
            }
            eprintln!(
                "{} checks: {} passed, {failed} failed, {skipped} skipped in {:.1}s",
                reports.len(),
                reports.len() - failed - skipped,
                started.elapsed().as_secs_f64()
            );
        }
        ReportFormat::Json => {
            println!("{}", render::reports_json(&reports));
        }
    }
    if failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn table(args: TableArgs) -> ExitCode {
    let reg = match load_registry(None) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let rendered = match args.which.as_str() {
        "2" => render::table2(&reg, args.format),
        "3" => render::table3(&reg, args.format),
        "4" => render::table4(&reg, args.format),
        "disc" => render::table_disc(&reg, args.format),
        other => {
            eprintln!("unknown table {other:?}; expected 2, 3, 4 or disc");
            return ExitCode::from(EX_USAGE);
        }
    };
    print!("{rendered}");
    ExitCode::SUCCESS
}

fn query(q: Query) -> ExitCode {
    let reg = match load_registry(None) {
        Ok(r) => r,
        Err(code) => return code,
    };
    match q {
        Query::Split { d, p } => {
            let d: num_bigint::BigInt = match d.parse() {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("bad D: {e}");
                    return ExitCode::from(EX_USAGE);
                }
            };
            if !primesplit::exact::is_prime(&num_bigint::BigInt::from(p)) {
                eprintln!("{p} is not prime");
                return ExitCode::from(EX_USAGE);
            }
            match primesplit::splitting::classify_prime(&d, p) {
                Ok(b) => println!("{}", b.label()),
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            }
        }
        Query::Sample { n, h } => {
            let curve = match reg.get_curve(n) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            for p in verify::sample_points(curve, h) {
                println!("{}", render::sample_line(&p));
            }
        }
        Query::Witness { n, a, p, count } => {
            let curve = match reg.get_curve(n) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            match verify::find_ramification_witnesses(curve, &num_bigint::BigInt::from(a), p, count)
            {
                Ok(w) => {
                    println!("x0 = {} (mod {})", w.x0, p * p);
                    for d in &w.d_values {
                        println!("D = {d}");
                    }
                }
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            }
        }
        Query::Reduce { u, p } => {
            let u: num_rational::BigRational = match parse_rational(&u) {
                Some(u) => u,
                None => {
                    eprintln!("bad parameter {u:?}; expected an integer or m/n");
                    return ExitCode::from(EX_USAGE);
                }
            };
            match primesplit::cubic::classify_reduction(&reg.cubic, &u, p) {
                Ok(v) => println!("{} ({:?})", v.label(), v.branch),
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            }
        }
        Query::Enumerate { n, p, l } => {
            let curve = match reg.get_curve(n) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let spec = primesplit::engine::EnumerationSpec::new(p, l);
            match primesplit::engine::enumerate_classes(&curve.f, &spec) {
                Ok(set) => print!("{}", render::class_set(&set)),
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            }
        }
    }
    ExitCode::SUCCESS
}

fn parse_rational(s: &str) -> Option<num_rational::BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = num.parse().ok()?;
    let d: num_bigint::BigInt = den.parse().ok()?;
    if d == num_bigint::BigInt::from(0) {
        return None;
    }
    Some(num_rational::BigRational::new(n, d))
}
