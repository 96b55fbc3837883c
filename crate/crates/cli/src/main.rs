//! `compose-solve`: solve `h(g(X)) = 0` over a prime field from text files.

mod record;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use compose_solve::homotopy::HomotopyConfig;
use compose_solve::slp::{parse_poly_system, slp_compose, Slp};
use compose_solve::solver::solve_h_circ_g;
use compose_solve::{Error, Fp, PrimeField};

use record::{check, OutputRecord};

const DEFAULT_PRIME: u64 = (1 << 61) - 1;
const SOLVER_MIN_PRIME: u64 = 1 << 40;

#[derive(Parser)]
#[command(name = "compose-solve", version, about = "Solve composed polynomial systems h(g(X)) = 0 over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a geometric resolution of the regular solutions.
    Solve {
        /// Outer system in Y1..Yn, one polynomial per line.
        h: PathBuf,
        /// Inner system in X1..Xn, one polynomial per line.
        g: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        retries: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Check the result before printing it.
        #[arg(long)]
        verify: bool,
        /// Record wall-clock stage timings (makes the output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Recheck a record produced by `solve` against the input systems.
    Verify { record: PathBuf, h: PathBuf, g: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::RandomnessExhausted { .. }) { 2 } else { 1 };
        Failure { code, msg: e.to_string() }
    }
}

fn input_error(msg: String) -> Failure {
    Failure { code: 1, msg }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn equation_count(text: &str) -> usize {
    text.lines()
        .filter(|l| !l.split('#').next().unwrap_or("").trim().is_empty())
        .count()
}

/// Parses `h` in `Y1..Yn` and `g` in `X1..Xn`, with `n` the number of
/// equations of `g`.
fn load(h_path: &Path, g_path: &Path, f: &PrimeField) -> Result<(Slp<Fp>, Slp<Fp>), Failure> {
    let (ht, gt) = (read(h_path)?, read(g_path)?);
    let n = equation_count(&gt);
    if n == 0 {
        return Err(input_error(format!("{}: no equations", g_path.display())));
    }
    let names = |p: &str| (1..=n).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
    let (yv, xv) = (names("Y"), names("X"));
    let yr: Vec<&str> = yv.iter().map(String::as_str).collect();
    let xr: Vec<&str> = xv.iter().map(String::as_str).collect();
    let g = parse_poly_system(&gt, &xr, f).map_err(|e| input_error(format!("{}: {e}", g_path.display())))?;
    let h = parse_poly_system(&ht, &yr, f).map_err(|e| input_error(format!("{}: {e}", h_path.display())))?;
    if h.n_outputs() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: h.n_outputs(),
        }
        .into());
    }
    Ok((h, g))
}

fn text_report(rec: &OutputRecord) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "prime {}", rec.prime);
    let _ = writeln!(s, "count {}", rec.count);
    let _ = writeln!(s, "lambda {}", rec.lambda.join(" "));
    let _ = writeln!(s, "P {}", rec.p.join(" "));
    for (i, w) in rec.w.iter().enumerate() {
        let _ = writeln!(s, "W{} {}", i + 1, w.join(" "));
    }
    for w in &rec.warnings {
        let _ = writeln!(s, "warning {w}");
    }
    for (k, t) in &rec.stage_timings {
        let _ = writeln!(s, "time {k} {t:.6}");
    }
    if let Some(v) = rec.verified {
        let _ = writeln!(s, "verified {v}");
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn solve(
    h_path: &Path,
    g_path: &Path,
    prime: u64,
    seed: u64,
    retries: usize,
    format: Format,
    verify: bool,
    timings: bool,
) -> Result<bool, Failure> {
    let f = PrimeField::new_verification(prime)?;
    let (h, g) = load(h_path, g_path, &f)?;
    let mut cfg = HomotopyConfig::with_seed(seed);
    cfg.max_retries = retries;
    let report = solve_h_circ_g(&h, &g, &cfg, &f)?;
    let mut rec = OutputRecord::from_report(&report, &f, timings);
    if prime < SOLVER_MIN_PRIME {
        rec.warnings
            .push(format!("modulus {prime} is small; random choices may miss solutions"));
    }
    let mut ok = true;
    if verify {
        let checks = check(&slp_compose(&h, &g)?, &report.resolution, &f);
        ok = checks.all();
        rec.verified = Some(ok);
    }
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rec).expect("serializable")),
        Format::Text => print!("{}", text_report(&rec)),
    }
    Ok(ok)
}

fn verify(record: &Path, h_path: &Path, g_path: &Path) -> Result<bool, Failure> {
    let text = read(record)?;
    let rec: OutputRecord =
        serde_json::from_str(&text).map_err(|e| Failure::from(Error::MalformedRecord(e.to_string())))?;
    let f = rec.field()?;
    let gr = rec.resolution(&f)?;
    let (h, g) = load(h_path, g_path, &f)?;
    if gr.n() != g.n_inputs() {
        return Err(Error::MalformedRecord(format!("record has {} coordinates, systems have {}", gr.n(), g.n_inputs())).into());
    }
    let checks = check(&slp_compose(&h, &g)?, &gr, &f);
    for (name, pass) in checks.lines() {
        println!("{name}: {}", if pass { "pass" } else { "fail" });
    }
    Ok(checks.all())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve {
            h,
            g,
            prime,
            seed,
            retries,
            format,
            verify: v,
            timings,
        } => solve(&h, &g, prime, seed, retries, format, v, timings),
        Command::Verify { record, h, g } => verify(&record, &h, &g),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
