use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use optseq::construction::{construct, CaseTuple, ConstructError, Variant};
use optseq::correlation::autocorrelation_spectrum;
use optseq::cyclotomy::{scan_family, CyclotomicSystem};
use optseq::gf2poly::{
    berlekamp_massey, check_shift_convention, linear_complexity, ShiftConvention,
};
use optseq::report::{fmt_hist, verify_all, verify_system, AnalysisReport};
use optseq::PeriodicSequence;

#[derive(Parser, Debug)]
#[command(
    name = "optseq",
    version,
    about = "Period-2N interleaved sequences with optimal autocorrelation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List admissible N = 4y^2 + 1 (prime, y odd) up to a bound
    Scan {
        #[arg(long = "max-n")]
        max_n: u64,
    },
    /// Generate one construction instance
    Gen(InstanceArgs),
    /// Autocorrelation spectrum of an instance or an explicit 0/1 string
    Spectrum(SourceArgs),
    /// Linear complexity of an instance or an explicit 0/1 string
    Lc(SourceArgs),
    /// Run every check for one N (all cases and variants) or for a whole range
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        n: Option<u64>,
        /// Verify every admissible N up to --max-n
        #[arg(long, requires = "max_n")]
        all: bool,
        #[arg(long = "max-n")]
        max_n: Option<u64>,
        /// Primitive root override
        #[arg(long)]
        beta: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct InstanceArgs {
    #[arg(long)]
    n: u64,
    /// Case tuple i,j,l
    #[arg(long, default_value = "0,1,2")]
    case: CaseTuple,
    #[arg(long, default_value = "sprime")]
    variant: Variant,
    /// Primitive root override
    #[arg(long)]
    beta: Option<u64>,
}

#[derive(Args, Debug)]
struct SourceArgs {
    #[arg(long, conflicts_with = "seq", required_unless_present = "seq")]
    n: Option<u64>,
    #[arg(long, default_value = "0,1,2")]
    case: CaseTuple,
    #[arg(long, default_value = "sprime")]
    variant: Variant,
    #[arg(long)]
    beta: Option<u64>,
    /// Explicit sequence, term 0 first
    #[arg(long)]
    seq: Option<PeriodicSequence>,
}

impl SourceArgs {
    fn sequence(&self) -> Result<PeriodicSequence, ConstructError> {
        if let Some(s) = &self.seq {
            return Ok(s.clone());
        }
        let n = self.n.expect("clap enforces --n or --seq");
        let sys = CyclotomicSystem::with_beta(n, self.beta)?;
        Ok(construct(&sys, self.case, self.variant).sequence)
    }
}

enum Failure {
    Usage(String),
    HardChecks { output: String, summary: String },
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<optseq::ParamError> for Failure {
    fn from(e: optseq::ParamError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn unsupported(format: Format, cmd: &str) -> Failure {
    Failure::Usage(format!("--format {format:?} is not supported by {cmd}").to_lowercase())
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Scan { max_n } => {
            let family = scan_family(*max_n);
            match format {
                Format::Json => Ok(to_json(&family)),
                Format::Text => Ok(family
                    .iter()
                    .map(|p| format!("N={} f={} y={}\n", p.n, p.f, p.y_abs))
                    .collect()),
                Format::Csv => {
                    let mut out = String::from("N,f,y\n");
                    for p in family {
                        out.push_str(&format!("{},{},{}\n", p.n, p.f, p.y_abs));
                    }
                    Ok(out)
                }
            }
        }
        Command::Gen(args) => {
            let sys = CyclotomicSystem::with_beta(args.n, args.beta)?;
            let inst = construct(&sys, args.case, args.variant);
            let s = &inst.sequence;
            match format {
                Format::Json => Ok(to_json(&json!({
                    "N": args.n,
                    "beta": sys.beta(),
                    "case": args.case,
                    "variant": args.variant,
                    "sequence": s.to_string(),
                    "period": s.period(),
                    "weight": s.weight(),
                    "balanced": s.is_balanced(),
                }))),
                Format::Text => Ok(format!(
                    "{s}\nweight={} balanced={} beta={}\n",
                    s.weight(),
                    s.is_balanced(),
                    sys.beta()
                )),
                Format::Csv => Err(unsupported(format, "gen")),
            }
        }
        Command::Spectrum(args) => {
            let sp = autocorrelation_spectrum(&args.sequence()?);
            match format {
                Format::Json => Ok(to_json(&sp)),
                Format::Csv => Ok(sp.to_csv()),
                Format::Text => Ok(format!(
                    "period={} histogram={}\n",
                    sp.period,
                    fmt_hist(&sp.histogram)
                )),
            }
        }
        Command::Lc(args) => {
            let s = args.sequence()?;
            let r = linear_complexity(&s);
            let bm = berlekamp_massey(&s, 2 * s.period());
            match format {
                Format::Json => Ok(to_json(&json!({
                    "period": s.period(),
                    "lc": r.lc,
                    "bm_lc": bm,
                    "minimal_polynomial": r.minimal_polynomial.to_string(),
                    "minimal_polynomial_hex": r.minimal_polynomial.to_hex(),
                    "gcd_with_xn_minus_1": r.gcd_with_xn_minus_1.to_string(),
                    "gcd_with_xn_minus_1_hex": r.gcd_with_xn_minus_1.to_hex(),
                }))),
                Format::Text => Ok(format!(
                    "period={} lc={} bm_lc={}\nminimal polynomial: {}\ngcd: {}\n",
                    s.period(),
                    r.lc,
                    bm,
                    r.minimal_polynomial,
                    r.gcd_with_xn_minus_1
                )),
                Format::Csv => Err(unsupported(format, "lc")),
            }
        }
        Command::Verify {
            n,
            all,
            max_n,
            beta,
        } => {
            let reports = if *all {
                verify_all(max_n.expect("clap enforces --max-n with --all"), *beta)?
            } else {
                let sys = CyclotomicSystem::with_beta(n.expect("clap enforces --n"), *beta)?;
                verify_system(&sys)?
            };
            let out = match format {
                Format::Json => to_json(&reports),
                Format::Text => reports.iter().map(text_line).collect(),
                Format::Csv => return Err(unsupported(format, "verify")),
            };
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if failed > 0 {
                Err(Failure::HardChecks {
                    output: out,
                    summary: format!("{failed} of {} instances failed hard checks", reports.len()),
                })
            } else {
                Ok(out)
            }
        }
    }
}

fn text_line(r: &AnalysisReport) -> String {
    let mut line = format!(
        "N={} beta={} case=({}) {}: {} lc={} (bm {}, bound {}) hist={}\n",
        r.n,
        r.beta,
        r.case,
        r.variant,
        if r.passed() { "PASS" } else { "FAIL" },
        r.lc,
        r.bm_lc,
        r.lc_bound,
        fmt_hist(&r.spectrum_histogram)
    );
    for f in &r.hard_failures {
        line.push_str(&format!("  hard: {f}\n"));
    }
    for note in r.soft_notes() {
        line.push_str(&format!("  soft: {note}\n"));
    }
    line
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let convention = check_shift_convention();
    if convention != ShiftConvention::NMinusTau {
        eprintln!("self-test failed: shift/polynomial convention is {convention:?}");
        return ExitCode::from(3);
    }
    match run(&cli) {
        Ok(out) => match emit(&cli, &out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::HardChecks { output, summary }) => {
            if let Err(e) = emit(&cli, &output) {
                eprintln!("error: {e}");
            }
            eprintln!("{summary}");
            ExitCode::from(1)
        }
    }
}
