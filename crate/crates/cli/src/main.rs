use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use optseq::construct_u::{self, HypothesisCheck, Regime, UPredictor};
use optseq::correlation::{self, oracle, CorrelationSpectrum};
use optseq::generators::{self, LegendreKind};
use optseq::interleave::{self, InterleavedSpec};
use optseq::verify::{self, Status, Target, TheoremReport};
use optseq::BinarySequence;

#[derive(Parser)]
#[command(name = "optseq", version, about = "Binary sequences with optimal periodic autocorrelation")]
struct Cli {
    /// Write output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a known sequence family.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Build or decompose interleaved sequences.
    #[command(subcommand)]
    Interleave(InterleaveCommand),
    /// Build the period-4N sequence u from s and s'.
    BuildU {
        #[arg(long, value_name = "FILE")]
        s: PathBuf,
        #[arg(long, value_name = "FILE")]
        sprime: PathBuf,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        eta: i64,
    },
    /// Closed-form autocorrelation of u.
    PredictU(PredictArgs),
    /// Periodic auto- or cross-correlation spectrum.
    Corr {
        #[arg(long, value_name = "FILE")]
        a: PathBuf,
        #[arg(long, value_name = "FILE")]
        b: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Classify a sequence's autocorrelation.
    Classify {
        #[arg(long, value_name = "FILE")]
        a: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compare closed-form results with brute force.
    Verify(VerifyArgs),
    /// Enumerate every necklace of a period and keep those reaching a class.
    Search {
        #[arg(long)]
        period: usize,
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long)]
        jobs: Option<usize>,
        /// Also classify every necklace from the definitional sum.
        #[arg(long)]
        cross_check: bool,
        #[arg(long)]
        json: bool,
    },
    /// Export a correlation spectrum for plotting.
    Export {
        #[arg(long, value_name = "FILE")]
        a: PathBuf,
        #[arg(long, value_name = "FILE")]
        b: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ExportFormat::Csv)]
        format: ExportFormat,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    Legendre {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    Msequence {
        #[arg(long)]
        degree: u32,
        /// Feedback polynomial as a hex mask including the x^degree term.
        #[arg(long, value_parser = parse_hex)]
        taps: Option<u64>,
    },
    Twinprime {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        modified: bool,
    },
}

#[derive(Subcommand)]
enum InterleaveCommand {
    Build {
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
    },
    Decompose {
        #[arg(long, value_name = "FILE")]
        seq: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long, value_name = "FILE")]
    spec: PathBuf,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    eta: i64,
    #[arg(long, value_enum)]
    regime: RegimeArg,
    /// Balance constant for the constant regime; defaults to the balance of column 1.
    #[arg(long, allow_negative_numbers = true)]
    c1: Option<i64>,
    #[arg(long, allow_negative_numbers = true, conflicts_with = "all", required_unless_present = "all")]
    mu: Option<i64>,
    /// Predict every shift and compare with brute force.
    #[arg(long)]
    all: bool,
    /// Predict even when the spec violates the regime hypothesis.
    #[arg(long = "override")]
    override_check: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    which: TheoremArg,
    #[arg(long, value_name = "FILE")]
    spec: PathBuf,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    eta: i64,
    #[arg(long, value_enum, default_value_t = RegimeArg::Const)]
    regime: RegimeArg,
    #[arg(long, allow_negative_numbers = true)]
    c1: Option<i64>,
    #[arg(long = "override")]
    override_check: bool,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    condition: Option<u8>,
    /// Condition-violating specs to sample for the converse (theorem4).
    #[arg(long, default_value_t = 0)]
    samples: usize,
    #[arg(long, default_value_t = verify::DEFAULT_REVERSE_SEED)]
    seed: u64,
    #[arg(long, default_value_t = verify::DEFAULT_REVERSE_MAX_PERIOD)]
    max_period: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    First,
    Second,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RegimeArg {
    Const,
    Antisym,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    Theorem1,
    Theorem2,
    Corollaries,
    Theorem3,
    Theorem4,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Ideal,
    Optimal,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Csv,
}

fn parse_hex(s: &str) -> Result<u64, String> {
    let digits = s.trim_start_matches("0x").trim_start_matches("0X");
    u64::from_str_radix(digits, 16).map_err(|e| format!("invalid hex mask {s:?}: {e}"))
}

/// Invalid input; exit code 2.
#[derive(Debug)]
struct InputError(String);

impl From<optseq::Error> for InputError {
    fn from(e: optseq::Error) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = Result<T, InputError>;

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_sequence(path: &Path) -> CliResult<BinarySequence> {
    BinarySequence::parse_text(&read_file(path)?)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_spec(path: &Path) -> CliResult<InterleavedSpec> {
    InterleavedSpec::parse(&read_file(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn regime_for(arg: RegimeArg, c1: Option<i64>, spec: &InterleavedSpec) -> Regime {
    match (arg, c1) {
        (RegimeArg::Antisym, _) => Regime::AntisymmetricBalance,
        (RegimeArg::Const, Some(c1)) => Regime::ConstantBalance { c1 },
        (RegimeArg::Const, None) => Regime::constant_from(spec),
    }
}

fn check_mode(override_check: bool) -> HypothesisCheck {
    if override_check {
        HypothesisCheck::Override
    } else {
        HypothesisCheck::Strict
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn spectrum_of(a: &BinarySequence, b: Option<&BinarySequence>) -> CliResult<CorrelationSpectrum> {
    Ok(match b {
        Some(b) => correlation::cross_correlation_spectrum(a, b)?,
        None => correlation::autocorrelation_spectrum(a),
    })
}

#[derive(Serialize)]
struct PredictDocument {
    period: usize,
    kind: &'static str,
    eta: i64,
    regime: Regime,
    predicted: Vec<i64>,
    observed: Vec<i64>,
    mismatches: usize,
    verdict: Status,
}

#[derive(Serialize)]
struct VerifyDocument<'a> {
    report: &'a TheoremReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    reverse: Option<&'a verify::ReverseSampleReport>,
}

/// Output text and whether every check passed.
struct Output {
    text: String,
    pass: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, pass: true }
    }
}

fn run(command: Command) -> CliResult<Output> {
    match command {
        Command::Gen(g) => {
            let s = match g {
                GenCommand::Legendre { p, kind } => generators::legendre(
                    p,
                    match kind {
                        KindArg::First => LegendreKind::First,
                        KindArg::Second => LegendreKind::Second,
                    },
                )?,
                GenCommand::Msequence { degree, taps } => generators::m_sequence(degree, taps)?,
                GenCommand::Twinprime { p, modified } => generators::twin_prime(p, modified)?,
            };
            Ok(Output::ok(format!("{s}\n")))
        }
        Command::Interleave(InterleaveCommand::Build { spec }) => {
            let spec = read_spec(&spec)?;
            Ok(Output::ok(format!("{}\n", interleave::build(&spec))))
        }
        Command::Interleave(InterleaveCommand::Decompose { seq, k, t }) => {
            let u = read_sequence(&seq)?;
            Ok(Output::ok(interleave::to_array(&u, k, t)?.to_string()))
        }
        Command::BuildU { s, sprime, eta } => {
            let u = construct_u::build_u(&read_sequence(&s)?, &read_sequence(&sprime)?, eta)?;
            Ok(Output::ok(format!("{u}\n")))
        }
        Command::PredictU(args) => {
            let spec = read_spec(&args.spec)?;
            let regime = regime_for(args.regime, args.c1, &spec);
            let predictor = UPredictor::new(&spec, args.eta, regime, check_mode(args.override_check))?;
            match args.mu {
                Some(mu) if !args.all => Ok(Output::ok(format!("{}\n", predictor.predict(mu)))),
                _ => {
                    let u = construct_u::build_u_from_spec(&spec, args.eta)?;
                    let observed = oracle::autocorrelation_spectrum(&u).values;
                    let predicted = predictor.predict_all();
                    let mismatches = predicted.iter().zip(&observed).filter(|(p, o)| p != o).count();
                    let doc = PredictDocument {
                        period: u.period(),
                        kind: "auto",
                        eta: args.eta,
                        regime,
                        predicted,
                        observed,
                        mismatches,
                        verdict: Status::from_bool(mismatches == 0),
                    };
                    Ok(Output {
                        text: to_json(&doc),
                        pass: mismatches == 0,
                    })
                }
            }
        }
        Command::Corr { a, b, json } => {
            let a = read_sequence(&a)?;
            let b = b.map(|p| read_sequence(&p)).transpose()?;
            let spectrum = spectrum_of(&a, b.as_ref())?;
            if json {
                let mut doc = spectrum.to_document();
                if b.is_none() {
                    doc.classification = Some(correlation::classify(&spectrum)?);
                }
                return Ok(Output::ok(to_json(&doc)));
            }
            let values: Vec<String> = spectrum.values.iter().map(i64::to_string).collect();
            Ok(Output::ok(format!("{}\n", values.join(" "))))
        }
        Command::Classify { a, json } => {
            let a = read_sequence(&a)?;
            let spectrum = correlation::autocorrelation_spectrum(&a);
            let class = correlation::classify(&spectrum)?;
            if json {
                let mut doc = spectrum.to_document();
                doc.classification = Some(class);
                return Ok(Output::ok(to_json(&doc)));
            }
            let verdict = serde_json::to_value(class.verdict).expect("serializable");
            let oop: Vec<String> = spectrum.out_of_phase_set().iter().map(i64::to_string).collect();
            Ok(Output::ok(format!(
                "{} (N = {}, N mod 4 = {}, out-of-phase {{{}}})\n",
                verdict.as_str().unwrap_or_default(),
                a.period(),
                class.residue,
                oop.join(", ")
            )))
        }
        Command::Verify(args) => run_verify(args),
        Command::Search {
            period,
            target,
            jobs,
            cross_check,
            json,
        } => {
            let target = match target {
                TargetArg::Ideal => Target::Ideal,
                TargetArg::Optimal => Target::Optimal,
            };
            let result = verify::exhaustive_search(period, target, jobs, cross_check)?;
            let pass = result.oracle_disagreements.unwrap_or(0) == 0;
            if json {
                return Ok(Output { text: to_json(&result), pass });
            }
            let mut text = String::new();
            for r in &result.representatives {
                let oop: Vec<String> = r.out_of_phase.iter().map(i64::to_string).collect();
                text.push_str(&format!("{} balance {} out-of-phase {{{}}}\n", r.sequence, r.balance, oop.join(", ")));
            }
            text.push_str(&format!(
                "# {} of {} necklaces of period {}",
                result.count, result.necklaces_examined, period
            ));
            if let Some(d) = result.oracle_disagreements {
                text.push_str(&format!(", {d} oracle disagreements"));
            }
            text.push('\n');
            Ok(Output { text, pass })
        }
        Command::Export { a, b, format: ExportFormat::Csv } => {
            let a = read_sequence(&a)?;
            let b = b.map(|p| read_sequence(&p)).transpose()?;
            let spectrum = spectrum_of(&a, b.as_ref())?;
            let mut text = String::from("tau,value\n");
            for (tau, v) in spectrum.values.iter().enumerate() {
                text.push_str(&format!("{tau},{v}\n"));
            }
            Ok(Output::ok(text))
        }
    }
}

fn run_verify(args: VerifyArgs) -> CliResult<Output> {
    let spec = read_spec(&args.spec)?;
    let report = match args.which {
        TheoremArg::Theorem1 => verify::verify_theorem1(&spec),
        TheoremArg::Theorem2 => verify::verify_theorem2(&spec),
        TheoremArg::Corollaries => verify::verify_corollaries(&spec),
        TheoremArg::Theorem3 => verify::verify_theorem3(
            &spec,
            args.eta,
            regime_for(args.regime, args.c1, &spec),
            check_mode(args.override_check),
        )?,
        TheoremArg::Theorem4 => verify::verify_theorem4(&spec, args.eta, args.condition)?,
    };
    let reverse = match args.which {
        TheoremArg::Theorem4 if args.samples > 0 => Some(verify::theorem4_reverse_sample(
            args.samples,
            args.seed,
            args.max_period,
        )?),
        _ => None,
    };
    let pass = report.passed() && reverse.as_ref().is_none_or(|r| r.passed());
    let text = if args.json {
        to_json(&VerifyDocument {
            report: &report,
            reverse: reverse.as_ref(),
        })
    } else {
        let mut text = report.summary();
        if let Some(r) = &reverse {
            text.push_str(&format!(
                "converse: {} samples (seed {}, KT <= {}), {} optimal despite violating both conditions\n",
                r.samples.len(),
                r.seed,
                r.max_period,
                r.counterexamples
            ));
        }
        text
    };
    Ok(Output { text, pass })
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| InputError(format!("stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let msg = e.to_string();
            eprintln!("optseq: {}", msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let result = run(cli.command).and_then(|output| {
        emit(cli.out.as_deref(), &output.text)?;
        Ok(output.pass)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("optseq: {msg}");
            ExitCode::from(2)
        }
    }
}
