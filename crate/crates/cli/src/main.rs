use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use triality_core::clifford::Signature;
use triality_core::emit::{self, EmitObject, Format};
use triality_core::representations::Kind;
use triality_core::subalgebras::{g2_basis, su3_block_scalar, su3_embedding, su3_transform};
use triality_core::triality::{OpName, OuterOp};
use triality_core::verify::{self, Fault, Suite};
use triality_core::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_CONSTRUCTION: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Exact verification of so(8) triality, g2 and su(3).
#[derive(Parser, Debug)]
#[command(name = "triality", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the verification suite and print a report.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long, hide = true, value_parser = parse_fault)]
        inject_fault: Option<Fault>,
        #[command(flatten)]
        output: Output,
    },
    /// Serialize a constructed object.
    Emit {
        #[arg(long, value_parser = parse_object)]
        object: EmitObject,
        #[arg(long, value_parser = parse_signature)]
        signature: Option<Signature>,
        #[arg(long, value_enum, default_value_t = EmitFormat::Json)]
        format: EmitFormat,
        #[command(flatten)]
        output: Output,
    },
    /// Apply an outer automorphism to a basis.
    Map {
        #[arg(long, value_parser = parse_op)]
        op: OpName,
        #[arg(long, value_parser = parse_kind)]
        from: Kind,
        #[command(flatten)]
        output: Output,
    },
    /// The triality-diagonal basis built from V.
    Grade {
        #[arg(long, value_parser = parse_signature, default_value = "8,0")]
        signature: Signature,
        #[arg(long, value_enum, default_value_t = EmitFormat::Json)]
        format: EmitFormat,
        #[command(flatten)]
        output: Output,
    },
    /// Closure of the outer automorphism generators.
    S3 {
        #[arg(long, value_parser = parse_signature, default_value = "8,0")]
        signature: Signature,
        #[command(flatten)]
        output: Output,
    },
    /// The g2 basis or the coefficient relations defining it.
    G2 {
        #[arg(long, value_enum)]
        emit: G2Object,
        #[arg(long, value_enum, default_value_t = EmitFormat::Json)]
        format: EmitFormat,
        #[command(flatten)]
        output: Output,
    },
    /// The su(3) block decomposition; with --check, verify it.
    Su3 {
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = EmitFormat::Json)]
        format: EmitFormat,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    Euclidean,
    Lorentzian,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Euclidean => Suite::Euclidean,
            SuiteArg::Lorentzian => Suite::Lorentzian,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum EmitFormat {
    Json,
    Latex,
}

impl From<EmitFormat> for Format {
    fn from(f: EmitFormat) -> Format {
        match f {
            EmitFormat::Json => Format::Json,
            EmitFormat::Latex => Format::Latex,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum G2Object {
    Lambda,
    Constraints,
}

fn parse_signature(s: &str) -> Result<Signature, String> {
    Signature::parse(s).map_err(|e| e.to_string())
}

fn parse_object(s: &str) -> Result<EmitObject, String> {
    EmitObject::parse(s).map_err(|e| e.to_string())
}

fn parse_op(s: &str) -> Result<OpName, String> {
    OpName::parse(s).map_err(|e| e.to_string())
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    Kind::parse(s).map_err(|e| e.to_string())
}

fn parse_fault(s: &str) -> Result<Fault, String> {
    Fault::parse(s).map_err(|e| e.to_string())
}

struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, code: 0 }
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::NotApplicable(_)
            | Error::SignatureMismatch { .. }
            | Error::UnsupportedSignature { .. }
    )
}

fn su3_check(format: EmitFormat) -> Result<Outcome, Error> {
    let u = su3_transform();
    let unitary = u.is_unitary();
    let det = u.determinant()?;
    let g2 = g2_basis()?;
    let (blocks_match, mismatch) = match su3_embedding(&g2) {
        Ok(_) => (true, None),
        Err(Error::BlockMismatch { k, row, col }) => (false, Some((k, row, col))),
        Err(e) => return Err(e),
    };
    let pass = unitary && det.is_one() && blocks_match;
    let text = match format {
        EmitFormat::Json => {
            let doc = serde_json::json!({
                "unitary": unitary,
                "determinant": det,
                "scalar": su3_block_scalar(),
                "blocks_match": blocks_match,
                "first_mismatch": mismatch.map(|(k, r, c)| serde_json::json!({"k": k, "row": r, "col": c})),
                "status": if pass { "pass" } else { "fail" },
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        EmitFormat::Latex => return Err(Error::NotApplicable("su3 --check prints json only".into())),
    };
    Ok(Outcome {
        text,
        code: if pass { 0 } else { EXIT_FAIL },
    })
}

fn run(command: Command) -> (Result<Outcome, Error>, Option<PathBuf>) {
    match command {
        Command::Verify {
            suite,
            format,
            inject_fault,
            output,
        } => {
            let result = verify::verify_with_fault(suite.into(), inject_fault).map(|report| Outcome {
                text: match format {
                    ReportFormat::Text => report.to_text(),
                    ReportFormat::Json => report.to_json(),
                },
                code: report.exit_code() as u8,
            });
            (result, output.out)
        }
        Command::Emit {
            object,
            signature,
            format,
            output,
        } => (emit::emit(object, signature, format.into()).map(Outcome::ok), output.out),
        Command::Map { op, from, output } => {
            let result = match op {
                OpName::KPrime => Err(Error::NotApplicable("K' acts on the diagonal basis only".into())),
                name => emit::map_json(&OuterOp::by_name(name), from),
            };
            (result.map(Outcome::ok), output.out)
        }
        Command::Grade {
            signature,
            format,
            output,
        } => (
            emit::emit(EmitObject::Graded, Some(signature), format.into()).map(Outcome::ok),
            output.out,
        ),
        Command::S3 { signature, output } => (emit::s3_json(signature).map(Outcome::ok), output.out),
        Command::G2 {
            emit: what,
            format,
            output,
        } => {
            let object = match what {
                G2Object::Lambda => EmitObject::G2Lambda,
                G2Object::Constraints => EmitObject::G2Constraints,
            };
            (emit::emit(object, None, format.into()).map(Outcome::ok), output.out)
        }
        Command::Su3 {
            check,
            format,
            output,
        } => {
            let result = if check {
                su3_check(format)
            } else {
                emit::emit(EmitObject::Su3Blocks, None, format.into()).map(Outcome::ok)
            };
            (result, output.out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (result, out) = run(cli.command);
    let outcome = match result {
        Ok(o) => o,
        Err(e) if is_usage_error(&e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(e) => {
            eprintln!("construction error: {e}");
            return ExitCode::from(EXIT_CONSTRUCTION);
        }
    };
    let written = match out {
        Some(path) => fs::write(&path, &outcome.text),
        None => io::stdout().lock().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_CONSTRUCTION);
    }
    ExitCode::from(outcome.code)
}
