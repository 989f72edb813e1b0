use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use polarbetti_cli::commands::{
    cmd_betti, cmd_engine, cmd_gen, cmd_polar, cmd_verify, CliError, EngineInput, Method, Options,
};
use polarbetti_cli::report::OutputFormat;

/// Exact Betti numbers and minimal cell counts of complements of rational
/// hyperplane arrangements, computed by certified generic pencils and polar
/// numbers and cross-validated against a Möbius-function oracle and an
/// exact plane-curve engine.
#[derive(Parser)]
#[command(name = "polarbetti", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Os,
    Slicing,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers of the complement, by the Möbius oracle, by pencil
    /// slicing, or both with an equality check.
    Betti {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Candidate budget for certification searches.
        #[arg(long, default_value_t = polarbetti::pencil::DEFAULT_BUDGET)]
        budget: usize,
        /// Drop duplicate hyperplanes instead of failing.
        #[arg(long)]
        dedupe: bool,
    },
    /// Atypical values, polar numbers, cell counts, and the slicing trace.
    Polar {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(long, default_value_t = polarbetti::pencil::DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        dedupe: bool,
    },
    /// Polar-curve engine for plane arrangements or curve expressions
    /// (e.g. --curve "x^2 - y^3").
    Engine {
        /// Arrangement file (dimension 2). Omit when passing --curve.
        file: Option<PathBuf>,
        /// Curve expression in x and y.
        #[arg(long, conflicts_with = "file")]
        curve: Option<String>,
        /// Pencil direction as two rationals, e.g. "1,2". Defaults to the
        /// first certified direction.
        #[arg(long)]
        direction: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(long, default_value_t = polarbetti::pencil::DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        dedupe: bool,
    },
    /// Generate a corpus arrangement file on stdout.
    Gen {
        /// boolean|braid|generic|concurrent|parallel|points|random
        family: String,
        /// Family parameters (e.g. `generic 2 4`).
        params: Vec<usize>,
        /// Seed for the random family (test harness use).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the full invariant suite on one arrangement.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(long, default_value_t = polarbetti::pencil::DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        dedupe: bool,
    },
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn run() -> Result<(String, i32), CliError> {
    let cli = Cli::parse();
    let start = Instant::now();
    match cli.command {
        Command::Betti { file, method, format, budget, dedupe } => {
            let text = read_file(&file)?;
            let method = match method {
                MethodArg::Os => Method::Os,
                MethodArg::Slicing => Method::Slicing,
                MethodArg::Both => Method::Both,
            };
            let opts = Options { budget, dedupe };
            let mut report = cmd_betti(&text, method, &opts)?;
            report.timing = Some(start.elapsed());
            Ok((report.render(output(format)), report.exit_code()))
        }
        Command::Polar { file, format, budget, dedupe } => {
            let text = read_file(&file)?;
            let opts = Options { budget, dedupe };
            let mut report = cmd_polar(&text, &opts)?;
            report.timing = Some(start.elapsed());
            Ok((report.render(output(format)), report.exit_code()))
        }
        Command::Engine { file, curve, direction, format, budget, dedupe } => {
            let opts = Options { budget, dedupe };
            let text;
            let input = match (&file, &curve) {
                (Some(path), None) => {
                    text = read_file(path)?;
                    EngineInput::ArrangementText(&text)
                }
                (None, Some(expr)) => EngineInput::Curve(expr),
                _ => {
                    return Err(CliError::Input(
                        "engine needs exactly one of FILE or --curve".into(),
                    ))
                }
            };
            let mut report = cmd_engine(input, direction.as_deref(), &opts)?;
            report.timing = Some(start.elapsed());
            Ok((report.render(output(format)), report.exit_code()))
        }
        Command::Gen { family, params, seed } => {
            let text = cmd_gen(&family, &params, seed)?;
            Ok((text, 0))
        }
        Command::Verify { file, format, budget, dedupe } => {
            let text = read_file(&file)?;
            let opts = Options { budget, dedupe };
            let mut report = cmd_verify(&text, &opts)?;
            report.timing = Some(start.elapsed());
            Ok((report.render(output(format)), report.exit_code()))
        }
    }
}

fn output(f: FormatArg) -> OutputFormat {
    match f {
        FormatArg::Text => OutputFormat::Text,
        FormatArg::Json => OutputFormat::Json,
    }
}

fn main() -> ExitCode {
    match run() {
        Ok((output, code)) => {
            print!("{output}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
