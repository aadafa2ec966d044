use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use adjunct_core::cli::{self, selfcheck, Mod8Mode, Options, EXIT_INPUT, EXIT_INTERNAL, EXIT_OK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// Minimal-genus lower bounds and symplectic basis reduction for JSON case files.
#[derive(Debug, Parser)]
#[command(name = "adjunct", version)]
struct Args {
    /// Case file (one case object or an array); standard input when omitted.
    #[arg(long)]
    input: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Report unknown fields as warnings instead of rejecting the case.
    #[arg(long)]
    lenient: bool,

    /// Treatment of the c1² ≡ τ (mod 8) check.
    #[arg(long, value_enum, default_value_t = Mod8Mode::Warn)]
    mod8: Mod8Mode,

    /// Seed for --self-check.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Run the built-in property suites instead of reading a case file.
    #[arg(long)]
    self_check: bool,
}

fn read_input(path: Option<&PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

/// A closed pipe (e.g. `| head`) is not an error worth a panic.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let args = Args::parse();

    if args.self_check {
        let results = selfcheck::run(args.seed);
        for r in &results {
            emit(&format!("{} {}: {}\n", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail));
        }
        return exit(if results.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_INTERNAL });
    }

    let text = match read_input(args.input.as_ref()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("adjunct: cannot read input: {e}");
            return exit(EXIT_INPUT);
        }
    };
    let opts = Options { lenient: args.lenient, mod8: args.mod8 };
    let report = cli::run_document(&text, &opts);
    match args.format {
        Format::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&report.to_json()).expect("reports serialize"))),
        Format::Table => emit(&cli::render_table(&report)),
    }
    exit(report.exit_code())
}
