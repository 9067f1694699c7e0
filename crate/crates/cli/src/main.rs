use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use vitushkin_cli::{run, Mode, Status};

/// Covering-number bounds for sub-level sets, with empirical grid checks.
#[derive(Debug, Parser)]
#[command(name = "vitushkin", version)]
struct Args {
    /// Problem document (JSON), or `-` for standard input.
    input: String,
    #[arg(long, value_enum, default_value_t = Mode::Bound)]
    mode: Mode,
    /// Output path; `-` or omitted writes to standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads for sample evaluation (0 = automatic).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn read_input(path: &str) -> io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(Status::InputError as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let text = match read_input(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input);
            return ExitCode::from(Status::InputError as u8);
        }
    };
    let outcome = match run(&text, args.mode, args.threads) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Status::InputError as u8);
        }
    };
    let written = match args.output.as_deref() {
        Some(p) if p.as_os_str() != "-" => fs::write(p, &outcome.output),
        _ => io::stdout().lock().write_all(&outcome.output),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(Status::InputError as u8);
    }
    ExitCode::from(outcome.status as u8)
}
