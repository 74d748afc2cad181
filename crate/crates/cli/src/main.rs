use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use matchfix::brackets::DEFAULT_COALITION_BOUND;
use matchfix_cli::{run_text, Command, Flags, OracleFormat, EXIT_ERROR};

/// Decide whether a coalition can fix a competition by throwing games.
#[derive(Parser)]
#[command(name = "matchfix", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Instance file, or `-` for standard input.
    instance: PathBuf,
    /// Team to crown.
    #[arg(long)]
    target: Option<usize>,
    /// Team to keep from winning.
    #[arg(long)]
    lose: Option<usize>,
    /// Print the structured JSON document.
    #[arg(long)]
    json: bool,
    /// Largest coalition the bracket searches accept.
    #[arg(long, default_value_t = DEFAULT_COALITION_BOUND)]
    max_coalition: usize,
    /// Competition searched by `oracle`.
    #[arg(long, value_enum, default_value_t = OracleFormat::Cup)]
    format: OracleFormat,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = if args.instance.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&args.instance)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("matchfix: {}: {e}", args.instance.display());
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    let flags = Flags {
        target: args.target,
        lose: args.lose,
        json: args.json,
        max_coalition: args.max_coalition,
        format: args.format,
    };
    match run_text(args.command, &text, &flags) {
        Ok((code, out)) => {
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err((code, msg)) => {
            eprintln!("matchfix: {msg}");
            ExitCode::from(code as u8)
        }
    }
}
