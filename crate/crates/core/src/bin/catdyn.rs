use std::io::Write;
use std::process::ExitCode;

use catdyn::cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.stdout),
        None => std::io::stdout().write_all(out.stdout.as_bytes()),
    };
    eprint!("{}", out.stderr);
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(out.code as u8)
}
