use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gdl::cli::{configure_threads, run, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    let (out, code) = match std::panic::catch_unwind(|| run(&cfg)) {
        Ok(r) => r,
        Err(_) => ("error: internal failure\n".to_string(), 4),
    };
    if code >= 2 {
        eprint!("{out}");
    } else {
        print!("{out}");
        let _ = std::io::stdout().flush();
    }
    ExitCode::from(code as u8)
}
