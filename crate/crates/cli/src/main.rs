use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use chtube_cli::commands::{execute, Cli};
use chtube_cli::error::{exit, EXIT_CERTIFICATE, EXIT_OK};
use chtube_cli::report;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return exit(if e.use_stderr() { 2 } else { EXIT_OK });
        }
    };
    match execute(&cli) {
        Ok(r) => {
            let mut out = std::io::stdout().lock();
            if report::write(&r, cli.format, &mut out).and_then(|_| out.flush()).is_err() {
                return exit(4);
            }
            exit(if r.passed() { EXIT_OK } else { EXIT_CERTIFICATE })
        }
        Err(e) => {
            eprintln!("chtube: {e}");
            exit(e.exit_code())
        }
    }
}
