use std::io::Write;
use std::process::ExitCode;

use nervekit_cli::commands::{execute, parse};
use nervekit_cli::Report;

fn emit(report: &Report) {
    // A closed pipe downstream is not our failure.
    let _ = writeln!(std::io::stdout().lock(), "{}", report.to_json());
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let echo = args[1..].to_vec();
    match parse(&args) {
        Ok(cli) => {
            let report = execute(cli, echo);
            emit(&report);
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            let _ = e.print();
            // Help and version requests are not input errors.
            if e.exit_code() == 0 {
                return ExitCode::SUCCESS;
            }
            emit(&Report::error(echo, e.kind().to_string()));
            ExitCode::from(2)
        }
    }
}
