use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = hypermoduli::cli::run(std::env::args_os(), &mut std::io::stdin());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(outcome.status as u8)
}
