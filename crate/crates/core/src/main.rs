use jacobi_sobolev::cli::{execute, init_threads, parse_args, UsageError};
use std::process::ExitCode;

fn main() -> ExitCode {
    let cfg = match parse_args(std::env::args_os()) {
        Ok(c) => c,
        Err(UsageError::Clap(e)) => e.exit(),
        Err(UsageError::Invalid(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
    };
    init_threads();
    let stdout = std::io::stdout();
    let code = execute(&cfg, &mut stdout.lock(), &mut std::io::stderr());
    ExitCode::from(code as u8)
}
