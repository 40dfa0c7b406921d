use std::io::Write;
use std::process::ExitCode;

use certroot_cli::{parse_job, run_job, ParseOutcome, EXIT_USAGE};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("LOG_LEVEL", "warn")).init();

    let job = match parse_job(std::env::args_os()) {
        Ok(job) => job,
        Err(ParseOutcome::Info(text)) => {
            print!("{text}");
            return ExitCode::SUCCESS;
        }
        Err(ParseOutcome::Usage(text)) => {
            eprint!("{text}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    log::debug!("running {} on {} coefficients", job.command.name(), job.coeffs.len());
    let out = run_job(&job);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code)
}
