//! Job parsing, execution and JSON rendering behind the `certroot` binary.

pub mod job;
pub mod json;
pub mod run;

pub use job::{parse_job, render_args, Command, JobOptions, JobSpec, OutputFormat, ParseOutcome};
pub use run::{run_job, JobOutput, EXIT_OK, EXIT_SOLVER, EXIT_USAGE};
