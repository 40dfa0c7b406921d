use std::path::PathBuf;

use certroot::ComplexValue;
use clap::{Args, Parser, Subcommand};

/// Why a command line could not become a job.
#[derive(Debug, Clone, PartialEq)]
pub enum ParseOutcome {
    /// `--help` or `--version`; text goes to stdout, exit 0.
    Info(String),
    /// Malformed flags or input; exit 2.
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Root,
    AllRoots,
    Preimage,
    Certify,
    DemoComposite,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Root => "root",
            Command::AllRoots => "all-roots",
            Command::Preimage => "preimage",
            Command::Certify => "certify",
            Command::DemoComposite => "demo-composite",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobOptions {
    pub target: ComplexValue,
    pub start: ComplexValue,
    pub tol: f64,
    pub max_steps: usize,
    pub rho_cap: Option<f64>,
    pub seed: u64,
    /// Audit sample count for `certify`; zero skips the audit.
    pub samples: usize,
    pub output: OutputFormat,
    pub trace: bool,
}

impl Default for JobOptions {
    fn default() -> Self {
        Self {
            target: ComplexValue::new(0.0, 0.0),
            start: ComplexValue::new(0.0, 0.0),
            tol: 1e-10,
            max_steps: 10_000,
            rho_cap: None,
            seed: 0,
            samples: 0,
            output: OutputFormat::Text,
            trace: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    /// Ascending coefficients; empty only for `demo-composite`.
    pub coeffs: Vec<ComplexValue>,
    pub options: JobOptions,
}

#[derive(Parser, Debug)]
#[command(
    name = "certroot",
    version,
    about = "Certified complex polynomial roots, preimages and local inversion certificates",
    after_help = "Coefficients are ascending: [[a0_re,a0_im],[a1_re,a1_im],...] means a0 + a1 z + ..."
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Continue from --start until f(z) = --target.
    Root(Flags),
    /// All roots by continuation and deflation.
    AllRoots(Flags),
    /// Solve f(z) = --target inside the certified disk around --start.
    Preimage(Flags),
    /// Print the certified radii of the local model at --start.
    Certify(Flags),
    /// Solve cos^7(z^2+z+i) - 3cos(z^2+z+i) + 1 = 0 in stages.
    DemoComposite(Flags),
}

#[derive(Args, Debug)]
struct Flags {
    /// JSON array of [re,im] pairs, ascending degree.
    #[arg(long, conflicts_with = "coeffs_file", allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// File holding the same JSON array as --coeffs.
    #[arg(long, value_name = "PATH")]
    coeffs_file: Option<PathBuf>,
    /// Target value RE,IM.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, value_name = "RE,IM")]
    target: Option<ComplexValue>,
    /// Start / expansion point RE,IM.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, value_name = "RE,IM")]
    start: Option<ComplexValue>,
    /// Residual tolerance (default 1e-10).
    #[arg(long, value_parser = parse_positive)]
    tol: Option<f64>,
    /// Continuation step budget (default 10000).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_steps: Option<u64>,
    /// Upper bound on the model radius rho (default 1 + |start|).
    #[arg(long, value_parser = parse_positive)]
    rho_cap: Option<f64>,
    /// Seed for the audit sampler.
    #[arg(long)]
    seed: Option<u64>,
    /// Audit the certificate at this many sampled targets (certify only).
    #[arg(long)]
    samples: Option<usize>,
    /// Machine-readable JSON on stdout.
    #[arg(long)]
    json: bool,
    /// Include the continuation trace.
    #[arg(long)]
    trace: bool,
}

fn parse_complex(text: &str) -> Result<ComplexValue, String> {
    let (re, im) = text
        .split_once(',')
        .ok_or_else(|| format!("expected RE,IM, got {text:?}"))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("not a finite number: {s:?}"))
    };
    Ok(ComplexValue::new(parse(re)?, parse(im)?))
}

fn parse_positive(text: &str) -> Result<f64, String> {
    match text.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got {text:?}")),
    }
}

/// Parses `[[re, im], ...]`.
pub fn parse_coeffs(text: &str) -> Result<Vec<ComplexValue>, String> {
    let pairs: Vec<[f64; 2]> =
        serde_json::from_str(text).map_err(|e| format!("malformed coefficient JSON: {e}"))?;
    if pairs.is_empty() {
        return Err("coefficient list is empty".into());
    }
    Ok(pairs.into_iter().map(|[re, im]| ComplexValue::new(re, im)).collect())
}

pub fn parse_job<I, T>(argv: I) -> Result<JobSpec, ParseOutcome>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        let text = e.render().to_string();
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ParseOutcome::Info(text),
            ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => ParseOutcome::Usage(text),
            _ => ParseOutcome::Usage(text),
        }
    })?;
    let (command, flags) = match cli.command {
        Sub::Root(f) => (Command::Root, f),
        Sub::AllRoots(f) => (Command::AllRoots, f),
        Sub::Preimage(f) => (Command::Preimage, f),
        Sub::Certify(f) => (Command::Certify, f),
        Sub::DemoComposite(f) => (Command::DemoComposite, f),
    };
    let usage = |msg: String| ParseOutcome::Usage(format!("error: {msg}\n"));

    let source = match (&flags.coeffs, &flags.coeffs_file) {
        (Some(text), _) => Some(text.clone()),
        (None, Some(path)) => Some(
            std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?,
        ),
        (None, None) => None,
    };
    let coeffs = match (command, source) {
        (_, Some(text)) => parse_coeffs(&text).map_err(usage)?,
        (Command::DemoComposite, None) => Vec::new(),
        (_, None) => return Err(usage("--coeffs or --coeffs-file is required".into())),
    };

    let defaults = JobOptions::default();
    let options = JobOptions {
        target: flags.target.unwrap_or(defaults.target),
        start: flags.start.unwrap_or(defaults.start),
        tol: flags.tol.unwrap_or(defaults.tol),
        max_steps: flags.max_steps.map_or(defaults.max_steps, |n| n as usize),
        rho_cap: flags.rho_cap,
        seed: flags.seed.unwrap_or(defaults.seed),
        samples: flags.samples.unwrap_or(defaults.samples),
        output: if flags.json { OutputFormat::Json } else { OutputFormat::Text },
        trace: flags.trace,
    };
    Ok(JobSpec {
        command,
        coeffs,
        options,
    })
}

/// Command line that parses back to `job`.
pub fn render_args(job: &JobSpec) -> Vec<String> {
    let o = &job.options;
    let pair = |z: ComplexValue| format!("{},{}", z.re, z.im);
    let mut args = vec!["certroot".to_string(), job.command.name().to_string()];
    if !job.coeffs.is_empty() {
        let pairs: Vec<[f64; 2]> = job.coeffs.iter().map(|z| [z.re, z.im]).collect();
        args.push("--coeffs".into());
        args.push(serde_json::to_string(&pairs).expect("finite coefficients serialize"));
    }
    args.extend([
        "--target".into(),
        pair(o.target),
        "--start".into(),
        pair(o.start),
        "--tol".into(),
        o.tol.to_string(),
        "--max-steps".into(),
        o.max_steps.to_string(),
        "--seed".into(),
        o.seed.to_string(),
        "--samples".into(),
        o.samples.to_string(),
    ]);
    if let Some(cap) = o.rho_cap {
        args.push("--rho-cap".into());
        args.push(cap.to_string());
    }
    if o.output == OutputFormat::Json {
        args.push("--json".into());
    }
    if o.trace {
        args.push("--trace".into());
    }
    args
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    #[test]
    fn root_job() {
        let job = parse_job(["certroot", "root", "--coeffs", "[[1,0],[0,0],[1,0]]"]).unwrap();
        assert_eq!(job.command, Command::Root);
        assert_eq!(job.coeffs, vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(job.options, JobOptions::default());
    }

    #[test]
    fn preimage_job() {
        let job = parse_job([
            "certroot", "preimage", "--coeffs", "[[0,0],[0,0],[1,0]]", "--target", "0.01,0", "--start", "0,0",
        ])
        .unwrap();
        assert_eq!(job.command, Command::Preimage);
        assert_eq!(job.options.target, c(0.01, 0.0));
    }

    #[test]
    fn negative_values_parse() {
        let job = parse_job(["certroot", "root", "--coeffs", "[[-1,0],[1,0]]", "--target", "-0.5,-2"]).unwrap();
        assert_eq!(job.options.target, c(-0.5, -2.0));
    }

    #[test]
    fn malformed_inputs_are_usage_errors() {
        let cases: &[&[&str]] = &[
            &["certroot", "root", "--coeffs", "[]"],
            &["certroot", "root", "--coeffs", "[[1,0],[2]]"],
            &["certroot", "root", "--coeffs", "not json"],
            &["certroot", "root"],
            &["certroot", "root", "--coeffs", "[[1,0]]", "--tol", "0"],
            &["certroot", "root", "--coeffs", "[[1,0]]", "--tol", "-1"],
            &["certroot", "root", "--coeffs", "[[1,0]]", "--max-steps", "0"],
            &["certroot", "root", "--coeffs", "[[1,0]]", "--target", "1"],
            &["certroot", "root", "--coeffs", "[[1,0]]", "--target", "1,nan"],
            &["certroot", "root", "--coeffs", "[[1,0]]", "--bogus"],
            &["certroot", "explode"],
            &["certroot"],
        ];
        for argv in cases {
            assert!(matches!(parse_job(argv.iter()), Err(ParseOutcome::Usage(_))), "{argv:?}");
        }
        assert!(matches!(parse_job(["certroot", "--help"]), Err(ParseOutcome::Info(_))));
    }

    fn finite() -> impl Strategy<Value = f64> {
        prop_oneof![-1e6f64..1e6, any::<f64>().prop_filter("finite", |x| x.is_finite())]
    }

    fn positive() -> impl Strategy<Value = f64> {
        (1e-300f64..1e300).prop_filter("positive", |x| *x > 0.0)
    }

    fn job_strategy() -> impl Strategy<Value = JobSpec> {
        let command = prop_oneof![
            Just(Command::Root),
            Just(Command::AllRoots),
            Just(Command::Preimage),
            Just(Command::Certify),
            Just(Command::DemoComposite),
        ];
        (
            command,
            prop::collection::vec((finite(), finite()), 1..6),
            (finite(), finite(), finite(), finite()),
            positive(),
            1usize..100_000,
            prop::option::of(positive()),
            any::<u64>(),
            0usize..1000,
            any::<bool>(),
            any::<bool>(),
        )
            .prop_map(|(command, coeffs, (tr, ti, sr, si), tol, max_steps, rho_cap, seed, samples, json, trace)| JobSpec {
                command,
                coeffs: coeffs.into_iter().map(|(re, im)| c(re, im)).collect(),
                options: JobOptions {
                    target: c(tr, ti),
                    start: c(sr, si),
                    tol,
                    max_steps,
                    rho_cap,
                    seed,
                    samples,
                    output: if json { OutputFormat::Json } else { OutputFormat::Text },
                    trace,
                },
            })
    }

    proptest! {
        #[test]
        fn render_then_parse_is_identity(job in job_strategy()) {
            let back = parse_job(render_args(&job)).unwrap();
            prop_assert_eq!(back, job);
        }
    }
}
