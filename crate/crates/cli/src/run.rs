use std::fmt::Write;

use certroot::fta::{all_roots_traced, continue_to_value, cosine_showcase, ContinuationOptions, ContinuationTrace};
use certroot::local::{audit_certificate, build_model, default_rho_cap, solve_preimage, DEFAULT_MAX_ITER};
use certroot::{ComplexValue, Error, Execution, Polynomial};

use crate::job::{Command, JobSpec, OutputFormat};
use crate::json::{format_g17, Json};

pub const EXIT_OK: u8 = 0;
pub const EXIT_SOLVER: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct JobOutput {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// A finished report in both renderings.
struct Report {
    json: Json,
    text: String,
}

fn complex_text(z: ComplexValue) -> String {
    if z.im < 0.0 {
        format!("{} - {}i", format_g17(z.re), format_g17(-z.im))
    } else {
        format!("{} + {}i", format_g17(z.re), format_g17(z.im))
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ZeroArgument => "ZeroArgument",
        Error::NonFinite(_) => "NonFinite",
        Error::InvalidInput(_) => "InvalidInput",
        Error::LocallyConstant => "LocallyConstant",
        Error::BranchViolation { .. } => "BranchViolation",
        Error::NoConvergence { .. } => "NoConvergence",
        Error::LeftDisk { .. } => "LeftDisk",
        Error::OutsideDisk { .. } => "OutsideDisk",
        Error::StepLimit { .. } => "StepLimit",
        Error::BoundViolation { .. } => "BoundViolation",
        Error::ResidualTooLarge { .. } => "ResidualTooLarge",
        Error::DegenerateRoot => "DegenerateRoot",
    }
}

/// Input problems detected by the solver count as usage errors.
fn is_input_error(e: &Error) -> bool {
    matches!(e, Error::InvalidInput(_) | Error::NonFinite(_))
}

fn trace_json(trace: &ContinuationTrace) -> Json {
    let steps = trace
        .steps
        .iter()
        .map(|s| {
            Json::Obj(vec![
                ("z", Json::complex(s.z)),
                ("w", Json::complex(s.w)),
                ("r", Json::Num(s.r)),
                ("rho", Json::Num(s.rho)),
                ("detour", Json::Bool(s.detour)),
            ])
        })
        .collect();
    Json::Obj(vec![
        ("target", Json::complex(trace.target)),
        ("steps", Json::Arr(steps)),
        ("end", Json::Obj(vec![("z", Json::complex(trace.end.z)), ("w", Json::complex(trace.end.w))])),
        ("converged", Json::Bool(trace.converged)),
    ])
}

fn continuation_options(job: &JobSpec) -> ContinuationOptions {
    ContinuationOptions {
        tol: job.options.tol,
        max_steps: job.options.max_steps,
        rho_cap: job.options.rho_cap,
        ..ContinuationOptions::default()
    }
}

fn roots_report(roots: &[ComplexValue], residuals: &[f64], traces: Option<Vec<&ContinuationTrace>>) -> Report {
    let mut fields = vec![
        ("roots", Json::complex_list(roots)),
        ("residuals", Json::num_list(residuals)),
    ];
    if let Some(traces) = &traces {
        fields.push(("traces", Json::Arr(traces.iter().map(|t| trace_json(t)).collect())));
    }
    let mut text = String::new();
    for (z, r) in roots.iter().zip(residuals) {
        let _ = writeln!(text, "{}    residual {}", complex_text(*z), format_g17(*r));
    }
    if let Some(traces) = traces {
        for (i, t) in traces.iter().enumerate() {
            let _ = writeln!(text, "trace {i}: {} steps ({} on detour legs)", t.steps.len(), t.steps.iter().filter(|s| s.detour).count());
        }
    }
    Report {
        json: Json::Obj(fields),
        text,
    }
}

fn execute(job: &JobSpec) -> Result<Report, Error> {
    let o = &job.options;
    let poly = || Polynomial::new(job.coeffs.clone());
    match job.command {
        Command::Root => {
            let f = poly()?;
            let (z, trace) = continue_to_value(&f, o.start, o.target, &continuation_options(job))?;
            let residual = (f.eval(z) - o.target).norm();
            Ok(roots_report(&[z], &[residual], o.trace.then(|| vec![&trace])))
        }
        Command::AllRoots => {
            let f = poly()?;
            let (set, runs) = all_roots_traced(&f, &continuation_options(job))?;
            let traces = o.trace.then(|| runs.iter().map(|r| &r.trace).collect());
            Ok(roots_report(&set.roots, &set.residuals, traces))
        }
        Command::Preimage => {
            let f = poly()?;
            let cap = o.rho_cap.unwrap_or_else(|| default_rho_cap(o.start));
            let model = build_model(&f, o.start, cap)?;
            let s = solve_preimage(&model, o.target, o.tol, DEFAULT_MAX_ITER)?;
            Ok(Report {
                json: Json::Obj(vec![
                    ("z", Json::complex(s.z)),
                    ("residual", Json::Num(s.residual)),
                    ("iterations", Json::Int(s.iterations as i64)),
                    ("branch", Json::Str(s.branch.as_str().into())),
                ]),
                text: format!(
                    "z = {}\nresidual = {}\niterations = {}\nbranch = {}\n",
                    complex_text(s.z),
                    format_g17(s.residual),
                    s.iterations,
                    s.branch
                ),
            })
        }
        Command::Certify => {
            let f = poly()?;
            let cap = o.rho_cap.unwrap_or_else(|| default_rho_cap(o.start));
            let m = build_model(&f, o.start, cap)?;
            let mut fields = vec![
                ("z0", Json::complex(m.z0)),
                ("w0", Json::complex(m.w0)),
                ("rho", Json::Num(m.rho)),
                ("r", Json::Num(m.r)),
                ("alpha", Json::Num(m.alpha)),
                ("k", Json::Int(i64::from(m.k()))),
                ("q_bound", Json::Num(m.q_bound)),
            ];
            let mut text = format!(
                "z0 = {}\nw0 = {}\nk = {}\nrho = {}\nr = {}\nalpha = {}\nq_bound = {}\n",
                complex_text(m.z0),
                complex_text(m.w0),
                m.k(),
                format_g17(m.rho),
                format_g17(m.r),
                format_g17(m.alpha),
                format_g17(m.q_bound)
            );
            if o.samples > 0 {
                let audit = audit_certificate(&f, &m.certificate(), o.samples, o.tol, o.seed, Execution::Sequential)?;
                fields.push((
                    "audit",
                    Json::Obj(vec![
                        ("samples", Json::Int(audit.samples as i64)),
                        ("passed", Json::Bool(audit.passed())),
                        ("failures", Json::Int(audit.failures as i64)),
                        ("worst_residual", Json::Num(audit.worst_residual)),
                    ]),
                ));
                let _ = writeln!(
                    text,
                    "audit: {} of {} samples failed, worst residual {}",
                    audit.failures,
                    audit.samples,
                    format_g17(audit.worst_residual)
                );
            }
            Ok(Report {
                json: Json::Obj(fields),
                text,
            })
        }
        Command::DemoComposite => {
            let r = cosine_showcase(&continuation_options(job))?;
            Ok(Report {
                json: Json::Obj(vec![
                    ("s_star", Json::complex(r.s_star)),
                    ("t", Json::complex(r.t)),
                    ("u", Json::complex(r.u)),
                    ("z", Json::complex(r.z)),
                    ("residual", Json::Num(r.residual)),
                ]),
                text: format!(
                    "cos^7(z^2+z+i) - 3cos(z^2+z+i) + 1 = 0\n  s* = {}  (root of s^7 - 3s + 1)\n  t  = {}  ((t + 1/t)/2 = s*)\n  u  = {}  (cos u = s*)\n  z  = {}  (z^2 + z + i = u)\n  residual = {}\n",
                    complex_text(r.s_star),
                    complex_text(r.t),
                    complex_text(r.u),
                    complex_text(r.z),
                    format_g17(r.residual)
                ),
            })
        }
    }
}

/// Runs a parsed job. Exit 0 on success, 1 on solver failure, 2 on bad input.
pub fn run_job(job: &JobSpec) -> JobOutput {
    match execute(job) {
        Ok(report) => JobOutput {
            code: EXIT_OK,
            stdout: match job.options.output {
                OutputFormat::Json => report.json.render() + "\n",
                OutputFormat::Text => report.text,
            },
            stderr: String::new(),
        },
        Err(e) => {
            let code = if is_input_error(&e) { EXIT_USAGE } else { EXIT_SOLVER };
            let stdout = match job.options.output {
                OutputFormat::Json => {
                    Json::Obj(vec![
                        ("error", Json::Str(error_kind(&e).into())),
                        ("message", Json::Str(e.to_string())),
                    ])
                    .render()
                        + "\n"
                }
                OutputFormat::Text => String::new(),
            };
            JobOutput {
                code,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}
