use log::{debug, trace};

use crate::error::{Error, Result};
use crate::local::{build_model, default_rho_cap, solve_preimage, DEFAULT_MAX_ITER};
use crate::poly::Polynomial;
use crate::ComplexValue;

/// A step shorter than this fraction of the remaining distance counts as a stall.
const STALL_RATIO: f64 = 1e-6;

/// Image-plane angle between a detour leg and the direct path is at most
/// `atan(1/2)`; along it the distance to the target shrinks by at least
/// `cos(2·atan(1/2)) = 0.6` of each stride.
pub const DETOUR_PROGRESS: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuationOptions {
    /// Final residual tolerance, also used for every intermediate solve.
    pub tol: f64,
    pub max_steps: usize,
    /// Fraction of the certified radius taken per step.
    pub sigma: f64,
    /// Cap on the local disk radius; `None` uses `1 + |z|` at each point.
    pub rho_cap: Option<f64>,
    pub max_iter: usize,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_steps: 10_000,
            sigma: 0.9,
            rho_cap: None,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

impl ContinuationOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidInput(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidInput("max_steps must be at least 1".into()));
        }
        if !(self.sigma > 0.0 && self.sigma < 1.0) {
            return Err(Error::InvalidInput(format!("step factor must lie in (0, 1), got {}", self.sigma)));
        }
        if let Some(cap) = self.rho_cap {
            if !(cap > 0.0 && cap.is_finite()) {
                return Err(Error::InvalidInput(format!("rho cap must be positive, got {cap}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub z: ComplexValue,
    pub w: ComplexValue,
}

/// A point where a local model was built, with its radii.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceStep {
    pub z: ComplexValue,
    pub w: ComplexValue,
    pub r: f64,
    pub rho: f64,
    /// Image distance aimed for from `w`; at most `σ·r`.
    pub advance: f64,
    /// Whether this step aimed at a detour waypoint instead of the target.
    pub detour: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuationTrace {
    pub steps: Vec<TraceStep>,
    /// Last point reached.
    pub end: TracePoint,
    pub target: ComplexValue,
    pub converged: bool,
}

impl ContinuationTrace {
    /// Every visited `(z, f(z))`, ending with [`ContinuationTrace::end`].
    pub fn points(&self) -> impl Iterator<Item = TracePoint> + '_ {
        self.steps
            .iter()
            .map(|s| TracePoint { z: s.z, w: s.w })
            .chain(std::iter::once(self.end))
    }

    pub fn start(&self) -> TracePoint {
        self.points().next().expect("trace always has an end point")
    }
}

/// Moves `z` until `|f(z) − target| ≤ tol`.
///
/// At each point the local model certifies a radius `r`. If the target lies
/// within `σ·r` it is solved for directly; otherwise the image point advances
/// `σ·r` toward it.
pub fn continue_to_value(
    f: &Polynomial,
    z_start: ComplexValue,
    target: ComplexValue,
    opts: &ContinuationOptions,
) -> Result<(ComplexValue, ContinuationTrace)> {
    opts.validate()?;
    if f.is_constant() {
        return Err(Error::LocallyConstant);
    }
    for (v, what) in [(z_start, "start point"), (target, "target value")] {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite(what));
        }
    }

    let mut steps = Vec::new();
    let mut z = z_start;
    let mut w = f.eval(z);
    let mut waypoint: Option<ComplexValue> = None;
    let mut detours = 0usize;
    let mut last_stride = f64::INFINITY;
    for _ in 0..opts.max_steps {
        let delta = target - w;
        let gap = delta.norm();
        if gap <= opts.tol {
            debug!("reached target after {} steps ({detours} detours)", steps.len());
            return Ok((z, finished(steps, z, w, target, true)));
        }
        let model = build_model(f, z, opts.rho_cap.unwrap_or_else(|| default_rho_cap(z)))?;
        let stride = opts.sigma * model.r;

        // The straight path is heading into a critical value: radii shrink
        // geometrically without ever reaching it. Re-route through a point off
        // the segment so the remaining path is generic.
        let leg_gap = waypoint.map_or(gap, |m| (m - w).norm());
        let floor = 64.0 * f64::EPSILON * (1.0 + w.norm());
        let shrinking = stride < last_stride;
        last_stride = stride;
        if (shrinking && stride < STALL_RATIO * leg_gap) || stride < floor {
            let side = if detours.is_multiple_of(2) { 1.0 } else { -1.0 };
            waypoint = Some(w + delta * ComplexValue::new(0.5, 0.25 * side));
            detours += 1;
            debug!("detour {detours} at z = {z}: r = {:e}, gap = {gap:e}", model.r);
        }

        let (aim, on_detour) = match waypoint {
            Some(m) => {
                let to_m = m - w;
                let d = to_m.norm();
                if d < stride {
                    waypoint = None;
                    (m, true)
                } else {
                    (w + to_m * (stride / d), true)
                }
            }
            None if gap < stride => (target, false),
            None => (w + delta * (stride / gap), false),
        };
        steps.push(TraceStep {
            z,
            w,
            r: model.r,
            rho: model.rho,
            advance: (aim - w).norm(),
            detour: on_detour,
        });
        trace!("z = {z}, k = {}, r = {:e}, gap = {gap:e}", model.k(), model.r);
        let solved = solve_preimage(&model, aim, opts.tol, opts.max_iter)?;
        z = solved.z;
        w = f.eval(z);
    }
    let trace = finished(steps, z, w, target, false);
    if (target - w).norm() <= opts.tol {
        return Ok((z, ContinuationTrace { converged: true, ..trace }));
    }
    Err(Error::StepLimit {
        steps: opts.max_steps,
        trace: Box::new(trace),
    })
}

fn finished(
    steps: Vec<TraceStep>,
    z: ComplexValue,
    w: ComplexValue,
    target: ComplexValue,
    converged: bool,
) -> ContinuationTrace {
    ContinuationTrace {
        steps,
        end: TracePoint { z, w },
        target,
        converged,
    }
}

/// Radius that every point of a continuation trace must stay within.
///
/// `1 + (max_{j<m}|a_j| + |target| + |f(z_start) − a_0|) / |a_m|`. Points on
/// the image path solve `f(z) = w` with `|a_0 − w|` bounded by the numerator,
/// so this is a Cauchy radius for each of them. With `z_start = 0` the last
/// term vanishes.
pub fn trace_radius(f: &Polynomial, target: ComplexValue, start_value: ComplexValue) -> f64 {
    let m = f.degree();
    let coeffs = f.coeffs();
    let lower = coeffs[..m].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let drift = (start_value - coeffs[0]).norm();
    1.0 + (lower + target.norm() + drift) / f.leading().norm()
}

/// Confirms the trace stays bounded and returns the bound used.
pub fn boundedness_monitor(trace: &ContinuationTrace, f: &Polynomial) -> Result<f64> {
    if f.is_constant() {
        return Err(Error::LocallyConstant);
    }
    let bound = trace_radius(f, trace.target, trace.start().w);
    for (index, p) in trace.points().enumerate() {
        let modulus = p.z.norm();
        if modulus > bound {
            return Err(Error::BoundViolation {
                index,
                modulus,
                bound,
            });
        }
    }
    Ok(bound)
}
