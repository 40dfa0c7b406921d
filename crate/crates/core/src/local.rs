//! Certified local inversion around a point.
//!
//! Near `z0` write `f(z0 + ξ) = w0 + ξ^k (a_k + h(ξ))`. Solving `f(z) = w` is
//! then the fixed-point problem `ξ = T(ξ) = g((w − w0) / (h(ξ) + a_k))` for a
//! k-th root branch `g`. [`build_model`] picks a disk radius `ρ` on which `h`
//! is small, and an image radius `r` for which `T` maps `B[0, ρ]` into itself
//! with Lipschitz constant at most `√2/2`. Every `w` with `|w − w0| < r`
//! therefore has a unique preimage of this form in `B[z0, ρ]`, found by
//! Banach iteration in [`solve_preimage`].

use std::f64::consts::{FRAC_PI_8, PI, SQRT_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::batch::{self, Execution};
use crate::branch::{arg_principal, kth_root_branch, Branch};
use crate::error::{Error, Result};
use crate::poly::{extract_tail, tail_majorant, Polynomial, TailSeries, DEFAULT_MULT_THRESHOLD};
use crate::ComplexValue;

pub const DEFAULT_MAX_ITER: usize = 200;

/// Relative width at which the `ρ` bisection stops.
const RHO_PRECISION: f64 = 1e-3;

/// Lipschitz constant implied by a derivative bound `a` on a convex set.
///
/// Splitting `T = u + iv` gives `|∇u|, |∇v| ≤ a`, hence the factor `√2`.
pub fn lipschitz_bound(a: f64) -> f64 {
    SQRT_2 * a
}

/// Default cap on `ρ`, scaled with the expansion point.
pub fn default_rho_cap(z0: ComplexValue) -> f64 {
    1.0 + z0.norm()
}

/// Largest `ρ ≤ rho_cap` (to 0.1% relative) with `sup|h| ≤ |a_k|/4` on `B[0, ρ]`.
///
/// That bound gives `|h + a_k| ≥ 3|a_k|/4 > |a_k|/2` and
/// `|Arg(a_k / (h + a_k))| ≤ arcsin(1/3) < π/8`.
pub fn choose_rho(t: &TailSeries, rho_cap: f64) -> Result<f64> {
    if !(rho_cap > 0.0 && rho_cap.is_finite()) {
        return Err(Error::InvalidInput(format!("rho cap must be positive, got {rho_cap}")));
    }
    let limit = t.a_k.norm() / 4.0;
    if t.extra_h >= limit {
        return Err(Error::InvalidInput(
            "truncation bound leaves no admissible disk radius".into(),
        ));
    }
    let fits = |rho: f64| tail_majorant(t, rho).h <= limit;
    if fits(rho_cap) {
        return Ok(rho_cap);
    }
    let (mut lo, mut hi) = (0.0, rho_cap);
    while hi - lo > RHO_PRECISION * hi {
        let mid = 0.5 * (lo + hi);
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// The certified local picture at `z0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalModel {
    /// The polynomial being inverted; residuals are always measured against it.
    pub f: Polynomial,
    pub z0: ComplexValue,
    pub w0: ComplexValue,
    pub tail: TailSeries,
    pub rho: f64,
    /// Majorant of `sup|h′|` on `B[0, ρ]`.
    pub hp: f64,
    pub alpha: f64,
    pub r: f64,
    /// Lipschitz bound of `T` on `B[0, ρ]`.
    pub q_bound: f64,
}

/// Claim that `B(w0, r) ⊆ f(B[z0, ρ])`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreimageCertificate {
    pub z0: ComplexValue,
    pub w0: ComplexValue,
    pub rho: f64,
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub xi: ComplexValue,
    pub z: ComplexValue,
    pub iterations: usize,
    /// `|f(z) − w|` against the model's polynomial.
    pub residual: f64,
    pub branch: Branch,
    /// A-posteriori Banach bound on `|ξ − ξ*|` from the last step.
    pub error_bound: f64,
}

pub fn build_model(f: &Polynomial, z0: ComplexValue, rho_cap: f64) -> Result<LocalModel> {
    build_model_with(f, z0, rho_cap, DEFAULT_MULT_THRESHOLD)
}

pub fn build_model_with(
    f: &Polynomial,
    z0: ComplexValue,
    rho_cap: f64,
    mult_threshold: f64,
) -> Result<LocalModel> {
    if !(z0.re.is_finite() && z0.im.is_finite()) {
        return Err(Error::NonFinite("expansion point"));
    }
    let shifted = f.taylor_shift(z0);
    let w0 = shifted.coeffs()[0];
    let tail = extract_tail(&shifted, mult_threshold)?;
    LocalModel::from_tail(f.clone(), z0, w0, tail, rho_cap)
}

impl LocalModel {
    /// Builds the radii from an already recentered tail.
    pub fn from_tail(
        f: Polynomial,
        z0: ComplexValue,
        w0: ComplexValue,
        tail: TailSeries,
        rho_cap: f64,
    ) -> Result<Self> {
        let rho = choose_rho(&tail, rho_cap)?;
        let hp = tail_majorant(&tail, rho).hp;
        let k = tail.k;
        let kf = f64::from(k);
        let abs_ak = tail.a_k.norm();
        // Differentiating T gives |h + a_k|^(1 + 1/k) in the denominator of
        // |T′|; the larger of that and the 3 − 1/k form bounds both readings.
        let base = 2.0 / abs_ak;
        let e = base.powf(3.0 - 1.0 / kf).max(base.powf(1.0 + 1.0 / kf));
        let alpha = e * (1.0 + hp) / kf;
        let r = (0.5 * abs_ak * rho.powi(k as i32)).min((0.5 / alpha).powi(k as i32));
        if r.is_nan() || r <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "certified radius underflowed at z0 = {z0} (k = {k}, |a_k| = {abs_ak:e})"
            )));
        }
        let q_bound = lipschitz_bound(alpha * r.powf(1.0 / kf));
        Ok(Self {
            f,
            z0,
            w0,
            tail,
            rho,
            hp,
            alpha,
            r,
            q_bound,
        })
    }

    pub fn k(&self) -> u32 {
        self.tail.k
    }

    pub fn a_k(&self) -> ComplexValue {
        self.tail.a_k
    }

    pub fn certificate(&self) -> PreimageCertificate {
        PreimageCertificate {
            z0: self.z0,
            w0: self.w0,
            rho: self.rho,
            r: self.r,
        }
    }

    /// Derivative bound `α · r^(1/k)` on `T` over `B[0, ρ]`.
    pub fn derivative_bound(&self) -> f64 {
        self.alpha * self.r.powf(1.0 / f64::from(self.k()))
    }

    /// Bound on `|T(ξ)|` over the disk: `|2r / a_k|^(1/k)`.
    pub fn image_bound(&self) -> f64 {
        (2.0 * self.r / self.a_k().norm()).powf(1.0 / f64::from(self.k()))
    }

    /// Same model claiming a different image radius. Used to audit certificates
    /// that did not come from `build_model`.
    fn with_claimed_radius(&self, r: f64) -> Self {
        let mut claimed = self.clone();
        claimed.r = r;
        claimed.q_bound = lipschitz_bound(self.alpha * r.powf(1.0 / f64::from(self.k())));
        claimed
    }
}

/// `G1` when `Re((w − w0)/a_k) < 0`, otherwise `G2`.
pub fn select_branch(model: &LocalModel, w: ComplexValue) -> Branch {
    if ((w - model.w0) / model.a_k()).re < 0.0 {
        Branch::G1
    } else {
        Branch::G2
    }
}

/// One application of `T(ξ) = g_b((w − w0) / (h(ξ) + a_k))`.
pub fn apply_t(
    model: &LocalModel,
    w: ComplexValue,
    branch: Branch,
    xi: ComplexValue,
) -> Result<ComplexValue> {
    let (h, _) = model.tail.eval_h(xi);
    let arg = (w - model.w0) / (h + model.a_k());
    if arg.re == 0.0 && arg.im == 0.0 {
        return Ok(arg);
    }
    let angle = arg_principal(arg)?;
    let on_cut = match branch {
        Branch::G1 => angle.abs() < FRAC_PI_8,
        Branch::G2 => angle.abs() > PI - FRAC_PI_8,
    };
    if on_cut {
        return Err(Error::BranchViolation { branch, angle });
    }
    kth_root_branch(arg, model.k(), branch)
}

/// Iterates `ξ_{n+1} = T(ξ_n)` from `ξ_0 = 0`, yielding `ξ_1, ξ_2, …`.
pub struct FixedPointIter<'a> {
    model: &'a LocalModel,
    w: ComplexValue,
    branch: Branch,
    xi: ComplexValue,
}

impl<'a> FixedPointIter<'a> {
    pub fn new(model: &'a LocalModel, w: ComplexValue) -> Self {
        Self::starting_at(model, w, ComplexValue::new(0.0, 0.0))
    }

    pub fn starting_at(model: &'a LocalModel, w: ComplexValue, xi: ComplexValue) -> Self {
        Self {
            model,
            w,
            branch: select_branch(model, w),
            xi,
        }
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }
}

impl Iterator for FixedPointIter<'_> {
    type Item = Result<ComplexValue>;

    fn next(&mut self) -> Option<Self::Item> {
        match apply_t(self.model, self.w, self.branch, self.xi) {
            Ok(next) => {
                self.xi = next;
                Some(Ok(next))
            }
            Err(e) => Some(Err(e)),
        }
    }
}

/// Solves `f(z) = w` for `|w − w0| < r` by Banach iteration on `T`.
///
/// Succeeds once `|f(z0 + ξ) − w| ≤ tol`. The solution is the unique fixed
/// point of `T` in `B[0, ρ]`.
pub fn solve_preimage(
    model: &LocalModel,
    w: ComplexValue,
    tol: f64,
    max_iter: usize,
) -> Result<SolveReport> {
    solve_from(model, w, ComplexValue::new(0.0, 0.0), tol, max_iter)
}

/// [`solve_preimage`] from an arbitrary start `ξ_0 ∈ B[0, ρ]`.
pub fn solve_from(
    model: &LocalModel,
    w: ComplexValue,
    start: ComplexValue,
    tol: f64,
    max_iter: usize,
) -> Result<SolveReport> {
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::NonFinite("target value"));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let distance = (w - model.w0).norm();
    if distance >= model.r {
        return Err(Error::OutsideDisk {
            distance,
            radius: model.r,
        });
    }
    let residual_at = |xi: ComplexValue| (model.f.eval(model.z0 + xi) - w).norm();
    let mut iter = FixedPointIter::starting_at(model, w, start);
    let branch = iter.branch();
    let report = |xi: ComplexValue, iterations, residual, error_bound| SolveReport {
        xi,
        z: model.z0 + xi,
        iterations,
        residual,
        branch,
        error_bound,
    };
    if distance == 0.0 && start == ComplexValue::new(0.0, 0.0) {
        return Ok(report(start, 0, residual_at(start), 0.0));
    }

    let q = model.q_bound;
    let mut prev = start;
    let mut residual = f64::INFINITY;
    for n in 1..=max_iter {
        let xi = iter.next().expect("fixed-point iterator is unbounded")?;
        let step = (xi - prev).norm();
        let error_bound = if q < 1.0 { step * q / (1.0 - q) } else { f64::INFINITY };
        residual = residual_at(xi);
        if xi.norm() > model.rho * (1.0 + 1e-12) {
            return Err(Error::LeftDisk {
                modulus: xi.norm(),
                rho: model.rho,
            });
        }
        if residual <= tol {
            return Ok(report(xi, n, residual, error_bound));
        }
        if step == 0.0 {
            // stagnated above tolerance; more iterations cannot help
            return Err(Error::NoConvergence {
                iterations: n,
                residual,
                tol,
            });
        }
        prev = xi;
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual,
        tol,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub samples: usize,
    pub failures: usize,
    pub worst_residual: f64,
    /// Largest `|ξ*| / ρ` over successful solves.
    pub worst_disk_ratio: f64,
    pub first_error: Option<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Checks a certificate by solving at `samples` points drawn uniformly from
/// `B(w0, 0.999·r)`.
///
/// Passes iff every solve succeeds with residual `≤ tol` and `|ξ*| ≤ ρ`.
pub fn audit_certificate(
    f: &Polynomial,
    cert: &PreimageCertificate,
    samples: usize,
    tol: f64,
    seed: u64,
    exec: Execution,
) -> Result<AuditReport> {
    if samples == 0 {
        return Err(Error::InvalidInput("audit needs at least one sample".into()));
    }
    let model = build_model(f, cert.z0, cert.rho)?.with_claimed_radius(cert.r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let targets: Vec<ComplexValue> = (0..samples)
        .map(|_| {
            let radius = 0.999 * cert.r * rng.random::<f64>().sqrt();
            cert.w0 + ComplexValue::from_polar(radius, rng.random_range(0.0..TAU))
        })
        .collect();
    let outcomes = batch::map(exec, &targets, |&w| {
        solve_preimage(&model, w, tol, DEFAULT_MAX_ITER)
    });

    let mut report = AuditReport {
        samples,
        failures: 0,
        worst_residual: 0.0,
        worst_disk_ratio: 0.0,
        first_error: None,
    };
    for outcome in outcomes {
        match outcome {
            Ok(solve) => {
                report.worst_residual = report.worst_residual.max(solve.residual);
                let ratio = solve.xi.norm() / cert.rho;
                report.worst_disk_ratio = report.worst_disk_ratio.max(ratio);
                if solve.residual > tol || ratio > 1.0 {
                    report.failures += 1;
                }
            }
            Err(e) => {
                report.failures += 1;
                report.first_error.get_or_insert_with(|| e.to_string());
            }
        }
    }
    Ok(report)
}
