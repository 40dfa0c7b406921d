use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ComplexValue;

use super::continuation::{continue_to_value, ContinuationOptions};
use super::roots::all_roots;

/// Roots with modulus at or below this are treated as the excluded `t = 0`.
const MIN_ROOT_MODULUS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositeSolution {
    /// Nonzero solution of `p(t) + q(1/t) = target`.
    pub t: ComplexValue,
    /// Principal-log preimage `z = log(t) / α`.
    pub z: ComplexValue,
    /// `|p(e^(αz)) + q(e^(−αz)) − target|`.
    pub residual: f64,
}

/// `t^deg(q) · (p(t) + q(1/t) − target)`.
fn cleared(p: &Polynomial, q: &Polynomial, target: ComplexValue) -> Result<Polynomial> {
    let (np, nq) = (p.degree(), q.degree());
    let mut coeffs = vec![ComplexValue::new(0.0, 0.0); np + nq + 1];
    for (j, &a) in p.coeffs().iter().enumerate() {
        coeffs[j + nq] += a;
    }
    coeffs[nq] -= target;
    for (j, &b) in q.coeffs().iter().enumerate() {
        coeffs[nq - j] += b;
    }
    Polynomial::new(coeffs)
}

/// Solves `p(e^(αz)) + q(e^(−αz)) = target` for non-constant `p`, `q`.
///
/// Substituting `t = e^(αz)` reduces this to a polynomial in `t` whose
/// constant term is the leading coefficient of `q`, so no root is zero and
/// the principal logarithm recovers `z`.
pub fn composite_root(
    p: &Polynomial,
    q: &Polynomial,
    alpha: ComplexValue,
    target: ComplexValue,
    opts: &ContinuationOptions,
) -> Result<CompositeSolution> {
    if p.is_constant() || q.is_constant() {
        return Err(Error::InvalidInput("p and q must both be non-constant".into()));
    }
    if alpha == ComplexValue::new(0.0, 0.0) {
        return Err(Error::InvalidInput("exponent alpha must be nonzero".into()));
    }
    let composite = |z: ComplexValue| {
        let t = (alpha * z).exp();
        (p.eval(t) + q.eval(t.inv()) - target).norm()
    };
    let roots = all_roots(&cleared(p, q, target)?, opts)?;
    let best = roots
        .roots
        .iter()
        .filter(|t| t.norm() > MIN_ROOT_MODULUS)
        .map(|&t| {
            let z = t.ln() / alpha;
            CompositeSolution {
                t,
                z,
                residual: composite(z),
            }
        })
        .min_by(|a, b| a.residual.total_cmp(&b.residual))
        .ok_or(Error::DegenerateRoot)?;
    if best.residual > opts.tol {
        return Err(Error::ResidualTooLarge {
            residual: best.residual,
            tol: opts.tol,
        });
    }
    Ok(best)
}

/// Staged solve of `cos⁷(z² + z + i) − 3cos(z² + z + i) + 1 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosineShowcase {
    /// Root of `s⁷ − 3s + 1` reached from `s = 0`.
    pub s_star: ComplexValue,
    /// `t = e^(iu)` with `(t + 1/t)/2 = s*`.
    pub t: ComplexValue,
    /// `u` with `cos(u) = s*`.
    pub u: ComplexValue,
    /// `z` with `z² + z + i = u`.
    pub z: ComplexValue,
    /// Direct evaluation of the original expression at `z`.
    pub residual: f64,
}

pub fn cosine_showcase_value(z: ComplexValue) -> ComplexValue {
    let c = (z * z + z + ComplexValue::i()).cos();
    c.powu(7) - 3.0 * c + 1.0
}

pub fn cosine_showcase(opts: &ContinuationOptions) -> Result<CosineShowcase> {
    let zero = ComplexValue::new(0.0, 0.0);
    let outer = Polynomial::from_real(&[1.0, -3.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0])?;
    let (s_star, _) = continue_to_value(&outer, zero, zero, opts)?;

    let half = Polynomial::from_real(&[0.0, 0.5])?;
    let cos_step = composite_root(&half, &half, ComplexValue::i(), s_star, opts)?;
    let u = cos_step.z;

    let inner = Polynomial::new(vec![ComplexValue::i() - u, ComplexValue::new(1.0, 0.0), ComplexValue::new(1.0, 0.0)])?;
    let (z, _) = continue_to_value(&inner, zero, zero, opts)?;
    Ok(CosineShowcase {
        s_star,
        t: cos_step.t,
        u,
        z,
        residual: cosine_showcase_value(z).norm(),
    })
}
