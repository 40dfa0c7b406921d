//! Argument conventions and the two k-th root branches.
//!
//! `G1` measures angles in `[0, 2π)` and is discontinuous across the positive
//! real axis; `G2` measures them in `[-π, π)` and is discontinuous across the
//! negative real axis. Both are right inverses of `ξ ↦ ξ^k`, never left
//! inverses.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::ComplexValue;

/// Which right inverse of `ξ ↦ ξ^k` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Angle taken in `[0, 2π)`; cut along the positive real axis.
    G1,
    /// Angle taken in `[-π, π)`; cut along the negative real axis.
    G2,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::G1 => "G1",
            Branch::G2 => "G2",
        }
    }

    /// Angle of `xi` in this branch's convention.
    pub fn angle(self, xi: ComplexValue) -> Result<f64> {
        match self {
            Branch::G1 => arg_lower(xi),
            Branch::G2 => arg_principal(xi),
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

fn check_finite(xi: ComplexValue) -> Result<()> {
    if xi.re.is_finite() && xi.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite("complex argument"))
    }
}

/// Largest double strictly below 2π.
const TAU_BELOW: f64 = 6.283_185_307_179_585;

/// Angle of `xi` in `[0, 2π)`.
pub fn arg_lower(xi: ComplexValue) -> Result<f64> {
    check_finite(xi)?;
    if xi.re == 0.0 && xi.im == 0.0 {
        return Err(Error::ZeroArgument);
    }
    let theta = xi.im.atan2(xi.re);
    if theta < 0.0 {
        // a tiny negative angle rounds up to exactly 2π otherwise
        Ok((theta + TAU).min(TAU_BELOW))
    } else {
        Ok(theta + 0.0)
    }
}

/// Angle of `xi` in `[-π, π)`; the negative real axis maps to `-π`.
pub fn arg_principal(xi: ComplexValue) -> Result<f64> {
    check_finite(xi)?;
    if xi.re == 0.0 && xi.im == 0.0 {
        return Err(Error::ZeroArgument);
    }
    let theta = xi.im.atan2(xi.re);
    if theta >= PI {
        Ok(-PI)
    } else {
        Ok(theta)
    }
}

/// `|ξ|^(1/k) · e^(iθ/k)` with `θ` from the branch's argument convention.
///
/// Zero maps to zero (continuous extension).
pub fn kth_root_branch(xi: ComplexValue, k: u32, branch: Branch) -> Result<ComplexValue> {
    if k == 0 {
        return Err(Error::InvalidInput("root index k must be at least 1".into()));
    }
    check_finite(xi)?;
    if xi.re == 0.0 && xi.im == 0.0 {
        return Ok(ComplexValue::new(0.0, 0.0));
    }
    let theta = branch.angle(xi)?;
    if k == 1 {
        return Ok(xi);
    }
    let modulus = (xi.norm().ln() / f64::from(k)).exp();
    Ok(ComplexValue::from_polar(modulus, theta / f64::from(k)))
}

/// `ξ^k` by repeated squaring.
pub fn pow_int(xi: ComplexValue, k: u32) -> ComplexValue {
    let mut base = xi;
    let mut exp = k;
    let mut acc = ComplexValue::new(1.0, 0.0);
    if exp == 0 {
        return acc;
    }
    // skip the leading multiply by one so k = 1 is exact
    while exp & 1 == 0 {
        base = base * base;
        exp >>= 1;
    }
    acc = base;
    exp >>= 1;
    while exp > 0 {
        base = base * base;
        if exp & 1 == 1 {
            acc *= base;
        }
        exp >>= 1;
    }
    acc
}
