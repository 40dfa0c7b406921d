use crate::batch::{self, Execution};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ComplexValue;

use super::continuation::{boundedness_monitor, continue_to_value, ContinuationOptions, ContinuationTrace};

#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<ComplexValue>,
    /// `|f(root)|` against the input polynomial, not a deflated one.
    pub residuals: Vec<f64>,
    pub degree: usize,
}

/// One continuation run made while collecting roots.
#[derive(Debug, Clone)]
pub struct RootRun {
    /// Polynomial the run was made on (deflated during the search phase).
    pub poly: Polynomial,
    pub trace: ContinuationTrace,
    /// Whether this was the polishing pass against the input polynomial.
    pub polish: bool,
}

pub fn all_roots(f: &Polynomial, opts: &ContinuationOptions) -> Result<RootSet> {
    all_roots_traced(f, opts).map(|(set, _)| set)
}

/// Finds every root by continuation to zero from the origin and deflation,
/// then re-polishes each estimate against `f` itself.
///
/// Every trace passes through [`boundedness_monitor`].
pub fn all_roots_traced(
    f: &Polynomial,
    opts: &ContinuationOptions,
) -> Result<(RootSet, Vec<RootRun>)> {
    let degree = f.degree();
    if degree == 0 {
        return Err(Error::InvalidInput("a constant polynomial has no roots to find".into()));
    }
    let origin = ComplexValue::new(0.0, 0.0);
    let mut runs = Vec::with_capacity(2 * degree);
    let mut estimates = Vec::with_capacity(degree);
    let mut current = f.clone();
    while current.degree() > 0 {
        let (root, trace) = continue_to_value(&current, origin, origin, opts)?;
        boundedness_monitor(&trace, &current)?;
        let next = current.deflate(root);
        runs.push(RootRun {
            poly: current,
            trace,
            polish: false,
        });
        estimates.push(root);
        current = next;
    }

    let mut roots = Vec::with_capacity(degree);
    let mut residuals = Vec::with_capacity(degree);
    for estimate in estimates {
        let (root, trace) = continue_to_value(f, estimate, origin, opts)?;
        boundedness_monitor(&trace, f)?;
        runs.push(RootRun {
            poly: f.clone(),
            trace,
            polish: true,
        });
        roots.push(root);
        residuals.push(f.eval(root).norm());
    }
    Ok((
        RootSet {
            roots,
            residuals,
            degree,
        },
        runs,
    ))
}

/// [`all_roots`] over many independent polynomials.
pub fn all_roots_batch(
    polys: &[Polynomial],
    opts: &ContinuationOptions,
    exec: Execution,
) -> Vec<Result<RootSet>> {
    batch::map(exec, polys, |f| all_roots(f, opts))
}
