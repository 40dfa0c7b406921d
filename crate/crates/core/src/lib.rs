//! Certified complex polynomial root finding.
//!
//! The local layer ([`local`]) inverts a polynomial near a point: it recenters
//! `f` at `z0`, bounds the higher-order tail on a disk of radius `ρ`, and
//! certifies an image radius `r` such that every `w` with `|w − f(z0)| < r`
//! has a preimage within `ρ` of `z0`, found by a contracting fixed-point
//! iteration. Critical points (`f′(z0) = 0`) need no special handling.
//!
//! The global layer ([`fta`]) chains those certified steps to reach any
//! target value, collects all roots by deflation, and solves composite
//! equations of the form `p(e^(αz)) + q(e^(−αz)) = w`.
//!
//! Coefficients are always in ascending order: `coeffs[j]` multiplies `z^j`.

pub mod batch;
pub mod branch;
mod error;
pub mod fta;
pub mod local;
pub mod poly;

pub use num_complex::Complex64 as ComplexValue;

pub use batch::Execution;
pub use branch::{arg_lower, arg_principal, kth_root_branch, pow_int, Branch};
pub use error::{Error, Result};
pub use fta::{
    all_roots, boundedness_monitor, composite_root, continue_to_value, ContinuationOptions,
    ContinuationTrace, RootSet,
};
pub use local::{
    apply_t, audit_certificate, build_model, choose_rho, lipschitz_bound, select_branch,
    solve_preimage, LocalModel, PreimageCertificate, SolveReport,
};
pub use poly::{extract_tail, tail_majorant, Polynomial, TailSeries};
