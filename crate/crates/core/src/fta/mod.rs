//! Global solving by chaining certified local steps.
//!
//! [`continue_to_value`] walks the image point `f(z)` along a straight segment
//! toward the target, each hop staying inside the disk certified by the local
//! model at the current point. Roots come from continuing to zero and
//! deflating; [`composite_root`] extends this to `p(e^(αz)) + q(e^(−αz))`.

mod composite;
mod continuation;
mod roots;

pub use composite::{composite_root, cosine_showcase, cosine_showcase_value, CompositeSolution, CosineShowcase};
pub use continuation::{
    boundedness_monitor, continue_to_value, trace_radius, ContinuationOptions, ContinuationTrace,
    TracePoint, TraceStep, DETOUR_PROGRESS,
};
pub use roots::{all_roots, all_roots_batch, all_roots_traced, RootSet, RootRun};
