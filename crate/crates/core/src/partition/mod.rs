//! Partitioning procedures: gap balancing of a high-degree set, randomized
//! rounding with concentration certificates, hill climbing, extension of a
//! partial split, the dense-case routine, and the staged [`pipeline`] that
//! strings them together.

mod dense;
mod extend;
mod gap;
mod local;
pub mod pipeline;
mod rounding;

pub use dense::{dense_hypothesis, dense_partition, DenseHypothesis, DenseOutcome};
pub use extend::{extend_partition, ExtendConfig, Extension, ExtensionVerdict};
pub use gap::{gap, is_forward, minimize_gap, surplus, GapPartition};
pub use local::{best_of_restarts, local_improve, LocalObjective};
pub use pipeline::{proof_pipeline, DegreeThreshold, PipelineConfig, PipelineOutcome, PipelineState};
pub use rounding::{azuma_tail, random_bipartition, random_bipartition_with, TailCertificate};

use crate::error::{Error, Result};
use crate::ratio::{frac, Rational};

/// Main term `(d−1)·m / (2(2d−1))` of the judicious lower bound.
///
/// `d = 1` gives 0, matching the star-plus-edge family where no positive
/// constant is possible; `d = 0` is rejected.
pub fn target_bound(d: usize, m: usize) -> Result<Rational> {
    if d == 0 {
        return Err(Error::InvalidParameter("target bound needs d ≥ 1".into()));
    }
    let d = d as u64;
    Ok(frac((d - 1) * m as u64, 2 * (2 * d - 1)))
}
