use rand::Rng;
use serde::Serialize;

use crate::digraph::{Bipartition, Digraph, Side};
use crate::error::{Error, Result};
use crate::rng;

/// Puts every unfixed vertex on either side independently with probability ½.
/// Draws happen in vertex order, one per free vertex, from stream 0 of `seed`.
pub fn random_bipartition(d: &Digraph, fixed: &[Option<Side>], seed: u64) -> Result<Bipartition> {
    if fixed.len() != d.n() {
        return Err(Error::LabelCount { expected: d.n(), got: fixed.len() });
    }
    Ok(random_bipartition_with(fixed, &mut rng::stream(seed, 0)))
}

pub fn random_bipartition_with<R: Rng>(fixed: &[Option<Side>], rng: &mut R) -> Bipartition {
    let sides =
        fixed.iter().map(|f| f.unwrap_or_else(|| if rng.gen_bool(0.5) { Side::One } else { Side::Two })).collect();
    Bipartition::new(sides)
}

/// Bound `exp(−z²/(2Σc_i²))` on a one-sided deviation of `z` for a function
/// of independent coordinates with Lipschitz constants `c_i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailCertificate {
    pub z: f64,
    pub sum_sq: f64,
    pub bound: f64,
}

pub fn azuma_tail(z: f64, c: &[f64]) -> Result<TailCertificate> {
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::InvalidParameter(format!("deviation must be positive, got {z}")));
    }
    if c.iter().any(|&x| x.is_nan() || x < 0.0) {
        return Err(Error::InvalidParameter("Lipschitz constants must be nonnegative".into()));
    }
    let sum_sq: f64 = c.iter().map(|x| x * x).sum();
    if sum_sq <= 0.0 {
        return Err(Error::InvalidParameter("Σc_i² must be positive".into()));
    }
    Ok(TailCertificate { z, sum_sq, bound: (-z * z / (2.0 * sum_sq)).exp() })
}
