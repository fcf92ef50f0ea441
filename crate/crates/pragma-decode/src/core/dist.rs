//! Normalized probability vectors over an indexed support, and the belief
//! states over world items built from them.

use serde::{Deserialize, Serialize};

use crate::audit;
use crate::error::{Error, Result};

/// A normalized probability vector over an indexed support (symbols or items).
///
/// Invariants: every entry is nonnegative and the entries sum to one within
/// 1e-9. Construction from weights normalizes; an all-zero weight vector is a
/// construction error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    mass: Vec<f64>,
}

impl Distribution {
    /// Normalize nonnegative weights into a distribution.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        Self::from_weights_floored(weights, 0.0)
    }

    /// Floor each weight at `floor`, then normalize.
    ///
    /// A positive floor guarantees the result is well defined even when every
    /// raw weight is zero; with `floor == 0.0` this is plain normalization.
    pub fn from_weights_floored(weights: &[f64], floor: f64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptySupport);
        }
        let mut mass = Vec::with_capacity(weights.len());
        let mut sum = 0.0;
        for &w in weights {
            if w < 0.0 || !w.is_finite() {
                return Err(Error::InvalidWeight(w));
            }
            let w = w.max(floor);
            sum += w;
            mass.push(w);
        }
        if sum <= 0.0 {
            return Err(Error::AllZeroWeights);
        }
        for m in &mut mass {
            *m /= sum;
        }
        audit::record(&mass);
        Ok(Distribution { mass })
    }

    /// Uniform distribution over `n` outcomes.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySupport);
        }
        let mass = vec![1.0 / n as f64; n];
        audit::record(&mass);
        Ok(Distribution { mass })
    }

    /// All mass on a single outcome.
    pub fn point_mass(n: usize, index: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySupport);
        }
        if index >= n {
            return Err(Error::InvalidWeight(index as f64));
        }
        let mut mass = vec![0.0; n];
        mass[index] = 1.0;
        audit::record(&mass);
        Ok(Distribution { mass })
    }

    /// Normalize log-weights stably: subtract the maximum before
    /// exponentiating, then normalize.
    pub fn from_log_weights(log_weights: &[f64]) -> Result<Self> {
        if log_weights.is_empty() {
            return Err(Error::EmptySupport);
        }
        let max = log_weights.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if max == f64::NEG_INFINITY {
            return Err(Error::AllZeroWeights);
        }
        let weights: Vec<f64> = log_weights.iter().map(|&l| (l - max).exp()).collect();
        Self::from_weights(&weights)
    }

    pub fn support_size(&self) -> usize {
        self.mass.len()
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn get(&self, index: usize) -> f64 {
        self.mass[index]
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// Index of the largest entry; ties break toward the lowest index.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &m) in self.mass.iter().enumerate().skip(1) {
            if m > self.mass[best] {
                best = i;
            }
        }
        best
    }

    /// Largest absolute elementwise difference against another distribution.
    pub fn max_abs_diff(&self, other: &Distribution) -> f64 {
        assert_eq!(self.len(), other.len(), "support sizes differ");
        self.mass
            .iter()
            .zip(other.mass.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Normalize nonnegative weights into a [`Distribution`].
///
/// Errors with [`Error::AllZeroWeights`] when every entry is zero.
pub fn normalize(weights: &[f64]) -> Result<Distribution> {
    Distribution::from_weights(weights)
}

/// Renormalized pointwise product `p_i * q_i^alpha`.
///
/// `q` is a plain nonnegative weight slice (it is typically a cross-section
/// of listener posteriors, which does not itself sum to one). With
/// `alpha == 0` the result is `p` exactly.
pub fn pointwise_product_pow(p: &Distribution, q: &[f64], alpha: f64) -> Result<Distribution> {
    if p.len() != q.len() {
        return Err(Error::SupportMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    if alpha == 0.0 {
        let out = p.clone();
        audit::record(out.mass());
        return Ok(out);
    }
    let mut weights = Vec::with_capacity(p.len());
    for (&pi, &qi) in p.mass().iter().zip(q.iter()) {
        if qi < 0.0 || !qi.is_finite() {
            return Err(Error::InvalidWeight(qi));
        }
        weights.push(pi * qi.powf(alpha));
    }
    Distribution::from_weights(&weights)
}

/// A distribution over the items of a world: the listener's current belief
/// about which item is the referent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BeliefState {
    dist: Distribution,
}

impl BeliefState {
    pub fn new(dist: Distribution) -> Self {
        BeliefState { dist }
    }

    /// Uniform belief over `n` items.
    pub fn uniform(n: usize) -> Result<Self> {
        Ok(BeliefState {
            dist: Distribution::uniform(n)?,
        })
    }

    pub fn dist(&self) -> &Distribution {
        &self.dist
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn get(&self, index: usize) -> f64 {
        self.dist.get(index)
    }

    pub fn into_dist(self) -> Distribution {
        self.dist
    }
}
