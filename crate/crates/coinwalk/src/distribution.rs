//! Position probability distributions with parity-aware support.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

const SUM_TOL: f64 = 1e-9;
const NEG_TOL: f64 = -1e-9;

/// A position -> probability map at a fixed step count.
///
/// Sites whose probability is exactly zero (the off-parity half of the
/// lattice) are not stored, so iteration yields the true support in
/// ascending position order.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: BTreeMap<i64, f64>,
    t: u32,
}

impl Distribution {
    /// Validate and build from (position, probability) pairs. Entries with
    /// probability exactly zero are dropped; probabilities below -1e-9 or a
    /// total off from 1 by more than 1e-9 are rejected.
    pub fn from_probs(pairs: impl IntoIterator<Item = (i64, f64)>, t: u32) -> Result<Distribution> {
        let mut probs = BTreeMap::new();
        let mut sum = 0.0;
        for (x, p) in pairs {
            if p < NEG_TOL {
                return Err(Error::Invariant(format!(
                    "negative probability {p:.3e} at position {x}"
                )));
            }
            if p > 1.0 + SUM_TOL {
                return Err(Error::Invariant(format!(
                    "probability {p} at position {x} exceeds 1"
                )));
            }
            sum += p;
            if p > 0.0 && probs.insert(x, p).is_some() {
                return Err(Error::Invariant(format!("duplicate position {x}")));
            }
        }
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::Normalization(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(Distribution { probs, t })
    }

    /// The delta distribution at x0 (step count 0).
    pub fn delta(x0: i64) -> Distribution {
        Distribution {
            probs: BTreeMap::from([(x0, 1.0)]),
            t: 0,
        }
    }

    pub fn prob(&self, x: i64) -> f64 {
        self.probs.get(&x).copied().unwrap_or(0.0)
    }

    /// Support in ascending position order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.probs.iter().map(|(&x, &p)| (x, p))
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }

    /// Smallest and largest position carrying probability.
    pub fn support_bounds(&self) -> Option<(i64, i64)> {
        match (self.probs.keys().next(), self.probs.keys().next_back()) {
            (Some(&lo), Some(&hi)) => Some((lo, hi)),
            _ => None,
        }
    }

    /// The same distribution translated by dx.
    pub fn shifted(&self, dx: i64) -> Distribution {
        Distribution {
            probs: self.probs.iter().map(|(&x, &p)| (x + dx, p)).collect(),
            t: self.t,
        }
    }
}
