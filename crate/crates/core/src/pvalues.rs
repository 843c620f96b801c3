//! Raw p-values with a deterministic ordering.

use crate::error::{Error, Result};

/// A vector of raw p-values together with its ordering permutation.
///
/// Hypotheses are addressed by their 0-based input position. Ranks are
/// 1-based: `ordered(1)` is the smallest p-value. Ties are broken by
/// ascending input position, so the ordering is a total order and every
/// procedure built on it is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct PValues {
    values: Vec<f64>,
    /// `order[r]` is the hypothesis holding rank `r + 1`.
    order: Vec<usize>,
    /// `rank[h]` is the 1-based rank of hypothesis `h`.
    rank: Vec<usize>,
}

impl PValues {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(pos) = values
            .iter()
            .position(|p| !p.is_finite() || !(0.0..=1.0).contains(p))
        {
            return Err(Error::OutOfRange(pos + 1));
        }
        let mut order: Vec<usize> = (0..values.len()).collect();
        // Stable sort keeps equal values in input order. -0.0 and 0.0 compare equal.
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite"));
        let mut rank = vec![0; values.len()];
        for (r, &h) in order.iter().enumerate() {
            rank[h] = r + 1;
        }
        Ok(Self {
            values,
            order,
            rank,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The p-values in input order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Hypothesis indices sorted from most to least significant.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// The `i`-th smallest p-value, `1 <= i <= n`.
    pub fn ordered(&self, i: usize) -> f64 {
        self.values[self.order[i - 1]]
    }

    /// The hypothesis holding rank `i`.
    pub fn hypothesis_at(&self, i: usize) -> usize {
        self.order[i - 1]
    }

    /// 1-based rank of hypothesis `h`.
    pub fn rank_of(&self, h: usize) -> usize {
        self.rank[h]
    }

    /// The p-values sorted ascending.
    pub fn sorted(&self) -> Vec<f64> {
        self.order.iter().map(|&h| self.values[h]).collect()
    }
}

/// Validates `values` and computes the tie-broken ordering.
pub fn order_pvalues(values: &[f64]) -> Result<PValues> {
    PValues::new(values.to_vec())
}
