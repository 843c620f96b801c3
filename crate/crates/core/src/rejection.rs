use std::collections::BTreeSet;

use crate::pvalues::PValues;

/// Procedure-specific audit value attached to a rejection set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Detail {
    /// Stepwise procedures: the hypotheses holding ranks `1..=r` were
    /// rejected. `r = k - 1` when nothing beyond the automatic rejections
    /// cleared its critical value.
    Cutoff(usize),
    /// Generalized Hommel procedure: the estimate `j_hat`, or `None` when no
    /// cardinality survives and every hypothesis is rejected.
    TrueNullEstimate(Option<usize>),
    /// Closed testing: the cardinalities of all intersection hypotheses whose
    /// local test accepted.
    AcceptedCardinalities(BTreeSet<usize>),
}

/// Reject/accept decisions per hypothesis, indexed by input position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectionSet {
    rejected: Vec<bool>,
    num_rejected: usize,
    detail: Detail,
}

impl RejectionSet {
    pub(crate) fn new(rejected: Vec<bool>, detail: Detail) -> Self {
        let num_rejected = rejected.iter().filter(|&&r| r).count();
        Self {
            rejected,
            num_rejected,
            detail,
        }
    }

    /// Rejects the hypotheses holding ranks `1..=r`.
    pub(crate) fn from_ranks(p: &PValues, r: usize, detail: Detail) -> Self {
        let mut rejected = vec![false; p.len()];
        for &h in &p.order()[..r] {
            rejected[h] = true;
        }
        Self {
            rejected,
            num_rejected: r,
            detail,
        }
    }

    pub fn len(&self) -> usize {
        self.rejected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rejected.is_empty()
    }

    pub fn is_rejected(&self, h: usize) -> bool {
        self.rejected[h]
    }

    /// Per-hypothesis flags in input order.
    pub fn flags(&self) -> &[bool] {
        &self.rejected
    }

    pub fn num_rejected(&self) -> usize {
        self.num_rejected
    }

    /// 0-based indices of rejected hypotheses, ascending.
    pub fn indices(&self) -> Vec<usize> {
        self.rejected
            .iter()
            .enumerate()
            .filter_map(|(h, &r)| r.then_some(h))
            .collect()
    }

    pub fn detail(&self) -> &Detail {
        &self.detail
    }

    /// True when every hypothesis rejected here is also rejected by `other`.
    pub fn is_subset_of(&self, other: &RejectionSet) -> bool {
        self.rejected.len() == other.rejected.len()
            && self
                .rejected
                .iter()
                .zip(&other.rejected)
                .all(|(&a, &b)| !a || b)
    }

    /// Same decisions, ignoring the audit detail.
    pub fn same_decisions(&self, other: &RejectionSet) -> bool {
        self.rejected == other.rejected
    }
}
