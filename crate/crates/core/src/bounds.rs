//! Marginal probability bounds that certify local tests as level-alpha.
//!
//! All sums run left to right over the index so that two routes to the same
//! quantity produce bitwise-identical results. Bounds are returned unclamped
//! and may exceed one.

use crate::critical::{CriticalSchedule, LocalTestFamily};
use crate::error::{Error, Result};

/// Thresholds `0 = beta_0 <= beta_1 <= ... <= beta_m <= 1` for the ordered
/// values of `t >= m` p-values.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundInput {
    t: usize,
    betas: Vec<f64>,
}

impl BoundInput {
    pub fn new(t: usize, betas: Vec<f64>) -> Result<Self> {
        if t < 1 {
            return Err(Error::BadShape("t must be at least 1".into()));
        }
        if betas.is_empty() {
            return Err(Error::EmptyInput);
        }
        if betas.len() > t {
            return Err(Error::BadShape(format!(
                "{} thresholds for only {t} p-values",
                betas.len()
            )));
        }
        for (j, &b) in betas.iter().enumerate() {
            if !b.is_finite() || !(0.0..=1.0).contains(&b) {
                return Err(Error::OutOfRange(j + 1));
            }
            if j > 0 && b < betas[j - 1] {
                return Err(Error::NotMonotone(j + 1));
            }
        }
        Ok(Self { t, betas })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }
}

/// Upper bound on the probability that `P_(i) <= beta_i` for at least one
/// `i <= m`, for `t` valid p-values under arbitrary dependence:
/// `t * sum_i (beta_i - beta_{i-1}) / i`.
pub fn order_statistic_bound(input: &BoundInput) -> f64 {
    let mut prev = 0.0;
    let mut sum = 0.0;
    for (j, &b) in input.betas.iter().enumerate() {
        sum += (b - prev) / (j + 1) as f64;
        prev = b;
    }
    input.t as f64 * sum
}

/// Type I error bound of the local test for cardinality `m`: the order
/// statistic bound with `t = m` and thresholds `alpha_{i,m}` for `i >= k`,
/// zero below `k`.
pub fn type1_bound(family: &LocalTestFamily, m: usize) -> Result<f64> {
    let (k, n) = (family.k(), family.n());
    if m < k || m > n {
        return Err(Error::CardinalityOutOfRange { m, k, n });
    }
    let mut betas = vec![0.0; k - 1];
    betas.extend_from_slice(family.row(m));
    let input = BoundInput::new(m, betas).expect("validated family rows are valid thresholds");
    Ok(order_statistic_bound(&input))
}

/// Normalizing constant for a stepup schedule under arbitrary dependence:
/// the largest type I error bound, over cardinalities `m = k..=n`, of the
/// local tests with critical values `alpha_{n-m+i}`. Scanned exhaustively.
pub fn stepup_normalizer(schedule: &CriticalSchedule) -> f64 {
    let (k, n) = (schedule.k(), schedule.n());
    let mut best = f64::NEG_INFINITY;
    for m in k..=n {
        let shift = n - m;
        let mf = m as f64;
        let mut sum = 0.0;
        for j in (k + 1)..=m {
            sum += (schedule.alpha(shift + j) - schedule.alpha(shift + j - 1)) / j as f64;
        }
        let value = mf * schedule.alpha(shift + k) / k as f64 + mf * sum;
        if value > best {
            best = value;
        }
    }
    best
}

/// Local test: reject the intersection hypothesis iff some `j` in `k..=m`
/// has `P_{j:I} <= alpha_{j,m}`. `sorted` holds the subset's p-values in
/// ascending order and `row` the critical values `alpha_{k,m}..alpha_{m,m}`.
pub fn evaluate_local_test(sorted: &[f64], row: &[f64]) -> Result<bool> {
    let m = sorted.len();
    if row.is_empty() || row.len() > m {
        return Err(Error::LengthMismatch {
            expected: m,
            found: row.len(),
        });
    }
    let k = m - row.len() + 1;
    Ok(local_test_rejects(&sorted[k - 1..], row))
}

/// `tail` holds `P_{k:I}..P_{m:I}`, aligned with `row`.
#[inline]
pub(crate) fn local_test_rejects(tail: &[f64], row: &[f64]) -> bool {
    tail.iter().zip(row).any(|(p, a)| p <= a)
}
