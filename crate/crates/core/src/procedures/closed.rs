//! Exhaustive generalized closed testing.
//!
//! Subsets are enumerated as bitmasks over global ranks, so iterating the
//! set bits from low to high visits the members of `I` in ascending p-value
//! order under the tie-broken ordering. A hypothesis at position `>= k`
//! within `I` is exactly one with `P_i >= P_{k:I}`.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::stepwise::check_len;
use crate::bounds::local_test_rejects;
use crate::critical::LocalTestFamily;
use crate::error::{Error, Result};
use crate::pvalues::PValues;
use crate::rejection::{Detail, RejectionSet};

/// Largest `n` accepted by [`closed_testing_rejections`].
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 18;

// Below this size a sequential scan beats the rayon split.
const PARALLEL_MIN_N: usize = 13;
const CHUNK_BITS: u32 = 10;

#[derive(Default)]
struct Scan {
    /// Bit `r` set: the hypothesis at rank `r + 1` sits at position >= k in
    /// some accepted intersection and cannot be rejected.
    blocked: u32,
    accepted: u32,
}

impl Scan {
    fn merge(self, other: Scan) -> Scan {
        Scan {
            blocked: self.blocked | other.blocked,
            accepted: self.accepted | other.accepted,
        }
    }
}

fn scan_masks(sorted: &[f64], f: &LocalTestFamily, masks: std::ops::Range<u32>) -> Scan {
    let k = f.k();
    let mut scan = Scan::default();
    let mut members = [0usize; 32];
    let mut tail = [0f64; 32];
    for mask in masks {
        let m = mask.count_ones() as usize;
        if m < k {
            continue;
        }
        let mut bits = mask;
        let mut pos = 0;
        while bits != 0 {
            let r = bits.trailing_zeros() as usize;
            members[pos] = r;
            if pos + 1 >= k {
                tail[pos + 1 - k] = sorted[r];
            }
            pos += 1;
            bits &= bits - 1;
        }
        if !local_test_rejects(&tail[..m - k + 1], f.row(m)) {
            for &r in &members[k - 1..m] {
                scan.blocked |= 1 << r;
            }
            scan.accepted |= 1 << (m - 1);
        }
    }
    scan
}

/// Closed testing with the default exhaustive limit.
pub fn closed_testing_rejections(p: &PValues, f: &LocalTestFamily) -> Result<RejectionSet> {
    closed_testing_with_limit(p, f, DEFAULT_EXHAUSTIVE_LIMIT)
}

/// Rejects `H_i` iff the local test rejects every intersection `H_I` with
/// `i` in `I`, `|I| >= k` and `P_i >= P_{k:I}`. All `2^n` subsets are
/// enumerated; `limit` caps `n` (and can never exceed 31).
pub fn closed_testing_with_limit(
    p: &PValues,
    f: &LocalTestFamily,
    limit: usize,
) -> Result<RejectionSet> {
    check_len(p, f.n())?;
    let n = f.n();
    if n > limit.min(31) {
        return Err(Error::TooLarge { n, limit });
    }
    let sorted = p.sorted();
    let total: u32 = 1 << n;
    let scan = if n >= PARALLEL_MIN_N {
        let chunk = 1u32 << CHUNK_BITS;
        (0..total / chunk)
            .into_par_iter()
            .map(|c| scan_masks(&sorted, f, c * chunk..(c + 1) * chunk))
            .reduce(Scan::default, Scan::merge)
    } else {
        scan_masks(&sorted, f, 1..total)
    };
    let mut rejected = vec![false; n];
    for r in 0..n {
        if scan.blocked & (1 << r) == 0 {
            rejected[p.hypothesis_at(r + 1)] = true;
        }
    }
    let accepted: BTreeSet<usize> = (1..=n)
        .filter(|m| scan.accepted & (1 << (m - 1)) != 0)
        .collect();
    Ok(RejectionSet::new(
        rejected,
        Detail::AcceptedCardinalities(accepted),
    ))
}
