use crate::critical::CriticalSchedule;
use crate::error::{Error, Result};
use crate::pvalues::PValues;
use crate::rejection::{Detail, RejectionSet};

pub(crate) fn check_len(p: &PValues, n: usize) -> Result<()> {
    if p.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: p.len(),
        });
    }
    Ok(())
}

/// Generalized stepdown: walk ranks `k, k+1, ...` and stop at the first
/// p-value above its critical value. Ranks before the stop are rejected,
/// together with the `k - 1` most significant hypotheses.
pub fn stepdown_rejections(p: &PValues, s: &CriticalSchedule) -> Result<RejectionSet> {
    check_len(p, s.n())?;
    let mut r = s.k() - 1;
    for i in s.k()..=s.n() {
        if p.ordered(i) <= s.alpha(i) {
            r = i;
        } else {
            break;
        }
    }
    Ok(RejectionSet::from_ranks(p, r, Detail::Cutoff(r)))
}

/// Generalized stepup: reject ranks `1..=r` where `r` is the largest rank
/// `i >= k` with `P_(i) <= alpha_i`, or only the `k - 1` most significant
/// hypotheses when no such rank exists.
pub fn stepup_rejections(p: &PValues, s: &CriticalSchedule) -> Result<RejectionSet> {
    check_len(p, s.n())?;
    let (k, n) = (s.k(), s.n());
    let r = if p.ordered(n) <= s.alpha(n) {
        n
    } else {
        (k..n)
            .rev()
            .find(|&i| p.ordered(i) <= s.alpha(i))
            .unwrap_or(k - 1)
    };
    Ok(RejectionSet::from_ranks(p, r, Detail::Cutoff(r)))
}
