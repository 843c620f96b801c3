use super::stepwise::check_len;
use crate::critical::LocalTestFamily;
use crate::error::Result;
use crate::pvalues::PValues;
use crate::rejection::{Detail, RejectionSet};

/// Largest cardinality `i` in `k..=n` whose least favourable intersection
/// survives: `P_(n-i+l) > alpha_{l,i}` for every `l = k..=i`. `None` when no
/// cardinality survives.
pub fn estimate_true_nulls(p: &PValues, f: &LocalTestFamily) -> Result<Option<usize>> {
    check_len(p, f.n())?;
    let (k, n) = (f.k(), f.n());
    Ok((k..=n)
        .rev()
        .find(|&i| (k..=i).all(|l| p.ordered(n - i + l) > f.alpha(l, i))))
}

/// Generalized Hommel procedure: with `j` from [`estimate_true_nulls`],
/// reject every `H_(i)`, `i >= k`, with `P_(i) <= alpha_{k,j}`; reject all
/// when `j` does not exist. The `k - 1` most significant are always rejected.
pub fn hommel_rejections(p: &PValues, f: &LocalTestFamily) -> Result<RejectionSet> {
    let j = estimate_true_nulls(p, f)?;
    let (k, n) = (f.k(), f.n());
    let r = match j {
        None => n,
        Some(j) => {
            let threshold = f.alpha(k, j);
            (k..=n)
                .rev()
                .find(|&i| p.ordered(i) <= threshold)
                .unwrap_or(k - 1)
        }
    };
    Ok(RejectionSet::from_ranks(p, r, Detail::TrueNullEstimate(j)))
}
