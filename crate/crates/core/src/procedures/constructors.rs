//! Named schedules and families, and the transforms that turn a stepwise
//! schedule into an equivalent closed testing family.

use crate::bounds::stepup_normalizer;
use crate::critical::{CriticalSchedule, LocalTestFamily};
use crate::error::{Error, Result};

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    Ok(())
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    Ok(())
}

/// Stepdown critical values `alpha_i = k * alpha / (n - i + k)`.
///
/// With `k = 1` this is Holm's schedule.
pub fn lehmann_romano_schedule(k: usize, n: usize, alpha: f64) -> Result<CriticalSchedule> {
    check_k(k, n)?;
    check_alpha(alpha)?;
    let alphas = (k..=n)
        .map(|i| k as f64 / (n - i + k) as f64 * alpha)
        .collect();
    CriticalSchedule::new(k, n, alphas)
}

/// Base shape `k / (n - i + k)` used for the stepup normalization when no
/// base schedule is supplied.
pub fn default_stepup_base(k: usize, n: usize) -> Result<CriticalSchedule> {
    check_k(k, n)?;
    let alphas = (k..=n).map(|i| k as f64 / (n - i + k) as f64).collect();
    CriticalSchedule::new(k, n, alphas)
}

/// Stepup critical values `alpha * base_i / D`, where `D` is the
/// [stepup normalizer](stepup_normalizer) of `base`.
pub fn romano_shaikh_schedule(base: &CriticalSchedule, alpha: f64) -> Result<CriticalSchedule> {
    check_alpha(alpha)?;
    let d = stepup_normalizer(base);
    if d <= 0.0 {
        return Err(Error::DegenerateSchedule);
    }
    let alphas = base.alphas().iter().map(|&a| alpha * a / d).collect();
    CriticalSchedule::new(base.k(), base.n(), alphas)
}

/// Family `alpha_{i,m} = k * alpha / m`, constant within each row.
pub fn constant_family(k: usize, n: usize, alpha: f64) -> Result<LocalTestFamily> {
    check_k(k, n)?;
    check_alpha(alpha)?;
    LocalTestFamily::from_fn(k, n, |_, m| k as f64 / m as f64 * alpha)
}

/// Family `alpha_{i,m} = alpha * base_{n-m+i} / D`. Every local test is
/// level `alpha` under arbitrary dependence, and the row `m = n` equals
/// [`romano_shaikh_schedule`].
pub fn scaled_family(base: &CriticalSchedule, alpha: f64) -> Result<LocalTestFamily> {
    check_alpha(alpha)?;
    let d = stepup_normalizer(base);
    if d <= 0.0 {
        return Err(Error::DegenerateSchedule);
    }
    let n = base.n();
    LocalTestFamily::from_fn(base.k(), n, |i, m| alpha * base.alpha(n - m + i) / d)
}

/// Simes family `alpha_{i,m} = i * alpha / m` with `k = 1`; the closed
/// testing procedure it induces is Hommel's procedure.
pub fn simes_family(n: usize, alpha: f64) -> Result<LocalTestFamily> {
    check_k(1, n)?;
    check_alpha(alpha)?;
    LocalTestFamily::from_fn(1, n, |i, m| i as f64 / m as f64 * alpha)
}

/// Closed testing family `beta_{i,m} = alpha_{n-m+k}` whose closed testing
/// procedure coincides with the stepdown procedure on `schedule`.
pub fn stepdown_as_family(schedule: &CriticalSchedule) -> LocalTestFamily {
    let (k, n) = (schedule.k(), schedule.n());
    LocalTestFamily::from_fn(k, n, |_, m| schedule.alpha(n - m + k))
        .expect("a valid schedule induces a valid family")
}

/// Closed testing family `beta_{i,m} = alpha_{n-m+i}` whose closed testing
/// procedure coincides with the stepup procedure on `schedule`.
pub fn stepup_as_family(schedule: &CriticalSchedule) -> LocalTestFamily {
    let (k, n) = (schedule.k(), schedule.n());
    LocalTestFamily::from_fn(k, n, |i, m| schedule.alpha(n - m + i))
        .expect("a valid schedule induces a valid family")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::type1_bound;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs()
    }

    #[test]
    fn lehmann_romano_values() {
        let s = lehmann_romano_schedule(2, 5, 0.05).unwrap();
        let expected = [0.02, 0.025, 0.1 / 3.0, 0.05];
        for (a, e) in s.alphas().iter().zip(expected) {
            assert!(close(*a, e));
        }
        let holm = lehmann_romano_schedule(1, 4, 0.05).unwrap();
        for i in 1..=4 {
            assert!(close(holm.alpha(i), 0.05 / (4 - i + 1) as f64));
        }
        assert_eq!(
            lehmann_romano_schedule(3, 3, 0.05).unwrap().alphas(),
            &[0.05]
        );
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(
            lehmann_romano_schedule(4, 3, 0.05),
            Err(Error::KOutOfRange { k: 4, n: 3 })
        );
        assert_eq!(
            lehmann_romano_schedule(1, 3, 0.0),
            Err(Error::AlphaOutOfRange(0.0))
        );
        assert_eq!(constant_family(1, 3, 1.0), Err(Error::AlphaOutOfRange(1.0)));
        assert!(constant_family(1, 3, f64::NAN).is_err());
        let zero = CriticalSchedule::new(1, 3, vec![0.0; 3]).unwrap();
        assert_eq!(
            romano_shaikh_schedule(&zero, 0.05),
            Err(Error::DegenerateSchedule)
        );
        assert_eq!(scaled_family(&zero, 0.05), Err(Error::DegenerateSchedule));
    }

    #[test]
    fn romano_shaikh_constant_base() {
        let base = CriticalSchedule::new(1, 5, vec![0.2; 5]).unwrap();
        let s = romano_shaikh_schedule(&base, 0.05).unwrap();
        for &a in s.alphas() {
            assert!(close(a, 0.05 / 5.0));
        }
    }

    #[test]
    fn romano_shaikh_hand_values() {
        let base = CriticalSchedule::new(1, 4, vec![0.25, 0.5, 0.75, 1.0]).unwrap();
        let s = romano_shaikh_schedule(&base, 0.05).unwrap();
        let expected = [0.0125 / 2.125, 0.025 / 2.125, 0.0375 / 2.125, 0.05 / 2.125];
        for (a, e) in s.alphas().iter().zip(expected) {
            assert!(close(*a, e), "{a} vs {e}");
        }
        assert!((s.alpha(1) - 0.0058824).abs() < 1e-7);
        assert!((s.alpha(4) - 0.0235294).abs() < 1e-7);
        let f = scaled_family(&base, 0.05).unwrap();
        assert_eq!(f.row(4), s.alphas());
    }

    #[test]
    fn romano_shaikh_single() {
        let base = CriticalSchedule::new(1, 1, vec![0.37]).unwrap();
        let s = romano_shaikh_schedule(&base, 0.05).unwrap();
        assert!(close(s.alpha(1), 0.05));
    }

    #[test]
    fn constant_family_rows() {
        let f = constant_family(1, 2, 0.05).unwrap();
        assert_eq!(f.row(1), &[0.05]);
        assert_eq!(f.row(2), &[0.025, 0.025]);
        assert_eq!(constant_family(4, 4, 0.05).unwrap().row(4), &[0.05]);
        assert!(constant_family(3, 9, 0.1).unwrap().rows_constant());
    }

    #[test]
    fn scaled_family_constant_base() {
        let base = CriticalSchedule::new(2, 6, vec![0.3; 5]).unwrap();
        let f = scaled_family(&base, 0.05).unwrap();
        for row in f.rows() {
            for &a in row {
                assert!(close(a, 2.0 * 0.05 / 6.0));
            }
        }
    }

    #[test]
    fn scaled_family_is_level_alpha() {
        let base = CriticalSchedule::new(2, 7, vec![0.01, 0.02, 0.02, 0.1, 0.3, 0.31]).unwrap();
        let f = scaled_family(&base, 0.05).unwrap();
        for m in 2..=7 {
            assert!(type1_bound(&f, m).unwrap() <= 0.05 * (1.0 + 1e-12));
        }
    }

    #[test]
    fn stepdown_family_rows() {
        let s = lehmann_romano_schedule(2, 5, 0.05).unwrap();
        let f = stepdown_as_family(&s);
        assert!(f.rows_constant());
        assert_eq!(f.row(5), &[s.alpha(2); 4]);
        assert_eq!(f.row(2), &[s.alpha(5)]);
        assert_eq!(f.row(4), &[0.025; 3]);
    }

    #[test]
    fn stepup_family_rows() {
        let (a, b, c) = (0.01, 0.02, 0.04);
        let s = CriticalSchedule::new(1, 3, vec![a, b, c]).unwrap();
        let f = stepup_as_family(&s);
        assert_eq!(f.row(1), &[c]);
        assert_eq!(f.row(2), &[b, c]);
        assert_eq!(f.row(3), &[a, b, c]);
        assert!(f.diagonals_constant());
        assert!(f.diagonals_nondecreasing());
        let s = lehmann_romano_schedule(3, 8, 0.05).unwrap();
        let f = stepup_as_family(&s);
        assert_eq!(f.row(8), s.alphas());
        assert!(f.diagonals_constant());
    }

    #[test]
    fn simes_rows() {
        let f = simes_family(4, 0.05).unwrap();
        for (a, e) in f.row(4).iter().zip([0.0125, 0.025, 0.0375, 0.05]) {
            assert!(close(*a, e));
        }
        assert!(f.diagonals_nondecreasing());
    }
}
