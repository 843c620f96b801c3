//! Critical values: single-indexed schedules for stepwise procedures and
//! double-indexed local test families for closed testing.
//!
//! Critical values below index `k` are never stored. The `k - 1` most
//! significant hypotheses are rejected automatically by every procedure, so
//! they carry no information.

use crate::error::{Error, Result};

fn check_k(k: usize, n: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    Ok(())
}

fn in_unit(x: f64) -> bool {
    x.is_finite() && (0.0..=1.0).contains(&x)
}

/// Nondecreasing critical values `alpha_k <= ... <= alpha_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalSchedule {
    k: usize,
    n: usize,
    alphas: Vec<f64>,
}

impl CriticalSchedule {
    /// Validates a schedule. `alphas[j]` holds the critical value for rank
    /// `k + j`. Error positions are 1-based positions within `alphas`.
    pub fn new(k: usize, n: usize, alphas: Vec<f64>) -> Result<Self> {
        check_k(k, n)?;
        if alphas.len() != n - k + 1 {
            return Err(Error::BadShape(format!(
                "schedule for k = {k}, n = {n} needs {} values, got {}",
                n - k + 1,
                alphas.len()
            )));
        }
        for (j, &a) in alphas.iter().enumerate() {
            if !in_unit(a) {
                return Err(Error::OutOfRange(j + 1));
            }
            if j > 0 && a < alphas[j - 1] {
                return Err(Error::NotMonotone(j + 1));
            }
        }
        Ok(Self { k, n, alphas })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Critical value for rank `i`, `k <= i <= n`.
    pub fn alpha(&self, i: usize) -> f64 {
        debug_assert!(i >= self.k && i <= self.n);
        self.alphas[i - self.k]
    }

    /// All stored values, rank `k` first.
    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }
}

/// Validates a stepwise schedule; see [`CriticalSchedule::new`].
pub fn validate_schedule(k: usize, n: usize, alphas: &[f64]) -> Result<CriticalSchedule> {
    CriticalSchedule::new(k, n, alphas.to_vec())
}

/// A symmetric family of local tests, one row of critical values
/// `alpha_{k,m} <= ... <= alpha_{m,m}` per subset cardinality `m`.
///
/// Rows are nondecreasing in `i` and, for fixed `i`, values are
/// nonincreasing in `m`. Both orders are checked at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalTestFamily {
    k: usize,
    n: usize,
    /// `rows[m - k][i - k]` holds `alpha_{i,m}`.
    rows: Vec<Vec<f64>>,
}

impl LocalTestFamily {
    pub fn new(k: usize, n: usize, rows: Vec<Vec<f64>>) -> Result<Self> {
        check_k(k, n)?;
        if rows.len() != n - k + 1 {
            return Err(Error::BadShape(format!(
                "family for k = {k}, n = {n} needs {} rows, got {}",
                n - k + 1,
                rows.len()
            )));
        }
        for (r, row) in rows.iter().enumerate() {
            let m = k + r;
            if row.len() != m - k + 1 {
                return Err(Error::BadShape(format!(
                    "row m = {m} needs {} values, got {}",
                    m - k + 1,
                    row.len()
                )));
            }
        }
        for (r, row) in rows.iter().enumerate() {
            let m = k + r;
            for (c, &a) in row.iter().enumerate() {
                let i = k + c;
                if !in_unit(a) {
                    return Err(Error::OutOfRange(i));
                }
                if c > 0 && a < row[c - 1] {
                    return Err(Error::NotMonotoneInI { i, m });
                }
                if r > 0 && c < rows[r - 1].len() && a > rows[r - 1][c] {
                    return Err(Error::NotMonotoneInM { i, m });
                }
            }
        }
        Ok(Self { k, n, rows })
    }

    /// Builds the table from `f(i, m)` over `k <= i <= m <= n` and validates it.
    pub fn from_fn(k: usize, n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        check_k(k, n)?;
        let rows = (k..=n)
            .map(|m| (k..=m).map(|i| f(i, m)).collect())
            .collect();
        Self::new(k, n, rows)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `alpha_{i,m}` for `k <= i <= m <= n`.
    pub fn alpha(&self, i: usize, m: usize) -> f64 {
        debug_assert!(self.k <= i && i <= m && m <= self.n);
        self.rows[m - self.k][i - self.k]
    }

    /// Row `m`: `alpha_{k,m}, ..., alpha_{m,m}`.
    pub fn row(&self, m: usize) -> &[f64] {
        &self.rows[m - self.k]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// True when every row is constant in `i`.
    pub fn rows_constant(&self) -> bool {
        self.rows.iter().all(|row| row.iter().all(|&a| a == row[0]))
    }

    /// Iterates the diagonal through `(k, n - i + k)`: the cells
    /// `(l, (n - i) + l)` for `l = k..=i`.
    fn diagonal(&self, i: usize) -> impl Iterator<Item = f64> + '_ {
        let offset = self.n - i;
        (self.k..=i).map(move |l| self.alpha(l, offset + l))
    }

    /// True when each diagonal `l -> alpha_{l,(n-i)+l}` is nondecreasing.
    /// This is the extra hypothesis under which closed testing dominates the
    /// stepup procedure with critical values `alpha_{k,(n-i)+k}`.
    pub fn diagonals_nondecreasing(&self) -> bool {
        (self.k..=self.n).all(|i| {
            let diag: Vec<f64> = self.diagonal(i).collect();
            diag.windows(2).all(|w| w[0] <= w[1])
        })
    }

    /// True when each diagonal `l -> alpha_{l,(n-i)+l}` is constant; closed
    /// testing then coincides with the corresponding stepup procedure.
    pub fn diagonals_constant(&self) -> bool {
        (self.k..=self.n).all(|i| {
            let diag: Vec<f64> = self.diagonal(i).collect();
            diag.iter().all(|&a| a == diag[0])
        })
    }

    /// Schedule `alpha_{k,(n-i)+k}`, `i = k..=n`: the first column read from
    /// the largest cardinality down. Stepdown and stepup procedures with this
    /// schedule are dominated by closed testing with the family.
    pub fn first_column_schedule(&self) -> CriticalSchedule {
        let alphas = (self.k..=self.n)
            .map(|i| self.alpha(self.k, self.n - i + self.k))
            .collect();
        CriticalSchedule::new(self.k, self.n, alphas)
            .expect("first column of a valid family is a valid schedule")
    }
}

/// Validates a triangular table; see [`LocalTestFamily::new`].
pub fn validate_family(k: usize, n: usize, table: Vec<Vec<f64>>) -> Result<LocalTestFamily> {
    LocalTestFamily::new(k, n, table)
}

/// Whether every diagonal `l -> alpha_{l,(n-i)+l}` is nondecreasing.
pub fn check_diagonal_condition(family: &LocalTestFamily) -> bool {
    family.diagonals_nondecreasing()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_accepts_nondecreasing() {
        let s = validate_schedule(1, 3, &[0.01, 0.02, 0.05]).unwrap();
        assert_eq!(s.alpha(1), 0.01);
        assert_eq!(s.alpha(3), 0.05);
    }

    #[test]
    fn schedule_errors() {
        assert_eq!(
            validate_schedule(2, 5, &[0.02, 0.025, 0.05, 0.03]),
            Err(Error::NotMonotone(4))
        );
        assert_eq!(
            validate_schedule(3, 2, &[0.1]),
            Err(Error::KOutOfRange { k: 3, n: 2 })
        );
        assert_eq!(
            validate_schedule(0, 2, &[0.1, 0.2, 0.3]),
            Err(Error::KOutOfRange { k: 0, n: 2 })
        );
        assert!(matches!(
            validate_schedule(1, 3, &[0.1, 0.2]),
            Err(Error::BadShape(_))
        ));
        assert_eq!(
            validate_schedule(1, 2, &[0.1, 1.2]),
            Err(Error::OutOfRange(2))
        );
        assert_eq!(
            validate_schedule(1, 2, &[f64::NAN, 0.2]),
            Err(Error::OutOfRange(1))
        );
        // equal neighbours are fine
        validate_schedule(1, 3, &[0.05, 0.05, 0.05]).unwrap();
    }

    #[test]
    fn family_kalpha_over_m() {
        let f = LocalTestFamily::from_fn(2, 4, |_, m| 2.0 * 0.05 / m as f64).unwrap();
        assert_eq!(f.row(2), &[0.05]);
        assert_eq!(f.row(3), &[0.1 / 3.0, 0.1 / 3.0]);
        assert_eq!(f.row(4), &[0.025, 0.025, 0.025]);
        assert!(f.rows_constant());
    }

    #[test]
    fn family_rejects_decrease_in_i() {
        let table = vec![vec![0.05], vec![0.04, 0.03], vec![0.01, 0.02, 0.03]];
        assert_eq!(
            validate_family(2, 4, table),
            Err(Error::NotMonotoneInI { i: 3, m: 3 })
        );
    }

    #[test]
    fn family_rejects_increase_in_m() {
        let table = vec![vec![0.02], vec![0.03, 0.04], vec![0.01, 0.02, 0.03]];
        assert_eq!(
            validate_family(2, 4, table),
            Err(Error::NotMonotoneInM { i: 2, m: 3 })
        );
    }

    #[test]
    fn family_shape_errors() {
        assert!(matches!(
            validate_family(2, 4, vec![vec![0.05], vec![0.01, 0.02]]),
            Err(Error::BadShape(_))
        ));
        assert!(matches!(
            validate_family(1, 2, vec![vec![0.05], vec![0.01]]),
            Err(Error::BadShape(_))
        ));
        assert_eq!(
            validate_family(1, 1, vec![vec![1.5]]),
            Err(Error::OutOfRange(1))
        );
    }

    #[test]
    fn diagonal_counterexample() {
        // alpha_{2,3} = 0.03 > alpha_{3,4} = 0.02 breaks the diagonal through (2, 3).
        let f = validate_family(
            2,
            4,
            vec![vec![0.05], vec![0.03, 0.04], vec![0.01, 0.02, 0.03]],
        )
        .unwrap();
        assert!(!check_diagonal_condition(&f));
    }

    #[test]
    fn diagonal_single_point() {
        let f = validate_family(3, 3, vec![vec![0.05]]).unwrap();
        assert!(check_diagonal_condition(&f));
        assert!(f.diagonals_constant());
    }

    #[test]
    fn kalpha_over_m_diagonals_decrease() {
        // alpha_{l,(n-i)+l} = k alpha / (n - i + l) shrinks as l grows.
        let f = LocalTestFamily::from_fn(2, 6, |_, m| 0.1 / m as f64).unwrap();
        assert!(!check_diagonal_condition(&f));
        assert!(!f.diagonals_constant());
    }

    #[test]
    fn first_column_of_constant_family() {
        let f = LocalTestFamily::from_fn(2, 5, |_, m| 0.1 / m as f64).unwrap();
        let s = f.first_column_schedule();
        // alpha_{k,(n-i)+k} = k alpha / (n - i + k)
        assert_eq!(s.alphas(), &[0.1 / 5.0, 0.1 / 4.0, 0.1 / 3.0, 0.1 / 2.0]);
    }
}
