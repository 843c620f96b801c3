//! Randomized checks of the dominance and equivalence relations between
//! stepwise procedures, the generalized Hommel shortcut and exhaustive
//! closed testing.
//!
//! Closed testing is the brute-force oracle in every check. Random inputs
//! deliberately include ties, exact zeros and ones, and p-values equal to
//! critical values, since those are where an off-by-one or a `<` vs `<=`
//! slip would show up.

use std::fmt;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::critical::{CriticalSchedule, LocalTestFamily};
use crate::error::{Error, Result};
use crate::procedures::{
    closed_testing_with_limit, constant_family, hommel_rejections, lehmann_romano_schedule,
    scaled_family, simes_family, stepdown_as_family, stepdown_rejections, stepup_as_family,
    stepup_rejections, CriticalValues, DEFAULT_EXHAUSTIVE_LIMIT,
};
use crate::pvalues::PValues;
use crate::rejection::{Detail, RejectionSet};

/// The relations checked by [`verify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    /// Closed testing on a monotone family dominates stepdown with the
    /// family's first column; equal when rows are constant.
    StepdownDominance,
    /// Stepdown equals closed testing on [`stepdown_as_family`].
    StepdownEquivalence,
    /// Closed testing on a family with nondecreasing diagonals dominates
    /// stepup with the first column; equal when diagonals are constant.
    StepupDominance,
    /// Stepup equals closed testing on [`stepup_as_family`].
    StepupEquivalence,
    /// Generalized Hommel equals closed testing on the same family.
    HommelEquivalence,
    /// With `k = 1`, Hommel on the Simes family dominates Hochberg's stepup.
    HommelOverHochberg,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::StepdownDominance,
        Check::StepdownEquivalence,
        Check::StepupDominance,
        Check::StepupEquivalence,
        Check::HommelEquivalence,
        Check::HommelOverHochberg,
    ];

    /// Short identifier used on the command line.
    pub fn id(self) -> &'static str {
        match self {
            Check::StepdownDominance => "4.1",
            Check::StepdownEquivalence => "4.2",
            Check::StepupDominance => "4.3",
            Check::StepupEquivalence => "4.4",
            Check::HommelEquivalence => "5.1",
            Check::HommelOverHochberg => "hochberg",
        }
    }

    pub fn from_id(id: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.id() == id)
    }

    pub fn description(self) -> &'static str {
        match self {
            Check::StepdownDominance => {
                "stepdown(first column) <= closed(family); equal for constant rows"
            }
            Check::StepdownEquivalence => "stepdown(s) == closed(stepdown_as_family(s))",
            Check::StepupDominance => {
                "stepup(first column) <= closed(family); equal for constant diagonals"
            }
            Check::StepupEquivalence => "stepup(s) == closed(stepup_as_family(s))",
            Check::HommelEquivalence => "hommel(f) == closed(f)",
            Check::HommelOverHochberg => "hochberg stepup <= hommel(simes), k = 1",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// Left-hand rejections contained in the right-hand ones.
    Subset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub trials: usize,
    pub n_max: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            trials: 1000,
            n_max: 12,
            seed: 0,
        }
    }
}

/// A trial whose rejection sets violate the expected relation.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub check: Check,
    pub trial: usize,
    pub pvalues: Vec<f64>,
    pub k: usize,
    pub relation: Relation,
    pub left_name: &'static str,
    pub left_critical: CriticalValues,
    pub left: Vec<usize>,
    pub right_name: &'static str,
    pub right_critical: CriticalValues,
    pub right: Vec<usize>,
}

fn fmt_critical(f: &mut fmt::Formatter<'_>, cv: &CriticalValues) -> fmt::Result {
    match cv {
        CriticalValues::Schedule(s) => write!(f, "schedule {:?}", s.alphas()),
        CriticalValues::Family(fam) => {
            writeln!(f, "family (row per m = {}..={}):", fam.k(), fam.n())?;
            for (m, row) in (fam.k()..).zip(fam.rows()) {
                writeln!(f, "      m = {m}: {row:?}")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based = |v: &[usize]| v.iter().map(|h| h + 1).collect::<Vec<_>>();
        let rel = match self.relation {
            Relation::Equal => "==",
            Relation::Subset => "<=",
        };
        writeln!(
            f,
            "counterexample for {} at trial {}:",
            self.check, self.trial
        )?;
        writeln!(f, "  n = {}, k = {}", self.pvalues.len(), self.k)?;
        writeln!(f, "  p-values: {:?}", self.pvalues)?;
        write!(f, "  {} ", self.left_name)?;
        fmt_critical(f, &self.left_critical)?;
        writeln!(f)?;
        write!(f, "  {} ", self.right_name)?;
        fmt_critical(f, &self.right_critical)?;
        writeln!(f)?;
        writeln!(
            f,
            "  {} rejects {:?}",
            self.left_name,
            one_based(&self.left)
        )?;
        writeln!(
            f,
            "  {} rejects {:?}",
            self.right_name,
            one_based(&self.right)
        )?;
        write!(f, "  expected {} {rel} {}", self.left_name, self.right_name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub check: Check,
    pub trials: usize,
    /// Trials checked for exact equality.
    pub equalities: usize,
    /// Trials checked for inclusion only.
    pub inclusions: usize,
    /// Trials where the Hommel shortcut found no surviving cardinality and
    /// rejected everything.
    pub reject_all_branch: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<8} {}: {} trials ({} equality, {} inclusion), {} counterexamples: {}",
            self.check.id(),
            self.check.description(),
            self.trials,
            self.equalities,
            self.inclusions,
            self.counterexamples.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

struct Outcome {
    relation: Relation,
    pvalues: PValues,
    k: usize,
    left_name: &'static str,
    left_critical: CriticalValues,
    left: RejectionSet,
    right_name: &'static str,
    right_critical: CriticalValues,
    right: RejectionSet,
}

impl Outcome {
    fn holds(&self) -> bool {
        match self.relation {
            Relation::Equal => self.left.same_decisions(&self.right),
            Relation::Subset => self.left.is_subset_of(&self.right),
        }
    }
}

/// Runs `options.trials` random trials of `check`.
pub fn verify(check: Check, options: &VerifyOptions) -> Result<VerifyReport> {
    if options.n_max < 1 || options.n_max > DEFAULT_EXHAUSTIVE_LIMIT {
        return Err(Error::InvalidConfig(format!(
            "n-max = {} must lie in 1..={DEFAULT_EXHAUSTIVE_LIMIT}",
            options.n_max
        )));
    }
    let stream = Check::ALL.iter().position(|&c| c == check).unwrap() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    rng.set_stream(stream);
    let mut report = VerifyReport {
        check,
        trials: options.trials,
        equalities: 0,
        inclusions: 0,
        reject_all_branch: 0,
        counterexamples: Vec::new(),
    };
    for trial in 0..options.trials {
        let outcome = run_trial(check, &mut rng, options.n_max)?;
        match outcome.relation {
            Relation::Equal => report.equalities += 1,
            Relation::Subset => report.inclusions += 1,
        }
        for set in [&outcome.left, &outcome.right] {
            if set.detail() == &Detail::TrueNullEstimate(None) {
                report.reject_all_branch += 1;
            }
        }
        if !outcome.holds() {
            report.counterexamples.push(Counterexample {
                check,
                trial,
                pvalues: outcome.pvalues.values().to_vec(),
                k: outcome.k,
                relation: outcome.relation,
                left_name: outcome.left_name,
                left_critical: outcome.left_critical,
                left: outcome.left.indices(),
                right_name: outcome.right_name,
                right_critical: outcome.right_critical,
                right: outcome.right.indices(),
            });
        }
    }
    Ok(report)
}

fn random_shape<R: Rng>(rng: &mut R, n_max: usize) -> (usize, usize) {
    let n = if n_max >= 2 {
        rng.random_range(2..=n_max)
    } else {
        1
    };
    (rng.random_range(1..=n), n)
}

fn closed(p: &PValues, f: &LocalTestFamily) -> Result<RejectionSet> {
    closed_testing_with_limit(p, f, DEFAULT_EXHAUSTIVE_LIMIT)
}

fn run_trial<R: Rng>(check: Check, rng: &mut R, n_max: usize) -> Result<Outcome> {
    let (mut k, n) = random_shape(rng, n_max);
    let outcome = match check {
        Check::StepdownDominance => {
            let family = match rng.random_range(0..3) {
                0 => constant_family(k, n, random_alpha(rng))?,
                1 => random_row_constant_family(rng, k, n),
                _ => random_family(rng, k, n),
            };
            let schedule = family.first_column_schedule();
            let p = random_pvalues(rng, n, &anchors(&family));
            let relation = if family.rows_constant() {
                Relation::Equal
            } else {
                Relation::Subset
            };
            Outcome {
                relation,
                left: stepdown_rejections(&p, &schedule)?,
                right: closed(&p, &family)?,
                pvalues: p,
                k,
                left_name: "stepdown",
                left_critical: CriticalValues::Schedule(schedule),
                right_name: "closed",
                right_critical: CriticalValues::Family(family),
            }
        }
        Check::StepdownEquivalence => {
            let schedule = random_schedule(rng, k, n);
            let family = stepdown_as_family(&schedule);
            let p = random_pvalues(rng, n, schedule.alphas());
            Outcome {
                relation: Relation::Equal,
                left: stepdown_rejections(&p, &schedule)?,
                right: closed(&p, &family)?,
                pvalues: p,
                k,
                left_name: "stepdown",
                left_critical: CriticalValues::Schedule(schedule),
                right_name: "closed",
                right_critical: CriticalValues::Family(family),
            }
        }
        Check::StepupDominance => {
            let family = match rng.random_range(0..3) {
                0 => random_diagonal_family(rng, k, n),
                1 => scaled_family(&random_positive_schedule(rng, k, n), random_alpha(rng))?,
                _ => {
                    // A general monotone family, kept only if it happens to
                    // satisfy the diagonal condition.
                    let f = random_family(rng, k, n);
                    if f.diagonals_nondecreasing() {
                        f
                    } else {
                        random_diagonal_family(rng, k, n)
                    }
                }
            };
            debug_assert!(family.diagonals_nondecreasing());
            let schedule = family.first_column_schedule();
            let p = random_pvalues(rng, n, &anchors(&family));
            let relation = if family.diagonals_constant() {
                Relation::Equal
            } else {
                Relation::Subset
            };
            Outcome {
                relation,
                left: stepup_rejections(&p, &schedule)?,
                right: closed(&p, &family)?,
                pvalues: p,
                k,
                left_name: "stepup",
                left_critical: CriticalValues::Schedule(schedule),
                right_name: "closed",
                right_critical: CriticalValues::Family(family),
            }
        }
        Check::StepupEquivalence => {
            let schedule = random_schedule(rng, k, n);
            let family = stepup_as_family(&schedule);
            let p = random_pvalues(rng, n, schedule.alphas());
            Outcome {
                relation: Relation::Equal,
                left: stepup_rejections(&p, &schedule)?,
                right: closed(&p, &family)?,
                pvalues: p,
                k,
                left_name: "stepup",
                left_critical: CriticalValues::Schedule(schedule),
                right_name: "closed",
                right_critical: CriticalValues::Family(family),
            }
        }
        Check::HommelEquivalence => {
            let family = match rng.random_range(0..6) {
                0 => constant_family(k, n, random_alpha(rng))?,
                1 if k == 1 => simes_family(n, random_alpha(rng))?,
                2 => random_diagonal_family(rng, k, n),
                3 => random_row_constant_family(rng, k, n),
                _ => random_family(rng, k, n),
            };
            let p = random_pvalues(rng, n, &anchors(&family));
            Outcome {
                relation: Relation::Equal,
                left: hommel_rejections(&p, &family)?,
                right: closed(&p, &family)?,
                pvalues: p,
                k,
                left_name: "hommel",
                left_critical: CriticalValues::Family(family.clone()),
                right_name: "closed",
                right_critical: CriticalValues::Family(family),
            }
        }
        Check::HommelOverHochberg => {
            k = 1;
            let alpha = random_alpha(rng);
            let hochberg = lehmann_romano_schedule(1, n, alpha)?;
            let family = simes_family(n, alpha)?;
            let p = random_pvalues(rng, n, &anchors(&family));
            Outcome {
                relation: Relation::Subset,
                left: stepup_rejections(&p, &hochberg)?,
                right: hommel_rejections(&p, &family)?,
                pvalues: p,
                k,
                left_name: "hochberg",
                left_critical: CriticalValues::Schedule(hochberg),
                right_name: "hommel",
                right_critical: CriticalValues::Family(family),
            }
        }
    };
    Ok(outcome)
}

fn anchors(family: &LocalTestFamily) -> Vec<f64> {
    family.rows().iter().flatten().copied().collect()
}

/// A significance level drawn from `[0.005, 0.3]`.
pub fn random_alpha<R: Rng>(rng: &mut R) -> f64 {
    rng.random_range(0.005..=0.3)
}

/// Random p-values mixing continuous draws, ties on a coarse grid, exact
/// zeros and ones, and values copied from `anchors` (typically the critical
/// values in use, so that equality cases are hit).
pub fn random_pvalues<R: Rng>(rng: &mut R, n: usize, anchors: &[f64]) -> PValues {
    let scale = *[1.0, 0.3, 0.1, 0.03].choose(rng).unwrap();
    let mode = rng.random_range(0..4);
    let values = (0..n)
        .map(|_| match mode {
            0 => rng.random::<f64>() * scale,
            1 => (rng.random_range(0..=8) as f64 / 8.0) * scale,
            _ => match rng.random_range(0..10) {
                0 => 0.0,
                1 => 1.0,
                2..=5 if !anchors.is_empty() => *anchors.choose(rng).unwrap(),
                _ => rng.random::<f64>() * scale,
            },
        })
        .collect();
    PValues::new(values).expect("generated values lie in [0, 1]")
}

fn increment<R: Rng>(rng: &mut R, scale: f64) -> f64 {
    if rng.random_bool(0.3) {
        0.0
    } else {
        rng.random::<f64>() * scale
    }
}

/// Random nondecreasing schedule, with plateaus and occasional zeros.
pub fn random_schedule<R: Rng>(rng: &mut R, k: usize, n: usize) -> CriticalSchedule {
    let scale = *[0.5, 0.1, 0.02].choose(rng).unwrap();
    let mut acc = if rng.random_bool(0.1) {
        0.0
    } else {
        rng.random::<f64>() * scale
    };
    let alphas = (k..=n)
        .map(|_| {
            let a = acc.min(1.0);
            acc += increment(rng, scale);
            a
        })
        .collect();
    CriticalSchedule::new(k, n, alphas).expect("generated schedule is valid")
}

fn random_positive_schedule<R: Rng>(rng: &mut R, k: usize, n: usize) -> CriticalSchedule {
    loop {
        let s = random_schedule(rng, k, n);
        if s.alpha(n) > 0.0 {
            return s;
        }
    }
}

/// Fills a family column by column (`i` ascending, `m` descending) so that
/// every lower bound of a cell is known before the cell is drawn.
fn fill_family<R: Rng>(rng: &mut R, k: usize, n: usize, diagonal: bool) -> LocalTestFamily {
    let scale = *[0.3, 0.1, 0.02].choose(rng).unwrap();
    let mut table = vec![vec![0.0; 0]; n - k + 1];
    for (r, row) in table.iter_mut().enumerate() {
        row.resize(r + 1, 0.0);
    }
    for i in k..=n {
        for m in (i..=n).rev() {
            let mut lower: f64 = 0.0;
            if i > k {
                lower = lower.max(table[m - k][i - 1 - k]);
                if diagonal {
                    lower = lower.max(table[m - 1 - k][i - 1 - k]);
                }
            }
            if m < n {
                lower = lower.max(table[m + 1 - k][i - k]);
            }
            let start = if lower == 0.0 && !rng.random_bool(0.1) {
                rng.random::<f64>() * scale
            } else {
                lower
            };
            table[m - k][i - k] = (start + increment(rng, scale)).min(1.0).max(lower);
        }
    }
    LocalTestFamily::new(k, n, table).expect("generated family is monotone")
}

/// Random family, nondecreasing in `i` and nonincreasing in `m`.
pub fn random_family<R: Rng>(rng: &mut R, k: usize, n: usize) -> LocalTestFamily {
    fill_family(rng, k, n, false)
}

/// Random monotone family whose diagonals `l -> alpha_{l,(n-i)+l}` are also
/// nondecreasing.
pub fn random_diagonal_family<R: Rng>(rng: &mut R, k: usize, n: usize) -> LocalTestFamily {
    let f = fill_family(rng, k, n, true);
    debug_assert!(f.diagonals_nondecreasing());
    f
}

/// Random family constant within each row.
pub fn random_row_constant_family<R: Rng>(rng: &mut R, k: usize, n: usize) -> LocalTestFamily {
    let s = random_schedule(rng, k, n);
    stepdown_as_family(&s)
}

/// Builds a family that breaks monotonicity in `i` and runs it through the
/// validator. Used to confirm that hypothesis violations are caught before
/// any comparison; returns the validator's error.
pub fn nonmonotone_self_test() -> Error {
    let table = vec![vec![0.05], vec![0.04, 0.01], vec![0.01, 0.02, 0.03]];
    LocalTestFamily::new(2, 4, table).expect_err("non-monotone family must be rejected")
}
