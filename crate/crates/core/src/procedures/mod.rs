//! Decision procedures for k-FWER control.
//!
//! Four procedures share one output type: generalized stepdown and stepup on
//! a [`CriticalSchedule`], and exhaustive closed testing and the generalized
//! Hommel shortcut on a [`LocalTestFamily`]. Every procedure rejects the
//! `k - 1` most significant hypotheses unconditionally.

mod closed;
mod constructors;
mod hommel;
mod stepwise;

use std::fmt;
use std::str::FromStr;

pub use closed::{closed_testing_rejections, closed_testing_with_limit, DEFAULT_EXHAUSTIVE_LIMIT};
pub use constructors::{
    constant_family, default_stepup_base, lehmann_romano_schedule, romano_shaikh_schedule,
    scaled_family, simes_family, stepdown_as_family, stepup_as_family,
};
pub use hommel::{estimate_true_nulls, hommel_rejections};
pub use stepwise::{stepdown_rejections, stepup_rejections};

use crate::critical::{CriticalSchedule, LocalTestFamily};
use crate::error::{Error, Result};
use crate::pvalues::PValues;
use crate::rejection::RejectionSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProcedureKind {
    Stepdown,
    Stepup,
    ClosedTesting,
    Hommel,
}

impl ProcedureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProcedureKind::Stepdown => "stepdown",
            ProcedureKind::Stepup => "stepup",
            ProcedureKind::ClosedTesting => "closed",
            ProcedureKind::Hommel => "hommel",
        }
    }

    /// Whether the procedure runs on a double-indexed family.
    pub fn uses_family(self) -> bool {
        matches!(self, ProcedureKind::ClosedTesting | ProcedureKind::Hommel)
    }
}

impl fmt::Display for ProcedureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProcedureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stepdown" => Ok(ProcedureKind::Stepdown),
            "stepup" => Ok(ProcedureKind::Stepup),
            "closed" => Ok(ProcedureKind::ClosedTesting),
            "hommel" => Ok(ProcedureKind::Hommel),
            other => Err(Error::InvalidConfig(format!("unknown procedure '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CriticalValues {
    Schedule(CriticalSchedule),
    Family(LocalTestFamily),
}

impl CriticalValues {
    pub fn k(&self) -> usize {
        match self {
            CriticalValues::Schedule(s) => s.k(),
            CriticalValues::Family(f) => f.k(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            CriticalValues::Schedule(s) => s.n(),
            CriticalValues::Family(f) => f.n(),
        }
    }
}

/// Decisions of one procedure run together with the critical values used.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcedureResult {
    pub kind: ProcedureKind,
    pub critical_values: CriticalValues,
    pub rejections: RejectionSet,
}

/// A procedure bound to its critical values, ready to apply to p-values.
#[derive(Debug, Clone, PartialEq)]
pub enum Procedure {
    Stepdown(CriticalSchedule),
    Stepup(CriticalSchedule),
    ClosedTesting(LocalTestFamily),
    Hommel(LocalTestFamily),
}

impl Procedure {
    pub fn kind(&self) -> ProcedureKind {
        match self {
            Procedure::Stepdown(_) => ProcedureKind::Stepdown,
            Procedure::Stepup(_) => ProcedureKind::Stepup,
            Procedure::ClosedTesting(_) => ProcedureKind::ClosedTesting,
            Procedure::Hommel(_) => ProcedureKind::Hommel,
        }
    }

    pub fn k(&self) -> usize {
        self.critical_values().k()
    }

    pub fn n(&self) -> usize {
        self.critical_values().n()
    }

    pub fn critical_values(&self) -> CriticalValues {
        match self {
            Procedure::Stepdown(s) | Procedure::Stepup(s) => CriticalValues::Schedule(s.clone()),
            Procedure::ClosedTesting(f) | Procedure::Hommel(f) => CriticalValues::Family(f.clone()),
        }
    }

    /// Decisions only, without cloning the critical values.
    pub fn rejections(&self, p: &PValues) -> Result<RejectionSet> {
        match self {
            Procedure::Stepdown(s) => stepdown_rejections(p, s),
            Procedure::Stepup(s) => stepup_rejections(p, s),
            Procedure::ClosedTesting(f) => closed_testing_rejections(p, f),
            Procedure::Hommel(f) => hommel_rejections(p, f),
        }
    }

    pub fn apply(&self, p: &PValues) -> Result<ProcedureResult> {
        Ok(ProcedureResult {
            kind: self.kind(),
            critical_values: self.critical_values(),
            rejections: self.rejections(p)?,
        })
    }
}

pub fn stepdown(p: &PValues, s: &CriticalSchedule) -> Result<ProcedureResult> {
    Procedure::Stepdown(s.clone()).apply(p)
}

pub fn stepup(p: &PValues, s: &CriticalSchedule) -> Result<ProcedureResult> {
    Procedure::Stepup(s.clone()).apply(p)
}

pub fn closed_testing(p: &PValues, f: &LocalTestFamily) -> Result<ProcedureResult> {
    Procedure::ClosedTesting(f.clone()).apply(p)
}

pub fn generalized_hommel(p: &PValues, f: &LocalTestFamily) -> Result<ProcedureResult> {
    Procedure::Hommel(f.clone()).apply(p)
}
