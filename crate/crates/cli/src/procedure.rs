//! Maps `--procedure` / `--schedule` flags onto a configured procedure.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use kfwer::{
    constant_family, default_stepup_base, lehmann_romano_schedule, romano_shaikh_schedule,
    scaled_family, stepdown_as_family, CriticalSchedule, Error, Procedure, ProcedureKind,
};

use crate::error::{data, usage, CliError, CliResult};
use crate::input::{read_critical_file, schedule_from_list, CriticalFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProcedureArg {
    Stepdown,
    Stepup,
    Hommel,
    Closed,
}

impl From<ProcedureArg> for ProcedureKind {
    fn from(p: ProcedureArg) -> Self {
        match p {
            ProcedureArg::Stepdown => ProcedureKind::Stepdown,
            ProcedureArg::Stepup => ProcedureKind::Stepup,
            ProcedureArg::Hommel => ProcedureKind::Hommel,
            ProcedureArg::Closed => ProcedureKind::ClosedTesting,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScheduleArg {
    LehmannRomano,
    RomanoShaikh,
    Constant,
    File(PathBuf),
}

impl FromStr for ScheduleArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lehmann-romano" => Ok(ScheduleArg::LehmannRomano),
            "romano-shaikh" => Ok(ScheduleArg::RomanoShaikh),
            "constant" => Ok(ScheduleArg::Constant),
            _ => match s.strip_prefix("file:") {
                Some(path) if !path.is_empty() => Ok(ScheduleArg::File(path.into())),
                _ => Err(format!(
                    "unknown schedule {s:?}; expected lehmann-romano, romano-shaikh, constant or file:PATH"
                )),
            },
        }
    }
}

impl fmt::Display for ScheduleArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScheduleArg::LehmannRomano => f.write_str("lehmann-romano"),
            ScheduleArg::RomanoShaikh => f.write_str("romano-shaikh"),
            ScheduleArg::Constant => f.write_str("constant"),
            ScheduleArg::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// Checks flag combinations that can be decided before reading any data.
pub fn check_flags(
    schedule: &ScheduleArg,
    base: Option<&Path>,
    base_required: bool,
) -> CliResult<()> {
    match (schedule, base) {
        (ScheduleArg::RomanoShaikh, None) if base_required => {
            Err(usage("--schedule romano-shaikh requires --base-schedule"))
        }
        (ScheduleArg::RomanoShaikh, _) | (_, None) => Ok(()),
        (_, Some(_)) => Err(usage(
            "--base-schedule only applies to --schedule romano-shaikh",
        )),
    }
}

/// Exit-code classification of library errors.
pub fn library_error(e: Error) -> CliError {
    match e {
        Error::KOutOfRange { .. }
        | Error::AlphaOutOfRange(_)
        | Error::TooLarge { .. }
        | Error::InvalidConfig(_) => usage(e.to_string()),
        other => data(other.to_string()),
    }
}

fn base_schedule(base: Option<&Path>, k: usize, n: usize) -> CliResult<CriticalSchedule> {
    match base {
        None => default_stepup_base(k, n).map_err(library_error),
        Some(path) => match read_critical_file(path)? {
            CriticalFile::Schedule(list) => schedule_from_list(&list, k, n),
            CriticalFile::Family(_) => Err(usage("--base-schedule must list one value per line")),
        },
    }
}

/// Builds the procedure for `n` hypotheses.
///
/// Stepwise procedures take a single-indexed schedule; `constant` is the
/// flat schedule `k * alpha / n`. Hommel and closed testing take a family:
/// `lehmann-romano` maps to the family whose closed testing procedure is the
/// Lehmann-Romano stepdown, `romano-shaikh` to the scaled family of the base
/// schedule, and `constant` to `k * alpha / m`.
pub fn build(
    kind: ProcedureKind,
    schedule: &ScheduleArg,
    base: Option<&Path>,
    k: usize,
    n: usize,
    alpha: f64,
) -> CliResult<Procedure> {
    if k < 1 || k > n {
        return Err(usage(Error::KOutOfRange { k, n }.to_string()));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(usage(Error::AlphaOutOfRange(alpha).to_string()));
    }
    if kind == ProcedureKind::ClosedTesting && n > kfwer::procedures::DEFAULT_EXHAUSTIVE_LIMIT {
        return Err(library_error(Error::TooLarge {
            n,
            limit: kfwer::procedures::DEFAULT_EXHAUSTIVE_LIMIT,
        }));
    }
    let lr = || lehmann_romano_schedule(k, n, alpha).map_err(library_error);
    if kind.uses_family() {
        let family = match schedule {
            ScheduleArg::LehmannRomano => stepdown_as_family(&lr()?),
            ScheduleArg::RomanoShaikh => {
                scaled_family(&base_schedule(base, k, n)?, alpha).map_err(library_error)?
            }
            ScheduleArg::Constant => constant_family(k, n, alpha).map_err(library_error)?,
            ScheduleArg::File(path) => match read_critical_file(path)? {
                CriticalFile::Family(table) => table.into_family(k, n)?,
                CriticalFile::Schedule(_) => {
                    return Err(usage(format!(
                    "{} needs a family table (header m,i,alpha); {} is a single-column schedule",
                    kind,
                    path.display()
                )))
                }
            },
        };
        Ok(match kind {
            ProcedureKind::Hommel => Procedure::Hommel(family),
            _ => Procedure::ClosedTesting(family),
        })
    } else {
        let s = match schedule {
            ScheduleArg::LehmannRomano => lr()?,
            ScheduleArg::RomanoShaikh => {
                romano_shaikh_schedule(&base_schedule(base, k, n)?, alpha).map_err(library_error)?
            }
            ScheduleArg::Constant => {
                let c = k as f64 / n as f64 * alpha;
                CriticalSchedule::new(k, n, vec![c; n - k + 1]).map_err(library_error)?
            }
            ScheduleArg::File(path) => match read_critical_file(path)? {
                CriticalFile::Schedule(list) => schedule_from_list(&list, k, n)?,
                CriticalFile::Family(_) => {
                    return Err(usage(format!(
                        "{kind} needs a single-column schedule; {} is a family table",
                        path.display()
                    )))
                }
            },
        };
        Ok(match kind {
            ProcedureKind::Stepdown => Procedure::Stepdown(s),
            _ => Procedure::Stepup(s),
        })
    }
}
