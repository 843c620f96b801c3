use std::fs;
use std::path::PathBuf;

use clap::Args;
use kfwer::{CriticalValues, Detail, PValues, ProcedureKind};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{data, CliResult};
use crate::input::{parse_pvalues, read_source};
use crate::procedure::{self, library_error, ProcedureArg, ScheduleArg};

#[derive(Debug, Args)]
pub struct TestArgs {
    /// Control the probability of k or more false rejections
    #[arg(long)]
    k: usize,
    #[arg(long)]
    alpha: f64,
    #[arg(long, value_enum)]
    procedure: ProcedureArg,
    /// lehmann-romano, romano-shaikh, constant, or file:PATH
    #[arg(long)]
    schedule: ScheduleArg,
    /// P-values, one per line or CSV with header `id,p`; stdin when omitted
    #[arg(long)]
    input: Option<PathBuf>,
    /// Base shape for romano-shaikh, one value per line
    #[arg(long)]
    base_schedule: Option<PathBuf>,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Serialize)]
struct TestReport {
    n: usize,
    k: usize,
    alpha: f64,
    procedure: &'static str,
    critical_values: Value,
    rejected: Vec<usize>,
    detail: Value,
}

pub fn critical_values_json(cv: &CriticalValues) -> Value {
    match cv {
        CriticalValues::Schedule(s) => json!(s.alphas()),
        CriticalValues::Family(f) => json!(f.rows()),
    }
}

pub fn run(args: TestArgs) -> CliResult<()> {
    procedure::check_flags(&args.schedule, args.base_schedule.as_deref(), true)?;
    let kind = ProcedureKind::from(args.procedure);
    let text = read_source(args.input.as_deref())?;
    let values = parse_pvalues(&text)?;
    let n = values.len();
    let proc = procedure::build(
        kind,
        &args.schedule,
        args.base_schedule.as_deref(),
        args.k,
        n,
        args.alpha,
    )?;
    let p = PValues::new(values).map_err(|e| data(e.to_string()))?;
    let result = proc.apply(&p).map_err(library_error)?;
    let detail = match result.rejections.detail() {
        Detail::Cutoff(r) => json!({ "r": r }),
        Detail::TrueNullEstimate(j) => json!({ "j_hat": j }),
        Detail::AcceptedCardinalities(_) => Value::Null,
    };
    let report = TestReport {
        n,
        k: args.k,
        alpha: args.alpha,
        procedure: kind.as_str(),
        critical_values: critical_values_json(&result.critical_values),
        rejected: result.rejections.indices().iter().map(|h| h + 1).collect(),
        detail,
    };
    let mut out = serde_json::to_string_pretty(&report).expect("report serializes");
    out.push('\n');
    match args.output {
        Some(path) => fs::write(&path, out).map_err(|e| data(format!("{}: {e}", path.display()))),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}
