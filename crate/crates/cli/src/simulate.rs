use std::path::PathBuf;

use clap::{Args, ValueEnum};
use kfwer::{estimate_kfwer, Dependence, ProcedureKind, SimulationConfig};
use serde::Serialize;

use crate::error::{usage, CliResult};
use crate::procedure::{self, library_error, ProcedureArg, ScheduleArg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DependenceArg {
    Independent,
    Equicorrelated,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    n: usize,
    /// Number of true nulls; the first ones are null [default: n]
    #[arg(long)]
    true_nulls: Option<usize>,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = ProcedureArg::Stepdown)]
    procedure: ProcedureArg,
    /// lehmann-romano, romano-shaikh, constant, or file:PATH
    #[arg(long, default_value = "lehmann-romano")]
    schedule: ScheduleArg,
    /// Base shape for romano-shaikh [default: k / (n - i + k)]
    #[arg(long)]
    base_schedule: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000)]
    reps: u64,
    #[arg(long, value_enum, default_value_t = DependenceArg::Independent)]
    dependence: DependenceArg,
    /// Common correlation of the test statistics, in [0, 1)
    #[arg(long)]
    rho: Option<f64>,
    /// Mean shift of the false-null test statistics
    #[arg(long, default_value_t = 3.0)]
    delta: f64,
    #[arg(long, env = "KFWER_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Serialize)]
struct ConfigEcho {
    n: usize,
    true_nulls: usize,
    k: usize,
    alpha: f64,
    procedure: &'static str,
    schedule: String,
    base_schedule: Option<String>,
    reps: u64,
    dependence: DependenceArg,
    rho: f64,
    delta: f64,
    seed: u64,
}

#[derive(Serialize)]
struct SimulateReport {
    kfwer_estimate: f64,
    std_error: f64,
    avg_power: Option<f64>,
    config_echo: ConfigEcho,
}

pub fn run(args: SimulateArgs) -> CliResult<()> {
    procedure::check_flags(&args.schedule, args.base_schedule.as_deref(), false)?;
    let true_nulls = args.true_nulls.unwrap_or(args.n);
    if args.n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    if true_nulls > args.n {
        return Err(usage(format!(
            "--true-nulls {true_nulls} exceeds --n {}",
            args.n
        )));
    }
    if args.reps == 0 {
        return Err(usage("--reps must be at least 1"));
    }
    let dependence = match (args.dependence, args.rho) {
        (DependenceArg::Independent, None) => Dependence::Independent,
        (DependenceArg::Independent, Some(_)) => {
            return Err(usage("--rho requires --dependence equicorrelated"))
        }
        (DependenceArg::Equicorrelated, None) => {
            return Err(usage("--dependence equicorrelated requires --rho"))
        }
        (DependenceArg::Equicorrelated, Some(rho)) => {
            if !(0.0..1.0).contains(&rho) {
                return Err(usage(format!("--rho {rho} must lie in [0, 1)")));
            }
            Dependence::Equicorrelated(rho)
        }
    };
    if !args.delta.is_finite() {
        return Err(usage("--delta must be finite"));
    }
    let kind = ProcedureKind::from(args.procedure);
    let proc = procedure::build(
        kind,
        &args.schedule,
        args.base_schedule.as_deref(),
        args.k,
        args.n,
        args.alpha,
    )?;
    let config = SimulationConfig {
        n: args.n,
        n_true: true_nulls,
        k: args.k,
        alpha: args.alpha,
        procedure: proc,
        reps: args.reps,
        dependence,
        delta: args.delta,
        seed: args.seed,
    };
    let result = estimate_kfwer(&config).map_err(library_error)?;
    let report = SimulateReport {
        kfwer_estimate: result.kfwer_estimate,
        std_error: result.std_error,
        avg_power: result.avg_power,
        config_echo: ConfigEcho {
            n: args.n,
            true_nulls,
            k: args.k,
            alpha: args.alpha,
            procedure: kind.as_str(),
            schedule: args.schedule.to_string(),
            base_schedule: args.base_schedule.map(|p| p.display().to_string()),
            reps: args.reps,
            dependence: args.dependence,
            rho: dependence.rho(),
            delta: args.delta,
            seed: args.seed,
        },
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(())
}
