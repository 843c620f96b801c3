use clap::Args;
use kfwer::verify::{nonmonotone_self_test, verify, Check, VerifyOptions};

use crate::error::{usage, CliResult};
use crate::procedure::library_error;

const SHOWN_COUNTEREXAMPLES: usize = 10;

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// 4.1, 4.2, 4.3, 4.4, 5.1, hochberg, or all
    #[arg(long, default_value = "all")]
    theorem: String,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Largest number of hypotheses drawn per trial (2..=18)
    #[arg(long, default_value_t = 12)]
    n_max: usize,
    #[arg(long, env = "KFWER_SEED", default_value_t = 0)]
    seed: u64,
    /// Feed a non-monotone family to the validator instead of running trials
    #[arg(long)]
    self_test: bool,
}

/// Returns whether every selected check passed.
pub fn run(args: VerifyArgs) -> CliResult<bool> {
    let checks: Vec<Check> = match args.theorem.as_str() {
        "all" => Check::ALL.to_vec(),
        id => vec![Check::from_id(id).ok_or_else(|| {
            usage(format!(
                "unknown --theorem {id:?}; expected 4.1, 4.2, 4.3, 4.4, 5.1, hochberg or all"
            ))
        })?],
    };
    if !(2..=kfwer::procedures::DEFAULT_EXHAUSTIVE_LIMIT).contains(&args.n_max) {
        return Err(usage(format!(
            "--n-max {} must lie in 2..={}",
            args.n_max,
            kfwer::procedures::DEFAULT_EXHAUSTIVE_LIMIT
        )));
    }
    if args.self_test {
        println!(
            "self-test: non-monotone family rejected by the validator: {}",
            nonmonotone_self_test()
        );
        println!("self-test: no comparison was run");
        return Ok(true);
    }
    let options = VerifyOptions {
        trials: args.trials,
        n_max: args.n_max,
        seed: args.seed,
    };
    let mut all_passed = true;
    for check in checks {
        let report = verify(check, &options).map_err(library_error)?;
        println!("{report}");
        for c in report.counterexamples.iter().take(SHOWN_COUNTEREXAMPLES) {
            println!("{c}");
        }
        if report.counterexamples.len() > SHOWN_COUNTEREXAMPLES {
            println!(
                "... {} more counterexamples not shown",
                report.counterexamples.len() - SHOWN_COUNTEREXAMPLES
            );
        }
        all_passed &= report.passed();
    }
    Ok(all_passed)
}
