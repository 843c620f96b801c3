//! Multiple testing procedures that control the generalized familywise
//! error rate (k-FWER), the probability of `k` or more false rejections.
//!
//! The crate provides
//!
//! * generalized stepdown and stepup procedures on a [`CriticalSchedule`],
//! * exhaustive generalized closed testing and the generalized Hommel
//!   shortcut on a symmetric [`LocalTestFamily`],
//! * the marginal probability bounds used to certify local tests,
//! * a Monte Carlo simulator for realized k-FWER and power, and
//! * a randomized checker for the dominance and equivalence relations
//!   between the procedures, using closed testing as the oracle.
//!
//! ```
//! use kfwer::{lehmann_romano_schedule, stepdown, PValues};
//!
//! let p = PValues::new(vec![0.04, 0.001, 0.2, 0.015, 0.8]).unwrap();
//! let schedule = lehmann_romano_schedule(2, 5, 0.05).unwrap();
//! let result = stepdown(&p, &schedule).unwrap();
//! assert_eq!(result.rejections.indices(), vec![1, 3]);
//! ```

pub mod bounds;
pub mod critical;
pub mod error;
pub mod procedures;
pub mod pvalues;
pub mod rejection;
pub mod simulation;
pub mod verify;

pub use bounds::{
    evaluate_local_test, order_statistic_bound, stepup_normalizer, type1_bound, BoundInput,
};
pub use critical::{
    check_diagonal_condition, validate_family, validate_schedule, CriticalSchedule, LocalTestFamily,
};
pub use error::{Error, Result};
pub use procedures::{
    closed_testing, constant_family, default_stepup_base, estimate_true_nulls, generalized_hommel,
    lehmann_romano_schedule, romano_shaikh_schedule, scaled_family, simes_family, stepdown,
    stepdown_as_family, stepup, stepup_as_family, CriticalValues, Procedure, ProcedureKind,
    ProcedureResult,
};
pub use pvalues::{order_pvalues, PValues};
pub use rejection::{Detail, RejectionSet};
pub use simulation::{
    estimate_kfwer, generate_pvalues, normal_upper_tail, Dependence, SimulationConfig,
    SimulationResult,
};
