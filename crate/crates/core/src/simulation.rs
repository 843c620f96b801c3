//! Monte Carlo estimation of the realized k-FWER and average power.
//!
//! Latent scores follow an equicorrelated Gaussian model
//! `Z_i = sqrt(rho) W + sqrt(1 - rho) E_i`, false nulls are shifted by
//! `delta`, and p-values are upper-tail normal probabilities `1 - Phi(Z_i)`.
//! True nulls occupy the first `n_true` positions, so their p-values are
//! exactly uniform.
//!
//! Each replication draws from its own ChaCha stream selected by the
//! replication index, so results do not depend on how replications are
//! scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::procedures::Procedure;
use crate::pvalues::PValues;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dependence {
    Independent,
    /// Common correlation `rho` in `[0, 1)` between all latent scores.
    Equicorrelated(f64),
}

impl Dependence {
    pub fn rho(self) -> f64 {
        match self {
            Dependence::Independent => 0.0,
            Dependence::Equicorrelated(rho) => rho,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub n: usize,
    /// True nulls are hypotheses `0..n_true`.
    pub n_true: usize,
    pub k: usize,
    pub alpha: f64,
    pub procedure: Procedure,
    pub reps: u64,
    pub dependence: Dependence,
    /// Mean shift of false-null scores.
    pub delta: f64,
    pub seed: u64,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if self.n_true > self.n {
            return bad(format!("true nulls {} exceed n = {}", self.n_true, self.n));
        }
        if self.k < 1 || self.k > self.n {
            return Err(Error::KOutOfRange {
                k: self.k,
                n: self.n,
            });
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::AlphaOutOfRange(self.alpha));
        }
        if self.reps < 1 {
            return bad("reps must be at least 1".into());
        }
        let rho = self.dependence.rho();
        if !(0.0..1.0).contains(&rho) {
            return bad(format!("rho = {rho} must lie in [0, 1)"));
        }
        if !(self.delta >= 0.0 && self.delta.is_finite()) {
            return bad(format!(
                "delta = {} must be finite and nonnegative",
                self.delta
            ));
        }
        if self.procedure.n() != self.n || self.procedure.k() != self.k {
            return bad(format!(
                "procedure built for k = {}, n = {} but config has k = {}, n = {}",
                self.procedure.k(),
                self.procedure.n(),
                self.k,
                self.n
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    /// Fraction of replications with at least `k` true nulls rejected.
    pub kfwer_estimate: f64,
    /// Binomial standard error `sqrt(est (1 - est) / reps)`.
    pub std_error: f64,
    /// Mean fraction of false nulls rejected; `None` when every null is true.
    pub avg_power: Option<f64>,
    pub reps_run: u64,
}

/// Upper-tail standard normal probability `1 - Phi(z)`.
pub fn normal_upper_tail(z: f64) -> f64 {
    0.5 * libm::erfc(z / std::f64::consts::SQRT_2)
}

fn replication_rng(seed: u64, replication: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replication);
    rng
}

/// P-values of one replication; deterministic in `(config.seed, replication)`.
pub fn generate_pvalues(config: &SimulationConfig, replication: u64) -> Result<PValues> {
    config.validate()?;
    Ok(draw(config, replication))
}

fn draw(config: &SimulationConfig, replication: u64) -> PValues {
    let mut rng = replication_rng(config.seed, replication);
    let rho = config.dependence.rho();
    let common: f64 = if rho > 0.0 {
        StandardNormal.sample(&mut rng)
    } else {
        0.0
    };
    let (shared, own) = (rho.sqrt(), (1.0 - rho).sqrt());
    let values = (0..config.n)
        .map(|i| {
            let e: f64 = StandardNormal.sample(&mut rng);
            let mut z = shared * common + own * e;
            if i >= config.n_true {
                z += config.delta;
            }
            normal_upper_tail(z)
        })
        .collect();
    PValues::new(values).expect("upper-tail probabilities lie in [0, 1]")
}

#[derive(Default, Clone, Copy)]
struct Tally {
    kfwer_hits: u64,
    false_null_rejections: u64,
}

impl Tally {
    fn add(self, other: Tally) -> Tally {
        Tally {
            kfwer_hits: self.kfwer_hits + other.kfwer_hits,
            false_null_rejections: self.false_null_rejections + other.false_null_rejections,
        }
    }
}

/// Runs `config.reps` replications and estimates the k-FWER `P{V >= k}`,
/// where `V` counts rejected true nulls, including any swept into the
/// automatic `k - 1` rejections.
pub fn estimate_kfwer(config: &SimulationConfig) -> Result<SimulationResult> {
    config.validate()?;
    let tally = (0..config.reps)
        .into_par_iter()
        .map(|rep| -> Result<Tally> {
            let p = draw(config, rep);
            let rejections = config.procedure.rejections(&p)?;
            let flags = rejections.flags();
            let v = flags[..config.n_true].iter().filter(|&&r| r).count();
            let power = flags[config.n_true..].iter().filter(|&&r| r).count();
            Ok(Tally {
                kfwer_hits: u64::from(v >= config.k),
                false_null_rejections: power as u64,
            })
        })
        .try_reduce(Tally::default, |a, b| Ok(a.add(b)))?;
    let reps = config.reps as f64;
    let est = tally.kfwer_hits as f64 / reps;
    let n_false = config.n - config.n_true;
    Ok(SimulationResult {
        kfwer_estimate: est,
        std_error: (est * (1.0 - est) / reps).sqrt(),
        avg_power: (n_false > 0)
            .then(|| tally.false_null_rejections as f64 / (reps * n_false as f64)),
        reps_run: config.reps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::CriticalSchedule;
    use crate::procedures::lehmann_romano_schedule;

    fn config(procedure: Procedure, n_true: usize, reps: u64) -> SimulationConfig {
        SimulationConfig {
            n: procedure.n(),
            n_true,
            k: procedure.k(),
            alpha: 0.05,
            procedure,
            reps,
            dependence: Dependence::Independent,
            delta: 0.0,
            seed: 11,
        }
    }

    #[test]
    fn upper_tail_values() {
        assert_eq!(normal_upper_tail(0.0), 0.5);
        assert!((normal_upper_tail(1.959963984540054) - 0.025).abs() < 1e-15);
        assert!((normal_upper_tail(-1.0) - 0.8413447460685429).abs() < 1e-15);
        assert!(normal_upper_tail(40.0) >= 0.0);
        assert!(normal_upper_tail(-40.0) <= 1.0);
    }

    #[test]
    fn never_reject_beyond_auto() {
        let zero = CriticalSchedule::new(3, 6, vec![0.0; 4]).unwrap();
        let res = estimate_kfwer(&config(Procedure::Stepdown(zero), 6, 500)).unwrap();
        assert_eq!(res.kfwer_estimate, 0.0);
        assert_eq!(res.std_error, 0.0);
        assert_eq!(res.avg_power, None);
    }

    #[test]
    fn reject_all_procedure() {
        let all = CriticalSchedule::new(2, 5, vec![1.0; 4]).unwrap();
        let res = estimate_kfwer(&config(Procedure::Stepup(all), 3, 300)).unwrap();
        assert_eq!(res.kfwer_estimate, 1.0);
        assert_eq!(res.avg_power, Some(1.0));
        assert_eq!(res.reps_run, 300);
    }

    #[test]
    fn deterministic_per_replication() {
        let s = lehmann_romano_schedule(1, 3, 0.05).unwrap();
        let mut c = config(Procedure::Stepdown(s), 3, 10);
        c.dependence = Dependence::Equicorrelated(0.5);
        let a = generate_pvalues(&c, 7).unwrap();
        let b = generate_pvalues(&c, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate_pvalues(&c, 8).unwrap());
        c.seed += 1;
        assert_ne!(a, generate_pvalues(&c, 7).unwrap());
    }

    #[test]
    fn huge_signal_drives_false_nulls_to_zero() {
        let s = lehmann_romano_schedule(1, 4, 0.05).unwrap();
        let mut c = config(Procedure::Stepdown(s), 1, 10);
        c.delta = 60.0;
        let p = generate_pvalues(&c, 0).unwrap();
        for &v in &p.values()[1..] {
            assert!(v < 1e-300);
        }
        let res = estimate_kfwer(&c).unwrap();
        assert_eq!(res.avg_power, Some(1.0));
    }

    #[test]
    fn config_validation() {
        let s = lehmann_romano_schedule(2, 4, 0.05).unwrap();
        let base = config(Procedure::Stepdown(s), 4, 10);
        let mut c = base.clone();
        c.n_true = 5;
        assert!(matches!(c.validate(), Err(Error::InvalidConfig(_))));
        let mut c = base.clone();
        c.dependence = Dependence::Equicorrelated(1.0);
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.dependence = Dependence::Equicorrelated(-0.1);
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.delta = -1.0;
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.reps = 0;
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.k = 3;
        assert!(c.validate().is_err());
        let mut c = base;
        c.n = 5;
        c.n_true = 5;
        assert!(c.validate().is_err());
    }

    #[test]
    fn single_replication_is_zero_or_one() {
        let s = lehmann_romano_schedule(1, 5, 0.05).unwrap();
        for seed in 0..20 {
            let mut c = config(Procedure::Stepdown(s.clone()), 5, 1);
            c.seed = seed;
            let est = estimate_kfwer(&c).unwrap().kfwer_estimate;
            assert!(est == 0.0 || est == 1.0);
        }
    }
}
