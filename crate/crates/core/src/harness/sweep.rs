//! Parameter sweeps: one row per grid point carrying the analytic bounds
//! and, when trials are requested, an empirical forgery estimate.

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::monte_carlo::monte_carlo_forgery;
use crate::seedmix;
use crate::{bounds, Error, Result};

/// The axis a sweep walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepParameter {
    N,
    Eta,
    Theta,
    K,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::N => "n",
            SweepParameter::Eta => "eta",
            SweepParameter::Theta => "theta",
            SweepParameter::K => "k",
        }
    }
}

impl std::str::FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n" => Ok(SweepParameter::N),
            "eta" => Ok(SweepParameter::Eta),
            "theta" => Ok(SweepParameter::Theta),
            "k" => Ok(SweepParameter::K),
            other => Err(Error::InvalidParameter(format!(
                "unknown sweep parameter {other:?} (expected n, eta, theta or k)"
            ))),
        }
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    pub n: usize,
    pub theta: f64,
    pub eta: f64,
    pub k: usize,
    pub beta: f64,
    pub epsilon_typicality: f64,
    pub forgery_bound: f64,
    pub forgery_bound_trivial: bool,
    /// Empirical columns; absent when the sweep runs with zero trials.
    pub estimate: Option<f64>,
    pub ci_lo: Option<f64>,
    pub ci_hi: Option<f64>,
    pub successes: Option<u64>,
}

/// A finished sweep, renderable as CSV.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepTable {
    pub parameter: String,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub const CSV_HEADER: &'static str = "parameter,value,n,theta,eta,k,beta,\
epsilon_typicality,forgery_bound,forgery_bound_trivial,trials,successes,estimate,ci_lo,ci_hi";

    pub fn to_csv(&self, trials: u64) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
            let successes = row
                .successes
                .map(|s| s.to_string())
                .unwrap_or_default();
            let trials_cell = if row.estimate.is_some() {
                trials.to_string()
            } else {
                String::new()
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                self.parameter,
                row.value,
                row.n,
                row.theta,
                row.eta,
                row.k,
                row.beta,
                row.epsilon_typicality,
                row.forgery_bound,
                row.forgery_bound_trivial,
                trials_cell,
                successes,
                opt(row.estimate),
                opt(row.ci_lo),
                opt(row.ci_hi),
            ));
        }
        out
    }
}

/// Evaluates the grid. `values` are interpreted per parameter (cast to
/// integers for n and k). With `cfg.trials` > 0 every point also runs a
/// Monte Carlo estimate on its own derived seed, so the whole table is a
/// deterministic function of the config.
pub fn sweep(
    parameter: SweepParameter,
    values: &[f64],
    cfg: &ExperimentConfig,
    with_empirical: bool,
) -> Result<SweepTable> {
    if values.is_empty() {
        return Err(Error::EmptyRange);
    }
    let mut rows = Vec::with_capacity(values.len());
    for (index, &value) in values.iter().enumerate() {
        let mut point = cfg.clone();
        match parameter {
            SweepParameter::N => {
                if value < 1.0 {
                    return Err(Error::InvalidParameter(format!(
                        "n grid point {value} below 1"
                    )));
                }
                point.n = value.round() as usize;
            }
            SweepParameter::Eta => point.eta = value,
            SweepParameter::Theta => point.theta = value,
            SweepParameter::K => {
                if value < 1.0 {
                    return Err(Error::InvalidParameter(format!(
                        "k grid point {value} below 1"
                    )));
                }
                point.k = value.round() as usize;
            }
        }
        point.validate()?;

        let beta = bounds::beta(point.eta.max(0.0))?;
        let epsilon_typicality = if point.eta > 0.0 {
            bounds::typicality_epsilon(point.eta, point.n as u64)?
        } else {
            1.0
        };
        let (forgery_bound, trivial) = if point.eta > 0.0 && point.eta <= bounds::eta_max() {
            (
                bounds::forgery_bound(point.n as u64, point.eta, point.k as u64)?,
                bounds::forgery_bound_is_trivial(point.n as u64, point.eta, point.k as u64),
            )
        } else {
            (1.0, true)
        };

        let empirical = if with_empirical {
            point.master_seed = seedmix::splitmix64(cfg.master_seed ^ (index as u64 + 1));
            Some(monte_carlo_forgery(&point)?)
        } else {
            None
        };

        rows.push(SweepRow {
            value,
            n: point.n,
            theta: point.theta,
            eta: point.eta,
            k: point.k,
            beta,
            epsilon_typicality,
            forgery_bound,
            forgery_bound_trivial: trivial,
            estimate: empirical.as_ref().map(|e| e.estimate),
            ci_lo: empirical.as_ref().map(|e| e.confidence_interval.0),
            ci_hi: empirical.as_ref().map(|e| e.confidence_interval.1),
            successes: empirical.as_ref().map(|e| e.successes),
        });
    }
    Ok(SweepTable {
        parameter: parameter.name().to_owned(),
        rows,
    })
}

/// Evenly spaced grid including both endpoints.
pub fn linspace(from: f64, to: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::EmptyRange);
    }
    if steps == 1 {
        return Ok(vec![from]);
    }
    let step = (to - from) / (steps - 1) as f64;
    Ok((0..steps).map(|i| from + step * i as f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::{StrategySelector, VerificationMode};

    fn cfg() -> ExperimentConfig {
        ExperimentConfig {
            n: 463018,
            theta: 0.8475,
            eta: bounds::eta_max(),
            k: 1,
            trials: 10,
            master_seed: 7,
            strategy: StrategySelector::CopyBox,
            verification: VerificationMode::AtBank,
        }
    }

    #[test]
    fn eta_sweep_bound_crosses_one_at_eta_max() {
        let values = linspace(bounds::eta_max() / 5.0, bounds::eta_max(), 5).unwrap();
        let table = sweep(SweepParameter::Eta, &values, &cfg(), false).unwrap();
        let last = table.rows.last().unwrap();
        assert!(!last.forgery_bound_trivial);
        assert!(last.forgery_bound < 1.0);
        for row in &table.rows[..table.rows.len() - 1] {
            assert!(row.forgery_bound_trivial, "eta {} should be trivial", row.eta);
            assert_eq!(row.forgery_bound, 1.0);
        }
    }

    #[test]
    fn theta_sweep_honest_acceptance_transitions_near_p_q() {
        let mut config = cfg();
        config.n = 10_000;
        config.k = 1;
        config.trials = 40;
        config.strategy = StrategySelector::Honest;
        let values = vec![0.75, 0.80, 0.83, 0.845, 0.862, 0.88];
        let table = sweep(SweepParameter::Theta, &values, &config, true).unwrap();
        let estimates: Vec<f64> = table.rows.iter().map(|r| r.estimate.unwrap()).collect();
        assert_eq!(estimates[0], 1.0, "far below P_Q everything is accepted");
        assert_eq!(*estimates.last().unwrap(), 0.0, "above P_Q nothing passes");
        // Monotone nonincreasing acceptance along the sweep.
        for pair in estimates.windows(2) {
            assert!(pair[0] >= pair[1] - 1e-12, "estimates {estimates:?}");
        }
    }

    #[test]
    fn csv_has_header_and_rows() {
        let values = vec![0.001, 0.002];
        let table = sweep(SweepParameter::Eta, &values, &cfg(), false).unwrap();
        let csv = table.to_csv(0);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), SweepTable::CSV_HEADER);
        assert_eq!(lines.count(), 2);
    }

    #[test]
    fn empty_range_rejected() {
        assert!(matches!(
            sweep(SweepParameter::Eta, &[], &cfg(), false),
            Err(Error::EmptyRange)
        ));
        assert!(linspace(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn sweep_is_deterministic() {
        let mut config = cfg();
        config.n = 1000;
        config.trials = 20;
        let values = vec![0.001, 0.002];
        let a = sweep(SweepParameter::Eta, &values, &config, true).unwrap();
        let b = sweep(SweepParameter::Eta, &values, &config, true).unwrap();
        assert_eq!(a.to_csv(20), b.to_csv(20));
    }
}
