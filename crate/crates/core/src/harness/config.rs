//! Experiment configuration and the forgery estimate it produces.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::adversary::{BoxFile, CollusionBox, StrategyFile};
use crate::{bounds, Error, Result};

/// Which adversary the experiment runs.
#[derive(Debug, Clone, PartialEq)]
pub enum StrategySelector {
    /// Honest single-note client: a baseline, not a forgery (with one
    /// branch the estimate is the plain acceptance rate).
    Honest,
    /// Hidden-register cloning. The cheating terminal reads the register,
    /// so the adversary knows the challenged bit exactly — the point of
    /// the demonstration is that only the dimension bound forbids this.
    Attack1,
    /// Superdense-coding key extraction: the adversary holds the full key.
    Attack2,
    /// Best one-classical-bit strategy at both branches.
    Attack3,
    /// Honest Alice, copying Frederick.
    CopyBox,
    /// A collusion box supplied in memory.
    CustomBox(CollusionBox),
    /// A collusion box loaded from an sdi-box/1 JSON file.
    BoxFile(PathBuf),
    /// A quantum collusion strategy loaded from an sdi-strategy/1 JSON
    /// file and evaluated into its box.
    StrategyFile(PathBuf),
}

/// How answers reach the bank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerificationMode {
    AtBank,
    /// Classical channel with a per-round lying map applied to answers.
    AtDistance(LiarSelector),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LiarSelector {
    Identity,
    ConstantFlip,
    EchoChallenge,
}

/// Full description of one Monte Carlo experiment.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub n: usize,
    pub theta: f64,
    pub eta: f64,
    pub k: usize,
    pub trials: u64,
    pub master_seed: u64,
    pub strategy: StrategySelector,
    pub verification: VerificationMode,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be >= 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        if self.k == 0 {
            return Err(Error::InvalidParameter("k must be >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.theta) {
            return Err(Error::InvalidParameter(format!(
                "theta must lie in [0, 1], got {}",
                self.theta
            )));
        }
        Ok(())
    }
}

/// The strategy with files resolved, ready to answer challenges.
#[derive(Debug, Clone)]
pub enum ResolvedStrategy {
    Honest,
    /// The adversary knows both key bits of every round (attack_1 with
    /// the register consulted, or attack_2 after key extraction).
    PerfectKnowledge,
    Boxed(CollusionBox),
}

pub fn resolve_strategy(selector: &StrategySelector) -> Result<ResolvedStrategy> {
    Ok(match selector {
        StrategySelector::Honest => ResolvedStrategy::Honest,
        StrategySelector::Attack1 | StrategySelector::Attack2 => {
            ResolvedStrategy::PerfectKnowledge
        }
        StrategySelector::Attack3 => {
            let (source, terminal, _) = crate::adversary::best_classical_strategy();
            ResolvedStrategy::Boxed(crate::adversary::classical_collusion_box(
                source.encoding,
                terminal.decoding,
                terminal.decoding,
            ))
        }
        StrategySelector::CopyBox => ResolvedStrategy::Boxed(crate::adversary::copy_box()),
        StrategySelector::CustomBox(b) => ResolvedStrategy::Boxed(b.clone()),
        StrategySelector::BoxFile(path) => {
            let file: BoxFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            ResolvedStrategy::Boxed(file.into_box()?)
        }
        StrategySelector::StrategyFile(path) => {
            let file: StrategyFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            let strategy = file.into_strategy()?;
            ResolvedStrategy::Boxed(crate::adversary::box_from_quantum_strategy(&strategy)?)
        }
    })
}

/// Monte Carlo forgery estimate with its analytic companion bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForgeryEstimate {
    /// Trials whose guess counts were strictly above theta*n at two or
    /// more branches (the forgery-set definition). With k = 1 this is
    /// plain single-verification acceptance.
    pub successes: u64,
    /// Same event under the protocol's >= acceptance rule; differs from
    /// `successes` only at the exact threshold boundary.
    pub successes_lenient: u64,
    pub trials: u64,
    /// successes / trials.
    pub estimate: f64,
    /// 95% Wilson score interval around the estimate.
    pub confidence_interval: (f64, f64),
    /// Theorem bound at (n, eta, k), clamped to [0, 1]; 1.0 when eta is
    /// outside the theorem's range.
    pub analytic_bound: f64,
    /// True when the pre-clamp bound is >= 1 (a vacuous guarantee).
    pub bound_trivial: bool,
}

impl ForgeryEstimate {
    pub(crate) fn from_counts(
        successes: u64,
        successes_lenient: u64,
        trials: u64,
        n: usize,
        eta: f64,
        k: usize,
    ) -> Self {
        let estimate = successes as f64 / trials as f64;
        let (analytic_bound, bound_trivial) =
            if eta > 0.0 && eta <= bounds::eta_max() {
                (
                    bounds::forgery_bound(n as u64, eta, k as u64)
                        .expect("validated parameters"),
                    bounds::forgery_bound_is_trivial(n as u64, eta, k as u64),
                )
            } else {
                (1.0, true)
            };
        ForgeryEstimate {
            successes,
            successes_lenient,
            trials,
            estimate,
            confidence_interval: wilson_interval(successes, trials),
            analytic_bound,
            bound_trivial,
        }
    }
}

/// 95% Wilson score interval; well behaved at zero successes, which
/// dominate secure configurations.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    let z = 1.959963984540054f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}
