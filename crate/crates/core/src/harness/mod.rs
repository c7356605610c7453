//! Experiment orchestration: seeded Monte Carlo forgery runs, exact
//! small-n enumeration, concentration audits and parameter sweeps.
//!
//! Randomness contract: a master seed derives one private ChaCha stream
//! per (domain, trial) pair, so identical configurations produce
//! bit-identical results at any level of concurrency.

mod audit;
mod config;
mod exact;
mod monte_carlo;
mod sweep;

pub use audit::{concentration_audit, ConcentrationReport};
pub use config::{
    resolve_strategy, wilson_interval, ExperimentConfig, ForgeryEstimate, LiarSelector,
    ResolvedStrategy, StrategySelector, VerificationMode,
};
pub use exact::{
    exact_forgery_small_n, exact_forgery_xor_scenario, xor_equivalence_test, ExactForgery,
    XorEquivalence, MAX_ENUMERATION_N,
};
pub use monte_carlo::monte_carlo_forgery;
pub use sweep::{linspace, sweep, SweepParameter, SweepRow, SweepTable};
