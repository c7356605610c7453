//! Simulator, adversary laboratory and analytic security-bound toolkit for a
//! semi-device-independent (SDI) private-key quantum money scheme.
//!
//! The crate is organised around six subsystems:
//!
//! * [`qcore`] — exact single-qubit density-matrix simulation (Born rule,
//!   POVMs, sampling) plus the minimal two-qubit machinery (Bell pairs,
//!   superdense coding) the adversary module needs.
//! * [`protocol`] — the money scheme itself: key registry shared by the
//!   bank branches, minting through pluggable sources, and threshold
//!   verification at the bank or at a distance.
//! * [`adversary`] — the attack laboratory: hidden-register cloning,
//!   superdense key extraction, classical one-bit strategies, collusion
//!   boxes for two-branch attacks, and the XOR-scenario transform with its
//!   guess-counter bookkeeping.
//! * [`optimizer`] — derivative-free search over qubit strategies that
//!   empirically confirms the single- and two-party guessing bounds.
//! * [`bounds`] — closed-form constants and bound functions (acceptance
//!   threshold line, typicality and forgery bounds, qubit-count solvers).
//! * [`harness`] — experiment orchestration: seeded Monte Carlo forgery
//!   runs, exact small-n enumeration, concentration audits and parameter
//!   sweeps.

pub mod adversary;
pub mod bounds;
pub mod error;
pub mod harness;
pub mod optimizer;
pub mod protocol;
pub mod qcore;

pub use error::Error;

/// Classical bit, stored as `0` or `1`.
///
/// Plain `u8` keeps XOR arithmetic and `y[x]`-style indexing terse; all
/// constructors that accept bits from the outside validate the range.
pub type Bit = u8;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Numerical tolerance for matrix invariants (hermiticity, trace,
/// positivity, POVM completeness). 2x2 arithmetic is well-conditioned, so
/// a tight tolerance catches bugs instead of hiding them.
pub const MATRIX_TOL: f64 = 1e-12;
pub(crate) mod seedmix;
