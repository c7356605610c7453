//! The money scheme: shared-key registry across bank branches, minting
//! via pluggable per-round sources, threshold verification at the bank
//! and at a distance, and banknote lifecycle (single use, challenge
//! caching on re-verification).

mod banknote;
pub mod json;
mod key;
mod registry;
mod strategies;
mod verify;

pub use banknote::{Banknote, RoundCarrier};
pub use key::{derive_key, generate_key, SecretKey, SerialNumber};
pub use registry::{mint_unregistered, BankRegistry};
pub use strategies::{
    honest_measurement, honest_source, honest_state, honest_terminal, ConstantFlipLiar,
    EchoChallengeLiar, HonestSource, HonestTerminal, IdentityLiar, LyingStrategy, SourceStrategy,
    TerminalStrategy,
};
pub use verify::{
    acceptance_statistic, verify_at_bank, verify_at_distance, Transcript, TranscriptRound,
    VerificationResult,
};
