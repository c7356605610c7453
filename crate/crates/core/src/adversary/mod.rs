//! The attack laboratory: every joined attack on the scheme, the
//! collusion-box model of qubit-by-qubit two-branch attacks, the
//! XOR-scenario transform with its guess counters, and the
//! device-independent no-go construction.

mod attacks;
mod collusion;
mod nogo;
mod xor;

pub use attacks::{
    attack1_mint_and_clone, attack2_superdense, attack3_basis_revealing_success,
    best_classical_strategy, classical_collusion_box, classical_strategy_success,
    key_bits_from_wiesner, recover_key_from_note, wiesner_basis, wiesner_value, wiesner_verify,
    ClassicalSource, ClassicalTerminal, HiddenRegisterSource, HiddenRegisterTerminal,
    SuperdenseSource,
};
pub use collusion::{
    box_from_quantum_strategy, copy_box, BoxFile, CollusionBox, QuantumCollusionStrategy,
    StrategyFile, BOX_FORMAT, STRATEGY_FORMAT,
};
pub use nogo::{nogo_demo, BranchLaw, HonestLaw, NogoReport};
pub use xor::{
    guess_counters, joint_in_forgery_set, xor_in_forgery_set, xor_transform, xor_untransform,
    GuessCounters, JointRound, JointTranscript, XorRound, XorTranscript,
};
