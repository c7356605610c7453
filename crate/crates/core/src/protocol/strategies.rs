//! Pluggable devices: sources (mints), terminals (measurement devices)
//! and lying strategies for verification at a distance — plus the honest
//! implementations of each.

use std::sync::OnceLock;

use rand::RngCore;

use super::banknote::RoundCarrier;
use crate::qcore::{sample_outcome, Observable, Povm, QubitState};
use crate::Bit;

/// A per-round mint. Structural independence across rounds: the source is
/// handed only round-local inputs, never the rest of the key.
pub trait SourceStrategy: Sync {
    fn prepare(&self, y0: Bit, y1: Bit, rng: &mut dyn RngCore) -> RoundCarrier;

    /// Human-readable name for reports.
    fn name(&self) -> &'static str {
        "source"
    }
}

/// A per-round measurement device. Receives one carrier and the branch's
/// challenge bit, answers one bit.
pub trait TerminalStrategy: Sync {
    fn answer(&self, carrier: &RoundCarrier, x: Bit, rng: &mut dyn RngCore) -> Bit;

    fn name(&self) -> &'static str {
        "terminal"
    }
}

/// Per-round output tampering for verification at a distance: a map
/// (x, a) -> a' applied independently in every round.
pub trait LyingStrategy: Sync {
    fn lie(&self, x: Bit, a: Bit) -> Bit;

    fn name(&self) -> &'static str {
        "liar"
    }
}

/// The four Wiesner states keyed by the round bits:
/// (0,0) -> |0>, (0,1) -> |->, (1,0) -> |+>, (1,1) -> |1>.
pub fn honest_state(y0: Bit, y1: Bit) -> QubitState {
    match (y0, y1) {
        (0, 0) => QubitState::ket0(),
        (0, 1) => QubitState::minus(),
        (1, 0) => QubitState::plus(),
        _ => QubitState::ket1(),
    }
}

/// Honest per-round mint output: the Wiesner state, nothing else.
pub fn honest_source(y0: Bit, y1: Bit) -> RoundCarrier {
    RoundCarrier::honest(honest_state(y0, y1))
}

/// The honest verification observable for challenge `x`:
/// (sigma_z - sigma_x)/sqrt(2) for x = 0, (sigma_z + sigma_x)/sqrt(2) for
/// x = 1, with outcome +1 mapped to answer 0.
///
/// Note the pairing is swapped relative to the textbook M_0/M_1 labels:
/// with the state convention above, this is the unique assignment that
/// guesses y_x with probability cos^2(pi/8) in all eight (state, x)
/// classes — the unswapped pairing averages to 1/2.
pub fn honest_measurement(x: Bit) -> Observable {
    let c = std::f64::consts::FRAC_1_SQRT_2;
    if x == 0 {
        Observable::from_direction([-c, 0.0, c]).expect("unit direction")
    } else {
        Observable::from_direction([c, 0.0, c]).expect("unit direction")
    }
}

/// The two honest POVMs, built once — verification loops draw from them
/// millions of times.
pub(crate) fn honest_povm(x: Bit) -> &'static Povm {
    static POVMS: OnceLock<[Povm; 2]> = OnceLock::new();
    &POVMS.get_or_init(|| [honest_measurement(0).povm(), honest_measurement(1).povm()])
        [x as usize]
}

/// Measures the carrier with [`honest_measurement`], mapping the +1
/// outcome to a = 0 and -1 to a = 1.
pub fn honest_terminal(carrier: &RoundCarrier, x: Bit, rng: &mut dyn RngCore) -> Bit {
    sample_outcome(&carrier.state, honest_povm(x), rng) as Bit
}

/// The honest mint as a strategy object.
#[derive(Debug, Clone, Copy, Default)]
pub struct HonestSource;

impl SourceStrategy for HonestSource {
    fn prepare(&self, y0: Bit, y1: Bit, _rng: &mut dyn RngCore) -> RoundCarrier {
        honest_source(y0, y1)
    }

    fn name(&self) -> &'static str {
        "honest"
    }
}

/// The honest measurement device as a strategy object.
#[derive(Debug, Clone, Copy, Default)]
pub struct HonestTerminal;

impl TerminalStrategy for HonestTerminal {
    fn answer(&self, carrier: &RoundCarrier, x: Bit, rng: &mut dyn RngCore) -> Bit {
        honest_terminal(carrier, x, rng)
    }

    fn name(&self) -> &'static str {
        "honest"
    }
}

/// Passes answers through unchanged.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityLiar;

impl LyingStrategy for IdentityLiar {
    fn lie(&self, _x: Bit, a: Bit) -> Bit {
        a
    }

    fn name(&self) -> &'static str {
        "identity"
    }
}

/// Flips every answer.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConstantFlipLiar;

impl LyingStrategy for ConstantFlipLiar {
    fn lie(&self, _x: Bit, a: Bit) -> Bit {
        a ^ 1
    }

    fn name(&self) -> &'static str {
        "flip"
    }
}

/// Ignores the device and parrots the challenge bit back.
#[derive(Debug, Clone, Copy, Default)]
pub struct EchoChallengeLiar;

impl LyingStrategy for EchoChallengeLiar {
    fn lie(&self, x: Bit, _a: Bit) -> Bit {
        x
    }

    fn name(&self) -> &'static str {
        "echo-challenge"
    }
}
