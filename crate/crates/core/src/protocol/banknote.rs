//! Banknotes and their per-round carriers.

use crate::qcore::{QubitState, TwoQubitPureState};
use crate::protocol::key::SerialNumber;
use crate::Bit;

/// What one round of a banknote physically carries. An honest mint
/// produces a bare qubit; malicious mints may attach a hidden classical
/// register (extra dimensions smuggled past the qubit bound) or keep an
/// entangled partner of the emitted qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundCarrier {
    /// The qubit handed to the client (for an entangled round, the
    /// reduced state of the emitted half).
    pub state: QubitState,
    /// Classical bits imprinted beside the qubit; `None` for honest mints.
    pub hidden: Option<Vec<Bit>>,
    /// Joint pure state whose first qubit is `state`'s purification,
    /// the second half staying with the adversary; `None` for honest mints.
    pub partner: Option<TwoQubitPureState>,
}

impl RoundCarrier {
    /// A bare honest carrier.
    pub fn honest(state: QubitState) -> Self {
        RoundCarrier {
            state,
            hidden: None,
            partner: None,
        }
    }
}

/// A minted banknote: serial number plus one carrier per key round.
/// Verification destroys the note — the consumed flag flips and the
/// carriers are erased, so a second measurement attempt has nothing to
/// measure.
#[derive(Debug, Clone, PartialEq)]
pub struct Banknote {
    serial: SerialNumber,
    rounds: Vec<RoundCarrier>,
    consumed: bool,
}

impl Banknote {
    pub fn new(serial: SerialNumber, rounds: Vec<RoundCarrier>) -> Self {
        Banknote {
            serial,
            rounds,
            consumed: false,
        }
    }

    pub fn serial(&self) -> &SerialNumber {
        &self.serial
    }

    pub fn rounds(&self) -> &[RoundCarrier] {
        &self.rounds
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    pub fn is_consumed(&self) -> bool {
        self.consumed
    }

    /// True when every round looks like an honest mint produced it:
    /// no hidden register, no entangled partner.
    pub fn is_honest_form(&self) -> bool {
        self.rounds
            .iter()
            .all(|r| r.hidden.is_none() && r.partner.is_none())
    }

    /// Destroys the note after a verification: flags it consumed and
    /// erases the carriers.
    pub(crate) fn consume(&mut self) {
        self.consumed = true;
        self.rounds.clear();
    }

    /// Rebuilds a note from wire data, consumed flag included.
    pub(crate) fn from_parts(
        serial: SerialNumber,
        rounds: Vec<RoundCarrier>,
        consumed: bool,
    ) -> Self {
        Banknote {
            serial,
            rounds,
            consumed,
        }
    }
}
