//! The three joined attacks: hidden-register cloning, superdense-coding
//! key extraction, and the one-classical-bit strategy.

use rand::RngCore;

use crate::protocol::{
    honest_state, mint_unregistered, Banknote, RoundCarrier, SecretKey, SerialNumber,
    SourceStrategy, TerminalStrategy,
};
use crate::qcore::{sample_outcome, singlet_encode_decode, Observable, Povm, QubitState};
use crate::{Bit, Error, Result};

/// Wiesner basis bit of a key round: 0 for the z pair {|0>, |1>}, 1 for
/// the x pair {|+>, |->}.
pub fn wiesner_basis(y0: Bit, y1: Bit) -> Bit {
    y0 ^ y1
}

/// Wiesner value bit: which of the two basis states the round carries.
pub fn wiesner_value(y0: Bit, y1: Bit) -> Bit {
    if y0 ^ y1 == 0 {
        y0
    } else {
        y1
    }
}

/// Inverse of the (basis, value) split.
pub fn key_bits_from_wiesner(basis: Bit, value: Bit) -> (Bit, Bit) {
    if basis == 0 {
        (value, value)
    } else {
        (value ^ 1, value)
    }
}

fn basis_povm(basis: Bit) -> Povm {
    if basis == 0 {
        Observable::sigma_z().povm()
    } else {
        Observable::sigma_x().povm()
    }
}

/// Measurement outcome index -> Wiesner value for [`basis_povm`]:
/// outcome 0 (+1 eigenvalue) is |0> respectively |+>, i.e. value 0.
fn value_from_outcome(outcome: usize) -> Bit {
    outcome as Bit
}

fn state_from_wiesner(basis: Bit, value: Bit) -> QubitState {
    let (y0, y1) = key_bits_from_wiesner(basis, value);
    honest_state(y0, y1)
}

/// attack_1's mint: the honest Wiesner state plus a hidden classical
/// register carrying the basis bit — extra memory smuggled past the
/// qubit dimension bound.
#[derive(Debug, Clone, Copy, Default)]
pub struct HiddenRegisterSource;

impl SourceStrategy for HiddenRegisterSource {
    fn prepare(&self, y0: Bit, y1: Bit, _rng: &mut dyn RngCore) -> RoundCarrier {
        RoundCarrier {
            state: honest_state(y0, y1),
            hidden: Some(vec![wiesner_basis(y0, y1)]),
            partner: None,
        }
    }

    fn name(&self) -> &'static str {
        "attack1"
    }
}

/// Mints one hidden-register note and clones it: each round's basis is
/// read from the hidden register, the qubit is measured in that basis
/// (deterministically, since it is a basis eigenstate), and the state is
/// re-prepared for every copy. All copies share the serial.
pub fn attack1_mint_and_clone(
    key: &SecretKey,
    serial: &SerialNumber,
    copies: usize,
    rng: &mut dyn RngCore,
) -> Result<Vec<Banknote>> {
    if copies == 0 {
        return Err(Error::InvalidParameter("copies must be >= 1".into()));
    }
    let original = mint_unregistered(&HiddenRegisterSource, key, serial.clone(), rng);
    let mut recovered = Vec::with_capacity(original.len());
    for carrier in original.rounds() {
        let basis = carrier
            .hidden
            .as_ref()
            .and_then(|bits| bits.first().copied())
            .ok_or_else(|| Error::Internal("attack_1 carrier lost its hidden register".into()))?;
        let outcome = sample_outcome(&carrier.state, &basis_povm(basis), rng);
        recovered.push((basis, value_from_outcome(outcome)));
    }
    Ok((0..copies)
        .map(|_| {
            let rounds = recovered
                .iter()
                .map(|&(basis, value)| RoundCarrier {
                    state: state_from_wiesner(basis, value),
                    hidden: Some(vec![basis]),
                    partner: None,
                })
                .collect();
            Banknote::new(serial.clone(), rounds)
        })
        .collect())
}

/// Basis-aware Wiesner verification: the bank measures every round in the
/// basis its own key dictates and accepts only if all outcomes match.
/// This is the verifier attack_1 defeats — it never notices extra
/// banknote dimensions.
pub fn wiesner_verify(note: &Banknote, key: &SecretKey, rng: &mut dyn RngCore) -> Result<bool> {
    if key.len() != note.len() {
        return Err(Error::KeyLengthMismatch {
            key: key.len(),
            note: note.len(),
        });
    }
    for (i, carrier) in note.rounds().iter().enumerate() {
        let (y0, y1) = key.round(i);
        let basis = wiesner_basis(y0, y1);
        let want = wiesner_value(y0, y1);
        let outcome = sample_outcome(&carrier.state, &basis_povm(basis), rng);
        if value_from_outcome(outcome) != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The dimension-bound-violating terminal: consults the hidden register,
/// measures in the revealed basis, reconstructs both key bits and answers
/// the challenged one exactly. Falls back to the honest measurement when
/// no register is present.
#[derive(Debug, Clone, Copy, Default)]
pub struct HiddenRegisterTerminal;

impl TerminalStrategy for HiddenRegisterTerminal {
    fn answer(&self, carrier: &RoundCarrier, x: Bit, rng: &mut dyn RngCore) -> Bit {
        match carrier.hidden.as_ref().and_then(|bits| bits.first().copied()) {
            Some(basis) => {
                let outcome = sample_outcome(&carrier.state, &basis_povm(basis), rng);
                let (y0, y1) = key_bits_from_wiesner(basis, value_from_outcome(outcome));
                if x == 0 {
                    y0
                } else {
                    y1
                }
            }
            None => crate::protocol::honest_terminal(carrier, x, rng),
        }
    }

    fn name(&self) -> &'static str {
        "hidden-register"
    }
}

/// attack_2's mint: each round emits one half of a Bell pair carrying the
/// key bits as a local Pauli; the adversary keeps the joint state.
#[derive(Debug, Clone, Copy, Default)]
pub struct SuperdenseSource;

impl SourceStrategy for SuperdenseSource {
    fn prepare(&self, y0: Bit, y1: Bit, _rng: &mut dyn RngCore) -> RoundCarrier {
        let pauli = match (y0, y1) {
            (0, 0) => crate::qcore::Pauli::I.matrix(),
            (1, 0) => crate::qcore::Pauli::Z.matrix(),
            (0, 1) => crate::qcore::Pauli::X.matrix(),
            _ => crate::qcore::Pauli::X.matrix() * crate::qcore::Pauli::Z.matrix(),
        };
        let joint = crate::qcore::TwoQubitPureState::bell_phi_plus().apply_first(pauli);
        RoundCarrier {
            state: joint.reduced_first(),
            hidden: None,
            partner: Some(joint),
        }
    }

    fn name(&self) -> &'static str {
        "attack2"
    }
}

/// Bell-measures every round's joint state and reads both key bits back.
pub fn recover_key_from_note(note: &Banknote) -> Result<SecretKey> {
    let mut rounds = Vec::with_capacity(note.len());
    for carrier in note.rounds() {
        let joint = carrier
            .partner
            .ok_or_else(|| Error::Internal("attack_2 carrier lost its entangled half".into()))?;
        let overlaps = joint.bell_overlaps();
        let (winner, weight) = overlaps
            .iter()
            .copied()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("four overlaps");
        if (weight - 1.0).abs() > 1e-9 {
            return Err(Error::Internal(format!(
                "Bell decoding not sharp (weight {weight})"
            )));
        }
        rounds.push(match winner {
            0 => (0, 0),
            1 => (1, 0),
            2 => (0, 1),
            _ => (1, 1),
        });
    }
    SecretKey::new(rounds)
}

/// Superdense-coding key extraction: for every round, encode the bit pair
/// as a local Pauli on a Bell half and Bell-measure both halves. The four
/// encoded states are orthogonal, so the recovered key always equals the
/// input.
pub fn attack2_superdense(key: &SecretKey) -> SecretKey {
    let rounds = key
        .rounds()
        .iter()
        .map(|&(y0, y1)| singlet_encode_decode(y0, y1))
        .collect();
    SecretKey::new(rounds).expect("input key was nonempty")
}

/// attack_3's mint: one classical bit per round, encoded as a z-basis
/// eigenstate. The encoding maps the round's key bits to that single bit.
#[derive(Debug, Clone, Copy)]
pub struct ClassicalSource {
    /// encoding[y0*2 + y1] in {0, 1}.
    pub encoding: [Bit; 4],
}

impl SourceStrategy for ClassicalSource {
    fn prepare(&self, y0: Bit, y1: Bit, _rng: &mut dyn RngCore) -> RoundCarrier {
        let c = self.encoding[y0 as usize * 2 + y1 as usize];
        RoundCarrier::honest(if c == 0 {
            QubitState::ket0()
        } else {
            QubitState::ket1()
        })
    }

    fn name(&self) -> &'static str {
        "attack3"
    }
}

/// attack_3's terminal: reads the classical bit back (a z measurement is
/// deterministic on diagonal states) and answers decoding[c][x].
#[derive(Debug, Clone, Copy)]
pub struct ClassicalTerminal {
    pub decoding: [[Bit; 2]; 2],
}

impl TerminalStrategy for ClassicalTerminal {
    fn answer(&self, carrier: &RoundCarrier, x: Bit, rng: &mut dyn RngCore) -> Bit {
        let c = sample_outcome(&carrier.state, &Observable::sigma_z().povm(), rng) as Bit;
        self.decoding[c as usize][x as usize]
    }

    fn name(&self) -> &'static str {
        "classical"
    }
}

/// Exact per-round success of a one-bit classical strategy against the
/// SDI verifier: (1/8) sum over (y0, y1, x) of [decode(encode(y), x) = y_x].
pub fn classical_strategy_success(encoding: [Bit; 4], decoding: [[Bit; 2]; 2]) -> f64 {
    let mut hits = 0usize;
    for y0 in 0..2u8 {
        for y1 in 0..2u8 {
            for x in 0..2u8 {
                let c = encoding[y0 as usize * 2 + y1 as usize];
                let answer = decoding[c as usize][x as usize];
                let target = if x == 0 { y0 } else { y1 };
                if answer == target {
                    hits += 1;
                }
            }
        }
    }
    hits as f64 / 8.0
}

/// Exhaustive search over all 2^4 encodings x 2^4 decodings; returns the
/// best strategy and its exact per-round success (3/4).
pub fn best_classical_strategy() -> (ClassicalSource, ClassicalTerminal, f64) {
    let mut best = (
        ClassicalSource { encoding: [0; 4] },
        ClassicalTerminal { decoding: [[0; 2]; 2] },
        0.0,
    );
    for enc_code in 0..16u8 {
        let encoding = [
            enc_code & 1,
            (enc_code >> 1) & 1,
            (enc_code >> 2) & 1,
            (enc_code >> 3) & 1,
        ];
        for dec_code in 0..16u8 {
            let decoding = [
                [dec_code & 1, (dec_code >> 1) & 1],
                [(dec_code >> 2) & 1, (dec_code >> 3) & 1],
            ];
            let p = classical_strategy_success(encoding, decoding);
            if p > best.2 {
                best = (
                    ClassicalSource { encoding },
                    ClassicalTerminal { decoding },
                    p,
                );
            }
        }
    }
    best
}

/// The best deterministic classical collusion: both parties decode from
/// the same transmitted bit. Single-party success never exceeds 3/4.
pub fn classical_collusion_box(
    encoding: [Bit; 4],
    decode_a: [[Bit; 2]; 2],
    decode_f: [[Bit; 2]; 2],
) -> super::collusion::CollusionBox {
    let mut table = [0.0; 64];
    for y0 in 0..2u8 {
        for y1 in 0..2u8 {
            for x_a in 0..2u8 {
                for x_f in 0..2u8 {
                    let c = encoding[y0 as usize * 2 + y1 as usize] as usize;
                    let a_a = decode_a[c][x_a as usize] as usize;
                    let a_f = decode_f[c][x_f as usize] as usize;
                    let idx = (((y0 as usize * 2 + y1 as usize) * 2 + x_a as usize) * 2
                        + x_f as usize)
                        * 4
                        + a_a * 2
                        + a_f;
                    table[idx] = 1.0;
                }
            }
        }
    }
    super::collusion::CollusionBox::new(table).expect("deterministic box is normalised")
}

/// attack_3 against a basis-revealing verifier: the mint transmits the
/// Wiesner value bit classically; once the verifier reveals the basis,
/// the terminal reconstructs both key bits and answers exactly. Checked
/// exhaustively over all (y0, y1, x) — the returned success is 1.
pub fn attack3_basis_revealing_success() -> f64 {
    let mut hits = 0usize;
    let mut total = 0usize;
    for y0 in 0..2u8 {
        for y1 in 0..2u8 {
            for x in 0..2u8 {
                let transmitted = wiesner_value(y0, y1);
                let revealed_basis = wiesner_basis(y0, y1);
                let (g0, g1) = key_bits_from_wiesner(revealed_basis, transmitted);
                let answer = if x == 0 { g0 } else { g1 };
                let target = if x == 0 { y0 } else { y1 };
                total += 1;
                if answer == target {
                    hits += 1;
                }
            }
        }
    }
    hits as f64 / total as f64
}
