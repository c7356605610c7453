//! Threshold verification at the bank and at a distance.

use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::banknote::Banknote;
use super::registry::BankRegistry;
use super::strategies::{LyingStrategy, TerminalStrategy};
use crate::{Bit, Error, Result};

/// One verified round: the bank's bits, its challenge, and the answer
/// that was scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptRound {
    pub y0: Bit,
    pub y1: Bit,
    pub x: Bit,
    pub a: Bit,
}

/// Full record of one verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    rounds: Vec<TranscriptRound>,
}

impl Transcript {
    pub fn new(rounds: Vec<TranscriptRound>) -> Self {
        Transcript { rounds }
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    pub fn rounds(&self) -> &[TranscriptRound] {
        &self.rounds
    }

    /// The challenge string of this run.
    pub fn challenges(&self) -> Vec<Bit> {
        self.rounds.iter().map(|r| r.x).collect()
    }
}

/// Number of rounds whose answer matches the challenged key bit:
/// X_A = |{ i : a_i = y_{x_i} }|.
pub fn acceptance_statistic(t: &Transcript) -> usize {
    t.rounds
        .iter()
        .filter(|r| {
            let target = if r.x == 0 { r.y0 } else { r.y1 };
            r.a == target
        })
        .count()
}

/// Outcome of a verification: the count, the threshold it was compared
/// against (theta * n, never rounded) and the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerificationResult {
    pub accepted: bool,
    pub guess_count: usize,
    pub threshold_count: f64,
    pub n: usize,
}

impl VerificationResult {
    /// Applies the acceptance rule X_A >= theta * n.
    pub fn from_count(guess_count: usize, n: usize, theta: f64) -> Self {
        let threshold_count = theta * n as f64;
        VerificationResult {
            accepted: guess_count as f64 >= threshold_count,
            guess_count,
            threshold_count,
            n,
        }
    }
}

/// Verification at the bank: the branch draws its challenge string (or
/// replays the cached one when this serial was verified before), runs the
/// untrusted terminal round by round, scores X_A and accepts iff
/// X_A >= theta * n. The note is destroyed either way.
pub fn verify_at_bank(
    note: &mut Banknote,
    registry: &mut BankRegistry,
    branch: usize,
    terminal: &dyn TerminalStrategy,
    theta: f64,
    rng: &mut dyn RngCore,
) -> Result<(VerificationResult, Transcript)> {
    verify_inner(note, registry, branch, terminal, None, theta, rng)
}

/// Verification over an authenticated classical channel: identical to
/// [`verify_at_bank`] except every answer passes through the client's
/// per-round lying map before being scored.
pub fn verify_at_distance(
    note: &mut Banknote,
    registry: &mut BankRegistry,
    branch: usize,
    terminal: &dyn TerminalStrategy,
    liar: &dyn LyingStrategy,
    theta: f64,
    rng: &mut dyn RngCore,
) -> Result<(VerificationResult, Transcript)> {
    verify_inner(note, registry, branch, terminal, Some(liar), theta, rng)
}

fn verify_inner(
    note: &mut Banknote,
    registry: &mut BankRegistry,
    branch: usize,
    terminal: &dyn TerminalStrategy,
    liar: Option<&dyn LyingStrategy>,
    theta: f64,
    rng: &mut dyn RngCore,
) -> Result<(VerificationResult, Transcript)> {
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::InvalidParameter(format!(
            "theta must lie in [0, 1], got {theta}"
        )));
    }
    if branch >= registry.branches() {
        return Err(Error::InvalidBranch {
            branch,
            branches: registry.branches(),
        });
    }
    if note.is_consumed() {
        return Err(Error::NoteConsumed(note.serial().0.clone()));
    }
    let n = note.len();
    let entry = registry.entry_mut(note.serial())?;
    if entry.key.len() != n {
        return Err(Error::KeyLengthMismatch {
            key: entry.key.len(),
            note: n,
        });
    }

    // First verification of this serial draws and caches the challenge;
    // every later attempt replays it (Remark-2 style reuse, so retrying
    // with clones cannot fish for a better challenge).
    let challenge: Vec<Bit> = match &entry.cached_challenge {
        Some(cached) => cached.clone(),
        None => {
            let fresh: Vec<Bit> = (0..n).map(|_| (rng.next_u32() & 1) as Bit).collect();
            entry.cached_challenge = Some(fresh.clone());
            entry.consumed = true;
            fresh
        }
    };

    let mut rounds = Vec::with_capacity(n);
    for (i, carrier) in note.rounds().iter().enumerate() {
        let (y0, y1) = entry.key.round(i);
        let x = challenge[i];
        let raw = terminal.answer(carrier, x, rng);
        let a = match liar {
            Some(l) => l.lie(x, raw),
            None => raw,
        };
        rounds.push(TranscriptRound { y0, y1, x, a });
    }
    note.consume();

    let transcript = Transcript::new(rounds);
    let count = acceptance_statistic(&transcript);
    Ok((VerificationResult::from_count(count, n, theta), transcript))
}
