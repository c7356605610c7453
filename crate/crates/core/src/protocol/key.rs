//! Secret keys and serial numbers.

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::seedmix;
use crate::{Bit, Error, Result};

/// The bank's secret for one banknote: an ordered list of bit pairs
/// (y0_i, y1_i), one pair per round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecretKey {
    rounds: Vec<(Bit, Bit)>,
}

impl SecretKey {
    /// Wraps explicit bit pairs; rejects empty keys and non-bit values.
    pub fn new(rounds: Vec<(Bit, Bit)>) -> Result<Self> {
        if rounds.is_empty() {
            return Err(Error::EmptyKey);
        }
        for &(y0, y1) in &rounds {
            if y0 > 1 || y1 > 1 {
                return Err(Error::InvalidParameter(format!(
                    "key entries must be bits, got ({y0}, {y1})"
                )));
            }
        }
        Ok(SecretKey { rounds })
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    pub fn round(&self, i: usize) -> (Bit, Bit) {
        self.rounds[i]
    }

    pub fn rounds(&self) -> &[(Bit, Bit)] {
        &self.rounds
    }
}

/// Draws 2n independent uniform bits from the bank's private randomness.
pub fn generate_key<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Result<SecretKey> {
    if n == 0 {
        return Err(Error::EmptyKey);
    }
    let mut rounds = Vec::with_capacity(n);
    for _ in 0..n {
        let word = rng.next_u32();
        rounds.push(((word & 1) as Bit, ((word >> 1) & 1) as Bit));
    }
    SecretKey::new(rounds)
}

/// Opaque banknote identifier, unique within a bank registry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SerialNumber(pub String);

impl SerialNumber {
    pub fn new(s: impl Into<String>) -> Self {
        SerialNumber(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for SerialNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SerialNumber {
    fn from(s: &str) -> Self {
        SerialNumber(s.to_owned())
    }
}

/// Deterministic key derivation from (master seed, serial): the stand-in
/// for the branches' clock-synchronised generation — every branch derives
/// the same key for a serial without communicating.
pub fn derive_key(master_seed: u64, serial: &SerialNumber, n: usize) -> Result<SecretKey> {
    let mut rng = seedmix::stream(master_seed, 0x6b65_79, seedmix::fnv1a64(serial.0.as_bytes()));
    generate_key(n, &mut rng)
}
