//! The bank registry: the single mutable authority all branches read.

use std::collections::HashMap;

use rand::RngCore;

use super::banknote::Banknote;
use super::key::{SecretKey, SerialNumber};
use super::strategies::SourceStrategy;
use crate::{Bit, Error, Result};

pub(crate) struct RegistryEntry {
    pub key: SecretKey,
    /// Set once the serial has been through a verification.
    pub consumed: bool,
    /// Challenge string drawn at the first verification of this serial,
    /// replayed verbatim on every later attempt so a counterfeiter cannot
    /// fish for favourable challenges by retrying.
    pub cached_challenge: Option<Vec<Bit>>,
}

/// Shared classical memory of the k bank branches: the serial-to-key map,
/// consumption flags and cached verification challenges. All mutation is
/// serialized through `&mut self`; every branch reads the same entry for
/// a given serial.
pub struct BankRegistry {
    branches: usize,
    entries: HashMap<SerialNumber, RegistryEntry>,
}

impl BankRegistry {
    /// A bank with `branches` >= 1 branches.
    pub fn new(branches: usize) -> Result<Self> {
        if branches == 0 {
            return Err(Error::InvalidParameter(
                "a bank needs at least one branch".into(),
            ));
        }
        Ok(BankRegistry {
            branches,
            entries: HashMap::new(),
        })
    }

    pub fn branches(&self) -> usize {
        self.branches
    }

    pub fn contains(&self, serial: &SerialNumber) -> bool {
        self.entries.contains_key(serial)
    }

    pub fn key(&self, serial: &SerialNumber) -> Option<&SecretKey> {
        self.entries.get(serial).map(|e| &e.key)
    }

    /// Binds a key to a fresh serial without minting (used when the note
    /// itself is produced elsewhere, e.g. by an attack).
    pub fn register(&mut self, serial: SerialNumber, key: SecretKey) -> Result<()> {
        if self.entries.contains_key(&serial) {
            return Err(Error::DuplicateSerial(serial.0));
        }
        self.entries.insert(
            serial,
            RegistryEntry {
                key,
                consumed: false,
                cached_challenge: None,
            },
        );
        Ok(())
    }

    /// Mints a banknote: registers (serial, key), then drives the source
    /// round by round. Each round's carrier depends only on that round's
    /// key bits.
    pub fn mint(
        &mut self,
        source: &dyn SourceStrategy,
        key: SecretKey,
        serial: SerialNumber,
        rng: &mut dyn RngCore,
    ) -> Result<Banknote> {
        self.register(serial.clone(), key.clone())?;
        Ok(mint_unregistered(source, &key, serial, rng))
    }

    pub(crate) fn entry_mut(&mut self, serial: &SerialNumber) -> Result<&mut RegistryEntry> {
        self.entries
            .get_mut(serial)
            .ok_or_else(|| Error::UnknownSerial(serial.0.clone()))
    }
}

/// Runs the source over the key without touching a registry. Attacks use
/// this to produce extra clones of an already-registered serial.
pub fn mint_unregistered(
    source: &dyn SourceStrategy,
    key: &SecretKey,
    serial: SerialNumber,
    rng: &mut dyn RngCore,
) -> Banknote {
    let rounds = key
        .rounds()
        .iter()
        .map(|&(y0, y1)| source.prepare(y0, y1, rng))
        .collect();
    Banknote::new(serial, rounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::key::generate_key;
    use crate::protocol::strategies::HonestSource;
    use crate::qcore::QubitState;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn mint_produces_honest_carriers() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let key = SecretKey::new(vec![(0, 0), (1, 1), (0, 1), (1, 0)]).unwrap();
        let mut registry = BankRegistry::new(2).unwrap();
        let note = registry
            .mint(&HonestSource, key, SerialNumber::new("SN-1"), &mut rng)
            .unwrap();
        assert_eq!(note.len(), 4);
        assert!(note.is_honest_form());
        assert_eq!(note.rounds()[0].state, QubitState::ket0());
        assert_eq!(note.rounds()[1].state, QubitState::ket1());
        assert_eq!(note.rounds()[2].state, QubitState::minus());
        assert_eq!(note.rounds()[3].state, QubitState::plus());
    }

    #[test]
    fn duplicate_serial_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let key = generate_key(8, &mut rng).unwrap();
        let mut registry = BankRegistry::new(1).unwrap();
        registry
            .mint(
                &HonestSource,
                key.clone(),
                SerialNumber::new("SN-1"),
                &mut rng,
            )
            .unwrap();
        let err = registry
            .mint(&HonestSource, key, SerialNumber::new("SN-1"), &mut rng)
            .unwrap_err();
        assert!(matches!(err, Error::DuplicateSerial(_)));
    }

    #[test]
    fn zero_branch_bank_rejected() {
        assert!(BankRegistry::new(0).is_err());
    }
}
