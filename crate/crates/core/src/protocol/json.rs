//! The "sdi-cash/1" wire schema: JSON serialization of keys, banknotes
//! and transcripts. States travel as Bloch 3-vectors per round; hidden
//! classical bits are explicit; entangled partners carry their four
//! complex amplitudes as [re, im] pairs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::banknote::{Banknote, RoundCarrier};
use super::key::{SecretKey, SerialNumber};
use super::verify::{Transcript, TranscriptRound};
use crate::qcore::TwoQubitPureState;
use crate::{Bit, Error, Result};

/// Schema tag every sdi-cash file must carry.
pub const FORMAT: &str = "sdi-cash/1";

fn check_format(format: &str) -> Result<()> {
    if format != FORMAT {
        return Err(Error::SchemaMismatch {
            expected: FORMAT.to_owned(),
            got: format.to_owned(),
        });
    }
    Ok(())
}

/// Wire form of a secret key.
#[derive(Debug, Serialize, Deserialize)]
pub struct KeyFile {
    pub format: String,
    pub kind: String,
    pub rounds: Vec<[Bit; 2]>,
}

impl KeyFile {
    pub fn from_key(key: &SecretKey) -> Self {
        KeyFile {
            format: FORMAT.to_owned(),
            kind: "secret-key".to_owned(),
            rounds: key.rounds().iter().map(|&(y0, y1)| [y0, y1]).collect(),
        }
    }

    pub fn into_key(self) -> Result<SecretKey> {
        check_format(&self.format)?;
        SecretKey::new(self.rounds.into_iter().map(|[y0, y1]| (y0, y1)).collect())
    }
}

/// Wire form of one banknote round.
#[derive(Debug, Serialize, Deserialize)]
pub struct RoundCarrierFile {
    /// Bloch vector of the carried qubit.
    pub bloch: [f64; 3],
    /// Hidden classical register, absent for honest rounds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hidden: Option<Vec<Bit>>,
    /// Entangled partner amplitudes (|00>, |01>, |10>, |11>) as [re, im].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partner: Option<[[f64; 2]; 4]>,
}

/// Wire form of a banknote.
#[derive(Debug, Serialize, Deserialize)]
pub struct BanknoteFile {
    pub format: String,
    pub kind: String,
    pub serial: SerialNumber,
    pub consumed: bool,
    pub rounds: Vec<RoundCarrierFile>,
}

impl BanknoteFile {
    pub fn from_banknote(note: &Banknote) -> Self {
        BanknoteFile {
            format: FORMAT.to_owned(),
            kind: "banknote".to_owned(),
            serial: note.serial().clone(),
            consumed: note.is_consumed(),
            rounds: note
                .rounds()
                .iter()
                .map(|carrier| RoundCarrierFile {
                    bloch: carrier.state.bloch_vector(),
                    hidden: carrier.hidden.clone(),
                    partner: carrier.partner.map(|p| {
                        let a = p.amplitudes();
                        [
                            [a[0].re, a[0].im],
                            [a[1].re, a[1].im],
                            [a[2].re, a[2].im],
                            [a[3].re, a[3].im],
                        ]
                    }),
                })
                .collect(),
        }
    }

    pub fn into_banknote(self) -> Result<Banknote> {
        check_format(&self.format)?;
        let rounds = self
            .rounds
            .into_iter()
            .map(|r| {
                let state = crate::qcore::bloch_to_state(r.bloch)?;
                let partner = match r.partner {
                    Some(a) => Some(TwoQubitPureState::new([
                        Complex64::new(a[0][0], a[0][1]),
                        Complex64::new(a[1][0], a[1][1]),
                        Complex64::new(a[2][0], a[2][1]),
                        Complex64::new(a[3][0], a[3][1]),
                    ])?),
                    None => None,
                };
                if let Some(bits) = &r.hidden {
                    if bits.iter().any(|&b| b > 1) {
                        return Err(Error::InvalidParameter(
                            "hidden register entries must be bits".into(),
                        ));
                    }
                }
                Ok(RoundCarrier {
                    state,
                    hidden: r.hidden,
                    partner,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Banknote::from_parts(self.serial, rounds, self.consumed))
    }
}

/// Wire form of a verification transcript.
#[derive(Debug, Serialize, Deserialize)]
pub struct TranscriptFile {
    pub format: String,
    pub kind: String,
    /// Rows of (y0, y1, x, a).
    pub rounds: Vec<[Bit; 4]>,
}

impl TranscriptFile {
    pub fn from_transcript(t: &Transcript) -> Self {
        TranscriptFile {
            format: FORMAT.to_owned(),
            kind: "transcript".to_owned(),
            rounds: t
                .rounds()
                .iter()
                .map(|r| [r.y0, r.y1, r.x, r.a])
                .collect(),
        }
    }

    pub fn into_transcript(self) -> Result<Transcript> {
        check_format(&self.format)?;
        for row in &self.rounds {
            if row.iter().any(|&b| b > 1) {
                return Err(Error::InvalidParameter(
                    "transcript entries must be bits".into(),
                ));
            }
        }
        Ok(Transcript::new(
            self.rounds
                .into_iter()
                .map(|[y0, y1, x, a]| TranscriptRound { y0, y1, x, a })
                .collect(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::key::generate_key;
    use crate::protocol::registry::BankRegistry;
    use crate::protocol::strategies::HonestSource;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn key_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let key = generate_key(16, &mut rng).unwrap();
        let json = serde_json::to_string(&KeyFile::from_key(&key)).unwrap();
        assert!(json.contains("\"format\":\"sdi-cash/1\""));
        let back: KeyFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_key().unwrap(), key);
    }

    #[test]
    fn banknote_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let key = generate_key(8, &mut rng).unwrap();
        let mut registry = BankRegistry::new(1).unwrap();
        let note = registry
            .mint(&HonestSource, key, SerialNumber::new("SN-7"), &mut rng)
            .unwrap();
        let json = serde_json::to_string_pretty(&BanknoteFile::from_banknote(&note)).unwrap();
        let back: BanknoteFile = serde_json::from_str(&json).unwrap();
        let note2 = back.into_banknote().unwrap();
        assert_eq!(note2.serial(), note.serial());
        assert_eq!(note2.len(), note.len());
        for (a, b) in note.rounds().iter().zip(note2.rounds()) {
            let (ra, rb) = (a.state.bloch_vector(), b.state.bloch_vector());
            for i in 0..3 {
                assert!((ra[i] - rb[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn wrong_format_rejected() {
        let json = r#"{"format":"sdi-cash/2","kind":"secret-key","rounds":[[0,1]]}"#;
        let file: KeyFile = serde_json::from_str(json).unwrap();
        assert!(matches!(
            file.into_key(),
            Err(Error::SchemaMismatch { .. })
        ));
    }

    #[test]
    fn transcript_round_trip_and_bit_validation() {
        let t = Transcript::new(vec![TranscriptRound {
            y0: 1,
            y1: 0,
            x: 1,
            a: 0,
        }]);
        let json = serde_json::to_string(&TranscriptFile::from_transcript(&t)).unwrap();
        let back: TranscriptFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_transcript().unwrap(), t);

        let bad = r#"{"format":"sdi-cash/1","kind":"transcript","rounds":[[0,1,2,0]]}"#;
        let bad_file: TranscriptFile = serde_json::from_str(bad).unwrap();
        assert!(bad_file.into_transcript().is_err());
    }
}
