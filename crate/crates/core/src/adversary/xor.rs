//! The XOR-scenario transform and the guess-counter bookkeeping used by
//! the security proof: two-branch transcripts, the involutive map that
//! hands Frederick x_A xor x_F instead of x_F, and the four per-party
//! counters split over the challenge-agreement sets.

use serde::{Deserialize, Serialize};

use crate::Bit;

/// One round of a joint two-branch verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointRound {
    pub y0: Bit,
    pub y1: Bit,
    pub x_a: Bit,
    pub a_a: Bit,
    pub x_f: Bit,
    pub a_f: Bit,
}

/// Transcript of a joint attack on two branches: the S-form strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointTranscript {
    pub rounds: Vec<JointRound>,
}

/// One round in the XOR scenario: x_f replaced by x_xor = x_a xor x_f.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct XorRound {
    pub y0: Bit,
    pub y1: Bit,
    pub x_a: Bit,
    pub a_a: Bit,
    pub x_xor: Bit,
    pub a_f: Bit,
}

/// Transcript in the XOR scenario: the S'-form strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XorTranscript {
    pub rounds: Vec<XorRound>,
}

/// The scenario map: componentwise, x_F is replaced by x_A xor x_F.
/// Bijective, and applying the same bit operation to the image returns
/// the original transcript (see [`xor_untransform`]).
pub fn xor_transform(s: &JointTranscript) -> XorTranscript {
    XorTranscript {
        rounds: s
            .rounds
            .iter()
            .map(|r| XorRound {
                y0: r.y0,
                y1: r.y1,
                x_a: r.x_a,
                a_a: r.a_a,
                x_xor: r.x_a ^ r.x_f,
                a_f: r.a_f,
            })
            .collect(),
    }
}

/// Inverse of [`xor_transform`] — the identical XOR applied once more.
pub fn xor_untransform(s: &XorTranscript) -> JointTranscript {
    JointTranscript {
        rounds: s
            .rounds
            .iter()
            .map(|r| JointRound {
                y0: r.y0,
                y1: r.y1,
                x_a: r.x_a,
                a_a: r.a_a,
                x_f: r.x_a ^ r.x_xor,
                a_f: r.a_f,
            })
            .collect(),
    }
}

/// Membership in the forgery set F: both parties strictly above theta*n.
pub fn joint_in_forgery_set(s: &JointTranscript, theta: f64) -> bool {
    let n = s.rounds.len() as f64;
    let alice = s
        .rounds
        .iter()
        .filter(|r| r.a_a == if r.x_a == 0 { r.y0 } else { r.y1 })
        .count() as f64;
    let fred = s
        .rounds
        .iter()
        .filter(|r| r.a_f == if r.x_f == 0 { r.y0 } else { r.y1 })
        .count() as f64;
    alice > theta * n && fred > theta * n
}

/// Membership in the transformed forgery set F': Frederick judged against
/// y_{x_xor xor x_A}.
pub fn xor_in_forgery_set(s: &XorTranscript, theta: f64) -> bool {
    let n = s.rounds.len() as f64;
    let alice = s
        .rounds
        .iter()
        .filter(|r| r.a_a == if r.x_a == 0 { r.y0 } else { r.y1 })
        .count() as f64;
    let fred = s
        .rounds
        .iter()
        .filter(|r| {
            let x_f = r.x_xor ^ r.x_a;
            r.a_f == if x_f == 0 { r.y0 } else { r.y1 }
        })
        .count() as f64;
    alice > theta * n && fred > theta * n
}

/// The four guess counters of the proof, split over D (rounds with
/// x_xor = 0) and its complement: on D both parties are judged against
/// y_{x_A}; on the complement Alice keeps y_{x_A} while Frederick must
/// guess the opposite bit y_{x_A xor 1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuessCounters {
    pub xbar_a: usize,
    pub xbar_f: usize,
    pub ybar_a: usize,
    pub ybar_f: usize,
    /// xbar_a + xbar_f + ybar_a + ybar_f.
    pub zbar: usize,
    /// |D(x_xor)|, the number of rounds with x_xor = 0.
    pub d_size: usize,
    /// n - |D(x_xor)|.
    pub dbar_size: usize,
}

/// Tallies the counters of an XOR-scenario transcript.
pub fn guess_counters(s: &XorTranscript) -> GuessCounters {
    let mut c = GuessCounters {
        xbar_a: 0,
        xbar_f: 0,
        ybar_a: 0,
        ybar_f: 0,
        zbar: 0,
        d_size: 0,
        dbar_size: 0,
    };
    for r in &s.rounds {
        let alice_target = if r.x_a == 0 { r.y0 } else { r.y1 };
        if r.x_xor == 0 {
            c.d_size += 1;
            if r.a_a == alice_target {
                c.xbar_a += 1;
            }
            if r.a_f == alice_target {
                c.xbar_f += 1;
            }
        } else {
            c.dbar_size += 1;
            let fred_target = if r.x_a == 0 { r.y1 } else { r.y0 };
            if r.a_a == alice_target {
                c.ybar_a += 1;
            }
            if r.a_f == fred_target {
                c.ybar_f += 1;
            }
        }
    }
    c.zbar = c.xbar_a + c.xbar_f + c.ybar_a + c.ybar_f;
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn round(bits: [Bit; 6]) -> JointRound {
        JointRound {
            y0: bits[0],
            y1: bits[1],
            x_a: bits[2],
            a_a: bits[3],
            x_f: bits[4],
            a_f: bits[5],
        }
    }

    #[test]
    fn equal_challenges_give_zero_xor() {
        let s = JointTranscript {
            rounds: vec![round([0, 1, 1, 0, 1, 1]), round([1, 0, 0, 1, 0, 0])],
        };
        let t = xor_transform(&s);
        assert!(t.rounds.iter().all(|r| r.x_xor == 0));
    }

    #[test]
    fn counters_all_correct_on_d() {
        // All x_xor = 0, all answers correct.
        let s = XorTranscript {
            rounds: (0..5)
                .map(|i| XorRound {
                    y0: (i % 2) as Bit,
                    y1: ((i / 2) % 2) as Bit,
                    x_a: 0,
                    a_a: (i % 2) as Bit,
                    x_xor: 0,
                    a_f: (i % 2) as Bit,
                })
                .collect(),
        };
        let c = guess_counters(&s);
        assert_eq!((c.xbar_a, c.xbar_f), (5, 5));
        assert_eq!((c.ybar_a, c.ybar_f), (0, 0));
        assert_eq!(c.d_size, 5);
        assert_eq!(c.dbar_size, 0);
        assert_eq!(c.zbar, 10);
    }

    #[test]
    fn counters_single_round_on_complement() {
        // n = 1, x_xor = 1, Alice answers y_{x_a}, Frederick answers the
        // opposite bit: both Y-counters tick.
        let s = XorTranscript {
            rounds: vec![XorRound {
                y0: 1,
                y1: 0,
                x_a: 0,
                a_a: 1, // y_0
                x_xor: 1,
                a_f: 0, // y_1
            }],
        };
        let c = guess_counters(&s);
        assert_eq!((c.xbar_a, c.xbar_f), (0, 0));
        assert_eq!((c.ybar_a, c.ybar_f), (1, 1));
        assert_eq!((c.d_size, c.dbar_size), (0, 1));
    }

    /// Exhaustive check at n = 2 that the scenario map preserves forgery
    /// membership: S in F iff pi(S) in F'.
    #[test]
    fn forgery_membership_preserved_exhaustively() {
        for theta in [0.0, 0.3, 0.5, 0.9] {
            for code in 0..(1u32 << 12) {
                let bits: Vec<Bit> = (0..12).map(|i| ((code >> i) & 1) as Bit).collect();
                let s = JointTranscript {
                    rounds: vec![
                        round([bits[0], bits[1], bits[2], bits[3], bits[4], bits[5]]),
                        round([bits[6], bits[7], bits[8], bits[9], bits[10], bits[11]]),
                    ],
                };
                let t = xor_transform(&s);
                assert_eq!(
                    joint_in_forgery_set(&s, theta),
                    xor_in_forgery_set(&t, theta),
                    "membership differs for code {code:#x} at theta {theta}"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn transform_is_an_involution(raw in proptest::collection::vec(0u8..64, 1..60)) {
            let s = JointTranscript {
                rounds: raw.iter().map(|&b| round([
                    b & 1, (b >> 1) & 1, (b >> 2) & 1,
                    (b >> 3) & 1, (b >> 4) & 1, (b >> 5) & 1,
                ])).collect(),
            };
            let back = xor_untransform(&xor_transform(&s));
            prop_assert_eq!(back, s);
        }

        #[test]
        fn zbar_is_definitionally_consistent(raw in proptest::collection::vec(0u8..64, 1..60)) {
            let s = XorTranscript {
                rounds: raw.iter().map(|&b| XorRound {
                    y0: b & 1,
                    y1: (b >> 1) & 1,
                    x_a: (b >> 2) & 1,
                    a_a: (b >> 3) & 1,
                    x_xor: (b >> 4) & 1,
                    a_f: (b >> 5) & 1,
                }).collect(),
            };
            let c = guess_counters(&s);
            prop_assert_eq!(c.zbar, c.xbar_a + c.xbar_f + c.ybar_a + c.ybar_f);
            prop_assert_eq!(c.d_size + c.dbar_size, s.rounds.len());
            prop_assert!(c.xbar_a <= c.d_size && c.xbar_f <= c.d_size);
            prop_assert!(c.ybar_a <= c.dbar_size && c.ybar_f <= c.dbar_size);
        }
    }
}
