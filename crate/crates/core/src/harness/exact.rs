//! Exact small-n forgery probabilities by full enumeration, and the
//! measure-transform equivalence check between the original and the XOR
//! scenario. The two enumerators walk different input spaces on purpose;
//! their agreement is the content of the equivalence lemma, so they must
//! not share code.

use serde::{Deserialize, Serialize};

use crate::adversary::CollusionBox;
use crate::{Bit, Error, Result};

/// Largest n accepted by the enumerators (64^n tuples).
pub const MAX_ENUMERATION_N: usize = 4;

/// Exact forgery probability under both threshold conventions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactForgery {
    /// P(F): both branches strictly above theta*n (the forgery set).
    pub strict: f64,
    /// Both branches at or above theta*n (the protocol acceptance rule);
    /// differs from `strict` only when a count can land exactly on the
    /// threshold.
    pub lenient: f64,
}

#[inline]
fn digit_bits(digit: usize) -> (Bit, Bit, Bit, Bit) {
    (
        ((digit >> 3) & 1) as Bit,
        ((digit >> 2) & 1) as Bit,
        ((digit >> 1) & 1) as Bit,
        (digit & 1) as Bit,
    )
}

/// Exact P(F) for a box at n rounds: sums the product measure over all
/// 16^n uniformly weighted input strings and all 4^n answer strings.
pub fn exact_forgery_small_n(box_: &CollusionBox, n: usize, theta: f64) -> Result<ExactForgery> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(Error::EnumerationTooLarge {
            n,
            max: MAX_ENUMERATION_N,
        });
    }
    let threshold = theta * n as f64;
    let input_weight = (1.0f64 / 16.0).powi(n as i32);
    let inputs = 16usize.pow(n as u32);
    let outputs = 4usize.pow(n as u32);

    let mut strict = 0.0;
    let mut lenient = 0.0;
    let mut rows: Vec<[f64; 4]> = vec![[0.0; 4]; n];
    // alice_ok[r][o] = does answer pair o score for Alice in round r.
    let mut alice_ok = vec![[false; 4]; n];
    let mut fred_ok = vec![[false; 4]; n];

    for input in 0..inputs {
        let mut rest = input;
        for r in 0..n {
            let digit = rest % 16;
            rest /= 16;
            let (y0, y1, x_a, x_f) = digit_bits(digit);
            rows[r] = box_.row(y0, y1, x_a, x_f);
            let a_target = if x_a == 0 { y0 } else { y1 };
            let f_target = if x_f == 0 { y0 } else { y1 };
            for o in 0..4 {
                alice_ok[r][o] = ((o >> 1) as Bit) == a_target;
                fred_ok[r][o] = ((o & 1) as Bit) == f_target;
            }
        }
        for output in 0..outputs {
            let mut weight = input_weight;
            let mut a_count = 0usize;
            let mut f_count = 0usize;
            let mut rest = output;
            for r in 0..n {
                let o = rest % 4;
                rest /= 4;
                weight *= rows[r][o];
                a_count += usize::from(alice_ok[r][o]);
                f_count += usize::from(fred_ok[r][o]);
            }
            if weight == 0.0 {
                continue;
            }
            let (a, f) = (a_count as f64, f_count as f64);
            if a > threshold && f > threshold {
                strict += weight;
            }
            if a >= threshold && f >= threshold {
                lenient += weight;
            }
        }
    }
    Ok(ExactForgery { strict, lenient })
}

/// Exact P(F') under the transformed measure: inputs are
/// (y0, y1, x_A, x_xor), the box is queried at x_F = x_xor xor x_A, and
/// Frederick is scored against y at x_xor xor x_A.
pub fn exact_forgery_xor_scenario(
    box_: &CollusionBox,
    n: usize,
    theta: f64,
) -> Result<f64> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(Error::EnumerationTooLarge {
            n,
            max: MAX_ENUMERATION_N,
        });
    }
    let threshold = theta * n as f64;
    let input_weight = (1.0f64 / 16.0).powi(n as i32);
    let inputs = 16usize.pow(n as u32);
    let outputs = 4usize.pow(n as u32);

    let mut total = 0.0;
    let mut rows: Vec<[f64; 4]> = vec![[0.0; 4]; n];
    let mut alice_ok = vec![[false; 4]; n];
    let mut fred_ok = vec![[false; 4]; n];

    for input in 0..inputs {
        let mut rest = input;
        for r in 0..n {
            let digit = rest % 16;
            rest /= 16;
            // The fourth digit bit is x_xor instead of x_F.
            let (y0, y1, x_a, x_xor) = digit_bits(digit);
            let x_f = x_xor ^ x_a;
            rows[r] = box_.row(y0, y1, x_a, x_f);
            let a_target = if x_a == 0 { y0 } else { y1 };
            let f_target = if x_f == 0 { y0 } else { y1 };
            for o in 0..4 {
                alice_ok[r][o] = ((o >> 1) as Bit) == a_target;
                fred_ok[r][o] = ((o & 1) as Bit) == f_target;
            }
        }
        for output in 0..outputs {
            let mut weight = input_weight;
            let mut a_count = 0usize;
            let mut f_count = 0usize;
            let mut rest = output;
            for r in 0..n {
                let o = rest % 4;
                rest /= 4;
                weight *= rows[r][o];
                a_count += usize::from(alice_ok[r][o]);
                f_count += usize::from(fred_ok[r][o]);
            }
            if a_count as f64 > threshold && f_count as f64 > threshold {
                total += weight;
            }
        }
    }
    Ok(total)
}

/// Result of the measure-transform check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XorEquivalence {
    pub p_forgery: f64,
    pub p_forgery_xor: f64,
    pub equal_within_tolerance: bool,
}

/// Verifies P(F) = P(F') for one box by running both enumerators.
pub fn xor_equivalence_test(box_: &CollusionBox, n: usize, theta: f64) -> Result<XorEquivalence> {
    if n > 3 {
        return Err(Error::EnumerationTooLarge { n, max: 3 });
    }
    let p_forgery = exact_forgery_small_n(box_, n, theta)?.strict;
    let p_forgery_xor = exact_forgery_xor_scenario(box_, n, theta)?;
    Ok(XorEquivalence {
        p_forgery,
        p_forgery_xor,
        equal_within_tolerance: (p_forgery - p_forgery_xor).abs() <= 1e-12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::{copy_box, CollusionBox};
    use approx::assert_abs_diff_eq;

    /// Independent oracle: per-round joint distribution of (Alice scores,
    /// Frederick scores) convolved across rounds. A different route than
    /// the tuple enumeration — rounds are iid under the product measure,
    /// so the pair of counts is the n-fold convolution of the per-round
    /// 2x2 law.
    fn forgery_by_convolution(box_: &CollusionBox, n: usize, theta: f64) -> (f64, f64) {
        let mut per_round = [[0.0f64; 2]; 2];
        for y0 in 0..2u8 {
            for y1 in 0..2u8 {
                for x_a in 0..2u8 {
                    for x_f in 0..2u8 {
                        let a_target = if x_a == 0 { y0 } else { y1 };
                        let f_target = if x_f == 0 { y0 } else { y1 };
                        for o in 0..4usize {
                            let a_ok = usize::from(((o >> 1) as Bit) == a_target);
                            let f_ok = usize::from(((o & 1) as Bit) == f_target);
                            per_round[a_ok][f_ok] += box_.prob(
                                y0,
                                y1,
                                x_a,
                                x_f,
                                (o >> 1) as Bit,
                                (o & 1) as Bit,
                            ) / 16.0;
                        }
                    }
                }
            }
        }
        // dist[a][f] = P(a alice-scores and f frederick-scores so far).
        // After r rounds, mass only sits at a, f <= r, so the bounds
        // guards below never actually drop probability.
        let mut dist = vec![vec![0.0f64; n + 1]; n + 1];
        dist[0][0] = 1.0;
        for _ in 0..n {
            let mut next = vec![vec![0.0f64; n + 1]; n + 1];
            for a in 0..=n {
                for f in 0..=n {
                    let w = dist[a][f];
                    if w == 0.0 {
                        continue;
                    }
                    next[a][f] += w * per_round[0][0];
                    if f < n {
                        next[a][f + 1] += w * per_round[0][1];
                    }
                    if a < n {
                        next[a + 1][f] += w * per_round[1][0];
                    }
                    if a < n && f < n {
                        next[a + 1][f + 1] += w * per_round[1][1];
                    }
                }
            }
            dist = next;
        }
        let threshold = theta * n as f64;
        let mut strict = 0.0;
        let mut lenient = 0.0;
        for a in 0..=n {
            for f in 0..=n {
                if a as f64 > threshold && f as f64 > threshold {
                    strict += dist[a][f];
                }
                if a as f64 >= threshold && f as f64 >= threshold {
                    lenient += dist[a][f];
                }
            }
        }
        (strict, lenient)
    }

    #[test]
    fn uniform_box_single_round_hand_enumeration() {
        // Hand enumeration: under the strict rule at theta = 0 each party
        // needs its single answer correct — probability 1/4 for the
        // uniform box; under the >= rule everything is accepted.
        let result = exact_forgery_small_n(&CollusionBox::uniform(), 1, 0.0).unwrap();
        assert_abs_diff_eq!(result.strict, 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(result.lenient, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn always_wrong_box_never_forges() {
        let result = exact_forgery_small_n(&CollusionBox::always_wrong(), 2, 0.3).unwrap();
        assert_abs_diff_eq!(result.strict, 0.0, epsilon = 0.0);
    }

    #[test]
    fn copy_box_matches_convolution_oracle() {
        let b = copy_box();
        for (n, theta) in [(1usize, 0.0f64), (2, 0.5), (3, 0.4), (4, 0.6)] {
            let enumerated = exact_forgery_small_n(&b, n, theta).unwrap();
            let (strict, lenient) = forgery_by_convolution(&b, n, theta);
            assert_abs_diff_eq!(enumerated.strict, strict, epsilon = 1e-12);
            assert_abs_diff_eq!(enumerated.lenient, lenient, epsilon = 1e-12);
        }
    }

    #[test]
    fn random_boxes_match_convolution_oracle() {
        let mut rng = crate::seedmix::stream(5150, 0xe0, 0);
        for _ in 0..20 {
            let b = CollusionBox::random(&mut rng);
            let enumerated = exact_forgery_small_n(&b, 3, 0.5).unwrap();
            let (strict, _) = forgery_by_convolution(&b, 3, 0.5);
            assert_abs_diff_eq!(enumerated.strict, strict, epsilon = 1e-12);
        }
    }

    #[test]
    fn xor_scenario_preserves_forgery_probability() {
        let mut rng = crate::seedmix::stream(5151, 0xe1, 0);
        for _ in 0..30 {
            let b = CollusionBox::random(&mut rng);
            for n in 1..=2usize {
                let eq = xor_equivalence_test(&b, n, 0.4).unwrap();
                assert!(
                    eq.equal_within_tolerance,
                    "P(F) = {} vs P(F') = {}",
                    eq.p_forgery, eq.p_forgery_xor
                );
            }
        }
        let eq = xor_equivalence_test(&copy_box(), 3, 0.5).unwrap();
        assert!(eq.equal_within_tolerance);
    }

    #[test]
    fn enumeration_rejects_large_n() {
        assert!(exact_forgery_small_n(&CollusionBox::uniform(), 5, 0.5).is_err());
        assert!(exact_forgery_small_n(&CollusionBox::uniform(), 0, 0.5).is_err());
        assert!(xor_equivalence_test(&CollusionBox::uniform(), 4, 0.5).is_err());
    }
}
