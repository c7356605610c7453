//! Exact objective evaluation. Born arithmetic only — optimizer noise can
//! affect which strategies get visited, never the reported value of a
//! given strategy.

use crate::qcore::{born, Povm, QubitState};
use crate::{Bit, Result};

use super::params::StrategyParams;

/// Average single-party guessing probability
/// (1/8) sum over (y0, y1, x) of P(a = y_x).
pub fn single_guessing_value(states: &[QubitState; 4], povms: &[Povm; 2]) -> Result<f64> {
    let mut total = 0.0;
    for y0 in 0..2u8 {
        for y1 in 0..2u8 {
            let state = &states[y0 as usize * 2 + y1 as usize];
            for x in 0..2u8 {
                let target = if x == 0 { y0 } else { y1 };
                total += born(state, &povms[x as usize], target as usize)?;
            }
        }
    }
    Ok(total / 8.0)
}

/// Both-correct double guessing: the four-outcome POVM emits
/// (g0, g1) = (guess of y0, guess of y1); the value is
/// P(g0 = y0) + P(g1 = y1), uniform over the key pair.
pub fn double_guessing_value(states: &[QubitState; 4], povm: &Povm) -> Result<f64> {
    let (p0, p1, _) = guess_probabilities(states, povm)?;
    Ok(p0 + p1)
}

/// The three guessing probabilities of the inequality chain:
/// (P(g0 = y0), P(g1 = y1), P(g0 xor g1 = y0 xor y1)). The XOR guess is
/// the XOR of the two emitted guesses, which is how a collaborating pair
/// would realize it — whenever both guesses are right the XOR guess is
/// right too.
pub fn guess_probabilities(
    states: &[QubitState; 4],
    povm: &Povm,
) -> Result<(f64, f64, f64)> {
    let mut p0 = 0.0;
    let mut p1 = 0.0;
    let mut pxor = 0.0;
    for y0 in 0..2u8 {
        for y1 in 0..2u8 {
            let state = &states[y0 as usize * 2 + y1 as usize];
            for outcome in 0..4usize {
                let g0 = (outcome >> 1) as Bit;
                let g1 = (outcome & 1) as Bit;
                let p = born(state, povm, outcome)?;
                if g0 == y0 {
                    p0 += p;
                }
                if g1 == y1 {
                    p1 += p;
                }
                if g0 ^ g1 == y0 ^ y1 {
                    pxor += p;
                }
            }
        }
    }
    Ok((p0 / 4.0, p1 / 4.0, pxor / 4.0))
}

/// Evaluates a flat single-guessing parameter vector; infeasible decodes
/// surface as errors (the search treats them as minus infinity).
pub fn evaluate_single(params: &StrategyParams) -> Result<f64> {
    let states = params.decode_states();
    let povms = [params.decode_povm(0)?, params.decode_povm(1)?];
    single_guessing_value(&states, &povms)
}

/// Evaluates a flat double-guessing parameter vector.
pub fn evaluate_double(params: &StrategyParams) -> Result<f64> {
    let states = params.decode_states();
    let povm = params.decode_povm(0)?;
    double_guessing_value(&states, &povm)
}
