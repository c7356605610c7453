//! Search-space encoding of qubit strategies: four Bloch vectors plus,
//! per measurement context, a positive-factor parametrization of all POVM
//! elements but the last.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::qcore::{Mat2, Povm, QubitState};
use crate::{Error, Result};

/// Which objective a parameter vector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObjectiveKind {
    /// Four states, two two-outcome POVMs (one per challenge bit).
    SingleGuessing,
    /// Four states, one four-outcome POVM over (guess of y0, guess of y1).
    DoubleGuessing,
}

impl ObjectiveKind {
    /// Measurement contexts and outcomes per context.
    pub fn contexts(self) -> (usize, usize) {
        match self {
            ObjectiveKind::SingleGuessing => (2, 2),
            ObjectiveKind::DoubleGuessing => (1, 4),
        }
    }

    /// Flat search dimension: 12 state reals + 4 per free POVM element.
    pub fn dim(self) -> usize {
        let (contexts, outcomes) = self.contexts();
        12 + contexts * (outcomes - 1) * 4
    }
}

/// A point in the strategy search space. Raw values are unconstrained
/// reals; decoding projects them into the physical set (Bloch ball,
/// positive elements completed to identity).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyParams {
    pub kind: ObjectiveKind,
    /// Raw Bloch parameters, one 3-vector per key pair (y0, y1) lex.
    pub states: [[f64; 3]; 4],
    /// Per context, the [l00, re l10, im l10, l11] factors of every
    /// element except the last.
    pub povm_factors: Vec<Vec<[f64; 4]>>,
}

impl StrategyParams {
    pub fn from_flat(kind: ObjectiveKind, flat: &[f64]) -> Self {
        debug_assert_eq!(flat.len(), kind.dim());
        let mut states = [[0.0; 3]; 4];
        for (i, s) in states.iter_mut().enumerate() {
            s.copy_from_slice(&flat[i * 3..i * 3 + 3]);
        }
        let (contexts, outcomes) = kind.contexts();
        let mut povm_factors = Vec::with_capacity(contexts);
        let mut cursor = 12;
        for _ in 0..contexts {
            let mut factors = Vec::with_capacity(outcomes - 1);
            for _ in 0..outcomes - 1 {
                let mut f = [0.0; 4];
                f.copy_from_slice(&flat[cursor..cursor + 4]);
                factors.push(f);
                cursor += 4;
            }
            povm_factors.push(factors);
        }
        StrategyParams {
            kind,
            states,
            povm_factors,
        }
    }

    pub fn to_flat(&self) -> Vec<f64> {
        let mut flat = Vec::with_capacity(self.kind.dim());
        for s in &self.states {
            flat.extend_from_slice(s);
        }
        for context in &self.povm_factors {
            for f in context {
                flat.extend_from_slice(f);
            }
        }
        flat
    }

    /// Decoded states: raw vectors outside the Bloch ball are projected
    /// onto its surface.
    pub fn decode_states(&self) -> [QubitState; 4] {
        let decode = |r: [f64; 3]| {
            let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
            let clamped = if norm > 1.0 {
                [r[0] / norm, r[1] / norm, r[2] / norm]
            } else {
                r
            };
            QubitState::from_bloch(clamped).expect("inside the ball after projection")
        };
        [
            decode(self.states[0]),
            decode(self.states[1]),
            decode(self.states[2]),
            decode(self.states[3]),
        ]
    }

    /// Decoded POVM for one context. Every element but the last is a
    /// positive factor product; the set is scaled so the partial sum
    /// stays below the identity, and the last element is the completion.
    /// A completion eigenvalue below -1e-9 rejects the point; smaller
    /// violations are projected out and the set renormalised.
    pub fn decode_povm(&self, context: usize) -> Result<Povm> {
        let (_, outcomes) = self.kind.contexts();
        let factors = &self.povm_factors[context];
        let mut elements: Vec<Mat2> = factors
            .iter()
            .map(|&[l00, re, im, l11]| {
                let l = Mat2::new(
                    Complex64::new(l00, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(re, im),
                    Complex64::new(l11, 0.0),
                );
                l * l.adjoint()
            })
            .collect();
        let mut partial = Mat2::zero();
        for el in &elements {
            partial = partial + *el;
        }
        let top = partial.max_eigenvalue();
        if top > 1.0 {
            for el in &mut elements {
                *el = el.scale(1.0 / top);
            }
            partial = partial.scale(1.0 / top);
        }
        let completion = Mat2::identity() - partial;
        let min = completion.min_eigenvalue();
        if min < -1e-9 {
            return Err(Error::InvalidStrategy(format!(
                "POVM completion has eigenvalue {min:.3e}"
            )));
        }
        let completion = if min < 0.0 {
            // Clip the tiny negative part, then renormalise the whole set
            // so completeness holds to machine precision.
            let eig = completion.hermitian_eigen();
            let mut clipped = Mat2::zero();
            for (lambda, proj) in eig {
                clipped = clipped + proj.scale(lambda.max(0.0));
            }
            clipped
        } else {
            completion
        };
        elements.push(completion);
        let mut sum = Mat2::zero();
        for el in &elements {
            sum = sum + *el;
        }
        let w = sum.inv_sqrt().map_err(|_| {
            Error::InvalidStrategy("POVM sum not positive definite".into())
        })?;
        let elements: Vec<Mat2> = elements.into_iter().map(|el| w * el * w).collect();
        debug_assert_eq!(elements.len(), outcomes);
        Povm::new(elements)
    }
}

/// Cholesky-style encoding of a PSD matrix into the factor layout, used
/// to seed the search at handpicked strategies.
pub(crate) fn encode_psd(m: Mat2) -> [f64; 4] {
    let a = m.e[0][0].re.max(0.0);
    let l00 = a.sqrt();
    let l10 = if l00 > 1e-12 {
        m.e[1][0] / l00
    } else {
        Complex64::new(0.0, 0.0)
    };
    let rest = (m.e[1][1].re - l10.norm_sqr()).max(0.0);
    [l00, l10.re, l10.im, rest.sqrt()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::honest_measurement;
    use approx::assert_abs_diff_eq;

    #[test]
    fn flat_round_trip() {
        for kind in [ObjectiveKind::SingleGuessing, ObjectiveKind::DoubleGuessing] {
            let flat: Vec<f64> = (0..kind.dim()).map(|i| (i as f64) * 0.1 - 1.0).collect();
            let params = StrategyParams::from_flat(kind, &flat);
            assert_eq!(params.to_flat(), flat);
        }
    }

    #[test]
    fn decoded_povms_are_valid_for_wild_parameters() {
        for kind in [ObjectiveKind::SingleGuessing, ObjectiveKind::DoubleGuessing] {
            for scale in [0.1, 1.0, 3.7] {
                let flat: Vec<f64> = (0..kind.dim())
                    .map(|i| ((i * 2654435761) % 97) as f64 / 97.0 * 2.0 * scale - scale)
                    .collect();
                let params = StrategyParams::from_flat(kind, &flat);
                let (contexts, outcomes) = kind.contexts();
                for c in 0..contexts {
                    let povm = params.decode_povm(c).unwrap();
                    assert_eq!(povm.outcomes(), outcomes);
                }
            }
        }
    }

    #[test]
    fn encode_decode_projector_is_exact() {
        let proj = honest_measurement(0).projector_plus();
        let factors = encode_psd(proj);
        let l = Mat2::new(
            Complex64::new(factors[0], 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(factors[1], factors[2]),
            Complex64::new(factors[3], 0.0),
        );
        let rebuilt = l * l.adjoint();
        for r in 0..2 {
            for c in 0..2 {
                assert_abs_diff_eq!(rebuilt.e[r][c].re, proj.e[r][c].re, epsilon = 1e-12);
                assert_abs_diff_eq!(rebuilt.e[r][c].im, proj.e[r][c].im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn oversized_states_project_to_the_sphere() {
        let mut params = StrategyParams::from_flat(
            ObjectiveKind::SingleGuessing,
            &vec![0.0; ObjectiveKind::SingleGuessing.dim()],
        );
        params.states[0] = [3.0, 0.0, 4.0];
        let states = params.decode_states();
        let r = states[0].bloch_vector();
        assert_abs_diff_eq!(r[0], 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(r[2], 0.8, epsilon = 1e-12);
    }
}

