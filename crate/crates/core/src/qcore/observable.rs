//! Dichotomic observables, POVMs, the Born rule and outcome sampling.

use rand::Rng;

use super::mat2::Mat2;
use super::state::QubitState;
use crate::{Error, Result, MATRIX_TOL};

/// A +-1-valued observable with its spectral decomposition precomputed at
/// construction — verification loops reuse the projectors millions of
/// times, so they are never recomputed lazily.
///
/// Outcome convention: POVM outcome `0` is the +1 eigenspace, outcome `1`
/// the -1 eigenspace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observable {
    matrix: Mat2,
    projector_plus: Mat2,
    projector_minus: Mat2,
}

impl Observable {
    /// n.sigma for a unit direction n, with projectors (I +- n.sigma)/2.
    pub fn from_direction(n: [f64; 3]) -> Result<Self> {
        let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::NonUnitDirection { norm });
        }
        let ns = Mat2::dot_sigma(n);
        let id = Mat2::identity();
        Ok(Observable {
            matrix: ns,
            projector_plus: (id + ns).scale(0.5),
            projector_minus: (id - ns).scale(0.5),
        })
    }

    /// Wraps an arbitrary Hermitian matrix whose spectrum is exactly
    /// {+1, -1} within [`MATRIX_TOL`].
    pub fn from_matrix(matrix: Mat2) -> Result<Self> {
        if !matrix.is_hermitian(MATRIX_TOL) {
            return Err(Error::InvalidObservable("not Hermitian".into()));
        }
        let eig = matrix.hermitian_eigen();
        let (lo, p_lo) = eig[0];
        let (hi, p_hi) = eig[1];
        if (lo + 1.0).abs() > MATRIX_TOL || (hi - 1.0).abs() > MATRIX_TOL {
            return Err(Error::InvalidObservable(format!(
                "eigenvalues {{{lo}, {hi}}} are not {{-1, +1}}"
            )));
        }
        Ok(Observable {
            matrix,
            projector_plus: p_hi,
            projector_minus: p_lo,
        })
    }

    pub fn sigma_x() -> Self {
        Observable::from_direction([1.0, 0.0, 0.0]).expect("unit direction")
    }

    pub fn sigma_z() -> Self {
        Observable::from_direction([0.0, 0.0, 1.0]).expect("unit direction")
    }

    pub fn matrix(&self) -> Mat2 {
        self.matrix
    }

    /// Projector onto the +1 eigenspace.
    pub fn projector_plus(&self) -> Mat2 {
        self.projector_plus
    }

    /// Projector onto the -1 eigenspace.
    pub fn projector_minus(&self) -> Mat2 {
        self.projector_minus
    }

    /// Two-outcome POVM {P_+, P_-}; outcome 0 is the +1 eigenvalue.
    pub fn povm(&self) -> Povm {
        Povm {
            elements: vec![self.projector_plus, self.projector_minus],
        }
    }

    /// Expectation value Tr(rho A).
    pub fn expectation(&self, state: &QubitState) -> f64 {
        state.matrix().real_trace_product(self.matrix)
    }
}

/// Spec-level constructor alias of [`Observable::from_direction`].
pub fn observable_from_direction(n: [f64; 3]) -> Result<Observable> {
    Observable::from_direction(n)
}

/// A positive operator-valued measure: one PSD element per outcome label,
/// elements summing to the identity (both within [`MATRIX_TOL`]).
/// Outcomes are labelled by their index.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: Vec<Mat2>,
}

impl Povm {
    pub fn new(elements: Vec<Mat2>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidPovm("no elements".into()));
        }
        let mut sum = Mat2::zero();
        for (i, el) in elements.iter().enumerate() {
            if !el.is_hermitian(MATRIX_TOL) {
                return Err(Error::InvalidPovm(format!("element {i} is not Hermitian")));
            }
            let min = el.min_eigenvalue();
            if min < -MATRIX_TOL {
                return Err(Error::InvalidPovm(format!(
                    "element {i} has negative eigenvalue {min:.3e}"
                )));
            }
            sum = sum + *el;
        }
        let defect = (sum - Mat2::identity()).hermitian_eigenvalues();
        let worst = defect[0].abs().max(defect[1].abs());
        if worst > MATRIX_TOL {
            return Err(Error::InvalidPovm(format!(
                "elements sum to identity with defect {worst:.3e}"
            )));
        }
        Ok(Povm { elements })
    }

    pub fn outcomes(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, outcome: usize) -> Option<&Mat2> {
        self.elements.get(outcome)
    }

    /// Probability vector over all outcomes, clamped to [0, 1].
    pub fn probabilities(&self, state: &QubitState) -> Vec<f64> {
        self.elements
            .iter()
            .map(|el| state.matrix().real_trace_product(*el).clamp(0.0, 1.0))
            .collect()
    }
}

/// Born rule: Tr(rho E_outcome), clamped to [0, 1].
pub fn born(state: &QubitState, povm: &Povm, outcome: usize) -> Result<f64> {
    let el = povm.element(outcome).ok_or(Error::UnknownOutcome {
        outcome,
        outcomes: povm.outcomes(),
    })?;
    Ok(state.matrix().real_trace_product(*el).clamp(0.0, 1.0))
}

/// Draws an outcome with Born-rule weights. Deterministic given the state
/// of the randomness stream; the final outcome absorbs any rounding
/// residue so the draw always lands on a label.
pub fn sample_outcome<R: Rng + ?Sized>(state: &QubitState, povm: &Povm, rng: &mut R) -> usize {
    let probs = povm.probabilities(state);
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    probs.len() - 1
}
