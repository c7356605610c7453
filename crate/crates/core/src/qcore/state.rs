//! Single-qubit density matrices.

use num_complex::Complex64;

use super::mat2::Mat2;
use crate::{Error, Result, MATRIX_TOL};

/// A 2x2 density matrix: Hermitian, unit trace, positive semidefinite
/// (each within [`MATRIX_TOL`]). Dimension two is fixed by the type, which
/// is exactly the semi-device-independent dimension assumption.
///
/// Values are immutable once constructed; verification never tracks
/// post-measurement states because an accepted banknote is destroyed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    matrix: Mat2,
}

impl QubitState {
    /// Validates and wraps a raw matrix.
    pub fn from_matrix(matrix: Mat2) -> Result<Self> {
        let defect = matrix.hermiticity_defect();
        if defect > MATRIX_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (defect {defect:.3e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > MATRIX_TOL || tr.im.abs() > MATRIX_TOL {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let min = matrix.min_eigenvalue();
        if min < -MATRIX_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(QubitState { matrix })
    }

    /// State at Bloch vector `r`: (I + r.sigma)/2. Pure iff |r| = 1.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if norm > 1.0 + MATRIX_TOL {
            return Err(Error::UnphysicalBlochVector { norm });
        }
        let matrix = (Mat2::identity() + Mat2::dot_sigma(r)).scale(0.5);
        Ok(QubitState { matrix })
    }

    /// Pure state |psi><psi| from a normalised amplitude pair.
    pub fn from_ket(ket: [Complex64; 2]) -> Result<Self> {
        let norm2 = ket[0].norm_sqr() + ket[1].norm_sqr();
        if (norm2 - 1.0).abs() > MATRIX_TOL {
            return Err(Error::InvalidState(format!(
                "ket norm^2 {norm2} is not 1"
            )));
        }
        Ok(QubitState {
            matrix: Mat2::outer(ket),
        })
    }

    /// |0><0| — the north pole of the Bloch sphere.
    pub fn ket0() -> Self {
        QubitState {
            matrix: Mat2::outer([Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]),
        }
    }

    /// |1><1|.
    pub fn ket1() -> Self {
        QubitState {
            matrix: Mat2::outer([Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]),
        }
    }

    /// |+><+| = (|0>+|1>)(<0|+<1|)/2.
    pub fn plus() -> Self {
        let c = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        QubitState {
            matrix: Mat2::outer([c, c]),
        }
    }

    /// |-><-|.
    pub fn minus() -> Self {
        let c = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        QubitState {
            matrix: Mat2::outer([c, -c]),
        }
    }

    /// I/2.
    pub fn maximally_mixed() -> Self {
        QubitState {
            matrix: Mat2::identity().scale(0.5),
        }
    }

    pub fn matrix(&self) -> Mat2 {
        self.matrix
    }

    /// Bloch vector (Tr(rho sigma_x), Tr(rho sigma_y), Tr(rho sigma_z)).
    pub fn bloch_vector(&self) -> [f64; 3] {
        [
            self.matrix.real_trace_product(Mat2::pauli_x()),
            self.matrix.real_trace_product(Mat2::pauli_y()),
            self.matrix.real_trace_product(Mat2::pauli_z()),
        ]
    }

    /// True when the state is pure within tolerance (|r| = 1).
    pub fn is_pure(&self) -> bool {
        let r = self.bloch_vector();
        let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        (norm - 1.0).abs() <= 1e-9
    }
}

/// Spec-level constructor: returns (I + r.sigma)/2, rejecting |r| > 1.
pub fn bloch_to_state(r: [f64; 3]) -> Result<QubitState> {
    QubitState::from_bloch(r)
}
