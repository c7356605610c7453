//! Two-qubit pure states: the minimum machinery for the superdense-coding
//! attack — Bell pairs, local Paulis on one half, and a Bell-basis
//! measurement. There is deliberately no general two-qubit evolution.

use num_complex::Complex64;

use super::mat2::Mat2;
use super::state::QubitState;
use crate::{Bit, Error, Result, MATRIX_TOL};

/// Pure state of two qubits, amplitudes ordered |00>, |01>, |10>, |11>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitPureState {
    amps: [Complex64; 4],
}

/// One of the four single-qubit Paulis used for superdense encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> Mat2 {
        match self {
            Pauli::I => Mat2::identity(),
            Pauli::X => Mat2::pauli_x(),
            Pauli::Y => Mat2::pauli_y(),
            Pauli::Z => Mat2::pauli_z(),
        }
    }
}

impl TwoQubitPureState {
    pub fn new(amps: [Complex64; 4]) -> Result<Self> {
        let norm2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > MATRIX_TOL {
            return Err(Error::InvalidState(format!(
                "two-qubit amplitude norm^2 {norm2} is not 1"
            )));
        }
        Ok(TwoQubitPureState { amps })
    }

    /// (|00> + |11>)/sqrt(2).
    pub fn bell_phi_plus() -> Self {
        let c = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        TwoQubitPureState {
            amps: [c, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), c],
        }
    }

    pub fn amplitudes(&self) -> [Complex64; 4] {
        self.amps
    }

    /// Applies (op ⊗ I), i.e. a local operation on the first qubit.
    pub fn apply_first(&self, op: Mat2) -> Self {
        let a = self.amps;
        TwoQubitPureState {
            amps: [
                op.e[0][0] * a[0] + op.e[0][1] * a[2],
                op.e[0][0] * a[1] + op.e[0][1] * a[3],
                op.e[1][0] * a[0] + op.e[1][1] * a[2],
                op.e[1][0] * a[1] + op.e[1][1] * a[3],
            ],
        }
    }

    /// Reduced state of the first qubit (partial trace over the second).
    pub fn reduced_first(&self) -> QubitState {
        let a = self.amps;
        let m = Mat2::new(
            a[0] * a[0].conj() + a[1] * a[1].conj(),
            a[0] * a[2].conj() + a[1] * a[3].conj(),
            a[2] * a[0].conj() + a[3] * a[1].conj(),
            a[2] * a[2].conj() + a[3] * a[3].conj(),
        );
        QubitState::from_matrix(m).expect("partial trace of a pure state is a valid state")
    }

    /// Overlap probabilities |<bell_i|psi>|^2 against the Bell basis
    /// ordered (phi+, phi-, psi+, psi-).
    pub fn bell_overlaps(&self) -> [f64; 4] {
        let c = std::f64::consts::FRAC_1_SQRT_2;
        let a = self.amps;
        let phi_plus = a[0] * c + a[3] * c;
        let phi_minus = a[0] * c - a[3] * c;
        let psi_plus = a[1] * c + a[2] * c;
        let psi_minus = a[1] * c - a[2] * c;
        [
            phi_plus.norm_sqr(),
            phi_minus.norm_sqr(),
            psi_plus.norm_sqr(),
            psi_minus.norm_sqr(),
        ]
    }
}

/// Pauli used to superdense-encode the bit pair (y0, y1):
/// sigma_x^(y1) . sigma_z^(y0).
fn encoding_pauli(y0: Bit, y1: Bit) -> Mat2 {
    match (y0, y1) {
        (0, 0) => Pauli::I.matrix(),
        (1, 0) => Pauli::Z.matrix(),
        (0, 1) => Pauli::X.matrix(),
        _ => Pauli::X.matrix() * Pauli::Z.matrix(),
    }
}

/// Superdense round trip: encode (y0, y1) as a local Pauli on one half of
/// a Bell pair, Bell-measure both halves, decode. The four encoded states
/// are orthogonal Bell states, so decoding is exact — the matching overlap
/// is 1 and the other three are 0.
pub fn singlet_encode_decode(y0: Bit, y1: Bit) -> (Bit, Bit) {
    let encoded = TwoQubitPureState::bell_phi_plus().apply_first(encoding_pauli(y0, y1));
    let overlaps = encoded.bell_overlaps();
    let (winner, weight) = overlaps
        .iter()
        .copied()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("four overlaps");
    debug_assert!((weight - 1.0).abs() < MATRIX_TOL);
    match winner {
        0 => (0, 0), // phi+
        1 => (1, 0), // phi-  (sigma_z)
        2 => (0, 1), // psi+  (sigma_x)
        _ => (1, 1), // psi-  (sigma_x sigma_z, up to phase)
    }
}
