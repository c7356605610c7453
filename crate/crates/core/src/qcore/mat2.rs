//! Minimal 2x2 complex matrix arithmetic.
//!
//! Everything in this crate lives in dimension two, so a fixed-size matrix
//! with closed-form Hermitian eigendecomposition beats a generic linear
//! algebra dependency: no allocation, no iterative solvers, and the
//! verification loops reuse the same projectors millions of times.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

/// 2x2 complex matrix in row-major order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub e: [[Complex64; 2]; 2],
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl Mat2 {
    pub fn new(e00: Complex64, e01: Complex64, e10: Complex64, e11: Complex64) -> Self {
        Mat2 {
            e: [[e00, e01], [e10, e11]],
        }
    }

    pub fn zero() -> Self {
        Mat2::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn pauli_x() -> Self {
        Mat2::new(ZERO, ONE, ONE, ZERO)
    }

    pub fn pauli_y() -> Self {
        Mat2::new(
            ZERO,
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            ZERO,
        )
    }

    pub fn pauli_z() -> Self {
        Mat2::new(ONE, ZERO, ZERO, -ONE)
    }

    /// n . sigma for a real 3-vector n (not necessarily unit length).
    pub fn dot_sigma(n: [f64; 3]) -> Self {
        Mat2::new(
            Complex64::new(n[2], 0.0),
            Complex64::new(n[0], -n[1]),
            Complex64::new(n[0], n[1]),
            Complex64::new(-n[2], 0.0),
        )
    }

    /// |ket><ket| for a (not necessarily normalised) 2-vector.
    pub fn outer(ket: [Complex64; 2]) -> Self {
        Mat2::new(
            ket[0] * ket[0].conj(),
            ket[0] * ket[1].conj(),
            ket[1] * ket[0].conj(),
            ket[1] * ket[1].conj(),
        )
    }

    pub fn scale(self, s: f64) -> Self {
        self.scale_c(Complex64::new(s, 0.0))
    }

    pub fn scale_c(self, s: Complex64) -> Self {
        Mat2::new(
            self.e[0][0] * s,
            self.e[0][1] * s,
            self.e[1][0] * s,
            self.e[1][1] * s,
        )
    }

    /// Conjugate transpose.
    pub fn adjoint(self) -> Self {
        Mat2::new(
            self.e[0][0].conj(),
            self.e[1][0].conj(),
            self.e[0][1].conj(),
            self.e[1][1].conj(),
        )
    }

    pub fn trace(self) -> Complex64 {
        self.e[0][0] + self.e[1][1]
    }

    pub fn det(self) -> Complex64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    /// Largest absolute deviation from the adjoint, elementwise.
    pub fn hermiticity_defect(self) -> f64 {
        let adj = self.adjoint();
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.e[r][c] - adj.e[r][c]).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Eigenvalues of a Hermitian matrix, ascending. Closed form; the
    /// caller is responsible for hermiticity.
    pub fn hermitian_eigenvalues(self) -> [f64; 2] {
        let a = self.e[0][0].re;
        let d = self.e[1][1].re;
        let b = self.e[0][1];
        let mid = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        [mid - rad, mid + rad]
    }

    /// Spectral decomposition of a Hermitian matrix: eigenvalues ascending
    /// with their rank-1 projectors. The lower projector is built as
    /// I - P_hi so the pair resolves the identity exactly even for
    /// nearly degenerate spectra, and the P_hi eigenvector uses whichever
    /// matrix row is better conditioned.
    pub fn hermitian_eigen(self) -> [(f64, Mat2); 2] {
        let [lo, hi] = self.hermitian_eigenvalues();
        let b = self.e[0][1];
        let a = self.e[0][0].re;
        let d = self.e[1][1].re;
        let scale = a.abs().max(d.abs()).max(b.norm()).max(1e-300);
        if b.norm() <= 1e-14 * scale {
            // Effectively diagonal; keep projectors aligned with the basis.
            return if a <= d {
                [
                    (lo, Mat2::outer([ONE, ZERO])),
                    (hi, Mat2::outer([ZERO, ONE])),
                ]
            } else {
                [
                    (lo, Mat2::outer([ZERO, ONE])),
                    (hi, Mat2::outer([ONE, ZERO])),
                ]
            };
        }
        // Eigenvector of hi from the row with the larger component:
        // (b, hi - a) from the first row, (hi - d, conj(b)) from the
        // second. hi - a and hi - d are both nonnegative.
        let v = if hi - a >= hi - d {
            [b, Complex64::new(hi - a, 0.0)]
        } else {
            [Complex64::new(hi - d, 0.0), b.conj()]
        };
        let norm2 = v[0].norm_sqr() + v[1].norm_sqr();
        let p_hi = Mat2::outer(v).scale(1.0 / norm2);
        [(lo, Mat2::identity() - p_hi), (hi, p_hi)]
    }

    /// Smallest eigenvalue of a Hermitian matrix.
    pub fn min_eigenvalue(self) -> f64 {
        self.hermitian_eigenvalues()[0]
    }

    /// Largest eigenvalue of a Hermitian matrix.
    pub fn max_eigenvalue(self) -> f64 {
        self.hermitian_eigenvalues()[1]
    }

    /// Inverse square root of a positive definite Hermitian matrix.
    pub fn inv_sqrt(self) -> crate::Result<Mat2> {
        let eig = self.hermitian_eigen();
        if eig[0].0 <= 0.0 {
            return Err(crate::Error::Internal(format!(
                "inverse square root of a non positive definite matrix (min eigenvalue {})",
                eig[0].0
            )));
        }
        let mut out = Mat2::zero();
        for (lambda, proj) in eig {
            out = out + proj.scale(1.0 / lambda.sqrt());
        }
        Ok(out)
    }

    /// Re(Tr(self * other)) — the Hilbert-Schmidt pairing used by the Born
    /// rule. Expanded by hand to keep hot verification loops allocation-free.
    pub fn real_trace_product(self, other: Mat2) -> f64 {
        let mut acc = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                let p = self.e[r][c] * other.e[c][r];
                acc += p.re;
            }
        }
        acc
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.e[0][0] + rhs.e[0][0],
            self.e[0][1] + rhs.e[0][1],
            self.e[1][0] + rhs.e[1][0],
            self.e[1][1] + rhs.e[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.e[0][0] - rhs.e[0][0],
            self.e[0][1] - rhs.e[0][1],
            self.e[1][0] - rhs.e[1][0],
            self.e[1][1] - rhs.e[1][1],
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] = self.e[r][0] * rhs.e[0][c] + self.e[r][1] * rhs.e[1][c];
            }
        }
        out
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn pauli_algebra() {
        let x = Mat2::pauli_x();
        let y = Mat2::pauli_y();
        let z = Mat2::pauli_z();
        assert_eq!(x * x, Mat2::identity());
        assert_eq!(y * y, Mat2::identity());
        assert_eq!(z * z, Mat2::identity());
        // xy = iz
        let xy = x * y;
        let iz = z.scale_c(Complex64::new(0.0, 1.0));
        assert_abs_diff_eq!((xy - iz).hermiticity_defect(), 0.0, epsilon = 0.0);
        assert_eq!(xy, iz);
    }

    #[test]
    fn eigen_of_dot_sigma_is_plus_minus_norm() {
        let n = [0.3f64, -0.4, 1.2];
        let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        let m = Mat2::dot_sigma(n);
        let [lo, hi] = m.hermitian_eigenvalues();
        assert_abs_diff_eq!(lo, -len, epsilon = 1e-12);
        assert_abs_diff_eq!(hi, len, epsilon = 1e-12);
        let eig = m.hermitian_eigen();
        // Projectors resolve the identity and reconstruct the matrix.
        let sum = eig[0].1 + eig[1].1;
        assert!((sum - Mat2::identity()).hermiticity_defect() < 1e-12);
        let rebuilt = eig[0].1.scale(eig[0].0) + eig[1].1.scale(eig[1].0);
        for r in 0..2 {
            for c in 0..2 {
                assert_abs_diff_eq!(rebuilt.e[r][c].re, m.e[r][c].re, epsilon = 1e-12);
                assert_abs_diff_eq!(rebuilt.e[r][c].im, m.e[r][c].im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn inv_sqrt_squares_back() {
        let m = Mat2::identity().scale(2.0) + Mat2::pauli_x().scale(0.5);
        let s = m.inv_sqrt().unwrap();
        let should_be_inverse = s * s * m;
        assert!((should_be_inverse - Mat2::identity()).hermiticity_defect() < 1e-12);
        for r in 0..2 {
            for c in 0..2 {
                let want = if r == c { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(should_be_inverse.e[r][c].re, want, epsilon = 1e-12);
            }
        }
    }
}
