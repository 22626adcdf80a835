//! Dense complex 2x2 matrices.
//!
//! Everything in the coin Hilbert space is a 2x2 complex matrix at double
//! precision; this module is the arithmetic workhorse for all of them.
//! Basis order is (|R>, |L>) with |R> = (1,0)^T and |L> = (0,1)^T.

use num_complex::Complex64;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

/// A 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[Complex64::new(0.0, 0.0); 2]; 2]);

    pub fn identity() -> Mat2 {
        Mat2([
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ])
    }

    pub fn new(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Mat2 {
        Mat2([[m00, m01], [m10, m11]])
    }

    /// |i><j| in the (|R>, |L>) basis, i, j in {0, 1}.
    pub fn ket_bra(i: usize, j: usize) -> Mat2 {
        let mut m = Mat2::ZERO;
        m.0[i][j] = Complex64::new(1.0, 0.0);
        m
    }

    /// Pauli matrices (sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z).
    pub fn pauli(i: usize) -> Mat2 {
        let one = Complex64::new(1.0, 0.0);
        let im = Complex64::new(0.0, 1.0);
        match i {
            0 => Mat2::identity(),
            1 => Mat2::new(Complex64::default(), one, one, Complex64::default()),
            2 => Mat2::new(Complex64::default(), -im, im, Complex64::default()),
            3 => Mat2::new(one, Complex64::default(), Complex64::default(), -one),
            _ => panic!("pauli index out of range: {i}"),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat2 {
        Mat2([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        out
    }

    pub fn scale_re(&self, s: f64) -> Mat2 {
        self.scale(Complex64::new(s, 0.0))
    }

    /// A * v for a coin state vector v = (v_R, v_L).
    pub fn mul_vec(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise |self - other|.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    /// Largest entrywise deviation from self = self^dagger.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (self.adjoint() * *self).max_abs_diff(&Mat2::identity()) <= tol
    }

    /// Eigenvalues of a Hermitian matrix via the trace/determinant closed form,
    /// returned as (min, max).
    pub fn hermitian_eigenvalues(&self) -> (f64, f64) {
        let tr = self.trace().re;
        let det = self.det().re;
        let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
        (tr / 2.0 - disc, tr / 2.0 + disc)
    }
}

impl Index<(usize, usize)> for Mat2 {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat2 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = self;
        out += rhs;
        out
    }
}

impl AddAssign for Mat2 {
    fn add_assign(&mut self, rhs: Mat2) {
        for i in 0..2 {
            for j in 0..2 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] -= rhs.0[i][j];
            }
        }
        out
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale_re(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_algebra() {
        // sigma_i^2 = I and the cyclic product sigma_1 sigma_2 = i sigma_3
        for i in 0..4 {
            let s = Mat2::pauli(i);
            assert!(s.is_hermitian(0.0));
            assert!((s * s).max_abs_diff(&Mat2::identity()) < 1e-15);
        }
        let prod = Mat2::pauli(1) * Mat2::pauli(2);
        let expect = Mat2::pauli(3).scale(c(0.0, 1.0));
        assert!(prod.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn adjoint_and_trace() {
        let m = Mat2::new(c(1.0, 2.0), c(3.0, -1.0), c(0.0, 4.0), c(-2.0, 0.5));
        let a = m.adjoint();
        assert_eq!(a[(0, 1)], c(0.0, -4.0));
        assert_eq!(a[(1, 0)], c(3.0, 1.0));
        assert_eq!(m.trace(), c(-1.0, 2.5));
    }

    #[test]
    fn hermitian_eigenvalues_closed_form() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let m = Mat2::new(c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0));
        let (lo, hi) = m.hermitian_eigenvalues();
        assert!((lo - 1.0).abs() < 1e-14);
        assert!((hi - 3.0).abs() < 1e-14);
    }

    #[test]
    fn mul_vec_matches_matrix_product() {
        let m = Mat2::new(c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(1.0, 0.0));
        let v = [c(0.5, 0.0), c(0.0, 0.5)];
        let got = m.mul_vec(v);
        assert_eq!(got[0], m[(0, 0)] * v[0] + m[(0, 1)] * v[1]);
        assert_eq!(got[1], m[(1, 0)] * v[0] + m[(1, 1)] * v[1]);
    }
}
