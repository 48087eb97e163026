use std::ops::Mul;

use num_complex::Complex64;

/// Complex 2x2 matrix in row-major order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2x2 {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl Matrix2x2 {
    pub fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Matrix2x2 { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Matrix2x2::new(one, zero, zero, one)
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Matrix2x2::new(self.m11 * s, self.m12 * s, self.m21 * s, self.m22 * s)
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.m11, self.m12, self.m21, self.m22]
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.entries().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `(|M11 - M22*|, |M12 - M21*|)`; both vanish for a time-reversal
    /// symmetric transfer matrix.
    pub fn conjugate_symmetry_deviation(&self) -> (f64, f64) {
        ((self.m11 - self.m22.conj()).norm(), (self.m12 - self.m21.conj()).norm())
    }
}

impl Mul for Matrix2x2 {
    type Output = Matrix2x2;

    fn mul(self, rhs: Matrix2x2) -> Matrix2x2 {
        Matrix2x2 {
            m11: self.m11 * rhs.m11 + self.m12 * rhs.m21,
            m12: self.m11 * rhs.m12 + self.m12 * rhs.m22,
            m21: self.m21 * rhs.m11 + self.m22 * rhs.m21,
            m22: self.m21 * rhs.m12 + self.m22 * rhs.m22,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_and_determinant() {
        let a = Matrix2x2::new(c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(3.0, 0.5));
        let b = Matrix2x2::new(c(0.5, 0.0), c(0.0, 2.0), c(1.0, 1.0), c(-1.0, 0.0));
        let ab = a * b;
        assert_eq!(ab.m11, c(1.0, 1.0) * c(0.5, 0.0) + c(2.0, 0.0) * c(1.0, 1.0));
        assert_eq!(ab.m22, c(0.0, -1.0) * c(0.0, 2.0) + c(3.0, 0.5) * c(-1.0, 0.0));
        assert!((ab.det() - a.det() * b.det()).norm() < 1e-13);
        assert_eq!(a * Matrix2x2::identity(), a);
    }

    #[test]
    fn symmetry_deviation_of_hermitian_like_pair() {
        let m = Matrix2x2::new(c(2.0, 1.0), c(0.5, -0.25), c(0.5, 0.25), c(2.0, -1.0));
        assert_eq!(m.conjugate_symmetry_deviation(), (0.0, 0.0));
        assert!(m.is_finite());
        assert!(!Matrix2x2::new(c(f64::INFINITY, 0.0), m.m12, m.m21, m.m22).is_finite());
    }
}
