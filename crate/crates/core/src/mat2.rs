//! Minimal 2×2 complex matrices for qubit-level algebra.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex;

use crate::scalar::Real;

/// Row-major 2×2 complex matrix; `m[r][c]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T: Real> {
    pub m: [[Complex<T>; 2]; 2],
}

impl<T: Real> Mat2<T> {
    pub fn new(m00: Complex<T>, m01: Complex<T>, m10: Complex<T>, m11: Complex<T>) -> Self {
        Self { m: [[m00, m01], [m10, m11]] }
    }

    pub fn from_real(m00: T, m01: T, m10: T, m11: T) -> Self {
        let c = |x| Complex::new(x, T::zero());
        Self::new(c(m00), c(m01), c(m10), c(m11))
    }

    pub fn zero() -> Self {
        Self::from_real(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn identity() -> Self {
        Self::from_real(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn sigma_x() -> Self {
        Self::from_real(T::zero(), T::one(), T::one(), T::zero())
    }

    pub fn sigma_z() -> Self {
        Self::from_real(T::one(), T::zero(), T::zero(), -T::one())
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.m[r][c]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn transpose(&self) -> Self {
        let m = &self.m;
        Self::new(m[0][0], m[1][0], m[0][1], m[1][1])
    }

    pub fn trace(&self) -> Complex<T> {
        self.m[0][0] + self.m[1][1]
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        let m = &self.m;
        Self::new(m[0][0] * k, m[0][1] * k, m[1][0] * k, m[1][1] * k)
    }

    /// Largest elementwise modulus.
    pub fn max_abs(&self) -> T {
        self.m.iter().flatten().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn frobenius_norm(&self) -> T {
        self.m.iter().flatten().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt()
    }

    /// Distance from hermiticity, `max |A - A†|`.
    pub fn hermiticity_defect(&self) -> T {
        (*self - self.adjoint()).max_abs()
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> [T; 2] {
        let a = self.m[0][0].re;
        let d = self.m[1][1].re;
        let b = (self.m[1][0] + self.m[0][1].conj()).scale(T::lit(0.5));
        let half_tr = (a + d) * T::lit(0.5);
        let half_gap = ((a - d) * T::lit(0.5)).hypot(b.norm());
        [half_tr - half_gap, half_tr + half_gap]
    }
}

impl<T: Real> Add for Mat2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (a, b) = (&self.m, &o.m);
        Self::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl<T: Real> Sub for Mat2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let (a, b) = (&self.m, &o.m);
        Self::new(a[0][0] - b[0][0], a[0][1] - b[0][1], a[1][0] - b[1][0], a[1][1] - b[1][1])
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (&self.m, &o.m);
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}
