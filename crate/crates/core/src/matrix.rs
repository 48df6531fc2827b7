//! Dense complex 2x2 matrices and 2-component kets.
//!
//! Everything here is closed form; no decompositions are stored.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

pub type Ket = [Complex64; 2];

/// Row-major complex 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub entries: [[Complex64; 2]; 2],
}

impl Matrix2 {
    pub const fn new(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn zero() -> Self {
        Self::new([[Complex64::new(0.0, 0.0); 2]; 2])
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new([[one, zero], [zero, one]])
    }

    /// `|u><v|`.
    pub fn outer(u: &Ket, v: &Ket) -> Self {
        Self::new([
            [u[0] * v[0].conj(), u[0] * v[1].conj()],
            [u[1] * v[0].conj(), u[1] * v[1].conj()],
        ])
    }

    /// Matrix whose columns are `first` and `second`.
    pub fn from_columns(first: &Ket, second: &Ket) -> Self {
        Self::new([[first[0], second[0]], [first[1], second[1]]])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.entries;
        Self::new([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = *self;
        out.entries.iter_mut().flatten().for_each(|z| *z *= factor);
        out
    }

    pub fn scale_complex(&self, factor: Complex64) -> Self {
        let mut out = *self;
        out.entries.iter_mut().flatten().for_each(|z| *z *= factor);
        out
    }

    pub fn apply(&self, ket: &Ket) -> Ket {
        let m = &self.entries;
        [
            m[0][0] * ket[0] + m[0][1] * ket[1],
            m[1][0] * ket[0] + m[1][1] * ket[1],
        ]
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Distance from Hermiticity, `max |M - M^dagger|`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Eigenvalues of the Hermitian part, ascending: `tr/2 -+ sqrt(((a-d)/2)^2 + |b|^2)`.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let a = self.entries[0][0].re;
        let d = self.entries[1][1].re;
        let b = 0.5 * (self.entries[0][1] + self.entries[1][0].conj());
        let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        let mid = 0.5 * (a + d);
        [mid - half_gap, mid + half_gap]
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;
    fn add(mut self, rhs: Matrix2) -> Matrix2 {
        for (a, b) in self
            .entries
            .iter_mut()
            .flatten()
            .zip(rhs.entries.iter().flatten())
        {
            *a += b;
        }
        self
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(mut self, rhs: Matrix2) -> Matrix2 {
        for (a, b) in self
            .entries
            .iter_mut()
            .flatten()
            .zip(rhs.entries.iter().flatten())
        {
            *a -= b;
        }
        self
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let a = &self.entries;
        let b = &rhs.entries;
        Matrix2::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j])
        }))
    }
}

/// `<u|v>`.
pub fn inner(u: &Ket, v: &Ket) -> Complex64 {
    u[0].conj() * v[0] + u[1].conj() * v[1]
}

pub fn norm_sqr(u: &Ket) -> f64 {
    u[0].norm_sqr() + u[1].norm_sqr()
}
