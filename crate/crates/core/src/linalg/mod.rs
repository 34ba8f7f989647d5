//! Small dense complex linear algebra.
//!
//! Everything here works on square matrices of a few dozen rows at most, so
//! the storage is a plain row-major `Vec` and the algorithms favour accuracy
//! and simplicity over blocking.

mod eigen;
mod expm;
mod lu;

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

pub use eigen::{eigenvalues, eigenvector_near, hermitian_eigen, HermitianEigen};
pub use expm::expm;
pub use lu::Lu;

pub type C64 = num_complex::Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from row slices. Panics if the rows are not square.
    pub fn from_rows(rows: &[&[C64]]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must form a square matrix");
        Self::from_fn(dim, |i, j| rows[i][j])
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = re(d);
        }
        m
    }

    /// Projector `|v><v|`.
    pub fn outer(v: &[C64], w: &[C64]) -> Self {
        assert_eq!(v.len(), w.len());
        Self::from_fn(v.len(), |i, j| v[i] * w[j].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(re(s))
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.dim, v.len(), "mul_vec dimension mismatch");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// `[self, rhs] = self*rhs - rhs*self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_re(0.5)
    }

    pub fn anti_hermitian_part(&self) -> Self {
        (self - &self.adjoint()).scale_re(0.5)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute column sum.
    pub fn norm_1(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Frobenius inner product `tr(self^dagger rhs)`.
    pub fn inner(&self, rhs: &Self) -> C64 {
        self.data.iter().zip(&rhs.data).map(|(a, b)| a.conj() * b).sum()
    }

    /// `max |self - self^dagger|` over entries.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Square submatrix on the given index set, in the given order.
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), |i, j| self[(idx[i], idx[j])])
    }

    /// `W^dagger M W` for the columns `W = [w_0, w_1, ...]`.
    pub fn compress(&self, columns: &[Vec<C64>]) -> Self {
        let images: Vec<Vec<C64>> = columns.iter().map(|w| self.mul_vec(w)).collect();
        Self::from_fn(columns.len(), |i, j| dot(&columns[i], &images[j]))
    }
}

/// `<v|w>` (antilinear in the first argument).
pub fn dot(v: &[C64], w: &[C64]) -> C64 {
    v.iter().zip(w).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalize(v: &mut [C64]) {
    let n = norm(v);
    if n > 0.0 {
        for z in v {
            *z /= n;
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Add for CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: CMatrix) -> CMatrix {
        &self + &rhs
    }
}

impl Sub for CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: CMatrix) -> CMatrix {
        &self - &rhs
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl Mul for CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: CMatrix) -> CMatrix {
        self.matmul(&rhs)
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.map(|z| -z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli_y() -> CMatrix {
        CMatrix::from_rows(&[&[ZERO, -I], &[I, ZERO]])
    }

    #[test]
    fn commutator_of_paulis() {
        let x = CMatrix::from_rows(&[&[ZERO, ONE], &[ONE, ZERO]]);
        let z = CMatrix::real_diag(&[1.0, -1.0]);
        let lhs = z.commutator(&x);
        let rhs = pauli_y().scale(C64::new(0.0, 2.0));
        assert!((&lhs - &rhs).max_abs() < 1e-15);
    }

    #[test]
    fn compress_onto_axis_vectors_is_submatrix() {
        let m = CMatrix::from_fn(3, |i, j| C64::new(i as f64, j as f64));
        let e0 = alloc::vec![ONE, ZERO, ZERO];
        let e2 = alloc::vec![ZERO, ZERO, ONE];
        let c = m.compress(&[e0, e2]);
        assert_eq!(c, m.submatrix(&[0, 2]));
    }

    #[test]
    fn hermiticity_residual_detects_asymmetry() {
        assert_eq!(pauli_y().hermiticity_residual(), 0.0);
        let mut m = pauli_y();
        m[(0, 1)] += re(1e-3);
        assert!((m.hermiticity_residual() - 1e-3).abs() < 1e-15);
    }
}
