// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra shared by every other module.
//!
//! Tensor ordering is fixed globally: qubit 1 ⊗ qubit 2 ⊗ … ⊗ qubit N ⊗ Fock,
//! with qubit 1 the most significant bit of a register index and |0⟩ the +1
//! eigenstate of σz. Matrices are stored row-major.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::parallel::{self, Execution};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Dimension cap for dense operators unless explicitly overridden.
pub const DEFAULT_DENSE_CAP: usize = 1 << 18;

/// Tolerance used for the Hermiticity precondition of [`expm_hermitian`].
pub const HERMITICITY_TOL: f64 = 1e-10;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("dimension cap exceeded: {dim} > {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("hermiticity violation: ‖H − H†‖_max = {defect:e}")]
    Hermiticity { defect: f64 },
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square: {rows}×{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("unitarity violation: ‖U†U − I‖_max = {defect:e} > {tol:e}")]
    NotUnitary { defect: f64, tol: f64 },
    #[error("ragged rows: expected {expected} columns, row {row} has {found}")]
    Ragged {
        expected: usize,
        row: usize,
        found: usize,
    },
}

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}×{} [", self.rows, self.cols)?;
        for r in 0..self.rows.min(16) {
            write!(f, "  ")?;
            for c in 0..self.cols.min(16) {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * n + i] = *d;
        }
        m
    }

    /// Builds a matrix from row vectors, rejecting ragged or non-finite input.
    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self, NumericsError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(NumericsError::Ragged {
                    expected: ncols,
                    row: r,
                    found: row.len(),
                });
            }
            for (c, z) in row.into_iter().enumerate() {
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(NumericsError::NonFinite { row: r, col: c });
                }
                data.push(z);
            }
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// 2×2 matrix from row-major entries.
    pub fn mat2(a: C64, b: C64, c: C64, d: C64) -> Self {
        Self {
            rows: 2,
            cols: 2,
            data: vec![a, b, c, d],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus, ‖·‖_max.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// ‖self − other‖_max; panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(
            self.shape(),
            other.shape(),
            "shape mismatch in max_abs_diff"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// ‖U†U − I‖_max.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let g = self.dagger().matmul(self);
        g.max_abs_diff(&Self::identity(self.rows))
    }

    pub fn check_unitary(&self, tol: f64) -> Result<(), NumericsError> {
        let defect = self.unitarity_defect();
        if defect <= tol {
            Ok(())
        } else {
            Err(NumericsError::NotUnitary { defect, tol })
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        self.matmul_with(other, Execution::default())
    }

    /// Row-parallel matrix product; each output row is reduced in the same
    /// order regardless of `exec`, so results are bitwise reproducible.
    pub fn matmul_with(&self, other: &Self, exec: Execution) -> Self {
        assert_eq!(
            self.cols,
            other.rows,
            "matmul shape mismatch {:?} · {:?}",
            self.shape(),
            other.shape()
        );
        let n = other.cols;
        let mut out = Self::zeros(self.rows, n);
        if n == 0 {
            return out;
        }
        parallel::for_each_chunk_mut(exec, &mut out.data, n, |r, out_row| {
            let lhs = self.row(r);
            for (k, a) in lhs.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rhs = other.row(k);
                for (o, b) in out_row.iter_mut().zip(rhs) {
                    *o += a * b;
                }
            }
        });
        out
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "apply shape mismatch");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Commutator self·other − other·self.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    /// Top-left `rows × cols` block.
    pub fn block(&self, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self[(r, c)])
    }

    fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    fn from_nalgebra(m: &DMatrix<C64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "add shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "sub shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Normalized-or-not state vector. Engine code never renormalizes silently;
/// norm leakage is measured and reported instead.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>) -> Self {
        Self { amplitudes }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self {
            amplitudes: self.amplitudes.iter().map(|z| z / n).collect(),
        }
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> C64 {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |⟨self|other⟩|².
    pub fn overlap_probability(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn apply(&self, m: &ComplexMatrix) -> Self {
        Self::new(m.apply(&self.amplitudes))
    }
}

/// Kronecker product with the default dimension cap.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, NumericsError> {
    kron_capped(a, b, DEFAULT_DENSE_CAP)
}

/// Kronecker product; `a` is the left (more significant) factor.
pub fn kron_capped(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    cap: usize,
) -> Result<ComplexMatrix, NumericsError> {
    let rows = a.rows.saturating_mul(b.rows);
    let cols = a.cols.saturating_mul(b.cols);
    let dim = rows.max(cols);
    if dim > cap {
        return Err(NumericsError::DimensionCap { dim, cap });
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let x = a[(ar, ac)];
            if x == ZERO {
                continue;
            }
            for br in 0..b.rows {
                let dst = (ar * b.rows + br) * cols + ac * b.cols;
                let src = b.row(br);
                for (o, y) in out.data[dst..dst + b.cols].iter_mut().zip(src) {
                    *o = x * y;
                }
            }
        }
    }
    Ok(out)
}

/// Spectral decomposition of a Hermitian matrix: eigenvalues ascending,
/// eigenvectors as the matching columns of a unitary matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// V · diag(f(λ)) · V†.
    pub fn map(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.values.len();
        let fv: Vec<C64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        let mut scaled = v.clone();
        for r in 0..n {
            for c in 0..n {
                scaled[(r, c)] *= fv[c];
            }
        }
        scaled.matmul(&v.dagger())
    }
}

pub fn eigh(h: &ComplexMatrix) -> Result<HermitianEigen, NumericsError> {
    if !h.is_square() {
        return Err(NumericsError::NotSquare {
            rows: h.rows,
            cols: h.cols,
        });
    }
    let defect = h.hermiticity_defect();
    if defect > HERMITICITY_TOL {
        return Err(NumericsError::Hermiticity { defect });
    }
    let n = h.rows;
    if n == 0 {
        return Ok(HermitianEigen {
            values: vec![],
            vectors: ComplexMatrix::zeros(0, 0),
        });
    }
    // Symmetrize exactly before handing to the solver.
    let sym = ComplexMatrix::from_fn(n, n, |r, c| (h[(r, c)] + h[(c, r)].conj()) * 0.5);
    let eig = nalgebra::SymmetricEigen::new(sym.to_nalgebra());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let raw = ComplexMatrix::from_nalgebra(&eig.eigenvectors);
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| raw[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

/// e^{−iHt} through the Hermitian eigendecomposition of `h`.
pub fn expm_hermitian(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix, NumericsError> {
    let eig = eigh(h)?;
    Ok(eig.map(|l| C64::from_polar(1.0, -l * t)))
}

/// Applies a real function to a Hermitian matrix spectrally.
pub fn hermitian_function(
    h: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
) -> Result<ComplexMatrix, NumericsError> {
    let eig = eigh(h)?;
    Ok(eig.map(|l| C64::new(f(l), 0.0)))
}

/// |tr(U†V)|²/d², invariant under a global phase of either argument.
pub fn process_fidelity(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<f64, NumericsError> {
    if !u.is_square() {
        return Err(NumericsError::NotSquare {
            rows: u.rows,
            cols: u.cols,
        });
    }
    if u.shape() != v.shape() {
        return Err(NumericsError::DimensionMismatch {
            left: u.shape(),
            right: v.shape(),
        });
    }
    let d = u.rows as f64;
    let tr: C64 = u.data.iter().zip(&v.data).map(|(a, b)| a.conj() * b).sum();
    Ok((tr.norm_sqr() / (d * d)).clamp(0.0, 1.0))
}

/// Single-qubit Pauli matrices and the 2×2 identity.
pub mod pauli_matrices {
    use super::{ComplexMatrix, I, ONE, ZERO};

    pub fn id2() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }
    pub fn sx() -> ComplexMatrix {
        ComplexMatrix::mat2(ZERO, ONE, ONE, ZERO)
    }
    pub fn sy() -> ComplexMatrix {
        ComplexMatrix::mat2(ZERO, -I, I, ZERO)
    }
    pub fn sz() -> ComplexMatrix {
        ComplexMatrix::mat2(ONE, ZERO, ZERO, -ONE)
    }
    pub fn hadamard() -> ComplexMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::mat2(ONE * s, ONE * s, ONE * s, -ONE * s)
    }
}

#[cfg(test)]
mod tests {
    use super::pauli_matrices::*;
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn kron_identity() {
        let k = kron(&id2(), &id2()).unwrap();
        assert_eq!(k, ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_block_structure() {
        // σz ⊗ σx = diag-blocks (+σx, −σx)
        let k = kron(&sz(), &sx()).unwrap();
        let expected = ComplexMatrix::from_rows(vec![
            vec![ZERO, ONE, ZERO, ZERO],
            vec![ONE, ZERO, ZERO, ZERO],
            vec![ZERO, ZERO, ZERO, -ONE],
            vec![ZERO, ZERO, -ONE, ZERO],
        ])
        .unwrap();
        assert_eq!(k, expected);
    }

    #[test]
    fn kron_cap() {
        let a = ComplexMatrix::identity(8);
        let err = kron_capped(&a, &a, 32).unwrap_err();
        assert_eq!(err, NumericsError::DimensionCap { dim: 64, cap: 32 });
    }

    #[test]
    fn expm_zero_and_diagonal() {
        let z = ComplexMatrix::zeros(3, 3);
        assert!(
            expm_hermitian(&z, 1.3)
                .unwrap()
                .max_abs_diff(&ComplexMatrix::identity(3))
                < 1e-15
        );
        let u = expm_hermitian(&sz(), PI / 2.0).unwrap();
        let expected = ComplexMatrix::from_diagonal(&[c(0.0, -1.0), c(0.0, 1.0)]);
        assert!(u.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn expm_sigma_x_matches_power_series() {
        // Power-series oracle: Σ (−iHt)^k / k!.
        let t = PI / 4.0;
        let h = sx();
        let mut term = ComplexMatrix::identity(2);
        let mut sum = ComplexMatrix::identity(2);
        for k in 1..40 {
            term = term.matmul(&h).scale(c(0.0, -t / k as f64));
            sum = &sum + &term;
        }
        let u = expm_hermitian(&h, t).unwrap();
        assert!(u.max_abs_diff(&sum) < 1e-12);
        let closed = &id2().scale(c(t.cos(), 0.0)) - &sx().scale(c(0.0, t.sin()));
        assert!(u.max_abs_diff(&closed) < 1e-12);
    }

    #[test]
    fn expm_rejects_non_hermitian() {
        let m = ComplexMatrix::mat2(ZERO, ONE, ZERO, ZERO);
        match expm_hermitian(&m, 1.0) {
            Err(NumericsError::Hermiticity { defect }) => assert!((defect - 1.0).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fidelity_basic_cases() {
        let u = expm_hermitian(&sx(), 0.3).unwrap();
        assert!((process_fidelity(&u, &u).unwrap() - 1.0).abs() < 1e-14);
        let phased = u.scale(C64::from_polar(1.0, 0.77));
        assert!((process_fidelity(&u, &phased).unwrap() - 1.0).abs() < 1e-14);
        assert!(process_fidelity(&id2(), &sx()).unwrap().abs() < 1e-15);
        assert!(process_fidelity(&id2(), &ComplexMatrix::identity(4)).is_err());
    }

    #[test]
    fn from_rows_rejects_nan() {
        let r = ComplexMatrix::from_rows(vec![vec![c(f64::NAN, 0.0)]]);
        assert!(matches!(r, Err(NumericsError::NonFinite { .. })));
    }

    #[test]
    fn eigh_degenerate_spectrum() {
        let h = kron(&sz(), &id2()).unwrap();
        let e = eigh(&h).unwrap();
        assert_eq!(e.values.len(), 4);
        assert!((e.values[0] + 1.0).abs() < 1e-14 && (e.values[3] - 1.0).abs() < 1e-14);
        assert!(e.vectors.unitarity_defect() < 1e-13);
        let rebuilt = e.map(|l| c(l, 0.0));
        assert!(rebuilt.max_abs_diff(&h) < 1e-13);
    }
}
