// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::numerics::{eigh, ComplexMatrix, C64, ONE, ZERO};

use super::pauli::{parse_terms, Pauli, PauliLabel, PauliSum};
use super::QubitError;

/// Eigenvalues closer than this are merged into one projector.
pub const MERGE_TOL: f64 = 1e-9;
/// Tolerance of [`classify`] and [`commutation_check`].
pub const ALGEBRA_TOL: f64 = 1e-10;
/// Largest register with a dense (non-diagonal) spectral decomposition.
pub const MAX_DENSE_SPECTRUM_QUBITS: usize = 10;
/// Largest register with a computational-basis spectral decomposition.
pub const MAX_DIAGONAL_SPECTRUM_QUBITS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn pauli(self) -> Pauli {
        match self {
            Axis::X => Pauli::X,
            Axis::Y => Pauli::Y,
            Axis::Z => Pauli::Z,
        }
    }
}

/// Distinct eigenvalues (ascending) and the eigenbasis grouping.
#[derive(Clone, Debug)]
pub struct Spectrum {
    values: Vec<f64>,
    basis: SpectralBasis,
}

#[derive(Clone, Debug)]
pub enum SpectralBasis {
    /// Operator is diagonal; `levels[b]` indexes the eigenvalue of |b⟩.
    Computational { levels: Vec<usize> },
    /// Columns of `vectors` are eigenvectors; `levels[c]` indexes column c.
    Dense {
        vectors: ComplexMatrix,
        levels: Vec<usize>,
    },
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn basis(&self) -> &SpectralBasis {
        &self.basis
    }

    pub fn levels(&self) -> &[usize] {
        match &self.basis {
            SpectralBasis::Computational { levels } | SpectralBasis::Dense { levels, .. } => levels,
        }
    }

    pub fn dim(&self) -> usize {
        self.levels().len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.values.len()];
        for &l in self.levels() {
            r[l] += 1;
        }
        r
    }

    pub fn projector(&self, k: usize) -> ComplexMatrix {
        let d = self.dim();
        match &self.basis {
            SpectralBasis::Computational { levels } => {
                let diag: Vec<C64> = levels
                    .iter()
                    .map(|&l| if l == k { ONE } else { ZERO })
                    .collect();
                ComplexMatrix::from_diagonal(&diag)
            }
            SpectralBasis::Dense { vectors, levels } => {
                let cols: Vec<usize> = (0..d).filter(|&c| levels[c] == k).collect();
                ComplexMatrix::from_fn(d, d, |r, s| {
                    cols.iter()
                        .map(|&c| vectors[(r, c)] * vectors[(s, c)].conj())
                        .sum()
                })
            }
        }
    }

    /// V · diag(f(λ)) · V† with f evaluated per distinct eigenvalue.
    pub fn map(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let fv: Vec<C64> = self.values.iter().map(|&v| f(v)).collect();
        match &self.basis {
            SpectralBasis::Computational { levels } => {
                let diag: Vec<C64> = levels.iter().map(|&l| fv[l]).collect();
                ComplexMatrix::from_diagonal(&diag)
            }
            SpectralBasis::Dense { vectors, levels } => {
                let d = levels.len();
                let mut scaled = vectors.clone();
                for r in 0..d {
                    for c in 0..d {
                        scaled[(r, c)] *= fv[levels[c]];
                    }
                }
                scaled.matmul(&vectors.dagger())
            }
        }
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|v| ONE * v)
    }
}

/// Groups ascending values into clusters no wider than MERGE_TOL per gap.
fn merge_levels(sorted: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut values: Vec<f64> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    let mut idx = Vec::with_capacity(sorted.len());
    let mut last = f64::NEG_INFINITY;
    for &v in sorted {
        if values.is_empty() || v - last > MERGE_TOL {
            values.push(v);
            counts.push(1);
        } else {
            let k = values.len() - 1;
            values[k] += (v - values[k]) / (counts[k] + 1) as f64;
            counts[k] += 1;
        }
        last = v;
        idx.push(values.len() - 1);
    }
    (values, idx)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorClass {
    SelfInverse,
    Idempotent,
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Commute,
    Anticommute,
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CommutationReport {
    pub relation: Relation,
    pub residual: f64,
}

/// Hermitian operator on a qubit register as a real Pauli sum.
#[derive(Clone, Debug)]
pub struct QubitOperator {
    sum: PauliSum,
    spectrum: OnceLock<Result<Arc<Spectrum>, QubitError>>,
}

impl PartialEq for QubitOperator {
    fn eq(&self, other: &Self) -> bool {
        self.sum == other.sum
    }
}

impl QubitOperator {
    /// Accepts a Pauli sum whose coefficients are real to 1e-12.
    pub fn from_sum(sum: PauliSum) -> Result<Self, QubitError> {
        let im = sum.max_imag();
        if im > 1e-12 {
            return Err(QubitError::NotHermitian(im));
        }
        let real = {
            let mut r = PauliSum::zero(sum.num_qubits())?;
            for t in sum.terms() {
                r.add_term(t.label, ONE * t.coeff.re);
            }
            r
        };
        Ok(Self {
            sum: real,
            spectrum: OnceLock::new(),
        })
    }

    pub fn from_terms(
        num_qubits: usize,
        terms: impl IntoIterator<Item = (PauliLabel, f64)>,
    ) -> Result<Self, QubitError> {
        let mut s = PauliSum::zero(num_qubits)?;
        for (l, c) in terms {
            if l.num_qubits() != num_qubits {
                return Err(QubitError::RegisterMismatch(num_qubits, l.num_qubits()));
            }
            s.add_term(l, ONE * c);
        }
        Self::from_sum(s)
    }

    pub fn pauli(label: PauliLabel, coeff: f64) -> Self {
        Self::from_sum(PauliSum::from_label(label, ONE * coeff)).expect("real coefficient")
    }

    pub fn identity(num_qubits: usize) -> Result<Self, QubitError> {
        Ok(Self::pauli(PauliLabel::identity(num_qubits)?, 1.0))
    }

    pub fn zero(num_qubits: usize) -> Result<Self, QubitError> {
        Self::from_sum(PauliSum::zero(num_qubits)?)
    }

    /// `p` on one qubit (1-based).
    pub fn single(num_qubits: usize, qubit: usize, p: Pauli) -> Result<Self, QubitError> {
        Ok(Self::pauli(PauliLabel::single(num_qubits, qubit, p)?, 1.0))
    }

    /// σ_p^{⊗N}.
    pub fn uniform(num_qubits: usize, p: Pauli) -> Result<Self, QubitError> {
        Ok(Self::pauli(PauliLabel::uniform(num_qubits, p)?, 1.0))
    }

    pub fn parse(text: &str, num_qubits: usize) -> Result<Self, QubitError> {
        Self::from_terms(num_qubits, parse_terms(text, num_qubits)?)
    }

    pub fn num_qubits(&self) -> usize {
        self.sum.num_qubits()
    }

    pub fn dim(&self) -> usize {
        1usize << self.num_qubits()
    }

    pub fn pauli_sum(&self) -> &PauliSum {
        &self.sum
    }

    pub fn terms(&self) -> impl Iterator<Item = (PauliLabel, f64)> + '_ {
        self.sum.terms().map(|t| (t.label, t.coeff.re))
    }

    pub fn num_terms(&self) -> usize {
        self.sum.len()
    }

    pub fn is_zero(&self) -> bool {
        self.sum.is_empty()
    }

    pub fn is_diagonal(&self) -> bool {
        self.sum.is_diagonal()
    }

    /// The single Pauli label if this operator is c·P.
    pub fn as_single(&self) -> Option<(PauliLabel, f64)> {
        let mut it = self.terms();
        let first = it.next()?;
        it.next().is_none().then_some(first)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_sum(self.sum.scale(ONE * s)).expect("real")
    }

    pub fn add(&self, other: &Self) -> Result<Self, QubitError> {
        Self::from_sum(self.sum.add(&other.sum)?)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QubitError> {
        Self::from_sum(self.sum.sub(&other.sum)?)
    }

    /// Product, which must itself be Hermitian (commuting factors).
    pub fn mul(&self, other: &Self) -> Result<Self, QubitError> {
        Self::from_sum(self.sum.mul(&other.sum)?)
    }

    pub fn square(&self) -> Self {
        self.mul(self).expect("square of Hermitian is Hermitian")
    }

    pub fn tensor(&self, other: &Self) -> Result<Self, QubitError> {
        Self::from_sum(self.sum.tensor(&other.sum)?)
    }

    /// (1 − self)/2.
    pub fn lower_projector(&self) -> Self {
        let id = Self::identity(self.num_qubits()).expect("valid register");
        id.sub(self).expect("same register").scale(0.5)
    }

    pub fn max_entry(&self) -> f64 {
        self.sum.max_entry()
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        self.sum.to_matrix()
    }

    /// Diagonal entries ⟨b|H|b⟩ of a Z-only operator.
    pub fn diagonal_values(&self) -> Option<Vec<f64>> {
        if !self.is_diagonal() {
            return None;
        }
        let d = self.dim();
        let mut out = vec![0.0; d];
        for (l, c) in self.terms() {
            for (b, o) in out.iter_mut().enumerate() {
                *o += c * l.apply_basis(b as u64).0.re;
            }
        }
        Some(out)
    }

    pub fn spectrum(&self) -> Result<&Spectrum, QubitError> {
        self.spectrum
            .get_or_init(|| self.compute_spectrum().map(Arc::new))
            .as_ref()
            .map(|a| a.as_ref())
            .map_err(Clone::clone)
    }

    fn compute_spectrum(&self) -> Result<Spectrum, QubitError> {
        let n = self.num_qubits();
        if let Some(diag) = (n <= MAX_DIAGONAL_SPECTRUM_QUBITS)
            .then(|| self.diagonal_values())
            .flatten()
        {
            let mut sorted = diag.clone();
            sorted.sort_by(f64::total_cmp);
            let (values, _) = merge_levels(&sorted);
            let levels = diag.iter().map(|&v| nearest(&values, v)).collect();
            return Ok(Spectrum {
                values,
                basis: SpectralBasis::Computational { levels },
            });
        }
        if n > MAX_DENSE_SPECTRUM_QUBITS {
            return Err(QubitError::SpectrumTooLarge(n));
        }
        let eig = eigh(&self.to_matrix()).map_err(|e| QubitError::Numerics(e.to_string()))?;
        let (values, levels) = merge_levels(&eig.values);
        Ok(Spectrum {
            values,
            basis: SpectralBasis::Dense {
                vectors: eig.vectors,
                levels,
            },
        })
    }

    /// Spectral norm bound tight for single Pauli terms.
    pub fn abs_sum(&self) -> f64 {
        self.terms().map(|(_, c)| c.abs()).sum()
    }
}

fn nearest(values: &[f64], v: f64) -> usize {
    let mut best = 0;
    for (k, &x) in values.iter().enumerate() {
        if (x - v).abs() < (values[best] - v).abs() {
            best = k;
        }
    }
    best
}

impl fmt::Display for QubitOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0.0 * I");
        }
        let parts: Vec<String> = self.terms().map(|(l, c)| format!("{c:?} * {l}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// J_axis = ½ Σ_i σ_{i,axis}.
pub fn collective_j(axis: Axis, num_qubits: usize) -> Result<QubitOperator, QubitError> {
    let terms = (1..=num_qubits)
        .map(|q| PauliLabel::single(num_qubits, q, axis.pauli()).map(|l| (l, 0.5)))
        .collect::<Result<Vec<_>, _>>()?;
    QubitOperator::from_terms(num_qubits, terms)
}

pub fn classify(op: &QubitOperator) -> OperatorClass {
    let sq = op.square();
    let id = QubitOperator::identity(op.num_qubits()).expect("valid register");
    if sq.sub(&id).expect("same register").max_entry() <= ALGEBRA_TOL {
        OperatorClass::SelfInverse
    } else if sq.sub(op).expect("same register").max_entry() <= ALGEBRA_TOL {
        OperatorClass::Idempotent
    } else {
        OperatorClass::Generic
    }
}

/// Classifies an arbitrary dense Hermitian matrix by the same rule.
pub fn classify_matrix(m: &ComplexMatrix) -> OperatorClass {
    let sq = m.matmul(m);
    let id = ComplexMatrix::identity(m.rows());
    if sq.max_abs_diff(&id) <= ALGEBRA_TOL {
        OperatorClass::SelfInverse
    } else if sq.max_abs_diff(m) <= ALGEBRA_TOL {
        OperatorClass::Idempotent
    } else {
        OperatorClass::Generic
    }
}

pub fn commutation_check(
    a: &QubitOperator,
    b: &QubitOperator,
) -> Result<CommutationReport, QubitError> {
    let c = a.pauli_sum().commutator(b.pauli_sum())?.max_entry();
    let ac = a.pauli_sum().anticommutator(b.pauli_sum())?.max_entry();
    let report = if c <= ALGEBRA_TOL {
        CommutationReport {
            relation: Relation::Commute,
            residual: c,
        }
    } else if ac <= ALGEBRA_TOL {
        CommutationReport {
            relation: Relation::Anticommute,
            residual: ac,
        }
    } else {
        CommutationReport {
            relation: Relation::Neither,
            residual: c.min(ac),
        }
    };
    Ok(report)
}
