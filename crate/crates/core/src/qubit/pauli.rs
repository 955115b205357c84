// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

//! Pauli strings as (x, z) bitmasks with exact phase bookkeeping.
//!
//! Qubit 1 is the most significant bit of a basis index, so on an
//! `n`-qubit register qubit `j` (1-based) lives at bit `n − j`.

use std::collections::BTreeMap;
use std::fmt;

use crate::numerics::{ComplexMatrix, C64, I, ONE, ZERO};

use super::QubitError;

/// Largest register the bitmask representation can hold.
pub const MAX_QUBITS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        use crate::numerics::pauli_matrices::*;
        match self {
            Pauli::I => id2(),
            Pauli::X => sx(),
            Pauli::Y => sy(),
            Pauli::Z => sz(),
        }
    }
}

/// i^k for k mod 4.
pub fn i_pow(k: u32) -> C64 {
    match k % 4 {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Tensor product of single-qubit Paulis, without a coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliLabel {
    num_qubits: usize,
    x: u64,
    z: u64,
}

impl PauliLabel {
    pub fn identity(num_qubits: usize) -> Result<Self, QubitError> {
        Self::from_masks(num_qubits, 0, 0)
    }

    pub fn from_masks(num_qubits: usize, x: u64, z: u64) -> Result<Self, QubitError> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(QubitError::RegisterSize(num_qubits));
        }
        let m = full_mask(num_qubits);
        if (x | z) & !m != 0 {
            return Err(QubitError::QubitIndex {
                index: 64 - (x | z).leading_zeros() as usize,
                num_qubits,
            });
        }
        Ok(Self { num_qubits, x, z })
    }

    pub fn from_factors(factors: &[Pauli]) -> Result<Self, QubitError> {
        let n = factors.len();
        let mut x = 0;
        let mut z = 0;
        for (j, p) in factors.iter().enumerate() {
            let (px, pz) = p.bits();
            let bit = 1u64 << (n - 1 - j);
            if px {
                x |= bit;
            }
            if pz {
                z |= bit;
            }
        }
        Self::from_masks(n, x, z)
    }

    /// `p` on qubit `qubit` (1-based), identity elsewhere.
    pub fn single(num_qubits: usize, qubit: usize, p: Pauli) -> Result<Self, QubitError> {
        let mut f = vec![Pauli::I; num_qubits];
        if qubit == 0 || qubit > num_qubits {
            return Err(QubitError::QubitIndex {
                index: qubit,
                num_qubits,
            });
        }
        f[qubit - 1] = p;
        Self::from_factors(&f)
    }

    /// The same Pauli on every qubit.
    pub fn uniform(num_qubits: usize, p: Pauli) -> Result<Self, QubitError> {
        Self::from_factors(&vec![p; num_qubits])
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    fn bit(&self, qubit: usize) -> u64 {
        1u64 << (self.num_qubits - qubit)
    }

    /// Factor on qubit `qubit` (1-based).
    pub fn factor(&self, qubit: usize) -> Pauli {
        let b = self.bit(qubit);
        Pauli::from_bits(self.x & b != 0, self.z & b != 0)
    }

    pub fn factors(&self) -> Vec<Pauli> {
        (1..=self.num_qubits).map(|q| self.factor(q)).collect()
    }

    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    /// 1-based indices of qubits carrying a non-identity factor.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.num_qubits)
            .filter(|&q| (self.x | self.z) & self.bit(q) != 0)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Returns (k, label) with self · other = i^k · label.
    pub fn mul(&self, other: &Self) -> (u32, Self) {
        debug_assert_eq!(self.num_qubits, other.num_qubits);
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let out = Self {
            num_qubits: self.num_qubits,
            x,
            z,
        };
        let k = self.y_count()
            + other.y_count()
            + 3 * out.y_count()
            + 2 * (self.z & other.x).count_ones();
        (k % 4, out)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }

    /// P|b⟩ = phase · |b'⟩.
    pub fn apply_basis(&self, b: u64) -> (C64, u64) {
        let k = self.y_count() + 2 * (self.z & b).count_ones();
        (i_pow(k), b ^ self.x)
    }

    /// Tensor product self ⊗ other (self on the leading qubits).
    pub fn tensor(&self, other: &Self) -> Result<Self, QubitError> {
        let n = self.num_qubits + other.num_qubits;
        if n > MAX_QUBITS {
            return Err(QubitError::RegisterSize(n));
        }
        let s = other.num_qubits;
        Self::from_masks(n, (self.x << s) | other.x, (self.z << s) | other.z)
    }

    /// Canonical ordering key: I < X < Y < Z, qubit 1 most significant.
    fn sort_key(&self) -> u128 {
        let mut key = 0u128;
        for q in 1..=self.num_qubits {
            let code = match self.factor(q) {
                Pauli::I => 0,
                Pauli::X => 1,
                Pauli::Y => 2,
                Pauli::Z => 3,
            };
            key = (key << 2) | code;
        }
        key
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let d = 1usize << self.num_qubits;
        let mut m = ComplexMatrix::zeros(d, d);
        for b in 0..d {
            let (ph, r) = self.apply_basis(b as u64);
            m[(r as usize, b)] = ph;
        }
        m
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "I");
        }
        let parts: Vec<String> = self
            .support()
            .into_iter()
            .map(|q| format!("{}{}", self.factor(q).letter(), q))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl PartialOrd for PauliLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PauliLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num_qubits, self.sort_key()).cmp(&(other.num_qubits, other.sort_key()))
    }
}

/// A Pauli label with a complex coefficient.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliString {
    pub label: PauliLabel,
    pub coeff: C64,
}

impl PauliString {
    pub fn new(label: PauliLabel, coeff: C64) -> Self {
        Self { label, coeff }
    }

    pub fn is_hermitian(&self) -> bool {
        self.coeff.im == 0.0
    }

    /// Exact product; the extra phase is one of ±1, ±i.
    pub fn mul(&self, other: &Self) -> Self {
        let (k, label) = self.label.mul(&other.label);
        Self {
            label,
            coeff: self.coeff * other.coeff * i_pow(k),
        }
    }
}

/// Canonical sum of Pauli strings: labels sorted, coefficients combined.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    num_qubits: usize,
    terms: BTreeMap<PauliLabel, C64>,
}

/// Coefficients with magnitude at or below this are dropped.
pub const DROP_TOL: f64 = 1e-14;

impl PauliSum {
    pub fn zero(num_qubits: usize) -> Result<Self, QubitError> {
        PauliLabel::identity(num_qubits)?;
        Ok(Self {
            num_qubits,
            terms: BTreeMap::new(),
        })
    }

    pub fn identity(num_qubits: usize) -> Result<Self, QubitError> {
        let mut s = Self::zero(num_qubits)?;
        s.add_term(PauliLabel::identity(num_qubits)?, ONE);
        Ok(s)
    }

    pub fn from_label(label: PauliLabel, coeff: C64) -> Self {
        let mut s = Self {
            num_qubits: label.num_qubits(),
            terms: BTreeMap::new(),
        };
        s.add_term(label, coeff);
        s
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = PauliString> + '_ {
        self.terms.iter().map(|(l, c)| PauliString::new(*l, *c))
    }

    pub fn coefficient(&self, label: &PauliLabel) -> C64 {
        self.terms.get(label).copied().unwrap_or(ZERO)
    }

    pub fn add_term(&mut self, label: PauliLabel, coeff: C64) {
        assert_eq!(
            label.num_qubits(),
            self.num_qubits,
            "register size mismatch"
        );
        let e = self.terms.entry(label).or_insert(ZERO);
        *e += coeff;
        if e.norm() <= DROP_TOL {
            self.terms.remove(&label);
        }
    }

    fn check(&self, other: &Self) -> Result<(), QubitError> {
        if self.num_qubits != other.num_qubits {
            return Err(QubitError::RegisterMismatch(
                self.num_qubits,
                other.num_qubits,
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, QubitError> {
        self.check(other)?;
        let mut out = self.clone();
        for t in other.terms() {
            out.add_term(t.label, t.coeff);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QubitError> {
        self.add(&other.scale(-ONE))
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = Self {
            num_qubits: self.num_qubits,
            terms: BTreeMap::new(),
        };
        for t in self.terms() {
            out.add_term(t.label, t.coeff * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, QubitError> {
        self.check(other)?;
        let mut out = Self::zero(self.num_qubits)?;
        for a in self.terms() {
            for b in other.terms() {
                let p = a.mul(&b);
                out.add_term(p.label, p.coeff);
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self, QubitError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn anticommutator(&self, other: &Self) -> Result<Self, QubitError> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    pub fn dagger(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.conj();
        }
        out
    }

    pub fn tensor(&self, other: &Self) -> Result<Self, QubitError> {
        let mut out = Self::zero(self.num_qubits + other.num_qubits)?;
        for a in self.terms() {
            for b in other.terms() {
                out.add_term(a.label.tensor(&b.label)?, a.coeff * b.coeff);
            }
        }
        Ok(out)
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|l| l.is_diagonal())
    }

    pub fn max_imag(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    /// Largest |matrix entry|, computed from the x-mask grouping.
    ///
    /// Exact up to 20 qubits; beyond that the per-group ℓ¹ bound is used.
    pub fn max_entry(&self) -> f64 {
        let mut groups: BTreeMap<u64, Vec<PauliString>> = BTreeMap::new();
        for t in self.terms() {
            groups.entry(t.label.x_mask()).or_default().push(t);
        }
        let mut best = 0.0f64;
        for g in groups.values() {
            if g.len() == 1 {
                best = best.max(g[0].coeff.norm());
            } else if self.num_qubits <= 20 {
                for b in 0..(1u64 << self.num_qubits) {
                    let v: C64 = g.iter().map(|t| t.coeff * t.label.apply_basis(b).0).sum();
                    best = best.max(v.norm());
                }
            } else {
                best = best.max(g.iter().map(|t| t.coeff.norm()).sum());
            }
        }
        best
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let d = 1usize << self.num_qubits;
        let mut m = ComplexMatrix::zeros(d, d);
        for t in self.terms() {
            for b in 0..d {
                let (ph, r) = t.label.apply_basis(b as u64);
                m[(r as usize, b)] += t.coeff * ph;
            }
        }
        m
    }

    /// Applies the sum to a register state vector.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; v.len()];
        for t in self.terms() {
            for (b, &a) in v.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let (ph, r) = t.label.apply_basis(b as u64);
                out[r as usize] += t.coeff * ph * a;
            }
        }
        out
    }
}

/// Parses "c * X1 Z3 + d * I" into (label, coefficient) pairs.
pub fn parse_terms(text: &str, num_qubits: usize) -> Result<Vec<(PauliLabel, f64)>, QubitError> {
    let bad = |why: &str| QubitError::Parse(format!("{why} in {text:?}"));
    let text = text.trim();
    if text.is_empty() {
        return Err(bad("empty operator"));
    }
    let mut out = Vec::new();
    for term in text.split(" + ") {
        let (c, ops) = match term.split_once('*') {
            Some((c, ops)) => (c.trim(), ops.trim()),
            None => ("1.0", term.trim()),
        };
        let coeff: f64 = c.parse().map_err(|_| bad("bad coefficient"))?;
        let mut factors = vec![Pauli::I; num_qubits];
        for tok in ops.split_whitespace() {
            if tok == "I" {
                continue;
            }
            let mut ch = tok.chars();
            let p = match ch.next() {
                Some('X') => Pauli::X,
                Some('Y') => Pauli::Y,
                Some('Z') => Pauli::Z,
                Some('I') => Pauli::I,
                _ => return Err(bad("bad Pauli factor")),
            };
            let q: usize = ch.as_str().parse().map_err(|_| bad("bad qubit index"))?;
            if q == 0 || q > num_qubits {
                return Err(QubitError::QubitIndex {
                    index: q,
                    num_qubits,
                });
            }
            if factors[q - 1] != Pauli::I {
                return Err(bad("repeated qubit"));
            }
            factors[q - 1] = p;
        }
        out.push((PauliLabel::from_factors(&factors)?, coeff));
    }
    Ok(out)
}
