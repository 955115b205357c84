// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

//! Independent dense oracles built from explicit Kronecker products.

#![allow(dead_code)]

use geophase::numerics::{eigh, kron, pauli_matrices as pm, ComplexMatrix, C64};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// ⊗ of 2×2 factors given as letters, qubit 1 first.
pub fn paulis(s: &str) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(1);
    for ch in s.chars() {
        let f = match ch {
            'I' => pm::id2(),
            'X' => pm::sx(),
            'Y' => pm::sy(),
            'Z' => pm::sz(),
            _ => panic!("bad letter {ch}"),
        };
        m = kron(&m, &f).unwrap();
    }
    m
}

pub fn eye(d: usize) -> ComplexMatrix {
    ComplexMatrix::identity(d)
}

pub fn add(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a + b
}

pub fn sc(a: &ComplexMatrix, s: f64) -> ComplexMatrix {
    a.scale(C64::new(s, 0.0))
}

/// e^{−iHt} by a Taylor series with scaling and squaring.
pub fn expm_series(h: &ComplexMatrix, t: f64) -> ComplexMatrix {
    let norm: f64 = (0..h.rows())
        .map(|r| h.row(r).iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0, f64::max)
        * t.abs();
    let s = (norm.max(1e-300).log2().ceil().max(0.0) as i32) + 1;
    let k = C64::new(0.0, -t / 2f64.powi(s));
    let a = h.scale(k);
    let mut term = eye(h.rows());
    let mut sum = eye(h.rows());
    for j in 1..30 {
        term = term.matmul(&a).scale(C64::new(1.0 / j as f64, 0.0));
        sum = &sum + &term;
    }
    for _ in 0..s {
        sum = sum.matmul(&sum);
    }
    sum
}

/// f(H) for Hermitian H through its eigendecomposition.
pub fn apply_fn(h: &ComplexMatrix, f: impl Fn(f64) -> f64) -> ComplexMatrix {
    let e = eigh(h).unwrap();
    e.map(|x| C64::new(f(x), 0.0))
}

/// J_axis = ½Σσ_i.
pub fn jcoll(axis: char, n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(1 << n, 1 << n);
    for q in 0..n {
        let s: String = (0..n).map(|i| if i == q { axis } else { 'I' }).collect();
        m = &m + &sc(&paulis(&s), 0.5);
    }
    m
}

pub fn fid(u: &ComplexMatrix, v: &ComplexMatrix) -> f64 {
    let d = u.rows() as f64;
    let tr: C64 = (0..u.rows())
        .flat_map(|r| (0..u.cols()).map(move |c| (r, c)))
        .map(|(r, c)| u[(r, c)].conj() * v[(r, c)])
        .sum();
    tr.norm_sqr() / (d * d)
}
