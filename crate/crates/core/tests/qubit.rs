// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use common::*;
use geophase::numerics::{StateVector, C64};
use geophase::qubit::{
    build_code, classify, classify_matrix, collective_j, commutation_check, i_pow, su2_triple,
    Axis, CodeName, OperatorClass, Pauli, PauliLabel, QubitOperator, Relation,
};
use proptest::prelude::*;

fn letters(l: &PauliLabel) -> String {
    l.factors().iter().map(|p| p.letter()).collect()
}

fn label(n: usize) -> impl Strategy<Value = PauliLabel> {
    let full = (1u64 << n) - 1;
    (0..=full, 0..=full).prop_map(move |(x, z)| PauliLabel::from_masks(n, x, z).unwrap())
}

fn operator(n: usize) -> impl Strategy<Value = QubitOperator> {
    prop::collection::vec((label(n), -2.0..2.0f64), 1..6).prop_map(move |terms| {
        let text: Vec<String> = terms.iter().map(|(l, c)| format!("{c} * {l}")).collect();
        QubitOperator::parse(&text.join(" + "), n).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn label_matrix_matches_kron(l in label(4)) {
        prop_assert!(l.to_matrix().max_abs_diff(&paulis(&letters(&l))) < 1e-15);
    }

    #[test]
    fn label_product_has_integer_phase(a in label(4), b in label(4)) {
        let (k, p) = a.mul(&b);
        let lhs = paulis(&letters(&a)).matmul(&paulis(&letters(&b)));
        let rhs = paulis(&letters(&p)).scale(i_pow(k));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-15);
        let dense_commute = lhs.max_abs_diff(&paulis(&letters(&b)).matmul(&paulis(&letters(&a)))) < 1e-12;
        prop_assert_eq!(a.commutes_with(&b), dense_commute);
    }

    #[test]
    fn spectral_reconstruction(op in operator(4)) {
        let s = op.spectrum().unwrap();
        prop_assert!(s.reconstruct().max_abs_diff(&op.to_matrix()) < 1e-12);
        prop_assert_eq!(s.ranks().iter().sum::<usize>(), 16);
        for k in 0..s.values().len() {
            prop_assert_eq!(classify_matrix(&s.projector(k)), OperatorClass::Idempotent);
        }
        for w in s.values().windows(2) {
            prop_assert!(w[1] - w[0] > 1e-9);
        }
    }

    #[test]
    fn text_round_trip(op in operator(3)) {
        let back = QubitOperator::parse(&op.to_string(), 3).unwrap();
        prop_assert!(back.to_matrix().max_abs_diff(&op.to_matrix()) < 1e-12);
    }

    #[test]
    fn algebra_matches_dense(a in operator(3), b in operator(3)) {
        let prod = a.mul(&b);
        if let Ok(p) = prod {
            let dense = a.to_matrix().matmul(&b.to_matrix());
            let herm = dense.max_abs_diff(&dense.dagger()) < 1e-12;
            prop_assert!(herm);
            prop_assert!(p.to_matrix().max_abs_diff(&dense) < 1e-12);
        }
        let sum = a.add(&b).unwrap();
        prop_assert!(sum.to_matrix().max_abs_diff(&add(&a.to_matrix(), &b.to_matrix())) < 1e-12);
    }
}

#[test]
fn five_qubit_spectral_reconstruction() {
    let op = QubitOperator::parse(
        "0.3 * X1 Y2 Z5 + -1.2 * Z3 + 0.7 * Y1 Y4 + 0.1 * X2 X3 X4",
        5,
    )
    .unwrap();
    let s = op.spectrum().unwrap();
    assert!(s.reconstruct().max_abs_diff(&op.to_matrix()) < 1e-12);
}

#[test]
fn uniform_string_sign_structure() {
    for n in 1..=6usize {
        let x = PauliLabel::uniform(n, Pauli::X).unwrap();
        let y = PauliLabel::uniform(n, Pauli::Y).unwrap();
        let z = PauliLabel::uniform(n, Pauli::Z).unwrap();
        let (kxy, lxy) = x.mul(&y);
        let (kyx, lyx) = y.mul(&x);
        assert_eq!(lxy, z);
        assert_eq!(lyx, z);
        // per-qubit XY = iZ and YX = −iZ
        assert_eq!(kxy % 4, (n % 4) as u32);
        assert_eq!(kyx % 4, ((3 * n) % 4) as u32);
        let i_n = i_pow((n % 4) as u32);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let comm = i_pow(kxy) - i_pow(kyx);
        let anti = i_pow(kxy) + i_pow(kyx);
        assert_eq!(comm, i_n * (1.0 - sign));
        assert_eq!(anti, i_n * (1.0 + sign));
        let relation =
            commutation_check(&QubitOperator::pauli(x, 1.0), &QubitOperator::pauli(y, 1.0))
                .unwrap()
                .relation;
        assert_eq!(
            relation,
            if n % 2 == 0 {
                Relation::Commute
            } else {
                Relation::Anticommute
            }
        );
    }
}

#[test]
fn su2_triples_close() {
    for n in 1..=6 {
        let t = su2_triple(n).unwrap();
        let (x, y, z) = (t.x.to_matrix(), t.y.to_matrix(), t.z.to_matrix());
        assert!(x.commutator(&y).max_abs_diff(&z.scale(c(0.0, 2.0))) < 1e-12);
        assert!(y.commutator(&z).max_abs_diff(&x.scale(c(0.0, 2.0))) < 1e-12);
        assert!(z.commutator(&x).max_abs_diff(&y.scale(c(0.0, 2.0))) < 1e-12);
    }
}

fn code_matrix(op: &QubitOperator, basis: &[&StateVector]) -> [[C64; 2]; 2] {
    let m = op.to_matrix();
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            out[i][j] = bi.inner(&bj.apply(&m));
        }
    }
    out
}

#[test]
fn code_invariants() {
    let sx = [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
    let sy = [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]];
    let sz = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]];
    for name in CodeName::ALL {
        let code = build_code(name).unwrap();
        let b = [&code.zero, &code.one];
        assert!((code.zero.norm() - 1.0).abs() < 1e-12, "{name}");
        assert!((code.one.norm() - 1.0).abs() < 1e-12, "{name}");
        assert!(code.zero.inner(&code.one).norm() < 1e-12, "{name}");
        let d = 1 << code.physical_qubits;
        for (op, want) in [(&code.x, sx), (&code.y, sy), (&code.z, sz)] {
            let m = op.to_matrix();
            assert!(m.matmul(&m).max_abs_diff(&eye(d)) < 1e-12, "{name}");
            let got = code_matrix(op, &b);
            for i in 0..2 {
                for j in 0..2 {
                    assert!((got[i][j] - want[i][j]).norm() < 1e-12, "{name} {op}");
                }
            }
            for v in b {
                let w = v.apply(&m);
                let kept: f64 = b.iter().map(|u| u.inner(&w).norm_sqr()).sum();
                assert!(
                    (kept - 1.0).abs() < 1e-12,
                    "{name}: {op} leaves the code space"
                );
            }
        }
        let xy = code.x.to_matrix().matmul(&code.y.to_matrix());
        let on_code = |m: &geophase::numerics::ComplexMatrix, v: &StateVector| v.apply(m);
        for v in b {
            let lhs = on_code(&xy, v);
            let rhs = on_code(&code.z.to_matrix().scale(c(0.0, 1.0)), v);
            let diff = lhs
                .amplitudes()
                .iter()
                .zip(rhs.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-12, "{name}: x̃ỹ ≠ i z̃ on the code space");
        }
    }
}

#[test]
fn projectors_classify_as_idempotent() {
    for n in 1..=4 {
        let jz = collective_j(Axis::Z, n).unwrap();
        let s = jz.spectrum().unwrap();
        assert_eq!(s.values().len(), n + 1);
        for k in 0..=n {
            assert_eq!(classify_matrix(&s.projector(k)), OperatorClass::Idempotent);
        }
    }
    let zc = QubitOperator::parse("1 * Z1", 1).unwrap();
    assert_eq!(classify(&zc), OperatorClass::SelfInverse);
    assert_eq!(classify(&zc.lower_projector()), OperatorClass::Idempotent);
    let jz = collective_j(Axis::Z, 2).unwrap();
    assert_eq!(classify(&jz), OperatorClass::Generic);
}

#[test]
fn display_and_parse() {
    let l = PauliLabel::from_factors(&[Pauli::Z, Pauli::I, Pauli::X]).unwrap();
    assert_eq!(l.to_string(), "Z1 X3");
    assert_eq!(PauliLabel::identity(3).unwrap().to_string(), "I");
    let op = QubitOperator::parse("1.0 * Z1 X3", 3).unwrap();
    assert!(op.to_matrix().max_abs_diff(&paulis("ZIX")) < 1e-15);
    assert!(QubitOperator::parse("1.0 * Z4", 3).is_err());
    assert!(QubitOperator::parse("1.0 * Q1", 3).is_err());
    assert!(QubitOperator::parse("nonsense", 3).is_err());
    assert!("shor9".parse::<CodeName>().is_err());
}
