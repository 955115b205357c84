// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use std::sync::OnceLock;

use common::*;
use geophase::bosonic::{
    compose_phase, displacement_element, polygon_phase, truncation_residual, FockReference,
    FockSpace, LoopSpec,
};
use geophase::numerics::{ComplexMatrix, C64};
use proptest::prelude::*;

const PROBE: usize = 16;

fn fock64() -> &'static FockSpace {
    static F: OnceLock<FockSpace> = OnceLock::new();
    F.get_or_init(|| FockSpace::new(64).unwrap())
}

fn probe_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..PROBE {
        for col in 0..PROBE {
            worst = worst.max((a[(r, col)] - b[(r, col)]).norm());
        }
    }
    worst
}

fn disk() -> impl Strategy<Value = C64> {
    (0.0..1.0f64, -std::f64::consts::PI..std::f64::consts::PI)
        .prop_map(|(r, t)| C64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_law(a in disk(), b in disk()) {
        let f = fock64();
        let lhs = f.displacement(b).matmul(&f.displacement(a));
        let rhs = f.displacement(a + b).scale(C64::from_polar(1.0, compose_phase(b, a)));
        prop_assert!(probe_diff(&lhs, &rhs) < 1e-6);
    }

    #[test]
    fn loop_identity(a in disk(), b in disk()) {
        let f = fock64();
        let lhs = f.displacement(-b)
            .matmul(&f.displacement(-a))
            .matmul(&f.displacement(b))
            .matmul(&f.displacement(a));
        let phase = 2.0 * (b * a.conj()).im;
        let rhs = eye(64).scale(C64::from_polar(1.0, phase));
        prop_assert!(probe_diff(&lhs, &rhs) < 1e-6);
    }

    #[test]
    fn polygon_phase_is_twice_the_area(pts in prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 3..14)) {
        let n = pts.len();
        let steps: Vec<C64> = (0..n)
            .map(|k| {
                let (x0, y0) = pts[k];
                let (x1, y1) = pts[(k + 1) % n];
                c(x1 - x0, y1 - y0)
            })
            .collect();
        let area: f64 = 0.5 * (0..n)
            .map(|k| {
                let (x0, y0) = pts[k];
                let (x1, y1) = pts[(k + 1) % n];
                x0 * y1 - x1 * y0
            })
            .sum::<f64>();
        let phi = polygon_phase(&LoopSpec::new(steps)).unwrap();
        prop_assert!((phi - 2.0 * area).abs() < 1e-12);
    }

    #[test]
    fn polygon_phase_is_vacuum_argument(pts in prop::collection::vec(disk(), 3..9)) {
        let f = fock64();
        let n = pts.len();
        let steps: Vec<C64> = (0..n).map(|k| pts[(k + 1) % n] - pts[k]).collect();
        let mut u = eye(64);
        for &s in &steps {
            u = f.displacement(s).matmul(&u);
        }
        let phi = polygon_phase(&LoopSpec::new(steps)).unwrap();
        let z = u[(0, 0)];
        prop_assert!((z.norm() - 1.0).abs() < 1e-6);
        prop_assert!((z - C64::from_polar(1.0, phi)).norm() < 1e-6);
    }

    #[test]
    fn vacuum_overlap_is_gaussian(a in disk()) {
        let d = fock64().displacement(a);
        let v = d[(0, 0)];
        prop_assert!((v - c((-a.norm_sqr() / 2.0).exp(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn displacement_is_unitary(a in disk()) {
        let d = fock64().displacement(a * 3.0);
        prop_assert!(d.dagger().matmul(&d).max_abs_diff(&eye(64)) < 1e-10);
    }
}

#[test]
fn matrix_matches_series_and_closed_form() {
    let f = fock64();
    let g = ComplexMatrix::from_fn(64, 64, |r, col| {
        if col == r + 1 {
            c((col as f64).sqrt(), 0.0)
        } else {
            c(0.0, 0.0)
        }
    });
    for alpha in [c(0.7, 0.0), c(-0.2, 0.9), c(0.5, -0.5)] {
        let gen = &g.dagger().scale(alpha) - &g.scale(alpha.conj());
        let series = expm_series(&gen.scale(c(0.0, 1.0)), 1.0);
        let lib = f.displacement(alpha);
        assert!(probe_diff(&lib, &series) < 1e-10);
        for m in 0..PROBE {
            for n in 0..PROBE {
                assert!(
                    (displacement_element(m, n, alpha) - series[(m, n)]).norm() < 1e-10,
                    "({m},{n})"
                );
            }
        }
    }
}

#[test]
fn rotation_is_diagonal_phase() {
    let f = FockSpace::new(8).unwrap();
    let r = f.rotation(0.3);
    for n in 0..8 {
        assert!((r[(n, n)] - C64::from_polar(1.0, 0.3 * n as f64)).norm() < 1e-15);
    }
    let a = f.annihilation();
    let lhs = r.matmul(&a).matmul(&r.dagger());
    assert!(lhs.max_abs_diff(&a.scale(C64::from_polar(1.0, -0.3))) < 1e-14);
}

#[test]
fn truncation_residual_tracks_cutoff() {
    let alpha = c(1.2, 0.4);
    let mut prev = f64::INFINITY;
    for cutoff in [24, 48, 96] {
        let f = FockSpace::new(cutoff).unwrap();
        let r = truncation_residual(
            &f.displacement(alpha),
            &f,
            8,
            FockReference::Displacement(alpha),
        )
        .unwrap();
        assert!(r < prev);
        prev = r;
    }
    assert!(prev < 1e-8);
    let f = FockSpace::new(16).unwrap();
    assert!(truncation_residual(&eye(16), &f, 9, FockReference::Identity).is_err());
    assert!(truncation_residual(&eye(16), &f, 8, FockReference::Identity).unwrap() < 1e-15);
}

#[test]
fn guard_and_errors() {
    let f = FockSpace::new(16).unwrap();
    assert!(f.guard(c(1.0, 0.0)).is_none());
    assert!(f.guard(c(2.5, 0.0)).is_some());
    assert!(FockSpace::new(1).is_err());
    assert!(polygon_phase(&LoopSpec::new(vec![c(1.0, 0.0), c(0.0, 1.0)])).is_err());
    let square = LoopSpec::new(vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]);
    assert!((polygon_phase(&square).unwrap() - 2.0).abs() < 1e-15);
}
