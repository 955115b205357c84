// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::time::{Duration, Instant};

use crate::bosonic::{truncation_residual, FockReference};
use crate::numerics::{eigh, process_fidelity, ComplexMatrix, StateVector, C64, ZERO};
use crate::parallel::{map_range, Execution};

use super::propagate::propagate_many;
use super::{EngineError, PulseProgram, PulseStep};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub fock_init: usize,
    /// Largest admissible disentanglement residual.
    pub tol: f64,
    /// Fock columns examined by the truncation diagnostic.
    pub probe_dim: usize,
    pub exec: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            fock_init: 0,
            tol: 1e-8,
            probe_dim: 16,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub effective_unitary: ComplexMatrix,
    /// Process fidelity against the expected unitary, when one is known.
    pub fidelity: Option<f64>,
    pub disentangle_residual: f64,
    /// Input column with the largest residual.
    pub worst_input: usize,
    /// Worst per-branch displacement truncation residual.
    pub truncation_residual: f64,
    pub warnings: Vec<String>,
    pub wall_time: Duration,
    pub fock_init: usize,
}

impl VerificationReport {
    pub fn infidelity(&self) -> Option<f64> {
        self.fidelity.map(|f| 1.0 - f)
    }
}

fn truncation_diagnostics(
    program: &PulseProgram,
    probe: usize,
) -> Result<(f64, Vec<String>), EngineError> {
    let fock = program.space().fock();
    let probe = probe.min(fock.cutoff() / 2);
    let mut seen: HashMap<(u64, u64), ()> = HashMap::new();
    let mut worst = 0.0f64;
    let mut warnings = Vec::new();
    for (i, step) in program.steps().iter().enumerate() {
        let PulseStep::ConditionalDisplacement { control, amp } = step else {
            continue;
        };
        for &l in control.spectrum()?.values() {
            let a = *amp * l;
            if a == ZERO || seen.insert((a.re.to_bits(), a.im.to_bits()), ()).is_some() {
                continue;
            }
            if let Some(w) = fock.guard(a) {
                warnings.push(format!("step {i}: {w}"));
            }
            let r = truncation_residual(
                &fock.displacement(a),
                fock,
                probe,
                FockReference::Displacement(a),
            )
            .map_err(|e| EngineError::Space(e.to_string()))?;
            worst = worst.max(r);
        }
    }
    Ok((worst, warnings))
}

/// Propagates every |q⟩⊗|fockInit⟩ and reads off the qubit unitary.
pub fn effective_qubit_unitary(
    program: &PulseProgram,
    opts: &VerifyOptions,
) -> Result<VerificationReport, EngineError> {
    let d = program.space().qubit_dim();
    let basis: Vec<StateVector> = (0..d).map(|q| StateVector::basis(d, q)).collect();
    verify_on_basis(program, &basis, program.expected.as_ref(), opts)
}

/// Effective unitary restricted to span(`basis`) (orthonormal qubit states).
///
/// Entry (i, j) is ⟨b_i ⊗ fockInit| U |b_j ⊗ fockInit⟩; the residual also
/// counts leakage out of the span.
pub fn verify_on_basis(
    program: &PulseProgram,
    basis: &[StateVector],
    expected: Option<&ComplexMatrix>,
    opts: &VerifyOptions,
) -> Result<VerificationReport, EngineError> {
    let start = Instant::now();
    if !program.cyclic {
        return Err(EngineError::NotCyclic);
    }
    let space = program.space();
    let (c, f) = (space.cutoff(), opts.fock_init);
    if f >= c {
        return Err(EngineError::FockIndex {
            index: f,
            cutoff: c,
        });
    }
    let k = basis.len();
    for b in basis {
        if b.dim() != space.qubit_dim() {
            return Err(EngineError::Dimension {
                expected: space.qubit_dim(),
                got: b.dim(),
            });
        }
    }
    if let Some(e) = expected {
        if e.shape() != (k, k) {
            return Err(EngineError::Dimension {
                expected: k,
                got: e.rows(),
            });
        }
    }
    let inputs = basis
        .iter()
        .map(|b| {
            let mut v = vec![ZERO; space.dim()];
            for (q, &a) in b.amplitudes().iter().enumerate() {
                v[q * c + f] = a;
            }
            v
        })
        .collect();
    let outputs = propagate_many(program, inputs, opts.exec)?;
    let columns: Vec<Vec<C64>> = map_range(opts.exec, k, |j| {
        let out = &outputs[j];
        basis
            .iter()
            .map(|bi| {
                bi.amplitudes()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| **a != ZERO)
                    .map(|(q, a)| a.conj() * out[q * c + f])
                    .sum()
            })
            .collect()
    });
    let u = ComplexMatrix::from_fn(k, k, |i, j| columns[j][i]);
    let mut residual = 0.0f64;
    let mut worst = 0;
    for (j, col) in columns.iter().enumerate() {
        let r = (1.0 - col.iter().map(|a| a.norm_sqr()).sum::<f64>()).max(0.0);
        if r > residual {
            residual = r;
            worst = j;
        }
    }
    let fidelity = expected.map(|e| process_fidelity(e, &u)).transpose()?;
    let (trunc, warnings) = truncation_diagnostics(program, opts.probe_dim)?;
    let report = VerificationReport {
        effective_unitary: u,
        fidelity,
        disentangle_residual: residual,
        worst_input: worst,
        truncation_residual: trunc,
        warnings,
        wall_time: start.elapsed(),
        fock_init: f,
    };
    if residual > opts.tol {
        return Err(EngineError::Entangled {
            worst_input: worst,
            residual,
            report: Box::new(report),
        });
    }
    Ok(report)
}

/// Largest per-branch open-loop amplitude and rotation defect.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosureDefect {
    pub amplitude: f64,
    pub rotation: f64,
}

impl ClosureDefect {
    pub fn is_closed(&self, tol: f64) -> bool {
        self.amplitude <= tol && self.rotation <= tol
    }
}

fn branch_defect(lambdas: impl Iterator<Item = (f64, bool, C64)>) -> (f64, f64) {
    // (λ, is_rotation, parameter)
    let mut theta = 0.0;
    let mut sum = ZERO;
    for (l, rot, p) in lambdas {
        if rot {
            theta += l * p.re;
        } else {
            sum += p * l * C64::from_polar(1.0, -theta);
        }
    }
    let wrapped = theta.rem_euclid(TAU);
    (sum.norm(), wrapped.min(TAU - wrapped))
}

/// Per-branch closure of the induced phase-space loops.
///
/// The program is cut greedily into consecutive segments that each close in
/// their own joint control eigenbasis. Returns None when a remaining segment
/// has controls without a shared eigenbasis, or the register is too large
/// for the dense check.
pub fn closure_defect(program: &PulseProgram) -> Result<Option<ClosureDefect>, EngineError> {
    let n = program.space().num_qubits();
    let steps = program.steps();
    if let Some(d) = segment_defect(steps, n)? {
        return Ok(Some(d));
    }
    let mut start = 0;
    for i in 0..steps.len() {
        if steps[i].control().is_none() {
            continue;
        }
        if let Some(d) = segment_defect(&steps[start..=i], n)? {
            if d.is_closed(SEGMENT_CLOSURE_TOL) {
                start = i + 1;
            }
        }
    }
    if start == steps.len() {
        return Ok(Some(ClosureDefect {
            amplitude: 0.0,
            rotation: 0.0,
        }));
    }
    segment_defect(&steps[start..], n)
}

const SEGMENT_CLOSURE_TOL: f64 = 1e-12;

fn segment_defect(steps: &[PulseStep], n: usize) -> Result<Option<ClosureDefect>, EngineError> {
    let params: Vec<(bool, C64)> = steps
        .iter()
        .filter_map(|s| match s {
            PulseStep::ConditionalDisplacement { amp, .. } => Some((false, *amp)),
            PulseStep::ConditionalRotation { angle, .. } => Some((true, C64::new(*angle, 0.0))),
            _ => None,
        })
        .collect();
    let has_local = steps
        .iter()
        .any(|s| matches!(s, PulseStep::LocalUnitary { .. }));
    let diagonal = !has_local
        && steps
            .iter()
            .filter_map(|s| s.control())
            .all(|c| c.is_diagonal());
    let mut defect = ClosureDefect {
        amplitude: 0.0,
        rotation: 0.0,
    };
    if diagonal && n <= 24 {
        let diags: Vec<Vec<f64>> = steps
            .iter()
            .filter_map(|s| s.control())
            .map(|c| c.diagonal_values().expect("diagonal control"))
            .collect();
        for b in 0..(1usize << n) {
            let (a, r) = branch_defect(
                diags
                    .iter()
                    .zip(&params)
                    .map(|(d, &(rot, p))| (d[b], rot, p)),
            );
            defect.amplitude = defect.amplitude.max(a);
            defect.rotation = defect.rotation.max(r);
        }
        return Ok(Some(defect));
    }
    if n > 10 {
        return Ok(None);
    }
    let d = 1usize << n;
    let mut w = ComplexMatrix::identity(d);
    let mut conjugated = Vec::new();
    for step in steps {
        match step {
            PulseStep::LocalUnitary { .. } => {
                let space = super::HybridSpace::new(n, 2)?;
                let full = super::dense::step_matrix(step, &space)?;
                // Strip the trivial Fock factor.
                let u = ComplexMatrix::from_fn(d, d, |r, c| full[(2 * r, 2 * c)]);
                w = u.matmul(&w);
            }
            s => {
                if let Some(c) = s.control() {
                    conjugated.push(w.dagger().matmul(&c.to_matrix()).matmul(&w));
                }
            }
        }
    }
    let mut mix = ComplexMatrix::zeros(d, d);
    for (i, c) in conjugated.iter().enumerate() {
        mix = &mix + &c.scale(C64::new(((i + 2) as f64).sqrt().fract() + 0.5, 0.0));
    }
    let v = eigh(&mix)?.vectors;
    let vd = v.dagger();
    let mut diags = Vec::with_capacity(conjugated.len());
    for c in &conjugated {
        let dc = vd.matmul(c).matmul(&v);
        let off = (0..d)
            .flat_map(|r| (0..d).map(move |s| (r, s)))
            .filter(|(r, s)| r != s)
            .map(|(r, s)| dc[(r, s)].norm())
            .fold(0.0, f64::max);
        if off > 1e-8 {
            return Ok(None);
        }
        diags.push((0..d).map(|b| dc[(b, b)].re).collect::<Vec<f64>>());
    }
    for b in 0..d {
        let (a, r) = branch_defect(
            diags
                .iter()
                .zip(&params)
                .map(|(dg, &(rot, p))| (dg[b], rot, p)),
        );
        defect.amplitude = defect.amplitude.max(a);
        defect.rotation = defect.rotation.max(r);
    }
    Ok(Some(defect))
}
