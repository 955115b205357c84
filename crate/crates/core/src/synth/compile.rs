// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use crate::engine::{HybridSpace, PulseProgram, PulseStep};
use crate::numerics::{hermitian_function, pauli_matrices, ComplexMatrix, C64, ONE};
use crate::qubit::{
    classify, collective_j, commutation_check, Axis, OperatorClass, QubitOperator, Relation,
};

use super::target::{Outer, SynthesisTarget, MAX_ORACLE_QUBITS};
use super::SynthError;

/// Default Fock cutoff of emitted programs.
pub const DEFAULT_CUTOFF: usize = 64;
/// Largest per-branch displacement before a loop is split.
pub const MAX_BRANCH_AMPLITUDE: f64 = 1.5;

/// Compiles targets into pulse programs on a fixed Fock cutoff.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Synthesizer {
    pub cutoff: usize,
    pub max_branch_amplitude: f64,
}

impl Default for Synthesizer {
    fn default() -> Self {
        Self {
            cutoff: DEFAULT_CUTOFF,
            max_branch_amplitude: MAX_BRANCH_AMPLITUDE,
        }
    }
}

/// Program plus the analytic error bound of an approximate synthesis.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxProgram {
    pub program: PulseProgram,
    pub error_bound: f64,
}

fn require_commute(a: &QubitOperator, b: &QubitOperator) -> Result<(), SynthError> {
    let r = commutation_check(a, b)?;
    if r.relation != Relation::Commute {
        let c = a.pauli_sum().commutator(b.pauli_sum())?.max_entry();
        return Err(SynthError::Commutation { residual: c });
    }
    Ok(())
}

fn spectral_radius(op: &QubitOperator) -> Result<f64, SynthError> {
    if op.as_single().is_some() || op.is_zero() {
        return Ok(op.abs_sum());
    }
    let v = op.spectrum()?.values();
    Ok(v.iter().fold(0.0f64, |m, x| m.max(x.abs())))
}

/// Number of repeated loops keeping every branch amplitude within `max`.
fn split_count(amp: f64, max: f64) -> usize {
    if amp <= max {
        1
    } else {
        ((amp / max).powi(2)).ceil() as usize
    }
}

impl Synthesizer {
    pub fn with_cutoff(cutoff: usize) -> Self {
        Self {
            cutoff,
            ..Self::default()
        }
    }

    fn space(&self, n: usize) -> Result<HybridSpace, SynthError> {
        Ok(HybridSpace::new(n, self.cutoff)?)
    }

    fn finish(
        &self,
        n: usize,
        steps: Vec<PulseStep>,
        target: SynthesisTarget,
    ) -> Result<PulseProgram, SynthError> {
        let mut p = PulseProgram::new(self.space(n)?, steps)?;
        p.cyclic = true;
        if n <= MAX_ORACLE_QUBITS {
            p.expected = target.expected_unitary()?;
        }
        p.target = Some(target);
        Ok(p)
    }

    /// Dispatches on the target variant.
    pub fn synthesize(&self, target: &SynthesisTarget) -> Result<PulseProgram, SynthError> {
        match target {
            SynthesisTarget::Pair { a, b, theta } => self.pair(a, b, *theta),
            SynthesisTarget::TripleSin {
                a,
                b,
                c,
                theta_rot,
                phi,
                tau,
            } => self.triple_sin(a, b, c, *theta_rot, *phi, *tau),
            SynthesisTarget::TripleExact { a, b, c, lambda, t } => {
                self.triple_exact(a, b, c, *lambda, *t)
            }
            SynthesisTarget::TripleApprox {
                a,
                b,
                c,
                lambda_prime,
                t,
                theta_rot,
            } => Ok(self
                .triple_approx(a, b, c, *lambda_prime, *t, *theta_rot)?
                .program),
            SynthesisTarget::TrigCollective {
                axis,
                num_qubits,
                theta_rot,
                phi,
                lambda,
                t,
            } => self.trig_collective(*axis, *num_qubits, *theta_rot, *phi, *lambda, *t),
            SynthesisTarget::PauliString {
                axis,
                num_qubits,
                sign,
                lambda,
                t,
            } => self.pauli_string(*axis, *num_qubits, *sign, lambda * t),
            SynthesisTarget::CommutingSum { parts } => self.commuting_sum(parts),
            SynthesisTarget::Conjugated { outer, inner } => self.conjugated(outer, inner),
            SynthesisTarget::Projector {
                num_qubits,
                n,
                phase,
            } => self.projector(*num_qubits, *n, *phase),
            SynthesisTarget::FJz {
                num_qubits,
                values,
                t,
            } => self.fjz(*num_qubits, values, *t),
            SynthesisTarget::BasisProjector { bits, phase } => self.basis_projector(bits, *phase),
            SynthesisTarget::GeneralPair {
                aj,
                ak,
                cj,
                ck,
                theta_j,
                theta_k,
                alpha_j,
                alpha_k,
            } => self.general_pair(aj, ak, cj, ck, *theta_j, *theta_k, *alpha_j, *alpha_k),
            SynthesisTarget::GlobalPhase { num_qubits, phase } => {
                self.global_phase(*num_qubits, *phase)
            }
        }
    }

    pub fn global_phase(&self, n: usize, phase: f64) -> Result<PulseProgram, SynthError> {
        self.finish(
            n,
            vec![PulseStep::GlobalPhase(phase)],
            SynthesisTarget::GlobalPhase {
                num_qubits: n,
                phase,
            },
        )
    }

    /// e^{iθAB} from the loop D(−Bβ)D(−Aα)D(Bβ)D(Aα).
    pub fn pair(
        &self,
        a: &QubitOperator,
        b: &QubitOperator,
        theta: f64,
    ) -> Result<PulseProgram, SynthError> {
        if a.num_qubits() != b.num_qubits() {
            return Err(SynthError::Invalid(
                "pair operands act on different registers".into(),
            ));
        }
        require_commute(a, b)?;
        let r = (theta.abs() / 2.0).sqrt();
        let reach = r * spectral_radius(a)?.max(spectral_radius(b)?);
        let k = split_count(reach, self.max_branch_amplitude);
        let r = r / (k as f64).sqrt();
        let alpha = ONE * r;
        let beta = crate::numerics::I * (theta.signum() * r);
        let mut steps = Vec::with_capacity(4 * k);
        for _ in 0..k {
            steps.extend([
                PulseStep::cdisp(a.clone(), alpha),
                PulseStep::cdisp(b.clone(), beta),
                PulseStep::cdisp(a.clone(), -alpha),
                PulseStep::cdisp(b.clone(), -beta),
            ]);
        }
        self.finish(
            a.num_qubits(),
            steps,
            SynthesisTarget::Pair {
                a: a.clone(),
                b: b.clone(),
                theta,
            },
        )
    }

    fn triple_sin_steps(
        &self,
        a: &QubitOperator,
        b: &QubitOperator,
        c: &QubitOperator,
        theta_rot: f64,
        phi: f64,
        tau: f64,
    ) -> Result<Vec<PulseStep>, SynthError> {
        require_commute(a, b)?;
        require_commute(a, c)?;
        require_commute(b, c)?;
        let phi = if tau < 0.0 { phi + PI } else { phi };
        let r = (tau.abs() / 2.0).sqrt();
        let reach = r * spectral_radius(a)?.max(spectral_radius(b)?);
        let k = split_count(reach, self.max_branch_amplitude);
        let r = r / (k as f64).sqrt();
        let alpha = ONE * r;
        let beta = C64::from_polar(r, -phi);
        let mut steps = Vec::with_capacity(8 * k);
        for _ in 0..k {
            steps.extend([
                PulseStep::crot(c.clone(), -theta_rot),
                PulseStep::cdisp(a.clone(), alpha),
                PulseStep::crot(c.clone(), theta_rot),
                PulseStep::cdisp(b.clone(), beta),
                PulseStep::crot(c.clone(), -theta_rot),
                PulseStep::cdisp(a.clone(), -alpha),
                PulseStep::crot(c.clone(), theta_rot),
                PulseStep::cdisp(b.clone(), -beta),
            ]);
        }
        Ok(steps)
    }

    /// exp(−iτ·AB·sin(θC + φ)) from the eight-step rotated loop.
    pub fn triple_sin(
        &self,
        a: &QubitOperator,
        b: &QubitOperator,
        c: &QubitOperator,
        theta_rot: f64,
        phi: f64,
        tau: f64,
    ) -> Result<PulseProgram, SynthError> {
        let steps = self.triple_sin_steps(a, b, c, theta_rot, phi, tau)?;
        self.finish(
            a.num_qubits(),
            steps,
            SynthesisTarget::TripleSin {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
                theta_rot,
                phi,
                tau,
            },
        )
    }

    /// e^{−iλt·ABC}, exact when C² = I or C² = C.
    pub fn triple_exact(
        &self,
        a: &QubitOperator,
        b: &QubitOperator,
        c: &QubitOperator,
        lambda: f64,
        t: f64,
    ) -> Result<PulseProgram, SynthError> {
        let class = classify(c);
        if class == OperatorClass::Generic {
            return Err(SynthError::Classification(
                "third operator is neither self-inverse (C² = I) nor idempotent (C² = C)".into(),
            ));
        }
        let theta_rot = FRAC_PI_2;
        let steps = self.triple_sin_steps(a, b, c, theta_rot, 0.0, lambda * t / theta_rot.sin())?;
        self.finish(
            a.num_qubits(),
            steps,
            SynthesisTarget::TripleExact {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
                lambda,
                t,
            },
        )
    }

    /// e^{−iλ′t·ABC} via sin(θC) ≈ θC for small θ; generic C allowed.
    pub fn triple_approx(
        &self,
        a: &QubitOperator,
        b: &QubitOperator,
        c: &QubitOperator,
        lambda_prime: f64,
        t: f64,
        theta_rot: f64,
    ) -> Result<ApproxProgram, SynthError> {
        if theta_rot == 0.0 || !theta_rot.is_finite() {
            return Err(SynthError::Invalid(
                "rotation angle must be finite and nonzero".into(),
            ));
        }
        let exact = classify(c) != OperatorClass::Generic;
        let scale = if exact { theta_rot.sin() } else { theta_rot };
        let lt = lambda_prime * t;
        let steps = self.triple_sin_steps(a, b, c, theta_rot, 0.0, lt / scale)?;
        let error_bound = if exact || lt == 0.0 {
            0.0
        } else {
            // ‖AB·(sin(θC)/θ − C)‖ on the spectrum of the commuting product.
            let f = hermitian_function(&c.to_matrix(), |x| (theta_rot * x).sin() / theta_rot - x)?;
            let m = a.to_matrix().matmul(&b.to_matrix()).matmul(&f);
            let e = crate::numerics::eigh(&m)?;
            lt.abs() * e.values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
        };
        let program = self.finish(
            a.num_qubits(),
            steps,
            SynthesisTarget::TripleApprox {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
                lambda_prime,
                t,
                theta_rot,
            },
        )?;
        Ok(ApproxProgram {
            program,
            error_bound,
        })
    }

    /// exp(−iλt·sin(θJ_axis + φ)).
    pub fn trig_collective(
        &self,
        axis: Axis,
        n: usize,
        theta_rot: f64,
        phi: f64,
        lambda: f64,
        t: f64,
    ) -> Result<PulseProgram, SynthError> {
        let id = QubitOperator::identity(n)?;
        let j = collective_j(axis, n)?;
        let steps = self.triple_sin_steps(&id, &id, &j, theta_rot, phi, lambda * t)?;
        self.finish(
            n,
            steps,
            SynthesisTarget::TrigCollective {
                axis,
                num_qubits: n,
                theta_rot,
                phi,
                lambda,
                t,
            },
        )
    }

    /// exp(−i·sign·λt·σ_axis^{⊗N}) from sin(πJ_axis + φ) = ±σ_axis^{⊗N}.
    pub fn pauli_string(
        &self,
        axis: Axis,
        n: usize,
        sign: i8,
        lambda_t: f64,
    ) -> Result<PulseProgram, SynthError> {
        if sign != 1 && sign != -1 {
            return Err(SynthError::Invalid(format!("sign must be ±1, got {sign}")));
        }
        // Even N: cos(πJ) = (−1)^{N/2}σ^{⊗N}; odd N: sin(πJ) = (−1)^{(N−1)/2}σ^{⊗N}.
        let (phi, parity) = if n.is_multiple_of(2) {
            (FRAC_PI_2, n / 2)
        } else {
            (0.0, (n - 1) / 2)
        };
        let coef = if parity % 2 == 0 { 1.0 } else { -1.0 };
        let id = QubitOperator::identity(n)?;
        let j = collective_j(axis, n)?;
        let steps =
            self.triple_sin_steps(&id, &id, &j, PI, phi, f64::from(sign) * lambda_t * coef)?;
        self.finish(
            n,
            steps,
            SynthesisTarget::PauliString {
                axis,
                num_qubits: n,
                sign,
                lambda: lambda_t,
                t: 1.0,
            },
        )
    }

    /// Concatenation of commuting parts, each scaled by its coefficient.
    pub fn commuting_sum(
        &self,
        parts: &[(SynthesisTarget, f64)],
    ) -> Result<PulseProgram, SynthError> {
        let Some((first, _)) = parts.first() else {
            return Err(SynthError::Invalid("empty commuting sum".into()));
        };
        let n = first.num_qubits()?;
        let scaled: Vec<SynthesisTarget> = parts.iter().map(|(t, c)| t.scaled(*c)).collect();
        let mut programs = Vec::with_capacity(parts.len());
        for t in &scaled {
            if t.num_qubits()? != n {
                return Err(SynthError::Invalid(
                    "parts act on different registers".into(),
                ));
            }
            programs.push(self.synthesize(t)?);
        }
        let mut checked = false;
        if n <= MAX_ORACLE_QUBITS {
            let us: Vec<ComplexMatrix> = programs
                .iter()
                .map(|p| {
                    p.expected
                        .clone()
                        .ok_or_else(|| SynthError::Invalid("missing oracle".into()))
                })
                .collect::<Result<_, _>>()?;
            for i in 0..us.len() {
                for j in (i + 1)..us.len() {
                    if us[i].commutator(&us[j]).max_abs() > 1e-9 {
                        return Err(SynthError::NonCommutingParts { i, j });
                    }
                }
            }
            checked = true;
        }
        let mut steps = Vec::new();
        for p in &programs {
            steps.extend(p.steps().iter().cloned());
        }
        let mut out = self.finish(
            n,
            steps,
            SynthesisTarget::CommutingSum {
                parts: parts.to_vec(),
            },
        )?;
        if !checked {
            out.assumptions
                .push("parts assumed pairwise commuting (register too large to check)".into());
        }
        Ok(out)
    }

    /// U·inner·U†: the outer inverse is applied first.
    pub fn conjugated(
        &self,
        outer: &Outer,
        inner: &SynthesisTarget,
    ) -> Result<PulseProgram, SynthError> {
        let n = inner.num_qubits()?;
        let inner_p = self.synthesize(inner)?;
        let mut steps = Vec::new();
        match outer {
            Outer::Program(p) => {
                if !p.cyclic {
                    return Err(SynthError::Invalid("outer program must be cyclic".into()));
                }
                if p.space().num_qubits() != n {
                    return Err(SynthError::Invalid(
                        "outer program acts on a different register".into(),
                    ));
                }
                steps.extend(p.inverse().steps().iter().cloned());
                steps.extend(inner_p.steps().iter().cloned());
                steps.extend(p.steps().iter().cloned());
            }
            Outer::Unitary(u) => {
                steps.push(PulseStep::register_unitary(u.dagger()));
                steps.extend(inner_p.steps().iter().cloned());
                steps.push(PulseStep::register_unitary(u.clone()));
            }
        }
        let mut out = self.finish(
            n,
            steps,
            SynthesisTarget::Conjugated {
                outer: outer.clone(),
                inner: Box::new(inner.clone()),
            },
        )?;
        out.assumptions.extend(inner_p.assumptions);
        Ok(out)
    }

    /// exp(−it(λz·z̃ + λy·ỹ)) for σ̃ = σ^{⊗N}, N ≡ 1 (mod 4), by rotating z̃
    /// about x̃.
    pub fn two_axis_sum(
        &self,
        n: usize,
        lambda_z: f64,
        lambda_y: f64,
        t: f64,
    ) -> Result<PulseProgram, SynthError> {
        if n % 4 != 1 {
            return Err(SynthError::Invalid(format!(
                "register size {n} is not 1 mod 4"
            )));
        }
        let lambda = lambda_z.hypot(lambda_y);
        let theta = lambda_y.atan2(lambda_z);
        // U = e^{iθx̃/2}.
        let outer = self.pauli_string(Axis::X, n, -1, theta / 2.0)?;
        let inner = SynthesisTarget::PauliString {
            axis: Axis::Z,
            num_qubits: n,
            sign: 1,
            lambda: lambda * t,
            t: 1.0,
        };
        self.conjugated(&Outer::Program(Box::new(outer)), &inner)
    }

    /// e^{−i·phase·P_n} from N cosine loops plus a global phase.
    pub fn projector(
        &self,
        n: usize,
        weight: usize,
        phase: f64,
    ) -> Result<PulseProgram, SynthError> {
        let steps = self.projector_steps(n, weight, phase)?;
        self.finish(
            n,
            steps,
            SynthesisTarget::Projector {
                num_qubits: n,
                n: weight,
                phase,
            },
        )
    }

    fn projector_steps(
        &self,
        n: usize,
        weight: usize,
        phase: f64,
    ) -> Result<Vec<PulseStep>, SynthError> {
        if weight > n {
            return Err(SynthError::Invalid(format!(
                "weight {weight} outside 0..={n}"
            )));
        }
        let id = QubitOperator::identity(n)?;
        let jz = collective_j(Axis::Z, n)?;
        let m = (n + 1) as f64;
        let tau = phase / m;
        let mut steps = vec![PulseStep::GlobalPhase(-tau)];
        // Hamming weight is N/2 − Jz, so cos[θ_k(weight − n)] = sin(θ_k Jz + φ_k).
        let offset = n as f64 / 2.0 - weight as f64;
        for k in 1..=n {
            let th = 2.0 * PI * k as f64 / m;
            steps.extend(self.triple_sin_steps(&id, &id, &jz, th, FRAC_PI_2 - th * offset, tau)?);
        }
        Ok(steps)
    }

    /// e^{−it·F(Jz)} as a sum of weighted projector programs.
    pub fn fjz(&self, n: usize, values: &[f64], t: f64) -> Result<PulseProgram, SynthError> {
        if values.len() != n + 1 {
            return Err(SynthError::Invalid(format!(
                "expected {} values, got {}",
                n + 1,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(SynthError::Invalid("non-finite F value".into()));
        }
        let mut steps = Vec::new();
        for w in 0..=n {
            // Weight-w states carry Jz = N/2 − w.
            steps.extend(self.projector_steps(n, w, values[n - w] * t)?);
        }
        self.finish(
            n,
            steps,
            SynthesisTarget::FJz {
                num_qubits: n,
                values: values.to_vec(),
                t,
            },
        )
    }

    /// e^{−i·phase·|bits⟩⟨bits|} by flipping set bits around P₀.
    pub fn basis_projector(&self, bits: &[bool], phase: f64) -> Result<PulseProgram, SynthError> {
        let n = bits.len();
        let flips: Vec<PulseStep> = bits
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(i, _)| PulseStep::local(i + 1, pauli_matrices::sx()))
            .collect();
        let mut steps = flips.clone();
        steps.extend(self.projector_steps(n, 0, phase)?);
        steps.extend(flips);
        self.finish(
            n,
            steps,
            SynthesisTarget::BasisProjector {
                bits: bits.to_vec(),
                phase,
            },
        )
    }

    /// Two-operator loop with independently rotated amplitudes.
    #[allow(clippy::too_many_arguments)]
    pub fn general_pair(
        &self,
        aj: &QubitOperator,
        ak: &QubitOperator,
        cj: &QubitOperator,
        ck: &QubitOperator,
        theta_j: f64,
        theta_k: f64,
        alpha_j: C64,
        alpha_k: C64,
    ) -> Result<PulseProgram, SynthError> {
        let ops = [aj, ak, cj, ck];
        for i in 0..4 {
            for j in (i + 1)..4 {
                require_commute(ops[i], ops[j])?;
            }
        }
        // Loop phase is 2·Im(·); halve each amplitude's weight.
        let a = alpha_j * FRAC_1_SQRT_2;
        let b = alpha_k * FRAC_1_SQRT_2;
        let reach = a.norm().max(b.norm()) * spectral_radius(aj)?.max(spectral_radius(ak)?);
        let k = split_count(reach, self.max_branch_amplitude);
        let s = 1.0 / (k as f64).sqrt();
        let (a, b) = (a * s, b * s);
        let sandwich =
            |c: &QubitOperator, th: f64, op: &QubitOperator, amp: C64| -> Vec<PulseStep> {
                let mut v = Vec::with_capacity(3);
                if th != 0.0 {
                    v.push(PulseStep::crot(c.clone(), -th));
                }
                v.push(PulseStep::cdisp(op.clone(), amp));
                if th != 0.0 {
                    v.push(PulseStep::crot(c.clone(), th));
                }
                v
            };
        let mut steps = Vec::new();
        for _ in 0..k {
            steps.extend(sandwich(cj, theta_j, aj, a));
            steps.extend(sandwich(ck, theta_k, ak, b));
            steps.extend(sandwich(cj, theta_j, aj, -a));
            steps.extend(sandwich(ck, theta_k, ak, -b));
        }
        self.finish(
            aj.num_qubits(),
            steps,
            SynthesisTarget::GeneralPair {
                aj: aj.clone(),
                ak: ak.clone(),
                cj: cj.clone(),
                ck: ck.clone(),
                theta_j,
                theta_k,
                alpha_j,
                alpha_k,
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ZERO;

    #[test]
    fn split_counts() {
        assert_eq!(split_count(1.0, 1.5), 1);
        assert_eq!(split_count(3.0, 1.5), 4);
        assert_eq!(split_count(1.6, 1.5), 2);
    }

    #[test]
    fn zero_amplitude_pair() {
        let s = Synthesizer::default();
        let z = QubitOperator::parse("1.0 * Z1", 1).unwrap();
        let p = s.pair(&z, &z, 0.0).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.steps().iter().all(|st| match st {
            PulseStep::ConditionalDisplacement { amp, .. } => *amp == ZERO,
            _ => false,
        }));
    }
}
