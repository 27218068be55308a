//! Local noise on the transmitted qubits and the resulting output fidelities.
//!
//! Qubits b1, c1, c2 each pass through the same single-qubit channel, and
//! Alice's qubits are untouched. After the measurement and correction the
//! receivers hold
//!
//! ```text
//! ρ_i = Tr_{a1 a2} [ M_i ε(ρ) M_i† ],   M_i = (I ⊗ U_i ⊗ V_i)(|ξi⟩⟨ξi| ⊗ I)
//! ```
//!
//! and the fidelity is `⟨Ψ|ρ_i|Ψ⟩`. The numeric route in this module
//! ([`NoisyResource`], [`fidelity_noisy`]) is the reference. The closed forms
//! in [`closed_form_fidelity`] cover outcome 2 only and are checked against it.
//!
//! Two conventions are offered. [`FidelityConvention::PaperUnnormalized`]
//! starts from the cluster state with unit-magnitude branch amplitudes
//! (squared norm 4) and never renormalizes; this is the convention the closed
//! forms are written in. [`FidelityConvention::TraceNormalized`] divides the
//! conditional output by its trace first.

use std::fmt;
use std::str::FromStr;

use crate::circuit::cluster_state;
use crate::error::{Error, Result};
use crate::protocol::{
    correction_ops, make_targets, measurement_basis, Outcome, ProtocolParams, B1, CANDY, SENDER,
    TRANSMITTED,
};
use crate::qcore::{fidelity_pure, gates, DensityMatrix, Operator, QubitIndex, C64, MAX_QUBITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseKind {
    AmplitudeDamping,
    PhaseFlip,
    BitFlip,
}

impl NoiseKind {
    pub const ALL: [NoiseKind; 3] = [
        NoiseKind::AmplitudeDamping,
        NoiseKind::PhaseFlip,
        NoiseKind::BitFlip,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            NoiseKind::AmplitudeDamping => "ad",
            NoiseKind::PhaseFlip => "pf",
            NoiseKind::BitFlip => "bf",
        }
    }

    /// Conventional name of the rate parameter: λ, μ or ν.
    pub fn rate_symbol(self) -> &'static str {
        match self {
            NoiseKind::AmplitudeDamping => "lambda",
            NoiseKind::PhaseFlip => "mu",
            NoiseKind::BitFlip => "nu",
        }
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            NoiseKind::AmplitudeDamping => "amplitude-damping",
            NoiseKind::PhaseFlip => "phase-flip",
            NoiseKind::BitFlip => "bit-flip",
        };
        f.write_str(name)
    }
}

impl FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ad" | "amplitude-damping" | "amplitude_damping" => Ok(NoiseKind::AmplitudeDamping),
            "pf" | "phase-flip" | "phase_flip" => Ok(NoiseKind::PhaseFlip),
            "bf" | "bit-flip" | "bit_flip" => Ok(NoiseKind::BitFlip),
            other => Err(Error::InvalidParams(format!("unknown noise kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FidelityConvention {
    /// `⟨Ψ|ρ_i|Ψ⟩` on the unnormalized pipeline.
    PaperUnnormalized,
    /// `⟨Ψ|ρ_i|Ψ⟩ / Tr ρ_i`.
    TraceNormalized,
}

/// A single-qubit channel given by its Kraus operators.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    kind: NoiseKind,
    rate: f64,
    operators: Vec<Operator>,
}

impl KrausChannel {
    /// * amplitude damping: `diag(1, √(1−λ))`, `[[0, √λ], [0, 0]]`
    /// * phase flip: `√(1−μ)·I`, `√μ·σz`
    /// * bit flip: `√(1−ν)·I`, `√ν·σx`
    pub fn new(kind: NoiseKind, rate: f64) -> Result<Self> {
        check_rate(rate)?;
        let keep = C64::new((1.0 - rate).sqrt(), 0.0);
        let hit = C64::new(rate.sqrt(), 0.0);
        let operators = match kind {
            NoiseKind::AmplitudeDamping => vec![
                Operator::from_real(2, &[1.0, 0.0, 0.0, keep.re])?,
                Operator::from_real(2, &[0.0, hit.re, 0.0, 0.0])?,
            ],
            NoiseKind::PhaseFlip => vec![
                gates::identity().scale(keep),
                gates::pauli_z().scale(hit),
            ],
            NoiseKind::BitFlip => vec![
                gates::identity().scale(keep),
                gates::pauli_x().scale(hit),
            ],
        };
        Ok(KrausChannel {
            kind,
            rate,
            operators,
        })
    }

    pub fn kind(&self) -> NoiseKind {
        self.kind
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn operators(&self) -> &[Operator] {
        &self.operators
    }

    /// `max |Σ_j X_j†X_j − I|` over entries.
    pub fn completeness_error(&self) -> f64 {
        let sum = self
            .operators
            .iter()
            .fold(Operator::zeros(2), |acc, x| &acc + &(&x.adjoint() * x));
        sum.max_abs_diff(&Operator::identity(2))
    }

    /// Applies the channel to one qubit of `rho`.
    pub fn apply_to_qubit(&self, rho: &DensityMatrix, qubit: QubitIndex) -> Result<DensityMatrix> {
        self.operators.iter().try_fold(DensityMatrix::zeros(rho.n_qubits())?, |acc, x| {
            acc.add(&rho.conjugate(x, &[qubit])?)
        })
    }
}

fn check_rate(rate: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::RateOutOfRange(rate));
    }
    Ok(())
}

fn check_five_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.n_qubits() != MAX_QUBITS {
        return Err(Error::DimensionMismatch {
            expected: 1 << MAX_QUBITS,
            found: rho.dim(),
        });
    }
    Ok(())
}

/// `ε(ρ) = Σ_{l,m,n} (I⊗I⊗X_l⊗X_m⊗X_n) ρ (I⊗I⊗X_l⊗X_m⊗X_n)†`, the same
/// channel on each of b1, c1, c2.
pub fn apply_local_noise(rho: &DensityMatrix, channel: &KrausChannel) -> Result<DensityMatrix> {
    apply_local_noise_per_qubit(rho, [channel, channel, channel])
}

/// Like [`apply_local_noise`] but with an independent channel for each of
/// b1, c1 and c2, in that order.
pub fn apply_local_noise_per_qubit(
    rho: &DensityMatrix,
    channels: [&KrausChannel; 3],
) -> Result<DensityMatrix> {
    check_five_qubits(rho)?;
    let [bob, c1, c2] = channels;
    let mut acc = DensityMatrix::zeros(MAX_QUBITS)?;
    for l in bob.operators() {
        for m in c1.operators() {
            let lm = l.kron(m);
            for n in c2.operators() {
                acc = acc.add(&rho.conjugate(&lm.kron(n), &TRANSMITTED)?)?;
            }
        }
    }
    Ok(acc)
}

/// Cluster state with unit-magnitude branch amplitudes, `|Φ⟩⟨Φ|` with trace 4.
pub fn unnormalized_channel_density() -> DensityMatrix {
    DensityMatrix::from_state(&cluster_state(), 4.0).expect("positive weight")
}

/// Receivers' state after outcome `outcome` and its correction, not normalized.
pub fn conditional_output(
    eps_rho: &DensityMatrix,
    outcome: Outcome,
    p: &ProtocolParams,
) -> Result<DensityMatrix> {
    check_five_qubits(eps_rho)?;
    let basis = measurement_basis(p);
    let (bob, candy) = correction_ops(outcome);
    eps_rho
        .conjugate(&basis.projector(outcome), &SENDER)?
        .conjugate(&bob, &[B1])?
        .conjugate(&candy, &CANDY)?
        .partial_trace(&SENDER)
}

/// The noisy resource `ε(|Φ⟩⟨Φ|)` for one channel, reusable across target
/// parameters.
#[derive(Debug, Clone)]
pub struct NoisyResource {
    channel: KrausChannel,
    state: DensityMatrix,
}

impl NoisyResource {
    pub fn new(kind: NoiseKind, rate: f64) -> Result<Self> {
        let channel = KrausChannel::new(kind, rate)?;
        NoisyResource::with_channels([&channel, &channel, &channel])
    }

    /// Separate channels for b1, c1, c2. Reported kind and rate are b1's.
    pub fn with_channels(channels: [&KrausChannel; 3]) -> Result<Self> {
        let state = apply_local_noise_per_qubit(&unnormalized_channel_density(), channels)?;
        Ok(NoisyResource {
            channel: channels[0].clone(),
            state,
        })
    }

    pub fn channel(&self) -> &KrausChannel {
        &self.channel
    }

    /// `ε(ρ)` in the unnormalized convention (trace 4).
    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn output(&self, p: &ProtocolParams, outcome: Outcome) -> Result<DensityMatrix> {
        conditional_output(&self.state, outcome, p)
    }

    /// Probability that Alice observes `outcome`.
    pub fn outcome_probability(&self, p: &ProtocolParams, outcome: Outcome) -> Result<f64> {
        Ok(self.output(p, outcome)?.trace().re / self.state.trace().re)
    }

    pub fn fidelity(
        &self,
        p: &ProtocolParams,
        outcome: Outcome,
        convention: FidelityConvention,
    ) -> Result<f64> {
        let out = self.output(p, outcome)?;
        let raw = fidelity_pure(&make_targets(p).psi, &out)?;
        match convention {
            FidelityConvention::PaperUnnormalized => Ok(raw),
            FidelityConvention::TraceNormalized => {
                let trace = out.trace().re;
                if trace <= 1e-300 {
                    return Err(Error::ZeroTrace);
                }
                Ok(raw / trace)
            }
        }
    }

    /// Outcome-averaged fidelity `Σ_i ⟨Ψ|ρ_i|Ψ⟩ / Tr ε(ρ)`, i.e. the sum of
    /// unnormalized overlaps computed from a unit-trace resource.
    pub fn average_fidelity(&self, p: &ProtocolParams) -> Result<f64> {
        let total = Outcome::ALL.iter().try_fold(0.0, |acc, &o| {
            Ok::<_, Error>(acc + self.fidelity(p, o, FidelityConvention::PaperUnnormalized)?)
        })?;
        Ok(total / self.state.trace().re)
    }
}

/// Numeric fidelity for one outcome, built by brute-force evolution.
pub fn fidelity_noisy(
    p: &ProtocolParams,
    kind: NoiseKind,
    rate: f64,
    outcome: Outcome,
    convention: FidelityConvention,
) -> Result<f64> {
    NoisyResource::new(kind, rate)?.fidelity(p, outcome, convention)
}

/// Closed-form outcome-2 fidelity in the unnormalized convention.
///
/// ```text
/// AD: (α²δ² + (1−λ)α²γ² + √(1−λ)β²δ² + (1−λ)^{3/2}β²γ²)²
///     + (λα²γδ + λ√(1−λ)β²γδ)² + (√λ αβδ² + (1−λ)√λ αβγ²)² + λ³α²β²γ²δ²
/// PF: (1−μ)³ + (1−μ)μ² + 2(1−μ)²μ(δ²−γ²)² + ((1−μ)²μ + μ³)(α²−β²)²
///     + 2(1−μ)μ²(α²−β²)²(δ²−γ²)²
/// BF: (1−ν)³ + 4ν²(1−ν)γ²δ² + 4(1−ν)²να²β² + 16ν³α²β²γ²δ²
/// ```
pub fn closed_form_fidelity(kind: NoiseKind, p: &ProtocolParams, rate: f64) -> Result<f64> {
    check_rate(rate)?;
    let (a, b, g, d) = (p.alpha(), p.beta(), p.gamma(), p.delta());
    let (a2, b2, g2, d2) = (a * a, b * b, g * g, d * d);
    let value = match kind {
        NoiseKind::AmplitudeDamping => {
            let l = rate;
            let s = (1.0 - l).sqrt();
            let sl = l.sqrt();
            let t1 = a2 * d2 + (1.0 - l) * a2 * g2 + s * b2 * d2 + s.powi(3) * b2 * g2;
            let t2 = l * a2 * g * d + l * s * b2 * g * d;
            let t3 = sl * a * b * d2 + (1.0 - l) * sl * a * b * g2;
            t1 * t1 + t2 * t2 + t3 * t3 + l.powi(3) * a2 * b2 * g2 * d2
        }
        NoiseKind::PhaseFlip => {
            let m = rate;
            let q = 1.0 - m;
            let sa = (a2 - b2).powi(2);
            let sg = (d2 - g2).powi(2);
            (q.powi(3) + q * m * m)
                + 2.0 * q * q * m * sg
                + (q * q * m + m.powi(3)) * sa
                + 2.0 * q * m * m * sa * sg
        }
        NoiseKind::BitFlip => {
            let n = rate;
            let q = 1.0 - n;
            q.powi(3)
                + 4.0 * n * n * q * g2 * d2
                + 4.0 * q * q * n * a2 * b2
                + 16.0 * n.powi(3) * a2 * b2 * g2 * d2
        }
    };
    Ok(value)
}
