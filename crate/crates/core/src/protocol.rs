//! The noiseless protocol: Alice holds qubits a1, a2 of the cluster state,
//! Bob holds b1 and Candy holds c1, c2. Alice measures in a basis built from
//! the target coefficients, announces the outcome, and the receivers apply a
//! fixed Pauli correction to end up with `|S1⟩ = α|0⟩ + β|1⟩` and
//! `|S2⟩ = γ|00⟩ + δ|11⟩`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::cluster_state;
use crate::error::{Error, Result};
use crate::qcore::{gates, Operator, QubitIndex, StateVector, C64};

pub const A1: QubitIndex = QubitIndex::from_const(1);
pub const A2: QubitIndex = QubitIndex::from_const(2);
pub const B1: QubitIndex = QubitIndex::from_const(3);
pub const C1: QubitIndex = QubitIndex::from_const(4);
pub const C2: QubitIndex = QubitIndex::from_const(5);

/// Alice's qubits.
pub const SENDER: [QubitIndex; 2] = [A1, A2];
/// Candy's qubits.
pub const CANDY: [QubitIndex; 2] = [C1, C2];
/// Every qubit that leaves Alice's lab.
pub const TRANSMITTED: [QubitIndex; 3] = [B1, C1, C2];

const NORM_TOL: f64 = 1e-12;

/// Real coefficients of the two target states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
}

impl ProtocolParams {
    /// Requires `α² + β² = 1` and `γ² + δ² = 1` to within `1e-12`.
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma), ("delta", delta)] {
            if !v.is_finite() || v.abs() > 1.0 {
                return Err(Error::InvalidParams(format!("{name} = {v} is outside [-1, 1]")));
            }
        }
        let first = alpha * alpha + beta * beta;
        if (first - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParams(format!("alpha² + beta² = {first}, expected 1")));
        }
        let second = gamma * gamma + delta * delta;
        if (second - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParams(format!("gamma² + delta² = {second}, expected 1")));
        }
        Ok(ProtocolParams {
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    /// Builds parameters from `α²` and `γ²`, taking positive square roots.
    pub fn from_probabilities(alpha2: f64, gamma2: f64) -> Result<Self> {
        for (name, v) in [("alpha2", alpha2), ("gamma2", gamma2)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParams(format!("{name} = {v} is outside [0, 1]")));
            }
        }
        ProtocolParams::new(
            alpha2.sqrt(),
            (1.0 - alpha2).sqrt(),
            gamma2.sqrt(),
            (1.0 - gamma2).sqrt(),
        )
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Index of Alice's measurement result, 1 through 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Outcome(u8);

impl Outcome {
    pub const ALL: [Outcome; 4] = [Outcome(1), Outcome(2), Outcome(3), Outcome(4)];

    pub fn new(index: usize) -> Result<Self> {
        match index {
            1..=4 => Ok(Outcome(index as u8)),
            _ => Err(Error::InvalidOutcome(index)),
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `|S1⟩`, `|S2⟩` and the joint target `|Ψ⟩ = |S1⟩ ⊗ |S2⟩` on (b1, c1, c2).
#[derive(Debug, Clone, PartialEq)]
pub struct Targets {
    pub s1: StateVector,
    pub s2: StateVector,
    pub psi: StateVector,
}

pub fn make_targets(p: &ProtocolParams) -> Targets {
    let s1 = StateVector::from_real(1, &[p.alpha, p.beta]).expect("one qubit");
    let s2 = StateVector::from_real(2, &[p.gamma, 0.0, 0.0, p.delta]).expect("two qubits");
    let psi = s1.tensor(&s2).expect("three qubits");
    Targets { s1, s2, psi }
}

/// Alice's two-qubit measurement basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    vectors: [StateVector; 4],
}

impl MeasurementBasis {
    pub fn vectors(&self) -> &[StateVector; 4] {
        &self.vectors
    }

    pub fn vector(&self, outcome: Outcome) -> &StateVector {
        &self.vectors[outcome.index() - 1]
    }

    /// Gram matrix `G_ij = ⟨ξi|ξj⟩`.
    pub fn gram(&self) -> Operator {
        let data = self
            .vectors
            .iter()
            .flat_map(|u| self.vectors.iter().map(move |v| u.inner(v).expect("same size")))
            .collect();
        Operator::new(4, data).expect("4x4")
    }

    /// `Σ_i |ξi⟩⟨ξi|`.
    pub fn resolution(&self) -> Operator {
        self.vectors.iter().fold(Operator::zeros(4), |acc, v| {
            &acc + &Operator::outer(v.amps(), v.amps()).expect("same size")
        })
    }

    /// `|ξi⟩⟨ξi|` as a 4×4 operator on (a1, a2).
    pub fn projector(&self, outcome: Outcome) -> Operator {
        let v = self.vector(outcome);
        Operator::outer(v.amps(), v.amps()).expect("same size")
    }
}

pub fn measurement_basis(p: &ProtocolParams) -> MeasurementBasis {
    let (a, b, g, d) = (p.alpha, p.beta, p.gamma, p.delta);
    let xi = |c: [f64; 4]| StateVector::from_real(2, &c).expect("two qubits");
    MeasurementBasis {
        vectors: [
            xi([a * g, a * d, b * g, -b * d]),
            xi([a * d, -a * g, -b * d, -b * g]),
            xi([b * g, b * d, -a * g, a * d]),
            xi([b * d, -b * g, a * d, a * g]),
        ],
    }
}

/// Bob's 2×2 and Candy's 4×4 correction for a given outcome.
///
/// | outcome | Bob    | Candy      |
/// |---------|--------|------------|
/// | 1       | I      | I ⊗ I      |
/// | 2       | σz     | σx ⊗ σxσz  |
/// | 3       | σxσz   | I ⊗ I      |
/// | 4       | σx     | σx ⊗ σxσz  |
///
/// `σxσz` is the matrix product with `σz` acting first.
pub fn correction_ops(outcome: Outcome) -> (Operator, Operator) {
    let id2 = Operator::identity(4);
    let flip = gates::pauli_x().kron(&gates::pauli_xz());
    match outcome.index() {
        1 => (gates::identity(), id2),
        2 => (gates::pauli_z(), flip),
        3 => (gates::pauli_xz(), id2),
        _ => (gates::pauli_x(), flip),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeRecord {
    pub outcome: Outcome,
    pub probability: f64,
    pub bob_state: StateVector,
    pub candy_state: StateVector,
    /// `|⟨Ψ|corrected⟩|²` for the normalized corrected state of (b1, c1, c2).
    pub post_correction_fidelity: f64,
}

/// Residual state of (b1, c1, c2) left by outcome `i`: `(⟨ξi| ⊗ I)|Φ⟩`, not normalized.
pub fn branch_residual(channel: &StateVector, basis: &MeasurementBasis, outcome: Outcome) -> Result<StateVector> {
    channel.project_leading(basis.vector(outcome))
}

/// Applies Bob's and Candy's correction to a three-qubit state on (b1, c1, c2).
pub fn apply_correction(state: &StateVector, outcome: Outcome) -> Result<StateVector> {
    let (bob, candy) = correction_ops(outcome);
    let q = |v| QubitIndex::from_const(v);
    state.apply(&bob, &[q(1)])?.apply(&candy, &[q(2), q(3)])
}

/// Runs the noiseless protocol for every outcome with exact projections.
pub fn run_ideal(p: &ProtocolParams) -> [OutcomeRecord; 4] {
    let channel = cluster_state();
    let basis = measurement_basis(p);
    let targets = make_targets(p);
    Outcome::ALL.map(|outcome| {
        let residual = branch_residual(&channel, &basis, outcome).expect("five-qubit channel");
        let probability = residual.norm_sqr();
        let corrected = apply_correction(&residual.normalized(), outcome).expect("three qubits");
        let (bob_state, candy_state) = split_product(&corrected);
        let overlap = targets.psi.overlap_magnitude(&corrected).expect("three qubits");
        OutcomeRecord {
            outcome,
            probability,
            bob_state,
            candy_state,
            post_correction_fidelity: overlap * overlap,
        }
    })
}

/// Factors a three-qubit product state into its first qubit and last two.
fn split_product(state: &StateVector) -> (StateVector, StateVector) {
    let amps = state.amps();
    let column = |c: usize| [amps[c], amps[4 + c]];
    let best = (0..4)
        .max_by(|&i, &j| {
            let n = |c: [C64; 2]| c[0].norm_sqr() + c[1].norm_sqr();
            n(column(i)).total_cmp(&n(column(j)))
        })
        .unwrap();
    let first = StateVector::new(1, column(best).to_vec())
        .expect("one qubit")
        .normalized();
    let rest = (0..4)
        .map(|c| first.amps()[0].conj() * amps[c] + first.amps()[1].conj() * amps[4 + c])
        .collect();
    (first, StateVector::new(2, rest).expect("two qubits"))
}

/// Draws one outcome from `probabilities` using a generator seeded with `seed`.
pub fn sample_outcome(probabilities: &[f64; 4], seed: u64) -> Result<Outcome> {
    if let Some(p) = probabilities.iter().find(|p| !p.is_finite() || **p < 0.0) {
        return Err(Error::InvalidProbabilities(format!("entry {p} is negative or not finite")));
    }
    let total: f64 = probabilities.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidProbabilities(format!("entries sum to {total}")));
    }
    let u: f64 = ChaCha8Rng::seed_from_u64(seed).random();
    let mut cumulative = 0.0;
    for (i, p) in probabilities.iter().enumerate() {
        cumulative += p;
        if u < cumulative {
            return Outcome::new(i + 1);
        }
    }
    // rounding left u above the running sum
    let last = probabilities.iter().rposition(|p| *p > 0.0).unwrap();
    Outcome::new(last + 1)
}
