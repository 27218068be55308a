//! Dense complex linear algebra for registers of at most five qubits.
//!
//! Qubit labels are 1-based and qubit 1 is the most significant bit of an
//! amplitude index, so the ket `|01011⟩` lives at index 11. Everything here is
//! stored densely; the largest object is a 32×32 density matrix.

mod density;
mod operator;
mod state;

pub use density::DensityMatrix;
pub use operator::{gates, Operator};
pub use state::StateVector;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used for every amplitude and matrix entry.
pub type C64 = Complex64;

/// Largest register the crate will build.
pub const MAX_QUBITS: usize = 5;

/// A 1-based qubit label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitIndex(usize);

impl QubitIndex {
    pub fn new(value: usize) -> Result<Self> {
        if value == 0 || value > MAX_QUBITS {
            return Err(Error::QubitOutOfRange {
                index: value,
                n_qubits: MAX_QUBITS,
            });
        }
        Ok(QubitIndex(value))
    }

    pub(crate) const fn from_const(value: usize) -> Self {
        assert!(value >= 1 && value <= MAX_QUBITS);
        QubitIndex(value)
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Bit position of this qubit inside an amplitude index of an `n`-qubit register.
    pub(crate) fn shift(self, n_qubits: usize) -> usize {
        n_qubits - self.0
    }
}

impl TryFrom<usize> for QubitIndex {
    type Error = Error;

    fn try_from(value: usize) -> Result<Self> {
        QubitIndex::new(value)
    }
}

impl std::fmt::Display for QubitIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Operator application on a subset of qubits, shared by pure and mixed states.
///
/// For a [`DensityMatrix`] this is the left product `op · ρ` only; the full
/// channel step `op · ρ · op†` is [`DensityMatrix::conjugate`].
pub trait ApplyOperator: Sized {
    fn apply_operator(&self, op: &Operator, qubits: &[QubitIndex]) -> Result<Self>;
}

impl ApplyOperator for StateVector {
    fn apply_operator(&self, op: &Operator, qubits: &[QubitIndex]) -> Result<Self> {
        self.apply(op, qubits)
    }
}

impl ApplyOperator for DensityMatrix {
    fn apply_operator(&self, op: &Operator, qubits: &[QubitIndex]) -> Result<Self> {
        self.apply_left(op, qubits)
    }
}

/// Builds a list of qubit labels from plain integers.
pub fn qubits(values: &[usize]) -> Result<Vec<QubitIndex>> {
    values.iter().map(|&v| QubitIndex::new(v)).collect()
}

pub(crate) fn validate_register(n_qubits: usize) -> Result<()> {
    match n_qubits {
        0 => Err(Error::EmptyRegister),
        n if n > MAX_QUBITS => Err(Error::TooManyQubits(n)),
        _ => Ok(()),
    }
}

/// Checks that `qubits` are distinct and fit an `n_qubits` register.
pub(crate) fn validate_targets(n_qubits: usize, qubits: &[QubitIndex]) -> Result<()> {
    for (i, q) in qubits.iter().enumerate() {
        if q.get() > n_qubits {
            return Err(Error::QubitOutOfRange {
                index: q.get(),
                n_qubits,
            });
        }
        if qubits[..i].contains(q) {
            return Err(Error::DuplicateQubit(q.get()));
        }
    }
    Ok(())
}

/// Overlap `⟨ψ|ρ|ψ⟩` between a normalized pure state and a density matrix.
///
/// The density matrix does not need unit trace. An imaginary part above
/// `1e-12` (relative to the largest entry of `ρ`) means `ρ` is not Hermitian
/// and is reported as an error.
pub fn fidelity_pure(psi: &StateVector, rho: &DensityMatrix) -> Result<f64> {
    if psi.n_qubits() != rho.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: psi.len(),
        });
    }
    let norm_sqr = psi.norm_sqr();
    if (norm_sqr - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized(norm_sqr));
    }
    let rho_psi = rho.entries().apply_to(psi.amps());
    let value: C64 = psi
        .amps()
        .iter()
        .zip(&rho_psi)
        .map(|(a, b)| a.conj() * b)
        .sum();
    let scale = rho.entries().max_abs().max(1.0);
    if value.im.abs() > 1e-12 * scale {
        return Err(Error::NotHermitian(value.im));
    }
    Ok(value.re)
}

/// Scatters the bits of a `k`-bit sub-index onto the given bit positions.
/// Position 0 of `shifts` receives the most significant sub-index bit.
pub(crate) fn subindex_offsets(shifts: &[usize]) -> Vec<usize> {
    let k = shifts.len();
    (0..1usize << k)
        .map(|s| {
            shifts
                .iter()
                .enumerate()
                .filter(|(j, _)| (s >> (k - 1 - j)) & 1 == 1)
                .fold(0, |acc, (_, &sh)| acc | 1 << sh)
        })
        .collect()
}

/// Applies `op` to the listed qubits of an amplitude vector, identity elsewhere.
pub(crate) fn apply_on_qubits(
    n_qubits: usize,
    amps: &[C64],
    op: &Operator,
    qubits: &[QubitIndex],
) -> Vec<C64> {
    let shifts: Vec<usize> = qubits.iter().map(|q| q.shift(n_qubits)).collect();
    let offsets = subindex_offsets(&shifts);
    let mask = offsets.last().copied().unwrap_or(0);
    let sub = offsets.len();
    let mut out = vec![C64::new(0.0, 0.0); amps.len()];
    let mut gathered = vec![C64::new(0.0, 0.0); sub];
    for base in (0..amps.len()).filter(|b| b & mask == 0) {
        for (g, off) in gathered.iter_mut().zip(&offsets) {
            *g = amps[base | off];
        }
        for (r, off) in offsets.iter().enumerate() {
            out[base | off] = (0..sub).map(|c| op.get(r, c) * gathered[c]).sum();
        }
    }
    out
}
