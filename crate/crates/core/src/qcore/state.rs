use super::{apply_on_qubits, validate_register, validate_targets, Operator, QubitIndex, C64};
use crate::error::{Error, Result};

/// Pure state of a register of one to five qubits.
///
/// Normalization is not enforced at construction; [`StateVector::is_normalized`]
/// checks it when a caller needs it.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new(n_qubits: usize, amps: Vec<C64>) -> Result<Self> {
        validate_register(n_qubits)?;
        if amps.len() != 1 << n_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << n_qubits,
                found: amps.len(),
            });
        }
        Ok(StateVector { n_qubits, amps })
    }

    pub fn from_real(n_qubits: usize, amps: &[f64]) -> Result<Self> {
        StateVector::new(n_qubits, amps.iter().map(|&a| C64::new(a, 0.0)).collect())
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        validate_register(n_qubits)?;
        let dim = 1 << n_qubits;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index,
            });
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps })
    }

    /// Computational basis state written as a bit string, e.g. `"01011"`.
    pub fn from_ket(bits: &str) -> Result<Self> {
        let index = ket_index(bits)?;
        StateVector::basis(bits.len(), index)
    }

    /// A sum of basis kets with real coefficients, e.g. `[(0.5, "00"), (0.5, "11")]`.
    pub fn from_terms(n_qubits: usize, terms: &[(f64, &str)]) -> Result<Self> {
        validate_register(n_qubits)?;
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n_qubits];
        for &(coeff, ket) in terms {
            if ket.len() != n_qubits {
                return Err(Error::DimensionMismatch {
                    expected: n_qubits,
                    found: ket.len(),
                });
            }
            amps[ket_index(ket)?] += C64::new(coeff, 0.0);
        }
        StateVector::new(n_qubits, amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    /// Returns the state rescaled to unit norm. A zero vector is returned unchanged.
    pub fn normalized(&self) -> Self {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return self.clone();
        }
        self.scale(C64::new(1.0 / norm, 0.0))
    }

    pub fn scale(&self, factor: C64) -> Self {
        StateVector {
            n_qubits: self.n_qubits,
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn add(&self, other: &StateVector) -> Result<Self> {
        self.check_same_size(other)?;
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amps: self.amps.iter().zip(&other.amps).map(|(a, b)| a + b).collect(),
        })
    }

    /// `self ⊗ other`; qubits of `self` come first.
    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        let n_qubits = self.n_qubits + other.n_qubits;
        validate_register(n_qubits)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(StateVector { n_qubits, amps })
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        self.check_same_size(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|`, equal to one for the same normalized state up to a global phase.
    pub fn overlap_magnitude(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    /// Contracts the leading qubits with `bra`, giving `(⟨bra| ⊗ I)|self⟩`.
    pub fn project_leading(&self, bra: &StateVector) -> Result<StateVector> {
        if bra.n_qubits >= self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits - 1,
                found: bra.n_qubits,
            });
        }
        let rest = 1 << (self.n_qubits - bra.n_qubits);
        let amps = (0..rest)
            .map(|j| {
                bra.amps
                    .iter()
                    .enumerate()
                    .map(|(i, b)| b.conj() * self.amps[i * rest + j])
                    .sum()
            })
            .collect();
        StateVector::new(self.n_qubits - bra.n_qubits, amps)
    }

    /// Applies `op` to the listed qubits (identity elsewhere). The first
    /// listed qubit is the most significant index bit of `op`.
    pub fn apply(&self, op: &Operator, qubits: &[QubitIndex]) -> Result<Self> {
        check_operator(self.n_qubits, op, qubits)?;
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amps: apply_on_qubits(self.n_qubits, &self.amps, op, qubits),
        })
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        if self.amps.len() != other.amps.len() {
            return f64::INFINITY;
        }
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn check_same_size(&self, other: &StateVector) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.amps.len(),
                found: other.amps.len(),
            });
        }
        Ok(())
    }
}

fn ket_index(bits: &str) -> Result<usize> {
    if bits.is_empty() || !bits.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::InvalidParams(format!("`{bits}` is not a bit string")));
    }
    validate_register(bits.len())?;
    Ok(usize::from_str_radix(bits, 2).unwrap())
}

pub(crate) fn check_operator(n_qubits: usize, op: &Operator, qubits: &[QubitIndex]) -> Result<()> {
    validate_targets(n_qubits, qubits)?;
    if op.dim() != 1 << qubits.len() {
        return Err(Error::DimensionMismatch {
            expected: 1 << qubits.len(),
            found: op.dim(),
        });
    }
    Ok(())
}
