use nalgebra::DMatrix;

use super::state::check_operator;
use super::{
    apply_on_qubits, validate_register, validate_targets, Operator, QubitIndex, StateVector, C64,
};
use crate::error::{Error, Result};

/// Density matrix of a register of one to five qubits.
///
/// Unit trace is deliberately not enforced: the unnormalized pipeline in
/// [`crate::noise`] carries a trace other than one on purpose.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    entries: Operator,
}

impl DensityMatrix {
    pub fn new(n_qubits: usize, entries: Operator) -> Result<Self> {
        validate_register(n_qubits)?;
        if entries.dim() != 1 << n_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << n_qubits,
                found: entries.dim(),
            });
        }
        Ok(DensityMatrix { n_qubits, entries })
    }

    pub fn zeros(n_qubits: usize) -> Result<Self> {
        validate_register(n_qubits)?;
        Ok(DensityMatrix {
            n_qubits,
            entries: Operator::zeros(1 << n_qubits),
        })
    }

    /// `weight · |ψ⟩⟨ψ|`.
    pub fn from_state(psi: &StateVector, weight: f64) -> Result<Self> {
        if weight.is_nan() || weight < 0.0 {
            return Err(Error::NegativeWeight(weight));
        }
        let entries = Operator::outer(psi.amps(), psi.amps())?.scale(C64::new(weight, 0.0));
        Ok(DensityMatrix {
            n_qubits: psi.n_qubits(),
            entries,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub fn entries(&self) -> &Operator {
        &self.entries
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }

    pub fn scale(&self, factor: f64) -> Self {
        DensityMatrix {
            n_qubits: self.n_qubits,
            entries: self.entries.scale(C64::new(factor, 0.0)),
        }
    }

    pub fn add(&self, other: &DensityMatrix) -> Result<Self> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(DensityMatrix {
            n_qubits: self.n_qubits,
            entries: &self.entries + &other.entries,
        })
    }

    /// Left multiplication `op · ρ` with `op` embedded on `qubits`.
    ///
    /// This is one half of a channel step; use [`DensityMatrix::conjugate`]
    /// for `op · ρ · op†`.
    pub fn apply_left(&self, op: &Operator, qubits: &[QubitIndex]) -> Result<Self> {
        check_operator(self.n_qubits, op, qubits)?;
        Ok(DensityMatrix {
            n_qubits: self.n_qubits,
            entries: left_multiply(self.n_qubits, &self.entries, op, qubits),
        })
    }

    /// `op · ρ · op†` with `op` embedded on `qubits`.
    pub fn conjugate(&self, op: &Operator, qubits: &[QubitIndex]) -> Result<Self> {
        check_operator(self.n_qubits, op, qubits)?;
        let left = left_multiply(self.n_qubits, &self.entries, op, qubits);
        // (op · (op·ρ)†)† = op·ρ·op†
        let both = left_multiply(self.n_qubits, &left.adjoint(), op, qubits).adjoint();
        Ok(DensityMatrix {
            n_qubits: self.n_qubits,
            entries: both,
        })
    }

    /// Traces out the listed qubits. Remaining qubits keep their relative order.
    pub fn partial_trace(&self, traced_out: &[QubitIndex]) -> Result<Self> {
        if traced_out.is_empty() {
            return Err(Error::NothingToTrace);
        }
        validate_targets(self.n_qubits, traced_out)?;
        if traced_out.len() == self.n_qubits {
            return Err(Error::TraceOutAll);
        }
        let n = self.n_qubits;
        let kept: Vec<usize> = (1..=n)
            .filter(|q| !traced_out.iter().any(|t| t.get() == *q))
            .collect();
        let split = |i: usize| -> (usize, usize) {
            let mut k = 0;
            let mut t = 0;
            for q in 1..=n {
                let bit = (i >> (n - q)) & 1;
                if kept.contains(&q) {
                    k = (k << 1) | bit;
                } else {
                    t = (t << 1) | bit;
                }
            }
            (k, t)
        };
        let parts: Vec<(usize, usize)> = (0..self.dim()).map(split).collect();
        let mut out = Operator::zeros(1 << kept.len());
        for (i, &(ki, ti)) in parts.iter().enumerate() {
            for (j, &(kj, tj)) in parts.iter().enumerate() {
                if ti == tj {
                    *out.get_mut(ki, kj) += self.entries.get(i, j);
                }
            }
        }
        DensityMatrix::new(kept.len(), out)
    }

    pub fn hermiticity_error(&self) -> f64 {
        self.entries.hermiticity_error()
    }

    /// Smallest eigenvalue of the Hermitian part of the matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        let d = self.dim();
        let m = DMatrix::from_row_slice(d, d, self.entries.data());
        let herm = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        herm.symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.entries.max_abs_diff(&other.entries)
    }
}

fn left_multiply(n_qubits: usize, rho: &Operator, op: &Operator, qubits: &[QubitIndex]) -> Operator {
    let d = rho.dim();
    let mut out = Operator::zeros(d);
    let mut column = vec![C64::new(0.0, 0.0); d];
    for c in 0..d {
        for (r, slot) in column.iter_mut().enumerate() {
            *slot = rho.get(r, c);
        }
        for (r, v) in apply_on_qubits(n_qubits, &column, op, qubits)
            .into_iter()
            .enumerate()
        {
            *out.get_mut(r, c) = v;
        }
    }
    out
}
