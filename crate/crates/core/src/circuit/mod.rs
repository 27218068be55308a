//! Gate-level circuits over {H, X, Z, CNOT} and the five-qubit cluster-state
//! preparation circuit.

pub mod qasm;

use crate::error::{Error, Result};
use crate::qcore::{gates, validate_register, Operator, QubitIndex, StateVector, MAX_QUBITS};

pub use qasm::{export_qasm, parse_qasm, QasmError, QasmErrorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    X,
    Z,
    Cnot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    H(QubitIndex),
    X(QubitIndex),
    Z(QubitIndex),
    Cnot {
        control: QubitIndex,
        target: QubitIndex,
    },
}

impl Gate {
    pub fn cnot(control: QubitIndex, target: QubitIndex) -> Result<Gate> {
        if control == target {
            return Err(Error::InvalidGate(format!(
                "CNOT control and target are both qubit {control}"
            )));
        }
        Ok(Gate::Cnot { control, target })
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::X(_) => GateKind::X,
            Gate::Z(_) => GateKind::Z,
            Gate::Cnot { .. } => GateKind::Cnot,
        }
    }

    /// Qubits the gate touches, control first for CNOT.
    pub fn qubits(&self) -> Vec<QubitIndex> {
        match *self {
            Gate::H(q) | Gate::X(q) | Gate::Z(q) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }

    pub fn matrix(&self) -> Operator {
        match self {
            Gate::H(_) => gates::hadamard(),
            Gate::X(_) => gates::pauli_x(),
            Gate::Z(_) => gates::pauli_z(),
            Gate::Cnot { .. } => gates::cnot(),
        }
    }
}

/// An ordered gate list on a fixed register.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        validate_register(n_qubits)?;
        Ok(Circuit {
            n_qubits,
            gates: Vec::new(),
        })
    }

    pub fn with_gates(n_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut circuit = Circuit::new(n_qubits)?;
        for gate in gates {
            circuit.push(gate)?;
        }
        Ok(circuit)
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        if let Gate::Cnot { control, target } = gate {
            Gate::cnot(control, target)?;
        }
        if let Some(q) = gate.qubits().into_iter().find(|q| q.get() > self.n_qubits) {
            return Err(Error::QubitOutOfRange {
                index: q.get(),
                n_qubits: self.n_qubits,
            });
        }
        self.gates.push(gate);
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

/// H(1), CNOT(1→2), H(2), CNOT(1→3), CNOT(2→4), CNOT(2→5).
pub fn build_cluster_circuit() -> Circuit {
    let q = |v| QubitIndex::from_const(v);
    let gates = [
        Gate::H(q(1)),
        Gate::Cnot { control: q(1), target: q(2) },
        Gate::H(q(2)),
        Gate::Cnot { control: q(1), target: q(3) },
        Gate::Cnot { control: q(2), target: q(4) },
        Gate::Cnot { control: q(2), target: q(5) },
    ];
    Circuit {
        n_qubits: MAX_QUBITS,
        gates: gates.to_vec(),
    }
}

/// Applies the gates of `circuit` to `initial`, left to right.
pub fn run_circuit(circuit: &Circuit, initial: &StateVector) -> Result<StateVector> {
    if circuit.n_qubits != initial.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: 1 << circuit.n_qubits,
            found: initial.len(),
        });
    }
    circuit
        .gates
        .iter()
        .try_fold(initial.clone(), |state, gate| {
            state.apply(&gate.matrix(), &gate.qubits())
        })
}

/// The normalized five-qubit cluster state
/// `(|00000⟩ + |01011⟩ + |10100⟩ − |11111⟩)/2`, prepared by running
/// [`build_cluster_circuit`] on `|00000⟩`.
pub fn cluster_state() -> StateVector {
    let zero = StateVector::basis(MAX_QUBITS, 0).expect("five-qubit register");
    run_circuit(&build_cluster_circuit(), &zero).expect("cluster circuit fits its register")
}
