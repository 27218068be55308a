//! Simulation of simultaneous remote state preparation over a five-qubit
//! cluster state.
//!
//! A sender holding two qubits of the cluster state
//! `(|00000⟩ + |01011⟩ + |10100⟩ − |11111⟩)/2` prepares the known state
//! `α|0⟩ + β|1⟩` at one receiver and `γ|00⟩ + δ|11⟩` at another, using one
//! two-qubit measurement and Pauli corrections. The crate covers:
//!
//! * [`qcore`]: dense states, density matrices, partial trace and fidelity;
//! * [`circuit`]: the preparation circuit for the cluster state and an
//!   OpenQASM 2.0 exporter/reader;
//! * [`protocol`]: the measurement basis, corrections and the noiseless run;
//! * [`noise`]: amplitude-damping, phase-flip and bit-flip noise on the
//!   transmitted qubits, with numeric and closed-form fidelities.
//!
//! ```
//! use cluster_rsp::noise::{closed_form_fidelity, fidelity_noisy, FidelityConvention, NoiseKind};
//! use cluster_rsp::protocol::{Outcome, ProtocolParams};
//!
//! let p = ProtocolParams::from_probabilities(0.3, 0.3)?;
//! let outcome = Outcome::new(2)?;
//! let numeric = fidelity_noisy(&p, NoiseKind::BitFlip, 0.5, outcome, FidelityConvention::PaperUnnormalized)?;
//! let closed = closed_form_fidelity(NoiseKind::BitFlip, &p, 0.5)?;
//! assert!((numeric - closed).abs() < 1e-10);
//! # Ok::<(), cluster_rsp::Error>(())
//! ```
//!
//! The guide under `book/` walks through each piece; its code blocks are
//! compiled and run as doctests of this crate.

pub mod circuit;
mod error;
pub mod noise;
pub mod protocol;
pub mod qcore;

pub use error::{Error, Result};

// Chapters of the guide, so `cargo test --doc` runs their snippets.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/cluster-circuit.md")]
    mod cluster_circuit {}
    #[doc = include_str!("../../../book/src/protocol.md")]
    mod protocol {}
    #[doc = include_str!("../../../book/src/noise.md")]
    mod noise {}
    #[doc = include_str!("../../../book/src/conventions.md")]
    mod conventions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
