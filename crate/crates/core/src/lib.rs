//! Architecture-aware synthesis of Clifford tableaus.
//!
//! Given a Clifford tableau (or a circuit over {H, S, CX}) and a device
//! coupling graph, [`synthesis::synthesize`] produces an equivalent circuit
//! whose CX gates all act on graph edges. Pivot qubits are eliminated one at a
//! time; the CX cascades that clear a pivot's rows follow approximate Steiner
//! trees in the part of the device that is still in play.

pub mod architecture;
pub mod bench;
pub mod bitmatrix;
pub mod circuit;
mod error;
pub mod pauli;
pub mod synthesis;
pub mod tableau;
pub mod verify;

pub use architecture::{CouplingGraph, SteinerTree};
pub use bitmatrix::{BitMatrix, BitVector};
pub use circuit::{Circuit, Gate, GateCounts};
pub use error::{Error, Result};

pub use synthesis::{synthesize, PivotRule, Placement, SynthesisConfig, SynthesisResult};
pub use tableau::CliffordTableau;
