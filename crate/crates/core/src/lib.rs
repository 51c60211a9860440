//! Noisy quantum circuit simulation on the Pauli-basis density matrix.
//!
//! An n-qubit state is stored as its 4^n real Pauli coefficients. Gates act
//! through transfer matrices on one or two base-4 digits; measurements read
//! coefficients directly. The core is generic over [`Real`] (`f32` or `f64`);
//! the aliases below fix the scalar to `f64`.

pub mod app;
pub mod circuit_ir;
pub mod error;
pub mod exec;
pub mod gates;
pub mod kernels;
pub mod measurement;
pub mod memory_noise;
pub mod oracle;
pub mod pauli_state;
pub mod scalar;
pub mod transpiler;

pub use error::{Error, Result};
pub use pauli_state::{Capacity, Pauli, PauliState, PauliString};
pub use scalar::Real;

pub type State = PauliState<f64>;
pub type StateF32 = PauliState<f32>;
pub type Noise = circuit_ir::NoiseModel<f64>;
pub type Circuit = circuit_ir::Circuit<f64>;
