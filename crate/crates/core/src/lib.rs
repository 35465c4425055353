//! Quantum-controlled Braitenberg vehicle.
//!
//! The crate is split into four layers:
//!
//! * [`qsim`]: a dense statevector simulator with marginal outcome
//!   distributions and full-unitary extraction.
//! * [`circuit`]: a small gate IR with control polarities, the synthesis
//!   passes that lower it onto `{x, h, s, sdg, t, tdg, cx}`, and an
//!   OpenQASM 2.0 emitter.
//! * [`brain`]: the 5-qubit robot circuit that maps two light sensors onto
//!   three motors, plus the classical lookup it must agree with.
//! * [`game`]: a seeded four-lane road where the brain steers the robot away
//!   from obstacles; [`sweep`] runs many episodes, in parallel when the
//!   `parallel` feature is enabled.
//!
//! # Bit order
//!
//! A ket string such as `"00110"` lists qubits `q0 q1 q2 q3 q4` left to
//! right, and `q0` is the most significant bit of the basis index. So
//! `|00110⟩` is index `0b00110 = 6`. Every module uses this convention.

pub mod brain;
pub mod circuit;
pub mod error;
pub mod game;
pub mod qsim;
pub mod sweep;

pub use brain::{Behavior, Brain, BrainKind, MotorOutput, SensorInput};
pub use circuit::{Circuit, CircuitOp, ControlSpec, GateKind, Polarity};
pub use error::{Error, Result};
pub use game::{EpisodeResult, GameConfig, GameState, Status};
pub use qsim::{Amplitude, GateMatrix, OutcomeDistribution, StateVector};
