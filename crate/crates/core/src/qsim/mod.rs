//! Dense statevector simulation.
//!
//! States and gates are exact `f64` complex arrays. All unitarity and
//! normalization checks use [`TOLERANCE`].

mod matrix;
mod outcome;
mod state;

pub use matrix::GateMatrix;
pub use outcome::OutcomeDistribution;
pub use state::StateVector;

use crate::circuit::Circuit;
use crate::error::{Error, Result};

pub type Amplitude = num_complex::Complex64;

/// Absolute tolerance for unitarity, normalization and delta checks.
pub const TOLERANCE: f64 = 1e-9;

/// Largest circuit width accepted by [`circuit_unitary`].
pub const MAX_UNITARY_QUBITS: usize = 6;

pub fn new_basis_state(n_qubits: usize, bits: &str) -> Result<StateVector> {
    StateVector::basis(n_qubits, bits)
}

pub fn apply_gate(state: &StateVector, gate: &GateMatrix, targets: &[usize]) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply(gate, targets)?;
    Ok(out)
}

/// Runs every op of `circuit` left to right on a copy of `input`.
pub fn run_circuit(circuit: &Circuit, input: &StateVector) -> Result<StateVector> {
    CompiledCircuit::new(circuit)?.run(input)
}

/// A circuit with every op expanded to a checked dense matrix, for running
/// the same circuit many times.
#[derive(Debug, Clone)]
pub struct CompiledCircuit {
    n_qubits: usize,
    steps: Vec<(GateMatrix, Vec<usize>)>,
}

impl CompiledCircuit {
    pub fn new(circuit: &Circuit) -> Result<Self> {
        let n = circuit.n_qubits();
        let mut steps = Vec::with_capacity(circuit.len());
        for op in circuit.ops() {
            let (gate, wires) = op.matrix();
            if let Some(&q) = wires.iter().find(|&&q| q >= n) {
                return Err(Error::invalid(format!("qubit {q} out of range for {n} qubits")));
            }
            let err = gate.unitarity_error();
            if err > TOLERANCE {
                return Err(Error::invalid(format!("{op} is not unitary (deviation {err:e})")));
            }
            steps.push((gate, wires));
        }
        Ok(Self { n_qubits: n, steps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn run(&self, input: &StateVector) -> Result<StateVector> {
        if self.n_qubits != input.n_qubits() {
            return Err(Error::invalid(format!(
                "circuit has {} qubits, state has {}",
                self.n_qubits,
                input.n_qubits()
            )));
        }
        let mut state = input.clone();
        for (gate, wires) in &self.steps {
            state.apply_unchecked(gate, wires);
        }
        Ok(state)
    }
}

pub fn outcome_distribution(state: &StateVector, measured: &[usize]) -> Result<OutcomeDistribution> {
    OutcomeDistribution::of(state, measured)
}

/// Full unitary of `circuit`, built column by column from basis states.
pub fn circuit_unitary(circuit: &Circuit) -> Result<GateMatrix> {
    let n = circuit.n_qubits();
    if n > MAX_UNITARY_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "circuit_unitary supports at most {MAX_UNITARY_QUBITS} qubits, circuit has {n}"
        )));
    }
    let dim = 1usize << n;
    let compiled = CompiledCircuit::new(circuit)?;
    let columns = map_columns(dim, |col| {
        let basis = StateVector::basis_index(n, col)?;
        compiled.run(&basis).map(|s| s.amplitudes().to_vec())
    })?;
    let mut u = GateMatrix::identity(n);
    for (col, column) in columns.iter().enumerate() {
        u.set_column(col, column);
    }
    Ok(u)
}

#[cfg(feature = "parallel")]
fn map_columns<F>(dim: usize, f: F) -> Result<Vec<Vec<Amplitude>>>
where
    F: Fn(usize) -> Result<Vec<Amplitude>> + Sync + Send,
{
    use rayon::prelude::*;
    (0..dim).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_columns<F>(dim: usize, f: F) -> Result<Vec<Vec<Amplitude>>>
where
    F: Fn(usize) -> Result<Vec<Amplitude>>,
{
    (0..dim).map(f).collect()
}
