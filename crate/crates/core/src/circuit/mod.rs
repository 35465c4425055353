//! Gate IR with control polarities, synthesis passes and QASM export.
//!
//! The IR knows nine gate kinds. Single-qubit kinds carry no controls; the
//! X-type kinds `CX`, `CCX` and `CCXX` carry one or two controls, each of
//! which can fire on `|1⟩` ([`Polarity::Positive`]) or on `|0⟩`
//! ([`Polarity::Negative`]).
//!
//! [`lower`] rewrites any circuit onto `{X, H, S, Sdg, T, Tdg, CX}` with
//! positive controls only; [`export_qasm`] serializes such a circuit.

mod qasm;
mod synth;

use std::fmt;

pub use qasm::export_qasm;
pub use synth::{cancel_x_pairs, ccx_decompose, ccxx_decompose, lower, polarity_lower};

use crate::error::{Error, Result};
use crate::qsim::GateMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    X,
    H,
    S,
    Sdg,
    T,
    Tdg,
    CX,
    CCX,
    /// Two controls, two targets: both targets flip when the controls fire.
    CCXX,
}

impl GateKind {
    pub const ALL: [GateKind; 9] = [
        GateKind::X,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::CX,
        GateKind::CCX,
        GateKind::CCXX,
    ];

    /// `(controls, targets)` required by this kind.
    pub fn arity(self) -> (usize, usize) {
        match self {
            GateKind::CX => (1, 1),
            GateKind::CCX => (2, 1),
            GateKind::CCXX => (2, 2),
            _ => (0, 1),
        }
    }

    /// Whether the kind belongs to the lowered basis.
    pub fn is_basis(self) -> bool {
        !matches!(self, GateKind::CCX | GateKind::CCXX)
    }

    fn single_qubit_matrix(self) -> Option<GateMatrix> {
        Some(match self {
            GateKind::X => GateMatrix::x(),
            GateKind::H => GateMatrix::h(),
            GateKind::S => GateMatrix::s(),
            GateKind::Sdg => GateMatrix::sdg(),
            GateKind::T => GateMatrix::t(),
            GateKind::Tdg => GateMatrix::tdg(),
            _ => return None,
        })
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// Fires on `|1⟩`.
    Positive,
    /// Fires on `|0⟩` (an anticontrol).
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ControlSpec {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl ControlSpec {
    pub fn pos(qubit: usize) -> Self {
        Self { qubit, polarity: Polarity::Positive }
    }

    pub fn neg(qubit: usize) -> Self {
        Self { qubit, polarity: Polarity::Negative }
    }

    fn fires_on(self, bit: usize) -> bool {
        match self.polarity {
            Polarity::Positive => bit == 1,
            Polarity::Negative => bit == 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircuitOp {
    kind: GateKind,
    controls: Vec<ControlSpec>,
    targets: Vec<usize>,
}

impl CircuitOp {
    pub fn new(kind: GateKind, controls: Vec<ControlSpec>, targets: Vec<usize>) -> Result<Self> {
        let (nc, nt) = kind.arity();
        if controls.len() != nc || targets.len() != nt {
            return Err(Error::invalid(format!(
                "{kind} needs {nc} controls and {nt} targets, got {} and {}",
                controls.len(),
                targets.len()
            )));
        }
        let wires: Vec<usize> = controls.iter().map(|c| c.qubit).chain(targets.iter().copied()).collect();
        for (i, q) in wires.iter().enumerate() {
            if wires[..i].contains(q) {
                return Err(Error::invalid(format!("{kind} uses qubit {q} twice")));
            }
        }
        Ok(Self { kind, controls, targets })
    }

    fn single(kind: GateKind, q: usize) -> Self {
        Self { kind, controls: Vec::new(), targets: vec![q] }
    }

    pub fn x(q: usize) -> Self {
        Self::single(GateKind::X, q)
    }
    pub fn h(q: usize) -> Self {
        Self::single(GateKind::H, q)
    }
    pub fn s(q: usize) -> Self {
        Self::single(GateKind::S, q)
    }
    pub fn sdg(q: usize) -> Self {
        Self::single(GateKind::Sdg, q)
    }
    pub fn t(q: usize) -> Self {
        Self::single(GateKind::T, q)
    }
    pub fn tdg(q: usize) -> Self {
        Self::single(GateKind::Tdg, q)
    }

    /// Positive-control CNOT. Panics if `control == target`.
    pub fn cx(control: usize, target: usize) -> Self {
        Self::new(GateKind::CX, vec![ControlSpec::pos(control)], vec![target]).expect("distinct cx wires")
    }

    /// Positive-control Toffoli. Panics on repeated wires.
    pub fn ccx(a: usize, b: usize, target: usize) -> Self {
        Self::new(GateKind::CCX, vec![ControlSpec::pos(a), ControlSpec::pos(b)], vec![target])
            .expect("distinct ccx wires")
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn controls(&self) -> &[ControlSpec] {
        &self.controls
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// Controls followed by targets.
    pub fn wires(&self) -> Vec<usize> {
        self.controls.iter().map(|c| c.qubit).chain(self.targets.iter().copied()).collect()
    }

    pub fn touches(&self, qubit: usize) -> bool {
        self.targets.contains(&qubit) || self.controls.iter().any(|c| c.qubit == qubit)
    }

    pub fn has_negative_controls(&self) -> bool {
        self.controls.iter().any(|c| c.polarity == Polarity::Negative)
    }

    pub(crate) fn with_controls(&self, controls: Vec<ControlSpec>) -> Self {
        Self { kind: self.kind, controls, targets: self.targets.clone() }
    }

    /// Dense matrix of the op over [`CircuitOp::wires`], controls expanded.
    pub fn matrix(&self) -> (GateMatrix, Vec<usize>) {
        let wires = self.wires();
        if let Some(m) = self.kind.single_qubit_matrix() {
            return (m, wires);
        }
        let nc = self.controls.len();
        let nt = self.targets.len();
        let k = nc + nt;
        let target_mask = (1usize << nt) - 1;
        let perm = |local: usize| {
            let fires = self
                .controls
                .iter()
                .enumerate()
                .all(|(j, c)| c.fires_on((local >> (k - 1 - j)) & 1));
            if fires {
                local ^ target_mask
            } else {
                local
            }
        };
        let m = GateMatrix::permutation(k, perm).expect("controlled X is a permutation");
        (m, wires)
    }
}

impl fmt::Display for CircuitOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self
            .controls
            .iter()
            .map(|c| match c.polarity {
                Polarity::Positive => format!("q{}", c.qubit),
                Polarity::Negative => format!("!q{}", c.qubit),
            })
            .collect();
        let ts: Vec<String> = self.targets.iter().map(|t| format!("q{t}")).collect();
        if cs.is_empty() {
            write!(f, "{}({})", self.kind, ts.join(","))
        } else {
            write!(f, "{}({} -> {})", self.kind, cs.join(","), ts.join(","))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<CircuitOp>,
    name: String,
}

impl Circuit {
    pub fn new(n_qubits: usize, name: impl Into<String>) -> Self {
        Self { n_qubits, ops: Vec::new(), name: name.into() }
    }

    pub fn from_ops(n_qubits: usize, name: impl Into<String>, ops: Vec<CircuitOp>) -> Result<Self> {
        let mut c = Self::new(n_qubits, name);
        for op in ops {
            c.push(op)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, op: CircuitOp) -> Result<()> {
        if let Some(q) = op.wires().into_iter().find(|&q| q >= self.n_qubits) {
            return Err(Error::invalid(format!("{op} references qubit {q} in a {}-qubit circuit", self.n_qubits)));
        }
        self.ops.push(op);
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[CircuitOp] {
        &self.ops
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// True when every op is in the lowered basis with positive controls.
    pub fn is_lowered(&self) -> bool {
        self.ops.iter().all(|op| op.kind.is_basis() && !op.has_negative_controls())
    }

    pub(crate) fn with_ops(&self, ops: Vec<CircuitOp>) -> Self {
        Self { n_qubits: self.n_qubits, ops, name: self.name.clone() }
    }
}
