//! The robot's 5-qubit brain.
//!
//! Qubit layout:
//!
//! | qubit | role                                   |
//! |-------|----------------------------------------|
//! | `q0`  | ancilla, copy of sensor 1              |
//! | `q1`  | ancilla, copy of sensor 2              |
//! | `q2`  | sensor 1 in, wheel motor `M1` out      |
//! | `q3`  | sensor 2 in, wheel motor `M2` out      |
//! | `q4`  | flight motor `M3`                      |
//!
//! Sensors are written onto `q2, q3`, the circuit runs, and `(q2, q3, q4)`
//! is read in the Z basis. The ancillas are left entangled with the inputs;
//! for basis inputs this does not affect the readout.

use std::fmt;
use std::str::FromStr;

use crate::circuit::{lower, Circuit, CircuitOp, ControlSpec, GateKind};
use crate::error::{Error, Result};
use crate::qsim::{outcome_distribution, CompiledCircuit, StateVector, TOLERANCE};

pub const N_QUBITS: usize = 5;
pub const ANCILLA: [usize; 2] = [0, 1];
pub const SENSOR_QUBITS: [usize; 2] = [2, 3];
pub const FLIGHT_QUBIT: usize = 4;
/// Readout order: `M1, M2, M3`.
pub const MEASURED: [usize; 3] = [2, 3, 4];

/// Light on the two sensors; `true` means light is falling on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SensorInput {
    pub s1: bool,
    pub s2: bool,
}

impl SensorInput {
    pub const ALL: [SensorInput; 4] = [
        SensorInput::new(false, false),
        SensorInput::new(false, true),
        SensorInput::new(true, false),
        SensorInput::new(true, true),
    ];

    pub const fn new(s1: bool, s2: bool) -> Self {
        Self { s1, s2 }
    }

    /// The 5-qubit ket the circuit starts from, `|0 0 s1 s2 0⟩`.
    pub fn ket(self) -> String {
        format!("00{}{}0", bit(self.s1), bit(self.s2))
    }
}

impl FromStr for SensorInput {
    type Err = Error;

    /// Parses a two-character bitstring such as `"01"`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "00" => Ok(Self::new(false, false)),
            "01" => Ok(Self::new(false, true)),
            "10" => Ok(Self::new(true, false)),
            "11" => Ok(Self::new(true, true)),
            _ => Err(Error::invalid(format!("sensor input must be one of 00, 01, 10, 11; got {s:?}"))),
        }
    }
}

impl fmt::Display for SensorInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", bit(self.s1), bit(self.s2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MotorOutput {
    /// Left wheel motor.
    pub m1: bool,
    /// Right wheel motor.
    pub m2: bool,
    /// Propeller.
    pub m3: bool,
}

impl MotorOutput {
    pub const fn new(m1: bool, m2: bool, m3: bool) -> Self {
        Self { m1, m2, m3 }
    }

    fn from_bits(bits: &str) -> Option<Self> {
        let mut it = bits.chars().map(|c| c == '1');
        let out = Self::new(it.next()?, it.next()?, it.next()?);
        it.next().is_none().then_some(out)
    }

    /// The behaviour this command produces, if it is one of the four legal rows.
    pub fn behavior(self) -> Option<Behavior> {
        match (self.m1, self.m2, self.m3) {
            (true, true, false) => Some(Behavior::MoveForward),
            (false, true, false) => Some(Behavior::TurnLeft),
            (true, false, false) => Some(Behavior::TurnRight),
            (false, false, true) => Some(Behavior::TakeOff),
            _ => None,
        }
    }
}

impl fmt::Display for MotorOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", bit(self.m1), bit(self.m2), bit(self.m3))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Behavior {
    MoveForward,
    TurnLeft,
    TurnRight,
    TakeOff,
}

impl Behavior {
    pub fn label(self) -> &'static str {
        match self {
            Behavior::MoveForward => "Moves forward",
            Behavior::TurnLeft => "Takes a left turn",
            Behavior::TurnRight => "Takes a right turn",
            Behavior::TakeOff => "Takes off from the ground",
        }
    }
}

impl fmt::Display for Behavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn bit(b: bool) -> char {
    if b {
        '1'
    } else {
        '0'
    }
}

/// The robot circuit at IR level.
pub fn build_robot_circuit() -> Circuit {
    let anti = |q| ControlSpec::neg(q);
    let pos = |q| ControlSpec::pos(q);
    let ops = [
        Ok(CircuitOp::cx(2, 0)),
        Ok(CircuitOp::cx(3, 1)),
        CircuitOp::new(GateKind::CCXX, vec![pos(0), pos(1)], vec![2, 3]),
        CircuitOp::new(GateKind::CCXX, vec![anti(0), anti(1)], vec![2, 3]),
        CircuitOp::new(GateKind::CCX, vec![anti(2), anti(3)], vec![4]),
    ]
    .into_iter()
    .collect::<Result<Vec<_>>>()
    .expect("robot circuit ops are well formed");
    Circuit::from_ops(N_QUBITS, "quantum_robot", ops).expect("robot circuit fits 5 qubits")
}

/// Runs the robot circuit (optionally lowered) on a sensor input.
pub fn drive(input: SensorInput, lowered: bool) -> Result<MotorOutput> {
    let kind = if lowered { BrainKind::QuantumLowered } else { BrainKind::Quantum };
    Brain::new(kind)?.drive(input)
}

/// Direct table lookup for the four sensor inputs.
pub fn classical_drive(input: SensorInput) -> MotorOutput {
    match (input.s1, input.s2) {
        (false, false) => MotorOutput::new(true, true, false),
        (false, true) => MotorOutput::new(false, true, false),
        (true, false) => MotorOutput::new(true, false, false),
        (true, true) => MotorOutput::new(false, false, true),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BrainKind {
    Quantum,
    QuantumLowered,
    Classical,
}

impl BrainKind {
    pub const ALL: [BrainKind; 3] = [BrainKind::Quantum, BrainKind::QuantumLowered, BrainKind::Classical];

    pub fn name(self) -> &'static str {
        match self {
            BrainKind::Quantum => "quantum",
            BrainKind::QuantumLowered => "quantum-lowered",
            BrainKind::Classical => "classical",
        }
    }
}

impl FromStr for BrainKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quantum" => Ok(BrainKind::Quantum),
            "quantum-lowered" | "quantum_lowered" => Ok(BrainKind::QuantumLowered),
            "classical" => Ok(BrainKind::Classical),
            _ => Err(Error::invalid(format!("unknown brain kind {s:?}"))),
        }
    }
}

impl fmt::Display for BrainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A ready-to-use controller; the circuit is built and lowered once.
#[derive(Debug, Clone)]
pub struct Brain {
    kind: BrainKind,
    circuit: Option<(Circuit, CompiledCircuit)>,
}

impl Brain {
    pub fn new(kind: BrainKind) -> Result<Self> {
        let circuit = match kind {
            BrainKind::Quantum => Some(build_robot_circuit()),
            BrainKind::QuantumLowered => Some(lower(&build_robot_circuit())?),
            BrainKind::Classical => None,
        };
        let circuit = match circuit {
            Some(c) => {
                let compiled = CompiledCircuit::new(&c)?;
                Some((c, compiled))
            }
            None => None,
        };
        Ok(Self { kind, circuit })
    }

    pub fn kind(&self) -> BrainKind {
        self.kind
    }

    /// The circuit this brain runs; `None` for the classical lookup.
    pub fn circuit(&self) -> Option<&Circuit> {
        self.circuit.as_ref().map(|(c, _)| c)
    }

    /// Final 5-qubit state for a sensor input.
    pub fn evolve(&self, input: SensorInput) -> Result<StateVector> {
        let (_, compiled) = self
            .circuit
            .as_ref()
            .ok_or_else(|| Error::invalid("the classical brain has no quantum state"))?;
        compiled.run(&StateVector::basis(N_QUBITS, &input.ket())?)
    }

    /// Motor command for a sensor input.
    ///
    /// Quantum brains fail with [`Error::InternalConsistency`] when the
    /// readout is not a delta distribution.
    pub fn drive(&self, input: SensorInput) -> Result<MotorOutput> {
        if self.circuit.is_none() {
            return Ok(classical_drive(input));
        }
        let state = self.evolve(input)?;
        let dist = outcome_distribution(&state, &MEASURED)?;
        let bits = dist.delta(TOLERANCE).ok_or_else(|| {
            let (mode, p) = dist.mode();
            Error::InternalConsistency(format!(
                "{} brain is not deterministic on input {input}: most likely outcome {mode} has p = {p}",
                self.kind
            ))
        })?;
        MotorOutput::from_bits(bits)
            .ok_or_else(|| Error::InternalConsistency(format!("readout {bits:?} is not 3 bits")))
    }
}
