use std::fmt::Write;

use super::{Circuit, GateKind};
use crate::error::{Error, Result};

fn mnemonic(kind: GateKind) -> Option<&'static str> {
    Some(match kind {
        GateKind::X => "x",
        GateKind::H => "h",
        GateKind::S => "s",
        GateKind::Sdg => "sdg",
        GateKind::T => "t",
        GateKind::Tdg => "tdg",
        GateKind::CX => "cx",
        GateKind::CCX | GateKind::CCXX => return None,
    })
}

/// Serializes a lowered circuit as OpenQASM 2.0 using `qelib1.inc` names.
///
/// Registers are always `q` (all qubits) and `c` (one bit per measured
/// qubit); `measured[i]` is read into `c[i]`. The `creg` line is omitted when
/// nothing is measured.
pub fn export_qasm(circuit: &Circuit, measured: &[usize]) -> Result<String> {
    let n = circuit.n_qubits();
    for (i, &q) in measured.iter().enumerate() {
        if q >= n {
            return Err(Error::invalid(format!("measured qubit {q} out of range for {n} qubits")));
        }
        if measured[..i].contains(&q) {
            return Err(Error::invalid(format!("qubit {q} measured twice")));
        }
    }

    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    writeln!(out, "qreg q[{n}];").unwrap();
    if !measured.is_empty() {
        writeln!(out, "creg c[{}];", measured.len()).unwrap();
    }
    for op in circuit.ops() {
        let name = mnemonic(op.kind())
            .ok_or_else(|| Error::UnsupportedGate(format!("{op} has no qelib1 mnemonic; lower the circuit first")))?;
        if op.has_negative_controls() {
            return Err(Error::UnsupportedGate(format!("{op} has anticontrols; lower the circuit first")));
        }
        let args: Vec<String> = op.wires().iter().map(|q| format!("q[{q}]")).collect();
        writeln!(out, "{name} {};", args.join(",")).unwrap();
    }
    for (bit, q) in measured.iter().enumerate() {
        writeln!(out, "measure q[{q}] -> c[{bit}];").unwrap();
    }
    Ok(out)
}
