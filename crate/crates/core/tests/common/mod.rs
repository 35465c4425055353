#![allow(dead_code)]

use qrobot_core::circuit::{Circuit, CircuitOp, ControlSpec, GateKind};
use qrobot_core::qsim::GateMatrix;
use rand::seq::SliceRandom;
use rand::Rng;

/// Permutation matrix of a classical reversible map on `n`-bit ket indices
/// (q0 is the most significant bit). Built without touching the simulator.
pub fn classical_unitary(n: usize, f: impl Fn(usize) -> usize) -> GateMatrix {
    GateMatrix::permutation(n, f).expect("oracle map is a bijection")
}

pub fn get_bit(index: usize, n: usize, q: usize) -> usize {
    (index >> (n - 1 - q)) & 1
}

pub fn flip_bit(index: usize, n: usize, q: usize) -> usize {
    index ^ (1 << (n - 1 - q))
}

fn control(rng: &mut impl Rng, q: usize) -> ControlSpec {
    if rng.gen_bool(0.5) {
        ControlSpec::pos(q)
    } else {
        ControlSpec::neg(q)
    }
}

/// Random op of any supported kind on `n` qubits, or `None` if the kind
/// needs more wires than the circuit has.
pub fn random_op(rng: &mut impl Rng, n: usize) -> Option<CircuitOp> {
    let kind = *GateKind::ALL.choose(rng).unwrap();
    let (nc, nt) = kind.arity();
    if nc + nt > n {
        return None;
    }
    let mut wires: Vec<usize> = (0..n).collect();
    wires.shuffle(rng);
    let controls = wires[..nc].iter().map(|&q| control(rng, q)).collect();
    let targets = wires[nc..nc + nt].to_vec();
    Some(CircuitOp::new(kind, controls, targets).expect("random op is well formed"))
}

/// Random circuit on 1..=max_qubits qubits with 0..=max_ops ops.
pub fn random_circuit(rng: &mut impl Rng, max_qubits: usize, max_ops: usize) -> Circuit {
    let n = rng.gen_range(1..=max_qubits);
    let len = rng.gen_range(0..=max_ops);
    let mut c = Circuit::new(n, "random");
    while c.len() < len {
        if let Some(op) = random_op(rng, n) {
            c.push(op).unwrap();
        }
    }
    c
}
