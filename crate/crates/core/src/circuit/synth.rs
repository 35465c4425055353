//! Lowering passes.
//!
//! [`lower`] always runs in this order:
//!
//! 1. split every `CCXX` into two `CCX` sharing its controls;
//! 2. conjugate each anticontrol with `X` on the control wire;
//! 3. cancel `X` pairs on the same wire with nothing touching it in between;
//! 4. expand each `CCX` into the 15-gate Clifford+T network.
//!
//! Every pass preserves the circuit unitary exactly.

use super::{Circuit, CircuitOp, ControlSpec, GateKind, Polarity};
use crate::error::{Error, Result};

/// Splits a two-target Toffoli into one Toffoli per target.
pub fn ccxx_decompose(op: &CircuitOp) -> Result<Vec<CircuitOp>> {
    if op.kind() != GateKind::CCXX {
        return Err(Error::invalid(format!("ccxx_decompose expects CCXX, got {op}")));
    }
    op.targets()
        .iter()
        .map(|&t| CircuitOp::new(GateKind::CCX, op.controls().to_vec(), vec![t]))
        .collect()
}

/// Rewrites anticontrols as `X · op · X` on each negative control wire.
///
/// Ops without negative controls (including uncontrolled ones) come back
/// unchanged.
pub fn polarity_lower(op: &CircuitOp) -> Vec<CircuitOp> {
    let negated: Vec<usize> = op
        .controls()
        .iter()
        .filter(|c| c.polarity == Polarity::Negative)
        .map(|c| c.qubit)
        .collect();
    if negated.is_empty() {
        return vec![op.clone()];
    }
    let positive = op.with_controls(op.controls().iter().map(|c| ControlSpec::pos(c.qubit)).collect());
    let mut out = Vec::with_capacity(2 * negated.len() + 1);
    out.extend(negated.iter().map(|&q| CircuitOp::x(q)));
    out.push(positive);
    out.extend(negated.iter().map(|&q| CircuitOp::x(q)));
    out
}

/// Clifford+T expansion of a positive-control Toffoli.
///
/// The result equals the Toffoli matrix exactly, with no global phase.
pub fn ccx_decompose(op: &CircuitOp) -> Result<Vec<CircuitOp>> {
    if op.kind() != GateKind::CCX {
        return Err(Error::invalid(format!("ccx_decompose expects CCX, got {op}")));
    }
    if op.has_negative_controls() {
        return Err(Error::invalid(format!("ccx_decompose needs positive controls, got {op}")));
    }
    let (a, b) = (op.controls()[0].qubit, op.controls()[1].qubit);
    let c = op.targets()[0];
    Ok(vec![
        CircuitOp::h(c),
        CircuitOp::cx(b, c),
        CircuitOp::tdg(c),
        CircuitOp::cx(a, c),
        CircuitOp::t(c),
        CircuitOp::cx(b, c),
        CircuitOp::tdg(c),
        CircuitOp::cx(a, c),
        CircuitOp::t(b),
        CircuitOp::t(c),
        CircuitOp::h(c),
        CircuitOp::cx(a, b),
        CircuitOp::t(a),
        CircuitOp::tdg(b),
        CircuitOp::cx(a, b),
    ])
}

/// Removes uncontrolled `X` pairs on a wire when no op between them touches
/// that wire. Single left-to-right pass; the result is a fixpoint.
pub fn cancel_x_pairs(ops: &[CircuitOp]) -> Vec<CircuitOp> {
    let mut out: Vec<CircuitOp> = Vec::with_capacity(ops.len());
    for op in ops {
        if op.kind() == GateKind::X {
            let q = op.targets()[0];
            if let Some(i) = out.iter().rposition(|prev| prev.touches(q)) {
                if out[i].kind() == GateKind::X {
                    out.remove(i);
                    continue;
                }
            }
        }
        out.push(op.clone());
    }
    out
}

/// Lowers `circuit` onto `{X, H, S, Sdg, T, Tdg, CX}` with positive controls.
pub fn lower(circuit: &Circuit) -> Result<Circuit> {
    let mut split = Vec::with_capacity(circuit.len());
    for op in circuit.ops() {
        if op.kind() == GateKind::CCXX {
            split.extend(ccxx_decompose(op)?);
        } else {
            split.push(op.clone());
        }
    }

    let positive: Vec<CircuitOp> = split.iter().flat_map(polarity_lower).collect();
    let cleaned = cancel_x_pairs(&positive);

    let mut lowered = Vec::with_capacity(cleaned.len() * 4);
    for op in cleaned {
        match op.kind() {
            GateKind::CCX => lowered.extend(ccx_decompose(&op)?),
            GateKind::CCXX => return Err(Error::UnsupportedGate(format!("{op} survived CCXX splitting"))),
            _ => lowered.push(op),
        }
    }
    Ok(circuit.with_ops(lowered))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::{circuit_unitary, run_circuit, StateVector};

    fn ccxx(a: ControlSpec, b: ControlSpec, t1: usize, t2: usize) -> CircuitOp {
        CircuitOp::new(GateKind::CCXX, vec![a, b], vec![t1, t2]).unwrap()
    }

    #[test]
    fn ccxx_splits_per_target() {
        let op = ccxx(ControlSpec::pos(0), ControlSpec::pos(1), 2, 3);
        let parts = ccxx_decompose(&op).unwrap();
        assert_eq!(parts, vec![CircuitOp::ccx(0, 1, 2), CircuitOp::ccx(0, 1, 3)]);
    }

    #[test]
    fn ccxx_split_keeps_polarity() {
        let op = ccxx(ControlSpec::neg(0), ControlSpec::neg(1), 2, 3);
        for part in ccxx_decompose(&op).unwrap() {
            assert_eq!(part.controls(), op.controls());
        }
    }

    #[test]
    fn ccxx_split_rejects_other_kinds() {
        assert!(matches!(ccxx_decompose(&CircuitOp::ccx(0, 1, 2)), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn split_pair_flips_both_targets() {
        let c = Circuit::from_ops(4, "pair", ccxx_decompose(&ccxx(ControlSpec::pos(0), ControlSpec::pos(1), 2, 3)).unwrap()).unwrap();
        let out = run_circuit(&c, &StateVector::basis(4, "1111").unwrap()).unwrap();
        assert_eq!(out.basis_ket().as_deref(), Some("1100"));
    }

    #[test]
    fn polarity_lower_conjugates_negative_controls() {
        let op = CircuitOp::new(GateKind::CCX, vec![ControlSpec::neg(2), ControlSpec::neg(3)], vec![4]).unwrap();
        assert_eq!(
            polarity_lower(&op),
            vec![
                CircuitOp::x(2),
                CircuitOp::x(3),
                CircuitOp::ccx(2, 3, 4),
                CircuitOp::x(2),
                CircuitOp::x(3)
            ]
        );
    }

    #[test]
    fn polarity_lower_mixed() {
        let op = CircuitOp::new(GateKind::CCX, vec![ControlSpec::pos(0), ControlSpec::neg(1)], vec![2]).unwrap();
        assert_eq!(polarity_lower(&op), vec![CircuitOp::x(1), CircuitOp::ccx(0, 1, 2), CircuitOp::x(1)]);
    }

    #[test]
    fn polarity_lower_positive_is_identity() {
        let op = CircuitOp::ccx(0, 1, 2);
        assert_eq!(polarity_lower(&op), vec![op.clone()]);
        assert_eq!(polarity_lower(&CircuitOp::h(0)), vec![CircuitOp::h(0)]);
    }

    #[test]
    fn anticontrolled_ccxx_fires_on_zero_controls() {
        let op = ccxx(ControlSpec::neg(0), ControlSpec::neg(1), 2, 3);
        let ops: Vec<CircuitOp> = ccxx_decompose(&op).unwrap().iter().flat_map(polarity_lower).collect();
        let c = Circuit::from_ops(5, "anti", ops).unwrap();
        let out = run_circuit(&c, &StateVector::basis(5, "00000").unwrap()).unwrap();
        assert_eq!(out.basis_ket().as_deref(), Some("00110"));
    }

    #[test]
    fn ccx_network_shape() {
        let net = ccx_decompose(&CircuitOp::ccx(0, 1, 2)).unwrap();
        assert_eq!(net.len(), 15);
        assert!(net.iter().all(|op| op.kind().is_basis() && op.kind() != GateKind::X));
        let hs = net.iter().filter(|op| op.kind() == GateKind::H).count();
        let cxs = net.iter().filter(|op| op.kind() == GateKind::CX).count();
        assert_eq!((hs, cxs), (2, 6));
    }

    #[test]
    fn ccx_network_on_basis_states() {
        let c = Circuit::from_ops(3, "tof", ccx_decompose(&CircuitOp::ccx(0, 1, 2)).unwrap()).unwrap();
        let fired = run_circuit(&c, &StateVector::basis(3, "110").unwrap()).unwrap();
        assert_eq!(fired.basis_ket().as_deref(), Some("111"));
        let idle = run_circuit(&c, &StateVector::basis(3, "100").unwrap()).unwrap();
        assert_eq!(idle.basis_ket().as_deref(), Some("100"));
    }

    #[test]
    fn ccx_decompose_requires_positive_controls() {
        let op = CircuitOp::new(GateKind::CCX, vec![ControlSpec::pos(0), ControlSpec::neg(1)], vec![2]).unwrap();
        assert!(ccx_decompose(&op).is_err());
        assert!(ccx_decompose(&CircuitOp::cx(0, 1)).is_err());
    }

    #[test]
    fn cancel_x_pairs_skips_unrelated_ops() {
        let ops = vec![CircuitOp::x(0), CircuitOp::x(1), CircuitOp::h(2), CircuitOp::x(0), CircuitOp::x(1)];
        assert_eq!(cancel_x_pairs(&ops), vec![CircuitOp::h(2)]);
    }

    #[test]
    fn cancel_x_pairs_respects_blockers() {
        let ops = vec![CircuitOp::x(0), CircuitOp::cx(0, 1), CircuitOp::x(0)];
        assert_eq!(cancel_x_pairs(&ops), ops);
        let triple = vec![CircuitOp::x(3), CircuitOp::x(3), CircuitOp::x(3)];
        assert_eq!(cancel_x_pairs(&triple), vec![CircuitOp::x(3)]);
    }

    #[test]
    fn lower_is_fixpoint_on_basis_circuits() {
        let c = Circuit::from_ops(2, "b", vec![CircuitOp::h(0), CircuitOp::cx(0, 1), CircuitOp::t(1), CircuitOp::x(0)]).unwrap();
        assert_eq!(lower(&c).unwrap(), c);
    }

    #[test]
    fn lower_preserves_unitary_of_anti_cx() {
        let op = CircuitOp::new(GateKind::CX, vec![ControlSpec::neg(1)], vec![0]).unwrap();
        let c = Circuit::from_ops(2, "acx", vec![op]).unwrap();
        let l = lower(&c).unwrap();
        assert!(l.is_lowered());
        let diff = circuit_unitary(&c).unwrap().max_abs_diff(&circuit_unitary(&l).unwrap());
        assert!(diff < 1e-12);
    }
}
