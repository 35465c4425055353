use std::collections::BTreeMap;

use super::state::index_to_bits;
use super::{StateVector, TOLERANCE};
use crate::error::{Error, Result};

/// Exact marginal Born-rule distribution over an ordered set of qubits.
///
/// Keys are bitstrings whose `i`-th character is the outcome of
/// `measured[i]`. Every one of the `2^m` bitstrings is present, including
/// those with probability zero.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    measured: Vec<usize>,
    probs: BTreeMap<String, f64>,
}

impl OutcomeDistribution {
    pub fn of(state: &StateVector, measured: &[usize]) -> Result<Self> {
        let n = state.n_qubits();
        if measured.is_empty() {
            return Err(Error::invalid("no qubits to measure"));
        }
        for (i, &q) in measured.iter().enumerate() {
            if q >= n {
                return Err(Error::invalid(format!("measured qubit {q} out of range for {n} qubits")));
            }
            if measured[..i].contains(&q) {
                return Err(Error::invalid(format!("qubit {q} measured twice")));
            }
        }
        let m = measured.len();
        let mut mass = vec![0.0f64; 1 << m];
        for (index, amp) in state.amplitudes().iter().enumerate() {
            let p = amp.norm_sqr();
            if p == 0.0 {
                continue;
            }
            let outcome = measured
                .iter()
                .fold(0usize, |acc, &q| (acc << 1) | ((index >> state.shift(q)) & 1));
            mass[outcome] += p;
        }
        let probs = mass.into_iter().enumerate().map(|(o, p)| (index_to_bits(o, m), p)).collect();
        Ok(Self { measured: measured.to_vec(), probs })
    }

    pub fn measured(&self) -> &[usize] {
        &self.measured
    }

    pub fn probabilities(&self) -> &BTreeMap<String, f64> {
        &self.probs
    }

    /// Probability of `bits`; zero for unknown keys.
    pub fn get(&self, bits: &str) -> f64 {
        self.probs.get(bits).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }

    /// The most likely outcome and its probability (first in bitstring order on ties).
    pub fn mode(&self) -> (&str, f64) {
        let mut best: Option<(&str, f64)> = None;
        for (k, &p) in &self.probs {
            if best.is_none_or(|(_, bp)| p > bp) {
                best = Some((k.as_str(), p));
            }
        }
        best.expect("distribution is never empty")
    }

    /// The single outcome carrying probability `>= 1 - tol`, if any.
    pub fn delta(&self, tol: f64) -> Option<&str> {
        let (k, p) = self.mode();
        (p >= 1.0 - tol).then_some(k)
    }

    pub fn is_delta(&self) -> bool {
        self.delta(TOLERANCE).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::GateMatrix;

    #[test]
    fn basis_state_measures_deterministically() {
        let s = StateVector::basis(5, "00110").unwrap();
        let d = OutcomeDistribution::of(&s, &[2, 3, 4]).unwrap();
        assert_eq!(d.get("110"), 1.0);
        assert_eq!(d.delta(1e-9), Some("110"));
        assert_eq!(d.probabilities().len(), 8);

        let s = StateVector::basis(5, "11001").unwrap();
        let d = OutcomeDistribution::of(&s, &[2, 3, 4]).unwrap();
        assert_eq!(d.delta(1e-9), Some("001"));
    }

    #[test]
    fn uniform_superposition() {
        let mut s = StateVector::basis(1, "0").unwrap();
        s.apply(&GateMatrix::h(), &[0]).unwrap();
        let d = OutcomeDistribution::of(&s, &[0]).unwrap();
        assert!((d.get("0") - 0.5).abs() < 1e-12);
        assert!((d.get("1") - 0.5).abs() < 1e-12);
        assert!(!d.is_delta());
    }

    #[test]
    fn order_follows_measured_list() {
        let s = StateVector::basis(3, "100").unwrap();
        let d = OutcomeDistribution::of(&s, &[2, 0]).unwrap();
        assert_eq!(d.delta(1e-9), Some("01"));
    }

    #[test]
    fn rejects_bad_indices() {
        let s = StateVector::basis(2, "00").unwrap();
        assert!(OutcomeDistribution::of(&s, &[2]).is_err());
        assert!(OutcomeDistribution::of(&s, &[0, 0]).is_err());
        assert!(OutcomeDistribution::of(&s, &[]).is_err());
    }
}
