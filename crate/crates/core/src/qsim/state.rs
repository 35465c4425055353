use std::fmt;

use num_complex::Complex64;

use super::{Amplitude, GateMatrix, TOLERANCE};
use crate::error::{Error, Result};

/// Dense `n`-qubit pure state. `q0` is the most significant bit of the index.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Amplitude>,
}

impl StateVector {
    pub const MAX_QUBITS: usize = 20;

    /// Computational basis state from a ket string such as `"00110"`.
    pub fn basis(n_qubits: usize, bits: &str) -> Result<Self> {
        check_width(n_qubits)?;
        if bits.chars().count() != n_qubits {
            return Err(Error::invalid(format!("bitstring {bits:?} does not have {n_qubits} bits")));
        }
        let mut index = 0usize;
        for ch in bits.chars() {
            index <<= 1;
            match ch {
                '0' => {}
                '1' => index |= 1,
                other => return Err(Error::invalid(format!("bitstring contains {other:?}"))),
            }
        }
        Self::basis_index(n_qubits, index)
    }

    pub fn basis_index(n_qubits: usize, index: usize) -> Result<Self> {
        check_width(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::invalid(format!("basis index {index} out of range for {n_qubits} qubits")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Wraps raw amplitudes, checking the length and the norm.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Amplitude>) -> Result<Self> {
        check_width(n_qubits)?;
        if amps.len() != 1usize << n_qubits {
            return Err(Error::invalid(format!("{} amplitudes for {n_qubits} qubits", amps.len())));
        }
        let state = Self { n_qubits, amps };
        let err = (state.norm_sqr() - 1.0).abs();
        if !err.is_finite() || err > TOLERANCE {
            return Err(Error::invalid(format!("state is not normalized (|norm² - 1| = {err:e})")));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn amplitude(&self, bits: &str) -> Result<Amplitude> {
        let b = Self::basis(self.n_qubits, bits)?;
        Ok(self.amps[b.basis_of().expect("basis state")])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// The basis index this state sits on, if exactly one amplitude has
    /// modulus 1 within tolerance and the rest vanish.
    pub fn basis_of(&self) -> Option<usize> {
        let mut hit = None;
        for (i, z) in self.amps.iter().enumerate() {
            let m = z.norm();
            if (m - 1.0).abs() <= TOLERANCE {
                if hit.is_some() {
                    return None;
                }
                hit = Some(i);
            } else if m > TOLERANCE {
                return None;
            }
        }
        hit
    }

    /// Ket string of the basis state, e.g. `"11001"`.
    pub fn basis_ket(&self) -> Option<String> {
        self.basis_of().map(|i| index_to_bits(i, self.n_qubits))
    }

    /// Bit position of `qubit` inside a basis index.
    pub(crate) fn shift(&self, qubit: usize) -> usize {
        self.n_qubits - 1 - qubit
    }

    /// Applies `gate` to the listed qubits in place. The first target is the
    /// gate's most significant local qubit.
    pub fn apply(&mut self, gate: &GateMatrix, targets: &[usize]) -> Result<()> {
        if gate.arity() != targets.len() {
            return Err(Error::invalid(format!(
                "gate of arity {} given {} targets",
                gate.arity(),
                targets.len()
            )));
        }
        for (i, &t) in targets.iter().enumerate() {
            if t >= self.n_qubits {
                return Err(Error::invalid(format!("qubit {t} out of range for {} qubits", self.n_qubits)));
            }
            if targets[..i].contains(&t) {
                return Err(Error::invalid(format!("repeated target qubit {t}")));
            }
        }
        let err = gate.unitarity_error();
        if err > TOLERANCE {
            return Err(Error::invalid(format!("gate is not unitary (deviation {err:e})")));
        }
        self.apply_unchecked(gate, targets);
        Ok(())
    }

    pub(crate) fn apply_unchecked(&mut self, gate: &GateMatrix, targets: &[usize]) {
        match *targets {
            [t] => self.apply_one(gate, t),
            [hi, lo] => self.apply_two(gate, hi, lo),
            _ => self.apply_general(gate, targets),
        }
    }

    fn apply_one(&mut self, gate: &GateMatrix, target: usize) {
        let bit = 1usize << self.shift(target);
        let m = gate.entries();
        for i in (0..self.amps.len()).filter(|i| i & bit == 0) {
            let (a0, a1) = (self.amps[i], self.amps[i | bit]);
            self.amps[i] = m[0] * a0 + m[1] * a1;
            self.amps[i | bit] = m[2] * a0 + m[3] * a1;
        }
    }

    fn apply_two(&mut self, gate: &GateMatrix, hi: usize, lo: usize) {
        let (bh, bl) = (1usize << self.shift(hi), 1usize << self.shift(lo));
        let offsets = [0, bl, bh, bh | bl];
        let m = gate.entries();
        for base in (0..self.amps.len()).filter(|i| i & (bh | bl) == 0) {
            let v = offsets.map(|off| self.amps[base | off]);
            for (r, off) in offsets.iter().enumerate() {
                let row = &m[r * 4..r * 4 + 4];
                self.amps[base | off] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
            }
        }
    }

    fn apply_general(&mut self, gate: &GateMatrix, targets: &[usize]) {
        let k = targets.len();
        let local_dim = 1usize << k;
        // offsets[l] is the global index contribution of local index l
        let offsets: Vec<usize> = (0..local_dim)
            .map(|l| {
                targets.iter().enumerate().fold(0usize, |acc, (j, &t)| {
                    if (l >> (k - 1 - j)) & 1 == 1 {
                        acc | (1 << self.shift(t))
                    } else {
                        acc
                    }
                })
            })
            .collect();
        let mask = offsets[local_dim - 1];
        let mut buf = vec![Complex64::new(0.0, 0.0); local_dim];
        for base in 0..self.amps.len() {
            if base & mask != 0 {
                continue;
            }
            for (l, off) in offsets.iter().enumerate() {
                buf[l] = self.amps[base | off];
            }
            for (r, off) in offsets.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (c, v) in buf.iter().enumerate() {
                    acc += gate.get(r, c) * v;
                }
                self.amps[base | off] = acc;
            }
        }
    }

    /// Largest elementwise `|a - b|` between two states of equal width.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.n_qubits != other.n_qubits {
            return f64::INFINITY;
        }
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateVector(")?;
        let mut first = true;
        for (i, z) in self.amps.iter().enumerate() {
            if z.norm() <= TOLERANCE {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "({:+.4}{:+.4}i)|{}⟩", z.re, z.im, index_to_bits(i, self.n_qubits))?;
        }
        write!(f, ")")
    }
}

pub(crate) fn index_to_bits(index: usize, width: usize) -> String {
    (0..width).map(|q| if (index >> (width - 1 - q)) & 1 == 1 { '1' } else { '0' }).collect()
}

fn check_width(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > StateVector::MAX_QUBITS {
        return Err(Error::invalid(format!("qubit count {n_qubits} out of range 1..={}", StateVector::MAX_QUBITS)));
    }
    Ok(())
}
