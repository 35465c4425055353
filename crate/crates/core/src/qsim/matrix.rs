use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use super::{Amplitude, TOLERANCE};
use crate::error::{Error, Result};

const ZERO: Amplitude = Complex64::new(0.0, 0.0);
const ONE: Amplitude = Complex64::new(1.0, 0.0);

/// A dense `2^k × 2^k` operator acting on `k` qubits, stored row-major.
///
/// Within a `k`-qubit gate the first listed target is the most significant
/// bit of the local index, mirroring the global ket convention.
#[derive(Clone, PartialEq)]
pub struct GateMatrix {
    arity: usize,
    entries: Vec<Amplitude>,
}

impl GateMatrix {
    /// Largest arity accepted by [`GateMatrix::new`]; 2^12 × 2^12 entries.
    pub const MAX_ARITY: usize = 12;

    pub fn new(arity: usize, entries: Vec<Amplitude>) -> Result<Self> {
        if arity == 0 || arity > Self::MAX_ARITY {
            return Err(Error::invalid(format!("gate arity {arity} out of range 1..={}", Self::MAX_ARITY)));
        }
        let dim = 1usize << arity;
        if entries.len() != dim * dim {
            return Err(Error::invalid(format!(
                "arity {arity} needs {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid("gate matrix has non-finite entries"));
        }
        Ok(Self { arity, entries })
    }

    /// Builds a matrix from real-valued rows. Panics on malformed input; used
    /// for the fixed standard gates only.
    fn from_real_rows(arity: usize, rows: &[&[f64]]) -> Self {
        let entries = rows.iter().flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0))).collect();
        Self::new(arity, entries).expect("standard gate table is well formed")
    }

    pub fn identity(arity: usize) -> Self {
        let dim = 1usize << arity;
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = ONE;
        }
        Self { arity, entries }
    }

    pub fn x() -> Self {
        Self::from_real_rows(1, &[&[0.0, 1.0], &[1.0, 0.0]])
    }

    pub fn h() -> Self {
        let h = FRAC_1_SQRT_2;
        Self::from_real_rows(1, &[&[h, h], &[h, -h]])
    }

    fn phase(angle: f64) -> Self {
        Self { arity: 1, entries: vec![ONE, ZERO, ZERO, Complex64::from_polar(1.0, angle)] }
    }

    pub fn s() -> Self {
        Self { arity: 1, entries: vec![ONE, ZERO, ZERO, Complex64::i()] }
    }

    pub fn sdg() -> Self {
        Self { arity: 1, entries: vec![ONE, ZERO, ZERO, -Complex64::i()] }
    }

    pub fn t() -> Self {
        Self::phase(std::f64::consts::FRAC_PI_4)
    }

    pub fn tdg() -> Self {
        Self::phase(-std::f64::consts::FRAC_PI_4)
    }

    /// CNOT with the control as the first (most significant) local qubit.
    pub fn cx() -> Self {
        Self::from_real_rows(
            2,
            &[&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0], &[0.0, 0.0, 0.0, 1.0], &[0.0, 0.0, 1.0, 0.0]],
        )
    }

    /// A permutation matrix sending basis column `j` to row `perm(j)`.
    pub fn permutation(arity: usize, perm: impl Fn(usize) -> usize) -> Result<Self> {
        let dim = 1usize << arity;
        let mut entries = vec![ZERO; dim * dim];
        let mut seen = vec![false; dim];
        for col in 0..dim {
            let row = perm(col);
            if row >= dim || seen[row] {
                return Err(Error::invalid(format!("not a permutation of {dim} basis states")));
            }
            seen[row] = true;
            entries[row * dim + col] = ONE;
        }
        Self::new(arity, entries)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        1 << self.arity
    }

    pub fn entries(&self) -> &[Amplitude] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Amplitude {
        self.entries[row * self.dim() + col]
    }

    pub(crate) fn set_column(&mut self, col: usize, column: &[Amplitude]) {
        let dim = self.dim();
        for (row, &z) in column.iter().enumerate() {
            self.entries[row * dim + col] = z;
        }
    }

    pub fn dagger(&self) -> Self {
        let dim = self.dim();
        let mut entries = vec![ZERO; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                entries[c * dim + r] = self.entries[r * dim + c].conj();
            }
        }
        Self { arity: self.arity, entries }
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.arity != rhs.arity {
            return Err(Error::invalid(format!("arity mismatch {} vs {}", self.arity, rhs.arity)));
        }
        let dim = self.dim();
        let mut entries = vec![ZERO; dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                let a = self.entries[r * dim + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..dim {
                    entries[r * dim + c] += a * rhs.entries[k * dim + c];
                }
            }
        }
        Ok(Self { arity: self.arity, entries })
    }

    /// Largest elementwise deviation of `U†U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = ZERO;
                for k in 0..dim {
                    acc += self.entries[k * dim + i].conj() * self.entries[k * dim + j];
                }
                let expected = if i == j { ONE } else { ZERO };
                worst = worst.max((acc - expected).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    /// Largest elementwise `|a - b|`; infinite when the arities differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.arity != other.arity {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest elementwise deviation after removing a global phase.
    ///
    /// Both matrices are divided by their own entry at the position of the
    /// first largest-magnitude entry of `self`. Returns infinity when that
    /// entry of `other` vanishes.
    pub fn phase_insensitive_diff(&self, other: &Self) -> f64 {
        if self.arity != other.arity {
            return f64::INFINITY;
        }
        let mut pivot = 0;
        let mut best = -1.0;
        for (i, z) in self.entries.iter().enumerate() {
            let m = z.norm();
            if m > best + TOLERANCE {
                best = m;
                pivot = i;
            }
        }
        let a0 = self.entries[pivot];
        let b0 = other.entries[pivot];
        if b0.norm() <= TOLERANCE || a0.norm() <= TOLERANCE {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a / a0 - b / b0).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq_up_to_phase(&self, other: &Self, tol: f64) -> bool {
        self.phase_insensitive_diff(other) <= tol
    }
}

impl fmt::Debug for GateMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dim = self.dim();
        writeln!(f, "GateMatrix(arity={}) [", self.arity)?;
        for r in 0..dim {
            write!(f, "  ")?;
            for c in 0..dim {
                let z = self.get(r, c);
                write!(f, "{:+.3}{:+.3}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
