//! Pure-state registers and bipartitions of the qubit set.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest register handled anywhere in the crate.
pub const MAX_QUBITS: usize = 12;

/// Tolerance for accepting user-supplied amplitudes as already normalized.
pub const INPUT_NORM_TOL: f64 = 1e-9;

/// A normalized pure state of `n` qubits.
///
/// Amplitude `k` belongs to the computational basis state whose binary
/// expansion lists qubit 1 as the most significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// The computational basis state `|k>`.
    pub fn basis(n: usize, k: usize) -> Result<Self> {
        check_qubits(n)?;
        let dim = 1usize << n;
        if k >= dim {
            return Err(Error::IndexOutOfRange { n, index: k });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amplitudes })
    }

    /// Builds a state from raw amplitudes.
    ///
    /// With `normalize` set the vector is rescaled to unit norm. Without it the
    /// squared norm must already be within `1e-9` of one; the amplitudes are
    /// then rescaled exactly so downstream identities hold to rounding.
    pub fn from_amplitudes(n: usize, raw: Vec<Complex64>, normalize: bool) -> Result<Self> {
        check_qubits(n)?;
        let dim = 1usize << n;
        if raw.len() != dim {
            return Err(Error::Length {
                expected: dim,
                got: raw.len(),
            });
        }
        let norm_sqr: f64 = raw.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sqr.is_finite() {
            return Err(Error::InvalidArgument("non-finite amplitude".into()));
        }
        if normalize {
            if norm_sqr.sqrt() <= 1e-12 {
                return Err(Error::ZeroVector);
            }
        } else if (norm_sqr - 1.0).abs() > INPUT_NORM_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        let scale = 1.0 / norm_sqr.sqrt();
        let amplitudes = raw.into_iter().map(|a| a * scale).collect();
        Ok(Self { n, amplitudes })
    }

    /// Convenience constructor for real amplitude lists.
    pub fn from_real(n: usize, raw: &[f64], normalize: bool) -> Result<Self> {
        let raw = raw.iter().map(|&re| Complex64::new(re, 0.0)).collect();
        Self::from_amplitudes(n, raw, normalize)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::QubitMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// The same ray with every amplitude multiplied by `exp(i*phase)`.
    pub fn with_global_phase(&self, phase: f64) -> Self {
        let w = Complex64::from_polar(1.0, phase);
        Self {
            n: self.n,
            amplitudes: self.amplitudes.iter().map(|a| a * w).collect(),
        }
    }

    /// Applies a 2x2 unitary `u` (row-major) to `qubit` (1-based).
    ///
    /// The result is renormalized, so slightly non-unitary input only changes
    /// the direction of the state.
    pub fn apply_local(&self, qubit: usize, u: [[Complex64; 2]; 2]) -> Result<Self> {
        if qubit == 0 || qubit > self.n {
            return Err(Error::InvalidArgument(format!(
                "qubit {qubit} outside 1..={}",
                self.n
            )));
        }
        let mask = 1usize << (self.n - qubit);
        let mut out = self.amplitudes.clone();
        for k in 0..self.dim() {
            if k & mask != 0 {
                continue;
            }
            let a0 = self.amplitudes[k];
            let a1 = self.amplitudes[k | mask];
            out[k] = u[0][0] * a0 + u[0][1] * a1;
            out[k | mask] = u[1][0] * a0 + u[1][1] * a1;
        }
        Self::from_amplitudes(self.n, out, true)
    }
}

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        Err(Error::QubitCount(n))
    } else {
        Ok(())
    }
}

/// Bit position of 1-based `qubit` inside a computational index.
pub(crate) fn bit_position(n: usize, qubit: usize) -> usize {
    n - qubit
}

/// The party `A` of a bipartition `(A, complement)` of qubits `1..=n`.
///
/// Members are stored sorted. Ordering compares `n` first and then the member
/// lists lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bipartition {
    n: usize,
    members: Vec<usize>,
}

impl Bipartition {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        check_qubits(n)?;
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        if members.is_empty() || members.len() >= n {
            return Err(Error::Bipartition(format!(
                "party size {} must be in 1..={}",
                members.len(),
                n.saturating_sub(1)
            )));
        }
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Bipartition("repeated qubit index".into()));
        }
        if let Some(&bad) = members.iter().find(|&&q| q == 0 || q > n) {
            return Err(Error::Bipartition(format!("qubit {bad} outside 1..={n}")));
        }
        Ok(Self { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, qubit: usize) -> bool {
        self.members.binary_search(&qubit).is_ok()
    }

    pub fn complement(&self) -> Bipartition {
        Bipartition {
            n: self.n,
            members: (1..=self.n).filter(|q| !self.contains(*q)).collect(),
        }
    }

    pub fn is_balanced(&self) -> bool {
        self.members.len() == self.n / 2
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, q) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, "}}")
    }
}
