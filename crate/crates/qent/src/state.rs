//! Amplitude-indexed pure qubit states and local operations.
//!
//! A state is a sparse map from n-bit strings to amplitudes; absent keys
//! are zero and normalization is never required (classification is
//! projective). Bit strings are read left to right, qubit 1 first, and are
//! stored as the corresponding binary integer, so "100" ↔ 4 for n = 3.
//!
//! Beside the state type this module carries the two independent oracles
//! used to cross-check the triple-system classification: the single-qubit
//! flattening ranks and the degree-4 hyperdeterminant of the 2×2×2
//! amplitude tensor.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Pure n-qubit state with sparse amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitState {
    n: usize,
    amplitudes: BTreeMap<u32, Scalar>,
}

/// Invertible 2×2 matrix acting on one qubit; row-major entries.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalMatrix(pub [[Scalar; 2]; 2]);

impl LocalMatrix {
    pub fn identity() -> Self {
        LocalMatrix([
            [Scalar::one(), Scalar::zero()],
            [Scalar::zero(), Scalar::one()],
        ])
    }

    /// diag(a, b).
    pub fn diagonal(a: Scalar, b: Scalar) -> Self {
        LocalMatrix([[a, Scalar::zero()], [Scalar::zero(), b]])
    }

    /// The Hadamard rotation in the approximate backend.
    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        LocalMatrix([
            [Scalar::approx(h, 0.0), Scalar::approx(h, 0.0)],
            [Scalar::approx(h, 0.0), Scalar::approx(-h, 0.0)],
        ])
    }

    pub fn determinant(&self) -> Scalar {
        &self.0[0][0] * &self.0[1][1] - &self.0[0][1] * &self.0[1][0]
    }

    fn scale(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|s| s.abs_f64())
            .fold(0.0, f64::max)
    }

    pub fn is_invertible(&self) -> bool {
        let s = self.scale();
        !self.determinant().is_zero_scaled(s * s)
    }
}

impl QubitState {
    /// The zero state on `n` qubits.
    pub fn zero(n: usize) -> Self {
        QubitState {
            n,
            amplitudes: BTreeMap::new(),
        }
    }

    /// State from (index, amplitude) pairs; indices must fit in n bits.
    pub fn from_amplitudes(
        n: usize,
        entries: impl IntoIterator<Item = (u32, Scalar)>,
    ) -> Result<Self> {
        let mut state = QubitState::zero(n);
        for (index, value) in entries {
            if index >= (1u32 << n) {
                return Err(Error::Internal(format!(
                    "index {index} out of range for {n} qubits"
                )));
            }
            state.set_amplitude(index, value);
        }
        Ok(state)
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    /// Dimension 2ⁿ of the underlying space.
    pub fn dimension(&self) -> u32 {
        1u32 << self.n
    }

    /// Amplitude at a basis index (zero when absent).
    pub fn amplitude(&self, index: u32) -> Scalar {
        self.amplitudes
            .get(&index)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Sets one amplitude, dropping representable zeros from storage.
    pub fn set_amplitude(&mut self, index: u32, value: Scalar) {
        let drop = match &value {
            Scalar::Exact { .. } => value.is_zero(),
            Scalar::Approx { re, im } => *re == 0.0 && *im == 0.0,
        };
        if drop {
            self.amplitudes.remove(&index);
        } else {
            self.amplitudes.insert(index, value);
        }
    }

    /// Stored (index, amplitude) pairs in index order.
    pub fn entries(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.amplitudes.iter().map(|(k, v)| (*k, v))
    }

    /// True when every stored amplitude tests zero.
    pub fn is_zero_state(&self) -> bool {
        let scale = self.scale();
        self.amplitudes.values().all(|v| v.is_zero_scaled(scale))
    }

    /// Largest |amplitude|, the context scale for approximate zero tests.
    pub fn scale(&self) -> f64 {
        self.amplitudes
            .values()
            .map(|v| v.abs_f64())
            .fold(0.0, f64::max)
    }

    /// True when any stored amplitude uses the approximate backend.
    pub fn has_approx_amplitudes(&self) -> bool {
        self.amplitudes.values().any(|v| !v.is_exact())
    }

    /// This state with every amplitude converted to the approximate backend.
    pub fn to_approx(&self) -> QubitState {
        let mut out = QubitState::zero(self.n);
        for (k, v) in self.entries() {
            out.set_amplitude(k, v.to_approx());
        }
        out
    }

    /// The bit of `index` for 1-based qubit `position` (leftmost = 1).
    pub fn bit(&self, index: u32, position: usize) -> u8 {
        ((index >> (self.n - position)) & 1) as u8
    }

    /// Sum of |amplitude|² as a double.
    pub fn norm_squared_f64(&self) -> f64 {
        self.amplitudes
            .values()
            .map(|v| {
                let (re, im) = v.to_f64_parts();
                re * re + im * im
            })
            .sum()
    }

    /// Applies one local matrix per qubit (the n-fold tensor action).
    pub fn apply_slocc(&self, matrices: &[LocalMatrix]) -> Result<QubitState> {
        if matrices.len() != self.n {
            return Err(Error::WrongParameterCount {
                expected: self.n,
                got: matrices.len(),
            });
        }
        for (i, m) in matrices.iter().enumerate() {
            if !m.is_invertible() {
                return Err(Error::SingularMatrix { qubit: i + 1 });
            }
        }
        let mut current = self.clone();
        for (qubit, m) in matrices.iter().enumerate() {
            let shift = self.n - (qubit + 1);
            let mut next = QubitState::zero(self.n);
            for (index, value) in current.entries() {
                let old_bit = ((index >> shift) & 1) as usize;
                for new_bit in 0..2usize {
                    let coeff = &m.0[new_bit][old_bit];
                    if coeff.is_zero() && coeff.is_exact() {
                        continue;
                    }
                    let target = (index & !(1 << shift)) | ((new_bit as u32) << shift);
                    let updated = next.amplitude(target) + coeff * value;
                    next.set_amplitude(target, updated);
                }
            }
            current = next;
        }
        Ok(current)
    }

    /// Moves the amplitude at each bit string to the permuted bit string;
    /// `perm[i-1]` is the new position of qubit i.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<QubitState> {
        let n = self.n;
        let mut seen = vec![false; n + 1];
        if perm.len() != n || perm.iter().any(|&p| p == 0 || p > n || std::mem::replace(&mut seen[p.min(n)], true)) {
            return Err(Error::InvalidPermutation {
                perm: perm.to_vec(),
                n,
            });
        }
        let mut out = QubitState::zero(n);
        for (index, value) in self.entries() {
            let mut target = 0u32;
            for position in 1..=n {
                if self.bit(index, position) == 1 {
                    target |= 1 << (n - perm[position - 1]);
                }
            }
            out.set_amplitude(target, value.clone());
        }
        Ok(out)
    }

    /// Random dense exact state.
    pub fn random_exact<R: Rng + ?Sized>(n: usize, rng: &mut R) -> QubitState {
        let mut state = QubitState::zero(n);
        for index in 0..(1u32 << n) {
            state.set_amplitude(index, Scalar::random_exact(rng));
        }
        state
    }
}

impl fmt::Display for QubitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.amplitudes.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (index, value) in self.entries() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})|{}⟩", value, index_to_bits(index, self.n))?;
        }
        Ok(())
    }
}

/// Renders a basis index as an n-character bit string.
pub fn index_to_bits(index: u32, n: usize) -> String {
    (1..=n)
        .map(|p| {
            if (index >> (n - p)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// Parses an n-character bit string into a basis index.
pub fn bits_to_index(bits: &str, n: usize) -> Option<u32> {
    if bits.len() != n {
        return None;
    }
    let mut index = 0u32;
    for c in bits.chars() {
        index = (index << 1)
            | match c {
                '0' => 0,
                '1' => 1,
                _ => return None,
            };
    }
    Some(index)
}

/// Single-qubit flattening ranks (r_A, r_B, r_C), each 1 or 2.
///
/// r_i is the matrix rank of the 2×4 flattening that separates qubit i:
/// (1,1,1) ⇔ product state, exactly one 1 ⇔ biseparable with that qubit
/// separated, (2,2,2) ⇔ W or GHZ.
pub fn local_ranks(state: &QubitState) -> Result<[u8; 3]> {
    if state.qubit_count() != 3 {
        return Err(Error::WrongQubitCount {
            expected: 3,
            got: state.qubit_count(),
        });
    }
    if state.is_zero_state() {
        return Err(Error::ZeroState);
    }
    let scale = state.scale();
    let mut ranks = [0u8; 3];
    for qubit in 1..=3usize {
        let shift = 3 - qubit;
        // rows indexed by the separated qubit, columns by the rest
        let mut rows: [[Scalar; 4]; 2] =
            std::array::from_fn(|_| std::array::from_fn(|_| Scalar::zero()));
        for index in 0..8u32 {
            let row = ((index >> shift) & 1) as usize;
            let high = index >> (shift + 1);
            let low = index & ((1 << shift) - 1);
            let col = ((high << shift) | low) as usize;
            rows[row][col] = state.amplitude(index);
        }
        let mut rank = 1u8;
        'minors: for j in 0..4 {
            for k in (j + 1)..4 {
                let minor = &rows[0][j] * &rows[1][k] - &rows[0][k] * &rows[1][j];
                if !minor.is_zero_scaled(scale * scale.max(1.0)) {
                    rank = 2;
                    break 'minors;
                }
            }
        }
        ranks[qubit - 1] = rank;
    }
    Ok(ranks)
}

/// Cayley hyperdeterminant of the 2×2×2 amplitude tensor.
///
/// The standard degree-4 polynomial; used as an independent oracle for the
/// quartic norm, which satisfies q = −2·Det on the triple-system side.
pub fn cayley_hyperdet(state: &QubitState) -> Result<Scalar> {
    if state.qubit_count() != 3 {
        return Err(Error::WrongQubitCount {
            expected: 3,
            got: state.qubit_count(),
        });
    }
    let a = |bits: &str| state.amplitude(bits_to_index(bits, 3).unwrap());
    let d1 = &a("000") * &a("111");
    let d2 = &a("001") * &a("110");
    let d3 = &a("010") * &a("101");
    let d4 = &a("100") * &a("011");
    let squares = &d1 * &d1 + &d2 * &d2 + &d3 * &d3 + &d4 * &d4;
    let pairs = &d1 * &d2
        + &d1 * &d3
        + &d1 * &d4
        + &d2 * &d3
        + &d2 * &d4
        + &d3 * &d4;
    let quads = &(&(&a("000") * &a("011")) * &a("101")) * &a("110")
        + &(&(&a("111") * &a("100")) * &a("010")) * &a("001");
    Ok(squares - pairs * Scalar::from_int(2) + quads * Scalar::from_int(4))
}
