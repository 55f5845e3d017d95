//! Symmetric-tensor repackaging of n-qubit states.
//!
//! The 2ⁿ amplitudes are collected into the n+1 subsets closed under the
//! qubit permutation group: for each rank p a totally symmetric,
//! diagonal-free tensor determined by its values on p-element index
//! subsets. A subset names the qubit positions whose bit is 1, so each
//! block stores one value per subset and the total component count stays
//! 2ⁿ. Raising indices against the permutation-invariant tensor |ε|
//! collapses to a bit flip: the dual of block p at subset S is the block-p
//! value at the complement of S.
//!
//! The three-qubit triple-system translations carry over verbatim in this
//! language, as do the torus scalings, and the degree-two invariant
//!
//! ```text
//! (𝒜, ℬ) = Σₖ (−1)ᵏ/k! A_[k]·B^[k] = Σ_S (−1)^|S| A_S B_{Sᶜ}
//! ```
//!
//! is preserved by all of them. Conventions kept from the construction:
//! combinatorial factors in the torus action and in dualization cancel
//! against the tensor symmetrization and are dropped; the invariant keeps
//! its 1/k! factors. Consequently the n = 2 invariant is twice the 2×2
//! determinant and the n = 3 invariant is minus the symplectic form — the
//! constants are fixed by expansion and verified in tests, not adjusted
//! away.
//!
//! Two conventions for "front-normalized" coexist in the three-qubit
//! picture; this module uses the one matching the reduced canonical form
//! (1, 0, A, 0): top amplitude a_{1…1} = 1 and its n one-bit-flip
//! neighbours zero.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::state::QubitState;

/// An n-qubit state stored as one symmetric tensor block per rank.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensorState {
    n: usize,
    /// blocks[p] maps each p-element subset (as a bit mask, qubit j ↔ bit
    /// n−j) to the shared tensor value; all 2ⁿ subsets are present.
    blocks: Vec<BTreeMap<u32, Scalar>>,
}

/// SLOCC transformations in the tensor language, one parameter per qubit.
#[derive(Clone, Debug, PartialEq)]
pub enum NTransform {
    /// Adds lower blocks into higher ones: A_S ← Σ_{V⊆S} Π_{j∈S∖V} C_j · A_V.
    PhiN(Vec<Scalar>),
    /// Adds higher blocks into lower ones: A_S ← Σ_{V⊇S} Π_{j∈V∖S} D_j · A_V.
    PsiN(Vec<Scalar>),
    /// Scales A_S by Π_{j∉S} λ_j · Π_{j∈S} λ_j⁻¹ (nonzero parameters).
    TauN(Vec<Scalar>),
    /// The local matrix (0, −1; 1, 0) on every qubit:
    /// A_S ← (−1)^(n−|S|) A_{Sᶜ}.
    ZedN,
}

impl SymTensorState {
    /// The zero state on n qubits.
    pub fn zero(n: usize) -> Self {
        let mut blocks = vec![BTreeMap::new(); n + 1];
        for mask in 0..(1u32 << n) {
            blocks[mask.count_ones() as usize].insert(mask, Scalar::zero());
        }
        SymTensorState { n, blocks }
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    fn full_mask(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    /// Value shared by all index orderings of the subset `mask`.
    pub fn value(&self, mask: u32) -> &Scalar {
        &self.blocks[mask.count_ones() as usize][&mask]
    }

    pub fn set_value(&mut self, mask: u32, value: Scalar) {
        self.blocks[mask.count_ones() as usize].insert(mask, value);
    }

    /// The rank-p block.
    pub fn block(&self, p: usize) -> &BTreeMap<u32, Scalar> {
        &self.blocks[p]
    }

    /// Total stored component count; always 2ⁿ.
    pub fn component_count(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn is_zero_state(&self) -> bool {
        let scale = self.scale();
        self.blocks
            .iter()
            .flat_map(|b| b.values())
            .all(|v| v.is_zero_scaled(scale))
    }

    pub fn scale(&self) -> f64 {
        self.blocks
            .iter()
            .flat_map(|b| b.values())
            .map(|v| v.abs_f64())
            .fold(0.0, f64::max)
    }

    /// Collects amplitudes into blocks: block |S| at S takes the amplitude
    /// of the bit string with 1s exactly at the positions in S.
    pub fn from_amplitudes(state: &QubitState) -> SymTensorState {
        let n = state.qubit_count();
        let mut t = SymTensorState::zero(n);
        for mask in 0..(1u32 << n) {
            t.set_value(mask, state.amplitude(mask));
        }
        t
    }

    /// Inverse of [`SymTensorState::from_amplitudes`].
    pub fn to_amplitudes(&self) -> QubitState {
        let mut state = QubitState::zero(self.n);
        for block in &self.blocks {
            for (mask, value) in block {
                state.set_amplitude(*mask, value.clone());
            }
        }
        state
    }
}

impl fmt::Display for SymTensorState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, block) in self.blocks.iter().enumerate() {
            if p > 0 {
                write!(f, "; ")?;
            }
            write!(f, "A[{p}]: ")?;
            let mut first = true;
            for (mask, value) in block {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "{mask:0width$b}={value}", width = self.n.max(1))?;
            }
        }
        Ok(())
    }
}

/// Dual of the rank-p block: the map sending each (n−p)-subset S to the
/// block-p value at the complement of S. The 1/p! of the index-raising
/// contraction cancels against the p! matching permutations, leaving a
/// pure bit flip.
pub fn dualize(t: &SymTensorState, p: usize) -> Result<BTreeMap<u32, Scalar>> {
    if p > t.n {
        return Err(Error::Internal(format!("rank {p} exceeds qubit count {}", t.n)));
    }
    let full = t.full_mask();
    let mut out = BTreeMap::new();
    for (mask, value) in t.block(p) {
        out.insert(full ^ mask, value.clone());
    }
    Ok(out)
}

/// Iterates the subsets of `mask` (including 0 and `mask` itself).
fn subsets_of(mask: u32) -> impl Iterator<Item = u32> {
    let mut current = mask;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = current;
        if current == 0 {
            done = true;
        } else {
            current = (current - 1) & mask;
        }
        Some(out)
    })
}

/// Product of the per-position parameters selected by `mask`
/// (position j ↔ bit n−j).
fn masked_product(params: &[Scalar], n: usize, mask: u32) -> Scalar {
    let mut product = Scalar::one();
    for position in 1..=n {
        if (mask >> (n - position)) & 1 == 1 {
            product = product * &params[position - 1];
        }
    }
    product
}

/// Applies one transformation to every block.
pub fn apply_ntransform(g: &NTransform, t: &SymTensorState) -> Result<SymTensorState> {
    let n = t.n;
    let check_len = |params: &Vec<Scalar>| {
        if params.len() != n {
            Err(Error::WrongParameterCount {
                expected: n,
                got: params.len(),
            })
        } else {
            Ok(())
        }
    };
    let mut out = SymTensorState::zero(n);
    match g {
        NTransform::PhiN(c) => {
            check_len(c)?;
            for mask in 0..(1u32 << n) {
                let mut sum = Scalar::zero();
                for sub in subsets_of(mask) {
                    sum = sum + masked_product(c, n, mask ^ sub) * t.value(sub);
                }
                out.set_value(mask, sum);
            }
        }
        NTransform::PsiN(d) => {
            check_len(d)?;
            let full = t.full_mask();
            for mask in 0..(1u32 << n) {
                let mut sum = Scalar::zero();
                for extra in subsets_of(full ^ mask) {
                    sum = sum + masked_product(d, n, extra) * t.value(mask | extra);
                }
                out.set_value(mask, sum);
            }
        }
        NTransform::TauN(l) => {
            check_len(l)?;
            for (index, s) in l.iter().enumerate() {
                if s.is_zero() {
                    return Err(Error::ZeroScalingParameter { index: index + 1 });
                }
            }
            let full_product = masked_product(l, n, t.full_mask());
            for mask in 0..(1u32 << n) {
                let inside = masked_product(l, n, mask);
                let factor = &full_product / &(&inside * &inside);
                out.set_value(mask, factor * t.value(mask));
            }
        }
        NTransform::ZedN => {
            let full = t.full_mask();
            for mask in 0..(1u32 << n) {
                let zeros = n as u32 - mask.count_ones();
                let flipped = t.value(full ^ mask).clone();
                out.set_value(mask, if zeros % 2 == 1 { -flipped } else { flipped });
            }
        }
    }
    Ok(out)
}

/// Applies a word of transformations left to right.
pub fn apply_nword(word: &[NTransform], t: &SymTensorState) -> Result<SymTensorState> {
    let mut current = t.clone();
    for g in word {
        current = apply_ntransform(g, &current)?;
    }
    Ok(current)
}

/// Degree-two invariant (𝒜, ℬ) = Σ_S (−1)^|S| A_S B_{Sᶜ}; symmetric for
/// even n, antisymmetric for odd n.
pub fn bilinear_invariant(t: &SymTensorState, u: &SymTensorState) -> Result<Scalar> {
    if t.n != u.n {
        return Err(Error::MismatchedQubitCount { left: t.n, right: u.n });
    }
    let full = t.full_mask();
    let mut sum = Scalar::zero();
    for mask in 0..(1u32 << t.n) {
        let term = t.value(mask) * u.value(full ^ mask);
        sum = if mask.count_ones() % 2 == 1 {
            sum - term
        } else {
            sum + term
        };
    }
    Ok(sum)
}

/// Front-normalizes a nonzero state: top amplitude 1, its n one-bit-flip
/// neighbours 0. Returns the normalized state and a replayable transcript
/// (empty when the input is already normalized).
pub fn front_normalize(t: &SymTensorState) -> Result<(SymTensorState, Vec<NTransform>)> {
    if t.is_zero_state() {
        return Err(Error::ZeroState);
    }
    let n = t.n;
    let full = t.full_mask();
    let scale = t.scale();
    let mut current = t.clone();
    let mut transcript = Vec::new();

    // Seed the top corner from a maximal-rank nonzero block: with C the
    // indicator of the pivot's complement, the top gains exactly that
    // block's value (everything above the pivot vanishes).
    if current.value(full).is_zero_scaled(scale) {
        let pivot = (0..=n)
            .rev()
            .flat_map(|p| current.block(p).iter())
            .find(|(_, v)| !v.is_zero_scaled(scale))
            .map(|(mask, _)| *mask)
            .expect("nonzero state has a nonzero block");
        let c: Vec<Scalar> = (1..=n)
            .map(|position| {
                if (pivot >> (n - position)) & 1 == 1 {
                    Scalar::zero()
                } else {
                    Scalar::one()
                }
            })
            .collect();
        let g = NTransform::PhiN(c);
        current = apply_ntransform(&g, &current)?;
        transcript.push(g);
    }

    // Scale the top to exactly 1.
    let top = current.value(full).clone();
    if !(top.clone() - Scalar::one()).is_zero_scaled(scale) {
        let mut l = vec![Scalar::one(); n];
        l[0] = top;
        let g = NTransform::TauN(l);
        current = apply_ntransform(&g, &current)?;
        transcript.push(g);
    }

    // Kill the n one-bit-flip neighbours in a single translation.
    let d: Vec<Scalar> = (1..=n)
        .map(|position| -current.value(full ^ (1 << (n - position))))
        .collect();
    if d.iter().any(|s| !s.is_zero()) {
        let g = NTransform::PsiN(d);
        current = apply_ntransform(&g, &current)?;
        transcript.push(g);
    }

    Ok((current, transcript))
}

/// Result of the 2-qubit reduction to {A₀ = 1, A_i = 0, A₁₂ = k}.
#[derive(Clone, Debug)]
pub struct TwoQubitReduction {
    pub canonical: SymTensorState,
    pub transcript: Vec<NTransform>,
    /// The canonical amplitude a₁₁; zero exactly on separable states.
    pub k: Scalar,
    /// The degree-two invariant of the input, which equals 2k.
    pub invariant: Scalar,
}

/// Reduces a nonzero 2-qubit state to |00⟩ + k|11⟩.
///
/// Ensures the rank-one layer is nonzero, translates A₀ to 1 with a
/// one-hot (hence null) ψ-parameter, then clears the rank-one layer with
/// φ(−A_i). The invariant is preserved throughout and evaluates to 2k on
/// the canonical form.
pub fn two_qubit_reduce(t: &SymTensorState) -> Result<TwoQubitReduction> {
    if t.n != 2 {
        return Err(Error::WrongQubitCount { expected: 2, got: t.n });
    }
    if t.is_zero_state() {
        return Err(Error::ZeroState);
    }
    let scale = t.scale();
    let invariant = bilinear_invariant(t, t)?;
    let mut current = t.clone();
    let mut transcript = Vec::new();
    let push = |current: &mut SymTensorState, transcript: &mut Vec<NTransform>, g: NTransform| -> Result<()> {
        *current = apply_ntransform(&g, current)?;
        transcript.push(g);
        Ok(())
    };

    // make the rank-one layer nonzero
    let layer_zero = |s: &SymTensorState| {
        s.block(1).values().all(|v| v.is_zero_scaled(scale))
    };
    if layer_zero(&current) {
        if current.value(0).is_zero_scaled(scale) {
            push(&mut current, &mut transcript, NTransform::ZedN)?;
        }
        push(
            &mut current,
            &mut transcript,
            NTransform::PhiN(vec![Scalar::one(), Scalar::zero()]),
        )?;
    }

    // drive A₀ to 1 with a null translation through the smallest nonzero slot
    let a0 = current.value(0).clone();
    if !(a0.clone() - Scalar::one()).is_zero_scaled(scale) {
        let position = (1..=2)
            .find(|&p| !current.value(1 << (2 - p)).is_zero_scaled(scale))
            .ok_or_else(|| Error::Internal("rank-one layer is zero".into()))?;
        let slot_value = current.value(1 << (2 - position)).clone();
        let mut d = vec![Scalar::zero(), Scalar::zero()];
        d[position - 1] = (Scalar::one() - a0) / slot_value;
        push(&mut current, &mut transcript, NTransform::PsiN(d))?;
    }

    // clear the rank-one layer
    let c: Vec<Scalar> = (1..=2)
        .map(|p| -current.value(1 << (2 - p)))
        .collect();
    if c.iter().any(|s| !s.is_zero()) {
        push(&mut current, &mut transcript, NTransform::PhiN(c))?;
    }

    let k = current.value(3).clone();
    Ok(TwoQubitReduction {
        canonical: current,
        transcript,
        k,
        invariant,
    })
}
