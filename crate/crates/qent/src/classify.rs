//! SLOCC classification of three-qubit states through the triple system.
//!
//! The eight amplitudes of a 3-qubit state are identified with an element
//! of the triple system as
//!
//! ```text
//! ( a111 | (a001, a010, a100) )
//! ( (a110, a101, a011) | a000 )   ↔   (α, β, A, B)
//! ```
//!
//! Under that identification the invariant rank is exactly the
//! entanglement class: 1 ↔ totally separable, 2 ↔ biseparable, 3 ↔ W,
//! 4 ↔ GHZ (the last a one-parameter family labelled by the quartic norm).
//! The biseparable sub-label (which qubit factors out) is decided by the
//! flattening ranks, an oracle independent of the triple-system data,
//! since the automorphism group merges the three biseparable classes.
//!
//! [`reduce_canonical`] turns the existence proof of the reduced canonical
//! form (1, 0, A, 0) into a deterministic algorithm whose transcript of
//! generators can be replayed. One wrinkle worth recording: the reduced
//! form has support {a111, a001, a010, a100}, and on it the
//! hyperdeterminant evaluates to 4·a001·a010·a100 = 4·N(A), equivalently
//! q = −8·N(A); this is checked against the hyperdeterminant oracle in
//! tests.

use std::fmt;

use crate::error::{Error, Result};
use crate::fts::{
    apply_generator, quartic_norm, rank_of_reduced, FtsElement, FtsGenerator, FtsRank,
};
use crate::jordan::{cubic_norm, jordan_rank, JordanElement, JordanRank};
use crate::scalar::Scalar;
use crate::state::{local_ranks, QubitState};

/// Which qubit factors out of a biseparable state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparatedQubit {
    A,
    B,
    C,
}

impl SeparatedQubit {
    /// 1-based qubit position.
    pub fn position(self) -> usize {
        match self {
            SeparatedQubit::A => 1,
            SeparatedQubit::B => 2,
            SeparatedQubit::C => 3,
        }
    }

    pub fn from_position(position: usize) -> Option<Self> {
        match position {
            1 => Some(SeparatedQubit::A),
            2 => Some(SeparatedQubit::B),
            3 => Some(SeparatedQubit::C),
            _ => None,
        }
    }
}

impl fmt::Display for SeparatedQubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeparatedQubit::A => write!(f, "A"),
            SeparatedQubit::B => write!(f, "B"),
            SeparatedQubit::C => write!(f, "C"),
        }
    }
}

/// SLOCC entanglement class of a 3-qubit state.
#[derive(Clone, Debug, PartialEq)]
pub enum EntanglementClass {
    Null,
    Separable,
    Biseparable(SeparatedQubit),
    W,
    /// Totally entangled with nonzero quartic norm, which labels the orbit.
    Ghz(Scalar),
}

impl EntanglementClass {
    pub fn name(&self) -> &'static str {
        match self {
            EntanglementClass::Null => "null",
            EntanglementClass::Separable => "separable",
            EntanglementClass::Biseparable(_) => "biseparable",
            EntanglementClass::W => "W",
            EntanglementClass::Ghz(_) => "GHZ",
        }
    }
}

/// Outcome of the canonical reduction.
#[derive(Clone, Debug)]
pub struct ReductionResult {
    /// The reduced form (1, 0, A, 0).
    pub canonical: FtsElement,
    /// Generators whose left-to-right replay maps the input to `canonical`.
    pub transcript: Vec<FtsGenerator>,
    /// Rank, read off the canonical form.
    pub rank: FtsRank,
    /// Class, read off the canonical form (biseparable label included).
    pub class: EntanglementClass,
}

/// Packs a 3-qubit state into a triple-system element.
pub fn state_to_fts(state: &QubitState) -> Result<FtsElement> {
    if state.qubit_count() != 3 {
        return Err(Error::WrongQubitCount {
            expected: 3,
            got: state.qubit_count(),
        });
    }
    Ok(FtsElement::new(
        state.amplitude(0b111),
        state.amplitude(0b000),
        JordanElement::new(
            state.amplitude(0b001),
            state.amplitude(0b010),
            state.amplitude(0b100),
        ),
        JordanElement::new(
            state.amplitude(0b110),
            state.amplitude(0b101),
            state.amplitude(0b011),
        ),
    ))
}

/// Inverse of [`state_to_fts`].
pub fn fts_to_state(x: &FtsElement) -> QubitState {
    let mut state = QubitState::zero(3);
    state.set_amplitude(0b111, x.alpha().clone());
    state.set_amplitude(0b000, x.beta().clone());
    state.set_amplitude(0b001, x.a().component(1).clone());
    state.set_amplitude(0b010, x.a().component(2).clone());
    state.set_amplitude(0b100, x.a().component(3).clone());
    state.set_amplitude(0b110, x.b().component(1).clone());
    state.set_amplitude(0b101, x.b().component(2).clone());
    state.set_amplitude(0b011, x.b().component(3).clone());
    state
}

/// A-slot `m` holds the amplitude of the one-hot string with the 1 on
/// qubit 4−m, so a rank-one A concentrated in slot m means qubit 4−m
/// is the separated one.
fn separated_qubit_of_slot(slot: usize) -> SeparatedQubit {
    SeparatedQubit::from_position(4 - slot).expect("slot in 1..=3")
}

/// Classifies a state by triple-system rank, with the biseparable label
/// taken from the flattening-rank oracle.
pub fn classify(state: &QubitState) -> Result<EntanglementClass> {
    if state.qubit_count() != 3 {
        return Err(Error::WrongQubitCount {
            expected: 3,
            got: state.qubit_count(),
        });
    }
    if state.is_zero_state() {
        return Ok(EntanglementClass::Null);
    }
    let x = state_to_fts(state)?;
    match crate::fts::fts_rank(&x) {
        FtsRank::Zero => Ok(EntanglementClass::Null),
        FtsRank::One => Ok(EntanglementClass::Separable),
        FtsRank::Two => {
            let ranks = local_ranks(state)?;
            let separated: Vec<usize> = (1..=3).filter(|&i| ranks[i - 1] == 1).collect();
            match separated.as_slice() {
                [position] => Ok(EntanglementClass::Biseparable(
                    SeparatedQubit::from_position(*position).unwrap(),
                )),
                _ => Err(Error::Internal(format!(
                    "rank 2 with flattening pattern {ranks:?}"
                ))),
            }
        }
        FtsRank::Three => Ok(EntanglementClass::W),
        FtsRank::Four => Ok(EntanglementClass::Ghz(quartic_norm(&x))),
    }
}

/// Reduces a nonzero 3-qubit state to the canonical form (1, 0, A, 0)
/// by the constructive four-case argument, recording every generator.
///
/// The transcript never exceeds seven generators; identity steps are
/// skipped, so states already in reduced form are fixed points.
pub fn reduce_canonical(state: &QubitState) -> Result<ReductionResult> {
    let start = state_to_fts(state)?;
    if start.is_zero() {
        return Err(Error::ZeroState);
    }
    let scale = start.scale();
    let mut x = start;
    let mut transcript: Vec<FtsGenerator> = Vec::new();
    let apply = |x: &mut FtsElement, transcript: &mut Vec<FtsGenerator>, g: FtsGenerator| {
        *x = apply_generator(&g, x).expect("generator parameters validated");
        transcript.push(g);
    };

    let already_front = x.alpha().is_one_scaled(scale) && x.b().is_zero_scaled(scale);
    if !already_front {
        // Step 1: make B nonzero.
        if x.b().is_zero_scaled(scale) {
            if !x.a().is_zero_scaled(scale) {
                apply(&mut x, &mut transcript, FtsGenerator::Zed);
            } else {
                if x.alpha().is_zero_scaled(scale) {
                    apply(&mut x, &mut transcript, FtsGenerator::Zed);
                }
                apply(&mut x, &mut transcript, FtsGenerator::Psi(JordanElement::basis(1)));
            }
        }
        // Step 2: drive α to 1 through the smallest nonzero B-slot.
        if !x.alpha().is_one_scaled(scale) {
            let pivot = (1..=3)
                .find(|&k| !x.b().component(k).is_zero_scaled(scale))
                .ok_or_else(|| Error::Internal("step 1 left B zero".into()))?;
            let coefficient = (Scalar::one() - x.alpha()) / x.b().component(pivot);
            apply(
                &mut x,
                &mut transcript,
                FtsGenerator::Phi(JordanElement::one_hot(pivot, coefficient)),
            );
        }
        // Step 3: absorb B.
        if !x.b().is_zero_scaled(scale) {
            let d = x.b().neg();
            apply(&mut x, &mut transcript, FtsGenerator::Psi(d));
        }
    }

    // Step 4: eliminate β, walking up the Jordan rank of A.
    while !x.beta().is_zero_scaled(scale) {
        match jordan_rank(x.a()) {
            JordanRank::Zero => {
                // (i) seed a rank-one A
                apply(&mut x, &mut transcript, FtsGenerator::Phi(JordanElement::basis(1)));
            }
            JordanRank::One => {
                // (ii) raise A to rank two; the φ leaves A×C in the B-slot
                let occupied = (1..=3)
                    .find(|&k| !x.a().component(k).is_zero_scaled(scale))
                    .expect("rank one");
                let free = (1..=3).find(|&m| m != occupied).expect("two other slots");
                apply(&mut x, &mut transcript, FtsGenerator::Phi(JordanElement::basis(free)));
                let d = x.b().neg();
                apply(&mut x, &mut transcript, FtsGenerator::Psi(d));
            }
            JordanRank::Two | JordanRank::Three => {
                // (iii)/(iv) cancel β against a pair of nonzero slots
                let nonzero: Vec<usize> = (1..=3)
                    .filter(|&k| !x.a().component(k).is_zero_scaled(scale))
                    .collect();
                let (p, q, r) = if nonzero.len() == 2 {
                    let r = (1..=3).find(|k| !nonzero.contains(k)).unwrap();
                    (nonzero[0], nonzero[1], r)
                } else {
                    (2, 3, 1)
                };
                let denominator =
                    Scalar::from_int(2) * x.a().component(p) * x.a().component(q);
                let coefficient = x.beta() / &denominator;
                apply(
                    &mut x,
                    &mut transcript,
                    FtsGenerator::Phi(JordanElement::one_hot(r, coefficient)),
                );
                let d = x.b().neg();
                apply(&mut x, &mut transcript, FtsGenerator::Psi(d));
            }
        }
    }

    if !(x.alpha().is_one_scaled(scale)
        && x.beta().is_zero_scaled(scale)
        && x.b().is_zero_scaled(scale))
    {
        return Err(Error::Internal(format!(
            "reduction did not reach (1, 0, A, 0): {x}"
        )));
    }

    let a_rank = jordan_rank(x.a());
    let rank = rank_of_reduced(a_rank);
    let class = class_of_reduced(x.a(), a_rank);
    Ok(ReductionResult {
        canonical: x,
        transcript,
        rank,
        class,
    })
}

/// Class of a reduced form (1, 0, A, 0) from the Jordan rank of A.
fn class_of_reduced(a: &JordanElement, a_rank: JordanRank) -> EntanglementClass {
    match a_rank {
        JordanRank::Zero => EntanglementClass::Separable,
        JordanRank::One => {
            let scale = a.scale();
            let slot = (1..=3)
                .find(|&k| !a.component(k).is_zero_scaled(scale))
                .expect("rank one");
            EntanglementClass::Biseparable(separated_qubit_of_slot(slot))
        }
        JordanRank::Two => EntanglementClass::W,
        JordanRank::Three => {
            let q = cubic_norm(a) * Scalar::from_int(-8);
            EntanglementClass::Ghz(q)
        }
    }
}

/// Scales a reduced form onto the literal table representative.
///
/// A norm-preserving torus element (c₁c₂c₃ = 1) turns the nonzero slots
/// of A into ones — except the last slot in the rank-four case, which
/// becomes k = N(A) = −q/8 — and a qubit permutation moves the support to
/// the table's layout. Returns the representative and k (zero below rank
/// four).
pub fn normalize_representative(reduction: &ReductionResult) -> Result<(FtsElement, Scalar)> {
    let x = &reduction.canonical;
    let scale = x.scale();
    if !(x.alpha().is_one_scaled(scale)
        && x.beta().is_zero_scaled(scale)
        && x.b().is_zero_scaled(scale))
    {
        return Err(Error::NotReducedForm);
    }
    let a = x.a();
    let one = Scalar::one();
    let (torus, slot_map, k): ((Scalar, Scalar, Scalar), [usize; 3], Scalar) =
        match jordan_rank(a) {
            JordanRank::Zero => return Ok((x.clone(), Scalar::zero())),
            JordanRank::One => {
                let m = (1..=3)
                    .find(|&k| !a.component(k).is_zero_scaled(scale))
                    .expect("rank one");
                let mut c = [one.clone(), one.clone(), one.clone()];
                c[m - 1] = a.component(m).checked_inv().expect("nonzero slot");
                let other = (1..=3).find(|&j| j != m).unwrap();
                c[other - 1] = a.component(m).clone();
                // move the single occupied slot to slot 3 (state |111⟩+|100⟩)
                let mut map = [0usize; 3];
                map[m - 1] = 3;
                let mut next = 1;
                for j in 1..=3 {
                    if j != m {
                        map[j - 1] = next;
                        next += 1;
                    }
                }
                ((c[0].clone(), c[1].clone(), c[2].clone()), map, Scalar::zero())
            }
            JordanRank::Two => {
                let occupied: Vec<usize> = (1..=3)
                    .filter(|&k| !a.component(k).is_zero_scaled(scale))
                    .collect();
                let (p, q) = (occupied[0], occupied[1]);
                let r = (1..=3).find(|k| !occupied.contains(k)).unwrap();
                let mut c = [one.clone(), one.clone(), one.clone()];
                c[p - 1] = a.component(p).checked_inv().expect("nonzero");
                c[q - 1] = a.component(q).checked_inv().expect("nonzero");
                c[r - 1] = a.component(p) * a.component(q);
                // occupied slots to 1 and 2 (state |111⟩+|001⟩+|010⟩)
                let mut map = [0usize; 3];
                map[p - 1] = 1;
                map[q - 1] = 2;
                map[r - 1] = 3;
                ((c[0].clone(), c[1].clone(), c[2].clone()), map, Scalar::zero())
            }
            JordanRank::Three => {
                let c1 = a.component(1).checked_inv().expect("nonzero");
                let c2 = a.component(2).checked_inv().expect("nonzero");
                let c3 = a.component(1) * a.component(2);
                let k = cubic_norm(a);
                ((c1, c2, c3), [1, 2, 3], k)
            }
        };

    let scaled = apply_generator(
        &FtsGenerator::Tau(torus.0, torus.1, torus.2),
        x,
    )?;
    let normalized = permute_fts_slots(&scaled, &slot_map)?;
    Ok((normalized, k))
}

/// Permutes the Jordan slots of an element by acting with the matching
/// qubit permutation on the amplitudes (slot k sits on qubit 4−k).
fn permute_fts_slots(x: &FtsElement, slot_map: &[usize; 3]) -> Result<FtsElement> {
    let mut qubit_perm = [0usize; 3];
    for (slot, &target) in slot_map.iter().enumerate() {
        qubit_perm[4 - (slot + 1) - 1] = 4 - target;
    }
    let state = fts_to_state(x);
    state_to_fts(&state.permute_qubits(&qubit_perm)?)
}

/// The literal table representative of a class (zero state for Null).
pub fn representative(class: &EntanglementClass) -> QubitState {
    let mut state = QubitState::zero(3);
    match class {
        EntanglementClass::Null => {}
        EntanglementClass::Separable => {
            state.set_amplitude(0b111, Scalar::one());
        }
        EntanglementClass::Biseparable(qubit) => {
            state.set_amplitude(0b111, Scalar::one());
            let index = match qubit {
                SeparatedQubit::A => 0b100,
                SeparatedQubit::B => 0b010,
                SeparatedQubit::C => 0b001,
            };
            state.set_amplitude(index, Scalar::one());
        }
        EntanglementClass::W => {
            state.set_amplitude(0b111, Scalar::one());
            state.set_amplitude(0b001, Scalar::one());
            state.set_amplitude(0b010, Scalar::one());
        }
        EntanglementClass::Ghz(q) => {
            state.set_amplitude(0b111, Scalar::one());
            state.set_amplitude(0b001, Scalar::one());
            state.set_amplitude(0b010, Scalar::one());
            let k = q / &Scalar::from_int(-8);
            state.set_amplitude(0b100, k);
        }
    }
    state
}
