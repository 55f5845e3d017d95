//! Qubit entanglement classification through the Freudenthal triple
//! system, and the non-local game that tells W from GHZ apart.
//!
//! The crate has three layers:
//!
//! * **Algebra** — [`scalar`] (exact rational-complex and approximate
//!   f64 backends), [`jordan`] (the cubic Jordan algebra ℂ⊕ℂ⊕ℂ) and
//!   [`fts`] (the Freudenthal triple system over it: symplectic form,
//!   quartic form, triple product, rank, automorphism generators).
//! * **Classification** — [`state`] (amplitude-indexed states, local
//!   SLOCC action, flattening ranks, the Cayley hyperdeterminant) and
//!   [`mod@classify`] (the amplitude ↔ triple-system dictionary, rank-based
//!   entanglement classes, the constructive reduction to (1, 0, A, 0)
//!   with replayable transcripts). [`symtensor`] generalizes the
//!   machinery to n qubits via permutation-closed symmetric tensors.
//! * **Game** — [`game`]: the three-player referee, exhaustive classical
//!   analysis, exact quantum strategy evaluation and a seeded
//!   coordinate-ascent search over measurement bases.
//!
//! Classification defaults to the exact backend, where every rank
//! decision is a decidable zero test; the game runs on doubles.

pub mod classify;
pub mod error;
pub mod fts;
pub mod game;
pub mod jordan;
pub mod scalar;
pub mod state;
pub mod symtensor;

pub use classify::{
    classify, fts_to_state, normalize_representative, reduce_canonical, representative,
    state_to_fts, EntanglementClass, ReductionResult, SeparatedQubit,
};
pub use error::{Error, Result};
pub use fts::{
    apply_generator, apply_word, fts_rank, is_automorphism_witness, quartic_norm,
    quartic_polarized, symplectic_form, triple_product, upsilon, FtsElement, FtsGenerator,
    FtsRank,
};
pub use game::{
    best_classical, classical_win_probability, ghz_strategy, optimize_strategy,
    quantum_win_probability, sample_win_probability, BasisAngles, ClassicalStrategy, GameSpec,
    MeasurementStrategy,
};
pub use jordan::{
    cross, cubic_norm, jordan_product, jordan_product_generic, jordan_rank, sharp, spur,
    str_transform, trace_form, trace_unary, trilinear_norm, JordanElement, JordanRank,
};
pub use scalar::{Scalar, EPSILON_ZERO};
pub use state::{
    bits_to_index, cayley_hyperdet, index_to_bits, local_ranks, LocalMatrix, QubitState,
};
pub use symtensor::{
    apply_ntransform, apply_nword, bilinear_invariant, dualize, front_normalize,
    two_qubit_reduce, NTransform, SymTensorState, TwoQubitReduction,
};
