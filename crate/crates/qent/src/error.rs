//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by library operations.
///
/// Every algebraic operation on well-formed inputs is total; errors only
/// arise from precondition violations (zero states, singular matrices,
/// degenerate transformation parameters) or from structural mismatches.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// An operation that requires a fixed qubit count got something else.
    #[error("expected a {expected}-qubit state, got {got} qubits")]
    WrongQubitCount { expected: usize, got: usize },

    /// Qubit counts of two states disagree.
    #[error("qubit counts differ: {left} vs {right}")]
    MismatchedQubitCount { left: usize, right: usize },

    /// The zero state was passed where a nonzero state is required.
    #[error("operation is undefined on the zero state")]
    ZeroState,

    /// A local SLOCC matrix is singular.
    #[error("local matrix for qubit {qubit} is singular")]
    SingularMatrix { qubit: usize },

    /// A torus transformation was built with a zero scaling parameter.
    #[error("scaling parameter {index} is zero; torus elements must be invertible")]
    ZeroScalingParameter { index: usize },

    /// A qubit permutation is not a bijection on 1..=n.
    #[error("invalid qubit permutation {perm:?} for {n} qubits")]
    InvalidPermutation { perm: Vec<usize>, n: usize },

    /// A transformation carries the wrong number of per-qubit parameters.
    #[error("transformation has {got} parameters but the state has {expected} qubits")]
    WrongParameterCount { expected: usize, got: usize },

    /// An element expected in reduced canonical form (1, 0, A, 0) is not.
    #[error("element is not in reduced canonical form (1, 0, A, 0)")]
    NotReducedForm,

    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
