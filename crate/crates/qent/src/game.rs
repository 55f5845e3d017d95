//! The three-player non-local game that separates W from GHZ.
//!
//! The referee draws a question triple rst uniformly from
//! {000, 011, 101, 110} and sends one bit to each player; the players
//! answer with bits a, b, c and win when r∨s∨t = a⊕b⊕c. Adding the four
//! constraint equations mod 2 gives 0 = 1, so no classical strategy wins
//! all four; answering 1 everywhere wins three, and exhaustive enumeration
//! confirms 3/4 is the classical optimum.
//!
//! Quantum players sharing ½(|000⟩−|011⟩−|101⟩−|110⟩) win always:
//! measure in the computational basis on question 0 and the Hadamard
//! basis on question 1. Win probabilities are computed by exact
//! enumeration over the four question triples and eight outcomes — no
//! sampling — so the values carry only floating-point error.
//!
//! [`optimize_strategy`] searches over arbitrary per-player, per-question
//! measurement bases (two angles each, twelve parameters total) with
//! seeded random-restart coordinate ascent. It recovers the perfect GHZ
//! strategy and stays measurably below 1 on the W state.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::state::QubitState;

/// Fixed rules of the game: question/answer alphabets, admissible
/// question triples with uniform weight, and the win predicate.
#[derive(Clone, Copy, Debug, Default)]
pub struct GameSpec;

impl GameSpec {
    /// The admissible question triples, each with weight 1/4.
    pub const QUESTION_TRIPLES: [[u8; 3]; 4] = [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]];

    /// Uniform weight of each question triple.
    pub fn weight() -> Scalar {
        Scalar::from_ratio(1, 4)
    }

    /// Win predicate r∨s∨t = a⊕b⊕c.
    pub fn wins(questions: [u8; 3], answers: [u8; 3]) -> bool {
        let disjunction = questions[0] | questions[1] | questions[2];
        let parity = answers[0] ^ answers[1] ^ answers[2];
        disjunction == parity
    }
}

/// Deterministic classical strategy: one response function per player.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassicalStrategy {
    /// `responses[player][question]` ∈ {0, 1}.
    pub responses: [[u8; 2]; 3],
}

impl ClassicalStrategy {
    /// The strategy encoded by the low six bits of `code`
    /// (player-major, question-minor).
    pub fn from_code(code: u8) -> Self {
        let mut responses = [[0u8; 2]; 3];
        for (player, row) in responses.iter_mut().enumerate() {
            for (question, cell) in row.iter_mut().enumerate() {
                *cell = (code >> (player * 2 + question)) & 1;
            }
        }
        ClassicalStrategy { responses }
    }

    /// Everyone always answers 1.
    pub fn all_ones() -> Self {
        ClassicalStrategy {
            responses: [[1, 1]; 3],
        }
    }
}

/// Exact winning probability of a classical strategy: the fraction of the
/// four weighted question triples whose constraint equation is satisfied.
pub fn classical_win_probability(strategy: &ClassicalStrategy) -> Scalar {
    let satisfied = GameSpec::QUESTION_TRIPLES
        .iter()
        .filter(|questions| {
            let answers = [
                strategy.responses[0][questions[0] as usize],
                strategy.responses[1][questions[1] as usize],
                strategy.responses[2][questions[2] as usize],
            ];
            GameSpec::wins(**questions, answers)
        })
        .count();
    Scalar::from_ratio(satisfied as i64, 4)
}

/// Exhausts all 64 deterministic strategies; returns the exact maximum
/// winning probability and every strategy attaining it.
pub fn best_classical() -> (Scalar, Vec<ClassicalStrategy>) {
    let mut best_count = 0usize;
    let mut witnesses = Vec::new();
    for code in 0u8..64 {
        let strategy = ClassicalStrategy::from_code(code);
        let satisfied = GameSpec::QUESTION_TRIPLES
            .iter()
            .filter(|questions| {
                let answers = [
                    strategy.responses[0][questions[0] as usize],
                    strategy.responses[1][questions[1] as usize],
                    strategy.responses[2][questions[2] as usize],
                ];
                GameSpec::wins(**questions, answers)
            })
            .count();
        if satisfied > best_count {
            best_count = satisfied;
            witnesses.clear();
        }
        if satisfied == best_count {
            witnesses.push(strategy);
        }
    }
    (Scalar::from_ratio(best_count as i64, 4), witnesses)
}

/// A single-qubit orthonormal measurement basis parameterized by two
/// angles: outcome 0 ↦ cosθ|0⟩ + e^{iφ}sinθ|1⟩,
/// outcome 1 ↦ −e^{−iφ}sinθ|0⟩ + cosθ|1⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasisAngles {
    pub theta: f64,
    pub phi: f64,
}

impl BasisAngles {
    pub fn computational() -> Self {
        BasisAngles { theta: 0.0, phi: 0.0 }
    }

    pub fn hadamard() -> Self {
        BasisAngles {
            theta: std::f64::consts::FRAC_PI_4,
            phi: 0.0,
        }
    }

    /// Coefficients of the basis vector for `outcome` on (|0⟩, |1⟩).
    pub fn vector(&self, outcome: u8) -> [Complex64; 2] {
        let (sin, cos) = self.theta.sin_cos();
        let phase = Complex64::new(self.phi.cos(), self.phi.sin());
        if outcome == 0 {
            [Complex64::new(cos, 0.0), phase * sin]
        } else {
            [-phase.conj() * sin, Complex64::new(cos, 0.0)]
        }
    }
}

/// Per-player, per-question measurement bases.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementStrategy {
    /// `bases[player][question]`.
    pub bases: [[BasisAngles; 2]; 3],
}

impl MeasurementStrategy {
    /// Computational basis on question 0, Hadamard basis on question 1,
    /// for every player.
    pub fn computational_hadamard() -> Self {
        MeasurementStrategy {
            bases: [[BasisAngles::computational(), BasisAngles::hadamard()]; 3],
        }
    }

    /// The twelve angles as a flat vector (player-major, question-next,
    /// θ before φ); the order used for coordinate ascent and tie-breaks.
    pub fn to_angles(&self) -> [f64; 12] {
        let mut out = [0.0; 12];
        for player in 0..3 {
            for question in 0..2 {
                let b = self.bases[player][question];
                out[player * 4 + question * 2] = b.theta;
                out[player * 4 + question * 2 + 1] = b.phi;
            }
        }
        out
    }

    pub fn from_angles(angles: &[f64; 12]) -> Self {
        let mut bases = [[BasisAngles::computational(); 2]; 3];
        for player in 0..3 {
            for question in 0..2 {
                bases[player][question] = BasisAngles {
                    theta: angles[player * 4 + question * 2],
                    phi: angles[player * 4 + question * 2 + 1],
                };
            }
        }
        MeasurementStrategy { bases }
    }
}

fn dense_amplitudes(state: &QubitState) -> Result<[Complex64; 8]> {
    if state.qubit_count() != 3 {
        return Err(Error::WrongQubitCount {
            expected: 3,
            got: state.qubit_count(),
        });
    }
    let mut amps = [Complex64::new(0.0, 0.0); 8];
    for (index, value) in state.entries() {
        let (re, im) = value.to_f64_parts();
        amps[index as usize] = Complex64::new(re, im);
    }
    Ok(amps)
}

fn win_probability_dense(amps: &[Complex64; 8], norm_squared: f64, m: &MeasurementStrategy) -> f64 {
    let mut total = 0.0;
    for questions in GameSpec::QUESTION_TRIPLES {
        for outcome_code in 0u8..8 {
            let answers = [outcome_code >> 2 & 1, outcome_code >> 1 & 1, outcome_code & 1];
            if !GameSpec::wins(questions, answers) {
                continue;
            }
            let vectors = [
                m.bases[0][questions[0] as usize].vector(answers[0]),
                m.bases[1][questions[1] as usize].vector(answers[1]),
                m.bases[2][questions[2] as usize].vector(answers[2]),
            ];
            let mut overlap = Complex64::new(0.0, 0.0);
            for (index, amp) in amps.iter().enumerate() {
                let bits = [index >> 2 & 1, index >> 1 & 1, index & 1];
                let product =
                    vectors[0][bits[0]] * vectors[1][bits[1]] * vectors[2][bits[2]];
                overlap += product.conj() * amp;
            }
            total += 0.25 * overlap.norm_sqr();
        }
    }
    total / norm_squared
}

/// Winning probability of measuring `state` with the bases in `m`,
/// by exact enumeration over question triples and outcomes.
///
/// The state is normalized internally; the zero state is an error.
pub fn quantum_win_probability(state: &QubitState, m: &MeasurementStrategy) -> Result<f64> {
    let amps = dense_amplitudes(state)?;
    let norm_squared: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if norm_squared == 0.0 {
        return Err(Error::ZeroState);
    }
    Ok(win_probability_dense(&amps, norm_squared, m))
}

/// The perfect pair: the state ½(|000⟩−|011⟩−|101⟩−|110⟩) and the
/// computational/Hadamard basis assignment.
pub fn ghz_strategy() -> (QubitState, MeasurementStrategy) {
    let mut state = QubitState::zero(3);
    state.set_amplitude(0b000, Scalar::approx(0.5, 0.0));
    state.set_amplitude(0b011, Scalar::approx(-0.5, 0.0));
    state.set_amplitude(0b101, Scalar::approx(-0.5, 0.0));
    state.set_amplitude(0b110, Scalar::approx(-0.5, 0.0));
    (state, MeasurementStrategy::computational_hadamard())
}

/// Monte-Carlo estimate of the winning probability, for demonstration
/// only — every tested value in this crate uses the exact enumeration.
///
/// Draws `shots` rounds (question triple, then an outcome from the Born
/// distribution) from a seeded generator and returns the win frequency
/// with a 95% normal-approximation binomial confidence interval.
pub fn sample_win_probability(
    state: &QubitState,
    m: &MeasurementStrategy,
    shots: usize,
    seed: u64,
) -> Result<(f64, (f64, f64))> {
    let amps = dense_amplitudes(state)?;
    let norm_squared: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if norm_squared == 0.0 {
        return Err(Error::ZeroState);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut wins = 0usize;
    for _ in 0..shots.max(1) {
        let questions = GameSpec::QUESTION_TRIPLES[rng.random_range(0..4)];
        // Born distribution over the eight answer triples
        let mut draw = rng.random_range(0.0..1.0) * norm_squared;
        let mut answers = [1u8; 3];
        'outcomes: for outcome_code in 0u8..8 {
            let candidate = [outcome_code >> 2 & 1, outcome_code >> 1 & 1, outcome_code & 1];
            let vectors = [
                m.bases[0][questions[0] as usize].vector(candidate[0]),
                m.bases[1][questions[1] as usize].vector(candidate[1]),
                m.bases[2][questions[2] as usize].vector(candidate[2]),
            ];
            let mut overlap = Complex64::new(0.0, 0.0);
            for (index, amp) in amps.iter().enumerate() {
                let bits = [index >> 2 & 1, index >> 1 & 1, index & 1];
                overlap +=
                    (vectors[0][bits[0]] * vectors[1][bits[1]] * vectors[2][bits[2]]).conj() * amp;
            }
            draw -= overlap.norm_sqr();
            if draw <= 0.0 {
                answers = candidate;
                break 'outcomes;
            }
        }
        if GameSpec::wins(questions, answers) {
            wins += 1;
        }
    }
    let shots = shots.max(1) as f64;
    let estimate = wins as f64 / shots;
    let half_width = 1.96 * (estimate * (1.0 - estimate) / shots).sqrt();
    Ok((
        estimate,
        (
            (estimate - half_width).max(0.0),
            (estimate + half_width).min(1.0),
        ),
    ))
}

const GRID_POINTS: usize = 64;
const SWEEP_TOLERANCE: f64 = 1e-9;
const MAX_SWEEPS: usize = 500;
const GOLDEN_ITERATIONS: usize = 60;

fn golden_section_max(
    mut eval: impl FnMut(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
) -> (f64, f64) {
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = eval(x1);
    let mut f2 = eval(x2);
    for _ in 0..GOLDEN_ITERATIONS {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = eval(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = eval(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximizes the winning probability over the twelve basis angles by
/// random-restart cyclic coordinate ascent: each coordinate update scans a
/// 64-point grid over [0, 2π) and refines the best cell by golden-section
/// search, sweeps repeat until a full sweep improves by less than 1e-9,
/// and the best restart wins (exact value ties broken by the
/// lexicographically smallest angle vector).
///
/// Deterministic for fixed `(restarts, seed)`.
pub fn optimize_strategy(
    state: &QubitState,
    restarts: usize,
    seed: u64,
) -> Result<(f64, MeasurementStrategy)> {
    let amps = dense_amplitudes(state)?;
    let norm_squared: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if norm_squared == 0.0 {
        return Err(Error::ZeroState);
    }
    let tau = 2.0 * std::f64::consts::PI;
    let eval = |angles: &[f64; 12]| {
        win_probability_dense(&amps, norm_squared, &MeasurementStrategy::from_angles(angles))
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_value = f64::NEG_INFINITY;
    let mut best_angles = [0.0f64; 12];

    for _ in 0..restarts.max(1) {
        let mut angles = [0.0f64; 12];
        for angle in angles.iter_mut() {
            *angle = rng.random_range(0.0..tau);
        }
        let mut value = eval(&angles);
        for _ in 0..MAX_SWEEPS {
            let sweep_start = value;
            for coordinate in 0..12 {
                let original = angles[coordinate];
                let mut coord_best = (original, value);
                for step in 0..GRID_POINTS {
                    let candidate = step as f64 * tau / GRID_POINTS as f64;
                    angles[coordinate] = candidate;
                    let v = eval(&angles);
                    if v > coord_best.1 {
                        coord_best = (candidate, v);
                    }
                }
                let spacing = tau / GRID_POINTS as f64;
                let (refined, refined_value) = golden_section_max(
                    |x| {
                        angles[coordinate] = x;
                        eval(&angles)
                    },
                    coord_best.0 - spacing,
                    coord_best.0 + spacing,
                );
                if refined_value > coord_best.1 {
                    coord_best = (refined, refined_value);
                }
                angles[coordinate] = coord_best.0;
                value = coord_best.1;
            }
            if value - sweep_start < SWEEP_TOLERANCE {
                break;
            }
        }
        if value > best_value || (value == best_value && angles < best_angles) {
            best_value = value;
            best_angles = angles;
        }
    }

    Ok((best_value, MeasurementStrategy::from_angles(&best_angles)))
}
