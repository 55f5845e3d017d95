//! Command-line front end: classification, reduction, invariants,
//! n-qubit operations and the three-player game, with a single JSON
//! result document per invocation on standard output.
//!
//! Exit codes: 0 on success, 2 on input validation errors (including
//! unknown subcommands and flags), 1 on internal invariant violations.
//! Diagnostics go to standard error; nothing is written to standard
//! output on failure.

pub mod document;

use std::io::Write;

use serde_json::{json, Value};

use document::{parse_state, scalar_parts, scalar_string, state_document, Mode};
use qent::classify::{classify, fts_to_state, reduce_canonical, state_to_fts};
use qent::fts::{apply_word, fts_rank, quartic_norm, FtsGenerator};
use qent::game::{
    best_classical, ghz_strategy, optimize_strategy, quantum_win_probability,
    MeasurementStrategy,
};
use qent::jordan::cubic_norm;
use qent::scalar::Scalar;
use qent::state::{cayley_hyperdet, local_ranks, QubitState};
use qent::symtensor::{two_qubit_reduce, NTransform, SymTensorState};
use qent::{EntanglementClass, FtsRank};

/// Errors surfaced to the user, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit code 2.
    Validation(String),
    /// Unknown command or flag: exit code 2 plus the usage text.
    Usage(String),
    /// A library invariant failed: exit code 1.
    Internal(String),
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        CliError::Validation(message.into())
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError::Internal(message.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Usage(_) => 2,
            CliError::Internal(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Usage(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<qent::Error> for CliError {
    fn from(e: qent::Error) -> Self {
        match e {
            qent::Error::Internal(m) => CliError::Internal(m),
            other => CliError::Validation(other.to_string()),
        }
    }
}

const USAGE: &str = "\
usage: qent [--mode exact|approx] [--json|--pretty] <command>

commands:
  classify <file>                         entanglement class, rank, invariants
  reduce <file>                           canonical form with replayable transcript
  invariant <file> --which quartic|hyperdet|bilinear
  rank <file>                             triple-system rank (3 qubits)
  nqubit reduce2 <file>                   2-qubit canonical form |00> + k|11>
  game classical                          exhaustive classical analysis
  game quantum [--state ghz | <file>]     computational/Hadamard strategy value
  game optimize <file> [--restarts R] [--seed S]
  representative --class <name> [--k p/q] table state (name: null, separable,
                                          biseparable-a|b|c, w, ghz)

state documents are JSON: {\"n\": 3, \"mode\": \"exact\"|\"approx\",
\"amplitudes\": [{\"index\": \"000\", \"re\": \"1/1\"|0.5, \"im\": …}]}";

#[derive(Default)]
struct ParsedArgs {
    positionals: Vec<String>,
    mode: Option<Mode>,
    pretty: bool,
    which: Option<String>,
    state_flag: Option<String>,
    restarts: Option<usize>,
    seed: Option<u64>,
    class: Option<String>,
    k: Option<String>,
}

fn parse_args(args: &[String]) -> Result<ParsedArgs, CliError> {
    let mut parsed = ParsedArgs::default();
    let mut iter = args.iter();
    let take_value = |iter: &mut std::slice::Iter<String>, flag: &str| {
        iter.next()
            .cloned()
            .ok_or_else(|| CliError::validation(format!("flag {flag} requires a value")))
    };
    while let Some(arg) = iter.next() {
        match arg.as_str() {
            "--mode" => parsed.mode = Some(Mode::parse(&take_value(&mut iter, "--mode")?)?),
            "--json" => parsed.pretty = false,
            "--pretty" => parsed.pretty = true,
            "--which" => parsed.which = Some(take_value(&mut iter, "--which")?),
            "--state" => parsed.state_flag = Some(take_value(&mut iter, "--state")?),
            "--restarts" => {
                let value = take_value(&mut iter, "--restarts")?;
                parsed.restarts = Some(value.parse().map_err(|_| {
                    CliError::validation(format!("--restarts expects a count, got \"{value}\""))
                })?);
            }
            "--seed" => {
                let value = take_value(&mut iter, "--seed")?;
                parsed.seed = Some(value.parse().map_err(|_| {
                    CliError::validation(format!("--seed expects an integer, got \"{value}\""))
                })?);
            }
            "--class" => parsed.class = Some(take_value(&mut iter, "--class")?),
            "--k" => parsed.k = Some(take_value(&mut iter, "--k")?),
            other if other.starts_with("--") => {
                return Err(CliError::usage(format!("unknown flag {other}")));
            }
            other => parsed.positionals.push(other.to_string()),
        }
    }
    Ok(parsed)
}

fn read_state(path: &str, mode: Option<Mode>) -> Result<(QubitState, Mode), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("cannot read {path}: {e}")))?;
    parse_state(&text, mode)
}

fn class_fields(class: &EntanglementClass) -> (Value, Value) {
    let name = json!(class.name());
    let separated = match class {
        EntanglementClass::Biseparable(q) => json!(q.to_string()),
        _ => Value::Null,
    };
    (name, separated)
}

fn tolerance_warnings(mode: Mode) -> Vec<Value> {
    if mode == Mode::Approx {
        vec![json!(
            "classification on the approximate backend is tolerance-dependent"
        )]
    } else {
        Vec::new()
    }
}

fn generator_json(g: &FtsGenerator) -> Value {
    let scalar_record = |s: &Scalar| {
        let (re, im) = scalar_parts(s);
        json!({"re": re, "im": im})
    };
    let (kind, parameters): (&str, Vec<Value>) = match g {
        FtsGenerator::Phi(c) => ("phi", c.components().iter().map(scalar_record).collect()),
        FtsGenerator::Psi(d) => ("psi", d.components().iter().map(scalar_record).collect()),
        FtsGenerator::Tau(c1, c2, c3) => {
            ("tau", [c1, c2, c3].iter().map(|s| scalar_record(s)).collect())
        }
        FtsGenerator::Zed => ("zed", Vec::new()),
    };
    json!({"kind": kind, "parameters": parameters})
}

fn ntransform_json(g: &NTransform) -> Value {
    let scalar_record = |s: &Scalar| {
        let (re, im) = scalar_parts(s);
        json!({"re": re, "im": im})
    };
    let (kind, parameters): (&str, Vec<Value>) = match g {
        NTransform::PhiN(c) => ("phi", c.iter().map(scalar_record).collect()),
        NTransform::PsiN(d) => ("psi", d.iter().map(scalar_record).collect()),
        NTransform::TauN(l) => ("tau", l.iter().map(scalar_record).collect()),
        NTransform::ZedN => ("zed", Vec::new()),
    };
    json!({"kind": kind, "parameters": parameters})
}

fn strategy_json(m: &MeasurementStrategy) -> Value {
    let players: Vec<Value> = (0..3)
        .map(|p| {
            json!({
                "question0": {"theta": m.bases[p][0].theta, "phi": m.bases[p][0].phi},
                "question1": {"theta": m.bases[p][1].theta, "phi": m.bases[p][1].phi},
            })
        })
        .collect();
    json!({ "players": players })
}

fn classify_command(file: &str, mode: Option<Mode>) -> Result<Value, CliError> {
    let (state, mode) = read_state(file, mode)?;
    let class = classify(&state)?;
    let x = state_to_fts(&state)?;
    let (class_name, separated) = class_fields(&class);
    let ranks = match local_ranks(&state) {
        Ok(r) => json!(r),
        Err(qent::Error::ZeroState) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    Ok(json!({
        "command": "classify",
        "class": class_name,
        "separated_qubit": separated,
        "rank": fts_rank(&x).as_u8(),
        "quartic_norm": scalar_string(&quartic_norm(&x)),
        "hyperdeterminant": scalar_string(&cayley_hyperdet(&state)?),
        "local_ranks": ranks,
        "warnings": tolerance_warnings(mode),
    }))
}

fn reduce_command(file: &str, mode: Option<Mode>) -> Result<Value, CliError> {
    let (state, mode) = read_state(file, mode)?;
    let result = reduce_canonical(&state)?;
    // the emitted transcript must replay to the emitted amplitudes
    let replay = apply_word(&result.transcript, &state_to_fts(&state)?)?;
    if replay != result.canonical {
        return Err(CliError::internal(
            "transcript replay does not reproduce the canonical form",
        ));
    }
    let k = if result.rank == FtsRank::Four {
        cubic_norm(result.canonical.a())
    } else {
        Scalar::zero()
    };
    let (class_name, separated) = class_fields(&result.class);
    Ok(json!({
        "command": "reduce",
        "canonical": state_document(&fts_to_state(&result.canonical)),
        "transcript": result.transcript.iter().map(generator_json).collect::<Vec<_>>(),
        "rank": result.rank.as_u8(),
        "class": class_name,
        "separated_qubit": separated,
        "k": scalar_string(&k),
        "warnings": tolerance_warnings(mode),
    }))
}

fn invariant_command(file: &str, which: &str, mode: Option<Mode>) -> Result<Value, CliError> {
    let (state, mode) = read_state(file, mode)?;
    let value = match which {
        "quartic" => quartic_norm(&state_to_fts(&state)?),
        "hyperdet" => cayley_hyperdet(&state)?,
        "bilinear" => {
            let t = SymTensorState::from_amplitudes(&state);
            qent::bilinear_invariant(&t, &t)?
        }
        other => {
            return Err(CliError::validation(format!(
                "--which expects quartic, hyperdet or bilinear, got \"{other}\""
            )));
        }
    };
    Ok(json!({
        "command": "invariant",
        "which": which,
        "value": scalar_string(&value),
        "warnings": tolerance_warnings(mode),
    }))
}

fn rank_command(file: &str, mode: Option<Mode>) -> Result<Value, CliError> {
    let (state, mode) = read_state(file, mode)?;
    let rank = fts_rank(&state_to_fts(&state)?);
    Ok(json!({
        "command": "rank",
        "rank": rank.as_u8(),
        "warnings": tolerance_warnings(mode),
    }))
}

fn reduce2_command(file: &str, mode: Option<Mode>) -> Result<Value, CliError> {
    let (state, mode) = read_state(file, mode)?;
    let reduction = two_qubit_reduce(&SymTensorState::from_amplitudes(&state))?;
    Ok(json!({
        "command": "nqubit.reduce2",
        "canonical": state_document(&reduction.canonical.to_amplitudes()),
        "transcript": reduction.transcript.iter().map(ntransform_json).collect::<Vec<_>>(),
        "k": scalar_string(&reduction.k),
        "invariant": scalar_string(&reduction.invariant),
        "warnings": tolerance_warnings(mode),
    }))
}

fn game_classical_command() -> Result<Value, CliError> {
    let (best, witnesses) = best_classical();
    let maximizers: Vec<Value> = witnesses
        .iter()
        .map(|s| json!(s.responses))
        .collect();
    Ok(json!({
        "command": "game.classical",
        "value": scalar_string(&best),
        "maximizers_count": maximizers.len(),
        "maximizers": maximizers,
        "warnings": [],
    }))
}

fn game_quantum_command(parsed: &ParsedArgs) -> Result<Value, CliError> {
    let (state, source) = match (&parsed.state_flag, parsed.positionals.get(2)) {
        (Some(name), None) if name == "ghz" => (ghz_strategy().0, "ghz".to_string()),
        (Some(name), None) => {
            return Err(CliError::validation(format!(
                "--state expects \"ghz\", got \"{name}\""
            )));
        }
        (None, Some(file)) => (read_state(file, parsed.mode)?.0, file.clone()),
        _ => {
            return Err(CliError::validation(
                "game quantum expects --state ghz or a state file",
            ));
        }
    };
    let strategy = MeasurementStrategy::computational_hadamard();
    let value = quantum_win_probability(&state, &strategy)?;
    Ok(json!({
        "command": "game.quantum",
        "state": source,
        "value": value,
        "strategy": strategy_json(&strategy),
        "warnings": [],
    }))
}

fn game_optimize_command(parsed: &ParsedArgs) -> Result<Value, CliError> {
    let file = parsed.positionals.get(2).ok_or_else(|| {
        CliError::validation("game optimize expects a state file")
    })?;
    let (state, _) = read_state(file, parsed.mode)?;
    let restarts = parsed.restarts.unwrap_or(8);
    let seed = parsed.seed.unwrap_or(0);
    let (value, strategy) = optimize_strategy(&state, restarts, seed)?;
    Ok(json!({
        "command": "game.optimize",
        "restarts": restarts,
        "seed": seed,
        "value": value,
        "strategy": strategy_json(&strategy),
        "warnings": [],
    }))
}

fn representative_command(parsed: &ParsedArgs) -> Result<Value, CliError> {
    let name = parsed
        .class
        .as_deref()
        .ok_or_else(|| CliError::validation("representative requires --class <name>"))?;
    let class = match name.to_ascii_lowercase().as_str() {
        "null" => EntanglementClass::Null,
        "separable" => EntanglementClass::Separable,
        "biseparable-a" => EntanglementClass::Biseparable(qent::SeparatedQubit::A),
        "biseparable-b" => EntanglementClass::Biseparable(qent::SeparatedQubit::B),
        "biseparable-c" => EntanglementClass::Biseparable(qent::SeparatedQubit::C),
        "w" => EntanglementClass::W,
        "ghz" => {
            let k_text = parsed.k.as_deref().ok_or_else(|| {
                CliError::validation("--class ghz requires --k p/q (nonzero)")
            })?;
            let k = Scalar::exact_from_strings(k_text, "0").ok_or_else(|| {
                CliError::validation(format!("malformed rational --k value \"{k_text}\""))
            })?;
            if k.is_zero() {
                return Err(CliError::validation("--k must be nonzero for ghz"));
            }
            EntanglementClass::Ghz(k * Scalar::from_int(-8))
        }
        other => {
            return Err(CliError::validation(format!(
                "unknown class \"{other}\" (expected null, separable, biseparable-a|b|c, w, ghz)"
            )));
        }
    };
    if parsed.k.is_some() && !matches!(class, EntanglementClass::Ghz(_)) {
        return Err(CliError::validation("--k is only meaningful with --class ghz"));
    }
    let (class_name, separated) = class_fields(&class);
    Ok(json!({
        "command": "representative",
        "class": class_name,
        "separated_qubit": separated,
        "state": state_document(&qent::representative(&class)),
        "warnings": [],
    }))
}

fn dispatch(parsed: &ParsedArgs) -> Result<Value, CliError> {
    let command = parsed
        .positionals
        .first()
        .ok_or_else(|| CliError::usage("missing command".to_string()))?;
    let file_arg = |index: usize, name: &str| -> Result<&str, CliError> {
        parsed
            .positionals
            .get(index)
            .map(String::as_str)
            .ok_or_else(|| CliError::validation(format!("{name} expects a state file")))
    };
    match command.as_str() {
        "classify" => classify_command(file_arg(1, "classify")?, parsed.mode),
        "reduce" => reduce_command(file_arg(1, "reduce")?, parsed.mode),
        "invariant" => {
            let which = parsed.which.as_deref().ok_or_else(|| {
                CliError::validation(
                    "invariant requires --which quartic|hyperdet|bilinear",
                )
            })?;
            invariant_command(file_arg(1, "invariant")?, which, parsed.mode)
        }
        "rank" => rank_command(file_arg(1, "rank")?, parsed.mode),
        "nqubit" => match parsed.positionals.get(1).map(String::as_str) {
            Some("reduce2") => reduce2_command(file_arg(2, "nqubit reduce2")?, parsed.mode),
            other => Err(CliError::usage(format!(
                "unknown nqubit subcommand {other:?} (expected reduce2)"
            ))),
        },
        "game" => match parsed.positionals.get(1).map(String::as_str) {
            Some("classical") => game_classical_command(),
            Some("quantum") => game_quantum_command(parsed),
            Some("optimize") => game_optimize_command(parsed),
            other => Err(CliError::usage(format!(
                "unknown game subcommand {other:?} (expected classical, quantum, optimize)"
            ))),
        },
        "representative" => representative_command(parsed),
        other => Err(CliError::usage(format!("unknown command \"{other}\""))),
    }
}

/// Runs one invocation; returns the process exit code.
pub fn run(args: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let parsed = match parse_args(args) {
        Ok(parsed) => parsed,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            let _ = writeln!(stderr, "{USAGE}");
            return e.exit_code();
        }
    };
    match dispatch(&parsed) {
        Ok(value) => {
            let rendered = if parsed.pretty {
                serde_json::to_string_pretty(&value)
            } else {
                serde_json::to_string(&value)
            }
            .expect("result documents are valid JSON");
            let _ = writeln!(stdout, "{rendered}");
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            if matches!(e, CliError::Usage(_)) {
                let _ = writeln!(stderr, "{USAGE}");
            }
            e.exit_code()
        }
    }
}
