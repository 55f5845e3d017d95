//! State documents: the JSON schema shared by every subcommand.
//!
//! ```json
//! {
//!   "n": 3,
//!   "mode": "exact",
//!   "amplitudes": [
//!     {"index": "000", "re": "1/1", "im": "0/1"},
//!     {"index": "111", "re": "1/1", "im": "0/1"}
//!   ]
//! }
//! ```
//!
//! Exact values are "p/q" strings; approximate values are JSON numbers.
//! Omitted indices are zero. Requesting exact mode on a document carrying
//! decimal numbers is a validation error — there is no silent coercion in
//! that direction (rationals in an approximate document are converted).

use serde::{Deserialize, Serialize};
use serde_json::json;

use qent::scalar::{parse_rational, rational_string, Scalar};
use qent::state::{bits_to_index, index_to_bits, QubitState};

use crate::CliError;

/// Scalar backend requested for a document.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Approx,
}

impl Mode {
    pub fn parse(text: &str) -> Result<Mode, CliError> {
        match text {
            "exact" => Ok(Mode::Exact),
            "approx" => Ok(Mode::Approx),
            other => Err(CliError::validation(format!(
                "mode must be \"exact\" or \"approx\", got \"{other}\""
            ))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Approx => "approx",
        }
    }
}

/// One amplitude component: a "p/q" string (exact) or a decimal.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum NumberOrRational {
    Rational(String),
    Decimal(f64),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct AmplitudeRecord {
    pub index: String,
    pub re: NumberOrRational,
    pub im: NumberOrRational,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct StateDocument {
    pub n: usize,
    pub mode: String,
    pub amplitudes: Vec<AmplitudeRecord>,
}

/// The "p/q" text of a component, or a validation error for decimals.
fn rational_text<'a>(
    value: &'a NumberOrRational,
    index: &str,
    part: &str,
) -> Result<&'a str, CliError> {
    match value {
        NumberOrRational::Rational(text) => {
            if parse_rational(text).is_none() {
                return Err(CliError::validation(format!(
                    "amplitude \"{index}\": malformed rational {part} value \"{text}\""
                )));
            }
            Ok(text)
        }
        NumberOrRational::Decimal(_) => Err(CliError::validation(format!(
            "amplitude \"{index}\": decimal {part} value in exact mode (use \"p/q\" strings)"
        ))),
    }
}

/// The double value of a component (rationals are converted).
fn decimal_value(value: &NumberOrRational, index: &str, part: &str) -> Result<f64, CliError> {
    match value {
        NumberOrRational::Decimal(v) => Ok(*v),
        NumberOrRational::Rational(text) => Scalar::exact_from_strings(text, "0")
            .map(|s| s.to_f64_parts().0)
            .ok_or_else(|| {
                CliError::validation(format!(
                    "amplitude \"{index}\": malformed rational {part} value \"{text}\""
                ))
            }),
    }
}

/// Parses and validates a document, producing a state in the requested
/// backend. `mode_override` comes from `--mode` and wins over the
/// document's own mode field.
pub fn parse_state(
    text: &str,
    mode_override: Option<Mode>,
) -> Result<(QubitState, Mode), CliError> {
    let document: StateDocument = serde_json::from_str(text)
        .map_err(|e| CliError::validation(format!("malformed state document: {e}")))?;
    let mode = match mode_override {
        Some(mode) => mode,
        None => Mode::parse(&document.mode)?,
    };
    if document.n == 0 || document.n > 20 {
        return Err(CliError::validation(format!(
            "qubit count n = {} out of supported range 1..=20",
            document.n
        )));
    }
    let mut state = QubitState::zero(document.n);
    let mut seen = std::collections::BTreeSet::new();
    for record in &document.amplitudes {
        let index = bits_to_index(&record.index, document.n).ok_or_else(|| {
            CliError::validation(format!(
                "amplitude index \"{}\" is not a {}-bit string",
                record.index, document.n
            ))
        })?;
        if !seen.insert(index) {
            return Err(CliError::validation(format!(
                "duplicate amplitude index \"{}\"",
                record.index
            )));
        }
        let value = match mode {
            Mode::Exact => {
                let re = rational_text(&record.re, &record.index, "re")?;
                let im = rational_text(&record.im, &record.index, "im")?;
                Scalar::exact_from_strings(re, im).expect("components validated")
            }
            Mode::Approx => Scalar::approx(
                decimal_value(&record.re, &record.index, "re")?,
                decimal_value(&record.im, &record.index, "im")?,
            ),
        };
        state.set_amplitude(index, value);
    }
    Ok((state, mode))
}

/// Serializes a scalar as a string: "p/q" (exact) or a decimal rendering,
/// with an "…i" term appended for nonzero imaginary parts.
pub fn scalar_string(s: &Scalar) -> String {
    s.to_string()
}

/// Serializes a state back into the document schema.
pub fn state_document(state: &QubitState) -> serde_json::Value {
    let mode = if state.has_approx_amplitudes() {
        Mode::Approx
    } else {
        Mode::Exact
    };
    let amplitudes: Vec<serde_json::Value> = state
        .entries()
        .map(|(index, value)| {
            let (re, im) = scalar_parts(value);
            json!({
                "index": index_to_bits(index, state.qubit_count()),
                "re": re,
                "im": im,
            })
        })
        .collect();
    json!({
        "n": state.qubit_count(),
        "mode": mode.as_str(),
        "amplitudes": amplitudes,
    })
}

/// The (re, im) pair of a scalar as JSON values in its own backend.
pub fn scalar_parts(s: &Scalar) -> (serde_json::Value, serde_json::Value) {
    match s {
        Scalar::Exact { re, im } => (
            serde_json::Value::String(rational_string(re)),
            serde_json::Value::String(rational_string(im)),
        ),
        Scalar::Approx { re, im } => (json!(re), json!(im)),
    }
}
