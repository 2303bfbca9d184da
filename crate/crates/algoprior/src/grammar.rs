//! Compact command-line notation for predictors and data sources.
//!
//! ```text
//! predictor := "uniform"
//!            | "point_mass:" sequence
//!            | "laplace:" rational
//!            | "mixture:[" rational "*" predictor ("," rational "*" predictor)* "]"
//!            | "bsol:" machine ":" L ":" T [":normalized" | ":raw"]
//! sequence  := "zeros" | "ones" | "cycle:" bits
//! source    := "fixed:" sequence | "sampled:" predictor
//! ```

use algoprior_core::{
    Budget, DataSource, MachineId, PredictorSpec, Rational, SequenceGenerator, Variant,
};

pub fn parse_predictor(text: &str) -> Result<PredictorSpec, String> {
    let spec = predictor(text.trim())?;
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

/// Sampled sources take their seed separately.
pub fn parse_source(text: &str, seed: u64) -> Result<DataSource, String> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("fixed:") {
        Ok(DataSource::Fixed {
            sequence: sequence(rest)?,
        })
    } else if let Some(rest) = text.strip_prefix("sampled:") {
        Ok(DataSource::Sampled {
            generator: parse_predictor(rest)?,
            seed,
        })
    } else {
        Err(format!(
            "unknown data source {text:?}; expected fixed:<sequence> or sampled:<predictor>"
        ))
    }
}

pub fn parse_sequence(text: &str) -> Result<SequenceGenerator, String> {
    sequence(text.trim())
}

fn predictor(text: &str) -> Result<PredictorSpec, String> {
    let (head, rest) = text.split_once(':').unwrap_or((text, ""));
    match head {
        "uniform" if rest.is_empty() && !text.ends_with(':') => Ok(PredictorSpec::Uniform),
        "point_mass" => Ok(PredictorSpec::point_mass(sequence(rest)?)),
        "laplace" => Ok(PredictorSpec::laplace(rational(rest)?)),
        "mixture" => mixture(rest),
        "bsol" => bounded_solomonoff(rest),
        _ => Err(format!("unknown predictor {text:?}")),
    }
}

fn sequence(text: &str) -> Result<SequenceGenerator, String> {
    match text {
        "zeros" => Ok(SequenceGenerator::Zeros),
        "ones" => Ok(SequenceGenerator::Ones),
        _ => match text.strip_prefix("cycle:") {
            Some(bits) if !bits.is_empty() => bits
                .parse()
                .map(SequenceGenerator::Cycle)
                .map_err(|e: algoprior_core::Error| e.to_string()),
            _ => Err(format!(
                "unknown sequence {text:?}; expected zeros, ones or cycle:<bits>"
            )),
        },
    }
}

fn rational(text: &str) -> Result<Rational, String> {
    text.trim()
        .parse()
        .map_err(|_| format!("not a rational number: {text:?}"))
}

fn mixture(text: &str) -> Result<PredictorSpec, String> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| format!("mixture components must be bracketed: {text:?}"))?;
    let mut parts = Vec::new();
    for item in split_top_level(inner)? {
        let (weight, spec) = item
            .split_once('*')
            .ok_or_else(|| format!("mixture component {item:?} is not weight*predictor"))?;
        parts.push((rational(weight)?, predictor(spec.trim())?));
    }
    Ok(PredictorSpec::mixture(parts))
}

/// Splits on commas that are not inside brackets.
fn split_top_level(text: &str) -> Result<Vec<&str>, String> {
    let mut items = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth = depth.checked_sub(1).ok_or("unbalanced ']' in mixture")?,
            ',' if depth == 0 => {
                items.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err("unbalanced '[' in mixture".into());
    }
    items.push(&text[start..]);
    Ok(items)
}

fn bounded_solomonoff(text: &str) -> Result<PredictorSpec, String> {
    let fields: Vec<&str> = text.split(':').collect();
    let variant = match fields.get(3).copied() {
        None | Some("raw") => Variant::Raw,
        Some("normalized") => Variant::Normalized,
        Some(other) => {
            return Err(format!(
                "unknown variant {other:?}; expected raw or normalized"
            ))
        }
    };
    if !(3..=4).contains(&fields.len()) {
        return Err(format!(
            "expected bsol:<machine>:<L>:<T>[:normalized], got bsol:{text}"
        ));
    }
    let machine: MachineId = fields[0]
        .parse()
        .map_err(|e: algoprior_core::Error| e.to_string())?;
    let max_input_bits = fields[1]
        .parse()
        .map_err(|_| format!("bad bit budget {:?}", fields[1]))?;
    let max_steps = fields[2]
        .parse()
        .map_err(|_| format!("bad step budget {:?}", fields[2]))?;
    Ok(PredictorSpec::bounded_solomonoff(
        machine,
        Budget::new(max_input_bits, max_steps),
        variant,
    ))
}
