//! JSON form of a distribution:
//!
//! ```json
//! {"variables": ["X", "Y"], "cardinalities": [2, 2],
//!  "entries": [{"outcome": [0, 0], "p": 0.5}, {"outcome": [1, 1], "p": 0.5}]}
//! ```
//!
//! Unlisted outcomes are zero. Writers emit only positive cells, with 17
//! significant digits.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde_json::Value;

use super::{flat_index, JointDistribution};
use crate::{Error, Result};

pub fn to_json_string(p: &JointDistribution) -> String {
    let mut out = String::from("{\"variables\":");
    out.push_str(&serde_json::to_string(p.names()).expect("strings serialize"));
    out.push_str(",\"cardinalities\":");
    out.push_str(&serde_json::to_string(p.cards()).expect("integers serialize"));
    out.push_str(",\"entries\":[");
    let mut first = true;
    for (o, q) in p.support() {
        if !first {
            out.push(',');
        }
        first = false;
        out.push_str("{\"outcome\":");
        out.push_str(&serde_json::to_string(&o).expect("integers serialize"));
        out.push_str(&format!(",\"p\":{q:.16e}}}"));
    }
    out.push_str("]}");
    out
}

/// The JSON form as a `serde_json::Value`, for embedding in larger reports.
pub fn to_json_value(p: &JointDistribution) -> Value {
    serde_json::from_str(&to_json_string(p)).expect("writer emits valid JSON")
}

pub fn from_json_str(text: &str) -> Result<JointDistribution> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Format {
        context: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    from_json_value(&v)
}

pub fn from_json_value(v: &Value) -> Result<JointDistribution> {
    let obj = v.as_object().ok_or_else(|| fmt_err("$", "expected an object"))?;
    let names: Vec<String> = field(obj, "variables")?
        .as_array()
        .ok_or_else(|| fmt_err("variables", "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| fmt_err(&format!("variables[{i}]"), "expected a string"))
        })
        .collect::<Result<_>>()?;
    let cards: Vec<usize> = field(obj, "cardinalities")?
        .as_array()
        .ok_or_else(|| fmt_err("cardinalities", "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, x)| as_index(x, &format!("cardinalities[{i}]")))
        .collect::<Result<_>>()?;
    if names.len() != cards.len() {
        return Err(fmt_err(
            "cardinalities",
            &format!("{} variables but {} cardinalities", names.len(), cards.len()),
        ));
    }
    if cards.contains(&0) {
        return Err(fmt_err("cardinalities", "cardinality must be positive"));
    }
    let len = cards
        .iter()
        .try_fold(1usize, |acc, &c| acc.checked_mul(c))
        .filter(|&n| n <= 1 << 24)
        .ok_or_else(|| fmt_err("cardinalities", "sample space too large"))?;
    let entries = field(obj, "entries")?
        .as_array()
        .ok_or_else(|| fmt_err("entries", "expected an array"))?;
    let mut probs = vec![0.0; len];
    let mut seen = HashSet::new();
    for (k, e) in entries.iter().enumerate() {
        let path = format!("entries[{k}]");
        let eo = e.as_object().ok_or_else(|| fmt_err(&path, "expected an object"))?;
        let outcome: Vec<usize> = eo
            .get("outcome")
            .and_then(Value::as_array)
            .ok_or_else(|| fmt_err(&format!("{path}.outcome"), "expected an array"))?
            .iter()
            .enumerate()
            .map(|(i, x)| as_index(x, &format!("{path}.outcome[{i}]")))
            .collect::<Result<_>>()?;
        if outcome.len() != cards.len() {
            return Err(fmt_err(
                &format!("{path}.outcome"),
                &format!("expected {} indices, found {}", cards.len(), outcome.len()),
            ));
        }
        let idx = flat_index(&cards, &outcome)
            .ok_or_else(|| fmt_err(&format!("{path}.outcome"), &format!("{outcome:?} out of range for {cards:?}")))?;
        if !seen.insert(idx) {
            return Err(fmt_err(&format!("{path}.outcome"), &format!("duplicate outcome {outcome:?}")));
        }
        let p = eo
            .get("p")
            .and_then(Value::as_f64)
            .ok_or_else(|| fmt_err(&format!("{path}.p"), "expected a number"))?;
        if p < 0.0 {
            return Err(fmt_err(&format!("{path}.p"), &format!("negative probability {p}")));
        }
        probs[idx] = p;
    }
    JointDistribution::new(names, cards, probs)
}

/// Reads a distribution from `path`, or from standard input when `path` is `-`.
pub fn read_distribution(path: &Path) -> Result<JointDistribution> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())?
    } else {
        fs::read_to_string(path)?
    };
    from_json_str(&text)
}

pub fn write_distribution(p: &JointDistribution, path: &Path) -> Result<()> {
    fs::write(path, to_json_string(p) + "\n")?;
    Ok(())
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| fmt_err(key, "missing field"))
}

fn as_index(x: &Value, path: &str) -> Result<usize> {
    x.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| fmt_err(path, "expected a non-negative integer"))
}

fn fmt_err(context: &str, message: &str) -> Error {
    Error::Format {
        context: context.to_string(),
        message: message.to_string(),
    }
}
