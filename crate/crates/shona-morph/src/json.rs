//! JSON record reading shared by the lexicon, table and gold loaders.

use serde_json::{Map, Value};
use shona_morph_core::{RawRecord, RawValue, Violation};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON at byte {offset} (line {line}, column {column}): {message}")]
    Json {
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unexpected layout: {0}")]
    Layout(String),
    #[error("record {index} ({surface:?}): {}", join_violations(.violations))]
    Invalid {
        index: usize,
        surface: String,
        violations: Vec<Violation>,
    },
    #[error(transparent)]
    Duplicate(#[from] shona_morph_core::LexiconError),
    #[error("invalid rule tables: {0}")]
    Tables(#[from] shona_morph_core::TableError),
}

pub(crate) fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Byte offset of a 1-based (line, column) position.
fn byte_offset(source: &[u8], line: usize, column: usize) -> usize {
    let line_start: usize = source
        .split_inclusive(|b| *b == b'\n')
        .take(line.saturating_sub(1))
        .map(<[u8]>::len)
        .sum();
    (line_start + column.saturating_sub(1)).min(source.len())
}

pub(crate) fn json_error(source: &[u8], base: usize, base_line: usize, e: serde_json::Error) -> LoadError {
    let offset = base + byte_offset(&source[base..], e.line(), e.column());
    LoadError::Json {
        offset,
        line: base_line + e.line().saturating_sub(1),
        column: e.column(),
        message: e.to_string(),
    }
}

pub(crate) fn parse_value(source: &[u8]) -> Result<Value, LoadError> {
    serde_json::from_slice(source).map_err(|e| json_error(source, 0, 1, e))
}

fn raw_value(v: &Value) -> RawValue {
    match v {
        Value::String(s) => RawValue::Text(s.clone()),
        Value::Number(n) => match n.as_i64() {
            Some(i) => RawValue::Integer(i),
            None => RawValue::Other("a non-integer number"),
        },
        Value::Bool(_) => RawValue::Other("a boolean"),
        Value::Null => RawValue::Other("null"),
        Value::Array(_) => RawValue::Other("an array"),
        Value::Object(_) => RawValue::Other("an object"),
    }
}

pub(crate) fn raw_record(map: &Map<String, Value>) -> RawRecord {
    map.iter().map(|(k, v)| (k.clone(), raw_value(v))).collect()
}

/// Either an array of records or an object mapping surface → record. In the
/// keyed layout a missing `token` field is filled from the key.
pub(crate) fn records(value: Value) -> Result<Vec<Result<RawRecord, Violation>>, LoadError> {
    match value {
        Value::Array(items) => Ok(items
            .iter()
            .map(|item| match item {
                Value::Object(map) => Ok(raw_record(map)),
                _ => Err(Violation::new("record", "expected a JSON object")),
            })
            .collect()),
        Value::Object(map) => Ok(map
            .iter()
            .map(|(key, item)| {
                let Value::Object(fields) = item else {
                    return Err(Violation::new(
                        "record",
                        format!("value for {key:?} is not a JSON object"),
                    ));
                };
                let mut raw = raw_record(fields);
                match raw.get("token") {
                    None => {
                        raw.insert("token".into(), RawValue::Text(key.clone()));
                    }
                    Some(RawValue::Text(t)) if t.to_lowercase() != key.to_lowercase() => {
                        return Err(Violation::new("token", format!("{t:?} does not match its key {key:?}")));
                    }
                    Some(_) => {}
                }
                Ok(raw)
            })
            .collect()),
        other => Err(LoadError::Layout(format!(
            "expected an array or an object of records, found {}",
            match other {
                Value::Null => "null",
                Value::Bool(_) => "a boolean",
                Value::Number(_) => "a number",
                Value::String(_) => "a string",
                _ => unreachable!(),
            }
        ))),
    }
}

pub(crate) fn surface_of(raw: &RawRecord) -> String {
    match raw.get("token") {
        Some(RawValue::Text(s)) => s.clone(),
        _ => String::new(),
    }
}
