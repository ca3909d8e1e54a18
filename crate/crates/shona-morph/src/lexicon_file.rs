//! Lexicon files: UTF-8 JSON, an array of entry records or an object keyed by
//! surface form.

use std::io::{Read, Write};

use serde_json::{Map, Value};
use shona_morph_core::{validate_entry, LexEntry, Lexicon, Violation};

use crate::json::{parse_value, records, surface_of, LoadError};

/// The seed lexicon shipped with the crate.
pub const SEED_LEXICON: &str = include_str!("../data/seed_lexicon.json");

/// Outcome of checking one record.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordCheck {
    pub index: usize,
    pub surface: String,
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

/// Every record's violations and warnings, plus duplicate-key errors.
#[derive(Debug, Clone, Default)]
pub struct LexiconCheck {
    pub records: Vec<RecordCheck>,
    pub entries: Vec<LexEntry>,
    pub duplicates: Vec<String>,
}

impl LexiconCheck {
    pub fn is_clean(&self) -> bool {
        self.duplicates.is_empty() && self.records.iter().all(|r| r.violations.is_empty())
    }
}

/// Validates every record without stopping at the first failure.
pub fn check_lexicon(source: &[u8]) -> Result<LexiconCheck, LoadError> {
    let mut check = LexiconCheck::default();
    for (index, rec) in records(parse_value(source)?)?.into_iter().enumerate() {
        let (surface, result) = match rec {
            Ok(raw) => (surface_of(&raw), validate_entry(&raw)),
            Err(v) => (String::new(), Err(vec![v])),
        };
        match result {
            Ok(valid) => {
                check.records.push(RecordCheck {
                    index,
                    surface,
                    violations: vec![],
                    warnings: valid.warnings,
                });
                check.entries.push(valid.value);
            }
            Err(violations) => check.records.push(RecordCheck {
                index,
                surface,
                violations,
                warnings: vec![],
            }),
        }
    }
    // duplicates among the valid entries, reported pairwise
    let mut seen: std::collections::BTreeMap<String, &str> = Default::default();
    for e in &check.entries {
        if let Some(first) = seen.insert(e.surface.to_lowercase(), &e.surface) {
            check
                .duplicates
                .push(format!("{first:?} and {:?} share a case-folded surface", e.surface));
        }
    }
    Ok(check)
}

pub fn parse_lexicon(source: &[u8]) -> Result<Lexicon, LoadError> {
    let mut entries = Vec::new();
    for (index, rec) in records(parse_value(source)?)?.into_iter().enumerate() {
        let raw = rec.map_err(|v| LoadError::Invalid {
            index,
            surface: String::new(),
            violations: vec![v],
        })?;
        let entry = validate_entry(&raw).map_err(|violations| LoadError::Invalid {
            index,
            surface: surface_of(&raw),
            violations,
        })?;
        entries.push(entry.value);
    }
    Ok(Lexicon::from_entries(entries)?)
}

pub fn load_lexicon(mut source: impl Read) -> Result<Lexicon, LoadError> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    parse_lexicon(&bytes)
}

pub fn seed_lexicon() -> Lexicon {
    parse_lexicon(SEED_LEXICON.as_bytes()).expect("shipped seed lexicon is valid")
}

pub fn entry_to_json(e: &LexEntry) -> Value {
    let fields: [(&str, String); 15] = [
        ("token", e.surface.clone()),
        ("lemma", e.lemma.clone()),
        ("pos", e.pos.as_str().into()),
        ("category_detail", e.category_detail.clone()),
        ("morph_features", e.morph_features.serialize()),
        ("tense", e.tense.clone()),
        ("aspect", e.aspect.clone()),
        ("mood", e.mood.clone()),
        ("person", e.person.clone()),
        ("number", e.number.as_str().into()),
        ("gender", e.gender.clone()),
        ("clitic_type", e.clitic_type.as_str().into()),
        ("dependency_relation", e.dependency_relation.clone()),
        ("gloss", e.gloss.clone()),
        ("comments", e.comments.clone()),
    ];
    Value::Object(
        fields
            .into_iter()
            .map(|(k, v)| (k.to_string(), Value::String(v)))
            .collect::<Map<_, _>>(),
    )
}

/// Writes the lexicon as a pretty-printed array in key order.
pub fn write_lexicon(lex: &Lexicon, mut sink: impl Write) -> std::io::Result<()> {
    let array = Value::Array(lex.entries().map(entry_to_json).collect());
    serde_json::to_writer_pretty(&mut sink, &array)?;
    sink.write_all(b"\n")
}
