//! Verified lexicon entries and case-insensitive lookup.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::features::{MorphFeatureBag, NounClass};
use crate::schema::{CliticType, Number, Pos};

/// Field value as read from a lexicon or annotation file, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawValue {
    Text(String),
    Integer(i64),
    /// Any other JSON-ish value; carries a short type name for diagnostics.
    Other(&'static str),
}

impl From<&str> for RawValue {
    fn from(s: &str) -> Self {
        RawValue::Text(s.into())
    }
}

/// Untyped key→value record.
pub type RawRecord = BTreeMap<String, RawValue>;

/// One field-level schema violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub field: String,
    pub message: String,
}

impl Violation {
    pub fn new(field: &str, message: impl Into<String>) -> Self {
        Violation {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// Result of a successful validation: the typed value plus non-fatal notes.
#[derive(Debug, Clone, PartialEq)]
pub struct Validated<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

/// One verified lexicon record. `surface` is the file's `token` field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexEntry {
    pub surface: String,
    pub lemma: String,
    pub pos: Pos,
    pub category_detail: String,
    pub morph_features: MorphFeatureBag,
    pub tense: String,
    pub aspect: String,
    pub mood: String,
    pub person: String,
    pub number: Number,
    pub gender: String,
    pub clitic_type: CliticType,
    pub dependency_relation: String,
    pub gloss: String,
    pub comments: String,
}

pub(crate) const ENTRY_FIELDS: [&str; 15] = [
    "token",
    "lemma",
    "pos",
    "category_detail",
    "morph_features",
    "tense",
    "aspect",
    "mood",
    "person",
    "number",
    "gender",
    "clitic_type",
    "dependency_relation",
    "gloss",
    "comments",
];

/// Positional fields that may appear in lexicon records and are ignored there.
const IGNORED_FIELDS: [&str; 2] = ["sentence_id", "token_id"];

/// Lexicon key normalization: full lowercase.
pub fn case_fold(s: &str) -> String {
    s.to_lowercase()
}

/// Returns the class number if `detail` has the `Mupanda N` form.
pub fn mupanda_class(detail: &str) -> Option<&str> {
    detail.strip_prefix("Mupanda ")
}

pub(crate) struct FieldReader<'a> {
    raw: &'a RawRecord,
    pub violations: Vec<Violation>,
}

impl<'a> FieldReader<'a> {
    pub fn new(raw: &'a RawRecord) -> Self {
        FieldReader {
            raw,
            violations: Vec::new(),
        }
    }

    pub fn push(&mut self, field: &str, message: impl Into<String>) {
        self.violations.push(Violation::new(field, message));
    }

    /// String field; absent optional fields read as "".
    pub fn text(&mut self, field: &str, required: bool) -> String {
        match self.raw.get(field) {
            Some(RawValue::Text(s)) => s.clone(),
            Some(RawValue::Integer(_)) => {
                self.push(field, "expected a string, found a number");
                String::new()
            }
            Some(RawValue::Other(kind)) => {
                self.push(field, format!("expected a string, found {kind}"));
                String::new()
            }
            None => {
                if required {
                    self.push(field, "required field is missing");
                }
                String::new()
            }
        }
    }

    pub fn parsed<T: FromStr + Default>(&mut self, field: &str, required: bool, what: &str) -> T {
        let present = self.raw.contains_key(field);
        let s = self.text(field, required);
        if !present {
            return T::default();
        }
        match s.parse() {
            Ok(v) => v,
            Err(_) => {
                self.push(field, format!("{s:?} is not a valid {what}"));
                T::default()
            }
        }
    }

    pub fn pos(&mut self, lexical_only: bool) -> Pos {
        let present = self.raw.contains_key("pos");
        let s = self.text("pos", true);
        if !present {
            return Pos::X;
        }
        match s.parse::<Pos>() {
            Ok(p) if p.is_lexical() || !lexical_only => p,
            _ => {
                self.push("pos", format!("{s:?} is not in the closed POS set"));
                Pos::X
            }
        }
    }

    pub fn features(&mut self) -> MorphFeatureBag {
        let s = self.text("morph_features", false);
        MorphFeatureBag::parse(&s).unwrap_or_else(|e| {
            self.push("morph_features", format!("{e}"));
            MorphFeatureBag::new()
        })
    }

    pub fn positive_int(&mut self, field: &str) -> Option<u32> {
        match self.raw.get(field)? {
            RawValue::Integer(n) if *n >= 1 && *n <= i64::from(u32::MAX) => Some(*n as u32),
            RawValue::Integer(n) => {
                self.push(field, format!("{n} is not a positive integer"));
                None
            }
            RawValue::Text(_) => {
                self.push(field, "expected an integer, found a string");
                None
            }
            RawValue::Other(kind) => {
                self.push(field, format!("expected an integer, found {kind}"));
                None
            }
        }
    }

    /// `Mupanda N` must name a class in 1..=18 that the bag also carries.
    pub fn check_category(&mut self, detail: &str, bag: &MorphFeatureBag) {
        let Some(n) = mupanda_class(detail) else { return };
        match n.parse::<u8>().ok().and_then(NounClass::new) {
            None => self.push("category_detail", format!("{detail:?} names a class outside 1..18")),
            Some(class) if bag.noun_class != Some(class) => self.push(
                "morph_features",
                format!("category_detail {detail:?} requires NounClass={class}"),
            ),
            Some(_) => {}
        }
    }

    pub fn unknown_fields(&self, known: &[&str]) -> Vec<String> {
        self.raw
            .keys()
            .filter(|k| !known.contains(&k.as_str()))
            .map(|k| format!("unknown field {k:?} ignored"))
            .collect()
    }
}

/// Checks one raw lexicon record against the entry schema.
pub fn validate_entry(raw: &RawRecord) -> Result<Validated<LexEntry>, Vec<Violation>> {
    let mut r = FieldReader::new(raw);
    let surface = r.text("token", true);
    if raw.contains_key("token") && (surface.is_empty() || surface.chars().any(char::is_whitespace)) {
        r.push("token", "surface must be nonempty and contain no whitespace");
    }
    let lemma = r.text("lemma", true);
    let pos = r.pos(true);
    let category_detail = r.text("category_detail", false);
    let morph_features = r.features();
    r.check_category(&category_detail, &morph_features);
    if pos == Pos::X && morph_features.is_empty() && raw.contains_key("pos") {
        r.push("morph_features", "an entry tagged X must carry at least one feature");
    }
    let entry = LexEntry {
        surface,
        lemma,
        pos,
        category_detail,
        morph_features,
        tense: r.text("tense", false),
        aspect: r.text("aspect", false),
        mood: r.text("mood", false),
        person: r.text("person", false),
        number: r.parsed("number", false, "number"),
        gender: r.text("gender", false),
        clitic_type: r.parsed("clitic_type", false, "clitic_type"),
        dependency_relation: r.text("dependency_relation", false),
        gloss: r.text("gloss", false),
        comments: r.text("comments", false),
    };
    if !r.violations.is_empty() {
        return Err(r.violations);
    }
    let known: Vec<&str> = ENTRY_FIELDS.iter().chain(IGNORED_FIELDS.iter()).copied().collect();
    Ok(Validated {
        value: entry,
        warnings: r.unknown_fields(&known),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("records {first_index} ({first:?}) and {second_index} ({second:?}) share the case-folded surface {key:?}")]
    Duplicate {
        key: String,
        first: String,
        first_index: usize,
        second: String,
        second_index: usize,
    },
}

/// Immutable surface → entry map keyed by case-folded surface.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeMap<String, (usize, LexEntry)>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a lexicon; record indices in errors are positions in `entries`.
    pub fn from_entries(entries: impl IntoIterator<Item = LexEntry>) -> Result<Self, LexiconError> {
        let mut map: BTreeMap<String, (usize, LexEntry)> = BTreeMap::new();
        for (index, entry) in entries.into_iter().enumerate() {
            let key = case_fold(&entry.surface);
            if let Some((first_index, first)) = map.get(&key) {
                return Err(LexiconError::Duplicate {
                    key,
                    first: first.surface.clone(),
                    first_index: *first_index,
                    second: entry.surface,
                    second_index: index,
                });
            }
            map.insert(key, (index, entry));
        }
        Ok(Lexicon { entries: map })
    }

    pub fn lookup(&self, surface: &str) -> Option<&LexEntry> {
        self.entries.get(&case_fold(surface)).map(|(_, e)| e)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in case-folded key order.
    pub fn entries(&self) -> impl Iterator<Item = &LexEntry> {
        self.entries.values().map(|(_, e)| e)
    }
}
