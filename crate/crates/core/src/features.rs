//! The `morph_features` bag and its pipe-delimited string form.
//!
//! A bag is a set of `Key=Value` pairs. Equality ignores the order in which
//! pairs were written; serialization always emits the canonical key order
//! `NounClass, Locative, Rule, SC, OC, Tense, Aspect, Deriv, Root`.
//! `Deriv` is the only multi-valued key; its values are comma-joined and keep
//! their surface order.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::schema::Number;

/// Noun class number, always within `1..=18`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct NounClass(u8);

impl NounClass {
    pub const MIN: u8 = 1;
    pub const MAX: u8 = 18;

    pub fn new(n: u8) -> Option<Self> {
        (Self::MIN..=Self::MAX).contains(&n).then_some(NounClass(n))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn is_locative(self) -> bool {
        matches!(self.0, 16..=18)
    }

    /// Singular for the odd classes 1–11, plural for the even classes 2–10,
    /// unspecified for 12–18.
    pub fn number(self) -> Number {
        match self.0 {
            1 | 3 | 5 | 7 | 9 | 11 => Number::Singular,
            2 | 4 | 6 | 8 | 10 => Number::Plural,
            _ => Number::Unspecified,
        }
    }
}

impl TryFrom<u8> for NounClass {
    type Error = String;

    fn try_from(n: u8) -> Result<Self, String> {
        NounClass::new(n).ok_or_else(|| alloc::format!("noun class {n} outside 1..=18"))
    }
}

impl From<NounClass> for u8 {
    fn from(c: NounClass) -> u8 {
        c.0
    }
}

impl fmt::Display for NounClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tense {
    #[serde(rename = "cha")]
    Cha,
    #[serde(rename = "ka")]
    Ka,
    #[serde(rename = "na")]
    Na,
    #[serde(rename = "no")]
    No,
    /// Unmarked verb; written `Tense=None`.
    #[serde(rename = "None")]
    Unmarked,
}

impl Tense {
    pub const ALL: [Tense; 5] = [Tense::Cha, Tense::Ka, Tense::Na, Tense::No, Tense::Unmarked];

    pub fn as_str(self) -> &'static str {
        match self {
            Tense::Cha => "cha",
            Tense::Ka => "ka",
            Tense::Na => "na",
            Tense::No => "no",
            Tense::Unmarked => "None",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Aspect {
    Perf,
    Prog,
}

impl Aspect {
    pub fn as_str(self) -> &'static str {
        match self {
            Aspect::Perf => "Perf",
            Aspect::Prog => "Prog",
        }
    }
}

/// Verbal extension recorded under `Deriv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Deriv {
    Causative,
    Applicative,
    Passive,
    Reciprocal,
    Stative,
}

impl Deriv {
    pub const ALL: [Deriv; 5] = [
        Deriv::Causative,
        Deriv::Applicative,
        Deriv::Passive,
        Deriv::Reciprocal,
        Deriv::Stative,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Deriv::Causative => "Causative",
            Deriv::Applicative => "Applicative",
            Deriv::Passive => "Passive",
            Deriv::Reciprocal => "Reciprocal",
            Deriv::Stative => "Stative",
        }
    }
}

/// Feature keys in canonical serialization order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FeatureKey {
    NounClass,
    Locative,
    Rule,
    Sc,
    Oc,
    Tense,
    Aspect,
    Deriv,
    Root,
}

impl FeatureKey {
    pub const CANONICAL: [FeatureKey; 9] = [
        FeatureKey::NounClass,
        FeatureKey::Locative,
        FeatureKey::Rule,
        FeatureKey::Sc,
        FeatureKey::Oc,
        FeatureKey::Tense,
        FeatureKey::Aspect,
        FeatureKey::Deriv,
        FeatureKey::Root,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureKey::NounClass => "NounClass",
            FeatureKey::Locative => "Locative",
            FeatureKey::Rule => "Rule",
            FeatureKey::Sc => "SC",
            FeatureKey::Oc => "OC",
            FeatureKey::Tense => "Tense",
            FeatureKey::Aspect => "Aspect",
            FeatureKey::Deriv => "Deriv",
            FeatureKey::Root => "Root",
        }
    }
}

impl fmt::Display for FeatureKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FeatureKey {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        FeatureKey::CANONICAL.into_iter().find(|k| k.as_str() == s).ok_or(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeatureError {
    #[error("malformed feature pair {0:?} (expected Key=Value)")]
    Malformed(String),
    #[error("unknown feature key {0:?}")]
    UnknownKey(String),
    #[error("feature key {0} given more than once")]
    DuplicateKey(FeatureKey),
    #[error("invalid value {value:?} for feature {key}")]
    InvalidValue { key: FeatureKey, value: String },
}

/// Set of morphological features attached to a token.
///
/// Fields are public; a bag built by hand is only serializable faithfully
/// when [`MorphFeatureBag::validate`] accepts it (parsed bags always do).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MorphFeatureBag {
    pub noun_class: Option<NounClass>,
    pub locative: bool,
    pub rule: bool,
    pub sc: Option<String>,
    pub oc: Option<String>,
    pub tense: Option<Tense>,
    pub aspect: Option<Aspect>,
    pub deriv: Vec<Deriv>,
    pub root: Option<String>,
}

/// Morpheme and root values: nonempty, no separators, no whitespace.
pub fn is_valid_morpheme(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| matches!(c, '|' | '=' | ',') || c.is_whitespace())
}

impl MorphFeatureBag {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.present_keys().next().is_none()
    }

    pub fn contains(&self, key: FeatureKey) -> bool {
        match key {
            FeatureKey::NounClass => self.noun_class.is_some(),
            FeatureKey::Locative => self.locative,
            FeatureKey::Rule => self.rule,
            FeatureKey::Sc => self.sc.is_some(),
            FeatureKey::Oc => self.oc.is_some(),
            FeatureKey::Tense => self.tense.is_some(),
            FeatureKey::Aspect => self.aspect.is_some(),
            FeatureKey::Deriv => !self.deriv.is_empty(),
            FeatureKey::Root => self.root.is_some(),
        }
    }

    /// Keys carried by this bag, in canonical order.
    pub fn present_keys(&self) -> impl Iterator<Item = FeatureKey> + '_ {
        FeatureKey::CANONICAL.into_iter().filter(|k| self.contains(*k))
    }

    /// Rendered value of `key`, if present.
    pub fn value(&self, key: FeatureKey) -> Option<String> {
        match key {
            FeatureKey::NounClass => self.noun_class.map(|c| c.to_string()),
            FeatureKey::Locative => self.locative.then(|| "True".into()),
            FeatureKey::Rule => self.rule.then(|| "True".into()),
            FeatureKey::Sc => self.sc.clone(),
            FeatureKey::Oc => self.oc.clone(),
            FeatureKey::Tense => self.tense.map(|t| t.as_str().into()),
            FeatureKey::Aspect => self.aspect.map(|a| a.as_str().into()),
            FeatureKey::Deriv => (!self.deriv.is_empty()).then(|| {
                let names: Vec<&str> = self.deriv.iter().map(|d| d.as_str()).collect();
                names.join(",")
            }),
            FeatureKey::Root => self.root.clone(),
        }
    }

    pub fn validate(&self) -> Result<(), FeatureError> {
        for (key, v) in [
            (FeatureKey::Sc, &self.sc),
            (FeatureKey::Oc, &self.oc),
            (FeatureKey::Root, &self.root),
        ] {
            if let Some(v) = v {
                if !is_valid_morpheme(v) {
                    return Err(FeatureError::InvalidValue { key, value: v.clone() });
                }
            }
        }
        Ok(())
    }

    /// Canonical pipe-delimited form; the empty bag renders as `""`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for key in self.present_keys() {
            if !out.is_empty() {
                out.push('|');
            }
            out.push_str(key.as_str());
            out.push('=');
            out.push_str(&self.value(key).unwrap_or_default());
        }
        out
    }

    /// Parses `Key=Value|Key=Value…` in any key order.
    ///
    /// `Aspect=` with an empty value is read as "no aspect".
    pub fn parse(s: &str) -> Result<Self, FeatureError> {
        let mut bag = MorphFeatureBag::new();
        if s.is_empty() {
            return Ok(bag);
        }
        let mut seen = [false; FeatureKey::CANONICAL.len()];
        for pair in s.split('|') {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| FeatureError::Malformed(pair.into()))?;
            let key: FeatureKey = k.parse().map_err(|()| FeatureError::UnknownKey(k.into()))?;
            if core::mem::replace(&mut seen[key as usize], true) {
                return Err(FeatureError::DuplicateKey(key));
            }
            let bad = || FeatureError::InvalidValue { key, value: v.into() };
            match key {
                FeatureKey::NounClass => {
                    let n: u8 = v.parse().map_err(|_| bad())?;
                    // reject "01", "+1"
                    if n.to_string() != v {
                        return Err(bad());
                    }
                    bag.noun_class = Some(NounClass::new(n).ok_or_else(bad)?);
                }
                FeatureKey::Locative => {
                    (v == "True").then_some(()).ok_or_else(bad)?;
                    bag.locative = true;
                }
                FeatureKey::Rule => {
                    (v == "True").then_some(()).ok_or_else(bad)?;
                    bag.rule = true;
                }
                FeatureKey::Sc | FeatureKey::Oc | FeatureKey::Root => {
                    if !is_valid_morpheme(v) {
                        return Err(bad());
                    }
                    let slot = match key {
                        FeatureKey::Sc => &mut bag.sc,
                        FeatureKey::Oc => &mut bag.oc,
                        _ => &mut bag.root,
                    };
                    *slot = Some(v.into());
                }
                FeatureKey::Tense => {
                    let t = Tense::ALL.into_iter().find(|t| t.as_str() == v).ok_or_else(bad)?;
                    bag.tense = Some(t);
                }
                FeatureKey::Aspect => {
                    bag.aspect = match v {
                        "" => None,
                        "Perf" => Some(Aspect::Perf),
                        "Prog" => Some(Aspect::Prog),
                        _ => return Err(bad()),
                    };
                }
                FeatureKey::Deriv => {
                    for part in v.split(',') {
                        let d = Deriv::ALL.into_iter().find(|d| d.as_str() == part).ok_or_else(bad)?;
                        bag.deriv.push(d);
                    }
                }
            }
        }
        Ok(bag)
    }
}

impl fmt::Display for MorphFeatureBag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl FromStr for MorphFeatureBag {
    type Err = FeatureError;

    fn from_str(s: &str) -> Result<Self, FeatureError> {
        MorphFeatureBag::parse(s)
    }
}

impl Serialize for MorphFeatureBag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&MorphFeatureBag::serialize(self))
    }
}

impl<'de> Deserialize<'de> for MorphFeatureBag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = <alloc::borrow::Cow<'de, str>>::deserialize(d)?;
        MorphFeatureBag::parse(&raw).map_err(serde::de::Error::custom)
    }
}
