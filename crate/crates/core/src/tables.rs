//! Closed morpheme inventories consulted by the rule cascade.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::{Aspect, Deriv, NounClass, Tense};
use crate::schema::Number;

/// Phonological environment a prefix row requires of the following stem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrefixContext {
    #[default]
    Any,
    BeforeVowel,
    BeforeConsonant,
}

pub fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

impl PrefixContext {
    pub fn admits(self, stem: &str) -> bool {
        match (self, stem.chars().next()) {
            (PrefixContext::Any, _) => true,
            (PrefixContext::BeforeVowel, Some(c)) => is_vowel(c),
            (PrefixContext::BeforeConsonant, Some(c)) => c.is_alphabetic() && !is_vowel(c),
            (_, None) => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPrefix {
    pub prefix: String,
    pub class: NounClass,
    /// Canonical prefix this row is a surface variant of (`mw` → `mu`).
    pub allomorph_of: Option<String>,
    pub context: PrefixContext,
}

impl ClassPrefix {
    /// A lone consonant before a consonant (the class 9 nasal). Such rows
    /// overlap heavily with ordinary word-initial clusters.
    pub fn is_bare_consonant(&self) -> bool {
        self.prefix.chars().count() == 1 && self.context == PrefixContext::BeforeConsonant
    }
}

/// What a concord agrees with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcordRef {
    pub person: String,
    pub number: Number,
    pub class: Option<NounClass>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TenseMarker {
    pub tense: Tense,
    pub aspect: Option<Aspect>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleTables {
    pub noun_class_prefixes: Vec<ClassPrefix>,
    pub locative_classes: BTreeSet<NounClass>,
    pub subject_concords: BTreeMap<String, ConcordRef>,
    pub object_concords: BTreeMap<String, ConcordRef>,
    pub tense_markers: BTreeMap<String, TenseMarker>,
    pub deriv_suffixes: BTreeMap<String, Deriv>,
    pub verbalizer_consonants: BTreeSet<String>,
    pub proclitics: BTreeSet<String>,
    pub enclitics: BTreeSet<String>,
    pub ideophones: BTreeSet<String>,
    pub adverbs: BTreeSet<String>,
    pub conjunctions: BTreeSet<String>,
    pub determiners: BTreeSet<String>,
    pub pronouns: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("noun_class_prefixes not sorted longest-first: {shorter:?} precedes {longer:?}")]
    PrefixOrder { shorter: String, longer: String },
    #[error("{section}: invalid morpheme {value:?}")]
    BadMorpheme { section: &'static str, value: String },
    #[error("prefix {prefix:?} is an allomorph of unknown prefix {target:?}")]
    UnknownAllomorphTarget { prefix: String, target: String },
    #[error("locative class {0} is not one of 16, 17, 18")]
    NonLocativeClass(NounClass),
    #[error("{value:?} appears in both {first} and {second}")]
    Overlap {
        value: String,
        first: &'static str,
        second: &'static str,
    },
}

fn is_table_morpheme(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_lowercase() || c == '\'')
}

/// Longest key of `map` that prefixes `s`.
pub(crate) fn longest_prefix_key<'m, V>(map: &'m BTreeMap<String, V>, s: &str) -> Option<(&'m str, &'m V)> {
    map.iter()
        .filter(|(k, _)| s.starts_with(k.as_str()))
        .max_by_key(|(k, _)| k.len())
        .map(|(k, v)| (k.as_str(), v))
}

impl RuleTables {
    pub fn validate(&self) -> Result<(), TableError> {
        for pair in self.noun_class_prefixes.windows(2) {
            if pair[0].prefix.chars().count() < pair[1].prefix.chars().count() {
                return Err(TableError::PrefixOrder {
                    shorter: pair[0].prefix.clone(),
                    longer: pair[1].prefix.clone(),
                });
            }
        }
        for row in &self.noun_class_prefixes {
            if !is_table_morpheme(&row.prefix) {
                return Err(TableError::BadMorpheme {
                    section: "noun_class_prefixes",
                    value: row.prefix.clone(),
                });
            }
            if let Some(target) = &row.allomorph_of {
                if !self.noun_class_prefixes.iter().any(|r| &r.prefix == target) {
                    return Err(TableError::UnknownAllomorphTarget {
                        prefix: row.prefix.clone(),
                        target: target.clone(),
                    });
                }
            }
        }
        if let Some(c) = self.locative_classes.iter().find(|c| !c.is_locative()) {
            return Err(TableError::NonLocativeClass(*c));
        }
        let keyed: [(&'static str, Vec<&String>); 4] = [
            ("subject_concords", self.subject_concords.keys().collect()),
            ("object_concords", self.object_concords.keys().collect()),
            ("tense_markers", self.tense_markers.keys().collect()),
            ("deriv_suffixes", self.deriv_suffixes.keys().collect()),
        ];
        for (section, keys) in keyed {
            if let Some(bad) = keys.into_iter().find(|k| !is_table_morpheme(k)) {
                return Err(TableError::BadMorpheme {
                    section,
                    value: bad.clone(),
                });
            }
        }
        let sets = self.word_sets();
        for (section, set) in sets
            .iter()
            .chain([("verbalizer_consonants", &self.verbalizer_consonants)].iter())
        {
            if let Some(bad) = set.iter().find(|k| !is_table_morpheme(k)) {
                return Err(TableError::BadMorpheme {
                    section,
                    value: bad.clone(),
                });
            }
        }
        for (i, (first, a)) in sets.iter().enumerate() {
            for (second, b) in &sets[i + 1..] {
                if let Some(value) = a.intersection(b).next() {
                    return Err(TableError::Overlap {
                        value: value.clone(),
                        first,
                        second,
                    });
                }
            }
        }
        Ok(())
    }

    /// The clitic, ideophone and function-word sets, which must be disjoint.
    pub fn word_sets(&self) -> [(&'static str, &BTreeSet<String>); 7] {
        [
            ("proclitics", &self.proclitics),
            ("enclitics", &self.enclitics),
            ("ideophones", &self.ideophones),
            ("adverbs", &self.adverbs),
            ("conjunctions", &self.conjunctions),
            ("determiners", &self.determiners),
            ("pronouns", &self.pronouns),
        ]
    }

    /// The built-in Shona inventory.
    pub fn shona() -> Self {
        use PrefixContext::*;
        let class = |n| NounClass::new(n).expect("static class number");
        let row = |prefix: &str, n: u8, allomorph_of: Option<&str>, context| ClassPrefix {
            prefix: prefix.into(),
            class: class(n),
            allomorph_of: allomorph_of.map(String::from),
            context,
        };
        let noun_class_prefixes = alloc::vec![
            row("chi", 7, None, Any),
            row("zvi", 8, None, Any),
            row("dzi", 10, None, Any),
            row("mw", 1, Some("mu"), BeforeVowel),
            row("mw", 3, Some("mu"), BeforeVowel),
            row("mu", 1, None, Any),
            row("va", 2, None, Any),
            row("mu", 3, None, Any),
            row("mi", 4, None, Any),
            row("ri", 5, None, Any),
            row("ma", 6, None, Any),
            row("dz", 10, Some("dzi"), BeforeVowel),
            row("ru", 11, None, Any),
            row("ka", 12, None, Any),
            row("tu", 13, None, Any),
            row("ku", 15, None, Any),
            row("pa", 16, None, Any),
            row("ku", 17, None, Any),
            row("mu", 18, None, Any),
            row("v", 2, Some("va"), BeforeVowel),
            row("u", 14, None, Any),
            row("n", 9, None, BeforeConsonant),
            row("m", 9, Some("n"), BeforeConsonant),
        ];

        let person = |p: &str, number| ConcordRef {
            person: p.into(),
            number,
            class: None,
        };
        let with_class = |p: &str, n: u8| ConcordRef {
            person: p.into(),
            number: class(n).number(),
            class: Some(class(n)),
        };
        let subject_concords = [
            ("ndi", person("1", Number::Singular)),
            ("ti", person("1", Number::Plural)),
            ("u", person("2", Number::Singular)),
            ("mu", person("2", Number::Plural)),
            ("a", with_class("3", 1)),
            ("va", with_class("3", 2)),
            ("i", with_class("3", 9)),
            ("ri", with_class("3", 5)),
            ("chi", with_class("3", 7)),
            ("zvi", with_class("3", 8)),
            ("dzi", with_class("3", 10)),
            ("ru", with_class("3", 11)),
            ("ka", with_class("3", 12)),
            ("ku", with_class("3", 15)),
            ("pa", with_class("3", 16)),
        ];
        let object_concords = [
            ("ndi", person("1", Number::Singular)),
            ("ku", person("2", Number::Singular)),
            ("mu", with_class("3", 1)),
        ];
        let tense = |tense, aspect| TenseMarker { tense, aspect };
        let tense_markers = [
            ("cha", tense(Tense::Cha, None)),
            ("ka", tense(Tense::Ka, None)),
            ("na", tense(Tense::Na, Some(Aspect::Perf))),
            ("no", tense(Tense::No, Some(Aspect::Prog))),
        ];
        let deriv_suffixes = [
            ("is", Deriv::Causative),
            ("ir", Deriv::Applicative),
            ("w", Deriv::Passive),
            ("an", Deriv::Reciprocal),
            ("ik", Deriv::Stative),
        ];

        fn set(words: &[&str]) -> BTreeSet<String> {
            words.iter().map(|w| String::from(*w)).collect()
        }
        fn map<V: Clone>(pairs: &[(&str, V)]) -> BTreeMap<String, V> {
            pairs.iter().map(|(k, v)| (String::from(*k), v.clone())).collect()
        }

        RuleTables {
            noun_class_prefixes,
            locative_classes: [16, 17, 18].into_iter().map(class).collect(),
            subject_concords: map(&subject_concords),
            object_concords: map(&object_concords),
            tense_markers: map(&tense_markers),
            deriv_suffixes: map(&deriv_suffixes),
            verbalizer_consonants: set(&["k", "m", "r", "v", "ts"]),
            proclitics: set(&["sa", "se"]),
            enclitics: set(&["wo", "pi"]),
            ideophones: set(&["gwada", "dzunga", "nyoro", "tende", "dzveng", "nyik"]),
            adverbs: set(&["mangwana", "nokukurumidza", "zvishoma"]),
            conjunctions: set(&["kana", "asi", "uye", "nekuti"]),
            determiners: set(&["uyo", "ichi", "izi"]),
            pronouns: set(&["ini", "iwe", "iye"]),
        }
    }
}

impl Default for RuleTables {
    fn default() -> Self {
        RuleTables::shona()
    }
}
