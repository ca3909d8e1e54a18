//! Closed value sets shared by lexicon entries and token annotations.

use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Part-of-speech tag.
///
/// `Punct` is emitted by the tokenizer for punctuation marks only; it is not
/// part of the lexicon's closed set (see [`Pos::is_lexical`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pos {
    Noun,
    Verb,
    Adv,
    Adj,
    Pron,
    Cconj,
    Det,
    Ideo,
    Part,
    X,
    Punct,
}

impl Pos {
    pub const ALL: [Pos; 11] = [
        Pos::Noun,
        Pos::Verb,
        Pos::Adv,
        Pos::Adj,
        Pos::Pron,
        Pos::Cconj,
        Pos::Det,
        Pos::Ideo,
        Pos::Part,
        Pos::X,
        Pos::Punct,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Pos::Noun => "NOUN",
            Pos::Verb => "VERB",
            Pos::Adv => "ADV",
            Pos::Adj => "ADJ",
            Pos::Pron => "PRON",
            Pos::Cconj => "CCONJ",
            Pos::Det => "DET",
            Pos::Ideo => "IDEO",
            Pos::Part => "PART",
            Pos::X => "X",
            Pos::Punct => "PUNCT",
        }
    }

    /// Whether the tag may appear on a lexicon entry.
    pub fn is_lexical(self) -> bool {
        self != Pos::Punct
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pos {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Pos::ALL.into_iter().find(|p| p.as_str() == s).ok_or(())
    }
}

/// Grammatical number; `Unspecified` serializes as the empty string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Number {
    #[default]
    Unspecified,
    Singular,
    Plural,
}

impl Number {
    pub fn as_str(self) -> &'static str {
        match self {
            Number::Unspecified => "",
            Number::Singular => "Singular",
            Number::Plural => "Plural",
        }
    }
}

impl FromStr for Number {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "" => Ok(Number::Unspecified),
            "Singular" => Ok(Number::Singular),
            "Plural" => Ok(Number::Plural),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum CliticType {
    #[default]
    None,
    Proclitic,
    Enclitic,
}

impl CliticType {
    pub fn as_str(self) -> &'static str {
        match self {
            CliticType::None => "",
            CliticType::Proclitic => "proclitic",
            CliticType::Enclitic => "enclitic",
        }
    }
}

impl FromStr for CliticType {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "" => Ok(CliticType::None),
            "proclitic" => Ok(CliticType::Proclitic),
            "enclitic" => Ok(CliticType::Enclitic),
            _ => Err(()),
        }
    }
}

/// Which stage of the analyzer produced an annotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    Lexicon,
    Rule,
    Unknown,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Lexicon => "Lexicon",
            Provenance::Rule => "Rule",
            Provenance::Unknown => "Unknown",
        }
    }
}

impl FromStr for Provenance {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "Lexicon" => Ok(Provenance::Lexicon),
            "Rule" => Ok(Provenance::Rule),
            "Unknown" => Ok(Provenance::Unknown),
            _ => Err(()),
        }
    }
}

macro_rules! string_serde {
    ($($ty:ty => $what:literal),* $(,)?) => {$(
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(self.as_str())
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let raw = <alloc::borrow::Cow<'de, str>>::deserialize(d)?;
                raw.parse().map_err(|()| {
                    serde::de::Error::custom(alloc::format!(concat!("invalid ", $what, " {:?}"), raw))
                })
            }
        }
    )*};
}

string_serde! {
    Pos => "pos",
    Number => "number",
    CliticType => "clitic_type",
    Provenance => "provenance",
}
