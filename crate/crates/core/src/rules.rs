//! Rule detectors for tokens the lexicon does not cover.
//!
//! Every detector expects a case-folded surface and is a pure function of its
//! arguments. Guards: roots and stems keep at least 2 characters, clitic hosts
//! at least 3.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::features::{Aspect, Deriv, NounClass, Tense};
use crate::lexicon::{case_fold, Lexicon};
use crate::schema::{CliticType, Pos};
use crate::tables::{is_vowel, longest_prefix_key, ClassPrefix, ConcordRef, RuleTables};

const MIN_STEM: usize = 2;
const MIN_CLITIC_HOST: usize = 3;
const MIN_DERIVED_ROOT: usize = 3;
const MIN_OC_RESIDUE: usize = 3;
/// The infinitive class; `ku-` words without a locative reading go to verb analysis.
const INFINITIVE_CLASS: u8 = 15;

fn char_len(s: &str) -> usize {
    s.chars().count()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NounAnalysis {
    pub class: NounClass,
    pub prefix: String,
    pub stem: String,
    pub locative: bool,
    pub inner_class: Option<NounClass>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcordAnalysis {
    pub sc: String,
    pub sc_ref: ConcordRef,
    pub remainder: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TenseAnalysis {
    pub tense: Tense,
    pub aspect: Option<Aspect>,
    pub rest: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliticAnalysis {
    pub clitic_type: CliticType,
    pub clitic: Option<String>,
    pub core: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbAnalysis {
    pub sc: String,
    pub sc_ref: ConcordRef,
    pub oc: Option<String>,
    pub tense: Tense,
    pub aspect: Option<Aspect>,
    pub root: String,
    pub derivs: Vec<Deriv>,
    /// Stem-initial verbalizer consonant, kept as a comment only.
    pub verbalizer_note: Option<String>,
    /// Final `-i` read as the plural-object marker and split off the root.
    pub plural_object: bool,
    /// Whether anything was removed between the tense slot and the root.
    pub root_changed: bool,
}

impl VerbAnalysis {
    pub fn notes(&self) -> Vec<String> {
        let mut notes = Vec::new();
        if let Some(v) = &self.verbalizer_note {
            notes.push(v.clone());
        }
        if self.plural_object {
            notes.push("final -i: plural object marker".into());
        }
        notes
    }
}

/// Longest class prefix with an admissible stem, then disambiguation among the
/// classes sharing that prefix.
pub fn detect_noun_class(surface: &str, tables: &RuleTables, lex: &Lexicon) -> Option<NounAnalysis> {
    noun_class(surface, tables, lex, true)
}

fn noun_class(surface: &str, tables: &RuleTables, lex: &Lexicon, allow_locative: bool) -> Option<NounAnalysis> {
    let (prefix, stem) = tables.noun_class_prefixes.iter().find_map(|row| {
        let stem = surface.strip_prefix(row.prefix.as_str())?;
        row.context.admits(stem).then_some((row.prefix.as_str(), stem))
    })?;
    if char_len(stem) < MIN_STEM {
        return None;
    }
    let rows: Vec<&ClassPrefix> = tables
        .noun_class_prefixes
        .iter()
        .filter(|r| r.prefix == prefix && r.context.admits(stem))
        .collect();

    // n-/m- + consonant also starts verbs such as ndi-…
    if rows.iter().all(|r| r.is_bare_consonant()) && analyze_verb(surface, tables).is_some_and(|v| char_len(&v.sc) > 1)
    {
        return None;
    }

    let analysis = |class: NounClass, locative, inner_class| NounAnalysis {
        class,
        prefix: prefix.to_string(),
        stem: stem.to_string(),
        locative,
        inner_class,
    };

    // mukadzi: the known human noun wins over a "ka-" inner reading
    if let Some(row) = rows.iter().find(|r| r.class.get() == 1) {
        if is_human_stem(stem, lex) {
            return Some(analysis(row.class, false, None));
        }
    }

    let is_loc = |r: &&&ClassPrefix| tables.locative_classes.contains(&r.class);
    if allow_locative {
        if let Some(row) = rows.iter().find(is_loc) {
            if let Some(inner) = inner_noun(stem, tables, lex) {
                return Some(analysis(row.class, true, inner));
            }
        }
    }

    let plain: Vec<NounClass> = rows
        .iter()
        .filter(|r| !is_loc(r) && r.class.get() != INFINITIVE_CLASS)
        .map(|r| r.class)
        .collect();
    let class = match plain.as_slice() {
        [] if rows.iter().any(|r| r.class.get() == INFINITIVE_CLASS) => return None,
        [] => rows.first()?.class,
        [only] => *only,
        // human readings were settled above
        several => several.iter().copied().find(|c| c.get() != 1).unwrap_or(several[0]),
    };
    Some(analysis(class, false, None))
}

/// `Some(class)` when `stem` reads as a noun of its own: a lexicon noun or a
/// word with a (non-nasal) class prefix.
fn inner_noun(stem: &str, tables: &RuleTables, lex: &Lexicon) -> Option<Option<NounClass>> {
    if let Some(entry) = lex.lookup(stem).filter(|e| e.pos == Pos::Noun) {
        return Some(entry.morph_features.noun_class);
    }
    let inner = noun_class(stem, tables, lex, false)?;
    let bare = tables
        .noun_class_prefixes
        .iter()
        .filter(|r| r.prefix == inner.prefix)
        .all(ClassPrefix::is_bare_consonant);
    (!bare).then_some(Some(inner.class))
}

/// A stem the lexicon lists as the lemma of a class 1 or class 2 noun.
fn is_human_stem(stem: &str, lex: &Lexicon) -> bool {
    lex.entries().any(|e| {
        e.pos == Pos::Noun
            && case_fold(&e.lemma) == stem
            && e.morph_features.noun_class.is_some_and(|c| matches!(c.get(), 1 | 2))
    })
}

pub fn detect_concords(surface: &str, tables: &RuleTables) -> Option<ConcordAnalysis> {
    let (sc, sc_ref) = longest_prefix_key(&tables.subject_concords, surface)?;
    let remainder = &surface[sc.len()..];
    if remainder.is_empty() {
        return None;
    }
    Some(ConcordAnalysis {
        sc: sc.into(),
        sc_ref: sc_ref.clone(),
        remainder: remainder.into(),
    })
}

pub fn detect_tense_aspect(remainder: &str, tables: &RuleTables) -> TenseAnalysis {
    let marked = tables
        .tense_markers
        .iter()
        .filter(|(k, _)| {
            remainder
                .strip_prefix(k.as_str())
                .is_some_and(|rest| char_len(rest) >= MIN_STEM)
        })
        .max_by_key(|(k, _)| k.len());
    match marked {
        Some((k, m)) => TenseAnalysis {
            tense: m.tense,
            aspect: m.aspect,
            rest: remainder[k.len()..].into(),
        },
        None => TenseAnalysis {
            tense: Tense::Unmarked,
            aspect: None,
            rest: remainder.into(),
        },
    }
}

/// Strips pre-final-vowel extensions from the right, keeping the final vowel.
/// The returned list is in surface order.
pub fn strip_derivational_suffixes(stem: &str, tables: &RuleTables) -> (String, Vec<Deriv>) {
    let mut root = String::from(stem);
    let mut derivs = Vec::new();
    while let Some(final_vowel) = root.chars().last().filter(|c| is_vowel(*c)) {
        let body = &root[..root.len() - final_vowel.len_utf8()];
        let Some((suffix, deriv)) = tables
            .deriv_suffixes
            .iter()
            .filter(|(k, _)| body.ends_with(k.as_str()))
            .max_by_key(|(k, _)| k.len())
        else {
            break;
        };
        let mut shorter = String::from(&body[..body.len() - suffix.len()]);
        shorter.push(final_vowel);
        if char_len(&shorter) < MIN_DERIVED_ROOT {
            break;
        }
        derivs.push(*deriv);
        root = shorter;
    }
    derivs.reverse();
    (root, derivs)
}

pub fn detect_clitics(surface: &str, tables: &RuleTables) -> CliticAnalysis {
    let proclitic = tables.proclitics.iter().find_map(|p| {
        let host = surface.strip_prefix(p.as_str())?;
        (char_len(host) >= MIN_CLITIC_HOST).then_some((p, host))
    });
    if let Some((p, host)) = proclitic {
        return CliticAnalysis {
            clitic_type: CliticType::Proclitic,
            clitic: Some(p.clone()),
            core: host.into(),
        };
    }
    let enclitic = tables.enclitics.iter().find_map(|e| {
        let host = surface.strip_suffix(e.as_str())?;
        (char_len(host) >= MIN_CLITIC_HOST).then_some((e, host))
    });
    if let Some((e, host)) = enclitic {
        return CliticAnalysis {
            clitic_type: CliticType::Enclitic,
            clitic: Some(e.clone()),
            core: host.into(),
        };
    }
    CliticAnalysis {
        clitic_type: CliticType::None,
        clitic: None,
        core: surface.into(),
    }
}

/// Closed-class membership, checked in a fixed order.
pub fn classify_closed_class(surface: &str, tables: &RuleTables) -> Option<(Pos, &'static str)> {
    [
        (&tables.ideophones, Pos::Adv, "Ideophone"),
        (&tables.adverbs, Pos::Adv, "Adverb"),
        (&tables.conjunctions, Pos::Cconj, "Conjunction"),
        (&tables.determiners, Pos::Det, "Determiner"),
        (&tables.pronouns, Pos::Pron, "Pronoun"),
    ]
    .into_iter()
    .find(|(set, _, _)| set.contains(surface))
    .map(|(_, pos, detail)| (pos, detail))
}

/// Subject concord → tense/aspect → object concord → extensions.
pub fn analyze_verb(surface: &str, tables: &RuleTables) -> Option<VerbAnalysis> {
    let concord = detect_concords(surface, tables)?;
    let ta = detect_tense_aspect(&concord.remainder, tables);
    let after_tense = ta.rest;
    let mut stem = after_tense.as_str();

    let plural_object = char_len(stem) >= 4 && (stem.ends_with("ai") || stem.ends_with("ei"));
    if plural_object {
        stem = &stem[..stem.len() - 1];
    }

    let oc = longest_prefix_key(&tables.object_concords, stem)
        .filter(|(k, _)| char_len(&stem[k.len()..]) >= MIN_OC_RESIDUE)
        .map(|(k, _)| k);
    if let Some(k) = oc {
        stem = &stem[k.len()..];
    }

    let (root, derivs) = strip_derivational_suffixes(stem, tables);
    if char_len(&root) < MIN_STEM {
        return None;
    }
    let verbalizer_note = tables
        .verbalizer_consonants
        .iter()
        .filter(|v| root.starts_with(v.as_str()))
        .max_by_key(|v| v.len())
        .map(|v| format!("verbalizer -{v}-"));
    let root_changed = root != after_tense;
    Some(VerbAnalysis {
        sc: concord.sc,
        sc_ref: concord.sc_ref,
        oc: oc.map(String::from),
        tense: ta.tense,
        aspect: ta.aspect,
        root,
        derivs,
        verbalizer_note,
        plural_object,
        root_changed,
    })
}
