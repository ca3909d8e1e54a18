//! Tokenization and the lexicon-then-rules annotation cascade.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::features::MorphFeatureBag;
use crate::lexicon::{case_fold, FieldReader, LexEntry, Lexicon, RawRecord, Validated, Violation, ENTRY_FIELDS};
use crate::rules::{
    analyze_verb, classify_closed_class, detect_clitics, detect_noun_class, NounAnalysis, VerbAnalysis,
};
use crate::schema::{CliticType, Number, Pos, Provenance};
use crate::tables::RuleTables;

/// One annotated token. Field order is the export order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenAnnotation {
    pub sentence_id: u32,
    pub token_id: u32,
    pub token: String,
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
    pub provenance: Provenance,
}

impl TokenAnnotation {
    fn blank(token: &Token, pos: Pos, provenance: Provenance) -> Self {
        TokenAnnotation {
            sentence_id: token.sentence_id,
            token_id: token.token_id,
            token: token.surface.clone(),
            lemma: String::new(),
            pos,
            category_detail: String::new(),
            morph_features: MorphFeatureBag::new(),
            tense: String::new(),
            aspect: String::new(),
            mood: String::new(),
            person: String::new(),
            number: Number::Unspecified,
            gender: String::new(),
            clitic_type: CliticType::None,
            dependency_relation: String::new(),
            gloss: String::new(),
            comments: String::new(),
            provenance,
        }
    }

    fn from_entry(token: &Token, entry: &LexEntry, provenance: Provenance) -> Self {
        TokenAnnotation {
            lemma: entry.lemma.clone(),
            category_detail: entry.category_detail.clone(),
            morph_features: entry.morph_features.clone(),
            tense: entry.tense.clone(),
            aspect: entry.aspect.clone(),
            mood: entry.mood.clone(),
            person: entry.person.clone(),
            number: entry.number,
            gender: entry.gender.clone(),
            clitic_type: entry.clitic_type,
            dependency_relation: entry.dependency_relation.clone(),
            gloss: entry.gloss.clone(),
            comments: entry.comments.clone(),
            ..TokenAnnotation::blank(token, entry.pos, provenance)
        }
    }

    /// Provenance/feature consistency.
    pub fn check_invariants(&self) -> Result<(), String> {
        let unknown_shape = self.pos == Pos::X && self.morph_features.is_empty();
        if (self.provenance == Provenance::Unknown) != unknown_shape {
            return Err(format!(
                "token {}:{} {:?}: provenance Unknown must coincide with pos X and no features",
                self.sentence_id, self.token_id, self.token
            ));
        }
        if self.provenance == Provenance::Rule && !self.morph_features.rule {
            return Err(format!(
                "token {}:{} {:?}: rule provenance without Rule=True",
                self.sentence_id, self.token_id, self.token
            ));
        }
        Ok(())
    }

    fn push_comment(&mut self, note: &str) {
        if !self.comments.is_empty() {
            self.comments.push_str("; ");
        }
        self.comments.push_str(note);
    }
}

/// Token ids must run 1, 2, … within each sentence.
pub fn check_token_ids(annotations: &[TokenAnnotation]) -> Result<(), String> {
    let mut expected: Option<(u32, u32)> = None;
    for a in annotations {
        let ok = match expected {
            Some((sentence, next)) if a.sentence_id == sentence => a.token_id == next,
            _ => a.token_id == 1,
        };
        if !ok {
            return Err(format!(
                "sentence {} token {}: ids are not contiguous from 1",
                a.sentence_id, a.token_id
            ));
        }
        expected = Some((a.sentence_id, a.token_id + 1));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub sentence_id: u32,
    pub token_id: u32,
    pub surface: String,
}

pub fn is_punctuation(c: char) -> bool {
    c.is_ascii_punctuation() || matches!(c, '“' | '”' | '‘' | '’' | '«' | '»' | '…' | '–' | '—')
}

fn is_sentence_final(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

/// Apostrophes and hyphens between letters stay inside the word (n'anga).
fn joins_word(c: char, prev: Option<char>, next: Option<char>) -> bool {
    matches!(c, '\'' | '’' | '-') && prev.is_some_and(char::is_alphanumeric) && next.is_some_and(char::is_alphanumeric)
}

/// Whitespace + punctuation tokenizer. Sentences end at `.`, `!` or `?`
/// followed by whitespace or end of text.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut out = TokenSink::default();
    for chunk in text.split_whitespace() {
        let chars: Vec<char> = chunk.chars().collect();
        let mut word = String::new();
        for (i, &c) in chars.iter().enumerate() {
            let prev = i.checked_sub(1).map(|j| chars[j]);
            let next = chars.get(i + 1).copied();
            if is_punctuation(c) && !joins_word(c, prev, next) {
                if !word.is_empty() {
                    out.emit(core::mem::take(&mut word));
                }
                out.emit(c.to_string());
                // the chunk ends at whitespace or end of text
                if is_sentence_final(c) && next.is_none() {
                    out.pending_break = true;
                }
            } else {
                word.push(c);
            }
        }
        if !word.is_empty() {
            out.emit(word);
        }
    }
    out.tokens
}

#[derive(Default)]
struct TokenSink {
    tokens: Vec<Token>,
    sentence_id: u32,
    token_id: u32,
    pending_break: bool,
}

impl TokenSink {
    fn emit(&mut self, surface: String) {
        if self.sentence_id == 0 || self.pending_break {
            self.sentence_id += 1;
            self.token_id = 0;
            self.pending_break = false;
        }
        self.token_id += 1;
        self.tokens.push(Token {
            sentence_id: self.sentence_id,
            token_id: self.token_id,
            surface,
        });
    }
}

enum Reading {
    Closed(Pos, &'static str),
    Noun(NounAnalysis),
    Verb(VerbAnalysis),
}

/// Closed class → noun class → verb, on a case-folded surface.
fn cascade(folded: &str, lex: &Lexicon, tables: &RuleTables) -> Option<Reading> {
    if let Some((pos, detail)) = classify_closed_class(folded, tables) {
        return Some(Reading::Closed(pos, detail));
    }
    if let Some(noun) = detect_noun_class(folded, tables, lex) {
        return Some(Reading::Noun(noun));
    }
    analyze_verb(folded, tables).map(Reading::Verb)
}

fn from_reading(token: &Token, folded: &str, reading: Reading) -> TokenAnnotation {
    match reading {
        Reading::Closed(pos, detail) => {
            let mut a = TokenAnnotation::blank(token, pos, Provenance::Rule);
            a.lemma = folded.into();
            a.category_detail = detail.into();
            a.morph_features.rule = true;
            a
        }
        Reading::Noun(noun) => {
            let mut a = TokenAnnotation::blank(token, Pos::Noun, Provenance::Rule);
            a.lemma = noun.stem;
            a.category_detail = format!("Mupanda {}", noun.class);
            a.morph_features.noun_class = Some(noun.class);
            a.morph_features.locative = noun.locative;
            a.morph_features.rule = true;
            a.number = noun.class.number();
            if let Some(inner) = noun.inner_class {
                a.push_comment(&format!("locative over a class {inner} noun"));
            }
            a
        }
        Reading::Verb(verb) => {
            let mut a = TokenAnnotation::blank(token, Pos::Verb, Provenance::Rule);
            let bag = &mut a.morph_features;
            bag.rule = true;
            bag.sc = Some(verb.sc.clone());
            bag.oc = verb.oc.clone();
            bag.tense = Some(verb.tense);
            bag.aspect = verb.aspect;
            bag.deriv = verb.derivs.clone();
            if verb.root_changed {
                bag.root = Some(verb.root.clone());
            }
            a.tense = match verb.tense {
                crate::features::Tense::Unmarked => String::new(),
                t => t.as_str().into(),
            };
            a.aspect = verb.aspect.map(|x| x.as_str().into()).unwrap_or_default();
            a.person = verb.sc_ref.person.clone();
            a.number = verb.sc_ref.number;
            for note in verb.notes() {
                a.push_comment(&note);
            }
            a.lemma = verb.root;
            a
        }
    }
}

/// Annotates one token.
pub fn annotate_token(token: &Token, lex: &Lexicon, tables: &RuleTables) -> TokenAnnotation {
    let surface = token.surface.as_str();
    if surface.chars().all(is_punctuation) {
        let mut a = TokenAnnotation::blank(token, Pos::Punct, Provenance::Rule);
        a.lemma = surface.into();
        a.morph_features.rule = true;
        return a;
    }
    if let Some(entry) = lex.lookup(surface) {
        return TokenAnnotation::from_entry(token, entry, Provenance::Lexicon);
    }
    let folded = case_fold(surface);
    if let Some(reading) = cascade(&folded, lex, tables) {
        return from_reading(token, &folded, reading);
    }

    let clitic = detect_clitics(&folded, tables);
    if let Some(morpheme) = &clitic.clitic {
        let host = match lex.lookup(&clitic.core) {
            Some(entry) => {
                let mut a = TokenAnnotation::from_entry(token, entry, Provenance::Rule);
                a.morph_features.rule = true;
                Some(a)
            }
            None => cascade(&clitic.core, lex, tables).map(|r| from_reading(token, &clitic.core, r)),
        };
        if let Some(mut a) = host {
            a.clitic_type = clitic.clitic_type;
            let note = match clitic.clitic_type {
                CliticType::Proclitic => format!("proclitic {morpheme}-"),
                _ => format!("enclitic -{morpheme}"),
            };
            a.push_comment(&note);
            return a;
        }
    }

    let mut a = TokenAnnotation::blank(token, Pos::X, Provenance::Unknown);
    a.lemma = folded;
    a
}

pub fn annotate(text: &str, lex: &Lexicon, tables: &RuleTables) -> Vec<TokenAnnotation> {
    tokenize(text).iter().map(|t| annotate_token(t, lex, tables)).collect()
}

/// A loaded lexicon and rule tables; shareable across threads.
#[derive(Debug, Clone, Default)]
pub struct Analyzer {
    pub lexicon: Lexicon,
    pub tables: RuleTables,
}

impl Analyzer {
    pub fn new(lexicon: Lexicon, tables: RuleTables) -> Self {
        Analyzer { lexicon, tables }
    }

    pub fn annotate(&self, text: &str) -> Vec<TokenAnnotation> {
        annotate(text, &self.lexicon, &self.tables)
    }
}

/// Reads one annotation record (export format). Missing ids take
/// `fallback_ids`; a missing provenance is inferred from the other fields.
pub fn validate_annotation(
    raw: &RawRecord,
    fallback_ids: (u32, u32),
) -> Result<Validated<TokenAnnotation>, Vec<Violation>> {
    let mut r = FieldReader::new(raw);
    let sentence_id = r.positive_int("sentence_id").unwrap_or(fallback_ids.0);
    let token_id = r.positive_int("token_id").unwrap_or(fallback_ids.1);
    let token = r.text("token", true);
    if raw.contains_key("token") && (token.is_empty() || token.chars().any(char::is_whitespace)) {
        r.push("token", "surface must be nonempty and contain no whitespace");
    }
    let pos = r.pos(false);
    let category_detail = r.text("category_detail", false);
    let morph_features = r.features();
    r.check_category(&category_detail, &morph_features);
    let provenance = if raw.contains_key("provenance") {
        r.parsed_provenance()
    } else if pos == Pos::X && morph_features.is_empty() {
        Provenance::Unknown
    } else if morph_features.rule {
        Provenance::Rule
    } else {
        Provenance::Lexicon
    };
    let annotation = TokenAnnotation {
        sentence_id,
        token_id,
        token,
        lemma: r.text("lemma", false),
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
        provenance,
    };
    if r.violations.is_empty() {
        if let Err(msg) = annotation.check_invariants() {
            r.push("provenance", msg);
        }
    }
    if !r.violations.is_empty() {
        return Err(r.violations);
    }
    let known: Vec<&str> = ENTRY_FIELDS
        .iter()
        .copied()
        .chain(["sentence_id", "token_id", "provenance"])
        .collect();
    Ok(Validated {
        value: annotation,
        warnings: r.unknown_fields(&known),
    })
}

impl FieldReader<'_> {
    fn parsed_provenance(&mut self) -> Provenance {
        let s = self.text("provenance", false);
        s.parse().unwrap_or_else(|()| {
            self.push("provenance", format!("{s:?} is not Lexicon, Rule or Unknown"));
            Provenance::Unknown
        })
    }
}
