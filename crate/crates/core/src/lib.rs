//! Morphological analysis for Shona: a verified lexicon consulted first, then
//! a cascade of rules over closed morpheme tables (noun class prefixes,
//! concords, tense/aspect markers, verbal extensions, clitics and closed-class
//! words), plus coverage/accuracy metrics against gold annotations.
//!
//! The crate is `no_std` and needs only `alloc`. File formats and the command
//! line live in the `shona-morph` crate.
#![no_std]

extern crate alloc;

pub mod eval;
pub mod features;
pub mod lexicon;
pub mod pipeline;
pub mod rules;
pub mod schema;
pub mod tables;

pub use eval::{compute_metrics, render_report, AlignmentError, EvalReport};
pub use features::{Aspect, Deriv, FeatureError, FeatureKey, MorphFeatureBag, NounClass, Tense};
pub use lexicon::{validate_entry, LexEntry, Lexicon, LexiconError, RawRecord, RawValue, Validated, Violation};
pub use pipeline::{annotate, tokenize, validate_annotation, Analyzer, Token, TokenAnnotation};
pub use schema::{CliticType, Number, Pos, Provenance};
pub use tables::{RuleTables, TableError};
