//! JSON file formats, evaluation harness and command-line front end for the
//! Shona morphological analyzer in `shona-morph-core`.

pub mod annotations;
pub mod cli;
pub mod json;
pub mod lexicon_file;
pub mod tables_file;

pub use shona_morph_core as core;

pub use annotations::{export_json, load_gold, parse_annotations, render_table, Format};
pub use json::LoadError;
pub use lexicon_file::{check_lexicon, load_lexicon, parse_lexicon, seed_lexicon, write_lexicon, SEED_LEXICON};
pub use tables_file::{load_tables, parse_tables, tables_to_json, DEFAULT_TABLES_JSON, TABLES_ENV};
