//! Rule table files. The shipped `data/rule_tables.json` is the pretty JSON
//! rendering of the built-in tables, byte for byte.

use std::io::Read;
use std::path::PathBuf;

use shona_morph_core::RuleTables;

use crate::json::{json_error, LoadError};

pub const DEFAULT_TABLES_JSON: &str = include_str!("../data/rule_tables.json");

/// Environment variable naming a tables file to use instead of the built-in one.
pub const TABLES_ENV: &str = "SHONA_MORPH_TABLES";

pub fn tables_to_json(tables: &RuleTables) -> String {
    let mut s = serde_json::to_string_pretty(tables).expect("tables serialize");
    s.push('\n');
    s
}

pub fn parse_tables(source: &[u8]) -> Result<RuleTables, LoadError> {
    let tables: RuleTables = serde_json::from_slice(source).map_err(|e| json_error(source, 0, 1, e))?;
    tables.validate()?;
    Ok(tables)
}

pub fn load_tables(mut source: impl Read) -> Result<RuleTables, LoadError> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    parse_tables(&bytes)
}

/// `--tables` flag, else `$SHONA_MORPH_TABLES`, else none (built-in).
pub fn resolve_tables_path(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| {
        std::env::var_os(TABLES_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    })
}
