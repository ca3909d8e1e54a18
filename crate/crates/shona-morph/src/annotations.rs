//! Annotation export (JSON array / JSON lines / text table) and gold loading.

use std::io::{Read, Write};

use shona_morph_core::pipeline::validate_annotation;
use shona_morph_core::TokenAnnotation;

use crate::json::{json_error, raw_record, surface_of, LoadError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    JsonArray,
    Jsonl,
    Table,
}

/// Writes annotations in export field order with canonical feature strings.
pub fn export_json(annotations: &[TokenAnnotation], mut sink: impl Write, format: Format) -> std::io::Result<()> {
    match format {
        Format::JsonArray => {
            serde_json::to_writer_pretty(&mut sink, annotations)?;
            sink.write_all(b"\n")
        }
        Format::Jsonl => {
            for a in annotations {
                serde_json::to_writer(&mut sink, a)?;
                sink.write_all(b"\n")?;
            }
            Ok(())
        }
        Format::Table => sink.write_all(render_table(annotations).as_bytes()),
    }
}

/// Token / Lemma / POS / Category Detail / Morph Features / Gloss, with
/// empty cells shown as `-`.
pub fn render_table(annotations: &[TokenAnnotation]) -> String {
    const HEADER: [&str; 6] = ["Token", "Lemma", "POS", "Category Detail", "Morph Features", "Gloss"];
    let rows: Vec<[String; 6]> = annotations
        .iter()
        .map(|a| {
            [
                a.token.clone(),
                a.lemma.clone(),
                a.pos.as_str().into(),
                a.category_detail.clone(),
                a.morph_features.serialize(),
                a.gloss.clone(),
            ]
            .map(|c| if c.is_empty() { "-".into() } else { c })
        })
        .collect();
    let mut widths = HEADER.map(|h| h.chars().count());
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        out.push_str(padded.join(" | ").trim_end());
        out.push('\n');
    };
    line(&HEADER);
    for row in &rows {
        line(&row.iter().map(String::as_str).collect::<Vec<_>>());
    }
    out
}

/// Parses export output (array or JSON lines) back into annotations. Records
/// without ids get sentence 1 and their 1-based position.
pub fn parse_annotations(source: &[u8]) -> Result<Vec<TokenAnnotation>, LoadError> {
    let text_start = source.iter().position(|b| !b.is_ascii_whitespace());
    let objects: Vec<serde_json::Value> = match text_start.map(|i| source[i]) {
        None => Vec::new(),
        Some(b'[') => match crate::json::parse_value(source)? {
            serde_json::Value::Array(items) => items,
            _ => unreachable!("starts with '['"),
        },
        Some(_) => {
            let mut items = Vec::new();
            let mut offset = 0;
            for (line_no, line) in source.split_inclusive(|b| *b == b'\n').enumerate() {
                if !line.iter().all(u8::is_ascii_whitespace) {
                    let value = serde_json::from_slice(line).map_err(|e| json_error(source, offset, line_no + 1, e))?;
                    items.push(value);
                }
                offset += line.len();
            }
            items
        }
    };
    objects
        .iter()
        .enumerate()
        .map(|(index, value)| {
            let serde_json::Value::Object(map) = value else {
                return Err(LoadError::Layout(format!("record {index} is not a JSON object")));
            };
            let raw = raw_record(map);
            let position = u32::try_from(index + 1).unwrap_or(u32::MAX);
            validate_annotation(&raw, (1, position))
                .map(|v| v.value)
                .map_err(|violations| LoadError::Invalid {
                    index,
                    surface: surface_of(&raw),
                    violations,
                })
        })
        .collect()
}

pub fn load_gold(mut source: impl Read) -> Result<Vec<TokenAnnotation>, LoadError> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    parse_annotations(&bytes)
}
