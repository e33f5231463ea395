//! Poset documents: the line-oriented text format, its JSON twin, and DOT output.
//!
//! Text format:
//!
//! ```text
//! # the N
//! meta name N
//! elements a b c d
//! order a<c b<c b<d
//! ```
//!
//! Statements end at a newline or `;`, and `#` comments run to the end of the
//! line. `elements` and `order` may repeat and accumulate. Order pairs need
//! not be reduced. Dummies use the reserved encoding `_d.<lower>.<upper>.<round>`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::{Poset, PosetError, VertexId};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid JSON document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Clone, Default, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PosetDocument {
    pub elements: Vec<String>,
    #[serde(rename = "relations")]
    pub order: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

impl PosetDocument {
    pub fn to_poset(&self) -> Result<Poset, PosetError> {
        let ids = self
            .elements
            .iter()
            .map(|e| e.parse::<VertexId>())
            .collect::<Result<Vec<_>, _>>()?;
        let pairs = self
            .order
            .iter()
            .map(|(x, y)| Ok((x.parse::<VertexId>()?, y.parse::<VertexId>()?)))
            .collect::<Result<Vec<_>, PosetError>>()?;
        Poset::new(ids, pairs)
    }

    /// The document listing `p`'s vertices and covers.
    pub fn from_poset(p: &Poset) -> PosetDocument {
        PosetDocument {
            elements: p.vertices().iter().map(ToString::to_string).collect(),
            order: p
                .cover_edges()
                .into_iter()
                .map(|e| (e.lower.to_string(), e.upper.to_string()))
                .collect(),
            meta: BTreeMap::new(),
        }
    }
}

pub fn parse_poset(text: &str) -> Result<PosetDocument, FormatError> {
    let mut doc = PosetDocument::default();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for stmt in line.split(';') {
            parse_statement(stmt, line_no + 1, offset, &mut doc)?;
            offset += stmt.chars().count() + 1;
        }
    }
    Ok(doc)
}

fn parse_statement(stmt: &str, line: usize, offset: usize, doc: &mut PosetDocument) -> Result<(), FormatError> {
    let mut tokens = tokens_with_columns(stmt, offset);
    let Some((keyword, kw_col)) = tokens.next() else {
        return Ok(());
    };
    let err = |column: usize, message: String| FormatError::Parse {
        line,
        column,
        message,
    };
    let check = |tok: &str, column: usize| {
        tok.parse::<VertexId>()
            .map(|_| ())
            .map_err(|_| err(column, format!("invalid element `{tok}`")))
    };
    match keyword {
        "elements" => {
            for (tok, col) in tokens {
                check(tok, col)?;
                doc.elements.push(tok.to_string());
            }
        }
        "order" => {
            for (tok, col) in tokens {
                let mut parts = tok.split('<');
                match (parts.next(), parts.next(), parts.next()) {
                    (Some(x), Some(y), None) => {
                        check(x, col)?;
                        check(y, col + x.chars().count() + 1)?;
                        doc.order.push((x.to_string(), y.to_string()));
                    }
                    _ => return Err(err(col, format!("expected `x<y`, found `{tok}`"))),
                }
            }
        }
        "meta" => {
            let (key, col) = tokens
                .next()
                .ok_or_else(|| err(kw_col, "`meta` needs a key".into()))?;
            let rest = stmt.trim_start()["meta".len()..].trim_start()[key.len()..].trim();
            if doc.meta.insert(key.to_string(), rest.to_string()).is_some() {
                return Err(err(col, format!("duplicate meta key `{key}`")));
            }
        }
        other => return Err(err(kw_col, format!("unknown statement `{other}`"))),
    }
    Ok(())
}

// Whitespace-separated tokens with 1-based character columns.
fn tokens_with_columns(s: &str, offset: usize) -> impl Iterator<Item = (&str, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (byte, ch)) in s.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((byte, col)),
            (true, Some((b, c))) => {
                out.push((&s[b..byte], offset + c + 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        out.push((&s[b..], offset + c + 1));
    }
    out.into_iter()
}

pub fn parse_json(text: &str) -> Result<PosetDocument, FormatError> {
    Ok(serde_json::from_str(text)?)
}

/// Parses text and builds the poset in one go.
pub fn read_poset(text: &str) -> Result<Poset, FormatError> {
    Ok(parse_poset(text)?.to_poset()?)
}

pub fn read_poset_json(text: &str) -> Result<Poset, FormatError> {
    Ok(parse_json(text)?.to_poset()?)
}

/// Two lines: the vertices in canonical order, then the covers in canonical order.
pub fn serialize_poset(p: &Poset) -> String {
    let mut out = String::from("elements");
    for v in p.vertices() {
        write!(out, " {v}").unwrap();
    }
    out.push_str("\norder");
    for e in p.cover_edges() {
        write!(out, " {e}").unwrap();
    }
    out.push('\n');
    out
}

/// [`serialize_poset`] on a single line, statements joined by `; `.
pub fn serialize_poset_line(p: &Poset) -> String {
    serialize_poset(p).trim_end().replace('\n', "; ")
}

pub fn serialize_json(p: &Poset) -> String {
    serde_json::to_string_pretty(&PosetDocument::from_poset(p)).expect("document serializes")
}

/// Graphviz rendering of the Hasse diagram, drawn bottom-up.
///
/// Originals are labelled boxes, dummies are points.
pub fn emit_dot(p: &Poset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for v in p.vertices() {
        if v.is_dummy() {
            writeln!(out, "  \"{v}\" [shape=point];").unwrap();
        } else {
            writeln!(out, "  \"{v}\" [shape=box, label=\"{v}\"];").unwrap();
        }
    }
    for e in p.cover_edges() {
        writeln!(out, "  \"{}\" -> \"{}\";", e.lower, e.upper).unwrap();
    }
    out.push_str("}\n");
    out
}
