//! Quiver input: built-in names, JSON, or an arrow list like `1->2, 2->3`.

use std::fmt;
use std::path::Path;

use dgpp_core::{Quiver, QuiverError};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("invalid JSON quiver at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    /// A structural problem; `position` points at the offending arrow when
    /// the input was an arrow list.
    #[error("{kind}{}", at(*.position))]
    Invalid { kind: QuiverError, position: Option<usize> },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn at(position: Option<usize>) -> String {
    position.map(|p| format!(" (at {p})")).unwrap_or_default()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Label {
    Int(i64),
    Text(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(n) => write!(f, "{n}"),
            Label::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonArrow {
    id: Option<Label>,
    from: Label,
    to: Label,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonQuiver {
    name: Option<String>,
    vertices: Vec<Label>,
    #[serde(default)]
    arrows: Vec<JsonArrow>,
}

/// Parses a quiver from a built-in name, a path to a file, JSON text or an
/// arrow list. Files are read and parsed by content.
pub fn parse_quiver(input: &str) -> Result<Quiver, ParseError> {
    let trimmed = input.trim();
    if let Ok(q) = Quiver::builtin(trimmed) {
        return Ok(q);
    }
    if trimmed.starts_with('{') {
        return parse_json(trimmed);
    }
    if trimmed.contains("->") {
        return parse_arrow_list(trimmed);
    }
    let path = Path::new(trimmed);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ParseError::Io { path: trimmed.to_string(), message: e.to_string() })?;
        return parse_quiver(&text);
    }
    Err(ParseError::Invalid { kind: QuiverError::UnknownName(trimmed.to_string()), position: None })
}

pub fn parse_json(text: &str) -> Result<Quiver, ParseError> {
    let raw: JsonQuiver = serde_json::from_str(text)
        .map_err(|e| ParseError::Json { line: e.line(), column: e.column(), message: e.to_string() })?;
    let vertices = raw.vertices.iter().map(|v| v.to_string()).collect();
    let arrows = raw
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let id = a.id.as_ref().map_or_else(|| format!("a{}", k + 1), |l| l.to_string());
            (id, a.from.to_string(), a.to.to_string())
        })
        .collect();
    let q = Quiver::new(vertices, arrows).map_err(|kind| ParseError::Invalid { kind, position: None })?;
    Ok(match raw.name {
        Some(n) => q.named(n),
        None => q,
    })
}

/// `1->2, 2->3`: comma, semicolon or newline separated arrows, labelled
/// `a1, a2, ...` in order. A bare label adds an isolated vertex. Vertices
/// are numbered by first appearance.
pub fn parse_arrow_list(text: &str) -> Result<Quiver, ParseError> {
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows = Vec::new();
    let mut positions = Vec::new();
    let mut offset = 0;
    let add_vertex = |v: &str, vertices: &mut Vec<String>| {
        if !vertices.iter().any(|x| x == v) {
            vertices.push(v.to_string());
        }
    };
    for piece in text.split([',', ';', '\n']) {
        let start = offset + (piece.len() - piece.trim_start().len());
        offset += piece.len() + 1;
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let parts: Vec<&str> = piece.split("->").map(str::trim).collect();
        let valid = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_');
        if let Some(bad) = parts.iter().find(|p| !valid(p)) {
            let message = if bad.is_empty() { format!("missing vertex in `{piece}`") } else { format!("bad vertex `{bad}`") };
            return Err(ParseError::Syntax { position: start, message });
        }
        for p in &parts {
            add_vertex(p, &mut vertices);
        }
        // `1->2->3` is a chain of arrows
        for pair in parts.windows(2) {
            arrows.push((format!("a{}", arrows.len() + 1), pair[0].to_string(), pair[1].to_string()));
            positions.push(start);
        }
    }
    if vertices.is_empty() {
        return Err(ParseError::Syntax { position: 0, message: "empty quiver".into() });
    }
    Quiver::new(vertices, arrows.clone()).map_err(|kind| {
        let position = match &kind {
            QuiverError::Loop { arrow } => arrows.iter().position(|a| &a.0 == arrow).map(|k| positions[k]),
            _ => None,
        };
        ParseError::Invalid { kind, position }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_and_lists() {
        assert_eq!(parse_quiver("A2").unwrap().num_vertices(), 2);
        let q = parse_quiver("1->2, 2->3").unwrap();
        assert_eq!(q.num_vertices(), 3);
        assert_eq!(q.arrows().len(), 2);
        assert_eq!(parse_quiver("1->2->3").unwrap().arrows(), q.arrows());
    }

    #[test]
    fn loop_is_reported_with_position() {
        match parse_quiver("1->2, 1->1") {
            Err(ParseError::Invalid { kind: QuiverError::Loop { .. }, position }) => assert_eq!(position, Some(6)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn json_form() {
        let q = parse_quiver(r#"{"vertices":[1,2],"arrows":[{"id":"x","from":1,"to":2},{"id":"y","from":1,"to":2}]}"#).unwrap();
        assert_eq!(q.arrows().len(), 2);
        let dup = parse_quiver(r#"{"vertices":[1,2],"arrows":[{"id":"x","from":1,"to":2},{"id":"x","from":1,"to":2}]}"#);
        assert!(matches!(dup, Err(ParseError::Invalid { kind: QuiverError::DuplicateArrow(_), .. })));
        assert!(matches!(parse_quiver(r#"{"vertices":[1,2],"#), Err(ParseError::Json { .. })));
    }
}
