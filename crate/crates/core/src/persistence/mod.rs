//! Proof files, proof import and LaTeX export.
//!
//! A proof file is UTF-8 JSON with two-space indentation, LF line endings and
//! a trailing newline. Keys appear in a fixed order:
//!
//! ```json
//! {
//!   "version": 1,
//!   "metadata": { "title": "", "author": "" },
//!   "goals": ["Q"],
//!   "lines": [
//!     { "index": 1, "kind": "premise", "depth": 0, "statement": "P -> Q", "rule": null, "refs": [] }
//!   ]
//! }
//! ```
//!
//! Statements are stored in the ASCII syntax; an empty string is a line
//! without a statement. Verdicts are never stored.

mod latex;

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::formula::{check_arities, parse, Formula};
use crate::proof::{validate_structure, LineKind, Metadata, ProofDocument, ProofLine};
use crate::rules::RuleId;

pub use latex::export_latex;

/// Version written into every file.
pub const FORMAT_VERSION: u64 = 1;

/// Extension [`save`] guarantees.
pub const EXTENSION: &str = ".aris.json";

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("bad proof file at {location}: {message}")]
    Format { location: String, message: String },
    #[error("unsupported proof file: {0}")]
    Version(String),
}

#[derive(Debug, thiserror::Error)]
#[error("cannot write {path}: {source}")]
pub struct SaveError {
    pub path: PathBuf,
    pub source: io::Error,
}

#[derive(Serialize, Deserialize)]
struct FileLine {
    index: usize,
    kind: LineKind,
    depth: usize,
    statement: String,
    rule: Option<RuleId>,
    refs: Vec<usize>,
}

#[derive(Serialize)]
struct FileRef<'a> {
    version: u64,
    metadata: &'a Metadata,
    goals: Vec<String>,
    lines: Vec<FileLine>,
}

/// Canonical file contents for `doc`.
pub fn to_string(doc: &ProofDocument) -> String {
    let file = FileRef {
        version: FORMAT_VERSION,
        metadata: &doc.metadata,
        goals: doc.goals.iter().map(Formula::to_ascii).collect(),
        lines: doc
            .lines
            .iter()
            .enumerate()
            .map(|(i, l)| FileLine {
                index: i + 1,
                kind: l.kind,
                depth: l.depth,
                statement: l
                    .formula
                    .as_ref()
                    .map(Formula::to_ascii)
                    .unwrap_or_default(),
                rule: l.rule,
                refs: l.refs.clone(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("proof files always serialize");
    out.push('\n');
    out
}

fn format_error(location: impl Into<String>, message: impl ToString) -> LoadError {
    LoadError::Format {
        location: location.into(),
        message: message.to_string(),
    }
}

fn check_keys(value: &Value, location: &str, allowed: &[&str]) -> Result<(), LoadError> {
    let Some(obj) = value.as_object() else {
        return Err(format_error(location, "expected an object"));
    };
    if let Some(key) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        let at = if location.is_empty() {
            String::new()
        } else {
            format!(" in {location}")
        };
        return Err(LoadError::Version(format!(
            "unknown field '{key}'{at}; the file may come from a newer version"
        )));
    }
    Ok(())
}

fn field<'a>(value: &'a Value, key: &str, location: &str) -> Result<&'a Value, LoadError> {
    value
        .get(key)
        .ok_or_else(|| format_error(location, format!("missing field '{key}'")))
}

fn statement(text: &str, location: &str) -> Result<Option<Formula>, LoadError> {
    if text.is_empty() {
        return Ok(None);
    }
    parse(text).map(Some).map_err(|e| format_error(location, e))
}

/// Parse and validate file contents.
pub fn from_str(text: &str) -> Result<ProofDocument, LoadError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| format_error(format!("line {}, column {}", e.line(), e.column()), e))?;
    check_keys(&value, "", &["version", "metadata", "goals", "lines"])?;
    let version = field(&value, "version", "version")?;
    if version.as_u64() != Some(FORMAT_VERSION) {
        return Err(LoadError::Version(format!(
            "format version {version} (this program reads version {FORMAT_VERSION})"
        )));
    }
    let metadata = field(&value, "metadata", "metadata")?;
    check_keys(metadata, "metadata", &["title", "author"])?;
    let metadata: Metadata =
        serde_json::from_value(metadata.clone()).map_err(|e| format_error("metadata", e))?;

    let goals: Vec<String> = serde_json::from_value(field(&value, "goals", "goals")?.clone())
        .map_err(|e| format_error("goals", e))?;
    let goals = goals
        .iter()
        .enumerate()
        .map(|(i, g)| parse(g).map_err(|e| format_error(format!("goals[{i}]"), e)))
        .collect::<Result<Vec<_>, _>>()?;

    let Some(raw_lines) = field(&value, "lines", "lines")?.as_array() else {
        return Err(format_error("lines", "expected a list"));
    };
    let mut lines = Vec::with_capacity(raw_lines.len());
    for (i, raw) in raw_lines.iter().enumerate() {
        let location = format!("lines[{i}]");
        check_keys(
            raw,
            &location,
            &["index", "kind", "depth", "statement", "rule", "refs"],
        )?;
        let line: FileLine =
            serde_json::from_value(raw.clone()).map_err(|e| format_error(&location, e))?;
        if line.index != i + 1 {
            return Err(format_error(
                format!("{location}.index"),
                format!("expected line number {}, found {}", i + 1, line.index),
            ));
        }
        lines.push(ProofLine {
            kind: line.kind,
            formula: statement(&line.statement, &format!("{location}.statement"))?,
            rule: line.rule,
            refs: line.refs,
            depth: line.depth,
        });
    }
    let doc = ProofDocument {
        lines,
        goals,
        metadata,
    };
    validate_structure(&doc)
        .map_err(|e| format_error(format!("lines[{}]", e.line - 1), e.message))?;
    check_arities(
        doc.lines
            .iter()
            .filter_map(|l| l.formula.as_ref())
            .chain(&doc.goals),
    )
    .map_err(|e| format_error("statements", e))?;
    Ok(doc)
}

/// Read and validate the proof file at `path`.
pub fn load(path: impl AsRef<Path>) -> Result<ProofDocument, LoadError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    from_str(&text)
}

/// `path` with [`EXTENSION`] appended unless it already ends with it.
pub fn with_extension(path: impl AsRef<Path>) -> PathBuf {
    let path = path.as_ref();
    if path.to_string_lossy().ends_with(EXTENSION) {
        path.to_path_buf()
    } else {
        let mut s = path.as_os_str().to_os_string();
        s.push(EXTENSION);
        PathBuf::from(s)
    }
}

/// Write `doc` to exactly `path`.
pub fn write(doc: &ProofDocument, path: impl AsRef<Path>) -> Result<(), SaveError> {
    let path = path.as_ref();
    fs::write(path, to_string(doc)).map_err(|source| SaveError {
        path: path.to_path_buf(),
        source,
    })
}

/// Write `doc` to `path`, adding [`EXTENSION`] if missing. Returns the path
/// written.
pub fn save(doc: &ProofDocument, path: impl AsRef<Path>) -> Result<PathBuf, SaveError> {
    let path = path.as_ref();
    if path.as_os_str().is_empty() {
        return Err(SaveError {
            path: path.to_path_buf(),
            source: io::Error::new(io::ErrorKind::InvalidInput, "empty file name"),
        });
    }
    let path = with_extension(path);
    write(doc, &path)?;
    Ok(path)
}

/// Merge `source` into `target`: source premises go after target's premises,
/// the rest of source after the rest of target. Goals of `source` not
/// already among target's goals are added. Empty metadata fields of
/// `target` are filled from `source`.
pub fn import_proof(
    target: &ProofDocument,
    source: &ProofDocument,
) -> Result<ProofDocument, LoadError> {
    validate_structure(source)
        .map_err(|e| format_error(format!("imported lines[{}]", e.line - 1), e.message))?;
    let tp = target.premise_count();
    let sp = source.premise_count();
    let tr = target.len() - tp;
    let shift_target = |r: usize| if r <= tp { r } else { r + sp };
    let shift_source = |r: usize| if r <= sp { tp + r } else { tp + tr + r };

    let remap = |line: &ProofLine, f: &dyn Fn(usize) -> usize| ProofLine {
        refs: line.refs.iter().map(|&r| f(r)).collect(),
        ..line.clone()
    };
    let mut lines = Vec::with_capacity(target.len() + source.len());
    lines.extend(target.lines[..tp].iter().cloned());
    lines.extend(source.lines[..sp].iter().cloned());
    lines.extend(target.lines[tp..].iter().map(|l| remap(l, &shift_target)));
    lines.extend(source.lines[sp..].iter().map(|l| remap(l, &shift_source)));

    let mut goals = target.goals.clone();
    for g in &source.goals {
        if !target
            .goals
            .iter()
            .any(|t| crate::formula::alpha_equal(t, g))
        {
            goals.push(g.clone());
        }
    }
    let pick = |t: &String, s: &String| if t.is_empty() { s.clone() } else { t.clone() };
    let metadata = Metadata {
        title: pick(&target.metadata.title, &source.metadata.title),
        author: pick(&target.metadata.author, &source.metadata.author),
    };
    let merged = ProofDocument {
        lines,
        goals,
        metadata,
    };
    validate_structure(&merged)
        .map_err(|e| format_error(format!("merged lines[{}]", e.line - 1), e.message))?;
    check_arities(
        merged
            .lines
            .iter()
            .filter_map(|l| l.formula.as_ref())
            .chain(&merged.goals),
    )
    .map_err(|e| format_error("imported statements", e))?;
    Ok(merged)
}
