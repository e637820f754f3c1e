//! Proof documents: numbered lines, subproofs, goals, checking and edits.
//!
//! Lines are numbered from 1 by their position. A subproof is opened by an
//! assumption line one level deeper than the line before it and lasts while
//! the following lines stay at least that deep.

mod check;
mod edit;
mod scope;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::formula::{parse, Formula, SyntaxError};
use crate::rules::RuleId;

pub use check::{check_line, check_proof, GoalReport, ProofReport};
pub use edit::{apply_edit, Edit, EditError};
pub use scope::{structure, validate_structure, visible_refs, Span, Structure, StructureError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineKind {
    Premise,
    Assumption,
    Conclusion,
}

impl LineKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LineKind::Premise => "premise",
            LineKind::Assumption => "assumption",
            LineKind::Conclusion => "conclusion",
        }
    }
}

impl fmt::Display for LineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub kind: LineKind,
    /// `None` for a line whose statement has not been entered yet.
    pub formula: Option<Formula>,
    pub rule: Option<RuleId>,
    /// 1-based line numbers.
    pub refs: Vec<usize>,
    pub depth: usize,
}

impl ProofLine {
    pub fn premise(formula: Formula) -> Self {
        ProofLine {
            kind: LineKind::Premise,
            formula: Some(formula),
            rule: None,
            refs: Vec::new(),
            depth: 0,
        }
    }

    pub fn assumption(formula: Formula, depth: usize) -> Self {
        ProofLine {
            kind: LineKind::Assumption,
            formula: Some(formula),
            rule: None,
            refs: Vec::new(),
            depth,
        }
    }

    pub fn conclusion(formula: Formula, rule: RuleId, refs: Vec<usize>, depth: usize) -> Self {
        ProofLine {
            kind: LineKind::Conclusion,
            formula: Some(formula),
            rule: Some(rule),
            refs,
            depth,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub title: String,
    pub author: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProofDocument {
    pub lines: Vec<ProofLine>,
    pub goals: Vec<Formula>,
    pub metadata: Metadata,
}

impl ProofDocument {
    pub fn new() -> Self {
        Self::default()
    }

    /// Line `index` (1-based).
    pub fn line(&self, index: usize) -> Option<&ProofLine> {
        index.checked_sub(1).and_then(|i| self.lines.get(i))
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Number of leading premise lines.
    pub fn premise_count(&self) -> usize {
        self.lines
            .iter()
            .take_while(|l| l.kind == LineKind::Premise)
            .count()
    }
}

/// Builds documents from statement text, mostly for tests and examples.
///
/// Lines go in at the current depth: [`assume`](Self::assume) opens a
/// subproof and [`close`](Self::close) leaves it.
#[derive(Debug, Default)]
pub struct ProofBuilder {
    doc: ProofDocument,
    depth: usize,
    error: Option<SyntaxError>,
}

impl ProofBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn parsed(&mut self, text: &str) -> Option<Formula> {
        match parse(text) {
            Ok(f) => Some(f),
            Err(e) => {
                self.error.get_or_insert(e);
                None
            }
        }
    }

    pub fn title(mut self, title: &str) -> Self {
        self.doc.metadata.title = title.to_string();
        self
    }

    pub fn premise(mut self, text: &str) -> Self {
        let formula = self.parsed(text);
        self.doc.lines.push(ProofLine {
            formula,
            ..ProofLine::premise(Formula::Top)
        });
        self
    }

    pub fn assume(mut self, text: &str) -> Self {
        let formula = self.parsed(text);
        self.depth += 1;
        self.doc.lines.push(ProofLine {
            formula,
            ..ProofLine::assumption(Formula::Top, self.depth)
        });
        self
    }

    pub fn conclude(mut self, text: &str, rule: RuleId, refs: &[usize]) -> Self {
        let formula = self.parsed(text);
        self.doc.lines.push(ProofLine {
            formula,
            ..ProofLine::conclusion(Formula::Top, rule, refs.to_vec(), self.depth)
        });
        self
    }

    /// Leave the innermost open subproof.
    pub fn close(mut self) -> Self {
        self.depth = self.depth.saturating_sub(1);
        self
    }

    pub fn goal(mut self, text: &str) -> Self {
        if let Some(f) = self.parsed(text) {
            self.doc.goals.push(f);
        }
        self
    }

    pub fn build(self) -> Result<ProofDocument, SyntaxError> {
        match self.error {
            Some(e) => Err(e),
            None => Ok(self.doc),
        }
    }
}
