//! Subproof structure and reference visibility.

use std::collections::BTreeSet;

use super::{LineKind, ProofDocument};

/// A subproof: its assumption line, its last line and its depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub assumption: usize,
    pub end: usize,
    pub depth: usize,
    /// False if the document ends inside the subproof.
    pub closed: bool,
}

impl Span {
    pub fn contains(&self, line: usize) -> bool {
        (self.assumption..=self.end).contains(&line)
    }
}

/// Layout of a document's subproofs plus the lines that break the layout
/// rules.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Structure {
    /// Ordered by assumption line.
    pub spans: Vec<Span>,
    /// Problem with each line's placement, by position (index 0 is line 1).
    pub issues: Vec<Option<String>>,
}

impl Structure {
    /// Innermost-last list of subproofs containing `line`.
    pub fn enclosing(&self, line: usize) -> impl Iterator<Item = &Span> {
        self.spans.iter().filter(move |s| s.contains(line))
    }

    /// The subproof that line `at` may discharge: it ends at `at - 1`, one
    /// level deeper than `at`.
    pub fn dischargeable(&self, at: usize, depth: usize) -> Option<&Span> {
        self.spans
            .iter()
            .find(|s| s.closed && s.end + 1 == at && s.depth == depth + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct StructureError {
    pub line: usize,
    pub message: String,
}

fn placement_issue(doc: &ProofDocument, i: usize) -> Option<String> {
    let line = &doc.lines[i];
    let prev_depth = if i == 0 { 0 } else { doc.lines[i - 1].depth };
    match line.kind {
        LineKind::Premise => {
            if i > 0 && doc.lines[i - 1].kind != LineKind::Premise {
                Some("premises must come before every other line".into())
            } else if line.depth != 0 {
                Some("premises cannot be inside a subproof".into())
            } else if line.rule.is_some() || !line.refs.is_empty() {
                Some("premises take no rule and no references".into())
            } else {
                None
            }
        }
        LineKind::Assumption => {
            if line.depth == 0 {
                Some("an assumption must open a subproof (depth at least 1)".into())
            } else if line.depth > prev_depth + 1 {
                Some(format!(
                    "an assumption can open a subproof at depth {} at most here",
                    prev_depth + 1
                ))
            } else if line.rule.is_some() || !line.refs.is_empty() {
                Some("assumptions take no rule and no references".into())
            } else {
                None
            }
        }
        LineKind::Conclusion => {
            if line.depth > prev_depth {
                Some(format!(
                    "this line is at depth {} but no subproof is open at that depth; start one with an assumption",
                    line.depth
                ))
            } else {
                None
            }
        }
    }
}

/// Compute the subproofs of `doc` and the misplaced lines. Misplaced lines do
/// not open or close subproofs.
pub fn structure(doc: &ProofDocument) -> Structure {
    let mut spans: Vec<Span> = Vec::new();
    let mut open: Vec<usize> = Vec::new(); // positions in `spans`
    let mut issues = Vec::with_capacity(doc.lines.len());
    for (i, line) in doc.lines.iter().enumerate() {
        let number = i + 1;
        let issue = placement_issue(doc, i);
        if issue.is_none() {
            let keep = match line.kind {
                LineKind::Assumption => line.depth - 1,
                _ => line.depth,
            };
            while open.len() > keep {
                let s = open.pop().unwrap();
                spans[s].end = number - 1;
                spans[s].closed = true;
            }
            if line.kind == LineKind::Assumption {
                open.push(spans.len());
                spans.push(Span {
                    assumption: number,
                    end: number,
                    depth: line.depth,
                    closed: false,
                });
            }
        }
        issues.push(issue);
    }
    for s in open {
        spans[s].end = doc.lines.len();
    }
    Structure { spans, issues }
}

/// Check everything a stored document must satisfy: placement of every line
/// and references that point backwards to existing lines. A document may end
/// inside an open subproof.
pub fn validate_structure(doc: &ProofDocument) -> Result<(), StructureError> {
    let s = structure(doc);
    if let Some((i, msg)) = s
        .issues
        .iter()
        .enumerate()
        .find_map(|(i, m)| m.as_ref().map(|m| (i, m)))
    {
        return Err(StructureError {
            line: i + 1,
            message: msg.clone(),
        });
    }
    for (i, line) in doc.lines.iter().enumerate() {
        if let Some(&r) = line.refs.iter().find(|&&r| r == 0 || r > i) {
            return Err(StructureError {
                line: i + 1,
                message: format!("reference {r} does not point to an earlier line"),
            });
        }
    }
    Ok(())
}

/// True if `j` is in ordinary scope at `at`: every subproof holding `j` also
/// holds `at`.
pub(crate) fn in_scope(s: &Structure, j: usize, at: usize) -> bool {
    j < at && s.enclosing(j).all(|span| span.contains(at))
}

/// Lines that line `at` may cite: earlier lines in scope, plus the
/// assumption and last line of a subproof ending just above `at` (citable
/// only by the Subproof rule).
pub fn visible_refs(doc: &ProofDocument, at: usize) -> BTreeSet<usize> {
    let s = structure(doc);
    let mut out: BTreeSet<usize> = (1..at).filter(|&j| in_scope(&s, j, at)).collect();
    if let Some(line) = doc.line(at) {
        if let Some(span) = s.dischargeable(at, line.depth) {
            out.insert(span.assumption);
            out.insert(span.end);
        }
    }
    out
}
