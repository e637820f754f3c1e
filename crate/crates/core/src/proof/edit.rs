//! Document edits. Every edit returns a new document with lines renumbered
//! from 1 and references following the lines they pointed at.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::scope::{structure, validate_structure};
use super::{LineKind, ProofDocument, ProofLine};
use crate::formula::{check_arities, parse, ArityError, Formula, SyntaxError};
use crate::rules::RuleId;

/// One editing operation. Line numbers are 1-based and refer to the document
/// the edit is applied to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Edit {
    /// Append a premise to the end of the premise block.
    AddPremise {
        statement: String,
    },
    /// Append a conclusion at the depth of the last line.
    AddConclusion {
        statement: String,
        #[serde(default)]
        rule: Option<RuleId>,
        #[serde(default)]
        refs: Vec<usize>,
    },
    InsertLine {
        before: usize,
        kind: LineKind,
        statement: String,
    },
    DeleteLine {
        line: usize,
    },
    SetFormula {
        line: usize,
        statement: String,
    },
    SetRule {
        line: usize,
        rule: Option<RuleId>,
    },
    SetRefs {
        line: usize,
        refs: Vec<usize>,
    },
    /// Turn a premise into a top-level conclusion or back, moving it so the
    /// premises stay together at the top.
    ToggleKind {
        line: usize,
    },
    /// Append an assumption opening a subproof one level deeper.
    BeginSubproof {
        statement: String,
    },
    /// Close the innermost open subproof with a discharge line.
    EndSubproof,
    SetGoals {
        goals: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EditError {
    #[error("{0}")]
    InvalidEditTarget(String),
    #[error("premises must stay above every other line; {0}")]
    PremiseAfterConclusion(String),
    #[error("cannot read the statement: {0}")]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Arity(#[from] ArityError),
}

impl EditError {
    /// Stable identifier for protocol responses.
    pub fn code(&self) -> &'static str {
        match self {
            EditError::InvalidEditTarget(_) => "InvalidEditTarget",
            EditError::PremiseAfterConclusion(_) => "PremiseAfterConclusion",
            EditError::Syntax(_) => "SyntaxError",
            EditError::Arity(_) => "ArityError",
        }
    }
}

fn statement(text: &str) -> Result<Option<Formula>, SyntaxError> {
    if text.trim().is_empty() {
        Ok(None)
    } else {
        parse(text).map(Some)
    }
}

fn target(msg: impl Into<String>) -> EditError {
    EditError::InvalidEditTarget(msg.into())
}

/// Lines tagged with stable ids; references hold ids until renumbering.
struct Draft {
    lines: Vec<(usize, ProofLine)>,
    next_id: usize,
}

impl Draft {
    fn new(doc: &ProofDocument) -> Self {
        Draft {
            lines: doc
                .lines
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, l)| (i + 1, l))
                .collect(),
            next_id: doc.len() + 1,
        }
    }

    fn fresh(&mut self) -> usize {
        self.next_id += 1;
        self.next_id - 1
    }

    fn finish(self) -> Vec<ProofLine> {
        let position: HashMap<usize, usize> = self
            .lines
            .iter()
            .enumerate()
            .map(|(i, (id, _))| (*id, i + 1))
            .collect();
        self.lines
            .into_iter()
            .enumerate()
            .map(|(i, (_, mut line))| {
                let at = i + 1;
                let refs: Vec<usize> = line
                    .refs
                    .iter()
                    .filter_map(|r| position.get(r).copied())
                    .collect();
                if refs.iter().any(|&r| r >= at) {
                    line.refs = refs.into_iter().filter(|&r| r < at).collect();
                    line.rule = None;
                } else {
                    line.refs = refs;
                }
                line
            })
            .collect()
    }
}

fn existing(doc: &ProofDocument, line: usize) -> Result<&ProofLine, EditError> {
    doc.line(line)
        .ok_or_else(|| target(format!("there is no line {line}")))
}

fn check_refs_exist(doc: &ProofDocument, refs: &[usize]) -> Result<(), EditError> {
    match refs.iter().find(|&&r| r == 0 || r > doc.len()) {
        Some(r) => Err(target(format!("there is no line {r} to cite"))),
        None => Ok(()),
    }
}

/// Apply `edit` to `doc`, returning the edited document.
///
/// References that would point forward after the edit are removed and the
/// line's rule is cleared, so the line shows as unchecked.
pub fn apply_edit(doc: &ProofDocument, edit: &Edit) -> Result<ProofDocument, EditError> {
    let mut draft = Draft::new(doc);
    let mut goals = doc.goals.clone();
    let premises = doc.premise_count();
    let last_depth = doc.lines.last().map_or(0, |l| l.depth);
    match edit {
        Edit::AddPremise { statement: text } => {
            let line = ProofLine {
                formula: statement(text)?,
                ..ProofLine::premise(Formula::Top)
            };
            let id = draft.fresh();
            draft.lines.insert(premises, (id, line));
        }
        Edit::AddConclusion {
            statement: text,
            rule,
            refs,
        } => {
            check_refs_exist(doc, refs)?;
            let line = ProofLine {
                kind: LineKind::Conclusion,
                formula: statement(text)?,
                rule: *rule,
                refs: refs.clone(),
                depth: last_depth,
            };
            let id = draft.fresh();
            draft.lines.push((id, line));
        }
        Edit::InsertLine {
            before,
            kind,
            statement: text,
        } => {
            let before = *before;
            if before == 0 || before > doc.len() + 1 {
                return Err(target(format!(
                    "cannot insert before line {before}; the document has {} lines",
                    doc.len()
                )));
            }
            let formula = statement(text)?;
            let prev_depth = doc.line(before - 1).map_or(0, |l| l.depth);
            let line = match kind {
                LineKind::Premise => {
                    if before > premises + 1 {
                        return Err(EditError::PremiseAfterConclusion(format!(
                            "a premise can go no lower than line {}",
                            premises + 1
                        )));
                    }
                    ProofLine {
                        formula,
                        ..ProofLine::premise(Formula::Top)
                    }
                }
                LineKind::Conclusion | LineKind::Assumption => {
                    if before <= premises {
                        return Err(EditError::PremiseAfterConclusion(format!(
                            "a {kind} can go no higher than line {}",
                            premises + 1
                        )));
                    }
                    let depth = if *kind == LineKind::Assumption {
                        prev_depth + 1
                    } else {
                        prev_depth
                    };
                    ProofLine {
                        kind: *kind,
                        formula,
                        rule: None,
                        refs: Vec::new(),
                        depth,
                    }
                }
            };
            let id = draft.fresh();
            draft.lines.insert(before - 1, (id, line));
        }
        Edit::DeleteLine { line } => {
            existing(doc, *line)?;
            draft.lines.remove(line - 1);
        }
        Edit::SetFormula {
            line,
            statement: text,
        } => {
            existing(doc, *line)?;
            draft.lines[line - 1].1.formula = statement(text)?;
        }
        Edit::SetRule { line, rule } => {
            let current = existing(doc, *line)?;
            if current.kind != LineKind::Conclusion && rule.is_some() {
                return Err(target(format!(
                    "line {line} is {} and takes no rule",
                    article(current.kind)
                )));
            }
            draft.lines[line - 1].1.rule = *rule;
        }
        Edit::SetRefs { line, refs } => {
            let current = existing(doc, *line)?;
            if current.kind != LineKind::Conclusion && !refs.is_empty() {
                return Err(target(format!(
                    "line {line} is {} and takes no references",
                    article(current.kind)
                )));
            }
            check_refs_exist(doc, refs)?;
            draft.lines[line - 1].1.refs = refs.clone();
        }
        Edit::ToggleKind { line } => {
            let current = existing(doc, *line)?;
            let (id, mut moved) = draft.lines.remove(line - 1);
            moved.rule = None;
            moved.refs.clear();
            moved.depth = 0;
            match current.kind {
                LineKind::Premise => {
                    moved.kind = LineKind::Conclusion;
                    draft.lines.insert(premises - 1, (id, moved));
                }
                LineKind::Conclusion if current.depth == 0 => {
                    moved.kind = LineKind::Premise;
                    draft.lines.insert(premises, (id, moved));
                }
                _ => {
                    return Err(target(format!(
                    "only premises and top-level conclusions can change kind; line {line} is {}",
                    if current.kind == LineKind::Assumption {
                        "an assumption"
                    } else {
                        "inside a subproof"
                    }
                )))
                }
            }
        }
        Edit::BeginSubproof { statement: text } => {
            let line = ProofLine {
                formula: statement(text)?,
                ..ProofLine::assumption(Formula::Top, last_depth + 1)
            };
            let id = draft.fresh();
            draft.lines.push((id, line));
        }
        Edit::EndSubproof => {
            let s = structure(doc);
            let Some(span) = s
                .spans
                .iter()
                .rev()
                .find(|sp| !sp.closed && sp.depth == last_depth)
            else {
                return Err(target("no subproof is open"));
            };
            let assumption = doc.line(span.assumption).and_then(|l| l.formula.clone());
            let result = doc.lines.last().and_then(|l| l.formula.clone());
            let formula = assumption.zip(result).map(|(a, b)| Formula::implies(a, b));
            let line = ProofLine {
                kind: LineKind::Conclusion,
                formula,
                rule: Some(RuleId::Subproof),
                refs: vec![span.assumption, doc.len()],
                depth: last_depth - 1,
            };
            let id = draft.fresh();
            draft.lines.push((id, line));
        }
        Edit::SetGoals { goals: texts } => {
            goals = texts.iter().map(|t| parse(t)).collect::<Result<_, _>>()?;
        }
    }
    let edited = ProofDocument {
        lines: draft.finish(),
        goals,
        metadata: doc.metadata.clone(),
    };
    if let Err(e) = validate_structure(&edited) {
        return Err(target(format!(
            "the edit would break the proof layout ({e})"
        )));
    }
    check_arities(
        edited
            .lines
            .iter()
            .filter_map(|l| l.formula.as_ref())
            .chain(&edited.goals),
    )?;
    Ok(edited)
}

fn article(kind: LineKind) -> &'static str {
    match kind {
        LineKind::Premise => "a premise",
        LineKind::Assumption => "an assumption",
        LineKind::Conclusion => "a conclusion",
    }
}
