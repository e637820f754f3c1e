//! Whole-document checking.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::scope::{in_scope, structure, Structure};
use super::{LineKind, ProofDocument};
use crate::diagnostic::{DiagnosticCode, Verdict};
use crate::formula::{alpha_equal, constants, Formula};
use crate::rules::{self, RuleContext, RuleId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoalReport {
    pub goal: Formula,
    pub achieved: bool,
    /// First line that achieves the goal.
    pub line: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofReport {
    /// One verdict per line, in order.
    pub verdicts: Vec<Verdict>,
    pub goals: Vec<GoalReport>,
}

impl ProofReport {
    pub fn all_valid(&self) -> bool {
        self.verdicts.iter().all(Verdict::is_valid)
    }

    pub fn all_goals_achieved(&self) -> bool {
        self.goals.iter().all(|g| g.achieved)
    }

    /// Every line valid and every goal achieved.
    pub fn is_success(&self) -> bool {
        self.all_valid() && self.all_goals_achieved()
    }
}

fn invalid(code: DiagnosticCode, message: String) -> Verdict {
    Verdict::invalid(code, message)
}

/// Constants a line's Existential Instantiation introduced.
fn witnesses(doc: &ProofDocument, at: usize) -> BTreeSet<String> {
    let line = &doc.lines[at - 1];
    let (Some(f), Some(RuleId::ExistentialInstantiation)) = (&line.formula, line.rule) else {
        return BTreeSet::new();
    };
    let mut introduced = constants(f);
    for r in &line.refs {
        if let Some(g) = doc.line(*r).and_then(|l| l.formula.as_ref()) {
            for c in constants(g) {
                introduced.remove(&c);
            }
        }
    }
    introduced
}

fn context(doc: &ProofDocument, s: &Structure, at: usize) -> RuleContext {
    let mut visible = Vec::new();
    let mut reserved = BTreeSet::new();
    for j in (1..at).filter(|&j| in_scope(s, j, at)) {
        let line = &doc.lines[j - 1];
        let Some(f) = &line.formula else { continue };
        visible.push(f.clone());
        match line.kind {
            LineKind::Premise | LineKind::Assumption => reserved.extend(constants(f)),
            LineKind::Conclusion => reserved.extend(witnesses(doc, j)),
        }
    }
    // a witness must not occur in what the proof is trying to show
    visible.extend(doc.goals.iter().cloned());
    RuleContext::new(visible, reserved)
}

fn judge(doc: &ProofDocument, s: &Structure, verdicts: &[Verdict], at: usize) -> Verdict {
    let line = &doc.lines[at - 1];
    if let Some(issue) = &s.issues[at - 1] {
        return invalid(DiagnosticCode::MalformedStructure, issue.clone());
    }
    if line.kind != LineKind::Conclusion {
        if line.formula.is_none() {
            return Verdict::unchecked("no statement entered");
        }
        if let Some(span) = s.spans.iter().find(|sp| sp.assumption == at && !sp.closed) {
            return invalid(
                DiagnosticCode::UnclosedSubproof,
                format!("the subproof opened here is still open at line {}; end it with a discharge line", span.end),
            );
        }
        return Verdict::valid(format!("{} needs no justification", line.kind));
    }
    let Some(formula) = &line.formula else {
        return Verdict::unchecked("no statement entered");
    };
    let Some(rule) = line.rule else {
        return Verdict::unchecked("no rule selected");
    };
    if matches!(rule, RuleId::Premise | RuleId::Assumption) {
        return invalid(
            DiagnosticCode::MalformedStructure,
            format!(
                "a conclusion cannot be justified as {}; change the line's kind instead",
                rule.name()
            ),
        );
    }
    if let Some(&r) = line.refs.iter().find(|&&r| r >= at) {
        return invalid(
            DiagnosticCode::ForwardReference,
            format!("line {r} does not come before line {at}"),
        );
    }
    if line.refs.contains(&0) {
        return invalid(
            DiagnosticCode::OutOfScopeReference,
            "there is no line 0".into(),
        );
    }
    let outside = |r: usize| {
        s.enclosing(r)
            .find(|span| !span.contains(at))
            .map(|span| span.end)
    };
    if rule == RuleId::Subproof {
        if line.refs.len() != 2 {
            return invalid(
                DiagnosticCode::WrongRefCount,
                format!(
                    "Subproof takes {}, but {} were cited",
                    rule.ref_count(),
                    line.refs.len()
                ),
            );
        }
        let span = s.dischargeable(at, line.depth);
        if span.map(|sp| [sp.assumption, sp.end]) != Some([line.refs[0], line.refs[1]]) {
            if let Some((r, end)) = line.refs.iter().find_map(|&r| outside(r).map(|e| (r, e))) {
                return invalid(
                    DiagnosticCode::OutOfScopeReference,
                    format!(
                        "line {r} is in a subproof that ended at line {end}; only line {} can discharge it",
                        end + 1
                    ),
                );
            }
            return invalid(
                DiagnosticCode::NoMatchingPattern,
                match span {
                    Some(sp) => format!(
                        "Subproof cites the subproof just above as lines {} and {}",
                        sp.assumption, sp.end
                    ),
                    None => format!("no subproof ends at line {} to be discharged here", at - 1),
                },
            );
        }
    } else if let Some((r, end)) = line.refs.iter().find_map(|&r| outside(r).map(|e| (r, e))) {
        return invalid(
            DiagnosticCode::OutOfScopeReference,
            format!("line {r} is inside a subproof that ended at line {end}, so it cannot be cited here"),
        );
    }
    let mut cited = Vec::with_capacity(line.refs.len());
    for &r in &line.refs {
        let target = &doc.lines[r - 1];
        match &target.formula {
            Some(f) if verdicts[r - 1].is_valid() => cited.push(f.clone()),
            _ => {
                return invalid(
                    DiagnosticCode::ReferenceNotValid,
                    format!("line {r} is cited but is not itself valid"),
                )
            }
        }
    }
    rules::verify(rule, formula, &cited, &context(doc, s, at))
}

fn verdicts_up_to(doc: &ProofDocument, s: &Structure, last: usize) -> Vec<Verdict> {
    let mut verdicts = Vec::with_capacity(last);
    for at in 1..=last {
        let v = judge(doc, s, &verdicts, at);
        verdicts.push(v);
    }
    verdicts
}

/// Verdict for line `at` (1-based), or `None` if there is no such line.
pub fn check_line(doc: &ProofDocument, at: usize) -> Option<Verdict> {
    if at == 0 || at > doc.len() {
        return None;
    }
    let s = structure(doc);
    verdicts_up_to(doc, &s, at).pop()
}

/// Check every line and every goal.
pub fn check_proof(doc: &ProofDocument) -> ProofReport {
    let s = structure(doc);
    let verdicts = verdicts_up_to(doc, &s, doc.len());
    let goals = doc
        .goals
        .iter()
        .map(|goal| {
            let line = doc
                .lines
                .iter()
                .zip(&verdicts)
                .position(|(l, v)| {
                    v.is_valid()
                        && l.depth == 0
                        && l.kind != LineKind::Assumption
                        && l.formula.as_ref().is_some_and(|f| alpha_equal(f, goal))
                })
                .map(|i| i + 1);
            GoalReport {
                goal: goal.clone(),
                achieved: line.is_some(),
                line,
            }
        })
        .collect();
    ProofReport { verdicts, goals }
}
