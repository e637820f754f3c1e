//! The two worked proofs, checked whole and under mutation.

use std::collections::BTreeSet;

use aris_core::diagnostic::Status;
use aris_core::formula::Formula;
use aris_core::persistence::export_latex;
use aris_core::proof::{check_proof, LineKind, ProofDocument};
use aris_core::rules::RuleId;
use aris_core::semantics::entails;

use crate::common::{self, p};
use crate::Outcome;

fn failures(doc: &ProofDocument) -> Vec<String> {
    let report = check_proof(doc);
    let mut out: Vec<String> = report
        .verdicts
        .iter()
        .enumerate()
        .filter(|(_, v)| v.status != Status::Valid)
        .map(|(i, v)| format!("line {}: {v}", i + 1))
        .collect();
    out.extend(
        report
            .goals
            .iter()
            .filter(|g| !g.achieved)
            .map(|g| format!("goal {} not achieved", g.goal)),
    );
    out
}

/// `doc` without line `index`, renumbering references the way an editor
/// would: citations of the removed line disappear.
fn without_line(doc: &ProofDocument, index: usize) -> ProofDocument {
    let mut out = doc.clone();
    out.lines.remove(index - 1);
    for line in &mut out.lines {
        line.refs = line
            .refs
            .iter()
            .filter(|&&r| r != index)
            .map(|&r| if r > index { r - 1 } else { r })
            .collect();
    }
    out
}

pub fn trial5() -> Outcome {
    let doc = common::trial5();
    let problems = failures(&doc);
    if !problems.is_empty() {
        return Err(problems.join("; "));
    }

    let premises: Vec<Formula> = doc
        .lines
        .iter()
        .filter(|l| l.kind == LineKind::Premise)
        .filter_map(|l| l.formula.clone())
        .collect();
    let atoms: BTreeSet<String> = premises.iter().flat_map(|f| f.atoms()).collect();
    if atoms.len() != 4 {
        return Err(format!("expected 4 atoms, found {atoms:?}"));
    }
    if entails(&premises, &Formula::Bottom) != Ok(false) {
        return Err("premises are unsatisfiable".into());
    }
    if entails(&premises, &p("L1 & ~L2")) != Ok(true) {
        return Err("truth table does not confirm L1 ∧ ¬L2".into());
    }
    for (i, line) in doc.lines.iter().enumerate() {
        if line.depth == 0 && entails(&premises, line.formula.as_ref().unwrap()) != Ok(true) {
            return Err(format!("line {} is not entailed by the premises", i + 1));
        }
    }

    let mut survivors = Vec::new();
    for index in 1..=doc.len() {
        if failures(&without_line(&doc, index)).is_empty() {
            survivors.push(format!("deleting line {index}"));
        }
    }
    let mut swaps = 0;
    for (i, line) in doc.lines.iter().enumerate() {
        if line.kind != LineKind::Conclusion {
            continue;
        }
        for &rule in RuleId::ALL {
            if Some(rule) == line.rule {
                continue;
            }
            swaps += 1;
            let mut swapped = doc.clone();
            swapped.lines[i].rule = Some(rule);
            if check_proof(&swapped).all_valid() {
                survivors.push(format!("line {} as {}", i + 1, rule.name()));
            }
        }
    }
    if !survivors.is_empty() {
        return Err(format!("mutations still check: {}", survivors.join(", ")));
    }
    Ok(format!(
        "{} lines valid, goal achieved, entailment confirmed over {} atoms; {} deletions and {swaps} rule swaps all rejected",
        doc.len(),
        atoms.len(),
        doc.len()
    ))
}

pub fn first_order() -> Outcome {
    let doc = common::left_identity();
    let problems = failures(&doc);
    if !problems.is_empty() {
        return Err(problems.join("; "));
    }
    let used: BTreeSet<RuleId> = doc.lines.iter().filter_map(|l| l.rule).collect();
    for rule in [
        RuleId::UniversalInstantiation,
        RuleId::FreeVariable,
        RuleId::UniversalGeneralization,
        RuleId::ExistentialGeneralization,
    ] {
        if !used.contains(&rule) {
            return Err(format!("{} is not used", rule.name()));
        }
    }

    // Generalizing over the right identity itself is not allowed.
    let mut over_e = doc.clone();
    over_e.lines[8].formula = Some(p("\\A x (o(x, a) = a)"));
    if check_proof(&over_e).verdicts[8].is_valid() {
        return Err("generalization over a premise constant was accepted".into());
    }

    let tex = export_latex(&doc);
    if !tex.contains("\\forall") || !tex.contains("\\exists") {
        return Err("LaTeX export lacks quantifiers".into());
    }
    Ok(format!(
        "{} lines valid, goal {} achieved",
        doc.len(),
        doc.goals[0].to_unicode()
    ))
}
