//! Citation scope: a line inside a closed subproof can only be cited by the
//! Subproof rule on the line right after the subproof.

use aris_core::diagnostic::{DiagnosticCode, Verdict};
use aris_core::formula::Formula;
use aris_core::proof::{check_line, LineKind, ProofDocument, ProofLine};
use aris_core::rules::RuleId;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::Outcome;

/// A well-formed document in which every line checks, with nested and sibling subproofs. The
/// last subproof may be left open.
fn layout(seed: u64) -> ProofDocument {
    let mut rng = StdRng::seed_from_u64(seed);
    let atom = |rng: &mut StdRng| Formula::atom(["P", "Q", "R", "S"][rng.random_range(0..4)]);
    let mut lines: Vec<ProofLine> = (0..rng.random_range(0..3))
        .map(|_| ProofLine::premise(atom(&mut rng)))
        .collect();
    let mut depth = 0;
    for _ in 0..rng.random_range(2..16) {
        if rng.random_bool(0.35) {
            depth = rng.random_range(1..=(depth + 1).min(4));
            lines.push(ProofLine::assumption(atom(&mut rng), depth));
        } else {
            if depth > 0 && rng.random_bool(0.35) {
                depth = rng.random_range(0..depth);
            }
            let a = atom(&mut rng);
            let excluded = Formula::or(vec![a.clone(), Formula::not(a)]);
            lines.push(ProofLine::conclusion(
                excluded,
                RuleId::ExcludedMiddle,
                vec![],
                depth,
            ));
        }
    }
    ProofDocument {
        lines,
        ..Default::default()
    }
}

fn depth(doc: &ProofDocument, line: usize) -> usize {
    doc.line(line).unwrap().depth
}

fn is_assumption(doc: &ProofDocument, line: usize) -> bool {
    doc.line(line).unwrap().kind == LineKind::Assumption
}

/// Line `j` may be cited at line `i` by an ordinary rule: nothing between
/// them leaves `j`'s depth, and no assumption at that depth or shallower
/// starts a new subproof.
fn visible(doc: &ProofDocument, j: usize, i: usize) -> bool {
    let d = depth(doc, j);
    (j + 1..=i).all(|k| depth(doc, k) >= d && !(is_assumption(doc, k) && depth(doc, k) <= d))
}

/// `(assumption, last)` of the subproof that line `i` may discharge.
fn dischargeable(doc: &ProofDocument, i: usize) -> Option<(usize, usize)> {
    let inner = depth(doc, i) + 1;
    let last = i
        .checked_sub(1)
        .filter(|&l| l >= 1 && depth(doc, l) >= inner)?;
    let start = (1..=last)
        .rev()
        .take_while(|&k| depth(doc, k) >= inner)
        .filter(|&k| is_assumption(doc, k) && depth(doc, k) == inner)
        .next()?;
    Some((start, last))
}

fn cite(doc: &ProofDocument, i: usize, rule: RuleId, refs: Vec<usize>) -> (ProofDocument, Verdict) {
    let mut doc = doc.clone();
    doc.lines[i - 1].rule = Some(rule);
    doc.lines[i - 1].refs = refs;
    let verdict = check_line(&doc, i).unwrap();
    (doc, verdict)
}

fn out_of_scope(v: &Verdict) -> bool {
    v.code == Some(DiagnosticCode::OutOfScopeReference)
}

fn check_layout(doc: &ProofDocument, counts: &mut [usize; 3]) -> Result<(), TestCaseError> {
    for i in 1..=doc.len() {
        if doc.line(i).unwrap().kind != LineKind::Conclusion {
            continue;
        }
        for j in 1..i {
            let (_, v) = cite(doc, i, RuleId::Addition, vec![j]);
            prop_assert_eq!(
                out_of_scope(&v),
                !visible(doc, j, i),
                "line {} citing {}: {}",
                i,
                j,
                v
            );
            counts[0] += 1;
        }
        let discharge = dischargeable(doc, i);
        for a in (1..i).filter(|&a| is_assumption(doc, a)) {
            for b in a..i {
                let (_, v) = cite(doc, i, RuleId::Subproof, vec![a, b]);
                if Some((a, b)) == discharge {
                    prop_assert!(
                        !out_of_scope(&v),
                        "line {} discharging {}-{}: {}",
                        i,
                        a,
                        b,
                        v
                    );
                } else {
                    let expect = !visible(doc, a, i) || !visible(doc, b, i);
                    prop_assert_eq!(
                        out_of_scope(&v),
                        expect,
                        "line {} citing {}-{} by Subproof: {}",
                        i,
                        a,
                        b,
                        v
                    );
                }
                counts[1] += 1;
            }
        }
        if let Some((a, b)) = discharge {
            let mut doc = doc.clone();
            let body = |k: usize| doc.line(k).unwrap().formula.clone().unwrap();
            let discharged = Formula::implies(body(a), body(b));
            doc.lines[i - 1].formula = Some(discharged);
            let (_, v) = cite(&doc, i, RuleId::Subproof, vec![a, b]);
            prop_assert!(v.is_valid(), "line {} discharging {}-{}: {}", i, a, b, v);
            counts[2] += 1;
        }
    }
    Ok(())
}

pub fn run() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 512,
        failure_persistence: None,
        ..Config::default()
    });
    let counts = std::cell::RefCell::new([0usize; 3]);
    runner
        .run(&any::<u64>(), |seed| {
            check_layout(&layout(seed), &mut counts.borrow_mut())
        })
        .map_err(|e| e.to_string())?;
    let [plain, subproof, discharges] = counts.into_inner();
    Ok(format!(
        "512 layouts: {plain} ordinary citations, {subproof} Subproof citations, {discharges} valid discharges"
    ))
}
