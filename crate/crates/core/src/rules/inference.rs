//! Inference rules: whole-statement patterns.

use super::{show, RuleFamily, RuleId};
use crate::diagnostic::{DiagnosticCode, Verdict};
use crate::formula::{alpha_equal, Formula};

fn same(a: &Formula, b: &Formula) -> bool {
    alpha_equal(a, b)
}

fn shape(msg: String) -> Verdict {
    Verdict::invalid(DiagnosticCode::WrongShape, msg)
}

fn mismatch(msg: String) -> Verdict {
    Verdict::invalid(DiagnosticCode::NoMatchingPattern, msg)
}

/// Remove from `pool` one element matching each of `items`; true if all found.
fn take_all(pool: &mut Vec<&Formula>, items: &[&Formula]) -> bool {
    for item in items {
        match pool.iter().position(|p| same(p, item)) {
            Some(i) => {
                pool.swap_remove(i);
            }
            None => return false,
        }
    }
    true
}

fn multiset_eq(a: &[&Formula], b: &[&Formula]) -> bool {
    let mut pool = a.to_vec();
    a.len() == b.len() && take_all(&mut pool, b)
}

/// Check an inference rule, which matches the conclusion against the whole
/// referenced statements.
pub fn check_inference(rule: RuleId, conclusion: &Formula, refs: &[Formula]) -> Verdict {
    debug_assert_eq!(rule.family(), RuleFamily::Inference);
    let count = rule.ref_count();
    if !count.accepts(refs.len()) {
        return Verdict::invalid(
            DiagnosticCode::WrongRefCount,
            format!(
                "{} takes {count}, but {} were cited",
                rule.name(),
                refs.len()
            ),
        );
    }
    match rule {
        RuleId::ModusPonens => modus_ponens(conclusion, refs),
        RuleId::Addition => addition(conclusion, &refs[0]),
        RuleId::Simplification => simplification(conclusion, &refs[0]),
        RuleId::Conjunction => conjunction(conclusion, refs),
        RuleId::HypotheticalSyllogism => hypothetical_syllogism(conclusion, refs),
        RuleId::DisjunctiveSyllogism => disjunctive_syllogism(conclusion, refs),
        RuleId::ExcludedMiddle => excluded_middle(conclusion),
        RuleId::ConstructiveDilemma => constructive_dilemma(conclusion, refs),
        _ => unreachable!("not an inference rule"),
    }
}

fn modus_ponens(conclusion: &Formula, refs: &[Formula]) -> Verdict {
    let mut first_implication = None;
    for (i, j) in [(0, 1), (1, 0)] {
        if let Formula::Implies(a, c) = &refs[i] {
            if same(a, &refs[j]) && same(c, conclusion) {
                return Verdict::valid("Modus Ponens applies");
            }
            first_implication.get_or_insert((i, j));
        }
    }
    let Some((i, j)) = first_implication else {
        return shape(format!(
            "Modus Ponens needs an implication among its references, but neither {} nor {} is one",
            show(&refs[0]),
            show(&refs[1])
        ));
    };
    let Formula::Implies(a, c) = &refs[i] else {
        unreachable!()
    };
    if !same(a, &refs[j]) {
        mismatch(format!(
            "the antecedent {} of {} does not match the other reference {}",
            show(a),
            show(&refs[i]),
            show(&refs[j])
        ))
    } else {
        mismatch(format!(
            "the conclusion {} is not the consequent {} of {}",
            show(conclusion),
            show(c),
            show(&refs[i])
        ))
    }
}

fn addition(conclusion: &Formula, r: &Formula) -> Verdict {
    let Formula::Or(ds) = conclusion else {
        return shape(format!(
            "Addition concludes a disjunction, but {} is not one",
            show(conclusion)
        ));
    };
    if ds.iter().any(|d| same(d, r)) {
        Verdict::valid("Addition applies")
    } else {
        mismatch(format!(
            "none of the disjuncts of {} is the reference {}",
            show(conclusion),
            show(r)
        ))
    }
}

fn simplification(conclusion: &Formula, r: &Formula) -> Verdict {
    let Formula::And(cs) = r else {
        return shape(format!(
            "Simplification needs a conjunction, but the reference {} is not one",
            show(r)
        ));
    };
    if cs.iter().any(|c| same(c, conclusion)) {
        return Verdict::valid("Simplification applies");
    }
    if let Formula::And(ds) = conclusion {
        let mut pool: Vec<&Formula> = cs.iter().collect();
        if take_all(&mut pool, &ds.iter().collect::<Vec<_>>()) {
            return Verdict::valid("Simplification applies");
        }
    }
    mismatch(format!(
        "{} is neither a conjunct of {} nor made of its conjuncts",
        show(conclusion),
        show(r)
    ))
}

fn conjunction(conclusion: &Formula, refs: &[Formula]) -> Verdict {
    let Formula::And(cs) = conclusion else {
        return shape(format!(
            "Conjunction concludes a conjunction, but {} is not one",
            show(conclusion)
        ));
    };
    let conjuncts: Vec<&Formula> = cs.iter().collect();
    let cited: Vec<&Formula> = refs.iter().collect();
    if multiset_eq(&conjuncts, &cited) {
        return Verdict::valid("Conjunction applies");
    }
    let mut pool = cited.clone();
    for c in &conjuncts {
        if !take_all(&mut pool, &[c]) {
            return mismatch(format!(
                "the conjunct {} is not among the references",
                show(c)
            ));
        }
    }
    mismatch(format!(
        "the reference {} does not appear as a conjunct of {}",
        show(pool[0]),
        show(conclusion)
    ))
}

fn hypothetical_syllogism(conclusion: &Formula, refs: &[Formula]) -> Verdict {
    let mut links = Vec::new();
    for r in refs {
        match r {
            Formula::Implies(a, b) => links.push((a.as_ref(), b.as_ref())),
            _ => {
                return shape(format!(
                    "Hypothetical Syllogism cites only implications, but {} is not one",
                    show(r)
                ))
            }
        }
    }
    let Formula::Implies(start, end) = conclusion else {
        return shape(format!(
            "Hypothetical Syllogism concludes an implication, but {} is not one",
            show(conclusion)
        ));
    };

    fn chain(
        from: &Formula,
        end: &Formula,
        links: &[(&Formula, &Formula)],
        used: &mut Vec<bool>,
        depth: usize,
    ) -> bool {
        if depth == links.len() {
            return same(from, end);
        }
        for i in 0..links.len() {
            if !used[i] && same(links[i].0, from) {
                used[i] = true;
                if chain(links[i].1, end, links, used, depth + 1) {
                    return true;
                }
                used[i] = false;
            }
        }
        false
    }

    if chain(start, end, &links, &mut vec![false; links.len()], 0) {
        Verdict::valid("the implications chain together")
    } else {
        mismatch(format!(
            "the cited implications cannot be ordered into a chain from {} to {}",
            show(start),
            show(end)
        ))
    }
}

/// `r` rules out disjunct `d` when one is the negation of the other.
fn eliminates(r: &Formula, d: &Formula) -> bool {
    matches!(r, Formula::Not(x) if same(x, d)) || matches!(d, Formula::Not(x) if same(x, r))
}

fn disjunctive_syllogism(conclusion: &Formula, refs: &[Formula]) -> Verdict {
    let candidates: Vec<usize> = (0..refs.len())
        .filter(|&i| matches!(refs[i], Formula::Or(_)))
        .collect();
    if candidates.is_empty() {
        return shape("Disjunctive Syllogism needs a disjunction among its references".into());
    }
    let mut reason = String::new();
    for &k in &candidates {
        let Formula::Or(ds) = &refs[k] else {
            unreachable!()
        };
        let mut remaining: Vec<&Formula> = ds.iter().collect();
        let mut ok = true;
        for (i, r) in refs.iter().enumerate() {
            if i == k {
                continue;
            }
            match remaining.iter().position(|d| eliminates(r, d)) {
                Some(pos) => {
                    remaining.remove(pos);
                }
                None => {
                    ok = false;
                    if reason.is_empty() {
                        reason = format!(
                            "{} does not negate any remaining disjunct of {}",
                            show(r),
                            show(&refs[k])
                        );
                    }
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let matches = match remaining.len() {
            0 => false,
            1 => same(remaining[0], conclusion),
            _ => match conclusion {
                Formula::Or(es) => multiset_eq(&remaining, &es.iter().collect::<Vec<_>>()),
                _ => false,
            },
        };
        if matches {
            return Verdict::valid("Disjunctive Syllogism applies");
        }
        if reason.is_empty() {
            reason = if remaining.is_empty() {
                format!(
                    "every disjunct of {} is ruled out, so nothing remains",
                    show(&refs[k])
                )
            } else {
                let rest: Vec<String> = remaining.iter().map(|d| show(d)).collect();
                format!(
                    "{} is not what remains of the disjunction ({})",
                    show(conclusion),
                    rest.join(", ")
                )
            };
        }
    }
    mismatch(reason)
}

fn excluded_middle(conclusion: &Formula) -> Verdict {
    match conclusion {
        Formula::Or(ds) if ds.len() == 2 => {
            if eliminates(&ds[0], &ds[1]) {
                Verdict::valid("Excluded Middle applies")
            } else {
                mismatch(format!(
                    "{} and {} are not a statement and its negation",
                    show(&ds[0]),
                    show(&ds[1])
                ))
            }
        }
        _ => shape(format!(
            "Excluded Middle concludes a two-part disjunction F ∨ ¬F, not {}",
            show(conclusion)
        )),
    }
}

fn constructive_dilemma(conclusion: &Formula, refs: &[Formula]) -> Verdict {
    let Formula::Or(es) = conclusion else {
        return shape(format!(
            "Constructive Dilemma concludes a disjunction, but {} is not one",
            show(conclusion)
        ));
    };
    let candidates: Vec<usize> = (0..refs.len())
        .filter(|&i| matches!(refs[i], Formula::Or(_)))
        .collect();
    if candidates.is_empty() {
        return shape("Constructive Dilemma needs a disjunction among its references".into());
    }
    for &k in &candidates {
        let Formula::Or(ds) = &refs[k] else {
            unreachable!()
        };
        let mut implications = Vec::new();
        for (i, r) in refs.iter().enumerate() {
            if i == k {
                continue;
            }
            if let Formula::Implies(a, b) = r {
                implications.push((a.as_ref(), b.as_ref()));
            }
        }
        if implications.len() != refs.len() - 1 {
            if candidates.len() == 1 {
                return shape(
                    "apart from the disjunction, Constructive Dilemma cites only implications"
                        .into(),
                );
            }
            continue;
        }
        if ds.len() != implications.len() || es.len() != ds.len() {
            continue;
        }

        fn assign(
            i: usize,
            ds: &[Formula],
            es: &[Formula],
            imps: &[(&Formula, &Formula)],
            used: &mut Vec<bool>,
        ) -> bool {
            if i == ds.len() {
                return true;
            }
            for j in 0..imps.len() {
                if !used[j] && same(imps[j].0, &ds[i]) && same(imps[j].1, &es[i]) {
                    used[j] = true;
                    if assign(i + 1, ds, es, imps, used) {
                        return true;
                    }
                    used[j] = false;
                }
            }
            false
        }

        if assign(
            0,
            ds,
            es,
            &implications,
            &mut vec![false; implications.len()],
        ) {
            return Verdict::valid("Constructive Dilemma applies");
        }
    }
    mismatch(format!(
        "the implications do not carry the disjuncts of the cited disjunction to those of {}",
        show(conclusion)
    ))
}
