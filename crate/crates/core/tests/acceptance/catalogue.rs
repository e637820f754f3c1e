//! Example instances for every rule, plus mutated instances that must fail
//! with a specific diagnostic code.

use std::collections::{BTreeMap, BTreeSet};

use aris_core::diagnostic::DiagnosticCode::{self, *};
use aris_core::rules::{verify, RuleContext, RuleId, RuleId::*};

use crate::common::p;
use crate::Outcome;

struct Case {
    rule: RuleId,
    refs: Vec<&'static str>,
    conclusion: &'static str,
    expect: Option<DiagnosticCode>,
    visible: Vec<&'static str>,
    reserved: Vec<&'static str>,
}

impl Case {
    fn visible(mut self, extra: &[&'static str]) -> Self {
        self.visible.extend(extra);
        self
    }

    fn reserved(mut self, constants: &[&'static str]) -> Self {
        self.reserved.extend(constants);
        self
    }
}

fn ok(rule: RuleId, refs: &[&'static str], conclusion: &'static str) -> Case {
    Case {
        rule,
        refs: refs.to_vec(),
        conclusion,
        expect: None,
        visible: vec![],
        reserved: vec![],
    }
}

fn bad(
    rule: RuleId,
    refs: &[&'static str],
    conclusion: &'static str,
    code: DiagnosticCode,
) -> Case {
    Case {
        expect: Some(code),
        ..ok(rule, refs, conclusion)
    }
}

/// A rewrite rule: valid in both directions.
fn both(rule: RuleId, left: &'static str, right: &'static str) -> [Case; 2] {
    [ok(rule, &[left], right), ok(rule, &[right], left)]
}

fn cases() -> Vec<Case> {
    let mut v = vec![
        ok(ModusPonens, &["P -> Q", "P"], "Q"),
        bad(ModusPonens, &["P -> Q", "P"], "P", NoMatchingPattern),
        bad(ModusPonens, &["P & Q", "P"], "Q", WrongShape),
        bad(ModusPonens, &["P -> Q"], "Q", WrongRefCount),
        ok(Addition, &["P"], "P | Q | R"),
        bad(Addition, &["P"], "Q | R", NoMatchingPattern),
        bad(Addition, &["P"], "P & Q", WrongShape),
        ok(Simplification, &["P & Q & R"], "P"),
        bad(Simplification, &["P & Q & R"], "S", NoMatchingPattern),
        bad(Simplification, &["P | Q | R"], "P", WrongShape),
        ok(Conjunction, &["P", "Q", "R"], "P & Q & R"),
        bad(
            Conjunction,
            &["P", "Q", "R"],
            "P & Q & S",
            NoMatchingPattern,
        ),
        bad(Conjunction, &["P", "Q", "R"], "P | Q | R", WrongShape),
        ok(
            HypotheticalSyllogism,
            &["P -> Q", "R -> S", "Q -> R"],
            "P -> S",
        ),
        bad(
            HypotheticalSyllogism,
            &["P -> Q", "R -> S", "Q -> R"],
            "S -> P",
            NoMatchingPattern,
        ),
        bad(
            HypotheticalSyllogism,
            &["P & Q", "R -> S", "Q -> R"],
            "P -> S",
            WrongShape,
        ),
        ok(DisjunctiveSyllogism, &["~P", "P | Q | R", "~R"], "Q"),
        bad(
            DisjunctiveSyllogism,
            &["~P", "P | Q | R", "~R"],
            "P",
            NoMatchingPattern,
        ),
        bad(
            DisjunctiveSyllogism,
            &["~P", "P & Q & R", "~R"],
            "Q",
            WrongShape,
        ),
        ok(ExcludedMiddle, &[], "P | ~P"),
        bad(ExcludedMiddle, &[], "P | ~Q", NoMatchingPattern),
        bad(ExcludedMiddle, &[], "P & ~P", WrongShape),
        bad(ExcludedMiddle, &["P"], "P | ~P", WrongRefCount),
        ok(ConstructiveDilemma, &["P -> R", "P | Q", "Q -> S"], "R | S"),
        bad(
            ConstructiveDilemma,
            &["P -> R", "P | Q", "Q -> S"],
            "R | P",
            NoMatchingPattern,
        ),
        bad(
            ConstructiveDilemma,
            &["P -> R", "P & Q", "Q -> S"],
            "R | S",
            WrongShape,
        ),
        // Equivalence rules.
        bad(Implication, &["P -> Q"], "~P | R", NoMatchingPattern),
        bad(Implication, &["P & Q"], "~P | Q", NoMatchingPattern),
        bad(Implication, &["P -> Q", "P"], "~P | Q", WrongRefCount),
        bad(DeMorgan, &["~(P & Q)"], "~P & ~Q", NoMatchingPattern),
        bad(DeMorgan, &["~(P -> Q)"], "~P | ~Q", NoMatchingPattern),
        bad(
            Association,
            &["P & (Q & R)"],
            "P & Q & S",
            NoMatchingPattern,
        ),
        bad(
            Association,
            &["P & (Q | R)"],
            "P & Q & R",
            NoMatchingPattern,
        ),
        bad(
            Commutativity,
            &["P & Q & R"],
            "Q & R & S",
            NoMatchingPattern,
        ),
        bad(Commutativity, &["P -> Q"], "Q -> P", NoMatchingPattern),
        bad(
            Idempotence,
            &["P & P & Q & R & R & R"],
            "P & R",
            NoMatchingPattern,
        ),
        bad(Idempotence, &["P -> P"], "P", NoMatchingPattern),
        bad(
            Distribution,
            &["P & (Q | R)"],
            "(P & Q) | R",
            NoMatchingPattern,
        ),
        bad(
            Distribution,
            &["P -> (Q | R)"],
            "(P -> Q) | (P -> R)",
            NoMatchingPattern,
        ),
        bad(
            Equivalence,
            &["P <-> Q"],
            "(P -> Q) & (P -> Q)",
            NoMatchingPattern,
        ),
        bad(
            Equivalence,
            &["P -> Q"],
            "(P -> Q) & (Q -> P)",
            NoMatchingPattern,
        ),
        bad(DoubleNegation, &["~~P"], "Q", NoMatchingPattern),
        bad(DoubleNegation, &["~P"], "P", NoMatchingPattern),
        bad(
            Exportation,
            &["(P & Q) -> R"],
            "P -> (R -> Q)",
            NoMatchingPattern,
        ),
        bad(
            Exportation,
            &["(P | Q) -> R"],
            "P -> (Q -> R)",
            NoMatchingPattern,
        ),
        bad(Subsumption, &["P & (P | Q)"], "Q", NoMatchingPattern),
        bad(Subsumption, &["P & (Q | R)"], "P", NoMatchingPattern),
        bad(Contrapositive, &["P -> Q"], "~P -> ~Q", NoMatchingPattern),
        bad(Contrapositive, &["P & Q"], "~Q & ~P", NoMatchingPattern),
        // Predicate rules.
        ok(UniversalGeneralization, &["P(a)"], "\\A x (P(x))"),
        bad(
            UniversalGeneralization,
            &["P(a)"],
            "\\A x (Q(x))",
            NoMatchingPattern,
        ),
        bad(
            UniversalGeneralization,
            &["P(a)"],
            "\\E x (P(x))",
            WrongShape,
        ),
        bad(
            UniversalGeneralization,
            &["P(a)"],
            "\\A x (P(x))",
            ArbitraryConstantViolation,
        )
        .reserved(&["a"]),
        ok(UniversalInstantiation, &["\\A x (P(x))"], "P(a)"),
        bad(
            UniversalInstantiation,
            &["\\A x (P(x))"],
            "Q(a)",
            NoMatchingPattern,
        ),
        bad(
            UniversalInstantiation,
            &["\\E x (P(x))"],
            "P(a)",
            WrongShape,
        ),
        bad(
            UniversalInstantiation,
            &["\\A x (\\E y (R(x, y)))"],
            "\\E y (R(y, y))",
            CaptureError,
        ),
        bad(UniversalInstantiation, &["P"], "P", NotPropositionalContext),
        ok(ExistentialGeneralization, &["P(a)"], "\\E x (P(x))"),
        bad(
            ExistentialGeneralization,
            &["P(a)"],
            "\\E x (Q(x))",
            NoMatchingPattern,
        ),
        bad(
            ExistentialGeneralization,
            &["P(a)"],
            "\\A x (P(x))",
            WrongShape,
        ),
        ok(ExistentialInstantiation, &["\\E x (P(x))"], "P(a)"),
        bad(
            ExistentialInstantiation,
            &["\\E x (P(x))"],
            "Q(a)",
            NoMatchingPattern,
        ),
        bad(
            ExistentialInstantiation,
            &["\\A x (P(x))"],
            "P(a)",
            WrongShape,
        ),
        bad(
            ExistentialInstantiation,
            &["\\E x (P(x))"],
            "P(a)",
            FreshnessViolation,
        )
        .visible(&["Q(a)"]),
        bad(
            BoundVariable,
            &["\\A x (P(x))"],
            "\\A y (Q(y))",
            NoMatchingPattern,
        ),
        bad(
            BoundVariable,
            &["\\A x (P(x))"],
            "\\E y (P(y))",
            NoMatchingPattern,
        ),
        bad(BoundVariable, &["P"], "Q", NotPropositionalContext),
        bad(NullQuantifier, &["\\A x (P(a))"], "P(b)", NoMatchingPattern),
        bad(NullQuantifier, &["\\A x (P(x))"], "P(a)", NoMatchingPattern),
        bad(
            Prenex,
            &["\\E x (P(x) & Q(a))"],
            "\\E x (P(x)) & Q(b)",
            NoMatchingPattern,
        ),
        bad(
            Prenex,
            &["\\E x (P(x) & Q(x))"],
            "\\E x (P(x)) & Q(x)",
            NoMatchingPattern,
        ),
        ok(Identity, &[], "a = a"),
        bad(Identity, &[], "a = b", NoMatchingPattern),
        bad(Identity, &[], "P(a)", WrongShape),
        ok(FreeVariable, &["a = b", "P(a)"], "P(b)"),
        bad(FreeVariable, &["a = b", "P(a)"], "P(c)", NoMatchingPattern),
        bad(FreeVariable, &["Q(a)", "P(a)"], "P(b)", WrongShape),
        // Boolean rules.
        bad(BooleanIdentity, &["A & \\top"], "B", NoMatchingPattern),
        bad(BooleanIdentity, &["A & \\bot"], "A", NoMatchingPattern),
        bad(BooleanNegation, &["A & ~A"], "\\top", NoMatchingPattern),
        bad(BooleanNegation, &["A & ~B"], "\\bot", NoMatchingPattern),
        bad(BooleanDominance, &["A & \\bot"], "\\top", NoMatchingPattern),
        bad(BooleanDominance, &["A & \\top"], "\\bot", NoMatchingPattern),
        bad(SymbolNegation, &["~\\top"], "\\top", NoMatchingPattern),
        bad(SymbolNegation, &["~A"], "\\bot", NoMatchingPattern),
    ];
    let rewrites = [
        both(Implication, "P -> Q", "~P | Q"),
        both(DeMorgan, "~(P & Q)", "~P | ~Q"),
        both(Association, "P & (Q & R)", "P & Q & R"),
        both(Commutativity, "P & Q & R", "Q & R & P"),
        both(Idempotence, "P & P & Q & R & R & R", "P & Q & R"),
        both(Distribution, "P & (Q | R)", "(P & Q) | (P & R)"),
        both(Equivalence, "P <-> Q", "(P -> Q) & (Q -> P)"),
        both(DoubleNegation, "~~P", "P"),
        both(Exportation, "(P & Q) -> R", "P -> (Q -> R)"),
        both(Subsumption, "P & (P | Q)", "P"),
        both(Contrapositive, "P -> Q", "~Q -> ~P"),
        both(BoundVariable, "\\A x (P(x))", "\\A y (P(y))"),
        both(NullQuantifier, "\\A x (P(a))", "P(a)"),
        both(Prenex, "\\E x (P(x) & Q(a))", "\\E x (P(x)) & Q(a)"),
        both(BooleanIdentity, "A & \\top", "A"),
        both(BooleanNegation, "A & ~A", "\\bot"),
        both(BooleanDominance, "A & \\bot", "\\bot"),
        both(SymbolNegation, "~\\top", "\\bot"),
    ];
    v.extend(rewrites.into_iter().flatten());
    v
}

pub fn run() -> Outcome {
    let cases = cases();
    let mut failures = Vec::new();
    let mut coverage: BTreeMap<RuleId, (usize, usize)> = BTreeMap::new();
    for case in &cases {
        let refs: Vec<_> = case.refs.iter().map(|s| p(s)).collect();
        let visible = refs
            .iter()
            .cloned()
            .chain(case.visible.iter().map(|s| p(s)))
            .collect();
        let reserved: BTreeSet<String> = case.reserved.iter().map(|s| s.to_string()).collect();
        let verdict = verify(
            case.rule,
            &p(case.conclusion),
            &refs,
            &RuleContext::new(visible, reserved),
        );
        let entry = coverage.entry(case.rule).or_default();
        let (expected, actual) = match case.expect {
            None => {
                entry.0 += 1;
                (
                    Some("VALID".to_string()),
                    verdict.is_valid().then(|| "VALID".to_string()),
                )
            }
            Some(code) => {
                entry.1 += 1;
                (Some(code.to_string()), verdict.code.map(|c| c.to_string()))
            }
        };
        if expected != actual {
            failures.push(format!(
                "{} {:?} / {}: expected {}, got {verdict}",
                case.rule.name(),
                case.refs,
                case.conclusion,
                expected.unwrap()
            ));
        }
    }
    let checked: Vec<RuleId> = RuleId::ALL
        .iter()
        .copied()
        .filter(|r| !matches!(r, Premise | Assumption | Subproof))
        .collect();
    for rule in &checked {
        let (pos, neg) = coverage.get(rule).copied().unwrap_or_default();
        if pos == 0 || neg < 2 {
            failures.push(format!(
                "{}: {pos} positive and {neg} mutated instances",
                rule.name()
            ));
        }
    }
    if failures.is_empty() {
        Ok(format!(
            "{} rules, {} instances",
            checked.len(),
            cases.len()
        ))
    } else {
        Err(failures.join("; "))
    }
}
