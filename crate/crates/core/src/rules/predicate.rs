//! Quantifier and equality rules.

use super::{check_rewrite, show, RuleContext, RuleId};
use crate::diagnostic::{DiagnosticCode, Verdict};
use crate::formula::{
    alpha_equal, constants, count_replacements, find_instance, is_free_in, substitute, Formula,
    Occurrences, Quantifier, ReplacementMismatch, Term,
};

fn no_match(message: String) -> Verdict {
    Verdict::invalid(DiagnosticCode::NoMatchingPattern, message)
}

fn wrong_shape(message: String) -> Verdict {
    Verdict::invalid(DiagnosticCode::WrongShape, message)
}

/// `body` with free `var` replaced by `t`, compared up to bound renaming.
fn instance_matches(
    body: &Formula,
    var: &str,
    t: &Term,
    target: &Formula,
) -> Result<bool, Verdict> {
    match substitute(body, &Term::var(var), t, &Occurrences::All) {
        Ok(inst) => Ok(alpha_equal(&inst, target)),
        Err(e) => Err(Verdict::invalid(DiagnosticCode::CaptureError, format!("{e}")).at(e.path)),
    }
}

/// Check one of the predicate-family rules. Reference counts are already
/// checked by the caller.
pub fn check_predicate(
    rule: RuleId,
    conclusion: &Formula,
    refs: &[Formula],
    ctx: &RuleContext,
) -> Verdict {
    let quantifier_rule = matches!(
        rule,
        RuleId::UniversalGeneralization
            | RuleId::UniversalInstantiation
            | RuleId::ExistentialGeneralization
            | RuleId::ExistentialInstantiation
    );
    if quantifier_rule && !conclusion.has_quantifier() && !refs.iter().any(Formula::has_quantifier)
    {
        return Verdict::invalid(
            DiagnosticCode::NotPropositionalContext,
            format!(
                "{} needs a quantifier, but none of the statements involved has one",
                rule.name()
            ),
        );
    }
    match rule {
        RuleId::UniversalInstantiation => {
            instantiate(Quantifier::Forall, conclusion, &refs[0], ctx)
        }
        RuleId::ExistentialInstantiation => {
            instantiate(Quantifier::Exists, conclusion, &refs[0], ctx)
        }
        RuleId::UniversalGeneralization => {
            generalize(Quantifier::Forall, conclusion, &refs[0], ctx)
        }
        RuleId::ExistentialGeneralization => {
            generalize(Quantifier::Exists, conclusion, &refs[0], ctx)
        }
        RuleId::Identity => match conclusion {
            Formula::Eq(a, b) if a == b => Verdict::valid("a term equals itself"),
            Formula::Eq(..) => no_match(format!("the two sides of {} differ", show(conclusion))),
            _ => wrong_shape(format!(
                "Identity concludes an equality, but {} is not one",
                show(conclusion)
            )),
        },
        RuleId::FreeVariable => free_variable(conclusion, refs),
        RuleId::BoundVariable | RuleId::NullQuantifier | RuleId::Prenex => {
            check_rewrite(rule, &refs[0], conclusion)
        }
        _ => unreachable!("not a predicate rule"),
    }
}

fn quantifier_word(q: Quantifier) -> &'static str {
    match q {
        Quantifier::Forall => "universal",
        Quantifier::Exists => "existential",
    }
}

fn instantiate(
    q: Quantifier,
    conclusion: &Formula,
    premise: &Formula,
    ctx: &RuleContext,
) -> Verdict {
    let (var, body) = match premise.as_quantified() {
        Some((found, var, body)) if found == q => (var, body),
        _ => {
            return wrong_shape(format!(
                "the cited statement {} is not a {} statement",
                show(premise),
                quantifier_word(q)
            ))
        }
    };
    let Some(t) = find_instance(body, var, conclusion) else {
        if !is_free_in(var, body) && alpha_equal(body, conclusion) {
            return Verdict::valid("vacuous quantifier removed");
        }
        return no_match(format!(
            "{} is not an instance of {}",
            show(conclusion),
            show(premise)
        ));
    };
    if q == Quantifier::Exists {
        let Term::Const(name) = &t else {
            return no_match(format!(
                "'{t}' is not a constant, so it cannot name the witness"
            ));
        };
        let used = ctx
            .visible_formulas
            .iter()
            .any(|f| constants(f).contains(name));
        if used {
            return Verdict::invalid(
                DiagnosticCode::FreshnessViolation,
                format!("the witness '{name}' already appears earlier in the proof"),
            );
        }
    }
    match instance_matches(body, var, &t, conclusion) {
        Ok(true) => Verdict::valid(format!("instantiated '{var}' with '{t}'")),
        Ok(false) => no_match(format!(
            "{} is not {} with '{var}' replaced by '{t}' everywhere",
            show(conclusion),
            show(body)
        )),
        Err(v) => v,
    }
}

fn generalize(
    q: Quantifier,
    conclusion: &Formula,
    premise: &Formula,
    ctx: &RuleContext,
) -> Verdict {
    let (var, body) = match conclusion.as_quantified() {
        Some((found, var, body)) if found == q => (var, body),
        _ => {
            return wrong_shape(format!(
                "{} is not a {} statement",
                show(conclusion),
                quantifier_word(q)
            ));
        }
    };
    let Some(t) = find_instance(body, var, premise) else {
        if !is_free_in(var, body) && alpha_equal(body, premise) {
            return Verdict::valid("vacuous quantifier added");
        }
        return no_match(format!(
            "{} is not an instance of {}",
            show(premise),
            show(conclusion)
        ));
    };
    match q {
        Quantifier::Exists => match instance_matches(body, var, &t, premise) {
            Ok(true) => Verdict::valid(format!("generalized '{t}' to '{var}'")),
            Ok(false) => no_match(format!(
                "{} is not {} with '{var}' replaced by '{t}'",
                show(premise),
                show(body)
            )),
            Err(v) => v,
        },
        Quantifier::Forall => {
            let Term::Const(name) = &t else {
                return no_match(format!(
                    "'{t}' is not a constant, so it cannot be generalized"
                ));
            };
            if ctx.reserved_constants.contains(name) {
                return Verdict::invalid(
                    DiagnosticCode::ArbitraryConstantViolation,
                    format!("'{name}' is not arbitrary: it appears in a premise, an open assumption or an existential witness"),
                );
            }
            match instance_matches(body, var, &t, premise) {
                Ok(true) => {}
                Ok(false) => {
                    return no_match(format!(
                        "every '{name}' in {} must become '{var}', but {} does not match",
                        show(premise),
                        show(conclusion)
                    ))
                }
                Err(v) => return v,
            }
            // every occurrence of the constant must have been generalized
            if constants(body).contains(name) {
                return no_match(format!("'{name}' still occurs in {}", show(conclusion)));
            }
            Verdict::valid(format!("generalized '{name}' to '{var}'"))
        }
    }
}

fn free_variable(conclusion: &Formula, refs: &[Formula]) -> Verdict {
    let mut saw_equality = false;
    let mut capture = None;
    for (eq, other) in [(&refs[0], &refs[1]), (&refs[1], &refs[0])] {
        let Formula::Eq(s, t) = eq else { continue };
        saw_equality = true;
        for (from, to) in [(s, t), (t, s)] {
            match count_replacements(other, conclusion, from, to) {
                Ok(n) if n > 0 => {
                    return Verdict::valid(format!(
                        "replaced {n} occurrence{} of '{from}' by '{to}'",
                        if n == 1 { "" } else { "s" }
                    ))
                }
                Ok(_) | Err(ReplacementMismatch::Differs(_)) => {}
                Err(ReplacementMismatch::Capture(e)) => capture = capture.or(Some(e)),
            }
        }
    }
    if !saw_equality {
        return wrong_shape("Free Variable needs an equality among its references".to_string());
    }
    if let Some(e) = capture {
        return Verdict::invalid(DiagnosticCode::CaptureError, format!("{e}")).at(e.path);
    }
    no_match(format!(
        "{} does not arise from the other reference by replacing equals with equals",
        show(conclusion)
    ))
}
