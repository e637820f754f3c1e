//! Equivalence rules applied at subformula positions.
//!
//! Each rule is a schema relating two formulas. The schema holds in both
//! directions, and a proof step may apply it at several disjoint positions
//! at once; everything outside those positions must be unchanged.

use super::{show, RuleId};
use crate::diagnostic::{DiagnosticCode, Verdict};
use crate::formula::{alpha_equal, is_free_in, Formula, Path};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Conn {
    And,
    Or,
}

impl Conn {
    fn dual(self) -> Conn {
        match self {
            Conn::And => Conn::Or,
            Conn::Or => Conn::And,
        }
    }

    fn build(self, items: Vec<Formula>) -> Formula {
        match self {
            Conn::And => Formula::And(items),
            Conn::Or => Formula::Or(items),
        }
    }

    /// `⊤` for ∧, `⊥` for ∨.
    fn identity(self) -> Formula {
        match self {
            Conn::And => Formula::Top,
            Conn::Or => Formula::Bottom,
        }
    }

    /// `⊥` for ∧, `⊤` for ∨.
    fn absorbing(self) -> Formula {
        match self {
            Conn::And => Formula::Bottom,
            Conn::Or => Formula::Top,
        }
    }
}

fn nary(f: &Formula) -> Option<(Conn, &[Formula])> {
    match f {
        Formula::And(cs) => Some((Conn::And, cs)),
        Formula::Or(cs) => Some((Conn::Or, cs)),
        _ => None,
    }
}

fn negation_of(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Not(x) => Some(x),
        _ => None,
    }
}

fn flatten(conn: Conn, items: &[Formula], out: &mut Vec<Formula>) {
    for item in items {
        match nary(item) {
            Some((c, inner)) if c == conn => flatten(conn, inner, out),
            _ => out.push(item.clone()),
        }
    }
}

/// True if `short` can be obtained from `long` by deleting elements that
/// satisfy `deletable` (at least one deletion).
fn is_deletion(long: &[Formula], short: &[Formula], deletable: impl Fn(&Formula) -> bool) -> bool {
    if short.len() >= long.len() {
        return false;
    }
    let mut k = 0;
    for item in long {
        if k < short.len() && *item == short[k] {
            k += 1;
        } else if !deletable(item) {
            return false;
        }
    }
    k == short.len()
}

fn sorted(items: &[Formula]) -> Vec<&Formula> {
    let mut v: Vec<&Formula> = items.iter().collect();
    v.sort();
    v
}

/// One direction of a rule's schema.
fn forward(rule: RuleId, a: &Formula, b: &Formula) -> bool {
    use Formula as F;
    match rule {
        RuleId::Implication => match (a, b) {
            (F::Implies(p, q), F::Or(ds)) => {
                ds.len() == 2 && negation_of(&ds[0]) == Some(p) && ds[1] == **q
            }
            _ => false,
        },
        RuleId::DeMorgan => match (a, nary(b)) {
            (F::Not(inner), Some((conn, items))) => match nary(inner) {
                Some((c, xs)) if c == conn.dual() => {
                    xs.len() == items.len()
                        && xs.iter().zip(items).all(|(x, y)| negation_of(y) == Some(x))
                }
                _ => false,
            },
            _ => false,
        },
        RuleId::Association => match (nary(a), nary(b)) {
            (Some((c1, xs)), Some((c2, ys))) if c1 == c2 && a != b => {
                let (mut fx, mut fy) = (Vec::new(), Vec::new());
                flatten(c1, xs, &mut fx);
                flatten(c2, ys, &mut fy);
                fx == fy
            }
            _ => false,
        },
        RuleId::Commutativity => match (a, b) {
            (F::Iff(p, q), F::Iff(r, s)) | (F::Xor(p, q), F::Xor(r, s)) => {
                p != q && p == s && q == r
            }
            _ => match (nary(a), nary(b)) {
                (Some((c1, xs)), Some((c2, ys))) => {
                    c1 == c2 && xs != ys && sorted(xs) == sorted(ys)
                }
                _ => false,
            },
        },
        RuleId::Idempotence => match nary(a) {
            Some((conn, xs)) => {
                if xs.iter().all(|x| x == b) {
                    return true;
                }
                match nary(b) {
                    Some((c2, ys)) if c2 == conn => {
                        let kept: std::collections::BTreeSet<&Formula> = ys.iter().collect();
                        let all: std::collections::BTreeSet<&Formula> = xs.iter().collect();
                        kept == all && is_deletion(xs, ys, |x| ys.contains(x))
                    }
                    _ => false,
                }
            }
            None => false,
        },
        RuleId::Distribution => match (nary(a), nary(b)) {
            (Some((outer, xs)), Some((inner, zs))) if xs.len() == 2 && inner == outer.dual() => {
                let left = match nary(&xs[1]) {
                    Some((c, ys)) if c == inner => {
                        ys.len() == zs.len()
                            && ys
                                .iter()
                                .zip(zs)
                                .all(|(y, z)| *z == outer.build(vec![xs[0].clone(), y.clone()]))
                    }
                    _ => false,
                };
                let right = match nary(&xs[0]) {
                    Some((c, ys)) if c == inner => {
                        ys.len() == zs.len()
                            && ys
                                .iter()
                                .zip(zs)
                                .all(|(y, z)| *z == outer.build(vec![y.clone(), xs[1].clone()]))
                    }
                    _ => false,
                };
                left || right
            }
            _ => false,
        },
        RuleId::Equivalence => match (a, b) {
            (F::Iff(p, q), F::And(cs)) => {
                cs.len() == 2
                    && cs[0] == F::implies((**p).clone(), (**q).clone())
                    && cs[1] == F::implies((**q).clone(), (**p).clone())
            }
            _ => false,
        },
        RuleId::DoubleNegation => {
            matches!(a, F::Not(x) if matches!(x.as_ref(), F::Not(y) if **y == *b))
        }
        RuleId::Exportation => match (a, b) {
            (F::Implies(ante, r), F::Implies(p, rest)) => match ante.as_ref() {
                F::And(ps) if ps[0] == **p => {
                    let tail = if ps.len() == 2 {
                        ps[1].clone()
                    } else {
                        F::And(ps[1..].to_vec())
                    };
                    **rest == F::implies(tail, (**r).clone())
                }
                _ => false,
            },
            _ => false,
        },
        RuleId::Subsumption => match nary(a) {
            Some((outer, xs)) if xs.len() == 2 => {
                let absorbs = |x: &Formula, other: &Formula| {
                    x == b
                        && matches!(nary(other), Some((c, ys)) if c == outer.dual() && ys.contains(x))
                };
                absorbs(&xs[0], &xs[1]) || absorbs(&xs[1], &xs[0])
            }
            _ => false,
        },
        RuleId::Contrapositive => match (a, b) {
            (F::Implies(p, q), F::Implies(nq, np)) => {
                negation_of(nq) == Some(q) && negation_of(np) == Some(p)
            }
            _ => false,
        },
        RuleId::BooleanIdentity => match nary(a) {
            Some((conn, xs)) => {
                let unit = conn.identity();
                is_deletion(xs, std::slice::from_ref(b), |x| *x == unit)
                    || matches!(nary(b), Some((c, ys)) if c == conn && is_deletion(xs, ys, |x| *x == unit))
            }
            None => false,
        },
        RuleId::BooleanNegation => match nary(a) {
            Some((conn, xs)) => {
                *b == conn.absorbing()
                    && xs
                        .iter()
                        .any(|x| xs.iter().any(|y| negation_of(y) == Some(x)))
            }
            None => false,
        },
        RuleId::BooleanDominance => match nary(a) {
            Some((conn, xs)) => *b == conn.absorbing() && xs.contains(&conn.absorbing()),
            None => false,
        },
        RuleId::SymbolNegation => {
            matches!((a, b), (F::Not(x), F::Bottom) if **x == F::Top)
                || matches!((a, b), (F::Not(x), F::Top) if **x == F::Bottom)
        }
        RuleId::BoundVariable => match (a.as_quantified(), b.as_quantified()) {
            (Some((q1, x, _)), Some((q2, y, _))) => q1 == q2 && x != y && alpha_equal(a, b),
            _ => false,
        },
        RuleId::NullQuantifier => match a.as_quantified() {
            Some((_, x, body)) => body == b && !is_free_in(x, body),
            None => false,
        },
        RuleId::Prenex => match (a.as_quantified(), nary(b)) {
            (Some((q, x, body)), Some((conn, ys))) => match nary(body) {
                Some((c, xs)) if c == conn && xs.len() == ys.len() => {
                    let differing: Vec<usize> = (0..xs.len()).filter(|&i| xs[i] != ys[i]).collect();
                    differing.len() == 1 && {
                        let i = differing[0];
                        ys[i] == Formula::quantified(q, x, xs[i].clone())
                            && xs
                                .iter()
                                .enumerate()
                                .all(|(j, other)| j == i || !is_free_in(x, other))
                    }
                }
                _ => false,
            },
            _ => false,
        },
        _ => false,
    }
}

/// True iff `before` and `after` are related by one application of `rule`'s
/// schema at the root, in either direction.
pub fn check_equivalence_step(rule: RuleId, before: &Formula, after: &Formula) -> bool {
    rule.is_rewrite() && (forward(rule, before, after) || forward(rule, after, before))
}

/// Where a rewrite check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RewriteMismatch {
    /// The statements are identical; no rewrite was applied.
    Unchanged,
    /// At `path` the statements differ and the schema does not relate them.
    Differs {
        path: Path,
        premise: Formula,
        conclusion: Formula,
    },
}

fn collect(
    rule: RuleId,
    a: &Formula,
    b: &Formula,
    path: Path,
    out: &mut Vec<Path>,
) -> Result<(), RewriteMismatch> {
    if a == b {
        return Ok(());
    }
    if check_equivalence_step(rule, a, b) {
        out.push(path);
        return Ok(());
    }
    if a.same_head(b) {
        for (i, (x, y)) in a.children().into_iter().zip(b.children()).enumerate() {
            collect(rule, x, y, path.child(i), out)?;
        }
        return Ok(());
    }
    Err(RewriteMismatch::Differs {
        path,
        premise: a.clone(),
        conclusion: b.clone(),
    })
}

/// Disjoint positions (paths into the conclusion, which coincide with paths
/// into the premise) at which `rule` rewrites `premise` into `conclusion`.
pub fn rewrite_positions(
    rule: RuleId,
    premise: &Formula,
    conclusion: &Formula,
) -> Result<Vec<Path>, RewriteMismatch> {
    let mut out = Vec::new();
    collect(rule, premise, conclusion, Path::root(), &mut out)?;
    if out.is_empty() {
        return Err(RewriteMismatch::Unchanged);
    }
    Ok(out)
}

/// Check a one-reference equivalence step.
pub fn check_rewrite(rule: RuleId, premise: &Formula, conclusion: &Formula) -> Verdict {
    if matches!(
        rule,
        RuleId::BoundVariable | RuleId::NullQuantifier | RuleId::Prenex
    ) && !premise.has_quantifier()
        && !conclusion.has_quantifier()
    {
        return Verdict::invalid(
            DiagnosticCode::NotPropositionalContext,
            format!(
                "{} works on quantifiers, but neither statement contains one",
                rule.name()
            ),
        );
    }
    match rewrite_positions(rule, premise, conclusion) {
        Ok(positions) => {
            let n = positions.len();
            Verdict::valid(format!(
                "{} applied at {n} position{}",
                rule.name(),
                if n == 1 { "" } else { "s" }
            ))
        }
        Err(RewriteMismatch::Unchanged) => Verdict::invalid(
            DiagnosticCode::NoMatchingPattern,
            format!(
                "the statement is identical to the reference, so {} was not applied",
                rule.name()
            ),
        ),
        Err(RewriteMismatch::Differs {
            path,
            premise: p,
            conclusion: c,
        }) => Verdict::invalid(
            DiagnosticCode::NoMatchingPattern,
            format!(
                "at {path}, {} does not turn {} into {}",
                rule.name(),
                show(&p),
                show(&c)
            ),
        )
        .at(path),
    }
}
