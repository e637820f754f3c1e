//! Substitution, replacement matching and alpha-equivalence.

use std::collections::BTreeSet;

use super::{Formula, Path, Term};

/// Substituting would put a name under a quantifier that binds it.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("substitution would capture '{variable}' under a quantifier binding it at {path}")]
pub struct CaptureError {
    pub variable: String,
    pub path: Path,
}

/// Which free occurrences of the target a substitution replaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Occurrences {
    All,
    /// Occurrence numbers (0-based, pre-order, left to right) to replace.
    Selected(BTreeSet<usize>),
}

impl Occurrences {
    fn contains(&self, i: usize) -> bool {
        match self {
            Occurrences::All => true,
            Occurrences::Selected(s) => s.contains(&i),
        }
    }
}

/// Why `new` is not `orig` with some occurrences replaced.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReplacementMismatch {
    #[error("the statements differ at {0}")]
    Differs(Path),
    #[error(transparent)]
    Capture(#[from] CaptureError),
}

/// Variables occurring free in `f`.
pub fn free_vars(f: &Formula) -> BTreeSet<String> {
    fn go(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let terms = |ts: &[&Term], bound: &Vec<String>, out: &mut BTreeSet<String>| {
            for t in ts {
                for v in t.var_names() {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
        };
        match f {
            Formula::Pred(_, args) => terms(&args.iter().collect::<Vec<_>>(), bound, out),
            Formula::Eq(l, r) => terms(&[l, r], bound, out),
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                bound.push(v.clone());
                go(b, bound, out);
                bound.pop();
            }
            _ => f.children().into_iter().for_each(|c| go(c, bound, out)),
        }
    }
    let mut out = BTreeSet::new();
    go(f, &mut Vec::new(), &mut out);
    out
}

pub fn is_free_in(var: &str, f: &Formula) -> bool {
    free_vars(f).contains(var)
}

/// Names used as constants in `f`.
pub fn constants(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    f.visit(&mut |node| {
        let terms: Vec<&Term> = match node {
            Formula::Pred(_, args) => args.iter().collect(),
            Formula::Eq(l, r) => vec![l, r],
            _ => vec![],
        };
        for t in terms {
            t.walk(&mut |t| {
                if let Term::Const(c) = t {
                    out.insert(c.clone());
                }
            });
        }
    });
    out
}

fn occurs_free(target: &Term, bound: &[String]) -> bool {
    target.var_names().iter().all(|v| !bound.contains(v))
}

fn check_capture(replacement: &Term, bound: &[String], path: &Path) -> Result<(), CaptureError> {
    match replacement.names().into_iter().find(|n| bound.contains(n)) {
        Some(variable) => Err(CaptureError {
            variable,
            path: path.clone(),
        }),
        None => Ok(()),
    }
}

struct Substitution<'a> {
    target: &'a Term,
    replacement: &'a Term,
    which: &'a Occurrences,
    seen: usize,
}

impl Substitution<'_> {
    fn term(&mut self, t: &Term, bound: &[String], path: &Path) -> Result<Term, CaptureError> {
        if t == self.target && occurs_free(self.target, bound) {
            let k = self.seen;
            self.seen += 1;
            if self.which.contains(k) {
                check_capture(self.replacement, bound, path)?;
                return Ok(self.replacement.clone());
            }
            return Ok(t.clone());
        }
        match t {
            Term::App(f, args) => Ok(Term::App(
                f.clone(),
                args.iter()
                    .map(|a| self.term(a, bound, path))
                    .collect::<Result<_, _>>()?,
            )),
            _ => Ok(t.clone()),
        }
    }

    fn formula(
        &mut self,
        f: &Formula,
        bound: &mut Vec<String>,
        path: &Path,
    ) -> Result<Formula, CaptureError> {
        Ok(match f {
            Formula::Pred(p, args) => Formula::Pred(
                p.clone(),
                args.iter()
                    .map(|a| self.term(a, bound, path))
                    .collect::<Result<_, _>>()?,
            ),
            Formula::Eq(l, r) => {
                let l = self.term(l, bound, path)?;
                Formula::Eq(l, self.term(r, bound, path)?)
            }
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                bound.push(v.clone());
                let body = self.formula(b, bound, &path.child(0));
                bound.pop();
                f.with_children(vec![body?])
            }
            _ => {
                let children = f
                    .children()
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| self.formula(c, bound, &path.child(i)))
                    .collect::<Result<Vec<_>, _>>()?;
                f.with_children(children)
            }
        })
    }
}

/// Replace free occurrences of `target` in `f` by `replacement`.
///
/// Never renames: if a replaced occurrence sits under a quantifier binding a
/// name of `replacement`, the substitution fails with [`CaptureError`].
pub fn substitute(
    f: &Formula,
    target: &Term,
    replacement: &Term,
    which: &Occurrences,
) -> Result<Formula, CaptureError> {
    let mut s = Substitution {
        target,
        replacement,
        which,
        seen: 0,
    };
    s.formula(f, &mut Vec::new(), &Path::root())
}

/// Check that `new` is `orig` with zero or more free occurrences of `target`
/// replaced by `replacement`, returning how many were replaced.
pub fn count_replacements(
    orig: &Formula,
    new: &Formula,
    target: &Term,
    replacement: &Term,
) -> Result<usize, ReplacementMismatch> {
    fn term(
        o: &Term,
        n: &Term,
        target: &Term,
        repl: &Term,
        bound: &[String],
        path: &Path,
    ) -> Result<usize, ReplacementMismatch> {
        if o == n {
            return Ok(0);
        }
        if o == target && n == repl && occurs_free(target, bound) {
            check_capture(repl, bound, path)?;
            return Ok(1);
        }
        match (o, n) {
            (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => {
                let mut total = 0;
                for (x, y) in xs.iter().zip(ys) {
                    total += term(x, y, target, repl, bound, path)?;
                }
                Ok(total)
            }
            _ => Err(ReplacementMismatch::Differs(path.clone())),
        }
    }

    fn go(
        o: &Formula,
        n: &Formula,
        target: &Term,
        repl: &Term,
        bound: &mut Vec<String>,
        path: &Path,
    ) -> Result<usize, ReplacementMismatch> {
        match (o, n) {
            (Formula::Pred(p, xs), Formula::Pred(q, ys)) if p == q && xs.len() == ys.len() => {
                let mut total = 0;
                for (x, y) in xs.iter().zip(ys) {
                    total += term(x, y, target, repl, bound, path)?;
                }
                Ok(total)
            }
            (Formula::Eq(a, b), Formula::Eq(c, d)) => {
                Ok(term(a, c, target, repl, bound, path)? + term(b, d, target, repl, bound, path)?)
            }
            (Formula::Atom(a), Formula::Atom(b)) if a == b => Ok(0),
            (Formula::Top, Formula::Top) | (Formula::Bottom, Formula::Bottom) => Ok(0),
            _ if o.same_head(n) => {
                let binder = o.as_quantified().map(|(_, v, _)| v.to_string());
                if let Some(v) = &binder {
                    bound.push(v.clone());
                }
                let mut total = 0;
                let mut result = Ok(());
                for (i, (x, y)) in o.children().into_iter().zip(n.children()).enumerate() {
                    match go(x, y, target, repl, bound, &path.child(i)) {
                        Ok(k) => total += k,
                        Err(e) => {
                            result = Err(e);
                            break;
                        }
                    }
                }
                if binder.is_some() {
                    bound.pop();
                }
                result.map(|_| total)
            }
            _ => Err(ReplacementMismatch::Differs(path.clone())),
        }
    }
    go(
        orig,
        new,
        target,
        replacement,
        &mut Vec::new(),
        &Path::root(),
    )
}

/// Walk `pattern` and `instance` in parallel and return the term of
/// `instance` sitting where `pattern` has its first free occurrence of the
/// variable `var`.
pub fn find_instance(pattern: &Formula, var: &str, instance: &Formula) -> Option<Term> {
    fn term(p: &Term, i: &Term, var: &str) -> Option<Term> {
        match (p, i) {
            (Term::Var(v), _) if v == var => Some(i.clone()),
            (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => {
                xs.iter().zip(ys).find_map(|(x, y)| term(x, y, var))
            }
            _ => None,
        }
    }
    match (pattern, instance) {
        (Formula::Pred(p, xs), Formula::Pred(q, ys)) if p == q && xs.len() == ys.len() => {
            xs.iter().zip(ys).find_map(|(x, y)| term(x, y, var))
        }
        (Formula::Eq(a, b), Formula::Eq(c, d)) => term(a, c, var).or_else(|| term(b, d, var)),
        (Formula::Forall(v, _), _) | (Formula::Exists(v, _), _) if v == var => None,
        _ if pattern.same_head(instance) => pattern
            .children()
            .into_iter()
            .zip(instance.children())
            .find_map(|(p, i)| find_instance(p, var, i)),
        _ => None,
    }
}

/// Equality up to consistent renaming of bound variables.
pub fn alpha_equal(f: &Formula, g: &Formula) -> bool {
    fn lookup(env: &[String], name: &str) -> Option<usize> {
        env.iter().rposition(|n| n == name)
    }
    fn term(a: &Term, b: &Term, ea: &[String], eb: &[String]) -> bool {
        match (a, b) {
            (Term::Var(x), Term::Var(y)) => match (lookup(ea, x), lookup(eb, y)) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            },
            (Term::Const(x), Term::Const(y)) => x == y,
            (Term::App(f, xs), Term::App(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term(x, y, ea, eb))
            }
            _ => false,
        }
    }
    fn go(f: &Formula, g: &Formula, ea: &mut Vec<String>, eb: &mut Vec<String>) -> bool {
        match (f, g) {
            (Formula::Atom(a), Formula::Atom(b)) => a == b,
            (Formula::Top, Formula::Top) | (Formula::Bottom, Formula::Bottom) => true,
            (Formula::Pred(p, xs), Formula::Pred(q, ys)) => {
                p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term(x, y, ea, eb))
            }
            (Formula::Eq(a, b), Formula::Eq(c, d)) => term(a, c, ea, eb) && term(b, d, ea, eb),
            (Formula::Forall(x, fb), Formula::Forall(y, gb))
            | (Formula::Exists(x, fb), Formula::Exists(y, gb)) => {
                ea.push(x.clone());
                eb.push(y.clone());
                let r = go(fb, gb, ea, eb);
                ea.pop();
                eb.pop();
                r
            }
            (Formula::Not(a), Formula::Not(b)) => go(a, b, ea, eb),
            (Formula::And(xs), Formula::And(ys)) | (Formula::Or(xs), Formula::Or(ys)) => {
                xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| go(x, y, ea, eb))
            }
            (Formula::Implies(a, b), Formula::Implies(c, d))
            | (Formula::Iff(a, b), Formula::Iff(c, d))
            | (Formula::Xor(a, b), Formula::Xor(c, d)) => go(a, c, ea, eb) && go(b, d, ea, eb),
            _ => false,
        }
    }
    go(f, g, &mut Vec::new(), &mut Vec::new())
}
