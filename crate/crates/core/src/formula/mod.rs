//! Terms and formulas of first-order logic with Boolean constants.
//!
//! The textual syntax accepted by [`parse`] and produced by [`render`] is the
//! canonical statement syntax used everywhere else in the crate: proof files,
//! the protocol and the command line.
//!
//! Operators, tightest binding first:
//!
//! | connective | unicode | ascii  |
//! |------------|---------|--------|
//! | negation   | `¬`     | `~`    |
//! | and        | `∧`     | `&`    |
//! | or         | `∨`     | `\|`   |
//! | xor        | `⊕`     | `(+)`  |
//! | implies    | `→`     | `->`   |
//! | iff        | `↔`     | `<->`  |
//!
//! Quantifiers are written `∀x (body)` / `\A x (body)` and `∃x (body)` /
//! `\E x (body)`; the body must be parenthesized (or be another quantifier).
//! `⊤`/`\top` and `⊥`/`\bot` are the constants.

mod parse;
mod render;
mod subst;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use parse::{parse, parse_term, SyntaxError};
pub use render::{render, render_term, Style};
pub use subst::{
    alpha_equal, constants, count_replacements, find_instance, free_vars, is_free_in, substitute,
    CaptureError, Occurrences, ReplacementMismatch,
};

/// A first-order term.
///
/// Whether an identifier is a [`Term::Var`] or a [`Term::Const`] is decided by
/// context: a name is a variable exactly when an enclosing quantifier binds it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
    /// Function application; always at least one argument.
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn app(symbol: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(symbol.into(), args)
    }

    /// Every variable or constant name mentioned in the term (function
    /// symbols excluded).
    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(n) | Term::Const(n) => {
                out.insert(n.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_names(out)),
        }
    }

    pub fn var_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |t| {
            if let Term::Var(n) = t {
                out.insert(n.clone());
            }
        });
        out
    }

    pub(crate) fn walk(&self, visit: &mut impl FnMut(&Term)) {
        visit(self);
        if let Term::App(_, args) = self {
            for a in args {
                a.walk(visit);
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self, Style::Unicode))
    }
}

/// Quantifier kind, used where both quantifiers are handled uniformly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    Forall,
    Exists,
}

/// A formula. And/Or keep the operand grouping exactly as written, so
/// `P ∧ (Q ∧ R)` and `P ∧ Q ∧ R` are different values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Pred(String, Vec<Term>),
    Eq(Term, Term),
    Top,
    Bottom,
    Not(Box<Formula>),
    /// At least two conjuncts.
    And(Vec<Formula>),
    /// At least two disjuncts.
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Xor(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn pred(symbol: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Pred(symbol.into(), args)
    }

    pub fn equals(lhs: Term, rhs: Term) -> Self {
        Formula::Eq(lhs, rhs)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(children: Vec<Formula>) -> Self {
        Formula::And(children)
    }

    pub fn or(children: Vec<Formula>) -> Self {
        Formula::Or(children)
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn xor(a: Formula, b: Formula) -> Self {
        Formula::Xor(Box::new(a), Box::new(b))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(var.into(), Box::new(body))
    }

    pub fn quantified(q: Quantifier, var: impl Into<String>, body: Formula) -> Self {
        match q {
            Quantifier::Forall => Formula::forall(var, body),
            Quantifier::Exists => Formula::exists(var, body),
        }
    }

    /// `(kind, bound variable, body)` if this is a quantified formula.
    pub fn as_quantified(&self) -> Option<(Quantifier, &str, &Formula)> {
        match self {
            Formula::Forall(v, b) => Some((Quantifier::Forall, v, b)),
            Formula::Exists(v, b) => Some((Quantifier::Exists, v, b)),
            _ => None,
        }
    }

    /// Immediate subformulas, in path order.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_)
            | Formula::Pred(..)
            | Formula::Eq(..)
            | Formula::Top
            | Formula::Bottom => {
                vec![]
            }
            Formula::Not(c) | Formula::Forall(_, c) | Formula::Exists(_, c) => vec![c],
            Formula::And(cs) | Formula::Or(cs) => cs.iter().collect(),
            Formula::Implies(a, b) | Formula::Iff(a, b) | Formula::Xor(a, b) => vec![a, b],
        }
    }

    /// Rebuild this node with new children (same count as [`Formula::children`]).
    pub(crate) fn with_children(&self, mut children: Vec<Formula>) -> Formula {
        debug_assert_eq!(children.len(), self.children().len());
        match self {
            Formula::Atom(_)
            | Formula::Pred(..)
            | Formula::Eq(..)
            | Formula::Top
            | Formula::Bottom => self.clone(),
            Formula::Not(_) => Formula::not(children.remove(0)),
            Formula::Forall(v, _) => Formula::forall(v.clone(), children.remove(0)),
            Formula::Exists(v, _) => Formula::exists(v.clone(), children.remove(0)),
            Formula::And(_) => Formula::And(children),
            Formula::Or(_) => Formula::Or(children),
            Formula::Implies(..) => {
                let b = children.pop().unwrap();
                Formula::implies(children.pop().unwrap(), b)
            }
            Formula::Iff(..) => {
                let b = children.pop().unwrap();
                Formula::iff(children.pop().unwrap(), b)
            }
            Formula::Xor(..) => {
                let b = children.pop().unwrap();
                Formula::xor(children.pop().unwrap(), b)
            }
        }
    }

    /// True when this node and `other` have the same connective and the same
    /// number of children (and the same bound variable for quantifiers), so
    /// they can be compared child by child.
    pub(crate) fn same_head(&self, other: &Formula) -> bool {
        match (self, other) {
            (Formula::Not(_), Formula::Not(_))
            | (Formula::Implies(..), Formula::Implies(..))
            | (Formula::Iff(..), Formula::Iff(..))
            | (Formula::Xor(..), Formula::Xor(..)) => true,
            (Formula::And(a), Formula::And(b)) | (Formula::Or(a), Formula::Or(b)) => {
                a.len() == b.len()
            }
            (Formula::Forall(x, _), Formula::Forall(y, _))
            | (Formula::Exists(x, _), Formula::Exists(y, _)) => x == y,
            _ => false,
        }
    }

    pub fn subformula(&self, path: &Path) -> Option<&Formula> {
        let mut cur = self;
        for &i in &path.0 {
            cur = *cur.children().get(i)?;
        }
        Some(cur)
    }

    /// Replace the subformula at `path`; `None` if the path does not exist.
    pub fn replace_at(&self, path: &Path, replacement: Formula) -> Option<Formula> {
        fn go(f: &Formula, steps: &[usize], replacement: Formula) -> Option<Formula> {
            let Some((&first, rest)) = steps.split_first() else {
                return Some(replacement);
            };
            let children = f.children();
            if first >= children.len() {
                return None;
            }
            let mut owned: Vec<Formula> = children.into_iter().cloned().collect();
            owned[first] = go(&owned[first], rest, replacement)?;
            Some(f.with_children(owned))
        }
        go(self, &path.0, replacement)
    }

    /// Names of propositional atoms, sorted.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(n) = f {
                out.insert(n.clone());
            }
        });
        out
    }

    /// True for formulas built only from atoms, constants and connectives.
    pub fn is_propositional(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |f| {
            if matches!(
                f,
                Formula::Pred(..) | Formula::Eq(..) | Formula::Forall(..) | Formula::Exists(..)
            ) {
                ok = false;
            }
        });
        ok
    }

    pub fn has_quantifier(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= f.as_quantified().is_some());
        found
    }

    /// Number of nodes in the formula tree (terms not counted).
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    pub fn to_unicode(&self) -> String {
        render(self, Style::Unicode)
    }

    pub fn to_ascii(&self) -> String {
        render(self, Style::Ascii)
    }

    pub fn to_latex(&self) -> String {
        render(self, Style::Latex)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_unicode())
    }
}

impl std::str::FromStr for Formula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

// Formulas travel through files and messages as canonical ascii text.
impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_ascii())
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Location of a subformula: child indices from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(pub Vec<usize>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    pub fn child(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.push(i);
        Path(v)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// True if `self` is a (non-strict) prefix of `other`.
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("the whole statement");
        }
        f.write_str("subformula ")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}

/// Identifiers: nonempty, a letter first, then letters, digits or `_`.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        _ => false,
    }
}

/// A function or predicate symbol used with two different arities.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("symbol '{symbol}' is used with {first} argument(s) and with {second} argument(s)")]
pub struct ArityError {
    pub symbol: String,
    pub first: usize,
    pub second: usize,
}

/// Check that every function and predicate symbol is used with one arity
/// across all `formulas`.
pub fn check_arities<'a>(
    formulas: impl IntoIterator<Item = &'a Formula>,
) -> Result<(), ArityError> {
    use std::collections::HashMap;
    let mut seen: HashMap<(bool, String), usize> = HashMap::new();
    let mut record = |is_pred: bool, sym: &str, n: usize| -> Result<(), ArityError> {
        match seen.get(&(is_pred, sym.to_string())) {
            Some(&m) if m != n => Err(ArityError {
                symbol: sym.to_string(),
                first: m,
                second: n,
            }),
            Some(_) => Ok(()),
            None => {
                seen.insert((is_pred, sym.to_string()), n);
                Ok(())
            }
        }
    };
    for f in formulas {
        let mut result = Ok(());
        f.visit(&mut |node| {
            if result.is_err() {
                return;
            }
            let terms: Vec<&Term> = match node {
                Formula::Pred(p, args) => {
                    if let Err(e) = record(true, p, args.len()) {
                        result = Err(e);
                        return;
                    }
                    args.iter().collect()
                }
                Formula::Eq(l, r) => vec![l, r],
                _ => vec![],
            };
            for t in terms {
                t.walk(&mut |t| {
                    if let (Ok(()), Term::App(s, args)) = (&result, t) {
                        if let Err(e) = record(false, s, args.len()) {
                            result = Err(e);
                        }
                    }
                });
            }
        });
        result?;
    }
    Ok(())
}
