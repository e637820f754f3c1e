//! Truth-table semantics for the propositional fragment.
//!
//! Everything here works by exhaustive enumeration. It is the independent
//! reference the rule checker is tested against, not a decision procedure
//! for production use.

use std::collections::{BTreeMap, BTreeSet};

use crate::formula::Formula;

/// Largest number of distinct atoms [`entails`] and [`equivalent`] enumerate.
pub const MAX_ATOMS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("'{0}' is not propositional (it contains predicates, equality or quantifiers)")]
    NotPropositional(String),
    #[error("atom '{0}' has no truth value in the assignment")]
    UnboundAtom(String),
    #[error("{0} distinct atoms exceed the enumeration limit of {MAX_ATOMS}")]
    TooManyAtoms(usize),
}

/// Truth values for a set of atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<String, bool>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, atom: impl Into<String>, value: bool) {
        self.0.insert(atom.into(), value);
    }

    pub fn get(&self, atom: &str) -> Option<bool> {
        self.0.get(atom).copied()
    }
}

impl<S: Into<String>> FromIterator<(S, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (S, bool)>>(iter: I) -> Self {
        Assignment(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

fn require_propositional(f: &Formula) -> Result<(), SemanticsError> {
    if f.is_propositional() {
        Ok(())
    } else {
        Err(SemanticsError::NotPropositional(f.to_unicode()))
    }
}

fn eval_with(
    f: &Formula,
    lookup: &impl Fn(&str) -> Result<bool, SemanticsError>,
) -> Result<bool, SemanticsError> {
    Ok(match f {
        Formula::Atom(a) => lookup(a)?,
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Not(c) => !eval_with(c, lookup)?,
        Formula::And(cs) => {
            let mut v = true;
            for c in cs {
                v = eval_with(c, lookup)? && v;
            }
            v
        }
        Formula::Or(cs) => {
            let mut v = false;
            for c in cs {
                v = eval_with(c, lookup)? || v;
            }
            v
        }
        Formula::Implies(a, b) => !eval_with(a, lookup)? || eval_with(b, lookup)?,
        Formula::Iff(a, b) => eval_with(a, lookup)? == eval_with(b, lookup)?,
        Formula::Xor(a, b) => eval_with(a, lookup)? != eval_with(b, lookup)?,
        Formula::Pred(..) | Formula::Eq(..) | Formula::Forall(..) | Formula::Exists(..) => {
            return Err(SemanticsError::NotPropositional(f.to_unicode()))
        }
    })
}

/// Truth value of `f` under `a`.
pub fn evaluate(f: &Formula, a: &Assignment) -> Result<bool, SemanticsError> {
    require_propositional(f)?;
    eval_with(f, &|atom| {
        a.get(atom)
            .ok_or_else(|| SemanticsError::UnboundAtom(atom.to_string()))
    })
}

// Atoms numbered by position; bit `i` of the mask is the value of atom `i`.
enum Compiled {
    Atom(usize),
    Const(bool),
    Not(Box<Compiled>),
    And(Vec<Compiled>),
    Or(Vec<Compiled>),
    Implies(Box<Compiled>, Box<Compiled>),
    Iff(Box<Compiled>, Box<Compiled>),
    Xor(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    fn new(f: &Formula, index: &BTreeMap<&str, usize>) -> Compiled {
        let rec = |g: &Formula| Box::new(Compiled::new(g, index));
        match f {
            Formula::Atom(a) => Compiled::Atom(index[a.as_str()]),
            Formula::Top => Compiled::Const(true),
            Formula::Bottom => Compiled::Const(false),
            Formula::Not(c) => Compiled::Not(rec(c)),
            Formula::And(cs) => Compiled::And(cs.iter().map(|c| Compiled::new(c, index)).collect()),
            Formula::Or(cs) => Compiled::Or(cs.iter().map(|c| Compiled::new(c, index)).collect()),
            Formula::Implies(a, b) => Compiled::Implies(rec(a), rec(b)),
            Formula::Iff(a, b) => Compiled::Iff(rec(a), rec(b)),
            Formula::Xor(a, b) => Compiled::Xor(rec(a), rec(b)),
            _ => unreachable!("checked propositional before compiling"),
        }
    }

    fn eval(&self, mask: u32) -> bool {
        match self {
            Compiled::Atom(i) => mask >> i & 1 == 1,
            Compiled::Const(b) => *b,
            Compiled::Not(c) => !c.eval(mask),
            Compiled::And(cs) => cs.iter().all(|c| c.eval(mask)),
            Compiled::Or(cs) => cs.iter().any(|c| c.eval(mask)),
            Compiled::Implies(a, b) => !a.eval(mask) || b.eval(mask),
            Compiled::Iff(a, b) => a.eval(mask) == b.eval(mask),
            Compiled::Xor(a, b) => a.eval(mask) != b.eval(mask),
        }
    }
}

fn compile_all(formulas: &[&Formula]) -> Result<(Vec<Compiled>, usize), SemanticsError> {
    for f in formulas {
        require_propositional(f)?;
    }
    let atoms: BTreeSet<String> = formulas.iter().flat_map(|f| f.atoms()).collect();
    if atoms.len() > MAX_ATOMS {
        return Err(SemanticsError::TooManyAtoms(atoms.len()));
    }
    let index: BTreeMap<&str, usize> = atoms
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_str(), i))
        .collect();
    Ok((
        formulas.iter().map(|f| Compiled::new(f, &index)).collect(),
        atoms.len(),
    ))
}

/// True iff every assignment satisfying all `premises` satisfies `conclusion`.
pub fn entails(premises: &[Formula], conclusion: &Formula) -> Result<bool, SemanticsError> {
    let mut all: Vec<&Formula> = premises.iter().collect();
    all.push(conclusion);
    let (compiled, n) = compile_all(&all)?;
    let (goal, hyps) = compiled.split_last().unwrap();
    Ok((0..1u32 << n).all(|mask| !hyps.iter().all(|h| h.eval(mask)) || goal.eval(mask)))
}

/// True iff `f` and `g` agree under every assignment of their atoms.
pub fn equivalent(f: &Formula, g: &Formula) -> Result<bool, SemanticsError> {
    let (compiled, n) = compile_all(&[f, g])?;
    Ok((0..1u32 << n).all(|mask| compiled[0].eval(mask) == compiled[1].eval(mask)))
}
