//! Rule catalogue and rule checking.
//!
//! Rules come in families. Inference rules and most predicate rules match
//! whole statements. Equivalence and Boolean rules, plus the quantifier
//! rewrites (Bound Variable, Null Quantifier, Prenex), may be applied at any
//! number of disjoint subformula positions in one step.
//!
//! `verify` never recursively checks the cited lines; that is the proof
//! checker's job.

mod equivalence;
mod inference;
mod predicate;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagnostic::{DiagnosticCode, Verdict};
use crate::formula::{alpha_equal, Formula};

pub use equivalence::{check_equivalence_step, check_rewrite, rewrite_positions, RewriteMismatch};
pub use inference::check_inference;
pub use predicate::check_predicate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleFamily {
    Inference,
    Equivalence,
    Predicate,
    Boolean,
    Structural,
}

impl fmt::Display for RuleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleFamily::Inference => "Inference",
            RuleFamily::Equivalence => "Equivalence",
            RuleFamily::Predicate => "Predicate",
            RuleFamily::Boolean => "Boolean",
            RuleFamily::Structural => "Structural",
        })
    }
}

/// How many references a rule takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefCount {
    Exactly(usize),
    Between(usize, usize),
    AtLeast(usize),
}

impl RefCount {
    pub fn accepts(self, n: usize) -> bool {
        match self {
            RefCount::Exactly(k) => n == k,
            RefCount::Between(lo, hi) => (lo..=hi).contains(&n),
            RefCount::AtLeast(k) => n >= k,
        }
    }
}

impl fmt::Display for RefCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RefCount::Exactly(0) => write!(f, "no references"),
            RefCount::Exactly(1) => write!(f, "exactly one reference"),
            RefCount::Exactly(k) => write!(f, "exactly {k} references"),
            RefCount::Between(lo, hi) => write!(f, "between {lo} and {hi} references"),
            RefCount::AtLeast(k) => write!(f, "at least {k} references"),
        }
    }
}

macro_rules! rules {
    ($($id:ident => $slug:literal, $name:literal, $family:ident;)+) => {
        /// Every rule the checker knows.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(rename_all = "snake_case")]
        pub enum RuleId {
            $($id,)+
        }

        impl RuleId {
            pub const ALL: &'static [RuleId] = &[$(RuleId::$id,)+];

            /// Stable identifier used in files and messages.
            pub fn slug(self) -> &'static str {
                match self {
                    $(RuleId::$id => $slug,)+
                }
            }

            /// Human-readable name.
            pub fn name(self) -> &'static str {
                match self {
                    $(RuleId::$id => $name,)+
                }
            }

            pub fn family(self) -> RuleFamily {
                match self {
                    $(RuleId::$id => RuleFamily::$family,)+
                }
            }
        }
    };
}

rules! {
    ModusPonens => "modus_ponens", "Modus Ponens", Inference;
    Addition => "addition", "Addition", Inference;
    Simplification => "simplification", "Simplification", Inference;
    Conjunction => "conjunction", "Conjunction", Inference;
    HypotheticalSyllogism => "hypothetical_syllogism", "Hypothetical Syllogism", Inference;
    DisjunctiveSyllogism => "disjunctive_syllogism", "Disjunctive Syllogism", Inference;
    ExcludedMiddle => "excluded_middle", "Excluded Middle", Inference;
    ConstructiveDilemma => "constructive_dilemma", "Constructive Dilemma", Inference;

    Implication => "implication", "Implication", Equivalence;
    DeMorgan => "de_morgan", "DeMorgan", Equivalence;
    Association => "association", "Association", Equivalence;
    Commutativity => "commutativity", "Commutativity", Equivalence;
    Idempotence => "idempotence", "Idempotence", Equivalence;
    Distribution => "distribution", "Distribution", Equivalence;
    Equivalence => "equivalence", "Equivalence", Equivalence;
    DoubleNegation => "double_negation", "Double Negation", Equivalence;
    Exportation => "exportation", "Exportation", Equivalence;
    Subsumption => "subsumption", "Subsumption", Equivalence;
    Contrapositive => "contrapositive", "Contrapositive", Equivalence;

    UniversalGeneralization => "universal_generalization", "Universal Generalization", Predicate;
    UniversalInstantiation => "universal_instantiation", "Universal Instantiation", Predicate;
    ExistentialGeneralization => "existential_generalization", "Existential Generalization", Predicate;
    ExistentialInstantiation => "existential_instantiation", "Existential Instantiation", Predicate;
    BoundVariable => "bound_variable", "Bound Variable", Predicate;
    NullQuantifier => "null_quantifier", "Null Quantifier", Predicate;
    Prenex => "prenex", "Prenex", Predicate;
    Identity => "identity", "Identity", Predicate;
    FreeVariable => "free_variable", "Free Variable", Predicate;

    BooleanIdentity => "boolean_identity", "Boolean Identity", Boolean;
    BooleanNegation => "boolean_negation", "Boolean Negation", Boolean;
    BooleanDominance => "boolean_dominance", "Boolean Dominance", Boolean;
    SymbolNegation => "symbol_negation", "Symbol Negation", Boolean;

    Premise => "premise", "Premise", Structural;
    Assumption => "assumption", "Assumption", Structural;
    Subproof => "subproof", "Subproof", Structural;
}

/// Upper bound on Hypothetical Syllogism references; the chain search tries
/// every ordering.
pub const MAX_CHAIN_REFS: usize = 8;

impl RuleId {
    pub fn ref_count(self) -> RefCount {
        use RuleId::*;
        match self {
            ModusPonens | FreeVariable | Subproof => RefCount::Exactly(2),
            Addition | Simplification => RefCount::Exactly(1),
            Conjunction | DisjunctiveSyllogism => RefCount::AtLeast(2),
            HypotheticalSyllogism => RefCount::Between(2, MAX_CHAIN_REFS),
            ConstructiveDilemma => RefCount::AtLeast(3),
            ExcludedMiddle | Identity | Premise | Assumption => RefCount::Exactly(0),
            UniversalGeneralization
            | UniversalInstantiation
            | ExistentialGeneralization
            | ExistentialInstantiation => RefCount::Exactly(1),
            _ if self.is_rewrite() => RefCount::Exactly(1),
            _ => unreachable!("every rule has a reference count"),
        }
    }

    /// Rules that may be applied at subformula positions.
    pub fn is_rewrite(self) -> bool {
        matches!(self.family(), RuleFamily::Equivalence | RuleFamily::Boolean)
            || matches!(
                self,
                RuleId::BoundVariable | RuleId::NullQuantifier | RuleId::Prenex
            )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown rule '{0}'")]
pub struct UnknownRule(pub String);

impl FromStr for RuleId {
    type Err = UnknownRule;

    /// Accepts the slug (`modus_ponens`) or the display name, ignoring case,
    /// spaces, dashes and underscores.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = |t: &str| {
            t.chars()
                .filter(|c| c.is_alphanumeric())
                .flat_map(char::to_lowercase)
                .collect::<String>()
        };
        let key = norm(s);
        RuleId::ALL
            .iter()
            .copied()
            .find(|r| norm(r.slug()) == key || norm(r.name()) == key)
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

/// What a rule may need to know about the rest of the proof.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleContext {
    /// Statements of the earlier lines visible from the checked line.
    pub visible_formulas: Vec<Formula>,
    /// Constants that are not arbitrary at the checked line: those of the
    /// premises, of the open assumptions, and those introduced by existential
    /// instantiation on visible lines.
    pub reserved_constants: BTreeSet<String>,
}

impl RuleContext {
    pub fn new(visible_formulas: Vec<Formula>, reserved_constants: BTreeSet<String>) -> Self {
        RuleContext {
            visible_formulas,
            reserved_constants,
        }
    }
}

pub(crate) fn show(f: &Formula) -> String {
    format!("'{}'", f.to_unicode())
}

/// Check that `conclusion` follows from `refs` by `rule`.
///
/// All failures are reported as invalid verdicts.
pub fn verify(rule: RuleId, conclusion: &Formula, refs: &[Formula], ctx: &RuleContext) -> Verdict {
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
    match rule.family() {
        RuleFamily::Inference => check_inference(rule, conclusion, refs),
        RuleFamily::Equivalence | RuleFamily::Boolean => check_rewrite(rule, &refs[0], conclusion),
        RuleFamily::Predicate => check_predicate(rule, conclusion, refs, ctx),
        RuleFamily::Structural => check_structural(rule, conclusion, refs),
    }
}

fn check_structural(rule: RuleId, conclusion: &Formula, refs: &[Formula]) -> Verdict {
    match rule {
        RuleId::Premise | RuleId::Assumption => {
            Verdict::valid(format!("{} needs no justification", rule.name()))
        }
        RuleId::Subproof => {
            let Formula::Implies(a, b) = conclusion else {
                return Verdict::invalid(
                    DiagnosticCode::WrongShape,
                    format!(
                        "a subproof discharges to an implication, but {} is not one",
                        show(conclusion)
                    ),
                );
            };
            if !alpha_equal(a, &refs[0]) {
                return Verdict::invalid(
                    DiagnosticCode::NoMatchingPattern,
                    format!(
                        "the antecedent {} is not the subproof's assumption {}",
                        show(a),
                        show(&refs[0])
                    ),
                )
                .at(crate::formula::Path(vec![0]));
            }
            if !alpha_equal(b, &refs[1]) {
                return Verdict::invalid(
                    DiagnosticCode::NoMatchingPattern,
                    format!(
                        "the consequent {} is not the subproof's last line {}",
                        show(b),
                        show(&refs[1])
                    ),
                )
                .at(crate::formula::Path(vec![1]));
            }
            Verdict::valid("assumption discharged")
        }
        _ => unreachable!("not a structural rule"),
    }
}
