//! Natural-deduction proof checking for propositional and predicate logic.
//!
//! [`formula`] parses and renders statements, [`rules`] checks single rule
//! applications, [`proof`] checks whole documents with subproofs and goals,
//! [`persistence`] reads and writes proof files, and [`protocol`] is the
//! JSON message layer used by front ends. [`semantics`] is a truth-table
//! oracle for the propositional fragment.

pub mod cli;
pub mod diagnostic;
pub mod formula;
pub mod persistence;
pub mod proof;
pub mod protocol;
pub mod rules;
pub mod semantics;
