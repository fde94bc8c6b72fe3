//! First-order logic over flat symbol strings.
//!
//! Terms and formulas are both plain [`SymString`]s in Polish notation, read
//! against a [`Language`] that assigns every symbol a signed arity. The only
//! connective is NOR and the only quantifier is "head the formula with a
//! literal". Everything infinitary (rule images, provability, Lindenbaum and
//! witness chains) is run under explicit budgets.

#![no_std]

extern crate alloc;

pub mod calculus;
pub mod enlarge;
pub mod language;
pub mod quotient;
pub mod semantics;
pub mod strings;
pub mod substitution;
pub mod syntax;

pub use calculus::{Budgets, DerivationTree, Justification, RuleSet, RuleTag, Sequent};
pub use language::{Language, LanguageError, SymbolClass, SymbolId};
pub use semantics::{Element, FiniteInterpretation, SemanticsError};
pub use strings::{FiniteMap, SymString};
pub use syntax::{Kind, ParseResult, SyntaxError};
