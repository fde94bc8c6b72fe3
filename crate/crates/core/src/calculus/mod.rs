//! Sequents, derivation rules, bounded derivability and proof search, and
//! derivation trees.
//!
//! Every rule is a decidable membership check ([`rule_admits`]) plus a
//! budgeted generator used by the forward search. Axiom rules (those whose
//! image does not depend on the premises) generate their instances from the
//! budget's terms and formula pool; the other rules generate from the
//! sequents at hand.

mod rules;
mod search;
mod tree;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::language::{Language, SymbolId};
use crate::strings::SymString;
use crate::syntax::{self, SyntaxError};

pub use rules::{axiom_instances, for_each_instance, minimal_premises, one_step_admits, rule_admits, vcontr};
pub use search::{
    derivables_bounded, one_step_bounded, prove_all_bounded, prove_bounded, prove_sequent_bounded, Proof, ProofSearch,
};
pub use tree::{verify_derivation, DerivationTree, Justification, RejectReason, Rejection, Verified};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("malformed sequent: {0}")]
    MalformedSequent(SyntaxError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("rule {0} draws on premises; its instances are not enumerable")]
    NotEnumerable(RuleTag),
    #[error("the conclusion is not admitted by {0}")]
    NotAdmitted(RuleTag),
    #[error("unknown ruleset {0:?}")]
    UnknownRuleSet(String),
    #[error("unknown rule tag {0:?}")]
    UnknownRuleTag(String),
}

/// A sequent: a finite set of wffs and a wff.
///
/// The antecedent is kept sorted and free of duplicates, so equal sets give
/// equal sequents however they were listed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    antecedent: Vec<SymString>,
    succedent: SymString,
}

impl Sequent {
    pub fn new<I: IntoIterator<Item = SymString>>(antecedent: I, succedent: SymString) -> Self {
        let set: BTreeSet<SymString> = antecedent.into_iter().collect();
        Sequent { antecedent: set.into_iter().collect(), succedent }
    }

    pub fn antecedent(&self) -> &[SymString] {
        &self.antecedent
    }

    pub fn succedent(&self) -> &SymString {
        &self.succedent
    }

    pub fn contains(&self, phi: &SymString) -> bool {
        self.antecedent.binary_search(phi).is_ok()
    }

    /// Whether the antecedent is a subset of `xs` (sorted, deduplicated).
    pub fn antecedent_within(&self, xs: &BTreeSet<SymString>) -> bool {
        self.antecedent.iter().all(|a| xs.contains(a))
    }

    pub(crate) fn ante_subset(small: &[SymString], big: &[SymString]) -> bool {
        small.iter().all(|a| big.binary_search(a).is_ok())
    }

    /// Every member of the antecedent and the succedent must be a wff.
    pub fn check(&self, lang: &Language) -> Result<(), CalculusError> {
        for w in self.antecedent.iter().chain(core::iter::once(&self.succedent)) {
            syntax::parse_wff(lang, w).map_err(CalculusError::MalformedSequent)?;
        }
        Ok(())
    }

    pub fn strings(&self) -> impl Iterator<Item = &SymString> {
        self.antecedent.iter().chain(core::iter::once(&self.succedent))
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.antecedent.iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "{a}")?;
        }
        if !self.antecedent.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "|- {}", self.succedent)
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleTag {
    R0,
    RUnion,
    REq,
    REqSym,
    REqTrans,
    ROpCongr,
    RRelCongr,
    RNor,
    RExIntro,
    RExElim,
    RContr,
    RDNeg,
    RCutA(SymbolId),
    RCutB(SymbolId),
}

impl RuleTag {
    /// Rules whose image ignores the premises.
    pub fn is_axiom(self) -> bool {
        matches!(
            self,
            RuleTag::R0
                | RuleTag::REq
                | RuleTag::REqSym
                | RuleTag::REqTrans
                | RuleTag::ROpCongr
                | RuleTag::RRelCongr
                | RuleTag::RNor
                | RuleTag::RExIntro
        )
    }

    /// Number of premises a single application consumes.
    pub fn premise_count(self) -> usize {
        match self {
            RuleTag::RContr | RuleTag::RCutA(_) => 2,
            t if t.is_axiom() => 0,
            _ => 1,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CalculusError> {
        let bad = || CalculusError::UnknownRuleTag(text.to_string());
        let param = |inner: &str| -> Result<SymbolId, CalculusError> {
            let v = inner.strip_suffix(')').ok_or_else(bad)?;
            SymbolId::new(v.trim()).map_err(|_| bad())
        };
        Ok(match text {
            "R0" => RuleTag::R0,
            "RUnion" => RuleTag::RUnion,
            "REq" => RuleTag::REq,
            "REqSym" => RuleTag::REqSym,
            "REqTrans" => RuleTag::REqTrans,
            "ROpCongr" => RuleTag::ROpCongr,
            "RRelCongr" => RuleTag::RRelCongr,
            "RNor" => RuleTag::RNor,
            "RExIntro" => RuleTag::RExIntro,
            "RExElim" => RuleTag::RExElim,
            "RContr" => RuleTag::RContr,
            "RDNeg" => RuleTag::RDNeg,
            _ => {
                if let Some(rest) = text.strip_prefix("RCutA(") {
                    RuleTag::RCutA(param(rest)?)
                } else if let Some(rest) = text.strip_prefix("RCutB(") {
                    RuleTag::RCutB(param(rest)?)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleTag::RCutA(v) => write!(f, "RCutA({v})"),
            RuleTag::RCutB(v) => write!(f, "RCutB({v})"),
            other => write!(f, "{other:?}"),
        }
    }
}

pub type RuleSet = BTreeSet<RuleTag>;

/// The named rulesets. The cut variant uses `vbar` as its distinguished
/// literal; callers usually pass the first pool literal.
pub fn named_rule_sets(vbar: SymbolId) -> BTreeMap<&'static str, RuleSet> {
    use RuleTag::*;
    let d1: RuleSet = [R0, REq, REqSym, REqTrans, ROpCongr, RRelCongr, RExIntro, RNor, RExElim, RContr, RUnion, RDNeg]
        .into_iter()
        .collect();
    let mut d0 = d1.clone();
    d0.remove(&RDNeg);
    let mut d1cut = d1.clone();
    d1cut.remove(&RUnion);
    d1cut.remove(&RContr);
    d1cut.insert(RCutA(vbar));
    d1cut.insert(RCutB(vbar));
    [("D0", d0), ("D1", d1), ("D1'", d1cut)].into_iter().collect()
}

/// Looks a ruleset up by name, or parses a comma-separated tag list.
pub fn rule_set(lang: &Language, name: &str) -> Result<RuleSet, CalculusError> {
    let key = if name == "D1cut" { "D1'" } else { name };
    if let Some(d) = named_rule_sets(lang.pool_literal(0)).remove(key) {
        return Ok(d);
    }
    if name.starts_with('R') {
        return name.split(',').map(|t| RuleTag::parse(t.trim())).collect();
    }
    Err(CalculusError::UnknownRuleSet(name.to_string()))
}

/// Finite truncation of the infinite rule images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Iterations of the one-step operator a search may run.
    pub max_steps: usize,
    /// Depth bound on the terms instantiating term-schematic rules.
    pub term_depth: usize,
    /// Formulas instantiating formula-schematic rules and weakenings.
    pub formula_pool: Vec<SymString>,
    /// Literals the budget terms are built from.
    pub literal_budget: Vec<SymbolId>,
    /// Conclusions with larger antecedents are dropped.
    pub max_antecedent: usize,
    /// When set, weakening targets exactly these antecedents instead of
    /// unions with subsets of the formula pool.
    pub antecedent_pool: Option<Vec<Vec<SymString>>>,
    /// A proof search gives up once a step holds more sequents than this.
    pub max_sequents: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_steps: 3,
            term_depth: 0,
            formula_pool: Vec::new(),
            literal_budget: Vec::new(),
            max_antecedent: 2,
            antecedent_pool: None,
            max_sequents: 200_000,
        }
    }
}

impl Budgets {
    pub fn terms(&self, lang: &Language) -> Result<Vec<SymString>, CalculusError> {
        Ok(syntax::enumerate_terms(lang, self.term_depth, &self.literal_budget)?)
    }

    /// A budget large enough to regenerate every sequent of `sequents`: the
    /// pool holds all their formulas, the terms reach every term occurring in
    /// them, and weakening targets exactly their antecedents.
    pub fn covering(lang: &Language, sequents: &[Sequent]) -> Self {
        let mut pool = BTreeSet::new();
        let mut lits = BTreeSet::new();
        let mut term_depth = 0;
        let mut ante = BTreeSet::new();
        let mut max_ante = 0;
        for s in sequents {
            max_ante = max_ante.max(s.antecedent.len());
            ante.insert(s.antecedent.clone());
            for w in s.strings() {
                collect_formulas(lang, w, &mut pool);
                for (pos, &sym) in w.iter().enumerate() {
                    if lang.is_literal(sym) {
                        lits.insert(sym);
                    }
                    if let Ok((_, d)) = syntax::scan_term(lang, w, pos) {
                        term_depth = term_depth.max(d);
                    }
                }
            }
        }
        Budgets {
            max_steps: 0,
            term_depth,
            formula_pool: pool.into_iter().collect(),
            literal_budget: lits.into_iter().collect(),
            max_antecedent: max_ante,
            antecedent_pool: Some(ante.into_iter().collect()),
            max_sequents: usize::MAX,
        }
    }
}

/// Adds `w` and all of its subformulas (and the bodies reachable through
/// negations) to `out`.
fn collect_formulas(lang: &Language, w: &SymString, out: &mut BTreeSet<SymString>) {
    if !out.insert(w.clone()) {
        return;
    }
    if let Ok(r) = syntax::parse_wff(lang, w) {
        if r.kind != syntax::Kind::AtomicWff {
            for c in &r.children {
                collect_formulas(lang, c, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_sets() {
        let v = SymbolId::new("v0").unwrap();
        let sets = named_rule_sets(v);
        assert_eq!(sets["D1"].len(), 12);
        let mut d0 = sets["D1"].clone();
        d0.remove(&RuleTag::RDNeg);
        assert_eq!(sets["D0"], d0);
        assert!(sets["D1'"].contains(&RuleTag::RCutA(v)));
        assert!(!sets["D1'"].contains(&RuleTag::RContr));
    }

    #[test]
    fn tag_round_trip() {
        let v = SymbolId::new("v0").unwrap();
        for t in named_rule_sets(v).values().flatten() {
            assert_eq!(RuleTag::parse(&t.to_string()), Ok(*t));
        }
        assert!(RuleTag::parse("RFoo").is_err());
    }

    #[test]
    fn antecedent_is_a_set() {
        let a = SymString::from_packed("133").unwrap();
        let b = SymString::from_packed("144").unwrap();
        let s1 = Sequent::new([a.clone(), b.clone(), a.clone()], b.clone());
        let s2 = Sequent::new([b.clone(), a], b);
        assert_eq!(s1, s2);
        assert_eq!(s1.antecedent().len(), 2);
    }
}
