//! Bounded replicas of the witness-subjoining and maximization chains, the
//! evidence-based consistency oracle, and syntactic status checks.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use thiserror::Error;

use crate::calculus::{self, Budgets, CalculusError, DerivationTree, ProofSearch, RuleSet};
use crate::language::{Language, SymbolId};
use crate::semantics::{self, FiniteInterpretation, ModelSearch, SemanticsError};
use crate::strings::{symbols_of, SymString};
use crate::substitution::simple_subst;
use crate::syntax::{self, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EnlargeError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}

/// Budgets for the oracle: a proof search for inconsistency and a model
/// search for consistency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub proof: Budgets,
    pub max_universe: usize,
    pub space_cap: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { proof: Budgets::default(), max_universe: 2, space_cap: semantics::DEFAULT_SPACE_CAP }
    }
}

impl OracleBudget {
    pub fn zero() -> Self {
        OracleBudget { proof: Budgets { max_steps: 0, ..Budgets::default() }, max_universe: 0, space_cap: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConsistencyVerdict {
    Consistent(FiniteInterpretation),
    /// Derivations of `psi` and of its negation.
    Inconsistent { psi: SymString, proof: DerivationTree, refutation: DerivationTree },
    Unknown,
}

impl ConsistencyVerdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            ConsistencyVerdict::Consistent(_) => VerdictKind::Consistent,
            ConsistencyVerdict::Inconsistent { .. } => VerdictKind::Inconsistent,
            ConsistencyVerdict::Unknown => VerdictKind::Unknown,
        }
    }
}

/// Adds the members of `x` to the formula pool of `b`.
fn with_pool(b: &Budgets, x: &[SymString]) -> Budgets {
    let mut out = b.clone();
    for w in x {
        if !out.formula_pool.contains(w) {
            out.formula_pool.push(w.clone());
        }
    }
    out
}

/// A finite model of `x` is evidence of consistency for a sound ruleset; a
/// bounded derivation of some pool formula and of its negation is evidence
/// of inconsistency.
pub fn consistency_oracle(
    lang: &Language,
    d: &RuleSet,
    x: &[SymString],
    ob: &OracleBudget,
) -> Result<ConsistencyVerdict, EnlargeError> {
    for w in x {
        syntax::parse_wff(lang, w)?;
    }
    if let ModelSearch::Found(m) = semantics::find_model(lang, x, ob.max_universe, ob.space_cap)? {
        return Ok(ConsistencyVerdict::Consistent(m));
    }
    if ob.proof.max_steps == 0 {
        return Ok(ConsistencyVerdict::Unknown);
    }
    let b = with_pool(&ob.proof, x);
    let candidates: Vec<SymString> = b.formula_pool.clone();
    let mut goals = Vec::with_capacity(2 * candidates.len());
    for psi in &candidates {
        goals.push(psi.clone());
        goals.push(syntax::mk_not(lang, psi));
    }
    let found = calculus::prove_all_bounded(lang, d, x, &goals, &b)?;
    for (k, psi) in candidates.into_iter().enumerate() {
        if let (ProofSearch::Proved(a), ProofSearch::Proved(r)) = (&found[2 * k], &found[2 * k + 1]) {
            return Ok(ConsistencyVerdict::Inconsistent { psi, proof: a.tree.clone(), refutation: r.tree.clone() });
        }
    }
    Ok(ConsistencyVerdict::Unknown)
}

/// The enumerations driving both chains: `formula(n)` runs through
/// `formulas`, and `existential(n)` pairs literals with formulas along
/// anti-diagonals so that every pair of the finite fragment is reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationPair {
    literals: Vec<SymbolId>,
    formulas: Vec<SymString>,
    pairs: Vec<(usize, usize)>,
}

impl EnumerationPair {
    pub fn new(literals: Vec<SymbolId>, formulas: Vec<SymString>) -> Self {
        let (nl, nf) = (literals.len(), formulas.len());
        let mut pairs = Vec::with_capacity(nl * nf);
        for sum in 0..(nl + nf).saturating_sub(1) {
            for i in 0..nl.min(sum + 1) {
                let j = sum - i;
                if j < nf {
                    pairs.push((i, j));
                }
            }
        }
        EnumerationPair { literals, formulas, pairs }
    }

    /// Formulas of depth at most `depth` over the literal budget, in canonical
    /// order; literals in budget order.
    pub fn canonical(lang: &Language, budget: &[SymbolId], depth: usize, term_depth: usize) -> Result<Self, EnlargeError> {
        let formulas = syntax::enumerate_wffs(lang, depth, term_depth, budget)?;
        Ok(Self::new(budget.to_vec(), formulas))
    }

    pub fn literals(&self) -> &[SymbolId] {
        &self.literals
    }

    pub fn formulas(&self) -> &[SymString] {
        &self.formulas
    }

    pub fn formula(&self, n: usize) -> Option<&SymString> {
        self.formulas.get(n)
    }

    pub fn existential(&self, n: usize) -> Option<(SymbolId, &SymString)> {
        self.pairs.get(n).map(|&(i, j)| (self.literals[i], &self.formulas[j]))
    }

    pub fn existential_count(&self) -> usize {
        self.pairs.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    AddedWitness,
    AddedFormula,
    AddedNegation,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    Consistent,
    Inconsistent,
    Unknown,
    Proved,
    NotProved,
    /// The step was decided without consulting the oracle.
    NotConsulted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub index: usize,
    /// `v φ` for the witness chain, `φ` for the maximization chain.
    pub formula: SymString,
    pub action: Action,
    pub verdict: VerdictKind,
    pub added: Option<SymString>,
    /// The branch taken rests on missing evidence.
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChainReport {
    pub steps: Vec<ChainStep>,
}

impl ChainReport {
    pub fn flagged(&self) -> impl Iterator<Item = &ChainStep> {
        self.steps.iter().filter(|s| s.flagged)
    }
}

/// Whether `w` is `φ[v→v']` for a literal `v'` not occurring in `φ`.
pub fn is_witness(lang: &Language, v: SymbolId, phi: &[SymbolId], w: &[SymbolId]) -> bool {
    if w.len() != phi.len() {
        return false;
    }
    let Some(k) = phi.iter().position(|&s| s == v) else {
        return w == phi;
    };
    let v2 = w[k];
    lang.is_literal(v2) && !phi.contains(&v2) && simple_subst(v, v2, phi).symbols() == w
}

/// Members of `x` that witness the existential `v φ`.
pub fn witnesses_in<'a>(lang: &Language, v: SymbolId, phi: &[SymbolId], x: &'a [SymString]) -> Vec<&'a SymString> {
    x.iter().filter(|w| is_witness(lang, v, phi, w)).collect()
}

fn insert(x: &mut Vec<SymString>, w: SymString) {
    if !x.contains(&w) {
        x.push(w);
    }
}

/// `n` steps of witness subjoining from `x`. Fresh literals are the least
/// pool literals absent from the current set and the formula.
pub fn add_w_chain(
    lang: &Language,
    d: &RuleSet,
    x: &[SymString],
    enumeration: &EnumerationPair,
    n: usize,
    ob: &OracleBudget,
) -> Result<(Vec<SymString>, ChainReport), EnlargeError> {
    let mut cur: Vec<SymString> = Vec::new();
    for w in x {
        syntax::parse_wff(lang, w)?;
        insert(&mut cur, w.clone());
    }
    let mut report = ChainReport::default();
    for index in 0..n.min(enumeration.existential_count()) {
        let (v, phi) = enumeration.existential(index).expect("index in range");
        let mut ex = SymString::single(v);
        ex.extend_from(phi);
        let mut step = ChainStep { index, formula: ex.clone(), action: Action::Skipped, verdict: VerdictKind::NotConsulted, added: None, flagged: false };
        if witnesses_in(lang, v, phi, &cur).is_empty() {
            let mut trial = cur.clone();
            insert(&mut trial, ex);
            let verdict = consistency_oracle(lang, d, &trial, ob)?.kind();
            step.verdict = verdict;
            step.flagged = verdict == VerdictKind::Unknown;
            if verdict == VerdictKind::Consistent {
                let forbidden: BTreeSet<SymbolId> = symbols_of(cur.iter().chain(core::iter::once(phi)));
                let fresh = lang.fresh_literal(&forbidden);
                let w = simple_subst(v, fresh, phi);
                insert(&mut cur, w.clone());
                step.action = Action::AddedWitness;
                step.added = Some(w);
            }
        }
        report.steps.push(step);
    }
    Ok((cur, report))
}

/// `n` steps of the maximization chain from `x`. A failed bounded search
/// takes the "otherwise" branch and is flagged.
pub fn add_f_chain(
    lang: &Language,
    d: &RuleSet,
    x: &[SymString],
    enumeration: &EnumerationPair,
    n: usize,
    b: &Budgets,
) -> Result<(Vec<SymString>, ChainReport), EnlargeError> {
    let mut cur: Vec<SymString> = Vec::new();
    for w in x {
        syntax::parse_wff(lang, w)?;
        insert(&mut cur, w.clone());
    }
    let mut report = ChainReport::default();
    for index in 0..n.min(enumeration.formulas.len()) {
        let phi = enumeration.formulas[index].clone();
        let neg = syntax::mk_not(lang, &phi);
        let mut pool = cur.clone();
        insert(&mut pool, phi.clone());
        let budget = with_pool(b, &pool);
        let proved = calculus::prove_bounded(lang, d, &cur, &neg, &budget)?.is_proved();
        let (action, added, verdict) = if proved {
            (Action::AddedNegation, neg, VerdictKind::Proved)
        } else {
            (Action::AddedFormula, phi.clone(), VerdictKind::NotProved)
        };
        insert(&mut cur, added.clone());
        report.steps.push(ChainStep { index, formula: phi, action, verdict, added: Some(added), flagged: !proved });
    }
    Ok((cur, report))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SyntacticStatus {
    pub s_consistent: bool,
    pub cover_on: bool,
    pub witnessed: bool,
    pub mincover_on: bool,
}

/// Membership checks on a finite set: no formula together with its
/// negation; every budget formula or its negation present; every
/// existential member witnessed.
pub fn syntactic_status(lang: &Language, x: &[SymString], cover_budget: &[SymString]) -> SyntacticStatus {
    let set: BTreeSet<&SymString> = x.iter().collect();
    let s_consistent = !x.iter().any(|w| syntax::is_wff(lang, w) && set.contains(&syntax::mk_not(lang, w)));
    let cover_on = cover_budget.iter().all(|w| set.contains(w) || set.contains(&syntax::mk_not(lang, w)));
    let witnessed = x.iter().all(|w| match syntax::as_existential(lang, w) {
        Some((v, phi)) => !witnesses_in(lang, v, &phi, x).is_empty(),
        None => true,
    });
    SyntacticStatus { s_consistent, cover_on, witnessed, mincover_on: s_consistent && cover_on }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{named_rule_sets, verify_derivation};
    use alloc::string::ToString;
    use alloc::vec;

    fn s(t: &str) -> SymbolId {
        SymbolId::new(t).unwrap()
    }

    fn p(t: &str) -> SymString {
        SymString::from_packed(t).unwrap()
    }

    fn grp() -> Language {
        let mut symbols = vec![(s("2"), 2)];
        for d in 3..=9 {
            symbols.push((s(&d.to_string()), 0));
        }
        Language::new(s("1"), s("0"), symbols, ["v"]).unwrap()
    }

    fn d1() -> RuleSet {
        named_rule_sets(s("v0"))["D1"].clone()
    }

    #[test]
    fn oracle_examples() {
        let g = grp();
        let ob = OracleBudget {
            proof: Budgets { literal_budget: vec![s("3"), s("4")], max_steps: 1, ..Budgets::default() },
            ..OracleBudget::default()
        };
        let v = consistency_oracle(&g, &d1(), &[p("134"), p("0134134")], &ob).unwrap();
        let ConsistencyVerdict::Inconsistent { psi, proof, refutation } = v else { panic!("{v:?}") };
        assert_eq!(psi, p("134"));
        assert_eq!(verify_derivation(&g, &d1(), &proof).unwrap().depth, 1);
        assert_eq!(verify_derivation(&g, &d1(), &refutation).unwrap().depth, 1);
        let ConsistencyVerdict::Consistent(m) = consistency_oracle(&g, &d1(), &[p("133")], &ob).unwrap() else { panic!() };
        assert_eq!(m.size(), 1);
        assert_eq!(consistency_oracle(&g, &d1(), &[p("133")], &OracleBudget::zero()).unwrap(), ConsistencyVerdict::Unknown);
    }

    #[test]
    fn enumeration_covers_the_fragment() {
        let e = EnumerationPair::new(vec![s("3"), s("4")], vec![p("133"), p("134"), p("144")]);
        let all: BTreeSet<(SymbolId, SymString)> =
            (0..e.existential_count()).map(|n| e.existential(n).map(|(v, f)| (v, f.clone())).unwrap()).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(e.existential(0), Some((s("3"), &p("133"))));
    }

    #[test]
    fn witness_step() {
        let g = grp();
        let e = EnumerationPair::new(vec![s("4")], vec![p("12344")]);
        let (out, report) = add_w_chain(&g, &d1(), &[p("412344")], &e, 1, &OracleBudget::default()).unwrap();
        let w = simple_subst(s("4"), s("v0"), &p("12344"));
        assert_eq!(out, vec![p("412344"), w.clone()]);
        assert_eq!(report.steps[0].action, Action::AddedWitness);
        assert!(syntactic_status(&g, &out, &[]).witnessed);
        // Already witnessed: a second pass adds nothing.
        let (again, report) = add_w_chain(&g, &d1(), &out, &e, 1, &OracleBudget::default()).unwrap();
        assert_eq!(again, out);
        assert_eq!(report.steps[0].verdict, VerdictKind::NotConsulted);
    }

    #[test]
    fn maximization_steps() {
        let g = grp();
        let e = EnumerationPair::new(vec![], vec![p("133"), p("133")]);
        let b = Budgets { literal_budget: vec![s("3")], max_steps: 2, ..Budgets::default() };
        let (out, report) = add_f_chain(&g, &d1(), &[], &e, 2, &b).unwrap();
        assert_eq!(out, vec![p("133")]);
        assert!(report.steps.iter().all(|s| s.action == Action::AddedFormula));
    }

    #[test]
    fn status_examples() {
        let g = grp();
        assert!(!syntactic_status(&g, &[p("133"), p("0133133")], &[]).s_consistent);
        assert!(syntactic_status(&g, &[p("133")], &[p("133")]).cover_on);
        assert!(!syntactic_status(&g, &[p("133")], &[p("133"), p("134")]).cover_on);
        let w = simple_subst(s("4"), s("v0"), &p("12344"));
        let st = syntactic_status(&g, &[p("412344"), w], &[]);
        assert!(st.witnessed && st.s_consistent);
        assert!(!syntactic_status(&g, &[p("412344")], &[]).witnessed);
        // The substituted literal must not already occur in the body.
        assert!(!is_witness(&g, s("4"), &p("12344"), &p("12343")));
        assert!(!is_witness(&g, s("4"), &p("12344"), &p("12333")));
    }
}
