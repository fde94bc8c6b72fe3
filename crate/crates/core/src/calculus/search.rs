//! Budgeted iteration of the one-step operator and forward proof search.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::rules::{generate_axioms, generate_from, SigmaIndex};
use super::tree::{DerivationTree, Justification};
use super::{Budgets, CalculusError, RuleSet, RuleTag, Sequent};
use crate::language::Language;
use crate::strings::SymString;

/// How a sequent was first obtained.
#[derive(Clone, Debug)]
struct Provenance {
    tag: RuleTag,
    premises: Vec<Sequent>,
}

struct Engine<'a> {
    lang: &'a Language,
    rules: &'a RuleSet,
    budget: &'a Budgets,
    terms: Vec<SymString>,
}

impl<'a> Engine<'a> {
    fn new(lang: &'a Language, rules: &'a RuleSet, budget: &'a Budgets) -> Result<Self, CalculusError> {
        Ok(Engine { lang, rules, budget, terms: budget.terms(lang)? })
    }

    /// One budget-truncated application of every rule to `sigma`.
    fn step(&self, sigma: &BTreeSet<Sequent>, emit: &mut dyn FnMut(Sequent, RuleTag, &[&Sequent])) {
        let max = self.budget.max_antecedent;
        let mut filtered = |s: Sequent, t: RuleTag, ps: &[&Sequent]| {
            if s.antecedent().len() <= max {
                emit(s, t, ps);
            }
        };
        let index = SigmaIndex::new(sigma.iter());
        for &tag in self.rules {
            if tag.is_axiom() {
                generate_axioms(self.lang, tag, self.budget, &self.terms, &mut filtered);
            } else {
                generate_from(self.lang, tag, self.budget, &index, &mut filtered);
            }
        }
    }
}

/// One budget-truncated application of `OneStep_D` to `sigma`.
pub fn one_step_bounded(
    lang: &Language,
    d: &RuleSet,
    sigma: &BTreeSet<Sequent>,
    b: &Budgets,
) -> Result<BTreeSet<Sequent>, CalculusError> {
    let engine = Engine::new(lang, d, b)?;
    let mut out = BTreeSet::new();
    engine.step(sigma, &mut |s, _, _| {
        out.insert(s);
    });
    Ok(out)
}

/// `n` iterations of the budget-truncated one-step operator from `sigma0`.
/// Zero iterations return `sigma0` itself.
pub fn derivables_bounded(
    lang: &Language,
    d: &RuleSet,
    n: usize,
    sigma0: &BTreeSet<Sequent>,
    b: &Budgets,
) -> Result<BTreeSet<Sequent>, CalculusError> {
    let engine = Engine::new(lang, d, b)?;
    let mut cur = sigma0.clone();
    for _ in 0..n {
        let mut next = BTreeSet::new();
        engine.step(&cur, &mut |s, _, _| {
            next.insert(s);
        });
        cur = next;
    }
    Ok(cur)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub tree: DerivationTree,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofSearch {
    Proved(Proof),
    /// Budget exhausted; says nothing about provability.
    Unknown,
}

impl ProofSearch {
    pub fn is_proved(&self) -> bool {
        matches!(self, ProofSearch::Proved(_))
    }
}

fn build_tree(sigma: &Sequent, prov: &BTreeMap<Sequent, Provenance>) -> DerivationTree {
    let p = &prov[sigma];
    DerivationTree {
        sequent: sigma.clone(),
        justification: Justification::Rule(p.tag),
        children: p.premises.iter().map(|q| build_tree(q, prov)).collect(),
    }
}

/// Iterates from the empty set until every goal has selected a derived
/// sequent or the budget runs out. Each hit is from the earliest step that
/// has one.
fn search(
    lang: &Language,
    d: &RuleSet,
    b: &Budgets,
    goals: &[&dyn Fn(&Sequent) -> bool],
) -> Result<Vec<Option<Proof>>, CalculusError> {
    let engine = Engine::new(lang, d, b)?;
    let mut found: Vec<Option<Proof>> = goals.iter().map(|_| None).collect();
    let mut prov: BTreeMap<Sequent, Provenance> = BTreeMap::new();
    let mut cur: BTreeSet<Sequent> = BTreeSet::new();
    for depth in 1..=b.max_steps {
        let mut next = BTreeSet::new();
        let mut fresh = Vec::new();
        engine.step(&cur, &mut |s, tag, ps| {
            if !prov.contains_key(&s) && !next.contains(&s) {
                fresh.push((s.clone(), Provenance { tag, premises: ps.iter().map(|&p| p.clone()).collect() }));
            }
            next.insert(s);
        });
        for (s, p) in fresh {
            prov.entry(s).or_insert(p);
        }
        for (goal, slot) in goals.iter().zip(found.iter_mut()) {
            if slot.is_none() {
                if let Some(hit) = next.iter().find(|s| goal(s)) {
                    *slot = Some(Proof { tree: build_tree(hit, &prov), depth });
                }
            }
        }
        if found.iter().all(Option::is_some) || next.len() > b.max_sequents || next == cur {
            break;
        }
        cur = next;
    }
    Ok(found)
}

fn single(mut found: Vec<Option<Proof>>) -> ProofSearch {
    match found.pop().flatten() {
        Some(p) => ProofSearch::Proved(p),
        None => ProofSearch::Unknown,
    }
}

/// Forward search for a derivable `(Γ, phi)` with `Γ ⊆ x`. The proof found is
/// one of least depth.
pub fn prove_bounded(
    lang: &Language,
    d: &RuleSet,
    x: &[SymString],
    phi: &SymString,
    b: &Budgets,
) -> Result<ProofSearch, CalculusError> {
    crate::syntax::parse_wff(lang, phi)?;
    let xs: BTreeSet<SymString> = x.iter().cloned().collect();
    search(lang, d, b, &[&|s: &Sequent| s.succedent() == phi && s.antecedent_within(&xs)]).map(single)
}

/// [`prove_bounded`] for several goals sharing one search.
pub fn prove_all_bounded(
    lang: &Language,
    d: &RuleSet,
    x: &[SymString],
    goals: &[SymString],
    b: &Budgets,
) -> Result<Vec<ProofSearch>, CalculusError> {
    for phi in goals {
        crate::syntax::parse_wff(lang, phi)?;
    }
    let xs: BTreeSet<SymString> = x.iter().cloned().collect();
    let preds: Vec<_> = goals
        .iter()
        .map(|phi| {
            let xs = &xs;
            move |s: &Sequent| s.succedent() == phi && s.antecedent_within(xs)
        })
        .collect();
    let dyns: Vec<&dyn Fn(&Sequent) -> bool> = preds.iter().map(|p| p as &dyn Fn(&Sequent) -> bool).collect();
    let found = search(lang, d, b, &dyns)?;
    Ok(found
        .into_iter()
        .map(|f| f.map_or(ProofSearch::Unknown, ProofSearch::Proved))
        .collect())
}

/// Forward search for exactly the sequent `target`.
pub fn prove_sequent_bounded(
    lang: &Language,
    d: &RuleSet,
    target: &Sequent,
    b: &Budgets,
) -> Result<ProofSearch, CalculusError> {
    target.check(lang)?;
    search(lang, d, b, &[&|s: &Sequent| s == target]).map(single)
}
