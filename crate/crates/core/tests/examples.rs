use std::collections::BTreeSet;

use folkit_core::calculus::{named_rule_sets, prove_bounded, verify_derivation, ProofSearch};
use folkit_core::enlarge::{consistency_oracle, syntactic_status, ConsistencyVerdict, OracleBudget};
use folkit_core::semantics::{entails_bounded, satisfies, term_eval, truth_eval, Entailment};
use folkit_core::substitution::{simple_subst, term_subst};
use folkit_core::syntax::{self, enumerate_terms, parse_wff};
use folkit_core::{
    Budgets, DerivationTree, FiniteInterpretation, Kind, Language, RuleTag, Sequent, SymString, SymbolId,
};

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

fn m2() -> FiniteInterpretation {
    let mut i = FiniteInterpretation::new(2).unwrap();
    i.set_operation(s("2"), 2, vec![0, 1, 1, 0]).unwrap();
    i.set_literal(s("3"), 0).unwrap();
    i.set_literal(s("4"), 1).unwrap();
    i.set_literal(s("5"), 0).unwrap();
    i
}

#[test]
fn parsing_group_strings() {
    let g = grp();
    let r = parse_wff(&g, &p("0412344412344")).unwrap();
    assert_eq!((r.kind, r.depth), (Kind::NorWff, 2));
    assert!(syntax::is_wff(&g, &p("045124534512453")));
    assert!(!syntax::is_wff(&g, &p("33")));
    let t = enumerate_terms(&g, 1, &[s("3"), s("4")]).unwrap();
    assert_eq!(t, ["3", "4", "233", "234", "243", "244"].map(p));
}

#[test]
fn evaluation_in_m2() {
    let (g, i) = (grp(), m2());
    assert_eq!(term_eval(&g, &i, &p("234")).unwrap(), 1);
    assert_eq!(term_eval(&g, &i, &p("22344")).unwrap(), 0);
    assert!(truth_eval(&g, &i, &p("133")).unwrap());
    assert!(!truth_eval(&g, &i, &p("134")).unwrap());
    assert!(!truth_eval(&g, &i, &p("0412344412344")).unwrap());
    assert!(truth_eval(&g, &i, &p("412344")).unwrap());
    assert!(satisfies(&g, &i, &[p("133")]).unwrap());
    assert!(!satisfies(&g, &i, &[p("134")]).unwrap());
}

#[test]
fn bounded_entailment() {
    let g = grp();
    assert_eq!(entails_bounded(&g, &[p("134")], &p("134"), 2).unwrap(), Entailment::Entailed);
    assert_eq!(entails_bounded(&g, &[], &p("133"), 2).unwrap(), Entailment::Entailed);
    assert!(matches!(entails_bounded(&g, &[], &p("134"), 2).unwrap(), Entailment::CounterModel(_)));
}

#[test]
fn substitution_examples() {
    let g = grp();
    assert_eq!(simple_subst(s("4"), s("5"), &p("12344")), p("12355"));
    assert_eq!(term_subst(&g, s("4"), &p("234"), &p("134")).unwrap(), p("13234"));
    assert_eq!(term_subst(&g, s("5"), &p("234"), &p("134")).unwrap(), p("134"));
    let out = term_subst(&g, s("3"), &p("4"), &p("4134")).unwrap();
    let v0 = SymString::single(s("v0"));
    let expected = SymString::headed(s("v0"), [&syntax::mk_eq(&g, &p("4"), &v0)]);
    assert_eq!(out, expected);
    assert_eq!(syntax::wff_depth(&g, &out), Some(1));
}

#[test]
fn the_two_step_derivation() {
    let g = grp();
    let d1 = &named_rule_sets(s("v0"))["D1"];
    let leaf = DerivationTree::rule(RuleTag::REq, Sequent::new([], p("133")), vec![]);
    let tree = DerivationTree::rule(RuleTag::RUnion, Sequent::new([p("134")], p("133")), vec![leaf]);
    let v = verify_derivation(&g, d1, &tree).unwrap();
    assert_eq!(v.depth, 2);
    assert!(v.leaves.is_empty());
    let wrong = DerivationTree::rule(RuleTag::RNor, Sequent::new([p("0133134")], p("0133134")), vec![]);
    assert!(verify_derivation(&g, d1, &wrong).is_err());
}

#[test]
fn cut_like_composite() {
    // From (Γ, ψ) and (Γ', ¬ψ), weakening both to Γ ∪ Γ' and contracting
    // derives the negation of any member of the union.
    let g = grp();
    let d1 = &named_rule_sets(s("v0"))["D1"];
    let psi = p("134");
    let not_psi = syntax::mk_not(&g, &psi);
    let left = DerivationTree::rule(RuleTag::R0, Sequent::new([psi.clone()], psi.clone()), vec![]);
    let right = DerivationTree::rule(RuleTag::R0, Sequent::new([not_psi.clone()], not_psi.clone()), vec![]);
    let both = [psi.clone(), not_psi.clone()];
    let wl = DerivationTree::rule(RuleTag::RUnion, Sequent::new(both.clone(), psi.clone()), vec![left]);
    let wr = DerivationTree::rule(RuleTag::RUnion, Sequent::new(both.clone(), not_psi.clone()), vec![right]);
    let root = DerivationTree::rule(RuleTag::RContr, Sequent::new([psi.clone()], syntax::mk_not(&g, &not_psi)), vec![wl, wr]);
    assert_eq!(verify_derivation(&g, d1, &root).unwrap().depth, 3);
}

#[test]
fn proofs_of_least_depth() {
    let g = grp();
    let d1 = &named_rule_sets(s("v0"))["D1"];
    let b = Budgets { literal_budget: vec![s("3"), s("4")], formula_pool: vec![p("134")], max_steps: 3, ..Budgets::default() };
    let ProofSearch::Proved(pr) = prove_bounded(&g, d1, &[p("134")], &p("143"), &b).unwrap() else { panic!() };
    assert_eq!(pr.depth, 1);
    assert!(verify_derivation(&g, d1, &pr.tree).is_ok());
}

#[test]
fn oracle_examples() {
    let g = grp();
    let d1 = &named_rule_sets(s("v0"))["D1"];
    let ob = OracleBudget { proof: Budgets { literal_budget: vec![s("3"), s("4")], max_steps: 2, ..Budgets::default() }, ..OracleBudget::default() };
    let bad = [p("134"), p("0134134")];
    let ConsistencyVerdict::Inconsistent { proof, refutation, .. } = consistency_oracle(&g, d1, &bad, &ob).unwrap() else {
        panic!("expected an inconsistency")
    };
    for t in [&proof, &refutation] {
        assert_eq!(t.justification, folkit_core::Justification::Rule(RuleTag::R0));
    }
    match consistency_oracle(&g, d1, &[p("133")], &ob).unwrap() {
        ConsistencyVerdict::Consistent(m) => assert_eq!(m.size(), 1),
        other => panic!("{other:?}"),
    }
    assert_eq!(consistency_oracle(&g, d1, &bad, &OracleBudget::zero()).unwrap(), ConsistencyVerdict::Unknown);
    let st = syntactic_status(&g, &[p("133"), p("0133133")], &[]);
    assert!(!st.s_consistent);
    let syms: BTreeSet<SymbolId> = p("0412344412344").symbols().iter().copied().collect();
    assert!(syms.is_subset(&["0", "1", "2", "3", "4"].map(s).into_iter().collect()));
}
