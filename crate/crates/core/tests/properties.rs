use std::collections::BTreeSet;

use proptest::prelude::*;

use folkit_core::calculus::{minimal_premises, named_rule_sets, rule_admits};
use folkit_core::enlarge::syntactic_status;
use folkit_core::quotient::{self, places_of, quotient_relation, termeq_bounded, FiniteEquivalence, FiniteRelation};
use folkit_core::semantics::{coincidence_transfer, reassign, term_eval, truth_eval};
use folkit_core::strings::multi_cat;
use folkit_core::substitution::{check_simple_subst_lemma, check_subst_lemma, term_subst};
use folkit_core::syntax::{self, parse_wff, wff_depth, xnot};
use folkit_core::{Budgets, Element, FiniteInterpretation, Language, RuleTag, Sequent, SymString, SymbolId};

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

const LITS: [&str; 3] = ["3", "4", "5"];

fn term(depth: u32) -> impl Strategy<Value = SymString> {
    let leaf = prop::sample::select(&LITS[..]).prop_map(p);
    leaf.prop_recursive(depth, 16, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| SymString::headed(s("2"), [&a, &b]))
    })
}

fn wff(depth: u32) -> impl Strategy<Value = SymString> {
    let g = grp();
    let atom = (term(1), term(1)).prop_map(move |(a, b)| syntax::mk_eq(&g, &a, &b));
    atom.prop_recursive(depth, 32, 2, |inner| {
        let g = grp();
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(move |(a, b)| syntax::mk_nor(&g, &a, &b)),
            (prop::sample::select(&LITS[..]), inner).prop_map(|(v, body)| SymString::headed(s(v), [&body])),
        ]
    })
}

fn interp() -> impl Strategy<Value = FiniteInterpretation> {
    (1usize..=3).prop_flat_map(|n| {
        let e = 0..n as Element;
        (Just(n), prop::collection::vec(e.clone(), n * n), prop::collection::vec(e.clone(), 3), e)
    })
    .prop_map(|(n, table, lits, default)| {
        let mut i = FiniteInterpretation::new(n).unwrap();
        i.set_operation(s("2"), 2, table).unwrap();
        for (l, v) in LITS.iter().zip(lits) {
            i.set_literal(s(l), v).unwrap();
        }
        i.set_default_literal(default).unwrap();
        i
    })
}

fn equivalence() -> impl Strategy<Value = FiniteEquivalence<Element>> {
    (1usize..=4).prop_flat_map(|n| prop::collection::vec(0..n, n)).prop_map(|blocks| {
        let carrier: BTreeSet<Element> = (0..blocks.len() as Element).collect();
        let pairs: Vec<(Element, Element)> = (0..blocks.len())
            .flat_map(|x| (0..blocks.len()).map(move |y| (x, y)))
            .filter(|&(x, y)| blocks[x] == blocks[y])
            .map(|(x, y)| (x as Element, y as Element))
            .collect();
        FiniteEquivalence::generated_by(carrier, pairs).unwrap()
    })
}

proptest! {
    #[test]
    fn concatenation_is_a_monoid(a in term(2), b in term(2), c in term(2)) {
        prop_assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
        prop_assert_eq!(SymString::empty().concat(&a), a.clone());
        prop_assert_eq!(a.concat(&SymString::empty()), a.clone());
        prop_assert_eq!(multi_cat([&a, &b, &c]), a.concat(&b).concat(&c));
    }

    #[test]
    fn text_round_trip(w in wff(3)) {
        prop_assert_eq!(SymString::from_tokens(&w.to_token_string()).unwrap(), w.clone());
        prop_assert_eq!(SymString::from_packed(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn split_points_are_unique(a in wff(2), b in wff(2)) {
        let g = grp();
        let n = syntax::mk_nor(&g, &a, &b);
        prop_assert_eq!(syntax::as_nor(&g, &n), Some((a, b)));
    }

    #[test]
    fn connective_semantics(i in interp(), a in wff(2), b in wff(2), t1 in term(2), t2 in term(2)) {
        let g = grp();
        let (va, vb) = (truth_eval(&g, &i, &a).unwrap(), truth_eval(&g, &i, &b).unwrap());
        prop_assert_eq!(truth_eval(&g, &i, &syntax::mk_nor(&g, &a, &b)).unwrap(), !(va || vb));
        prop_assert_eq!(truth_eval(&g, &i, &xnot(&g, &a).unwrap()).unwrap(), !va);
        let same = term_eval(&g, &i, &t1).unwrap() == term_eval(&g, &i, &t2).unwrap();
        prop_assert_eq!(truth_eval(&g, &i, &syntax::mk_eq(&g, &t1, &t2)).unwrap(), same);
    }

    #[test]
    fn reassignment_overrides(i in interp(), v in prop::sample::select(&LITS[..]), u in 0u32..3) {
        let g = grp();
        let u = u % i.size() as u32;
        let j = reassign(&g, s(v), u as Element, &i).unwrap();
        prop_assert_eq!(term_eval(&g, &j, &p(v)).unwrap(), u as Element);
        for other in LITS.iter().filter(|&&o| o != v) {
            prop_assert_eq!(term_eval(&g, &j, &p(other)).unwrap(), term_eval(&g, &i, &p(other)).unwrap());
        }
    }

    #[test]
    fn substitution_lemma(i in interp(), phi in wff(3), t in term(2), v in prop::sample::select(&LITS[..])) {
        let g = grp();
        prop_assert!(check_subst_lemma(&g, &i, s(v), &t, &phi).unwrap());
        let out = term_subst(&g, s(v), &t, &phi).unwrap();
        prop_assert_eq!(wff_depth(&g, &out), wff_depth(&g, &phi));
    }

    #[test]
    fn simple_substitution_lemma(i in interp(), phi in wff(3), v1 in prop::sample::select(&LITS[..]), u in 0u32..3) {
        let g = grp();
        let u = (u as usize % i.size()) as Element;
        prop_assert!(check_simple_subst_lemma(&g, &i, s(v1), s("7"), u, &phi).unwrap());
    }

    #[test]
    fn coincidence_across_an_extension(i in interp(), phi in wff(3)) {
        let g = grp();
        let big = Language::new(s("1"), s("0"), [(s("2"), 2), (s("3"), 0), (s("4"), 0), (s("5"), 0), (s("6"), 0), (s("7"), 0), (s("8"), 0), (s("9"), 0), (s("r"), -1)], ["v"]).unwrap();
        let mut j = i.clone();
        j.set_relation(s("r"), 1, vec![true; i.size()]).unwrap();
        prop_assert!(coincidence_transfer(&g, &big, &i, &j, &phi).unwrap());
    }

    #[test]
    fn fresh_literals_are_fresh(k in prop::collection::btree_set(0u64..20, 0..12)) {
        let g = grp();
        let forbidden: BTreeSet<SymbolId> = k.iter().map(|&k| g.pool_literal(k)).collect();
        let f = g.fresh_literal(&forbidden);
        prop_assert!(!forbidden.contains(&f));
        prop_assert!(g.is_literal(f));
        prop_assert!((0..).map(|k| g.pool_literal(k)).take_while(|&l| l != f).all(|l| forbidden.contains(&l)));
    }

    #[test]
    fn classes_partition_the_carrier(e in equivalence()) {
        let mut seen = BTreeSet::new();
        for c in e.classes() {
            prop_assert!(!c.is_empty());
            for x in c {
                prop_assert!(seen.insert(*x));
                prop_assert_eq!(e.representative(e.class_of(x).unwrap()), c.first().unwrap());
            }
        }
        prop_assert_eq!(&seen, e.carrier());
    }

    #[test]
    fn tupling_preserves_equivalence(e in equivalence(), n in 0usize..3) {
        let tuples = e.places(n);
        let direct = places_of(e.relation(), n);
        prop_assert_eq!(tuples.relation(), &direct);
        for (a, b) in direct.pairs() {
            prop_assert!(a.iter().zip(b).all(|(x, y)| e.related(x, y)));
        }
    }

    #[test]
    fn compatible_functions_have_functional_total_quotients(e in equivalence(), table in prop::collection::vec(0u32..4, 4)) {
        let n = e.carrier().len();
        let f: Vec<Element> = table.iter().take(n).map(|&v| (v as usize % n) as Element).collect();
        let graph = FiniteRelation::new((0..n).map(|x| (x as Element, f[x])));
        let compatible = e.relation().pairs().iter().all(|(a, b)| e.related(&f[*a as usize], &f[*b as usize]));
        let q = quotient_relation(&graph, &e, &e).unwrap();
        let total = q.domain().len() == e.classes().len();
        prop_assert!(total);
        prop_assert_eq!(q.is_functional(), compatible);
    }

    #[test]
    fn quotient_tables_agree_with_the_tuple_composite(i in interp(), e in equivalence()) {
        let g = grp();
        if e.carrier().len() != i.size() {
            return Ok(());
        }
        let Ok(q) = quotient::quotient_interpretation(&g, &i, &e) else { return Ok(()) };
        // class of a tuple, then the induced tuple of classes, then the table
        let pairs = e.places(2);
        let table = i.table(s("2")).unwrap();
        for class in pairs.classes() {
            for tuple in class {
                let classes: Vec<Element> = tuple.iter().map(|x| e.class_of(x).unwrap().0 as Element).collect();
                let up = e.class_of(&table.get(i.size(), tuple)).unwrap().0 as Element;
                prop_assert_eq!(q.table(s("2")).unwrap().get(q.size(), &classes), up);
            }
        }
    }

    #[test]
    fn antecedents_are_sets(mut a in prop::collection::vec(wff(1), 0..4), c in wff(1)) {
        let x = Sequent::new(a.clone(), c.clone());
        a.reverse();
        a.extend(a.clone());
        prop_assert_eq!(Sequent::new(a, c), x);
    }

    #[test]
    fn reordering_keeps_syntactic_status(mut x in prop::collection::vec(wff(1), 0..6), rot in 0usize..6) {
        let g = grp();
        let cover: Vec<SymString> = x.iter().take(2).cloned().collect();
        let before = syntactic_status(&g, &x, &cover);
        if !x.is_empty() {
            let r = rot % x.len();
            x.rotate_left(r);
        }
        x.reverse();
        prop_assert_eq!(syntactic_status(&g, &x, &cover), before);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn minimal_premises_are_few(extra in prop::collection::vec(wff(1), 0..3)) {
        let g = grp();
        let a = Sequent::new([p("133")], p("134"));
        let b = Sequent::new([p("133")], syntax::mk_not(&g, &p("134")));
        let mut premises = vec![a, b];
        premises.extend(extra.iter().map(|w| Sequent::new([], w.clone())));
        let c = Sequent::new([], syntax::mk_not(&g, &p("133")));
        prop_assert!(rule_admits(&g, RuleTag::RContr, &premises, &c).unwrap());
        let m = minimal_premises(&g, RuleTag::RContr, &premises, &c).unwrap();
        prop_assert!(m.len() <= 2);
        prop_assert!(rule_admits(&g, RuleTag::RContr, &m, &c).unwrap());
    }

    #[test]
    fn termeq_grows_with_steps_and_theory(extra in prop::sample::select(vec!["134", "135", "145", "1234"])) {
        let g = grp();
        let d = &named_rule_sets(s("v0"))["D1"];
        let pool = [p("3"), p("4"), p("5")];
        let x1 = vec![p("134")];
        let mut x2 = x1.clone();
        x2.push(p(extra));
        let b = |n| Budgets { literal_budget: vec![s("3"), s("4"), s("5")], formula_pool: x2.clone(), max_steps: n, ..Budgets::default() };
        let r1 = termeq_bounded(&g, d, &x1, &pool, &b(2)).unwrap();
        let r2 = termeq_bounded(&g, d, &x1, &pool, &b(3)).unwrap();
        let r3 = termeq_bounded(&g, d, &x2, &pool, &b(3)).unwrap();
        prop_assert!(r1.pairs().is_subset(r2.pairs()));
        prop_assert!(r2.pairs().is_subset(r3.pairs()));
    }
}

#[test]
fn restrict_undoes_extend() {
    let g = grp();
    let big = g.extend("w").unwrap();
    assert!(big.is_literal(s("w3")));
    let keep: BTreeSet<SymbolId> = g.declared().map(|(s, _)| s).chain([g.eq_symbol()]).collect();
    let back = big.restrict(&keep, &["v"]).unwrap();
    assert_eq!(back, g);
    assert!(parse_wff(&back, &p("134")).is_ok());
}
