//! Relations and equivalences on finite carriers, quotients of relations
//! and interpretations, and the bounded Henkin construction.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::calculus::{self, Budgets, CalculusError, RuleSet};
use crate::language::{Language, SymbolClass, SymbolId};
use crate::semantics::{Element, FiniteInterpretation, SemanticsError, Table};
use crate::strings::SymString;
use crate::syntax::{self, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("not an equivalence: {0}")]
    NotEquivalence(EquivalenceFailure),
    #[error("the relation reaches outside the carriers")]
    CarrierMismatch,
    #[error("the interpretation and the equivalence are not compatible at {}", .0.symbol)]
    NotCompatible(Counterexample),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum EquivalenceFailure {
    #[error("a pair leaves the carrier")]
    OutsideCarrier,
    #[error("not reflexive")]
    NotReflexive,
    #[error("not symmetric")]
    NotSymmetric,
    #[error("not transitive")]
    NotTransitive,
}

/// A finite set of ordered pairs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteRelation<A: Ord, B: Ord = A> {
    pairs: BTreeSet<(A, B)>,
}

impl<A: Ord + Clone, B: Ord + Clone> FiniteRelation<A, B> {
    pub fn new<I: IntoIterator<Item = (A, B)>>(pairs: I) -> Self {
        FiniteRelation { pairs: pairs.into_iter().collect() }
    }

    pub fn pairs(&self) -> &BTreeSet<(A, B)> {
        &self.pairs
    }

    pub fn contains(&self, a: &A, b: &B) -> bool {
        self.pairs.contains(&(a.clone(), b.clone()))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn domain(&self) -> BTreeSet<A> {
        self.pairs.iter().map(|(a, _)| a.clone()).collect()
    }

    pub fn range(&self) -> BTreeSet<B> {
        self.pairs.iter().map(|(_, b)| b.clone()).collect()
    }

    pub fn image(&self, a: &A) -> BTreeSet<B> {
        self.pairs.iter().filter(|(x, _)| x == a).map(|(_, b)| b.clone()).collect()
    }

    pub fn inverse(&self) -> FiniteRelation<B, A> {
        FiniteRelation::new(self.pairs.iter().map(|(a, b)| (b.clone(), a.clone())))
    }

    /// `self` then `other`.
    pub fn compose<C: Ord + Clone>(&self, other: &FiniteRelation<B, C>) -> FiniteRelation<A, C> {
        let mut out = BTreeSet::new();
        for (a, b) in &self.pairs {
            for (b2, c) in &other.pairs {
                if b == b2 {
                    out.insert((a.clone(), c.clone()));
                }
            }
        }
        FiniteRelation { pairs: out }
    }

    /// Whether the relation is the graph of a function on its domain.
    pub fn is_functional(&self) -> bool {
        let mut seen: BTreeMap<&A, &B> = BTreeMap::new();
        self.pairs.iter().all(|(a, b)| *seen.entry(a).or_insert(b) == b)
    }
}

/// Pairs of `n`-tuples related place by place through `o`. For `n = 0` this
/// is the single pair of empty tuples.
pub fn places_of<A: Ord + Clone, B: Ord + Clone>(o: &FiniteRelation<A, B>, n: usize) -> FiniteRelation<Vec<A>, Vec<B>> {
    let mut acc: Vec<(Vec<A>, Vec<B>)> = vec![(Vec::new(), Vec::new())];
    for _ in 0..n {
        let mut next = Vec::with_capacity(acc.len() * o.len());
        for (p, q) in &acc {
            for (a, b) in &o.pairs {
                let mut p2 = p.clone();
                p2.push(a.clone());
                let mut q2 = q.clone();
                q2.push(b.clone());
                next.push((p2, q2));
            }
        }
        acc = next;
    }
    FiniteRelation::new(acc)
}

/// Index of a class. Classes are numbered by increasing representative;
/// the representative is the least member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId(pub usize);

/// An equivalence relation on a finite carrier, with its partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteEquivalence<T: Ord> {
    carrier: BTreeSet<T>,
    relation: FiniteRelation<T>,
    classes: Vec<BTreeSet<T>>,
    index: BTreeMap<T, ClassId>,
}

impl<T: Ord + Clone> FiniteEquivalence<T> {
    pub fn new(carrier: BTreeSet<T>, relation: FiniteRelation<T>) -> Result<Self, QuotientError> {
        let fail = |f| Err(QuotientError::NotEquivalence(f));
        if relation.pairs.iter().any(|(a, b)| !carrier.contains(a) || !carrier.contains(b)) {
            return fail(EquivalenceFailure::OutsideCarrier);
        }
        if carrier.iter().any(|x| !relation.contains(x, x)) {
            return fail(EquivalenceFailure::NotReflexive);
        }
        if relation.pairs.iter().any(|(a, b)| !relation.contains(b, a)) {
            return fail(EquivalenceFailure::NotSymmetric);
        }
        let mut classes: Vec<BTreeSet<T>> = Vec::new();
        let mut index = BTreeMap::new();
        for x in &carrier {
            if index.contains_key(x) {
                continue;
            }
            let class = relation.image(x);
            let id = ClassId(classes.len());
            for y in &class {
                if index.insert(y.clone(), id).is_some() {
                    return fail(EquivalenceFailure::NotTransitive);
                }
            }
            classes.push(class);
        }
        // Every member of a class must see the whole class.
        for class in &classes {
            for y in class {
                if relation.image(y) != *class {
                    return fail(EquivalenceFailure::NotTransitive);
                }
            }
        }
        Ok(FiniteEquivalence { carrier, relation, classes, index })
    }

    pub fn identity(carrier: BTreeSet<T>) -> Self {
        let relation = FiniteRelation::new(carrier.iter().map(|x| (x.clone(), x.clone())));
        Self::new(carrier, relation).expect("the identity is an equivalence")
    }

    /// The least equivalence on `carrier` containing `pairs`. Pairs leaving
    /// the carrier are an error.
    pub fn generated_by<I: IntoIterator<Item = (T, T)>>(carrier: BTreeSet<T>, pairs: I) -> Result<Self, QuotientError> {
        let items: Vec<T> = carrier.iter().cloned().collect();
        let pos = |x: &T| items.binary_search(x).ok();
        let mut parent: Vec<usize> = (0..items.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (a, b) in pairs {
            let (Some(i), Some(j)) = (pos(&a), pos(&b)) else {
                return Err(QuotientError::CarrierMismatch);
            };
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri.max(rj)] = ri.min(rj);
        }
        let roots: Vec<usize> = (0..items.len()).map(|i| find(&mut parent, i)).collect();
        let mut rel = BTreeSet::new();
        for i in 0..items.len() {
            for j in 0..items.len() {
                if roots[i] == roots[j] {
                    rel.insert((items[i].clone(), items[j].clone()));
                }
            }
        }
        Self::new(carrier, FiniteRelation { pairs: rel })
    }

    /// The equivalence `places_of(self, n)` on `carrier^n`.
    pub fn places(&self, n: usize) -> FiniteEquivalence<Vec<T>> {
        let rel = places_of(&self.relation, n);
        let carrier = rel.domain();
        FiniteEquivalence::new(carrier, rel).expect("tupling preserves equivalence")
    }

    pub fn carrier(&self) -> &BTreeSet<T> {
        &self.carrier
    }

    pub fn relation(&self) -> &FiniteRelation<T> {
        &self.relation
    }

    pub fn related(&self, a: &T, b: &T) -> bool {
        self.relation.contains(a, b)
    }

    pub fn classes(&self) -> &[BTreeSet<T>] {
        &self.classes
    }

    pub fn class_of(&self, x: &T) -> Option<ClassId> {
        self.index.get(x).copied()
    }

    pub fn class(&self, id: ClassId) -> &BTreeSet<T> {
        &self.classes[id.0]
    }

    pub fn representative(&self, id: ClassId) -> &T {
        self.classes[id.0].first().expect("classes are nonempty")
    }
}

/// Class pairs `(p, q)` such that some member of `p` is related by `o` to
/// some member of `q`.
pub fn quotient_relation<A: Ord + Clone, B: Ord + Clone>(
    o: &FiniteRelation<A, B>,
    p: &FiniteEquivalence<A>,
    q: &FiniteEquivalence<B>,
) -> Result<FiniteRelation<ClassId>, QuotientError> {
    let mut out = BTreeSet::new();
    for (a, b) in &o.pairs {
        match (p.class_of(a), q.class_of(b)) {
            (Some(x), Some(y)) => {
                out.insert((x, y));
            }
            _ => return Err(QuotientError::CarrierMismatch),
        }
    }
    Ok(FiniteRelation { pairs: out })
}

/// A symbol whose table separates two related argument tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub symbol: SymbolId,
    pub left: Vec<Element>,
    pub right: Vec<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Compatibility {
    Compatible,
    Incompatible(Counterexample),
}

impl Compatibility {
    pub fn holds(&self) -> bool {
        matches!(self, Compatibility::Compatible)
    }
}

fn tuples(size: usize, n: usize) -> Vec<Vec<Element>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..size as Element).map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    out
}

fn check_carrier(i: &FiniteInterpretation, e: &FiniteEquivalence<Element>) -> Result<(), QuotientError> {
    if e.carrier().iter().copied().eq(i.universe()) {
        Ok(())
    } else {
        Err(QuotientError::CarrierMismatch)
    }
}

fn table_is_relational(lang: &Language, s: SymbolId) -> Result<bool, QuotientError> {
    match lang.classify(s) {
        Ok(SymbolClass::Relational(_)) => Ok(true),
        Ok(_) => Ok(false),
        Err(_) => Err(SemanticsError::UnknownSymbol(s).into()),
    }
}

/// Operational tables must send related tuples to related elements,
/// relational tables to equal truth values.
pub fn is_compatible(
    lang: &Language,
    i: &FiniteInterpretation,
    e: &FiniteEquivalence<Element>,
) -> Result<Compatibility, QuotientError> {
    check_carrier(i, e)?;
    let size = i.size();
    for (&s, t) in i.tables().iter() {
        let relational = table_is_relational(lang, s)?;
        let all = tuples(size, t.arity());
        for p in &all {
            for q in &all {
                if !p.iter().zip(q).all(|(a, b)| e.related(a, b)) {
                    continue;
                }
                let (x, y) = (t.get(size, p), t.get(size, q));
                let ok = if relational { x == y } else { e.related(&x, &y) };
                if !ok {
                    return Ok(Compatibility::Incompatible(Counterexample { symbol: s, left: p.clone(), right: q.clone() }));
                }
            }
        }
    }
    Ok(Compatibility::Compatible)
}

/// The quotient interpretation on the classes of `e`; class `k` becomes
/// element `k`, labelled by its members. Tables read their arguments'
/// representatives.
pub fn quotient_interpretation(
    lang: &Language,
    i: &FiniteInterpretation,
    e: &FiniteEquivalence<Element>,
) -> Result<FiniteInterpretation, QuotientError> {
    if let Compatibility::Incompatible(c) = is_compatible(lang, i, e)? {
        return Err(QuotientError::NotCompatible(c));
    }
    let labels: Vec<String> = e
        .classes()
        .iter()
        .map(|c| {
            let names: Vec<&str> = c.iter().map(|&x| i.label(x)).collect();
            let mut l = String::from("{");
            l.push_str(&names.join(","));
            l.push('}');
            l
        })
        .collect();
    let mut out = FiniteInterpretation::with_labels(labels)?;
    let k = e.classes().len();
    let class_of = |x: Element| e.class_of(&x).expect("carrier checked").0 as Element;
    for (&s, t) in i.tables().iter() {
        let relational = table_is_relational(lang, s)?;
        let values: Vec<Element> = tuples(k, t.arity())
            .iter()
            .map(|ct| {
                let reps: Vec<Element> = ct.iter().map(|&c| *e.representative(ClassId(c as usize))).collect();
                let v = t.get(i.size(), &reps);
                if relational {
                    v
                } else {
                    class_of(v)
                }
            })
            .collect();
        out.set_table(s, Table::new(t.arity(), values), relational)?;
    }
    out.set_default_literal(class_of(i.default_literal()))?;
    Ok(out)
}

/// A term ordered by depth, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct CanonicalTerm {
    depth: usize,
    term: SymString,
}

/// Pool pairs `(t1, t2)` for which the bounded search proves `≡t1t2` from `x`.
pub fn termeq_bounded(
    lang: &Language,
    d: &RuleSet,
    x: &[SymString],
    pool: &[SymString],
    b: &Budgets,
) -> Result<FiniteRelation<SymString>, QuotientError> {
    for t in pool {
        syntax::parse_term(lang, t)?;
    }
    let pairs: Vec<(SymString, SymString)> =
        pool.iter().flat_map(|a| pool.iter().map(move |c| (a.clone(), c.clone()))).collect();
    let goals: Vec<SymString> = pairs.iter().map(|(a, c)| syntax::mk_eq(lang, a, c)).collect();
    let found = calculus::prove_all_bounded(lang, d, x, &goals, b)?;
    Ok(FiniteRelation::new(pairs.into_iter().zip(found).filter(|(_, f)| f.is_proved()).map(|(p, _)| p)))
}

/// An atomic formula over pool terms, its membership in the theory and its
/// truth in the bounded Henkin quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicRow {
    pub formula: SymString,
    pub in_theory: bool,
    pub in_quotient: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HenkinReport {
    /// Each class in canonical order, representative first.
    pub classes: Vec<Vec<SymString>>,
    /// Equations proved by the bounded search.
    pub proved: FiniteRelation<SymString>,
    /// Pairs of the closure with no proof found.
    pub closure_only: Vec<(SymString, SymString)>,
    pub table: Vec<AtomicRow>,
}

impl HenkinReport {
    pub fn diagnostics(&self) -> impl Iterator<Item = &AtomicRow> {
        self.table.iter().filter(|r| r.in_theory != r.in_quotient)
    }

    pub fn same_class(&self, a: &SymString, b: &SymString) -> bool {
        self.classes.iter().any(|c| c.contains(a) && c.contains(b))
    }
}

/// Quotients the pool by the equivalence generated by the proved equations
/// and compares each atomic formula over the pool with its Henkin value.
pub fn henkin_bounded(
    lang: &Language,
    d: &RuleSet,
    x: &[SymString],
    pool: &[SymString],
    b: &Budgets,
) -> Result<HenkinReport, QuotientError> {
    let proved = termeq_bounded(lang, d, x, pool, b)?;
    let canon = |t: &SymString| CanonicalTerm { depth: syntax::term_depth(lang, t).unwrap_or(0), term: t.clone() };
    let carrier: BTreeSet<CanonicalTerm> = pool.iter().map(canon).collect();
    let e = FiniteEquivalence::generated_by(carrier, proved.pairs().iter().map(|(a, c)| (canon(a), canon(c))))?;
    let closure_only = e
        .relation()
        .pairs()
        .iter()
        .filter(|(a, c)| !proved.contains(&a.term, &c.term))
        .map(|(a, c)| (a.term.clone(), c.term.clone()))
        .collect();

    let xs: BTreeSet<&SymString> = x.iter().collect();
    let mut relations: Vec<(SymbolId, u32)> = lang.relational_symbols().collect();
    relations.insert(0, (lang.eq_symbol(), 2));
    let mut table = Vec::new();
    for (r, n) in relations {
        let pool_sorted: Vec<&CanonicalTerm> = e.carrier().iter().collect();
        for args in tuples(pool_sorted.len(), n as usize) {
            let terms: Vec<&CanonicalTerm> = args.iter().map(|&k| pool_sorted[k as usize]).collect();
            let formula = SymString::headed(r, terms.iter().map(|t| &t.term));
            let classes: Vec<ClassId> = terms.iter().map(|t| e.class_of(t).expect("pool term")).collect();
            let in_quotient = if r == lang.eq_symbol() {
                classes[0] == classes[1]
            } else {
                let reps = classes.iter().map(|&c| &e.representative(c).term);
                xs.contains(&SymString::headed(r, reps))
            };
            table.push(AtomicRow { in_theory: xs.contains(&formula), formula, in_quotient });
        }
    }
    let classes = e.classes().iter().map(|c| c.iter().map(|t| t.term.clone()).collect()).collect();
    Ok(HenkinReport { classes, proved, closure_only, table })
}
