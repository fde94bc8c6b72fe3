//! Finite interpretations, evaluation, the free interpretation, the
//! coincidence transfer and bounded entailment.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::language::{Language, SymbolClass, SymbolId};
use crate::strings::{symbols_of, FiniteMap, SymString};
use crate::syntax::{self, SyntaxError};

/// Universe elements are indices `0..size`.
pub type Element = u32;

/// Largest interpretation space a single universe size may span before the
/// bounded searches skip it.
pub const DEFAULT_SPACE_CAP: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("no table for symbol {0}")]
    MissingTable(SymbolId),
    #[error("table for {symbol} has arity {found}, the language wants {expected}")]
    ArityMismatch { symbol: SymbolId, expected: usize, found: usize },
    #[error("symbol {0} is not a literal")]
    NotALiteral(SymbolId),
    #[error("element {0} is not in the universe")]
    NotInUniverse(Element),
    #[error("bad table for {symbol}: {reason}")]
    BadTable { symbol: SymbolId, reason: &'static str },
    #[error("the universe must be nonempty with distinct labels")]
    BadUniverse,
    #[error("the free interpretation evaluates only terms and atomic wffs")]
    NotTermOrAtomic,
    #[error("coincidence hypothesis violated: {0}")]
    HypothesisViolated(Clause),
    #[error("every universe size up to the bound exceeds the enumeration budget")]
    BudgetTooLarge,
    #[error("symbol {0} does not belong to the language")]
    UnknownSymbol(SymbolId),
}

/// The agreement hypotheses of the coincidence transfer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum Clause {
    #[error("the equality symbols differ")]
    SameEquality,
    #[error("the NOR connectives differ")]
    SameNor,
    #[error("arities disagree on the smaller language")]
    AritiesAgree,
    #[error("tables disagree on the smaller language")]
    TablesAgree,
    #[error("the universes differ")]
    SameUniverse,
}

/// A total table: `size^arity` cells, first argument most significant.
/// Relational tables hold 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Table {
    arity: usize,
    values: Vec<Element>,
}

impl Table {
    pub fn new(arity: usize, values: Vec<Element>) -> Self {
        Table { arity, values }
    }

    pub fn constant(e: Element) -> Self {
        Table { arity: 0, values: alloc::vec![e] }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[Element] {
        &self.values
    }

    pub fn index_of(size: usize, args: &[Element]) -> usize {
        args.iter().fold(0usize, |acc, &a| acc * size + a as usize)
    }

    pub fn get(&self, size: usize, args: &[Element]) -> Element {
        self.values[Self::index_of(size, args)]
    }
}

/// An interpretation over the universe `0..labels.len()`.
///
/// Pool literals without a table take `default_literal`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteInterpretation {
    labels: Vec<String>,
    tables: FiniteMap<SymbolId, Table>,
    default_literal: Element,
}

fn pow(base: usize, exp: usize) -> usize {
    (0..exp).fold(1usize, |acc, _| acc.saturating_mul(base))
}

impl FiniteInterpretation {
    /// Universe `{0, …, size-1}` labelled by the decimal indices.
    pub fn new(size: usize) -> Result<Self, SemanticsError> {
        Self::with_labels((0..size).map(|i| i.to_string()).collect())
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self, SemanticsError> {
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if labels.is_empty() || distinct.len() != labels.len() {
            return Err(SemanticsError::BadUniverse);
        }
        Ok(FiniteInterpretation { labels, tables: FiniteMap::new(), default_literal: 0 })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn universe(&self) -> core::ops::Range<Element> {
        0..self.labels.len() as Element
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Element) -> &str {
        &self.labels[e as usize]
    }

    pub fn element_named(&self, name: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == name).map(|i| i as Element)
    }

    pub fn tables(&self) -> &FiniteMap<SymbolId, Table> {
        &self.tables
    }

    pub fn table(&self, s: SymbolId) -> Option<&Table> {
        self.tables.get(&s)
    }

    pub fn default_literal(&self) -> Element {
        self.default_literal
    }

    pub fn set_default_literal(&mut self, e: Element) -> Result<(), SemanticsError> {
        if e as usize >= self.size() {
            return Err(SemanticsError::NotInUniverse(e));
        }
        self.default_literal = e;
        Ok(())
    }

    fn check_table(&self, s: SymbolId, t: &Table, bound: Element) -> Result<(), SemanticsError> {
        if t.values.len() != pow(self.size(), t.arity) {
            return Err(SemanticsError::BadTable { symbol: s, reason: "wrong number of cells" });
        }
        if t.values.iter().any(|&v| v >= bound) {
            return Err(SemanticsError::BadTable { symbol: s, reason: "value out of range" });
        }
        Ok(())
    }

    /// Installs an operational (or literal, for arity 0) table.
    pub fn set_operation(&mut self, s: SymbolId, arity: usize, values: Vec<Element>) -> Result<(), SemanticsError> {
        let t = Table::new(arity, values);
        self.check_table(s, &t, self.size() as Element)?;
        self.tables.insert(s, t);
        Ok(())
    }

    pub fn set_literal(&mut self, s: SymbolId, e: Element) -> Result<(), SemanticsError> {
        self.set_operation(s, 0, alloc::vec![e])
    }

    pub fn set_relation(&mut self, s: SymbolId, arity: usize, values: Vec<bool>) -> Result<(), SemanticsError> {
        let t = Table::new(arity, values.into_iter().map(Element::from).collect());
        self.check_table(s, &t, 2)?;
        self.tables.insert(s, t);
        Ok(())
    }

    /// Installs a table as is, for callers that already validated it.
    pub fn set_table(&mut self, s: SymbolId, t: Table, relational: bool) -> Result<(), SemanticsError> {
        let bound = if relational { 2 } else { self.size() as Element };
        self.check_table(s, &t, bound)?;
        self.tables.insert(s, t);
        Ok(())
    }

    /// Value of a literal, honouring the pool default.
    pub fn literal_value(&self, lang: &Language, s: SymbolId) -> Result<Element, SemanticsError> {
        match self.tables.get(&s) {
            Some(t) if t.arity == 0 => Ok(t.values[0]),
            Some(t) => Err(SemanticsError::ArityMismatch { symbol: s, expected: 0, found: t.arity }),
            None if lang.pool_index(s).is_some() => Ok(self.default_literal),
            None => Err(SemanticsError::MissingTable(s)),
        }
    }
}

/// `i` with literal `v` sent to `u`.
pub fn reassign(lang: &Language, v: SymbolId, u: Element, i: &FiniteInterpretation) -> Result<FiniteInterpretation, SemanticsError> {
    if !lang.is_literal(v) {
        return Err(SemanticsError::NotALiteral(v));
    }
    if u as usize >= i.size() {
        return Err(SemanticsError::NotInUniverse(u));
    }
    let patch = FiniteMap::from_pairs([(v, Table::constant(u))]).expect("single pair");
    Ok(FiniteInterpretation { tables: i.tables.paste_right(&patch), ..i.clone() })
}

/// Evaluation with a stack of literal overrides standing in for nested
/// reassignment.
struct Evaluator<'a> {
    lang: &'a Language,
    interp: &'a FiniteInterpretation,
    overrides: Vec<(SymbolId, Element)>,
}

impl Evaluator<'_> {
    fn table(&self, s: SymbolId, expected: usize) -> Result<&Table, SemanticsError> {
        let t = self.interp.table(s).ok_or(SemanticsError::MissingTable(s))?;
        if t.arity != expected {
            return Err(SemanticsError::ArityMismatch { symbol: s, expected, found: t.arity });
        }
        Ok(t)
    }

    fn term(&self, w: &[SymbolId], pos: usize) -> Result<(Element, usize), SemanticsError> {
        let head = w[pos];
        match self.lang.classify(head) {
            Ok(SymbolClass::Literal) => {
                if let Some(&(_, u)) = self.overrides.iter().rev().find(|(s, _)| *s == head) {
                    return Ok((u, pos + 1));
                }
                Ok((self.interp.literal_value(self.lang, head)?, pos + 1))
            }
            Ok(SymbolClass::Operational(n)) => {
                let mut args = Vec::with_capacity(n as usize);
                let mut end = pos + 1;
                for _ in 0..n {
                    let (v, e) = self.term(w, end)?;
                    args.push(v);
                    end = e;
                }
                let t = self.table(head, n as usize)?;
                Ok((t.get(self.interp.size(), &args), end))
            }
            _ => Err(SemanticsError::UnknownSymbol(head)),
        }
    }

    fn wff(&mut self, w: &[SymbolId], pos: usize) -> Result<(bool, usize), SemanticsError> {
        let head = w[pos];
        match self.lang.classify(head) {
            Ok(SymbolClass::EqualitySymbol) => {
                let (a, e) = self.term(w, pos + 1)?;
                let (b, e) = self.term(w, e)?;
                Ok((a == b, e))
            }
            Ok(SymbolClass::Relational(n)) => {
                let mut args = Vec::with_capacity(n as usize);
                let mut end = pos + 1;
                for _ in 0..n {
                    let (v, e) = self.term(w, end)?;
                    args.push(v);
                    end = e;
                }
                let t = self.table(head, n as usize)?;
                Ok((t.get(self.interp.size(), &args) == 1, end))
            }
            Ok(SymbolClass::NorConnective) => {
                let (a, e) = self.wff(w, pos + 1)?;
                let (b, e) = self.wff(w, e)?;
                Ok((!a && !b, e))
            }
            Ok(SymbolClass::Literal) => {
                let mut end = None;
                let mut found = false;
                for u in self.interp.universe() {
                    self.overrides.push((head, u));
                    let r = self.wff(w, pos + 1);
                    self.overrides.pop();
                    let (t, e) = r?;
                    end = Some(e);
                    if t {
                        found = true;
                        break;
                    }
                }
                Ok((found, end.unwrap_or(pos + 1)))
            }
            _ => Err(SemanticsError::UnknownSymbol(head)),
        }
    }
}

pub fn term_eval(lang: &Language, i: &FiniteInterpretation, t: &[SymbolId]) -> Result<Element, SemanticsError> {
    syntax::parse_term(lang, t)?;
    let ev = Evaluator { lang, interp: i, overrides: Vec::new() };
    Ok(ev.term(t, 0)?.0)
}

pub fn truth_eval(lang: &Language, i: &FiniteInterpretation, phi: &[SymbolId]) -> Result<bool, SemanticsError> {
    syntax::parse_wff(lang, phi)?;
    let mut ev = Evaluator { lang, interp: i, overrides: Vec::new() };
    Ok(ev.wff(phi, 0)?.0)
}

pub fn satisfies<'a, I>(lang: &Language, i: &FiniteInterpretation, x: I) -> Result<bool, SemanticsError>
where
    I: IntoIterator<Item = &'a SymString>,
{
    for phi in x {
        if !truth_eval(lang, i, phi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The free interpretation of a set of atomic formulas, with an optional
/// reassignment of literals to terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeInterpretation {
    members: BTreeSet<SymString>,
    assignment: FiniteMap<SymbolId, SymString>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeValue {
    Term(SymString),
    Truth(bool),
}

impl FreeInterpretation {
    pub fn new<I: IntoIterator<Item = SymString>>(members: I) -> Self {
        FreeInterpretation { members: members.into_iter().collect(), assignment: FiniteMap::new() }
    }

    pub fn members(&self) -> &BTreeSet<SymString> {
        &self.members
    }

    /// Sends literal `v` to the term `t`.
    pub fn reassign(&self, lang: &Language, v: SymbolId, t: SymString) -> Result<Self, SemanticsError> {
        if !lang.is_literal(v) {
            return Err(SemanticsError::NotALiteral(v));
        }
        syntax::parse_term(lang, &t)?;
        let patch = FiniteMap::from_pairs([(v, t)]).expect("single pair");
        Ok(FreeInterpretation { members: self.members.clone(), assignment: self.assignment.paste_right(&patch) })
    }

    fn term(&self, lang: &Language, t: &[SymbolId]) -> SymString {
        let r = syntax::parse_term(lang, t).expect("caller parsed");
        if r.children.is_empty() {
            return self.assignment.get(&r.head).cloned().unwrap_or_else(|| SymString::single(r.head));
        }
        let vals: Vec<SymString> = r.children.iter().map(|c| self.term(lang, c)).collect();
        SymString::headed(r.head, &vals)
    }
}

pub fn free_eval(lang: &Language, f: &FreeInterpretation, w: &[SymbolId]) -> Result<FreeValue, SemanticsError> {
    if syntax::is_term(lang, w) {
        return Ok(FreeValue::Term(f.term(lang, w)));
    }
    let (head, args) = syntax::as_atomic(lang, w).ok_or(SemanticsError::NotTermOrAtomic)?;
    let vals: Vec<SymString> = args.iter().map(|a| f.term(lang, a)).collect();
    if head == lang.eq_symbol() {
        return Ok(FreeValue::Truth(vals[0] == vals[1]));
    }
    Ok(FreeValue::Truth(f.members.contains(&SymString::headed(head, &vals))))
}

/// Checks the coincidence hypotheses for `phi` of the smaller language `l1`
/// and compares the two evaluations.
pub fn coincidence_transfer(
    l1: &Language,
    l2: &Language,
    i1: &FiniteInterpretation,
    i2: &FiniteInterpretation,
    phi: &[SymbolId],
) -> Result<bool, SemanticsError> {
    let violated = SemanticsError::HypothesisViolated;
    if l1.eq_symbol() != l2.eq_symbol() {
        return Err(violated(Clause::SameEquality));
    }
    if l1.nor_symbol() != l2.nor_symbol() {
        return Err(violated(Clause::SameNor));
    }
    if l1.declared().any(|(s, a)| l2.arity(s) != Some(a)) || !l1.pools().iter().all(|p| l2.pools().contains(p)) {
        return Err(violated(Clause::AritiesAgree));
    }
    if i1.labels != i2.labels {
        return Err(violated(Clause::SameUniverse));
    }
    let tabled: BTreeSet<SymbolId> = i1.tables.keys().chain(i2.tables.keys()).copied().collect();
    for s in tabled.into_iter().filter(|&s| l1.arity(s).is_some()) {
        let agree = if l1.is_literal(s) {
            i1.literal_value(l1, s).ok() == i2.literal_value(l2, s).ok()
        } else {
            i1.table(s) == i2.table(s)
        };
        if !agree {
            return Err(violated(Clause::TablesAgree));
        }
    }
    if i1.default_literal != i2.default_literal {
        return Err(violated(Clause::TablesAgree));
    }
    syntax::parse_wff(l1, phi)?;
    debug_assert!(syntax::is_wff(l2, phi));
    Ok(truth_eval(l1, i1, phi)? == truth_eval(l2, i2, phi)?)
}

/// Every interpretation of the given symbols over a universe of fixed size,
/// in a fixed order. Symbols outside the language are rejected; the equality
/// symbol and NOR need no table and are skipped.
#[derive(Clone, Debug)]
pub struct InterpretationSpace {
    size: usize,
    cells: Vec<(SymbolId, usize, Element)>,
    counter: Option<Vec<Element>>,
}

impl InterpretationSpace {
    pub fn new(lang: &Language, symbols: &BTreeSet<SymbolId>, size: usize) -> Result<Self, SemanticsError> {
        if size == 0 {
            return Err(SemanticsError::BadUniverse);
        }
        let mut cells = Vec::new();
        for &s in symbols {
            match lang.classify(s) {
                Ok(SymbolClass::Literal) => cells.push((s, 0, size as Element)),
                Ok(SymbolClass::Operational(n)) => cells.push((s, n as usize, size as Element)),
                Ok(SymbolClass::Relational(n)) => cells.push((s, n as usize, 2)),
                Ok(_) => {}
                Err(_) => return Err(SemanticsError::UnknownSymbol(s)),
            }
        }
        let width: usize = cells.iter().map(|&(_, n, _)| pow(size, n)).sum();
        Ok(InterpretationSpace { size, cells, counter: Some(alloc::vec![0; width]) })
    }

    /// Number of interpretations, saturating.
    pub fn cardinality(&self) -> u64 {
        self.cells.iter().fold(1u64, |acc, &(_, n, m)| {
            let cells = pow(self.size, n) as u64;
            (0..cells).fold(acc, |a, _| a.saturating_mul(m as u64))
        })
    }
}

impl Iterator for InterpretationSpace {
    type Item = FiniteInterpretation;

    fn next(&mut self) -> Option<FiniteInterpretation> {
        let counter = self.counter.as_mut()?;
        let mut out = FiniteInterpretation::new(self.size).expect("size is positive");
        let mut pos = 0;
        for &(s, n, _) in &self.cells {
            let len = pow(self.size, n);
            out.tables.insert(s, Table::new(n, counter[pos..pos + len].to_vec()));
            pos += len;
        }
        let mut carry = true;
        let mut pos = counter.len();
        for &(_, n, m) in self.cells.iter().rev() {
            let len = pow(self.size, n);
            for j in (pos - len..pos).rev() {
                if !carry {
                    break;
                }
                counter[j] += 1;
                if counter[j] < m {
                    carry = false;
                } else {
                    counter[j] = 0;
                }
            }
            pos -= len;
        }
        if carry {
            self.counter = None;
        }
        Some(out)
    }
}

/// Symbols that need a table to evaluate the given strings.
pub fn working_symbols<'a, I>(lang: &Language, strings: I) -> BTreeSet<SymbolId>
where
    I: IntoIterator<Item = &'a SymString>,
{
    symbols_of(strings)
        .into_iter()
        .filter(|&s| s != lang.eq_symbol() && s != lang.nor_symbol())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelSearch {
    Found(FiniteInterpretation),
    /// No model; `complete` is false when some size was skipped for budget.
    NotFound { complete: bool },
}

/// Searches universes of size `1..=max_universe` for a model of `x`.
pub fn find_model(lang: &Language, x: &[SymString], max_universe: usize, cap: u64) -> Result<ModelSearch, SemanticsError> {
    let symbols = working_symbols(lang, x);
    let mut complete = true;
    for size in 1..=max_universe {
        let space = InterpretationSpace::new(lang, &symbols, size)?;
        if space.cardinality() > cap {
            complete = false;
            continue;
        }
        for i in space {
            if satisfies(lang, &i, x)? {
                return Ok(ModelSearch::Found(i));
            }
        }
    }
    Ok(ModelSearch::NotFound { complete })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entailment {
    /// No countermodel up to the bound. Evidence only.
    Entailed,
    CounterModel(FiniteInterpretation),
    /// No countermodel among the sizes that fit the budget, but some sizes
    /// were skipped.
    Unknown,
}

pub fn entails_bounded(lang: &Language, x: &[SymString], phi: &SymString, max_universe: usize) -> Result<Entailment, SemanticsError> {
    entails_bounded_with_cap(lang, x, phi, max_universe, DEFAULT_SPACE_CAP)
}

pub fn entails_bounded_with_cap(
    lang: &Language,
    x: &[SymString],
    phi: &SymString,
    max_universe: usize,
    cap: u64,
) -> Result<Entailment, SemanticsError> {
    for w in x.iter().chain(core::iter::once(phi)) {
        syntax::parse_wff(lang, w)?;
    }
    let symbols = working_symbols(lang, x.iter().chain(core::iter::once(phi)));
    let mut checked = 0;
    for size in 1..=max_universe {
        let space = InterpretationSpace::new(lang, &symbols, size)?;
        if space.cardinality() > cap {
            continue;
        }
        checked += 1;
        for i in space {
            if satisfies(lang, &i, x)? && !truth_eval(lang, &i, phi)? {
                return Ok(Entailment::CounterModel(i));
            }
        }
    }
    match checked {
        0 => Err(SemanticsError::BudgetTooLarge),
        c if c == max_universe => Ok(Entailment::Entailed),
        _ => Ok(Entailment::Unknown),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> SymbolId {
        SymbolId::new(t).unwrap()
    }

    fn p(t: &str) -> SymString {
        SymString::from_packed(t).unwrap()
    }

    fn grp() -> Language {
        let mut symbols = alloc::vec![(s("2"), 2)];
        for d in 3..=9 {
            symbols.push((s(&d.to_string()), 0));
        }
        Language::new(s("1"), s("0"), symbols, ["v"]).unwrap()
    }

    fn m2() -> FiniteInterpretation {
        let mut i = FiniteInterpretation::new(2).unwrap();
        i.set_operation(s("2"), 2, alloc::vec![0, 1, 1, 0]).unwrap();
        i.set_literal(s("3"), 0).unwrap();
        i.set_literal(s("4"), 1).unwrap();
        i.set_literal(s("5"), 0).unwrap();
        i
    }

    #[test]
    fn term_values() {
        let g = grp();
        let m = m2();
        assert_eq!(term_eval(&g, &m, &p("3")), Ok(0));
        assert_eq!(term_eval(&g, &m, &p("234")), Ok(1));
        assert_eq!(term_eval(&g, &m, &p("22344")), Ok(0));
        assert_eq!(term_eval(&g, &m, &p("6")), Err(SemanticsError::MissingTable(s("6"))));
        assert!(matches!(term_eval(&g, &m, &p("23")), Err(SemanticsError::Syntax(_))));
    }

    #[test]
    fn truth_values() {
        let g = grp();
        let m = m2();
        assert_eq!(truth_eval(&g, &m, &p("133")), Ok(true));
        assert_eq!(truth_eval(&g, &m, &p("134")), Ok(false));
        assert_eq!(truth_eval(&g, &m, &p("0412344412344")), Ok(false));
        assert_eq!(truth_eval(&g, &m, &p("412344")), Ok(true));
        assert_eq!(satisfies(&g, &m, &[p("133")]), Ok(true));
        assert_eq!(satisfies(&g, &m, &[p("134")]), Ok(false));
        assert_eq!(satisfies(&g, &m, &[]), Ok(true));
    }

    #[test]
    fn reassignment() {
        let g = grp();
        let m = m2();
        let r = reassign(&g, s("3"), 1, &m).unwrap();
        assert_eq!(term_eval(&g, &r, &p("3")), Ok(1));
        let r2 = reassign(&g, s("3"), 0, &r).unwrap();
        assert_eq!(term_eval(&g, &r2, &p("3")), Ok(0));
        assert_eq!(reassign(&g, s("2"), 0, &m), Err(SemanticsError::NotALiteral(s("2"))));
        assert_eq!(reassign(&g, s("3"), 5, &m), Err(SemanticsError::NotInUniverse(5)));
        let v0 = reassign(&g, s("v0"), 1, &m).unwrap();
        assert_eq!(term_eval(&g, &v0, &[s("v0")]), Ok(1));
        assert_eq!(term_eval(&g, &m, &[s("v9")]), Ok(0));
    }

    #[test]
    fn free_interpretation() {
        let g = grp();
        let f = FreeInterpretation::new([p("134")]);
        assert_eq!(free_eval(&g, &f, &p("234")), Ok(FreeValue::Term(p("234"))));
        assert_eq!(free_eval(&g, &f, &p("134")), Ok(FreeValue::Truth(false)));
        assert_eq!(free_eval(&g, &f, &p("133")), Ok(FreeValue::Truth(true)));
        assert_eq!(free_eval(&g, &f, &p("0133133")), Err(SemanticsError::NotTermOrAtomic));
        let f = f.reassign(&g, s("4"), p("3")).unwrap();
        assert_eq!(free_eval(&g, &f, &p("134")), Ok(FreeValue::Truth(true)));
        assert_eq!(free_eval(&g, &f, &p("234")), Ok(FreeValue::Term(p("233"))));
    }

    #[test]
    fn coincidence() {
        let g = grp();
        let m = m2();
        assert_eq!(coincidence_transfer(&g, &g, &m, &m, &p("0412344412344")), Ok(true));
        let big = g.extend("n").unwrap();
        assert_eq!(coincidence_transfer(&g, &big, &m, &m, &p("045124534512453")), Ok(true));
        let mut other = m.clone();
        other.set_literal(s("3"), 1).unwrap();
        assert_eq!(
            coincidence_transfer(&g, &g, &m, &other, &p("133")),
            Err(SemanticsError::HypothesisViolated(Clause::TablesAgree))
        );
    }

    #[test]
    fn bounded_entailment() {
        let g = grp();
        assert_eq!(entails_bounded(&g, &[p("134")], &p("134"), 2), Ok(Entailment::Entailed));
        assert_eq!(entails_bounded(&g, &[], &p("133"), 2), Ok(Entailment::Entailed));
        match entails_bounded(&g, &[], &p("134"), 2).unwrap() {
            Entailment::CounterModel(i) => assert_ne!(term_eval(&g, &i, &p("3")), term_eval(&g, &i, &p("4"))),
            other => panic!("expected a countermodel, got {other:?}"),
        }
        assert_eq!(entails_bounded_with_cap(&g, &[], &p("134"), 2, 0), Err(SemanticsError::BudgetTooLarge));
    }

    #[test]
    fn space_enumerates_every_table() {
        let g = grp();
        let syms: BTreeSet<_> = [s("2"), s("3")].into_iter().collect();
        let space = InterpretationSpace::new(&g, &syms, 2).unwrap();
        assert_eq!(space.cardinality(), 32);
        let all: BTreeSet<_> = space.collect();
        assert_eq!(all.len(), 32);
    }
}
