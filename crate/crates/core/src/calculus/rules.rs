//! Membership checks and budgeted generators for each rule.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{Budgets, CalculusError, RuleSet, RuleTag, Sequent};
use crate::language::{Language, SymbolId};
use crate::strings::SymString;
use crate::substitution::{simple_subst, term_subst};
use crate::syntax::{self, as_atomic, as_compound_term, as_eq, as_existential, as_negation, as_nor, mk_eq, mk_nor, mk_not};

/// `↓ (≡ v̄ v̄) x`: false in every interpretation, whatever `x` is.
pub fn vcontr(lang: &Language, vbar: SymbolId, x: &SymString) -> SymString {
    let v = SymString::single(vbar);
    mk_nor(lang, &mk_eq(lang, &v, &v), x)
}

/// `Some(ψ₀)` when `w` is `vcontr(¬ψ₀)`.
fn as_vcontr_not(lang: &Language, vbar: SymbolId, w: &[SymbolId]) -> Option<SymString> {
    let (a, b) = as_nor(lang, w)?;
    let v = SymString::single(vbar);
    (a == mk_eq(lang, &v, &v)).then_some(())?;
    as_negation(lang, &b)
}

fn is_neg_eq_refl(lang: &Language, w: &[SymbolId]) -> bool {
    as_negation(lang, w)
        .and_then(|e| as_eq(lang, &e))
        .is_some_and(|(a, b)| a == b && a.len() == 1 && lang.is_literal(a[0]))
}

fn set_of(items: impl IntoIterator<Item = SymString>) -> Vec<SymString> {
    let s: BTreeSet<SymString> = items.into_iter().collect();
    s.into_iter().collect()
}

/// Realizes a term whose pool literals are exactly `lits`, if the language
/// has the operations to do so.
fn term_over(lang: &Language, lits: &[SymbolId]) -> Option<SymString> {
    match lits {
        [] => None,
        [v] => Some(SymString::single(*v)),
        _ => {
            let (op, n) = lang.operational_symbols().find(|&(_, n)| n >= 2)?;
            let mut t = SymString::single(*lits.last()?);
            for &v in lits[..lits.len() - 1].iter().rev() {
                let mut next = SymString::single(op);
                next.push(v);
                for _ in 2..n {
                    next.push(v);
                }
                next.extend_from(&t);
                t = next;
            }
            Some(t)
        }
    }
}

/// Largest pool exponent tried when guessing the pool literals of a
/// vacuous substitution term.
const POOL_GUESS_LIMIT: u64 = 11;

/// Whether `gamma = psi[v/t]` for some term `t`.
fn ex_intro_matches(lang: &Language, v: SymbolId, psi: &SymString, gamma: &SymString) -> bool {
    let test = |t: &[SymbolId]| term_subst(lang, v, t, psi).is_ok_and(|g| g == *gamma);
    for pos in 0..gamma.len() {
        if let Ok((end, _)) = syntax::scan_term(lang, gamma, pos) {
            if test(&gamma[pos..end]) {
                return true;
            }
        }
    }
    if test(&[v]) {
        return true;
    }
    // The substituted term can leave no trace in gamma except through the
    // literals it forbids to the renaming.
    let max_index = gamma
        .iter()
        .filter_map(|&s| lang.pool_index(s))
        .filter(|&(pool, _)| pool == 0)
        .map(|(_, k)| k)
        .max();
    let Some(m) = max_index.filter(|&m| m <= POOL_GUESS_LIMIT) else {
        return false;
    };
    for mask in 1u32..(1 << (m + 1)) {
        let lits: Vec<SymbolId> = (0..=m).filter(|k| mask & (1 << k) != 0).map(|k| lang.pool_literal(k)).collect();
        if let Some(t) = term_over(lang, &lits) {
            if test(&t) {
                return true;
            }
        }
    }
    false
}

fn axiom_admits(lang: &Language, tag: RuleTag, c: &Sequent) -> bool {
    let ante = c.antecedent();
    let succ = c.succedent();
    match tag {
        RuleTag::R0 => ante.len() == 1 && ante[0] == *succ,
        RuleTag::REq => ante.is_empty() && as_eq(lang, succ).is_some_and(|(a, b)| a == b),
        RuleTag::REqSym => {
            let Some((t2, t1)) = as_eq(lang, succ) else { return false };
            ante.len() == 1 && ante[0] == mk_eq(lang, &t1, &t2)
        }
        RuleTag::REqTrans => {
            let Some((t1, t3)) = as_eq(lang, succ) else { return false };
            match ante {
                [e] => t1 == t3 && *e == *succ,
                [a, b] => [(a, b), (b, a)].iter().any(|(x, y)| {
                    match (as_eq(lang, x), as_eq(lang, y)) {
                        (Some((x1, x2)), Some((y2, y3))) => x1 == t1 && x2 == y2 && y3 == t3,
                        _ => false,
                    }
                }),
                _ => false,
            }
        }
        RuleTag::ROpCongr => {
            let Some((a, b)) = as_eq(lang, succ) else { return false };
            let (Some((s, ts)), Some((s2, ts2))) = (as_compound_term(lang, &a), as_compound_term(lang, &b)) else {
                return false;
            };
            s == s2 && ante == set_of(ts.iter().zip(&ts2).map(|(x, y)| mk_eq(lang, x, y))).as_slice()
        }
        RuleTag::RRelCongr => {
            let Some((s, ts2)) = as_atomic(lang, succ) else { return false };
            ante.iter().any(|cand| match as_atomic(lang, cand) {
                Some((s1, ts)) if s1 == s => {
                    let mut expect: Vec<SymString> = ts.iter().zip(&ts2).map(|(x, y)| mk_eq(lang, x, y)).collect();
                    expect.push(cand.clone());
                    ante == set_of(expect).as_slice()
                }
                _ => false,
            })
        }
        RuleTag::RNor => {
            let Some((p2, p3)) = as_nor(lang, succ) else { return false };
            let pairs: Vec<(&SymString, &SymString)> = match ante {
                [a] => alloc::vec![(a, a)],
                [a, b] => alloc::vec![(a, b), (b, a)],
                _ => return false,
            };
            pairs.into_iter().any(|(x, y)| match (as_nor(lang, x), as_nor(lang, y)) {
                (Some((_, x2)), Some((y1, _))) => x2 == p2 && y1 == p3,
                _ => false,
            })
        }
        RuleTag::RExIntro => {
            let Some((v, psi)) = as_existential(lang, succ) else { return false };
            ante.len() == 1 && ex_intro_matches(lang, v, &psi, &ante[0])
        }
        _ => false,
    }
}

fn ex_elim_from(lang: &Language, p: &Sequent, c: &Sequent) -> bool {
    if p.succedent() != c.succedent() || !is_neg_eq_refl(lang, c.succedent()) {
        return false;
    }
    for e in c.antecedent() {
        let Some((v1, psi)) = as_existential(lang, e) else { continue };
        for chi in p.antecedent() {
            let rest: Vec<SymString> = p.antecedent().iter().filter(|a| *a != chi).cloned().collect();
            let mut expect = rest.clone();
            expect.push(e.clone());
            if set_of(expect).as_slice() != c.antecedent() {
                continue;
            }
            let mut forbidden: BTreeSet<SymbolId> = rest.iter().flat_map(|w| w.iter().copied()).collect();
            forbidden.extend(psi.iter().copied());
            let v2 = if psi.contains_symbol(v1) {
                // The position of the first v1 fixes v2.
                let pos = psi.iter().position(|&s| s == v1).expect("present");
                chi.get(pos).copied()
            } else {
                // Any fresh literal will do; the string itself is unchanged.
                Some(lang.fresh_literal(&forbidden))
            };
            let Some(v2) = v2 else { continue };
            if lang.is_literal(v2) && chi.len() == psi.len() && simple_subst(v1, v2, &psi) == *chi && !forbidden.contains(&v2) {
                return true;
            }
        }
    }
    false
}

fn contr_from(lang: &Language, p1: &Sequent, p2: &Sequent, c: &Sequent) -> bool {
    if p1.antecedent() != p2.antecedent() || *p2.succedent() != mk_not(lang, p1.succedent()) {
        return false;
    }
    let Some(psi1) = as_negation(lang, c.succedent()) else { return false };
    let mut expect = c.antecedent().to_vec();
    expect.push(psi1);
    set_of(expect).as_slice() == p1.antecedent()
}

fn cut_a_from(lang: &Language, vbar: SymbolId, p1: &Sequent, p2: &Sequent, c: &Sequent) -> bool {
    let psi0 = p1.succedent();
    if *p2.succedent() != mk_not(lang, psi0) || *c.succedent() != vcontr(lang, vbar, &mk_not(lang, psi0)) {
        return false;
    }
    let union = set_of(p1.antecedent().iter().chain(p2.antecedent()).cloned());
    if !Sequent::ante_subset(&union, c.antecedent()) || c.antecedent().is_empty() {
        return false;
    }
    c.antecedent().len() <= union.len() + 1
}

fn cut_b_from(lang: &Language, vbar: SymbolId, p: &Sequent, c: &Sequent) -> bool {
    let Some(psi) = as_negation(lang, c.succedent()) else { return false };
    if as_vcontr_not(lang, vbar, p.succedent()).is_none() || !p.contains(&psi) || c.contains(&psi) {
        return false;
    }
    let rest: Vec<SymString> = p.antecedent().iter().filter(|a| **a != psi).cloned().collect();
    rest.as_slice() == c.antecedent()
}

/// Whether `c` follows from the ordered premise tuple `ps` by one
/// application of `tag`. `ps` must have `tag.premise_count()` members.
pub(crate) fn admits_from(lang: &Language, tag: RuleTag, ps: &[&Sequent], c: &Sequent) -> bool {
    match (tag, ps) {
        (t, []) if t.is_axiom() => axiom_admits(lang, t, c),
        (RuleTag::RUnion, [p]) => p.succedent() == c.succedent() && Sequent::ante_subset(p.antecedent(), c.antecedent()),
        (RuleTag::RExElim, [p]) => ex_elim_from(lang, p, c),
        (RuleTag::RDNeg, [p]) => {
            p.antecedent() == c.antecedent() && *p.succedent() == mk_not(lang, &mk_not(lang, c.succedent()))
        }
        (RuleTag::RContr, [p1, p2]) => contr_from(lang, p1, p2, c),
        (RuleTag::RCutA(v), [p1, p2]) => cut_a_from(lang, v, p1, p2, c),
        (RuleTag::RCutB(v), [p]) => cut_b_from(lang, v, p, c),
        _ => false,
    }
}

fn find_tuple<'a>(lang: &Language, tag: RuleTag, premises: &'a [Sequent], c: &Sequent) -> Option<Vec<&'a Sequent>> {
    match tag.premise_count() {
        0 => axiom_admits(lang, tag, c).then(Vec::new),
        1 => premises.iter().find(|p| admits_from(lang, tag, &[p], c)).map(|p| alloc::vec![p]),
        _ => premises.iter().find_map(|p1| {
            premises
                .iter()
                .find(|p2| admits_from(lang, tag, &[p1, p2], c))
                .map(|p2| alloc::vec![p1, p2])
        }),
    }
}

fn check_all(lang: &Language, premises: &[Sequent], c: &Sequent) -> Result<(), CalculusError> {
    c.check(lang)?;
    premises.iter().try_for_each(|p| p.check(lang))
}

/// Decides `c ∈ R_tag(premises)`. Premises are a set: order and repetition
/// do not matter.
pub fn rule_admits(lang: &Language, tag: RuleTag, premises: &[Sequent], c: &Sequent) -> Result<bool, CalculusError> {
    check_all(lang, premises, c)?;
    Ok(find_tuple(lang, tag, premises, c).is_some())
}

/// At most two premises from which `c` is still admitted.
pub fn minimal_premises(lang: &Language, tag: RuleTag, premises: &[Sequent], c: &Sequent) -> Result<Vec<Sequent>, CalculusError> {
    check_all(lang, premises, c)?;
    let tuple = find_tuple(lang, tag, premises, c).ok_or(CalculusError::NotAdmitted(tag))?;
    Ok(set_of_sequents(tuple.into_iter().cloned()))
}

fn set_of_sequents(it: impl IntoIterator<Item = Sequent>) -> Vec<Sequent> {
    let s: BTreeSet<Sequent> = it.into_iter().collect();
    s.into_iter().collect()
}

pub fn one_step_admits(lang: &Language, d: &RuleSet, premises: &[Sequent], sigma: &Sequent) -> bool {
    d.iter().any(|&t| rule_admits(lang, t, premises, sigma).unwrap_or(false))
}

/// Calls `f` on every combination of `k` indices below `n`, ascending.
fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), f);
}

pub(crate) type Emit<'e> = dyn FnMut(Sequent, RuleTag, &[&Sequent]) + 'e;

/// Emits the budget-truncated instances of an axiom rule.
pub(crate) fn generate_axioms(lang: &Language, tag: RuleTag, b: &Budgets, terms: &[SymString], emit: &mut Emit<'_>) {
    let eq = |a: &SymString, c: &SymString| mk_eq(lang, a, c);
    let t = terms;
    match tag {
        RuleTag::R0 => {
            for phi in &b.formula_pool {
                emit(Sequent::new([phi.clone()], phi.clone()), tag, &[]);
            }
        }
        RuleTag::REq => {
            for x in t {
                emit(Sequent::new([], eq(x, x)), tag, &[]);
            }
        }
        RuleTag::REqSym => {
            for x in t {
                for y in t {
                    emit(Sequent::new([eq(x, y)], eq(y, x)), tag, &[]);
                }
            }
        }
        RuleTag::REqTrans => {
            for x in t {
                for y in t {
                    for z in t {
                        emit(Sequent::new([eq(x, y), eq(y, z)], eq(x, z)), tag, &[]);
                    }
                }
            }
        }
        RuleTag::ROpCongr | RuleTag::RRelCongr => {
            let heads: Vec<(SymbolId, u32)> = if tag == RuleTag::ROpCongr {
                lang.operational_symbols().collect()
            } else {
                lang.relational_symbols().collect()
            };
            for (s, n) in heads {
                let n = n as usize;
                syntax::for_each_tuple(t.len(), 2 * n, |idx| {
                    let (l, r) = idx.split_at(n);
                    let left = SymString::headed(s, l.iter().map(|&i| &t[i]));
                    let right = SymString::headed(s, r.iter().map(|&i| &t[i]));
                    let mut ante: Vec<SymString> = l.iter().zip(r).map(|(&i, &j)| eq(&t[i], &t[j])).collect();
                    let succ = if tag == RuleTag::ROpCongr {
                        eq(&left, &right)
                    } else {
                        ante.push(left);
                        right
                    };
                    emit(Sequent::new(ante, succ), tag, &[]);
                });
            }
        }
        RuleTag::RNor => {
            let pool = &b.formula_pool;
            let nors: Vec<Vec<SymString>> =
                pool.iter().map(|x| pool.iter().map(|y| mk_nor(lang, x, y)).collect()).collect();
            let n = pool.len();
            syntax::for_each_tuple(n, 4, |i| {
                let ante = [nors[i[0]][i[1]].clone(), nors[i[2]][i[3]].clone()];
                emit(Sequent::new(ante, nors[i[1]][i[2]].clone()), tag, &[]);
            });
        }
        RuleTag::RExIntro => {
            let mut exs: BTreeSet<(SymbolId, SymString)> = BTreeSet::new();
            for psi in &b.formula_pool {
                if let Some(e) = as_existential(lang, psi) {
                    exs.insert(e);
                }
                for &v in &b.literal_budget {
                    exs.insert((v, psi.clone()));
                }
            }
            for (v, psi) in exs {
                let succ = SymString::headed(v, [&psi]);
                for x in t {
                    if let Ok(g) = term_subst(lang, v, x, &psi) {
                        emit(Sequent::new([g], succ.clone()), tag, &[]);
                    }
                }
            }
        }
        _ => {}
    }
}

/// Indexes a premise set for the join-style rules.
pub(crate) struct SigmaIndex<'a> {
    all: Vec<&'a Sequent>,
    by_succ: BTreeMap<&'a SymString, Vec<&'a Sequent>>,
    by_ante: BTreeMap<&'a [SymString], Vec<&'a Sequent>>,
}

impl<'a> SigmaIndex<'a> {
    pub(crate) fn new<I: IntoIterator<Item = &'a Sequent>>(sigma: I) -> Self {
        let all: Vec<&Sequent> = sigma.into_iter().collect();
        let mut by_succ: BTreeMap<&SymString, Vec<&Sequent>> = BTreeMap::new();
        let mut by_ante: BTreeMap<&[SymString], Vec<&Sequent>> = BTreeMap::new();
        for &s in &all {
            by_succ.entry(s.succedent()).or_default().push(s);
            by_ante.entry(s.antecedent()).or_default().push(s);
        }
        SigmaIndex { all, by_succ, by_ante }
    }
}

/// Emits the budget-truncated conclusions a premise-driven rule draws from
/// the indexed premises.
pub(crate) fn generate_from(lang: &Language, tag: RuleTag, b: &Budgets, sigma: &SigmaIndex<'_>, emit: &mut Emit<'_>) {
    match tag {
        RuleTag::RUnion => {
            for &p in &sigma.all {
                if let Some(targets) = &b.antecedent_pool {
                    for g in targets {
                        if Sequent::ante_subset(p.antecedent(), g) {
                            emit(Sequent::new(g.iter().cloned(), p.succedent().clone()), tag, &[p]);
                        }
                    }
                    continue;
                }
                let extra: Vec<&SymString> = b.formula_pool.iter().filter(|f| !p.contains(f)).collect();
                let room = b.max_antecedent.saturating_sub(p.antecedent().len());
                for k in 0..=room.min(extra.len()) {
                    for_each_subset(extra.len(), k, &mut |idx| {
                        let ante = p.antecedent().iter().cloned().chain(idx.iter().map(|&i| extra[i].clone()));
                        emit(Sequent::new(ante, p.succedent().clone()), tag, &[p]);
                    });
                }
            }
        }
        RuleTag::RDNeg => {
            for &p in &sigma.all {
                if let Some(phi) = as_negation(lang, p.succedent()).and_then(|n| as_negation(lang, &n)) {
                    emit(Sequent::new(p.antecedent().iter().cloned(), phi), tag, &[p]);
                }
            }
        }
        RuleTag::RContr => {
            for group in sigma.by_ante.values() {
                for &p1 in group {
                    let neg = mk_not(lang, p1.succedent());
                    let Some(&p2) = group.iter().find(|q| *q.succedent() == neg) else { continue };
                    for psi1 in p1.antecedent() {
                        let rest = p1.antecedent().iter().filter(|a| *a != psi1).cloned();
                        emit(Sequent::new(rest, mk_not(lang, psi1)), tag, &[p1, p2]);
                        emit(Sequent::new(p1.antecedent().iter().cloned(), mk_not(lang, psi1)), tag, &[p1, p2]);
                    }
                }
            }
        }
        RuleTag::RExElim => {
            let budget_lits: BTreeSet<SymbolId> = b.literal_budget.iter().copied().collect();
            for &p in &sigma.all {
                if !is_neg_eq_refl(lang, p.succedent()) {
                    continue;
                }
                let ante = p.antecedent();
                let mut lits = budget_lits.clone();
                lits.extend(ante.iter().flat_map(|w| w.iter().copied()).filter(|&s| lang.is_literal(s)));
                for chi in ante {
                    let rest: Vec<SymString> = ante.iter().filter(|a| *a != chi).cloned().collect();
                    let rest_syms: BTreeSet<SymbolId> = rest.iter().flat_map(|w| w.iter().copied()).collect();
                    for &v1 in &lits {
                        let mut psis: Vec<SymString> = Vec::new();
                        if !chi.contains_symbol(v1) {
                            psis.push(chi.clone());
                            let chi_lits: BTreeSet<SymbolId> =
                                chi.iter().copied().filter(|&s| lang.is_literal(s)).collect();
                            for v2 in chi_lits {
                                psis.push(simple_subst(v2, v1, chi));
                            }
                        }
                        for psi in psis {
                            let ok = if psi == *chi {
                                true
                            } else {
                                // v2 is the literal that was renamed to v1.
                                let v2 = chi.iter().zip(psi.iter()).find(|(a, b)| a != b).map(|(a, _)| *a);
                                v2.is_some_and(|v2| !rest_syms.contains(&v2) && !psi.contains_symbol(v2))
                            };
                            if ok && syntax::is_wff(lang, &psi) {
                                let e = SymString::headed(v1, [&psi]);
                                let ante = rest.iter().cloned().chain(core::iter::once(e));
                                emit(Sequent::new(ante, p.succedent().clone()), tag, &[p]);
                            }
                        }
                    }
                }
            }
        }
        RuleTag::RCutA(vbar) => {
            for &p1 in &sigma.all {
                let neg = mk_not(lang, p1.succedent());
                let Some(group) = sigma.by_succ.get(&neg) else { continue };
                let succ = vcontr(lang, vbar, &neg);
                for &p2 in group {
                    let union = set_of(p1.antecedent().iter().chain(p2.antecedent()).cloned());
                    if !union.is_empty() {
                        emit(Sequent::new(union.iter().cloned(), succ.clone()), tag, &[p1, p2]);
                    }
                    for psi in &b.formula_pool {
                        let ante = union.iter().cloned().chain(core::iter::once(psi.clone()));
                        emit(Sequent::new(ante, succ.clone()), tag, &[p1, p2]);
                    }
                }
            }
        }
        RuleTag::RCutB(vbar) => {
            for &p in &sigma.all {
                if as_vcontr_not(lang, vbar, p.succedent()).is_none() {
                    continue;
                }
                for psi in p.antecedent() {
                    let rest = p.antecedent().iter().filter(|a| *a != psi).cloned();
                    emit(Sequent::new(rest, mk_not(lang, psi)), tag, &[p]);
                }
            }
        }
        _ => {}
    }
}

/// Every budget-truncated application of `tag` to `sigma`, with the
/// premises it used. Axiom rules ignore `sigma`.
pub fn for_each_instance(
    lang: &Language,
    tag: RuleTag,
    b: &Budgets,
    sigma: &[Sequent],
    f: &mut dyn FnMut(Sequent, &[&Sequent]),
) -> Result<(), CalculusError> {
    if tag.is_axiom() {
        let terms = b.terms(lang)?;
        generate_axioms(lang, tag, b, &terms, &mut |s, _, ps| f(s, ps));
    } else {
        let index = SigmaIndex::new(sigma.iter());
        generate_from(lang, tag, b, &index, &mut |s, _, ps| f(s, ps));
    }
    Ok(())
}

/// All budget-truncated instances of an axiom rule, sorted.
pub fn axiom_instances(lang: &Language, tag: RuleTag, b: &Budgets) -> Result<Vec<Sequent>, CalculusError> {
    if !tag.is_axiom() {
        return Err(CalculusError::NotEnumerable(tag));
    }
    let terms = b.terms(lang)?;
    let mut out = BTreeSet::new();
    generate_axioms(lang, tag, b, &terms, &mut |s, _, _| {
        out.insert(s);
    });
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
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

    fn seq(ante: &[&str], succ: &str) -> Sequent {
        Sequent::new(ante.iter().map(|a| p(a)), p(succ))
    }

    fn admits(tag: RuleTag, prem: &[Sequent], c: &Sequent) -> bool {
        rule_admits(&grp(), tag, prem, c).unwrap()
    }

    #[test]
    fn axioms() {
        assert!(admits(RuleTag::R0, &[], &seq(&["134"], "134")));
        assert!(!admits(RuleTag::R0, &[], &seq(&["134", "133"], "134")));
        assert!(admits(RuleTag::REq, &[], &seq(&[], "133")));
        assert!(!admits(RuleTag::REq, &[], &seq(&[], "134")));
        assert!(admits(RuleTag::REqSym, &[], &seq(&["134"], "143")));
        assert!(admits(RuleTag::REqTrans, &[], &seq(&["134", "145"], "135")));
        assert!(admits(RuleTag::REqTrans, &[], &seq(&["133"], "133")));
        assert!(!admits(RuleTag::REqTrans, &[], &seq(&["134", "135"], "145")));
        assert!(admits(RuleTag::ROpCongr, &[], &seq(&["134", "156"], "1235246")));
        assert!(admits(RuleTag::RRelCongr, &[], &seq(&["134", "156", "135"], "146")));
        assert!(admits(RuleTag::RNor, &[], &seq(&["0133134", "0143144"], "0134143")));
        assert!(!admits(RuleTag::RNor, &[], &seq(&["0133134", "0143144"], "0133143")));
        assert!(admits(RuleTag::RExIntro, &[], &seq(&["1234234"], "41234234")));
        assert!(admits(RuleTag::RExIntro, &[], &seq(&["1234234"], "612346")));
    }

    #[test]
    fn ex_intro_through_renaming() {
        let g = grp();
        // psi = ∃3 ≡ 3 4, substituting v for 4 by the term 3 renames the bound 3.
        let psi = p("3134");
        let gamma = term_subst(&g, s("4"), &p("3"), &psi).unwrap();
        let c = Sequent::new([gamma], SymString::headed(s("4"), [&psi]));
        assert!(rule_admits(&g, RuleTag::RExIntro, &[], &c).unwrap());
    }

    #[test]
    fn premise_rules() {
        let base = seq(&["133"], "144");
        assert!(admits(RuleTag::RUnion, &[base.clone()], &seq(&["133", "134"], "144")));
        assert!(!admits(RuleTag::RUnion, &[base.clone()], &seq(&["134"], "144")));
        let nn = syntax::mk_not(&grp(), &syntax::mk_not(&grp(), &p("144")));
        assert!(admits(RuleTag::RDNeg, &[Sequent::new([p("133")], nn)], &base));
        let a = seq(&["133", "134"], "144");
        let b = seq(&["133", "134"], "0144144");
        assert!(admits(RuleTag::RContr, &[a.clone(), b.clone()], &seq(&["133"], "0134134")));
        assert!(admits(RuleTag::RContr, &[b, a], &seq(&["133", "134"], "0134134")));
    }

    #[test]
    fn ex_elim_side_condition() {
        let not_refl = "0133133";
        // v1 = v2 = 5 is excluded: v2 would occur in psi.
        assert!(!admits(RuleTag::RExElim, &[seq(&["154"], not_refl)], &seq(&["5154"], not_refl)));
        // rename 5 to 6: premise { ≡ 6 4 }, conclude { ∃5 ≡ 5 4 }.
        assert!(admits(RuleTag::RExElim, &[seq(&["164"], not_refl)], &seq(&["5154"], not_refl)));
        // v2 = 6 also occurs in the rest of the antecedent.
        assert!(!admits(RuleTag::RExElim, &[seq(&["164", "166"], not_refl)], &seq(&["5154", "166"], not_refl)));
        // wrong succedent shape.
        assert!(!admits(RuleTag::RExElim, &[seq(&["164"], "133")], &seq(&["5154"], "133")));
    }

    #[test]
    fn cut_variants() {
        let g = grp();
        let v = s("v0");
        let notp = syntax::mk_not(&g, &p("134"));
        let p1 = seq(&["133"], "134");
        let p2 = Sequent::new([p("144")], notp.clone());
        let c = Sequent::new([p("133"), p("144"), p("155")], vcontr(&g, v, &notp));
        assert!(rule_admits(&g, RuleTag::RCutA(v), &[p1, p2], &c).unwrap());
        let c2 = Sequent::new([p("133"), p("144")], syntax::mk_not(&g, &p("155")));
        assert!(rule_admits(&g, RuleTag::RCutB(v), &[c.clone()], &c2).unwrap());
        assert!(!rule_admits(&g, RuleTag::RCutB(v), &[c], &Sequent::new([p("133"), p("144"), p("155")], syntax::mk_not(&g, &p("155")))).unwrap());
    }

    #[test]
    fn minimal_premise_search() {
        let g = grp();
        let a = seq(&["133", "134"], "144");
        let b = seq(&["133", "134"], "0144144");
        let noise = seq(&[], "133");
        let c = seq(&["133"], "0134134");
        let m = minimal_premises(&g, RuleTag::RContr, &[noise.clone(), a.clone(), b.clone()], &c).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(minimal_premises(&g, RuleTag::REq, &[noise.clone()], &noise).unwrap(), vec![]);
        assert_eq!(minimal_premises(&g, RuleTag::RUnion, &[noise.clone()], &seq(&["144"], "133")).unwrap(), vec![noise]);
    }

    #[test]
    fn instance_enumeration() {
        let g = grp();
        let b = Budgets { literal_budget: vec![s("3"), s("4")], formula_pool: vec![p("134")], ..Budgets::default() };
        assert_eq!(axiom_instances(&g, RuleTag::REq, &b).unwrap(), vec![seq(&[], "133"), seq(&[], "144")]);
        assert_eq!(axiom_instances(&g, RuleTag::R0, &b).unwrap(), vec![seq(&["134"], "134")]);
        assert_eq!(axiom_instances(&g, RuleTag::REqTrans, &b).unwrap().len(), 8);
        assert_eq!(axiom_instances(&g, RuleTag::RUnion, &b), Err(CalculusError::NotEnumerable(RuleTag::RUnion)));
    }
}
