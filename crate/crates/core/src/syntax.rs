//! Recognition of terms and well-formed formulas, depth, immediate
//! subterms, and bounded enumeration.
//!
//! Parsing is recursive descent driven by arities. A wff headed by a relational
//! symbol is atomic, one headed by NOR has exactly two wff children, and one
//! headed by a literal (with something after it) is an existential whose body
//! is the tail. A lone literal is a term, never a wff.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;

use thiserror::Error;

use crate::language::{Language, SymbolClass, SymbolId};
use crate::strings::SymString;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Term,
    AtomicWff,
    ExistentialWff,
    NorWff,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseResult {
    pub kind: Kind,
    pub depth: usize,
    pub head: SymbolId,
    pub children: Vec<SymString>,
}

/// Why a string failed to parse, with the offending position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum Reason {
    #[error("empty string")]
    Empty,
    #[error("unknown symbol {symbol} at position {position}")]
    UnknownSymbol { symbol: SymbolId, position: usize },
    #[error("string ends early (expected more at position {position})")]
    Truncated { position: usize },
    #[error("leftover symbols from position {position}")]
    Leftover { position: usize },
    #[error("symbol {symbol} at position {position} cannot head a {expected}")]
    BadHead { symbol: SymbolId, position: usize, expected: &'static str },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("not a term: {0}")]
    NotATerm(Reason),
    #[error("not a wff: {0}")]
    NotAWff(Reason),
    #[error("neither a term nor a wff")]
    NotParsable,
    #[error("budget symbol {0} is not a literal")]
    NotALiteral(SymbolId),
}

/// Scans one term starting at `pos`; returns (end, depth).
pub(crate) fn scan_term(lang: &Language, w: &[SymbolId], pos: usize) -> Result<(usize, usize), Reason> {
    let Some(&head) = w.get(pos) else {
        return Err(Reason::Truncated { position: pos });
    };
    match lang.classify(head) {
        Ok(SymbolClass::Literal) => Ok((pos + 1, 0)),
        Ok(SymbolClass::Operational(n)) => {
            let mut end = pos + 1;
            let mut depth = 0;
            for _ in 0..n {
                let (e, d) = scan_term(lang, w, end)?;
                end = e;
                depth = depth.max(d);
            }
            Ok((end, depth + 1))
        }
        Ok(_) => Err(Reason::BadHead { symbol: head, position: pos, expected: "term" }),
        Err(_) => Err(Reason::UnknownSymbol { symbol: head, position: pos }),
    }
}

/// Scans one wff starting at `pos`; returns (end, depth).
pub(crate) fn scan_wff(lang: &Language, w: &[SymbolId], pos: usize) -> Result<(usize, usize), Reason> {
    let Some(&head) = w.get(pos) else {
        return Err(Reason::Truncated { position: pos });
    };
    match lang.classify(head) {
        Ok(SymbolClass::Relational(n)) => {
            let mut end = pos + 1;
            for _ in 0..n {
                end = scan_term(lang, w, end)?.0;
            }
            Ok((end, 0))
        }
        Ok(SymbolClass::EqualitySymbol) => {
            let (e, _) = scan_term(lang, w, pos + 1)?;
            let (e, _) = scan_term(lang, w, e)?;
            Ok((e, 0))
        }
        Ok(SymbolClass::NorConnective) => {
            let (e1, d1) = scan_wff(lang, w, pos + 1)?;
            let (e2, d2) = scan_wff(lang, w, e1)?;
            Ok((e2, 1 + d1.max(d2)))
        }
        Ok(SymbolClass::Literal) => {
            let (e, d) = scan_wff(lang, w, pos + 1)?;
            Ok((e, d + 1))
        }
        Ok(SymbolClass::Operational(_)) => Err(Reason::BadHead { symbol: head, position: pos, expected: "wff" }),
        Err(_) => Err(Reason::UnknownSymbol { symbol: head, position: pos }),
    }
}

fn split_terms(lang: &Language, w: &[SymbolId], mut pos: usize, n: u32) -> Vec<SymString> {
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let (e, _) = scan_term(lang, w, pos).expect("already scanned");
        out.push(SymString::from(&w[pos..e]));
        pos = e;
    }
    out
}

pub fn parse_term(lang: &Language, w: &[SymbolId]) -> Result<ParseResult, SyntaxError> {
    if w.is_empty() {
        return Err(SyntaxError::NotATerm(Reason::Empty));
    }
    let (end, depth) = scan_term(lang, w, 0).map_err(SyntaxError::NotATerm)?;
    if end != w.len() {
        return Err(SyntaxError::NotATerm(Reason::Leftover { position: end }));
    }
    let head = w[0];
    let n = match lang.classify(head) {
        Ok(SymbolClass::Operational(n)) => n,
        _ => 0,
    };
    Ok(ParseResult { kind: Kind::Term, depth, head, children: split_terms(lang, w, 1, n) })
}

pub fn parse_wff(lang: &Language, w: &[SymbolId]) -> Result<ParseResult, SyntaxError> {
    if w.is_empty() {
        return Err(SyntaxError::NotAWff(Reason::Empty));
    }
    let (end, depth) = scan_wff(lang, w, 0).map_err(SyntaxError::NotAWff)?;
    if end != w.len() {
        return Err(SyntaxError::NotAWff(Reason::Leftover { position: end }));
    }
    let head = w[0];
    let (kind, children) = match lang.classify(head) {
        Ok(SymbolClass::Relational(n)) => (Kind::AtomicWff, split_terms(lang, w, 1, n)),
        Ok(SymbolClass::EqualitySymbol) => (Kind::AtomicWff, split_terms(lang, w, 1, 2)),
        Ok(SymbolClass::NorConnective) => {
            let (e1, _) = scan_wff(lang, w, 1).expect("already scanned");
            (Kind::NorWff, alloc::vec![SymString::from(&w[1..e1]), SymString::from(&w[e1..])])
        }
        _ => (Kind::ExistentialWff, alloc::vec![SymString::from(&w[1..])]),
    };
    Ok(ParseResult { kind, depth, head, children })
}

/// Parses as a term, else as a wff.
pub fn parse_any(lang: &Language, w: &[SymbolId]) -> Result<ParseResult, SyntaxError> {
    parse_term(lang, w).or_else(|_| parse_wff(lang, w)).map_err(|_| SyntaxError::NotParsable)
}

/// The immediate decomposition of a term or wff.
pub fn sub_terms(lang: &Language, w: &[SymbolId]) -> Result<Vec<SymString>, SyntaxError> {
    parse_any(lang, w).map(|r| r.children)
}

pub fn is_term(lang: &Language, w: &[SymbolId]) -> bool {
    term_depth(lang, w).is_some()
}

pub fn is_wff(lang: &Language, w: &[SymbolId]) -> bool {
    wff_depth(lang, w).is_some()
}

pub fn term_depth(lang: &Language, w: &[SymbolId]) -> Option<usize> {
    match scan_term(lang, w, 0) {
        Ok((end, d)) if end == w.len() => Some(d),
        _ => None,
    }
}

pub fn wff_depth(lang: &Language, w: &[SymbolId]) -> Option<usize> {
    match scan_wff(lang, w, 0) {
        Ok((end, d)) if end == w.len() => Some(d),
        _ => None,
    }
}

/// `≡ a b`, unchecked.
pub fn mk_eq(lang: &Language, a: &SymString, b: &SymString) -> SymString {
    SymString::headed(lang.eq_symbol(), [a, b])
}

/// `↓ a b`, unchecked.
pub fn mk_nor(lang: &Language, a: &SymString, b: &SymString) -> SymString {
    SymString::headed(lang.nor_symbol(), [a, b])
}

/// `↓ a a`, unchecked.
pub fn mk_not(lang: &Language, a: &SymString) -> SymString {
    mk_nor(lang, a, a)
}

/// Negation as `↓ φ φ`.
pub fn xnot(lang: &Language, phi: &[SymbolId]) -> Result<SymString, SyntaxError> {
    parse_wff(lang, phi)?;
    let phi = SymString::from(phi);
    Ok(mk_not(lang, &phi))
}

pub fn as_nor(lang: &Language, w: &[SymbolId]) -> Option<(SymString, SymString)> {
    if w.first() != Some(&lang.nor_symbol()) {
        return None;
    }
    let (e1, _) = scan_wff(lang, w, 1).ok()?;
    let (e2, _) = scan_wff(lang, w, e1).ok()?;
    (e2 == w.len()).then(|| (SymString::from(&w[1..e1]), SymString::from(&w[e1..])))
}

/// `Some(φ)` when `w` is `↓ φ φ`.
pub fn as_negation(lang: &Language, w: &[SymbolId]) -> Option<SymString> {
    as_nor(lang, w).and_then(|(a, b)| (a == b).then_some(a))
}

pub fn as_eq(lang: &Language, w: &[SymbolId]) -> Option<(SymString, SymString)> {
    if w.first() != Some(&lang.eq_symbol()) {
        return None;
    }
    let (e1, _) = scan_term(lang, w, 1).ok()?;
    let (e2, _) = scan_term(lang, w, e1).ok()?;
    (e2 == w.len()).then(|| (SymString::from(&w[1..e1]), SymString::from(&w[e1..])))
}

pub fn as_existential(lang: &Language, w: &[SymbolId]) -> Option<(SymbolId, SymString)> {
    let &head = w.first()?;
    if !lang.is_literal(head) || w.len() < 2 {
        return None;
    }
    wff_depth(lang, &w[1..])?;
    Some((head, SymString::from(&w[1..])))
}

/// Head and argument terms of an atomic wff (the equality symbol included).
pub fn as_atomic(lang: &Language, w: &[SymbolId]) -> Option<(SymbolId, Vec<SymString>)> {
    let &head = w.first()?;
    let n = match lang.classify(head).ok()? {
        SymbolClass::Relational(n) => n,
        SymbolClass::EqualitySymbol => 2,
        _ => return None,
    };
    let mut pos = 1;
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let (e, _) = scan_term(lang, w, pos).ok()?;
        out.push(SymString::from(&w[pos..e]));
        pos = e;
    }
    (pos == w.len()).then_some((head, out))
}

/// Head and argument terms of a compound term.
pub fn as_compound_term(lang: &Language, w: &[SymbolId]) -> Option<(SymbolId, Vec<SymString>)> {
    let r = parse_term(lang, w).ok()?;
    (!r.children.is_empty()).then_some((r.head, r.children))
}

/// Depth first, then token order. Strings that are neither terms nor wffs
/// sort last.
pub fn canonical_cmp(lang: &Language, a: &[SymbolId], b: &[SymbolId]) -> Ordering {
    let depth = |w: &[SymbolId]| term_depth(lang, w).or_else(|| wff_depth(lang, w)).unwrap_or(usize::MAX);
    depth(a).cmp(&depth(b)).then_with(|| a.cmp(b))
}

fn check_budget(lang: &Language, budget: &[SymbolId]) -> Result<Vec<SymbolId>, SyntaxError> {
    for &s in budget {
        if !lang.is_literal(s) {
            return Err(SyntaxError::NotALiteral(s));
        }
    }
    let set: BTreeSet<SymbolId> = budget.iter().copied().collect();
    Ok(set.into_iter().collect())
}

/// Calls `f` on every `n`-tuple over `pool` in lexicographic index order.
/// Tuples are passed as index slices.
pub(crate) fn for_each_tuple(pool_len: usize, n: usize, mut f: impl FnMut(&[usize])) {
    if n > 0 && pool_len == 0 {
        return;
    }
    let mut idx = alloc::vec![0usize; n];
    loop {
        f(&idx);
        let mut j = n;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < pool_len {
                break;
            }
            idx[j] = 0;
        }
    }
}

/// Terms of depth at most `max_depth` whose literals come from `budget`,
/// ordered by depth then token order.
pub fn enumerate_terms(lang: &Language, max_depth: usize, budget: &[SymbolId]) -> Result<Vec<SymString>, SyntaxError> {
    let lits = check_budget(lang, budget)?;
    let ops: Vec<(SymbolId, u32)> = lang.operational_symbols().collect();
    let mut all: Vec<SymString> = lits.iter().copied().map(SymString::single).collect();
    let mut prev_start = 0;
    for _ in 0..max_depth {
        let mut level = Vec::new();
        for &(op, n) in &ops {
            for_each_tuple(all.len(), n as usize, |idx| {
                if idx.iter().any(|&i| i >= prev_start) {
                    level.push(SymString::headed(op, idx.iter().map(|&i| &all[i])));
                }
            });
        }
        if level.is_empty() {
            break;
        }
        level.sort();
        prev_start = all.len();
        all.extend(level);
    }
    Ok(all)
}

/// Wffs of depth at most `max_depth` whose atomic parts use terms of depth at
/// most `term_depth` over `budget`, and whose quantified literals are drawn
/// from `budget`. Ordered by depth then token order.
pub fn enumerate_wffs(
    lang: &Language,
    max_depth: usize,
    term_depth: usize,
    budget: &[SymbolId],
) -> Result<Vec<SymString>, SyntaxError> {
    let lits = check_budget(lang, budget)?;
    let terms = enumerate_terms(lang, term_depth, &lits)?;
    let mut level = Vec::new();
    for (r, n) in lang.relational_symbols() {
        for_each_tuple(terms.len(), n as usize, |idx| {
            level.push(SymString::headed(r, idx.iter().map(|&i| &terms[i])));
        });
    }
    level.sort();
    let mut all = level;
    let mut prev_start = 0;
    for _ in 0..max_depth {
        let mut level = Vec::new();
        let cur = all.len();
        for i in 0..cur {
            for j in 0..cur {
                if i >= prev_start || j >= prev_start {
                    level.push(mk_nor(lang, &all[i], &all[j]));
                }
            }
        }
        for &v in &lits {
            for phi in &all[prev_start..cur] {
                let mut w = SymString::single(v);
                w.extend_from(phi);
                level.push(w);
            }
        }
        level.sort();
        prev_start = cur;
        all.extend(level);
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::SymbolId;
    use alloc::string::ToString;

    fn grp() -> Language {
        let mut symbols = alloc::vec![(SymbolId::new("2").unwrap(), 2)];
        for d in 3..=9 {
            symbols.push((SymbolId::new(&d.to_string()).unwrap(), 0));
        }
        Language::new(SymbolId::new("1").unwrap(), SymbolId::new("0").unwrap(), symbols, ["v"]).unwrap()
    }

    fn p(s: &str) -> SymString {
        SymString::from_packed(s).unwrap()
    }

    fn lits(s: &str) -> Vec<SymbolId> {
        p(s).into_vec()
    }

    #[test]
    fn terms_and_depths() {
        let g = grp();
        let r = parse_term(&g, &p("3")).unwrap();
        assert_eq!((r.depth, r.children.len()), (0, 0));
        let r = parse_term(&g, &p("234")).unwrap();
        assert_eq!((r.depth, r.children), (1, alloc::vec![p("3"), p("4")]));
        let r = parse_term(&g, &p("22345")).unwrap();
        assert_eq!((r.depth, r.children), (2, alloc::vec![p("234"), p("5")]));
        assert!(parse_term(&g, &p("23")).is_err());
        assert!(parse_term(&g, &p("2345")).is_err());
    }

    #[test]
    fn wffs_and_kinds() {
        let g = grp();
        let r = parse_wff(&g, &p("0412344412344")).unwrap();
        assert_eq!((r.kind, r.depth), (Kind::NorWff, 2));
        let r = parse_wff(&g, &p("133")).unwrap();
        assert_eq!((r.kind, r.depth, r.children), (Kind::AtomicWff, 0, alloc::vec![p("3"), p("3")]));
        let r = parse_wff(&g, &p("412344")).unwrap();
        assert_eq!((r.kind, r.depth, r.children), (Kind::ExistentialWff, 1, alloc::vec![p("12344")]));
        assert!(is_wff(&g, &p("045124534512453")));
        assert!(!is_wff(&g, &p("33")));
        assert!(!is_wff(&g, &p("13")));
        assert!(!is_wff(&g, &p("3")));
    }

    #[test]
    fn subterm_examples() {
        let g = grp();
        assert_eq!(sub_terms(&g, &p("234")).unwrap(), alloc::vec![p("3"), p("4")]);
        assert_eq!(sub_terms(&g, &p("12344")).unwrap(), alloc::vec![p("234"), p("4")]);
        assert!(sub_terms(&g, &p("3")).unwrap().is_empty());
        assert_eq!(sub_terms(&g, &p("33")), Err(SyntaxError::NotParsable));
    }

    #[test]
    fn enumeration_examples() {
        let g = grp();
        assert_eq!(enumerate_terms(&g, 0, &lits("34")).unwrap(), alloc::vec![p("3"), p("4")]);
        let t1: Vec<_> = ["3", "4", "233", "234", "243", "244"].iter().map(|s| p(s)).collect();
        assert_eq!(enumerate_terms(&g, 1, &lits("34")).unwrap(), t1);
        let f0: Vec<_> = ["133", "134", "143", "144"].iter().map(|s| p(s)).collect();
        assert_eq!(enumerate_wffs(&g, 0, 0, &lits("34")).unwrap(), f0);
        assert_eq!(enumerate_wffs(&g, 1, 0, &lits("34")).unwrap().len(), 28);
        assert_eq!(enumerate_terms(&g, 1, &lits("2")), Err(SyntaxError::NotALiteral(p("2")[0])));
    }

    #[test]
    fn xnot_shape() {
        let g = grp();
        assert_eq!(xnot(&g, &p("133")).unwrap(), p("0133133"));
        assert!(xnot(&g, &p("33")).is_err());
        assert_eq!(as_negation(&g, &p("0133133")), Some(p("133")));
        assert_eq!(as_negation(&g, &p("0133134")), None);
    }
}
