//! Literal-for-literal substitution and capture-avoiding substitution of a
//! term for a literal, with executable forms of the two substitution lemmas.

use alloc::collections::BTreeSet;

use thiserror::Error;

use crate::language::{Language, SymbolId};
use crate::semantics::{self, Element, FiniteInterpretation, SemanticsError};
use crate::strings::SymString;
use crate::syntax::{self, Kind, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error("symbol {0} is not a literal")]
    NotALiteral(SymbolId),
    #[error("{0} already occurs in the subject")]
    PreconditionViolated(SymbolId),
}

/// Replaces every occurrence of `v1` by `v2`.
pub fn simple_subst(v1: SymbolId, v2: SymbolId, w: &[SymbolId]) -> SymString {
    w.iter().map(|&s| if s == v1 { v2 } else { s }).collect()
}

/// `phi[v/t]`, renaming every quantified literal to the least fresh pool
/// literal before descending under it.
pub fn term_subst(lang: &Language, v: SymbolId, t: &[SymbolId], phi: &[SymbolId]) -> Result<SymString, SubstError> {
    if !lang.is_literal(v) {
        return Err(SubstError::NotALiteral(v));
    }
    syntax::parse_term(lang, t)?;
    syntax::parse_wff(lang, phi)?;
    let t_syms: BTreeSet<SymbolId> = t.iter().copied().collect();
    Ok(subst_wff(lang, v, t, &t_syms, phi))
}

fn subst_wff(lang: &Language, v: SymbolId, t: &[SymbolId], t_syms: &BTreeSet<SymbolId>, phi: &[SymbolId]) -> SymString {
    let r = syntax::parse_wff(lang, phi).expect("checked by caller");
    match r.kind {
        Kind::AtomicWff => {
            let mut out = SymString::single(r.head);
            for &s in &phi[1..] {
                if s == v {
                    out.extend_from(&SymString::from(t));
                } else {
                    out.push(s);
                }
            }
            out
        }
        Kind::NorWff => {
            let a = subst_wff(lang, v, t, t_syms, &r.children[0]);
            let b = subst_wff(lang, v, t, t_syms, &r.children[1]);
            syntax::mk_nor(lang, &a, &b)
        }
        Kind::ExistentialWff => {
            let body = &r.children[0];
            let mut forbidden = t_syms.clone();
            forbidden.insert(v);
            forbidden.extend(body.iter().copied());
            let fresh = lang.fresh_literal(&forbidden);
            let renamed = simple_subst(r.head, fresh, body);
            let mut out = SymString::single(fresh);
            out.extend_from(&subst_wff(lang, v, t, t_syms, &renamed));
            out
        }
        Kind::Term => unreachable!("parse_wff never yields a term"),
    }
}

/// Compares `eval_i(φ[v/t])` with `φ` evaluated under `i` reassigned at `v`
/// to `eval_i(t)`, and checks that substitution kept the depth.
pub fn check_subst_lemma(
    lang: &Language,
    i: &FiniteInterpretation,
    v: SymbolId,
    t: &[SymbolId],
    phi: &[SymbolId],
) -> Result<bool, SubstError> {
    let out = term_subst(lang, v, t, phi)?;
    let depth_kept = syntax::wff_depth(lang, &out) == syntax::wff_depth(lang, phi);
    let left = semantics::truth_eval(lang, i, &out)?;
    let u = semantics::term_eval(lang, i, t)?;
    let right = semantics::truth_eval(lang, &semantics::reassign(lang, v, u, i)?, phi)?;
    Ok(depth_kept && left == right)
}

/// Compares `ψ` under `v1 ↦ u` with `ψ[v1→v2]` under `v2 ↦ u`; `v2` must not
/// occur in `ψ`. `ψ` may be a term or a wff.
pub fn check_simple_subst_lemma(
    lang: &Language,
    i: &FiniteInterpretation,
    v1: SymbolId,
    v2: SymbolId,
    u: Element,
    psi: &[SymbolId],
) -> Result<bool, SubstError> {
    for v in [v1, v2] {
        if !lang.is_literal(v) {
            return Err(SubstError::NotALiteral(v));
        }
    }
    if psi.contains(&v2) {
        return Err(SubstError::PreconditionViolated(v2));
    }
    let renamed = simple_subst(v1, v2, psi);
    let i1 = semantics::reassign(lang, v1, u, i)?;
    let i2 = semantics::reassign(lang, v2, u, i)?;
    if syntax::is_term(lang, psi) {
        return Ok(semantics::term_eval(lang, &i1, psi)? == semantics::term_eval(lang, &i2, &renamed)?);
    }
    Ok(semantics::truth_eval(lang, &i1, psi)? == semantics::truth_eval(lang, &i2, &renamed)?)
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

    fn m2() -> FiniteInterpretation {
        let mut i = FiniteInterpretation::new(2).unwrap();
        i.set_operation(s("2"), 2, vec![0, 1, 1, 0]).unwrap();
        i.set_literal(s("3"), 0).unwrap();
        i.set_literal(s("4"), 1).unwrap();
        i.set_literal(s("5"), 0).unwrap();
        i
    }

    #[test]
    fn simple_substitution() {
        assert_eq!(simple_subst(s("4"), s("5"), &p("12344")), p("12355"));
        assert_eq!(simple_subst(s("7"), s("5"), &p("12344")), p("12344"));
    }

    #[test]
    fn term_substitution_examples() {
        let g = grp();
        assert_eq!(term_subst(&g, s("4"), &p("234"), &p("134")).unwrap(), p("13234"));
        assert_eq!(term_subst(&g, s("5"), &p("234"), &p("134")).unwrap(), p("134"));
        let out = term_subst(&g, s("3"), &p("4"), &p("4134")).unwrap();
        let v0 = s("v0");
        assert_eq!(out.symbols(), &[v0, s("1"), s("4"), v0]);
        assert_eq!(syntax::wff_depth(&g, &out), Some(1));
        assert_eq!(term_subst(&g, s("2"), &p("3"), &p("133")), Err(SubstError::NotALiteral(s("2"))));
    }

    #[test]
    fn lemma_examples() {
        let g = grp();
        let m = m2();
        assert_eq!(check_subst_lemma(&g, &m, s("4"), &p("3"), &p("134")), Ok(true));
        assert_eq!(check_subst_lemma(&g, &m, s("6"), &p("3"), &p("134")), Ok(true));
        assert_eq!(check_simple_subst_lemma(&g, &m, s("4"), s("v0"), 1, &p("134")), Ok(true));
        assert_eq!(
            check_simple_subst_lemma(&g, &m, s("4"), s("3"), 1, &p("134")),
            Err(SubstError::PreconditionViolated(s("3")))
        );
    }
}
