//! The acceptance checks, shared by `folkit selftest` and the test suite.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, ensure, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use folkit_core::calculus::{
    derivables_bounded, for_each_instance, named_rule_sets, one_step_admits, verify_derivation, vcontr,
};
use folkit_core::enlarge::{self, Action, EnumerationPair, OracleBudget, VerdictKind};
use folkit_core::quotient::{self, Compatibility, FiniteEquivalence, QuotientError};
use folkit_core::semantics::{self, FreeInterpretation, FreeValue, InterpretationSpace};
use folkit_core::strings::{multi_cat, symbols_of};
use folkit_core::substitution::check_subst_lemma;
use folkit_core::syntax::{self, enumerate_terms, enumerate_wffs};
use folkit_core::{
    Budgets, Element, FiniteInterpretation, Language, RuleSet, RuleTag, Sequent, SymString, SymbolId,
};

use crate::formats;

pub const DEFAULT_SEED: u64 = 20_240_917;

pub mod fixtures {
    pub const GRP_LANG: &str = include_str!("../fixtures/grp.lang");
    pub const GRP_THY: &str = include_str!("../fixtures/grp.thy");
    pub const M2_MODEL: &str = include_str!("../fixtures/m2.model");
    pub const HENKIN_THY: &str = include_str!("../fixtures/henkin.thy");
    pub const EXISTENTIALS_THY: &str = include_str!("../fixtures/existentials.thy");
    pub const CORPUS_DRV: &str = include_str!("../fixtures/corpus.drv");
    pub const CUT_DRV: &str = include_str!("../fixtures/cut.drv");
}

/// The long group axiom as displayed over two lines. As printed it is not a
/// wff: the term (3+4)+5 appears as `23425` instead of `22345`.
const LONG_AXIOM: [&str; 2] = [
    "03040512324523425512324523425405123245234255123245234253",
    "04051232452342551232452342540512324523425512324523425",
];

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!("criterion {:>2} {verdict} {} ({:.2}s): {}", self.id, self.name, self.elapsed.as_secs_f64(), self.detail)
    }
}

pub const CRITERIA: [&str; 11] = [
    "fixtures parse",
    "unambiguity",
    "free interpretation identity",
    "substitution lemma",
    "quotient machinery",
    "rule soundness",
    "tree to derivability",
    "monotonicity",
    "addF decidedness",
    "addW freshness",
    "bounded Henkin",
];

type Check = (bool, String);

pub fn run(id: usize, seed: u64) -> Outcome {
    let start = Instant::now();
    let result = match id {
        1 => fixtures_parse(),
        2 => unambiguity(),
        3 => free_identity(),
        4 => substitution_lemma(seed),
        5 => quotient_machinery(),
        6 => rule_soundness(),
        7 => tree_derivability(),
        8 => monotonicity(seed),
        9 => add_f_decided(),
        10 => add_w_fresh(),
        11 => henkin_demo(),
        _ => Err(anyhow!("no criterion {id}")),
    };
    let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e:#}")));
    Outcome { id, name: CRITERIA.get(id.wrapping_sub(1)).copied().unwrap_or("?"), passed, detail, elapsed: start.elapsed() }
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    (1..=CRITERIA.len()).map(|id| run(id, seed)).collect()
}

fn sym(t: &str) -> SymbolId {
    SymbolId::new(t).expect("valid token")
}

fn packed(t: &str) -> SymString {
    SymString::from_packed(t).expect("valid packed string")
}

pub fn grp() -> Result<Language> {
    Ok(formats::parse_language("grp.lang", fixtures::GRP_LANG)?)
}

fn d1() -> RuleSet {
    named_rule_sets(sym("v0"))["D1"].clone()
}

fn fixtures_parse() -> Result<Check> {
    let g = grp()?;
    let thy = formats::parse_theory("grp.thy", fixtures::GRP_THY, &g)?;
    ensure!(thy.formulas.len() == 3, "expected three axioms, read {}", thy.formulas.len());
    let printed = LONG_AXIOM.concat();
    let repaired = packed(&printed.replace("23425", "22345"));
    ensure!(thy.formulas.contains(&repaired), "grp.thy does not hold the repaired long axiom");
    let printed_error = match syntax::parse_wff(&g, &packed(&printed)) {
        Ok(_) => "accepted".to_string(),
        Err(e) => e.to_string(),
    };
    let short_ok = thy.formulas[..2] == [packed("0412344412344"), packed("045124534512453")];
    let accepted = thy.formulas.iter().all(|w| syntax::is_wff(&g, w));
    let rejected = ["33", "13"].iter().all(|t| !syntax::is_wff(&g, &packed(t)));
    let depths: Vec<String> =
        thy.formulas.iter().map(|w| syntax::wff_depth(&g, w).map_or("-".into(), |d| d.to_string())).collect();
    Ok((
        short_ok && accepted && rejected,
        format!(
            "3 axioms accepted (depths {}); long axiom as printed: {printed_error}, accepted with its 8 copies of 23425 read as 22345; \"33\" and \"13\" rejected: {rejected}",
            depths.join("/")
        ),
    ))
}

fn unambiguity() -> Result<Check> {
    let g = grp()?;
    let terms = enumerate_terms(&g, 2, &[sym("3"), sym("4")])?;
    let k = terms.len();
    let mut report = Vec::new();
    let mut ok = true;
    for n in 1..=3u32 {
        let mut seen: HashSet<SymString> = HashSet::with_capacity(k.pow(n));
        let mut idx = vec![0usize; n as usize];
        loop {
            seen.insert(multi_cat(idx.iter().map(|&i| &terms[i])));
            let mut pos = 0;
            while pos < idx.len() {
                idx[pos] += 1;
                if idx[pos] < k {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
        ok &= seen.len() == k.pow(n);
        report.push(format!("n={n}: {} tuples, {} images", k.pow(n), seen.len()));
    }
    Ok((ok, format!("{k} terms; {}", report.join(", "))))
}

fn free_identity() -> Result<Check> {
    let g = grp()?;
    let terms = enumerate_terms(&g, 3, &[sym("3"), sym("4")])?;
    let free = FreeInterpretation::new([]);
    let mut bad = 0;
    for t in &terms {
        if semantics::free_eval(&g, &free, t)? != FreeValue::Term(t.clone()) {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("{} terms of depth <= 3, {bad} mismatches", terms.len())))
}

fn random_term(rng: &mut ChaCha8Rng, lits: &[SymbolId], op: SymbolId, depth: usize) -> SymString {
    if depth == 0 || rng.random_bool(0.4) {
        return SymString::single(lits[rng.random_range(0..lits.len())]);
    }
    let a = random_term(rng, lits, op, depth - 1);
    let b = random_term(rng, lits, op, depth - 1);
    SymString::headed(op, [&a, &b])
}

fn random_wff(rng: &mut ChaCha8Rng, g: &Language, lits: &[SymbolId], depth: usize) -> SymString {
    let op = sym("2");
    let choice = if depth == 0 { 0 } else { rng.random_range(0..3) };
    match choice {
        0 => {
            let a = random_term(rng, lits, op, 1);
            let b = random_term(rng, lits, op, 1);
            syntax::mk_eq(g, &a, &b)
        }
        1 => {
            let a = random_wff(rng, g, lits, depth - 1);
            let b = random_wff(rng, g, lits, depth - 1);
            syntax::mk_nor(g, &a, &b)
        }
        _ => {
            let v = lits[rng.random_range(0..lits.len())];
            let body = random_wff(rng, g, lits, depth - 1);
            SymString::headed(v, [&body])
        }
    }
}

fn random_grp_model(rng: &mut ChaCha8Rng, lits: &[SymbolId]) -> Result<FiniteInterpretation> {
    let size = rng.random_range(1..=3usize);
    let mut i = FiniteInterpretation::new(size)?;
    let op: Vec<Element> = (0..size * size).map(|_| rng.random_range(0..size) as Element).collect();
    i.set_operation(sym("2"), 2, op)?;
    for &l in lits {
        i.set_literal(l, rng.random_range(0..size) as Element)?;
    }
    i.set_default_literal(rng.random_range(0..size) as Element)?;
    Ok(i)
}

fn substitution_lemma(seed: u64) -> Result<Check> {
    let g = grp()?;
    let lits = [sym("3"), sym("4"), sym("5")];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for case in 0..200 {
        let i = random_grp_model(&mut rng, &lits)?;
        let phi = random_wff(&mut rng, &g, &lits, 3);
        let t = random_term(&mut rng, &lits, sym("2"), 2);
        let v = lits[rng.random_range(0..lits.len())];
        if !check_subst_lemma(&g, &i, v, &t, &phi)? {
            bad.push(format!("case {case}: {v} := {t} in {phi}"));
        }
    }
    let detail = if bad.is_empty() { "200 seeded cases agree, depth kept".to_string() } else { bad.join("; ") };
    Ok((bad.is_empty(), detail))
}

fn toy_language() -> Result<Language> {
    Ok(Language::new(sym("="), sym("!"), [(sym("f"), 2), (sym("r"), -1), (sym("a"), 0)], ["v"])?)
}

/// Set partitions of `0..n` as restricted growth strings.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let max = prefix.iter().copied().max().map_or(0, |m| m + 1);
        for b in 0..=max {
            prefix.push(b);
            go(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

fn quotient_machinery() -> Result<Check> {
    let lang = toy_language()?;
    let (f, r) = (sym("f"), sym("r"));
    let symbols: BTreeSet<SymbolId> = [f, r, sym("a")].into_iter().collect();
    let terms = enumerate_terms(&lang, 2, &[sym("a")])?;
    let atoms: Vec<SymString> = terms.iter().map(|t| SymString::headed(r, [t])).collect();
    let (mut compatible, mut incompatible, mut bad) = (0u64, 0u64, Vec::new());
    for size in 1..=3usize {
        let carrier: BTreeSet<Element> = (0..size as Element).collect();
        let eqs: Vec<FiniteEquivalence<Element>> = partitions(size)
            .into_iter()
            .map(|blocks| {
                let pairs = (0..size).flat_map(|x| (0..size).map(move |y| (x, y)));
                let pairs: Vec<(Element, Element)> =
                    pairs.filter(|&(x, y)| blocks[x] == blocks[y]).map(|(x, y)| (x as Element, y as Element)).collect();
                FiniteEquivalence::generated_by(carrier.clone(), pairs)
            })
            .collect::<Result<_, _>>()?;
        for i in InterpretationSpace::new(&lang, &symbols, size)? {
            for e in &eqs {
                match quotient::is_compatible(&lang, &i, e)? {
                    Compatibility::Compatible => {
                        compatible += 1;
                        if let Err(why) = check_quotient(&lang, &i, e, &terms, &atoms) {
                            if bad.len() < 3 {
                                bad.push(why);
                            }
                        }
                    }
                    Compatibility::Incompatible(cx) => {
                        incompatible += 1;
                        let witnessed = check_counterexample(&lang, &i, e, &cx)
                            && matches!(quotient::quotient_interpretation(&lang, &i, e), Err(QuotientError::NotCompatible(_)));
                        if !witnessed && bad.len() < 3 {
                            bad.push(format!("unverified counterexample {cx:?}"));
                        }
                    }
                }
            }
        }
    }
    let detail = format!("{compatible} compatible and {incompatible} incompatible pairs checked{}", if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) });
    Ok((bad.is_empty(), detail))
}

fn check_quotient(
    lang: &Language,
    i: &FiniteInterpretation,
    e: &FiniteEquivalence<Element>,
    terms: &[SymString],
    atoms: &[SymString],
) -> Result<(), String> {
    let q = quotient::quotient_interpretation(lang, i, e).map_err(|x| x.to_string())?;
    let k = e.classes().len();
    if q.size() != k {
        return Err(format!("quotient has {} elements for {k} classes", q.size()));
    }
    for (s, table) in q.tables().iter() {
        let relational = lang.is_relational(*s);
        let cells = k.pow(table.arity() as u32);
        let bound = if relational { 2 } else { k };
        if table.values().len() != cells || table.values().iter().any(|&v| v as usize >= bound) {
            return Err(format!("table of {s} is not a total function into its codomain"));
        }
    }
    for t in terms {
        let up = semantics::term_eval(lang, i, t).map_err(|x| x.to_string())?;
        let down = semantics::term_eval(lang, &q, t).map_err(|x| x.to_string())?;
        if e.class_of(&up).map(|c| c.0) != Some(down as usize) {
            return Err(format!("term {t} does not commute with the class map"));
        }
    }
    for w in atoms {
        let a = semantics::truth_eval(lang, i, w).map_err(|x| x.to_string())?;
        let b = semantics::truth_eval(lang, &q, w).map_err(|x| x.to_string())?;
        if a != b {
            return Err(format!("atomic {w} changed truth value"));
        }
    }
    Ok(())
}

fn check_counterexample(
    lang: &Language,
    i: &FiniteInterpretation,
    e: &FiniteEquivalence<Element>,
    cx: &quotient::Counterexample,
) -> bool {
    let Some(table) = i.table(cx.symbol) else { return false };
    let n = table.arity();
    if cx.left.len() != n || cx.right.len() != n {
        return false;
    }
    if !cx.left.iter().zip(&cx.right).all(|(a, b)| e.related(a, b)) {
        return false;
    }
    let (a, b) = (table.get(i.size(), &cx.left), table.get(i.size(), &cx.right));
    if lang.is_relational(cx.symbol) {
        a != b
    } else {
        !e.related(&a, &b)
    }
}

/// Truth of every formula across a fixed list of interpretations, one bit
/// per interpretation.
struct Masks<'a> {
    lang: &'a Language,
    interps: &'a [FiniteInterpretation],
    memo: HashMap<SymString, u64>,
    all: u64,
}

impl<'a> Masks<'a> {
    fn new(lang: &'a Language, interps: &'a [FiniteInterpretation]) -> Self {
        let all = if interps.len() >= 64 { u64::MAX } else { (1u64 << interps.len()) - 1 };
        Masks { lang, interps, memo: HashMap::new(), all }
    }

    fn formula(&mut self, w: &SymString) -> Result<u64> {
        if let Some(&m) = self.memo.get(w) {
            return Ok(m);
        }
        let mut m = 0u64;
        for (k, i) in self.interps.iter().enumerate() {
            if semantics::truth_eval(self.lang, i, w)? {
                m |= 1 << k;
            }
        }
        self.memo.insert(w.clone(), m);
        Ok(m)
    }

    /// Interpretations modeling the sequent.
    fn sequent(&mut self, s: &Sequent) -> Result<u64> {
        let mut ante = self.all;
        for a in s.antecedent() {
            ante &= self.formula(a)?;
        }
        Ok(!ante & self.all | self.formula(s.succedent())?)
    }
}

fn models(lang: &Language, i: &FiniteInterpretation, s: &Sequent) -> Result<bool> {
    for a in s.antecedent() {
        if !semantics::truth_eval(lang, i, a)? {
            return Ok(true);
        }
    }
    Ok(semantics::truth_eval(lang, i, s.succedent())?)
}

/// Every interpretation agreeing with `i` off `lits`.
fn variants(lang: &Language, i: &FiniteInterpretation, lits: &[SymbolId]) -> Result<Vec<FiniteInterpretation>> {
    let mut out = vec![i.clone()];
    for &v in lits {
        let mut next = Vec::new();
        for j in &out {
            for u in j.universe() {
                next.push(semantics::reassign(lang, v, u, j)?);
            }
        }
        out = next;
    }
    Ok(out)
}

fn subsets_up_to(pool: &[SymString], k: usize) -> Vec<Vec<SymString>> {
    let mut out = vec![Vec::new()];
    for size in 1..=k {
        let mut idx: Vec<usize> = (0..size).collect();
        if size > pool.len() {
            break;
        }
        loop {
            out.push(idx.iter().map(|&i| pool[i].clone()).collect());
            let mut p = size;
            while p > 0 && idx[p - 1] == pool.len() - size + p - 1 {
                p -= 1;
            }
            if p == 0 {
                break;
            }
            idx[p - 1] += 1;
            for q in p..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    out
}

#[derive(Default)]
struct TagTally {
    instances: u64,
    failures: u64,
    first: Option<String>,
}

fn rule_soundness() -> Result<Check> {
    let g = grp()?;
    let lits = vec![sym("3"), sym("4")];
    let pool = enumerate_wffs(&g, 1, 0, &lits)?;
    let b = Budgets { term_depth: 1, formula_pool: pool.clone(), literal_budget: lits.clone(), max_antecedent: 2, ..Budgets::default() };
    let working: BTreeSet<SymbolId> = [sym("2"), sym("3"), sym("4")].into_iter().collect();
    let interps: Vec<FiniteInterpretation> = InterpretationSpace::new(&g, &working, 2)?.collect();
    ensure!(interps.len() == 64, "expected 64 interpretations, built {}", interps.len());
    let mut masks = Masks::new(&g, &interps);
    let antecedents = subsets_up_to(&pool, 2);
    let small: Vec<Vec<SymString>> = antecedents.iter().filter(|a| a.len() <= 1).cloned().collect();
    let vbar = sym("v0");
    let not = |w: &SymString| syntax::mk_not(&g, w);
    let sigma_for = |tag: RuleTag| -> Vec<Sequent> {
        let mut out = Vec::new();
        let with = |ants: &[Vec<SymString>], succs: &[SymString], out: &mut Vec<Sequent>| {
            for a in ants {
                for s in succs {
                    out.push(Sequent::new(a.iter().cloned(), s.clone()));
                }
            }
        };
        match tag {
            RuleTag::RUnion => with(&antecedents, &pool, &mut out),
            RuleTag::RDNeg => with(&antecedents, &pool.iter().map(|w| not(&not(w))).collect::<Vec<_>>(), &mut out),
            RuleTag::RContr => {
                let both: Vec<SymString> = pool.iter().flat_map(|w| [w.clone(), not(w)]).collect();
                with(&antecedents, &both, &mut out);
            }
            RuleTag::RExElim => {
                let refl: Vec<SymString> = lits.iter().map(|&v| not(&syntax::mk_eq(&g, &SymString::single(v), &SymString::single(v)))).collect();
                with(&antecedents, &refl, &mut out);
            }
            RuleTag::RCutA(_) => {
                let both: Vec<SymString> = pool.iter().flat_map(|w| [w.clone(), not(w)]).collect();
                with(&small, &both, &mut out);
            }
            RuleTag::RCutB(v) => {
                let succs: Vec<SymString> = pool.iter().map(|w| vcontr(&g, v, &not(w))).collect();
                with(&antecedents, &succs, &mut out);
            }
            _ => {}
        }
        out
    };
    let mut tags: Vec<RuleTag> = d1().into_iter().collect();
    tags.extend([RuleTag::RCutA(vbar), RuleTag::RCutB(vbar)]);
    let mut lines = Vec::new();
    let mut ok = true;
    for tag in tags {
        let sigma = sigma_for(tag);
        let mut tally = TagTally::default();
        let mut error: Option<anyhow::Error> = None;
        let local = tag == RuleTag::RExElim;
        for_each_instance(&g, tag, &b, &sigma, &mut |c, ps| {
            if error.is_some() || c.antecedent().len() > b.max_antecedent {
                return;
            }
            tally.instances += 1;
            let outcome = if local {
                ex_elim_locally_sound(&g, &interps, ps[0], &c)
            } else {
                (|| {
                    let mut prem = masks.all;
                    for p in ps {
                        prem &= masks.sequent(p)?;
                    }
                    Ok(prem & !masks.sequent(&c)? == 0)
                })()
            };
            match outcome {
                Ok(true) => {}
                Ok(false) => {
                    tally.failures += 1;
                    if tally.first.is_none() {
                        let ps: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                        tally.first = Some(format!("{} from [{}]", c, ps.join(", ")));
                    }
                }
                Err(e) => error = Some(e),
            }
        })?;
        if let Some(e) = error {
            return Err(e.context(format!("evaluating {tag}")));
        }
        ok &= tally.failures == 0 && tally.instances > 0;
        let mut line = format!("{tag} {}/{}", tally.instances - tally.failures, tally.instances);
        if let Some(f) = tally.first {
            line.push_str(&format!(" first failure {f}"));
        }
        lines.push(line);
    }
    Ok((ok, format!("64 interpretations; {}", lines.join(", "))))
}

/// The eigen-literal form: whenever every variant of `i` at the renamed
/// literals models the premise, `i` models the conclusion.
fn ex_elim_locally_sound(g: &Language, interps: &[FiniteInterpretation], p: &Sequent, c: &Sequent) -> Result<bool> {
    let inner: BTreeSet<SymbolId> = symbols_of(c.strings());
    let eigen: Vec<SymbolId> =
        symbols_of(p.strings()).into_iter().filter(|&s| g.is_literal(s) && !inner.contains(&s)).collect();
    for i in interps {
        if models(g, i, c)? {
            continue;
        }
        let mut all = true;
        for j in variants(g, i, &eigen)? {
            if !models(g, &j, p)? {
                all = false;
                break;
            }
        }
        if all {
            return Ok(false);
        }
    }
    Ok(true)
}

fn tree_derivability() -> Result<Check> {
    let g = grp()?;
    let sets = named_rule_sets(sym("v0"));
    let mut total = 0;
    let mut failures = Vec::new();
    let mut two_step = false;
    for (file, text, name) in [("corpus.drv", fixtures::CORPUS_DRV, "D1"), ("cut.drv", fixtures::CUT_DRV, "D1'")] {
        let d = &sets[name];
        for (k, tree) in formats::parse_derivations(file, text, &g)?.into_iter().enumerate() {
            total += 1;
            let v = match verify_derivation(&g, d, &tree) {
                Ok(v) => v,
                Err(rej) => {
                    failures.push(format!("{file} tree {k}: {rej}"));
                    continue;
                }
            };
            if v.depth == 2 && tree.sequent == Sequent::new([packed("134")], packed("133")) {
                two_step = true;
            }
            let b = Budgets::covering(&g, &tree.sequents());
            let reached = derivables_bounded(&g, d, v.depth, &v.leaves, &b)?;
            if !reached.contains(&tree.sequent) {
                failures.push(format!("{file} tree {k}: root {} not reached in {} steps", tree.sequent, v.depth));
            }
        }
    }
    let ok = failures.is_empty() && total >= 20 && two_step;
    let mut detail = format!("{total} trees, two-step derivation present: {two_step}");
    if !failures.is_empty() {
        detail.push_str(&format!("; {}", failures.join("; ")));
    }
    Ok((ok, detail))
}

fn random_sequent(rng: &mut ChaCha8Rng, pool: &[SymString]) -> Sequent {
    let n = rng.random_range(0..=2);
    let ante: Vec<SymString> = (0..n).map(|_| pool[rng.random_range(0..pool.len())].clone()).collect();
    Sequent::new(ante, pool[rng.random_range(0..pool.len())].clone())
}

fn monotonicity(seed: u64) -> Result<Check> {
    let g = grp()?;
    let d = d1();
    let atoms: Vec<SymString> = ["133", "134", "143", "144"].iter().map(|t| packed(t)).collect();
    let mut pool = atoms.clone();
    pool.extend(atoms.iter().map(|a| syntax::mk_not(&g, a)));
    let b = Budgets { literal_budget: vec![sym("3"), sym("4")], formula_pool: pool.clone(), ..Budgets::default() };
    let premise_tags: Vec<RuleTag> = d.iter().copied().filter(|t| !t.is_axiom()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x8);
    let (mut admitted, mut violations) = (0, Vec::new());
    for case in 0..500 {
        let sigma1: Vec<Sequent> = (0..rng.random_range(1..=4)).map(|_| random_sequent(&mut rng, &pool)).collect();
        let mut sigma2 = sigma1.clone();
        sigma2.extend((0..rng.random_range(0..=3)).map(|_| random_sequent(&mut rng, &pool)));
        let mut target = random_sequent(&mut rng, &pool);
        if rng.random_bool(0.5) {
            let tag = premise_tags[rng.random_range(0..premise_tags.len())];
            let mut produced = Vec::new();
            for_each_instance(&g, tag, &b, &sigma1, &mut |c, _| produced.push(c))?;
            if !produced.is_empty() {
                target = produced.swap_remove(rng.random_range(0..produced.len()));
            }
        }
        if one_step_admits(&g, &d, &sigma1, &target) {
            admitted += 1;
            if !one_step_admits(&g, &d, &sigma2, &target) {
                violations.push(format!("case {case}: {target}"));
            }
        }
    }
    let small = Budgets {
        literal_budget: vec![sym("3"), sym("4")],
        formula_pool: vec![packed("133"), packed("134")],
        max_antecedent: 2,
        ..Budgets::default()
    };
    let mut sizes = Vec::new();
    let mut chain_ok = true;
    let mut prev = derivables_bounded(&g, &d, 0, &BTreeSet::new(), &small)?;
    sizes.push(prev.len());
    for n in 1..=4 {
        let next = derivables_bounded(&g, &d, n, &BTreeSet::new(), &small)?;
        chain_ok &= prev.is_subset(&next);
        sizes.push(next.len());
        prev = next;
    }
    let ok = violations.is_empty() && chain_ok && admitted > 0;
    let mut detail = format!(
        "500 triples, {admitted} admitted by the smaller set, {} violations; S_0..S_4 sizes {:?} nested: {chain_ok}",
        violations.len(),
        sizes
    );
    if !violations.is_empty() {
        detail.push_str(&format!("; {}", violations.iter().take(3).cloned().collect::<Vec<_>>().join("; ")));
    }
    Ok((ok, detail))
}

fn add_f_decided() -> Result<Check> {
    let g = grp()?;
    let enumeration = EnumerationPair::canonical(&g, &[sym("3"), sym("4")], 1, 0)?;
    let b = Budgets { literal_budget: vec![sym("3"), sym("4")], max_steps: 3, ..Budgets::default() };
    let n = 20;
    let (x, report) = enlarge::add_f_chain(&g, &d1(), &[], &enumeration, n, &b)?;
    let mut replay: Vec<SymString> = Vec::new();
    let mut monotone = true;
    let mut unflagged_conflicts = Vec::new();
    let mut flagged_conflicts = 0;
    for step in &report.steps {
        let before = replay.clone();
        let added = step.added.clone().ok_or_else(|| anyhow!("step {} added nothing", step.index))?;
        let complement = syntax::xnot(&g, &added)?;
        let clashes = before.contains(&complement)
            || before.iter().any(|u| *u == syntax::mk_not(&g, &added) || added == syntax::mk_not(&g, u));
        if clashes {
            if step.flagged {
                flagged_conflicts += 1;
            } else {
                unflagged_conflicts.push(step.index);
            }
        }
        if !replay.contains(&added) {
            replay.push(added);
        }
        monotone &= before.iter().all(|w| replay.contains(w));
    }
    monotone &= replay == x;
    let undecided: Vec<usize> = (0..n)
        .filter(|&k| {
            let f = enumeration.formula(k).expect("enumeration long enough");
            !x.contains(f) && !x.contains(&syntax::mk_not(&g, f))
        })
        .collect();
    let flagged = report.flagged().count();
    let status = enlarge::syntactic_status(&g, &x, &[]);
    let ok = report.steps.len() == n && undecided.is_empty() && monotone && unflagged_conflicts.is_empty();
    Ok((
        ok,
        format!(
            "{} steps, {} undecided, monotone {monotone}, {flagged} flagged steps, {flagged_conflicts} flagged and {} unflagged complementary additions, s-consistent {}",
            report.steps.len(),
            undecided.len(),
            unflagged_conflicts.len(),
            status.s_consistent
        ),
    ))
}

fn add_w_fresh() -> Result<Check> {
    let g = grp()?;
    let thy = formats::parse_theory("existentials.thy", fixtures::EXISTENTIALS_THY, &g)?;
    let lits = vec![sym("3"), sym("4")];
    let formulas = enumerate_wffs(&g, 0, 1, &lits)?;
    let enumeration = EnumerationPair::new(lits.clone(), formulas);
    let n = enumeration.existential_count();
    let ob = OracleBudget::default();
    let (x, report) = enlarge::add_w_chain(&g, &d1(), &thy.formulas, &enumeration, n, &ob)?;
    let mut prior: Vec<SymString> = thy.formulas.clone();
    let mut stale = Vec::new();
    let mut added = 0;
    let mut unknown = 0;
    for step in &report.steps {
        unknown += usize::from(step.verdict == VerdictKind::Unknown);
        if step.action != Action::AddedWitness {
            continue;
        }
        let w = step.added.clone().ok_or_else(|| anyhow!("witness step {} without a formula", step.index))?;
        let (v, phi) = syntax::as_existential(&g, &step.formula).ok_or_else(|| anyhow!("step {} not existential", step.index))?;
        if let Some(k) = phi.iter().position(|&s| s == v) {
            let fresh = w[k];
            let seen = symbols_of(prior.iter().chain([&step.formula]));
            if seen.contains(&fresh) {
                stale.push(format!("{fresh} in step {}", step.index));
            }
        }
        added += 1;
        if !prior.contains(&w) {
            prior.push(w);
        }
    }
    let restricted: Vec<SymString> =
        thy.formulas.iter().cloned().chain(x.iter().filter(|w| !thy.formulas.contains(w)).cloned()).collect();
    let witnessed = thy.formulas.iter().all(|e| {
        let (v, phi) = syntax::as_existential(&g, e).expect("fixture existentials");
        !enlarge::witnesses_in(&g, v, &phi, &restricted).is_empty()
    });
    let status = enlarge::syntactic_status(&g, &x, &[]);
    let ok = stale.is_empty() && witnessed && status.witnessed && prior == x;
    let mut detail = format!(
        "{} steps, {added} witnesses added, {unknown} unknown verdicts, fixture existentials witnessed {witnessed}, final set witnessed {}",
        report.steps.len(),
        status.witnessed
    );
    if !stale.is_empty() {
        detail.push_str(&format!("; reused literals {}", stale.join(", ")));
    }
    Ok((ok, detail))
}

fn henkin_demo() -> Result<Check> {
    let g = grp()?;
    let d = d1();
    let pool = [packed("3"), packed("4")];
    let thy = formats::parse_theory("henkin.thy", fixtures::HENKIN_THY, &g)?;
    let b = Budgets {
        literal_budget: vec![sym("3"), sym("4")],
        formula_pool: thy.formulas.clone(),
        max_steps: 3,
        ..Budgets::default()
    };
    let full = quotient::henkin_bounded(&g, &d, &thy.formulas, &pool, &b)?;
    let empty = quotient::henkin_bounded(&g, &d, &[], &pool, &b)?;
    let one_class = full.classes == vec![pool.to_vec()];
    let singletons = empty.classes == vec![vec![pool[0].clone()], vec![pool[1].clone()]];
    let mut table_ok = true;
    for report in [&full, &empty] {
        for row in &report.table {
            if let Some((a, c)) = syntax::as_eq(&g, &row.formula) {
                table_ok &= row.in_quotient == report.same_class(&a, &c);
            }
        }
    }
    if full.table.is_empty() {
        bail!("empty atomic table");
    }
    let ok = one_class && singletons && table_ok;
    Ok((
        ok,
        format!(
            "{{134}}: {} class(es), empty theory: {} class(es), eq rows match class equality {table_ok}, {} diagnostic rows",
            full.classes.len(),
            empty.classes.len(),
            full.diagnostics().count()
        ),
    ))
}
