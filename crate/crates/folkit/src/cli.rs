//! Argument parsing and dispatch for the `folkit` binary.
//!
//! Exit codes: 0 success, verified or true; 1 rejected, false or a
//! counterexample; 2 unknown or budget exhausted; 3 input error.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use folkit_core::calculus::{self, rule_set, verify_derivation, ProofSearch};
use folkit_core::enlarge::{self, ChainReport, EnumerationPair, OracleBudget};
use folkit_core::quotient;
use folkit_core::semantics::{self, ModelSearch};
use folkit_core::substitution::term_subst;
use folkit_core::syntax::{self, Kind};
use folkit_core::{Budgets, DerivationTree, FiniteInterpretation, Language, RuleSet, SymString, SymbolId};

use crate::formats::{self, FormatError, Theory};
use crate::selftest;

pub const OK: i32 = 0;
pub const REJECTED: i32 = 1;
pub const UNKNOWN: i32 = 2;
pub const INPUT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "folkit", version, about = "First-order logic over flat symbol strings")]
pub struct Cli {
    /// Seed for every randomized check.
    #[arg(long, global = true, env = "FOLKIT_SEED", default_value_t = selftest::DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Language files.
    #[command(subcommand)]
    Lang(LangCommand),
    /// Classify a string as a term or wff and print its parse tree.
    Parse {
        #[command(flatten)]
        lang: LangArg,
        #[arg(long)]
        packed: bool,
        formula: String,
    },
    /// Evaluate a term or wff in a finite model.
    Eval {
        #[command(flatten)]
        lang: LangArg,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        packed: bool,
        formula: String,
    },
    /// Finite model search.
    #[command(subcommand)]
    Models(ModelsCommand),
    /// Substitute a term for a literal.
    Subst {
        #[command(flatten)]
        lang: LangArg,
        #[arg(long)]
        var: String,
        #[arg(long)]
        term: String,
        #[arg(long)]
        packed: bool,
        formula: String,
    },
    /// Derivation trees.
    #[command(subcommand)]
    Derive(DeriveCommand),
    /// Bounded forward proof search.
    Prove {
        #[command(flatten)]
        lang: LangArg,
        #[arg(long, default_value = "D1")]
        rules: String,
        #[arg(long)]
        theory: Option<PathBuf>,
        #[arg(long)]
        goal: String,
        #[arg(long)]
        packed: bool,
        #[arg(long, default_value_t = 3)]
        max_steps: usize,
        #[arg(long, default_value_t = 0)]
        term_depth: usize,
        #[command(flatten)]
        literals: LiteralsArg,
    },
    /// Bounded Henkin quotient of a theory.
    Henkin {
        #[command(flatten)]
        lang: LangArg,
        #[arg(long, default_value = "D1")]
        rules: String,
        #[arg(long)]
        theory: PathBuf,
        #[arg(long, default_value_t = 0)]
        term_depth: usize,
        #[arg(long, default_value_t = 3)]
        max_steps: usize,
        #[command(flatten)]
        literals: LiteralsArg,
    },
    /// Witness and maximization chains.
    #[command(subcommand)]
    Enlarge(EnlargeCommand),
    /// Syntactic status of a theory.
    Status {
        #[command(flatten)]
        lang: LangArg,
        #[arg(long)]
        theory: PathBuf,
        #[arg(long, default_value_t = 0)]
        cover_budget_depth: usize,
        #[command(flatten)]
        literals: LiteralsArg,
    },
    /// Run the acceptance checks.
    Selftest {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(Debug, Args)]
pub struct LangArg {
    #[arg(long = "lang")]
    pub path: PathBuf,
}

#[derive(Debug, Args)]
pub struct LiteralsArg {
    /// Literal budget, comma separated. Defaults to the literals of the
    /// inputs.
    #[arg(long, value_delimiter = ',')]
    pub literals: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum LangCommand {
    Check {
        #[command(flatten)]
        lang: LangArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum ModelsCommand {
    Find {
        #[command(flatten)]
        lang: LangArg,
        #[arg(long)]
        theory: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_universe: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum DeriveCommand {
    Verify {
        #[command(flatten)]
        lang: LangArg,
        #[arg(long, default_value = "D1")]
        rules: String,
        file: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    #[command(flatten)]
    pub lang: LangArg,
    #[arg(long, default_value = "D1")]
    pub rules: String,
    #[arg(long)]
    pub theory: Option<PathBuf>,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    #[arg(long, default_value_t = 2)]
    pub max_steps: usize,
    #[arg(long, default_value_t = 2)]
    pub max_universe: usize,
    /// Formula depth of the enumeration.
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
    #[arg(long, default_value_t = 0)]
    pub term_depth: usize,
    #[command(flatten)]
    pub literals: LiteralsArg,
}

#[derive(Debug, Subcommand)]
pub enum EnlargeCommand {
    Addw(ChainArgs),
    Addf(ChainArgs),
}

/// A report and the exit code it carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub text: String,
}

impl Report {
    fn new(code: i32, text: String) -> Self {
        Report { code, text }
    }
}

/// An input problem, already rendered as `file:line: reason`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl From<FormatError> for InputError {
    fn from(e: FormatError) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<Report, InputError>;

fn input<E: std::fmt::Display>(what: &str) -> impl FnOnce(E) -> InputError + '_ {
    move |e| InputError(format!("{what}: {e}"))
}

pub fn dispatch(cli: &Cli) -> Report {
    run(cli).unwrap_or_else(|e| Report::new(INPUT_ERROR, format!("{}\n", e.0)))
}

fn load_lang(a: &LangArg) -> Result<Language, InputError> {
    let text = formats::read_file(&a.path)?;
    Ok(formats::parse_language(&name(&a.path), &text)?)
}

fn name(p: &Path) -> String {
    p.display().to_string()
}

fn load_theory(path: &Path, lang: &Language) -> Result<Theory, InputError> {
    let text = formats::read_file(path)?;
    Ok(formats::parse_theory(&name(path), &text, lang)?)
}

fn load_optional_theory(path: &Option<PathBuf>, lang: &Language) -> Result<Theory, InputError> {
    match path {
        Some(p) => load_theory(p, lang),
        None => Ok(Theory { packed: true, formulas: Vec::new() }),
    }
}

fn argument(text: &str, packed: bool, what: &str) -> Result<SymString, InputError> {
    formats::parse_string(text, packed).map_err(input(what))
}

fn wff_argument(lang: &Language, text: &str, packed: bool, what: &str) -> Result<SymString, InputError> {
    let w = argument(text, packed, what)?;
    syntax::parse_wff(lang, &w).map_err(input(what))?;
    Ok(w)
}

fn rules(lang: &Language, name: &str) -> Result<RuleSet, InputError> {
    rule_set(lang, name).map_err(input("--rules"))
}

/// The requested literal budget, or the declared literals occurring in
/// `strings`, or the first two declared literals.
fn literal_budget<'a, I>(lang: &Language, arg: &LiteralsArg, strings: I) -> Result<Vec<SymbolId>, InputError>
where
    I: IntoIterator<Item = &'a SymString>,
{
    if !arg.literals.is_empty() {
        return arg
            .literals
            .iter()
            .map(|t| {
                let s = SymbolId::new(t.trim()).map_err(input("--literals"))?;
                if lang.is_literal(s) {
                    Ok(s)
                } else {
                    Err(InputError(format!("--literals: {s} is not a literal")))
                }
            })
            .collect();
    }
    let declared: BTreeSet<SymbolId> = lang.declared_literals().collect();
    let found: BTreeSet<SymbolId> =
        strings.into_iter().flat_map(|w| w.iter().copied()).filter(|s| declared.contains(s)).collect();
    if found.is_empty() {
        Ok(lang.declared_literals().take(2).collect())
    } else {
        Ok(found.into_iter().collect())
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Lang(LangCommand::Check { lang }) => lang_check(lang),
        Command::Parse { lang, packed, formula } => parse(&load_lang(lang)?, formula, *packed),
        Command::Eval { lang, model, packed, formula } => {
            let l = load_lang(lang)?;
            let text = formats::read_file(model)?;
            let m = formats::parse_model(&name(model), &text, &l)?;
            eval(&l, &m, formula, *packed)
        }
        Command::Models(ModelsCommand::Find { lang, theory, max_universe }) => {
            let l = load_lang(lang)?;
            let t = load_theory(theory, &l)?;
            models_find(&l, &t, *max_universe)
        }
        Command::Subst { lang, var, term, packed, formula } => {
            let l = load_lang(lang)?;
            let v = SymbolId::new(var.trim()).map_err(input("--var"))?;
            let t = argument(term, *packed, "--term")?;
            let phi = wff_argument(&l, formula, *packed, "formula")?;
            let out = term_subst(&l, v, &t, &phi).map_err(input("subst"))?;
            Ok(Report::new(OK, format!("{}\n", formats::show(&out, *packed))))
        }
        Command::Derive(DeriveCommand::Verify { lang, rules: r, file }) => {
            let l = load_lang(lang)?;
            let d = rules(&l, r)?;
            let text = formats::read_file(file)?;
            let trees = formats::parse_derivations(&name(file), &text, &l)?;
            Ok(derive_verify(&l, &d, &trees))
        }
        Command::Prove { lang, rules: r, theory, goal, packed, max_steps, term_depth, literals } => {
            let l = load_lang(lang)?;
            let d = rules(&l, r)?;
            let t = load_optional_theory(theory, &l)?;
            let goal = wff_argument(&l, goal, *packed, "--goal")?;
            let lits = literal_budget(&l, literals, t.formulas.iter().chain([&goal]))?;
            let mut pool = t.formulas.clone();
            if !pool.contains(&goal) {
                pool.push(goal.clone());
            }
            let b = Budgets { max_steps: *max_steps, term_depth: *term_depth, formula_pool: pool, literal_budget: lits, ..Budgets::default() };
            prove(&l, &d, &t.formulas, &goal, &b, *packed || t.packed)
        }
        Command::Henkin { lang, rules: r, theory, term_depth, max_steps, literals } => {
            let l = load_lang(lang)?;
            let d = rules(&l, r)?;
            let t = load_theory(theory, &l)?;
            let lits = literal_budget(&l, literals, &t.formulas)?;
            henkin(&l, &d, &t, &lits, *term_depth, *max_steps)
        }
        Command::Enlarge(EnlargeCommand::Addw(a)) => chain(a, true),
        Command::Enlarge(EnlargeCommand::Addf(a)) => chain(a, false),
        Command::Status { lang, theory, cover_budget_depth, literals } => {
            let l = load_lang(lang)?;
            let t = load_theory(theory, &l)?;
            let lits = literal_budget(&l, literals, &t.formulas)?;
            let cover = syntax::enumerate_wffs(&l, *cover_budget_depth, 0, &lits).map_err(input("--literals"))?;
            let s = enlarge::syntactic_status(&l, &t.formulas, &cover);
            let ok = s.s_consistent && s.cover_on && s.witnessed;
            let text = format!(
                "s-consistent {}\ncover {} ({} budget formulas)\nwitnessed {}\nmincover {}\n",
                s.s_consistent,
                s.cover_on,
                cover.len(),
                s.witnessed,
                s.mincover_on
            );
            Ok(Report::new(if ok { OK } else { REJECTED }, text))
        }
        Command::Selftest { only } => Ok(run_selftest(cli.seed, only)),
    }
}

fn lang_check(a: &LangArg) -> Outcome {
    let l = load_lang(a)?;
    let mut text = format!("eq {}\nnor {}\n", l.eq_symbol(), l.nor_symbol());
    let ops: Vec<String> = l.operational_symbols().map(|(s, n)| format!("{s}/{n}")).collect();
    let rels: Vec<String> = l.relational_symbols().map(|(s, n)| format!("{s}/{n}")).collect();
    let lits: Vec<String> = l.declared_literals().map(|s| s.to_string()).collect();
    let _ = writeln!(text, "operations {}", ops.join(" "));
    let _ = writeln!(text, "relations {}", rels.join(" "));
    let _ = writeln!(text, "literals {}", lits.join(" "));
    let _ = writeln!(text, "pools {}", l.pools().join(" "));
    Ok(Report::new(OK, text))
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Term => "term",
        Kind::AtomicWff => "atomic",
        Kind::ExistentialWff => "exists",
        Kind::NorWff => "nor",
    }
}

fn parse_tree(lang: &Language, w: &SymString, level: usize, packed: bool, out: &mut String) {
    let Ok(r) = syntax::parse_any(lang, w) else { return };
    let label = match r.kind {
        Kind::ExistentialWff => format!("exists {}", r.head),
        k => kind_name(k).to_string(),
    };
    let _ = writeln!(out, "{}{label} {}", "  ".repeat(level), formats::show(w, packed));
    for c in &r.children {
        if matches!(r.kind, Kind::Term | Kind::AtomicWff) && c.len() == 1 {
            let _ = writeln!(out, "{}term {}", "  ".repeat(level + 1), formats::show(c, packed));
            continue;
        }
        parse_tree(lang, c, level + 1, packed, out);
    }
}

fn parse(lang: &Language, text: &str, packed: bool) -> Outcome {
    let w = argument(text, packed, "formula")?;
    match syntax::parse_any(lang, &w) {
        Ok(r) => {
            let class = if r.kind == Kind::Term { "term" } else { "wff" };
            let mut out = format!("{class} depth={}\n", r.depth);
            parse_tree(lang, &w, 0, packed, &mut out);
            Ok(Report::new(OK, out))
        }
        Err(e) => {
            let mut out = String::from("rejected\n");
            if let Err(t) = syntax::parse_term(lang, &w) {
                let _ = writeln!(out, "{t}");
            }
            if let Err(f) = syntax::parse_wff(lang, &w) {
                let _ = writeln!(out, "{f}");
            }
            if out.lines().count() == 1 {
                let _ = writeln!(out, "{e}");
            }
            Ok(Report::new(REJECTED, out))
        }
    }
}

fn eval(lang: &Language, m: &FiniteInterpretation, text: &str, packed: bool) -> Outcome {
    let w = argument(text, packed, "formula")?;
    if syntax::is_term(lang, &w) {
        let e = semantics::term_eval(lang, m, &w).map_err(input("formula"))?;
        return Ok(Report::new(OK, format!("{}\n", m.label(e))));
    }
    syntax::parse_wff(lang, &w).map_err(input("formula"))?;
    let v = semantics::truth_eval(lang, m, &w).map_err(input("formula"))?;
    Ok(Report::new(if v { OK } else { REJECTED }, format!("{}\n", u8::from(v))))
}

fn models_find(lang: &Language, t: &Theory, max_universe: usize) -> Outcome {
    match semantics::find_model(lang, &t.formulas, max_universe, semantics::DEFAULT_SPACE_CAP).map_err(input("search"))? {
        ModelSearch::Found(m) => Ok(Report::new(OK, formats::write_model(lang, &m))),
        ModelSearch::NotFound { complete: true } => {
            Ok(Report::new(REJECTED, format!("no model with at most {max_universe} elements\n")))
        }
        ModelSearch::NotFound { complete: false } => Ok(Report::new(
            UNKNOWN,
            format!("no model found; some sizes up to {max_universe} exceeded the search cap\n"),
        )),
    }
}

fn derive_verify(lang: &Language, d: &RuleSet, trees: &[DerivationTree]) -> Report {
    let mut out = String::new();
    let mut code = OK;
    for (k, t) in trees.iter().enumerate() {
        match verify_derivation(lang, d, t) {
            Ok(v) => {
                let _ = writeln!(out, "tree {k}: verified depth={} assumptions={}", v.depth, v.leaves.len());
            }
            Err(rej) => {
                code = REJECTED;
                let _ = writeln!(out, "tree {k}: rejected at {rej}");
            }
        }
    }
    Report::new(code, out)
}

fn prove(lang: &Language, d: &RuleSet, x: &[SymString], goal: &SymString, b: &Budgets, packed: bool) -> Outcome {
    match calculus::prove_bounded(lang, d, x, goal, b).map_err(input("search"))? {
        ProofSearch::Proved(p) => {
            let text = format!("proved depth={}\n{}", p.depth, formats::write_derivation(&p.tree, packed));
            Ok(Report::new(OK, text))
        }
        ProofSearch::Unknown => Ok(Report::new(UNKNOWN, format!("unknown after {} steps\n", b.max_steps))),
    }
}

fn henkin(lang: &Language, d: &RuleSet, t: &Theory, lits: &[SymbolId], term_depth: usize, max_steps: usize) -> Outcome {
    let pool = syntax::enumerate_terms(lang, term_depth, lits).map_err(input("--literals"))?;
    let b = Budgets {
        max_steps,
        term_depth,
        formula_pool: t.formulas.clone(),
        literal_budget: lits.to_vec(),
        ..Budgets::default()
    };
    let h = quotient::henkin_bounded(lang, d, &t.formulas, &pool, &b).map_err(input("henkin"))?;
    let show = |w: &SymString| formats::show(w, t.packed);
    let mut out = format!("classes {}\n", h.classes.len());
    for c in &h.classes {
        let members: Vec<String> = c.iter().map(show).collect();
        let _ = writeln!(out, "  {{{}}}", members.join(", "));
    }
    for (a, c) in &h.closure_only {
        let _ = writeln!(out, "closure-only {} {}", show(a), show(c));
    }
    let _ = writeln!(out, "atomic table");
    for row in &h.table {
        let _ = writeln!(out, "  {} theory={} quotient={}", show(&row.formula), u8::from(row.in_theory), u8::from(row.in_quotient));
    }
    let diags: Vec<String> = h.diagnostics().map(|r| show(&r.formula)).collect();
    let _ = writeln!(out, "diagnostics {}", diags.len());
    for d in diags {
        let _ = writeln!(out, "  {d}");
    }
    Ok(Report::new(OK, out))
}

fn write_report(out: &mut String, report: &ChainReport, packed: bool) {
    for s in &report.steps {
        let added = s.added.as_ref().map_or("-".to_string(), |w| formats::show(w, packed));
        let flag = if s.flagged { " flagged" } else { "" };
        let _ = writeln!(
            out,
            "step {} {} {:?} verdict={:?} added={added}{flag}",
            s.index,
            formats::show(&s.formula, packed),
            s.action,
            s.verdict
        );
    }
}

fn chain(a: &ChainArgs, witnesses: bool) -> Outcome {
    let l = load_lang(&a.lang)?;
    let d = rules(&l, &a.rules)?;
    let t = load_optional_theory(&a.theory, &l)?;
    let lits = literal_budget(&l, &a.literals, &t.formulas)?;
    let enumeration = EnumerationPair::canonical(&l, &lits, a.depth, a.term_depth).map_err(input("--literals"))?;
    let proof = Budgets { max_steps: a.max_steps, literal_budget: lits.clone(), term_depth: a.term_depth, ..Budgets::default() };
    let (x, report) = if witnesses {
        let ob = OracleBudget { proof, max_universe: a.max_universe, ..OracleBudget::default() };
        enlarge::add_w_chain(&l, &d, &t.formulas, &enumeration, a.steps, &ob)
    } else {
        enlarge::add_f_chain(&l, &d, &t.formulas, &enumeration, a.steps, &proof)
    }
    .map_err(input("chain"))?;
    let mut out = String::new();
    write_report(&mut out, &report, t.packed);
    let flagged = report.flagged().count();
    let _ = writeln!(out, "flagged {flagged}");
    let _ = writeln!(out, "final {}", x.len());
    out.push_str(&formats::write_theory(&x, t.packed));
    Ok(Report::new(if flagged == 0 { OK } else { UNKNOWN }, out))
}

fn run_selftest(seed: u64, only: &[usize]) -> Report {
    let ids: Vec<usize> = if only.is_empty() { (1..=selftest::CRITERIA.len()).collect() } else { only.to_vec() };
    let mut out = format!("seed {seed}\n");
    let mut passed = 0;
    for &id in &ids {
        let o = selftest::run(id, seed);
        passed += usize::from(o.passed);
        let _ = writeln!(out, "{}", o.line());
    }
    let _ = writeln!(out, "selftest {passed}/{} passed", ids.len());
    Report::new(if passed == ids.len() { OK } else { REJECTED }, out)
}

/// Parses `args` and runs the command, writing the report to stdout (or
/// stderr for input errors). Returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { OK };
            let _ = e.print();
            return code;
        }
    };
    let report = dispatch(&cli);
    if report.code == INPUT_ERROR {
        eprint!("{}", report.text);
    } else {
        print!("{}", report.text);
    }
    report.code
}
