//! Readers and writers for the line-oriented language, model, theory and
//! derivation files.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use folkit_core::calculus::{DerivationTree, Justification, RuleTag, Sequent};
use folkit_core::semantics::{Element, FiniteInterpretation, Table};
use folkit_core::{syntax, Language, SymString, SymbolClass, SymbolId};

/// A diagnostic tied to a file and a line. Line 0 means the whole file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub file: String,
    pub line: usize,
    pub reason: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}: {}", self.file, self.reason)
        } else {
            write!(f, "{}:{}: {}", self.file, self.line, self.reason)
        }
    }
}

impl std::error::Error for FormatError {}

fn err(file: &str, line: usize, reason: impl fmt::Display) -> FormatError {
    FormatError { file: file.to_string(), line, reason: reason.to_string() }
}

/// Strips a `#` comment and surrounding blanks.
fn content(line: &str) -> &str {
    match line.find('#') {
        Some(k) => line[..k].trim(),
        None => line.trim(),
    }
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|e| err(&path.display().to_string(), 0, e))
}

/// Packed text reads one token per character; otherwise tokens are
/// whitespace separated.
pub fn parse_string(text: &str, packed: bool) -> Result<SymString, folkit_core::LanguageError> {
    if packed {
        SymString::from_packed(text.trim())
    } else {
        SymString::from_tokens(text)
    }
}

pub fn show(w: &SymString, packed: bool) -> String {
    if packed && w.is_packable() {
        w.to_string()
    } else {
        w.to_token_string()
    }
}

pub fn parse_language(file: &str, text: &str) -> Result<Language, FormatError> {
    let mut eq = None;
    let mut nor = None;
    let mut pool: Option<String> = None;
    let mut symbols: BTreeMap<SymbolId, (i32, usize)> = BTreeMap::new();
    let token = |n: usize, t: &str| SymbolId::new(t).map_err(|e| err(file, n, e));
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let words: Vec<&str> = content(raw).split_whitespace().collect();
        let Some((&key, rest)) = words.split_first() else { continue };
        let mut declare = |s: SymbolId, a: i32| match symbols.insert(s, (a, n)) {
            Some((b, m)) if b != a => Err(err(file, n, format!("symbol {s} already declared with arity {b} on line {m}"))),
            _ => Ok(()),
        };
        match (key, rest) {
            ("eq", [t]) | ("nor", [t]) => {
                let slot = if key == "eq" { &mut eq } else { &mut nor };
                if slot.is_some() {
                    return Err(err(file, n, format!("second {key} line")));
                }
                *slot = Some((token(n, t)?, n));
            }
            ("sym", [t, a]) => {
                let a: i32 = a.parse().map_err(|_| err(file, n, format!("bad arity {a:?}")))?;
                declare(token(n, t)?, a)?;
            }
            ("lit", ts) if !ts.is_empty() => {
                for t in ts {
                    declare(token(n, t)?, 0)?;
                }
            }
            ("litpool", [p]) => {
                if pool.is_some() {
                    return Err(err(file, n, "second litpool line"));
                }
                pool = Some(p.to_string());
            }
            _ => return Err(err(file, n, format!("cannot read {:?}", content(raw)))),
        }
    }
    let (eq, _) = eq.ok_or_else(|| err(file, 0, "missing eq line"))?;
    let (nor, nor_line) = nor.ok_or_else(|| err(file, 0, "missing nor line"))?;
    let pools: Vec<String> = pool.into_iter().collect();
    let line_of = |s: SymbolId| symbols.get(&s).map_or(nor_line, |&(_, n)| n);
    let decl: Vec<(SymbolId, i32)> = symbols.iter().map(|(&s, &(a, _))| (s, a)).collect();
    Language::new(eq, nor, decl, &pools).map_err(|e| {
        use folkit_core::LanguageError as E;
        let line = match &e {
            E::EqArity(_) => line_of(eq),
            E::NorHasArity => line_of(nor),
            E::ConflictingArity(s) | E::UnknownSymbol(s) => line_of(*s),
            _ => 0,
        };
        err(file, line, e)
    })
}

pub fn write_language(lang: &Language) -> String {
    let mut out = String::new();
    out.push_str(&format!("eq {}\nnor {}\n", lang.eq_symbol(), lang.nor_symbol()));
    let mut lits = Vec::new();
    for (s, a) in lang.declared() {
        if s == lang.eq_symbol() {
            continue;
        }
        if a == 0 {
            lits.push(s.to_string());
        } else {
            out.push_str(&format!("sym {s} {a}\n"));
        }
    }
    if !lits.is_empty() {
        out.push_str(&format!("lit {}\n", lits.join(" ")));
    }
    for p in lang.pools() {
        out.push_str(&format!("litpool {p}\n"));
    }
    out
}

/// Reads `universe` and `interp` lines; relational values are `0` or `1`,
/// everything else names universe elements.
pub fn parse_model(file: &str, text: &str, lang: &Language) -> Result<FiniteInterpretation, FormatError> {
    let mut model: Option<FiniteInterpretation> = None;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match key {
            "universe" => {
                if model.is_some() {
                    return Err(err(file, n, "second universe line"));
                }
                let labels: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                model = Some(FiniteInterpretation::with_labels(labels).map_err(|e| err(file, n, e))?);
            }
            "interp" => {
                let m = model.as_mut().ok_or_else(|| err(file, n, "interp before universe"))?;
                let (sym, entries) = rest.split_once(':').ok_or_else(|| err(file, n, "expected `interp <sym> : …`"))?;
                let s = SymbolId::new(sym.trim()).map_err(|e| err(file, n, e))?;
                let (arity, relational) = match lang.classify(s) {
                    Ok(SymbolClass::Literal) => (0, false),
                    Ok(SymbolClass::Operational(k)) => (k as usize, false),
                    Ok(SymbolClass::Relational(k)) => (k as usize, true),
                    Ok(_) => return Err(err(file, n, format!("{s} takes no table"))),
                    Err(e) => return Err(err(file, n, e)),
                };
                let table = parse_entries(m, entries, arity, relational).map_err(|r| err(file, n, format!("{s}: {r}")))?;
                if m.table(s).is_some() {
                    return Err(err(file, n, format!("second table for {s}")));
                }
                m.set_table(s, table, relational).map_err(|e| err(file, n, e))?;
            }
            _ => return Err(err(file, n, format!("cannot read {line:?}"))),
        }
    }
    model.ok_or_else(|| err(file, 0, "missing universe line"))
}

fn parse_entries(m: &FiniteInterpretation, text: &str, arity: usize, relational: bool) -> Result<Table, String> {
    let value = |v: &str| -> Result<Element, String> {
        if relational {
            match v {
                "0" => Ok(0),
                "1" => Ok(1),
                _ => Err(format!("relational value {v:?} is not 0 or 1")),
            }
        } else {
            m.element_named(v).ok_or_else(|| format!("{v:?} is not in the universe"))
        }
    };
    let size = m.size();
    let cells = size.checked_pow(arity as u32).ok_or("table too large")?;
    let mut values: Vec<Option<Element>> = vec![None; cells];
    let mut default = None;
    let mut words = text.split_whitespace().peekable();
    while let Some(w) = words.next() {
        if w == "default" {
            let v = words.next().ok_or("default needs a value")?;
            default = Some(value(v)?);
            continue;
        }
        let (args, v) = w.split_once("->").ok_or_else(|| format!("cannot read entry {w:?}"))?;
        let args = args.strip_prefix('(').and_then(|a| a.strip_suffix(')')).unwrap_or(args);
        let args: Vec<Element> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| m.element_named(a.trim()).ok_or_else(|| format!("{a:?} is not in the universe")))
                .collect::<Result<_, _>>()?
        };
        if args.len() != arity {
            return Err(format!("entry {w:?} has {} arguments, expected {arity}", args.len()));
        }
        let k = Table::index_of(size, &args);
        if values[k].replace(value(v)?).is_some() {
            return Err(format!("entry {w:?} repeats its arguments"));
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(k, v)| v.or(default).ok_or_else(|| format!("no entry for argument tuple #{k} and no default")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Table::new(arity, values))
}

fn tuple_of(size: usize, arity: usize, mut k: usize) -> Vec<Element> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = (k % size) as Element;
        k /= size;
    }
    out
}

pub fn write_model(lang: &Language, m: &FiniteInterpretation) -> String {
    let mut out = format!("universe {}\n", m.labels().join(" "));
    for (s, t) in m.tables().iter() {
        let relational = lang.is_relational(*s);
        let show = |v: Element| if relational { v.to_string() } else { m.label(v).to_string() };
        out.push_str(&format!("interp {s} :"));
        for (k, &v) in t.values().iter().enumerate() {
            let args: Vec<&str> = tuple_of(m.size(), t.arity(), k).iter().map(|&a| m.label(a)).collect();
            if t.arity() == 0 {
                out.push_str(&format!(" ->{}", show(v)));
            } else {
                out.push_str(&format!(" ({})->{}", args.join(","), show(v)));
            }
        }
        out.push('\n');
    }
    out
}

/// A theory: one formula per line, after an optional `mode packed|tokens`
/// header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    pub packed: bool,
    pub formulas: Vec<SymString>,
}

fn mode_line(line: &str) -> Option<Result<bool, String>> {
    let rest = line.strip_prefix("mode")?;
    if !rest.starts_with(char::is_whitespace) {
        return None;
    }
    Some(match rest.trim() {
        "packed" => Ok(true),
        "tokens" => Ok(false),
        other => Err(format!("unknown mode {other:?}")),
    })
}

pub fn parse_theory(file: &str, text: &str, lang: &Language) -> Result<Theory, FormatError> {
    let mut packed = false;
    let mut seen_formula = false;
    let mut formulas = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        if !seen_formula {
            if let Some(mode) = mode_line(line) {
                packed = mode.map_err(|r| err(file, n, r))?;
                continue;
            }
        }
        seen_formula = true;
        let w = parse_string(line, packed).map_err(|e| err(file, n, e))?;
        syntax::parse_wff(lang, &w).map_err(|e| err(file, n, e))?;
        if !formulas.contains(&w) {
            formulas.push(w);
        }
    }
    Ok(Theory { packed, formulas })
}

pub fn write_theory(formulas: &[SymString], packed: bool) -> String {
    let packed = packed && formulas.iter().all(SymString::is_packable);
    let mut out = String::from(if packed { "mode packed\n" } else { "mode tokens\n" });
    for w in formulas {
        out.push_str(&show(w, packed));
        out.push('\n');
    }
    out
}

fn parse_sequent(text: &str, packed: bool, lang: &Language) -> Result<Sequent, String> {
    let (ante, succ) = text.split_once("|-").ok_or("missing |-")?;
    let read = |t: &str| -> Result<SymString, String> {
        let w = parse_string(t, packed).map_err(|e| e.to_string())?;
        syntax::parse_wff(lang, &w).map_err(|e| format!("{}: {e}", t.trim()))?;
        Ok(w)
    };
    let mut antecedent = Vec::new();
    if !ante.trim().is_empty() {
        for part in ante.split(';') {
            antecedent.push(read(part)?);
        }
    }
    Ok(Sequent::new(antecedent, read(succ)?))
}

/// Reads every tree in a derivation file. Each unindented node starts a
/// new tree; children sit two spaces deeper than their parent.
pub fn parse_derivations(file: &str, text: &str, lang: &Language) -> Result<Vec<DerivationTree>, FormatError> {
    let mut packed = false;
    let mut seen_node = false;
    // Open ancestors: (indent level, node).
    let mut stack: Vec<(usize, DerivationTree)> = Vec::new();
    let mut roots = Vec::new();
    fn close(stack: &mut Vec<(usize, DerivationTree)>, level: usize, roots: &mut Vec<DerivationTree>) {
        while stack.last().is_some_and(|(l, _)| *l >= level) {
            let (_, node) = stack.pop().expect("nonempty");
            match stack.last_mut() {
                Some((_, parent)) => parent.children.push(node),
                None => roots.push(node),
            }
        }
    }
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        if !seen_node {
            if let Some(mode) = mode_line(line) {
                packed = mode.map_err(|r| err(file, n, r))?;
                continue;
            }
        }
        seen_node = true;
        let indent = raw.len() - raw.trim_start_matches(' ').len();
        if indent % 2 != 0 || raw.starts_with('\t') {
            return Err(err(file, n, "indentation must be a multiple of two spaces"));
        }
        let level = indent / 2;
        let parent_level = stack.last().map(|(l, _)| *l);
        if level > 0 && parent_level.is_none_or(|p| level > p + 1) {
            return Err(err(file, n, "node is indented deeper than a child of the line above"));
        }
        let (head, seq) = line.split_once(':').ok_or_else(|| err(file, n, "expected `via TAG : …` or `assume : …`"))?;
        let justification = match head.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["assume"] => Justification::Assume,
            ["via", tag] => Justification::Rule(RuleTag::parse(tag).map_err(|e| err(file, n, e))?),
            _ => return Err(err(file, n, format!("cannot read node head {:?}", head.trim()))),
        };
        let sequent = parse_sequent(seq, packed, lang).map_err(|r| err(file, n, r))?;
        close(&mut stack, level, &mut roots);
        stack.push((level, DerivationTree { sequent, justification, children: Vec::new() }));
    }
    close(&mut stack, 0, &mut roots);
    if roots.is_empty() {
        return Err(err(file, 0, "no derivation trees"));
    }
    Ok(roots)
}

pub fn write_derivation(tree: &DerivationTree, packed: bool) -> String {
    let packed = packed && tree.sequents().iter().all(|s| s.strings().all(SymString::is_packable));
    let mut out = String::from(if packed { "mode packed\n" } else { "mode tokens\n" });
    write_node(tree, 0, packed, &mut out);
    out
}

fn write_node(t: &DerivationTree, level: usize, packed: bool, out: &mut String) {
    out.push_str(&"  ".repeat(level));
    match t.justification {
        Justification::Assume => out.push_str("assume :"),
        Justification::Rule(tag) => out.push_str(&format!("via {tag} :")),
    }
    let ante: Vec<String> = t.sequent.antecedent().iter().map(|w| show(w, packed)).collect();
    if !ante.is_empty() {
        out.push(' ');
        out.push_str(&ante.join(" ; "));
    }
    out.push_str(&format!(" |- {}\n", show(t.sequent.succedent(), packed)));
    for c in &t.children {
        write_node(c, level + 1, packed, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GRP: &str = "eq 1\nnor 0\nsym 2 2\nlit 3 4 5 6 7 8 9\nlitpool v\n";

    fn grp() -> Language {
        parse_language("grp.lang", GRP).unwrap()
    }

    #[test]
    fn language_round_trip() {
        let g = grp();
        assert_eq!(g.arity(SymbolId::new("2").unwrap()), Some(2));
        assert_eq!(parse_language("x", &write_language(&g)).unwrap(), g);
        let e = parse_language("x", "eq 1\nnor 0\nsym 2 2\nsym 2 -1\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert_eq!(parse_language("x", "nor 0\n").unwrap_err().line, 0);
    }

    #[test]
    fn model_round_trip() {
        let g = grp();
        let text = "universe 0 1\ninterp 2 : (0,0)->0 (0,1)->1 (1,0)->1 (1,1)->0\ninterp 3 : ->0\ninterp 4 : ->1\n";
        let m = parse_model("m2.model", text, &g).unwrap();
        assert_eq!(parse_model("m2.model", &write_model(&g, &m), &g).unwrap(), m);
        let bad = parse_model("m", "universe 0 1\ninterp 2 : (0,0)->0\n", &g).unwrap_err();
        assert_eq!(bad.line, 2);
        let ok = parse_model("m", "universe 0 1\ninterp 2 : (0,0)->1 default 0\n", &g).unwrap();
        assert_eq!(ok.table(SymbolId::new("2").unwrap()).unwrap().values(), &[1, 0, 0, 0]);
    }

    #[test]
    fn derivation_round_trip() {
        let g = grp();
        let text = "mode packed\nvia RUnion : 134 |- 133\n  via REq : |- 133\nvia R0 : 134 |- 134\n";
        let trees = parse_derivations("d", text, &g).unwrap();
        assert_eq!(trees.len(), 2);
        assert_eq!(trees[0].depth(), 2);
        let again = parse_derivations("d", &write_derivation(&trees[0], true), &g).unwrap();
        assert_eq!(again, vec![trees[0].clone()]);
        let bad = parse_derivations("d", "mode packed\nvia R0 : 134 |- 134\n      via REq : |- 133\n", &g).unwrap_err();
        assert_eq!(bad.line, 3);
    }

    #[test]
    fn theory_modes() {
        let g = grp();
        let t = parse_theory("t", "# comment\nmode packed\n134\n134\n0134134\n", &g).unwrap();
        assert_eq!(t.formulas.len(), 2);
        let t = parse_theory("t", "1 v0 3\n", &g).unwrap();
        assert_eq!(t.formulas[0].len(), 3);
        assert_eq!(parse_theory("t", "mode packed\n13\n", &g).unwrap_err().line, 2);
    }
}
