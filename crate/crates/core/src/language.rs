//! Languages: a signed arity map, the equality symbol, the NOR connective and
//! an inexhaustible pool of literals.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Longest token a [`SymbolId`] can hold, in bytes.
pub const MAX_TOKEN_LEN: usize = 8;

/// Longest accepted literal-pool prefix, in bytes.
pub const MAX_POOL_PREFIX_LEN: usize = 4;

/// A symbol, identified by its token text.
///
/// The text is stored inline (zero padded), so ids are `Copy` and compare by
/// token bytes.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId([u8; MAX_TOKEN_LEN]);

impl SymbolId {
    pub fn new(token: &str) -> Result<Self, LanguageError> {
        let bytes = token.as_bytes();
        if bytes.is_empty() {
            return Err(LanguageError::EmptyToken);
        }
        if bytes.len() > MAX_TOKEN_LEN {
            return Err(LanguageError::TokenTooLong(token.to_string()));
        }
        if bytes.contains(&0) || token.chars().any(char::is_whitespace) {
            return Err(LanguageError::BadToken(token.to_string()));
        }
        let mut buf = [0u8; MAX_TOKEN_LEN];
        buf[..bytes.len()].copy_from_slice(bytes);
        Ok(SymbolId(buf))
    }

    /// Single-character token, as used by packed input.
    pub fn from_char(c: char) -> Result<Self, LanguageError> {
        let mut tmp = [0u8; 4];
        Self::new(c.encode_utf8(&mut tmp))
    }

    pub fn as_str(&self) -> &str {
        let len = self.0.iter().position(|&b| b == 0).unwrap_or(MAX_TOKEN_LEN);
        // Built from a &str and cut at a char boundary by construction.
        core::str::from_utf8(&self.0[..len]).unwrap_or("")
    }

    /// Whether the token is exactly one character.
    pub fn is_single_char(&self) -> bool {
        let mut chars = self.as_str().chars();
        chars.next().is_some() && chars.next().is_none()
    }
}

impl fmt::Display for SymbolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for SymbolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "'{}'", self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolClass {
    Literal,
    Operational(u32),
    Relational(u32),
    EqualitySymbol,
    NorConnective,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LanguageError {
    #[error("empty token")]
    EmptyToken,
    #[error("token {0:?} is longer than {MAX_TOKEN_LEN} bytes")]
    TokenTooLong(String),
    #[error("token {0:?} contains whitespace or NUL")]
    BadToken(String),
    #[error("unknown symbol {0}")]
    UnknownSymbol(SymbolId),
    #[error("equality and NOR must be distinct symbols")]
    Degenerate,
    #[error("the equality symbol must have arity -2, got {0}")]
    EqArity(i32),
    #[error("the NOR connective must not carry an arity")]
    NorHasArity,
    #[error("symbol {0} declared with conflicting arities")]
    ConflictingArity(SymbolId),
    #[error("the equality symbol must be kept")]
    MissingSpecialSymbol,
    #[error("no literal pool is left; the literals would be finite")]
    FiniteLiteralPool,
    #[error("literal pool prefix {0:?} must be 1..={MAX_POOL_PREFIX_LEN} bytes")]
    BadPoolPrefix(String),
    #[error("literal pool {0:?} collides with existing symbols or pools")]
    PoolCollision(String),
    #[error("no literal pool with prefix {0:?}")]
    UnknownPool(String),
}

/// A first-order language.
///
/// `declared` holds every explicitly declared symbol (the equality symbol
/// included). Pool literals `prefix0`, `prefix1`, ... are implicit members of
/// the arity map with arity 0. The first pool is the one fresh literals are
/// drawn from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Language {
    eq: SymbolId,
    nor: SymbolId,
    declared: BTreeMap<SymbolId, i32>,
    pools: Vec<String>,
}

impl Language {
    pub fn new<I, P>(eq: SymbolId, nor: SymbolId, symbols: I, pools: P) -> Result<Self, LanguageError>
    where
        I: IntoIterator<Item = (SymbolId, i32)>,
        P: IntoIterator,
        P::Item: AsRef<str>,
    {
        if eq == nor {
            return Err(LanguageError::Degenerate);
        }
        let mut declared = BTreeMap::new();
        declared.insert(eq, -2);
        for (s, a) in symbols {
            if s == nor {
                return Err(LanguageError::NorHasArity);
            }
            if s == eq && a != -2 {
                return Err(LanguageError::EqArity(a));
            }
            if let Some(&old) = declared.get(&s) {
                if old != a {
                    return Err(LanguageError::ConflictingArity(s));
                }
            }
            declared.insert(s, a);
        }
        let mut lang = Language { eq, nor, declared, pools: Vec::new() };
        for p in pools {
            lang = lang.extend(p.as_ref())?;
        }
        if lang.pools.is_empty() {
            return Err(LanguageError::FiniteLiteralPool);
        }
        Ok(lang)
    }

    pub fn eq_symbol(&self) -> SymbolId {
        self.eq
    }

    pub fn nor_symbol(&self) -> SymbolId {
        self.nor
    }

    /// Explicitly declared symbols and their arities (pool literals excluded).
    pub fn declared(&self) -> impl Iterator<Item = (SymbolId, i32)> + '_ {
        self.declared.iter().map(|(&s, &a)| (s, a))
    }

    pub fn pools(&self) -> &[String] {
        &self.pools
    }

    /// `Some((pool, k))` when `s` is the `k`-th literal of pool number `pool`.
    pub fn pool_index(&self, s: SymbolId) -> Option<(usize, u64)> {
        let text = s.as_str();
        self.pools.iter().enumerate().find_map(|(i, p)| {
            let rest = text.strip_prefix(p.as_str())?;
            parse_index(rest).map(|k| (i, k))
        })
    }

    /// The `k`-th literal of the primary pool.
    pub fn pool_literal(&self, k: u64) -> SymbolId {
        self.pool_literal_in(0, k)
    }

    pub fn pool_literal_in(&self, pool: usize, k: u64) -> SymbolId {
        let text = alloc::format!("{}{}", self.pools[pool], k);
        SymbolId::new(&text).expect("pool literal index exhausted the token width")
    }

    pub fn arity(&self, s: SymbolId) -> Option<i32> {
        match self.declared.get(&s) {
            Some(&a) => Some(a),
            None if self.pool_index(s).is_some() => Some(0),
            None => None,
        }
    }

    pub fn classify(&self, s: SymbolId) -> Result<SymbolClass, LanguageError> {
        if s == self.nor {
            return Ok(SymbolClass::NorConnective);
        }
        if s == self.eq {
            return Ok(SymbolClass::EqualitySymbol);
        }
        match self.arity(s) {
            None => Err(LanguageError::UnknownSymbol(s)),
            Some(0) => Ok(SymbolClass::Literal),
            Some(a) if a > 0 => Ok(SymbolClass::Operational(a as u32)),
            Some(a) => Ok(SymbolClass::Relational(a.unsigned_abs())),
        }
    }

    pub fn is_literal(&self, s: SymbolId) -> bool {
        self.arity(s) == Some(0)
    }

    /// Relational symbols include the equality symbol.
    pub fn is_relational(&self, s: SymbolId) -> bool {
        matches!(self.arity(s), Some(a) if a < 0)
    }

    pub fn operational_symbols(&self) -> impl Iterator<Item = (SymbolId, u32)> + '_ {
        self.declared().filter(|&(_, a)| a > 0).map(|(s, a)| (s, a as u32))
    }

    pub fn relational_symbols(&self) -> impl Iterator<Item = (SymbolId, u32)> + '_ {
        self.declared().filter(|&(_, a)| a < 0).map(|(s, a)| (s, a.unsigned_abs()))
    }

    pub fn declared_literals(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.declared().filter(|&(_, a)| a == 0).map(|(s, _)| s)
    }

    /// The primary-pool literal of least index outside `forbidden`.
    ///
    /// Panics only if the pool's token width is exhausted, which takes a
    /// forbidden set of at least ten thousand pool literals.
    pub fn fresh_literal(&self, forbidden: &BTreeSet<SymbolId>) -> SymbolId {
        (0u64..)
            .map(|k| self.pool_literal(k))
            .find(|v| !forbidden.contains(v))
            .expect("pool is unbounded")
    }

    /// Keeps the declared symbols in `keep` and the pools named in `pools`.
    pub fn restrict(&self, keep: &BTreeSet<SymbolId>, pools: &[&str]) -> Result<Self, LanguageError> {
        if !keep.contains(&self.eq) {
            return Err(LanguageError::MissingSpecialSymbol);
        }
        for p in pools {
            if !self.pools.iter().any(|q| q == p) {
                return Err(LanguageError::UnknownPool(p.to_string()));
            }
        }
        let kept: Vec<String> = self
            .pools
            .iter()
            .filter(|q| pools.contains(&q.as_str()))
            .cloned()
            .collect();
        if kept.is_empty() {
            return Err(LanguageError::FiniteLiteralPool);
        }
        Ok(Language {
            eq: self.eq,
            nor: self.nor,
            declared: self
                .declared
                .iter()
                .filter(|(s, _)| keep.contains(s))
                .map(|(&s, &a)| (s, a))
                .collect(),
            pools: kept,
        })
    }

    /// Adjoins a further pool of arity-0 literals.
    pub fn extend(&self, prefix: &str) -> Result<Self, LanguageError> {
        if prefix.is_empty() || prefix.len() > MAX_POOL_PREFIX_LEN || SymbolId::new(prefix).is_err() {
            return Err(LanguageError::BadPoolPrefix(prefix.to_string()));
        }
        let overlaps = |q: &String| q.starts_with(prefix) || prefix.starts_with(q.as_str());
        let hits_symbol = self
            .declared
            .keys()
            .chain(core::iter::once(&self.nor))
            .any(|s| s.as_str().strip_prefix(prefix).and_then(parse_index).is_some());
        if self.pools.iter().any(overlaps) || hits_symbol {
            return Err(LanguageError::PoolCollision(prefix.to_string()));
        }
        let mut out = self.clone();
        out.pools.push(prefix.to_string());
        Ok(out)
    }
}

fn parse_index(digits: &str) -> Option<u64> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sym(s: &str) -> SymbolId {
        SymbolId::new(s).unwrap()
    }

    fn grp() -> Language {
        let mut symbols = vec![(sym("2"), 2)];
        for d in 3..=9 {
            symbols.push((sym(&d.to_string()), 0));
        }
        Language::new(sym("1"), sym("0"), symbols, ["v"]).unwrap()
    }

    #[test]
    fn classify_group_symbols() {
        let g = grp();
        assert_eq!(g.classify(sym("2")), Ok(SymbolClass::Operational(2)));
        assert_eq!(g.classify(sym("3")), Ok(SymbolClass::Literal));
        assert_eq!(g.classify(sym("0")), Ok(SymbolClass::NorConnective));
        assert_eq!(g.classify(sym("1")), Ok(SymbolClass::EqualitySymbol));
        assert_eq!(g.classify(sym("v12")), Ok(SymbolClass::Literal));
        assert_eq!(g.classify(sym("x")), Err(LanguageError::UnknownSymbol(sym("x"))));
        assert_eq!(g.classify(sym("v01")), Err(LanguageError::UnknownSymbol(sym("v01"))));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Language::new(sym("1"), sym("1"), [], ["v"]), Err(LanguageError::Degenerate));
        assert_eq!(Language::new(sym("1"), sym("0"), [(sym("1"), 2)], ["v"]), Err(LanguageError::EqArity(2)));
        assert_eq!(Language::new(sym("1"), sym("0"), [(sym("0"), 1)], ["v"]), Err(LanguageError::NorHasArity));
        assert_eq!(
            Language::new(sym("1"), sym("0"), [], Vec::<&str>::new()),
            Err(LanguageError::FiniteLiteralPool)
        );
        assert!(matches!(
            Language::new(sym("1"), sym("0"), [(sym("v3"), 1)], ["v"]),
            Err(LanguageError::PoolCollision(_))
        ));
        assert!(SymbolId::new("abcdefghi").is_err());
    }

    #[test]
    fn fresh_literal_is_least_unforbidden() {
        let g = grp();
        assert_eq!(g.fresh_literal(&BTreeSet::new()), sym("v0"));
        let f: BTreeSet<_> = [sym("v0"), sym("v1")].into_iter().collect();
        assert_eq!(g.fresh_literal(&f), sym("v2"));
        let f: BTreeSet<_> = [sym("v1"), sym("3")].into_iter().collect();
        assert_eq!(g.fresh_literal(&f), sym("v0"));
    }

    #[test]
    fn restrict_and_extend() {
        let g = grp();
        let all: BTreeSet<_> = g.declared().map(|(s, _)| s).collect();
        assert_eq!(g.restrict(&all, &["v"]).unwrap(), g);
        let ext = g.extend("n").unwrap();
        assert_eq!(ext.classify(sym("n4")), Ok(SymbolClass::Literal));
        assert_eq!(ext.restrict(&all, &["v"]).unwrap(), g);
        assert!(matches!(g.extend("v"), Err(LanguageError::PoolCollision(_))));
        assert!(matches!(g.extend("vv"), Err(LanguageError::PoolCollision(_))));
        let no_eq: BTreeSet<_> = [sym("2")].into_iter().collect();
        assert_eq!(g.restrict(&no_eq, &["v"]), Err(LanguageError::MissingSpecialSymbol));
        assert_eq!(g.restrict(&all, &[]), Err(LanguageError::FiniteLiteralPool));
    }

    #[test]
    fn symbol_order_is_token_order() {
        assert!(sym("v1") < sym("v10"));
        assert!(sym("2") < sym("3"));
        assert_eq!(sym("v10").as_str(), "v10");
    }
}
