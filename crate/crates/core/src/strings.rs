//! Symbol strings, the free monoid they form, and finite maps with
//! right-precedence pasting.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::language::{LanguageError, SymbolId};

/// A finite sequence of symbols.
///
/// Terms, atomic formulas and compound formulas all share this one
/// representation. The empty string exists as the monoid identity; parsers
/// reject it.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymString(Vec<SymbolId>);

impl SymString {
    pub fn new(symbols: Vec<SymbolId>) -> Self {
        SymString(symbols)
    }

    pub fn empty() -> Self {
        SymString(Vec::new())
    }

    pub fn single(s: SymbolId) -> Self {
        SymString(alloc::vec![s])
    }

    /// Reads one token per character.
    pub fn from_packed(text: &str) -> Result<Self, LanguageError> {
        text.chars()
            .filter(|c| !c.is_whitespace())
            .map(SymbolId::from_char)
            .collect::<Result<Vec<_>, _>>()
            .map(SymString)
    }

    /// Reads whitespace-separated tokens.
    pub fn from_tokens(text: &str) -> Result<Self, LanguageError> {
        text.split_whitespace()
            .map(SymbolId::new)
            .collect::<Result<Vec<_>, _>>()
            .map(SymString)
    }

    pub fn symbols(&self) -> &[SymbolId] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<SymbolId> {
        self.0
    }

    pub fn head(&self) -> Option<SymbolId> {
        self.0.first().copied()
    }

    pub fn concat(&self, other: &SymString) -> SymString {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        SymString(v)
    }

    pub fn push(&mut self, s: SymbolId) {
        self.0.push(s);
    }

    pub fn extend_from(&mut self, other: &SymString) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn contains_symbol(&self, s: SymbolId) -> bool {
        self.0.contains(&s)
    }

    /// `head * multiCat(parts)`.
    pub fn headed<'a, I>(head: SymbolId, parts: I) -> SymString
    where
        I: IntoIterator<Item = &'a SymString>,
    {
        let mut out = SymString::single(head);
        for p in parts {
            out.extend_from(p);
        }
        out
    }

    /// Renders tokens separated by spaces.
    pub fn to_token_string(&self) -> alloc::string::String {
        let mut out = alloc::string::String::new();
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(s.as_str());
        }
        out
    }

    /// Whether packed rendering is lossless (every token a single char).
    pub fn is_packable(&self) -> bool {
        self.0.iter().all(SymbolId::is_single_char)
    }
}

impl Deref for SymString {
    type Target = [SymbolId];

    fn deref(&self) -> &[SymbolId] {
        &self.0
    }
}

impl From<&[SymbolId]> for SymString {
    fn from(s: &[SymbolId]) -> Self {
        SymString(s.to_vec())
    }
}

impl FromIterator<SymbolId> for SymString {
    fn from_iter<I: IntoIterator<Item = SymbolId>>(iter: I) -> Self {
        SymString(iter.into_iter().collect())
    }
}

/// Packed when every token is one character, space separated otherwise.
impl fmt::Display for SymString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_packable() {
            for s in &self.0 {
                f.write_str(s.as_str())?;
            }
            Ok(())
        } else {
            f.write_str(&self.to_token_string())
        }
    }
}

impl fmt::Debug for SymString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// Left fold of concatenation.
pub fn multi_cat<'a, I>(parts: I) -> SymString
where
    I: IntoIterator<Item = &'a SymString>,
{
    let mut out = SymString::empty();
    for p in parts {
        out.extend_from(p);
    }
    out
}

/// Union of the symbol ranges of the given strings.
pub fn symbols_of<'a, I>(strings: I) -> BTreeSet<SymbolId>
where
    I: IntoIterator<Item = &'a SymString>,
{
    strings.into_iter().flat_map(|w| w.0.iter().copied()).collect()
}

/// A finite function, kept sorted by key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteMap<K: Ord, V>(BTreeMap<K, V>);

impl<K: Ord, V> Default for FiniteMap<K, V> {
    fn default() -> Self {
        FiniteMap(BTreeMap::new())
    }
}

impl<K: Ord + Clone, V: Clone + PartialEq> FiniteMap<K, V> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a map from pairs; `None` if two pairs share a key with
    /// different values.
    pub fn from_pairs<I: IntoIterator<Item = (K, V)>>(pairs: I) -> Option<Self> {
        let mut m = BTreeMap::new();
        for (k, v) in pairs {
            if let Some(old) = m.get(&k) {
                if *old != v {
                    return None;
                }
            }
            m.insert(k, v);
        }
        Some(FiniteMap(m))
    }

    pub fn get(&self, k: &K) -> Option<&V> {
        self.0.get(k)
    }

    pub fn contains_key(&self, k: &K) -> bool {
        self.0.contains_key(k)
    }

    pub fn insert(&mut self, k: K, v: V) -> Option<V> {
        self.0.insert(k, v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &V)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.0.keys()
    }

    /// `self ◁ other`: defined on both domains, `other` wins on its own.
    pub fn paste_right(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (k, v) in &other.0 {
            m.insert(k.clone(), v.clone());
        }
        FiniteMap(m)
    }

    /// Whether the two maps give equal values on every shared key.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.0.iter().all(|(k, v)| other.0.get(k).is_none_or(|w| w == v))
    }

    /// Set union of the graphs; `None` unless the maps agree.
    pub fn union(&self, other: &Self) -> Option<Self> {
        Self::from_pairs(self.0.iter().chain(other.0.iter()).map(|(k, v)| (k.clone(), v.clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SymString {
        SymString::from_packed(s).unwrap()
    }

    #[test]
    fn concat_and_identity() {
        assert_eq!(p("ab").concat(&p("c")), p("abc"));
        assert_eq!(p("ab").concat(&SymString::empty()), p("ab"));
        assert_eq!(SymString::empty().concat(&p("ab")), p("ab"));
    }

    #[test]
    fn multi_cat_examples() {
        assert_eq!(multi_cat(&[p("12"), p("3"), p("45")]), p("12345"));
        assert_eq!(multi_cat(&[p("7")]), p("7"));
        assert_eq!(multi_cat(&[]), SymString::empty());
    }

    #[test]
    fn symbols_of_examples() {
        let s = symbols_of(&[p("133")]);
        assert_eq!(s.into_iter().collect::<Vec<_>>(), p("13").into_vec());
        assert!(symbols_of(&[]).is_empty());
    }

    #[test]
    fn pasting() {
        let f = FiniteMap::from_pairs([(1, 'a')]).unwrap();
        let g = FiniteMap::from_pairs([(1, 'b')]).unwrap();
        assert_eq!(f.paste_right(&g), g);
        let h = FiniteMap::from_pairs([(2, 'c')]).unwrap();
        assert_eq!(f.paste_right(&h), FiniteMap::from_pairs([(1, 'a'), (2, 'c')]).unwrap());
        assert!(FiniteMap::from_pairs([(1, 'a'), (1, 'b')]).is_none());
        assert!(!f.agrees_with(&g));
        assert_eq!(f.union(&g), None);
    }

    #[test]
    fn display_modes() {
        assert_eq!(alloc::format!("{}", p("133")), "133");
        let w = SymString::from_tokens("1 v0 3").unwrap();
        assert_eq!(alloc::format!("{w}"), "1 v0 3");
    }
}
