//! Derivation trees and their verification.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use super::rules::rule_admits;
use super::{RuleSet, RuleTag, Sequent};
use crate::language::Language;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Justification {
    Assume,
    Rule(RuleTag),
}

/// A sequent with its justification. Children are ordered for display only;
/// admission treats them as a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTree {
    pub sequent: Sequent,
    pub justification: Justification,
    pub children: Vec<DerivationTree>,
}

impl DerivationTree {
    pub fn assume(sequent: Sequent) -> Self {
        DerivationTree { sequent, justification: Justification::Assume, children: Vec::new() }
    }

    pub fn rule(tag: RuleTag, sequent: Sequent, children: Vec<DerivationTree>) -> Self {
        DerivationTree { sequent, justification: Justification::Rule(tag), children }
    }

    /// Assumptions count 0; a rule node counts one more than its deepest
    /// child, so a childless axiom node has depth 1.
    pub fn depth(&self) -> usize {
        match self.justification {
            Justification::Assume => 0,
            Justification::Rule(_) => 1 + self.children.iter().map(DerivationTree::depth).max().unwrap_or(0),
        }
    }

    /// Every sequent in the tree, pre-order.
    pub fn sequents(&self) -> Vec<Sequent> {
        let mut out = Vec::new();
        self.walk(&mut |t| out.push(t.sequent.clone()));
        out
    }

    fn walk<'a>(&'a self, f: &mut dyn FnMut(&'a DerivationTree)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verified {
    pub depth: usize,
    pub leaves: BTreeSet<Sequent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RejectReason {
    #[error("rule {0} is not in the ruleset")]
    RuleNotInSet(RuleTag),
    #[error("{0} does not admit this sequent from its children")]
    NotAdmitted(RuleTag),
    #[error("malformed sequent")]
    Malformed,
    #[error("an assumption cannot have children")]
    AssumptionWithChildren,
    #[error("assumption at distance {distance} from the root in a tree of depth {depth}")]
    UnbalancedAssumption { distance: usize, depth: usize },
}

/// The first failing node, as a child-index path from the root.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct Rejection {
    pub path: Vec<usize>,
    pub reason: RejectReason,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for i in &self.path {
            write!(f, ".{i}")?;
        }
        write!(f, ": {}", self.reason)
    }
}

/// Checks every rule application and returns the tree depth and its
/// assumptions.
///
/// Assumptions must all sit at distance `depth` from the root, so that the
/// root is reached from them by exactly `depth` one-step iterations.
pub fn verify_derivation(lang: &Language, d: &RuleSet, tree: &DerivationTree) -> Result<Verified, Rejection> {
    let mut path = Vec::new();
    check_node(lang, d, tree, &mut path)?;
    let depth = tree.depth();
    let mut leaves = BTreeSet::new();
    balance(tree, 0, depth, &mut path, &mut leaves)?;
    Ok(Verified { depth, leaves })
}

fn check_node(lang: &Language, d: &RuleSet, t: &DerivationTree, path: &mut Vec<usize>) -> Result<(), Rejection> {
    let reject = |path: &Vec<usize>, reason| Err(Rejection { path: path.clone(), reason });
    if t.sequent.check(lang).is_err() {
        return reject(path, RejectReason::Malformed);
    }
    match t.justification {
        Justification::Assume if !t.children.is_empty() => return reject(path, RejectReason::AssumptionWithChildren),
        Justification::Assume => {}
        Justification::Rule(tag) => {
            if !d.contains(&tag) {
                return reject(path, RejectReason::RuleNotInSet(tag));
            }
            let premises: Vec<Sequent> = t.children.iter().map(|c| c.sequent.clone()).collect();
            if premises.iter().any(|p| p.check(lang).is_err()) {
                // Reported at the child itself below.
            } else if !rule_admits(lang, tag, &premises, &t.sequent).unwrap_or(false) {
                return reject(path, RejectReason::NotAdmitted(tag));
            }
        }
    }
    for (i, c) in t.children.iter().enumerate() {
        path.push(i);
        check_node(lang, d, c, path)?;
        path.pop();
    }
    Ok(())
}

fn balance(
    t: &DerivationTree,
    distance: usize,
    depth: usize,
    path: &mut Vec<usize>,
    leaves: &mut BTreeSet<Sequent>,
) -> Result<(), Rejection> {
    if t.justification == Justification::Assume {
        if distance != depth {
            return Err(Rejection { path: path.clone(), reason: RejectReason::UnbalancedAssumption { distance, depth } });
        }
        leaves.insert(t.sequent.clone());
    }
    for (i, c) in t.children.iter().enumerate() {
        path.push(i);
        balance(c, distance + 1, depth, path, leaves)?;
        path.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::named_rule_sets;
    use crate::language::SymbolId;
    use crate::strings::SymString;
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

    #[test]
    fn two_step_equality() {
        let g = grp();
        let d1 = &named_rule_sets(s("v0"))["D1"];
        let leaf = DerivationTree::rule(RuleTag::REq, seq(&[], "133"), vec![]);
        let root = DerivationTree::rule(RuleTag::RUnion, seq(&["144"], "133"), vec![leaf.clone()]);
        let v = verify_derivation(&g, d1, &root).unwrap();
        assert_eq!((v.depth, v.leaves.len()), (2, 0));
        assert_eq!(verify_derivation(&g, d1, &leaf).unwrap().depth, 1);
    }

    #[test]
    fn rejections_point_at_the_node() {
        let g = grp();
        let d1 = &named_rule_sets(s("v0"))["D1"];
        let bad = DerivationTree::rule(RuleTag::RNor, seq(&["0133134", "0143144"], "0133143"), vec![]);
        let root = DerivationTree::rule(RuleTag::RUnion, seq(&["0133134", "0143144", "155"], "0133143"), vec![bad]);
        let r = verify_derivation(&g, d1, &root).unwrap_err();
        assert_eq!(r.path, vec![0]);
        assert_eq!(r.reason, RejectReason::NotAdmitted(RuleTag::RNor));
        let only_eq: RuleSet = [RuleTag::REq].into_iter().collect();
        let t = DerivationTree::rule(RuleTag::R0, seq(&["133"], "133"), vec![]);
        assert_eq!(verify_derivation(&g, &only_eq, &t).unwrap_err().reason, RejectReason::RuleNotInSet(RuleTag::R0));
    }

    #[test]
    fn assumptions_must_be_level() {
        let g = grp();
        let d1 = &named_rule_sets(s("v0"))["D1"];
        let a = seq(&["133"], "144");
        let b = seq(&["133"], "0144144");
        let shallow = DerivationTree::assume(a.clone());
        let deep = DerivationTree::rule(RuleTag::RUnion, b.clone(), vec![DerivationTree::assume(b.clone())]);
        let t = DerivationTree::rule(RuleTag::RContr, seq(&[], "0133133"), vec![shallow, deep]);
        assert!(matches!(
            verify_derivation(&g, d1, &t).unwrap_err().reason,
            RejectReason::UnbalancedAssumption { distance: 1, depth: 2 }
        ));
        let level = DerivationTree::rule(RuleTag::RContr, seq(&[], "0133133"), vec![DerivationTree::assume(a), DerivationTree::assume(b)]);
        let v = verify_derivation(&g, d1, &level).unwrap();
        assert_eq!((v.depth, v.leaves.len()), (1, 2));
    }
}
