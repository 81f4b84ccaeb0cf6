use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use log::warn;
use thiserror::Error;

use super::presentation::{Presentation, Relation};
use crate::word::{shortlex, Alphabet, Symbol, Word};

#[derive(Debug, Error)]
pub enum RewriteError {
    #[error("rule {lhs} -> {rhs} does not decrease in length-lex order")]
    NotDecreasing { lhs: Word, rhs: Word },
    #[error("rule word is over a different alphabet than the presentation")]
    AlphabetMismatch,
    #[error("rewrite system is not confluent: {0}")]
    NotConfluent(Box<CriticalPair>),
}

/// An oriented rule `lhs -> rhs` with `lhs > rhs` in length-lex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    lhs: Word,
    rhs: Word,
}

impl RewriteRule {
    pub fn new(lhs: Word, rhs: Word) -> Result<Self, RewriteError> {
        if lhs.alphabet() != rhs.alphabet() {
            return Err(RewriteError::AlphabetMismatch);
        }
        if shortlex(lhs.letters(), rhs.letters()) != Ordering::Greater {
            return Err(RewriteError::NotDecreasing { lhs, rhs });
        }
        Ok(RewriteRule { lhs, rhs })
    }

    /// Orients an equation; `None` when both sides are the same word.
    pub fn orient(u: Word, v: Word) -> Option<Self> {
        match shortlex(u.letters(), v.letters()) {
            Ordering::Greater => Some(RewriteRule { lhs: u, rhs: v }),
            Ordering::Less => Some(RewriteRule { lhs: v, rhs: u }),
            Ordering::Equal => None,
        }
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &Word {
        &self.rhs
    }

    fn sort_key(&self, other: &Self) -> Ordering {
        shortlex(self.lhs.letters(), other.lhs.letters())
            .then_with(|| shortlex(self.rhs.letters(), other.rhs.letters()))
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// A position in a word where a rule's left-hand side occurs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Redex {
    pub position: usize,
    pub rule: usize,
}

/// Two one-step descendants of an overlap of rule left-hand sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub peak: Word,
    pub left: Word,
    pub right: Word,
    /// Indices of the two overlapping rules.
    pub rules: (usize, usize),
    pub resolved: bool,
}

impl fmt::Display for CriticalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "peak {} -> ({}, {}) [{}]",
            self.peak,
            self.left,
            self.right,
            if self.resolved { "resolved" } else { "unresolved" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Confluence {
    Confluent { pairs_checked: usize },
    Unresolved(CriticalPair),
}

impl Confluence {
    pub fn is_confluent(&self) -> bool {
        matches!(self, Confluence::Confluent { .. })
    }
}

/// Rewrites `letters` to an irreducible word, always choosing the leftmost
/// redex and, among rules matching there, the lowest rule index.
pub(crate) fn reduce_with(rules: &[RewriteRule], max_lhs: usize, letters: &mut Vec<Symbol>) {
    let mut start = 0;
    'scan: loop {
        let mut pos = start;
        while pos < letters.len() {
            for rule in rules {
                let lhs = rule.lhs.letters();
                if letters[pos..].starts_with(lhs) {
                    letters.splice(pos..pos + lhs.len(), rule.rhs.letters().iter().copied());
                    // a new redex can start at most max_lhs - 1 letters before the rewrite
                    start = pos.saturating_sub(max_lhs.saturating_sub(1));
                    continue 'scan;
                }
            }
            pos += 1;
        }
        return;
    }
}

/// An oriented, length-lex terminating string rewriting system.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    presentation: Presentation,
    rules: Vec<RewriteRule>,
    max_lhs: usize,
    warnings: Vec<String>,
    confluence: OnceLock<Confluence>,
}

impl RewriteSystem {
    /// Orients every relation of `p` so that its larger side (length-lex)
    /// rewrites to the smaller one. Relations `u = u` are dropped and recorded
    /// as warnings.
    pub fn orient(p: &Presentation) -> RewriteSystem {
        let mut rules = Vec::new();
        let mut warnings = Vec::new();
        for r in p.relations() {
            match RewriteRule::orient(r.lhs.clone(), r.rhs.clone()) {
                Some(rule) => rules.push(rule),
                None => {
                    let msg = format!("dropped trivial relation {r}");
                    warn!("{msg}");
                    warnings.push(msg);
                }
            }
        }
        let mut rs = Self::assemble(p.clone(), rules);
        rs.warnings = warnings;
        rs
    }

    /// A system with explicit rules; each must be length-lex decreasing.
    pub fn with_rules(p: &Presentation, rules: Vec<RewriteRule>) -> Result<RewriteSystem, RewriteError> {
        for r in &rules {
            if r.lhs.alphabet() != p.generators() {
                return Err(RewriteError::AlphabetMismatch);
            }
            RewriteRule::new(r.lhs.clone(), r.rhs.clone())?;
        }
        Ok(Self::assemble(p.clone(), rules))
    }

    pub(crate) fn assemble(presentation: Presentation, mut rules: Vec<RewriteRule>) -> RewriteSystem {
        rules.sort_by(RewriteRule::sort_key);
        rules.dedup();
        let max_lhs = rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0);
        RewriteSystem { presentation, rules, max_lhs, warnings: Vec::new(), confluence: OnceLock::new() }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn generators(&self) -> &Arc<Alphabet> {
        self.presentation.generators()
    }

    pub fn relations(&self) -> &[Relation] {
        self.presentation.relations()
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub(crate) fn reduce_in_place(&self, letters: &mut Vec<Symbol>) {
        reduce_with(&self.rules, self.max_lhs, letters);
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        let mut letters = w.letters().to_vec();
        self.reduce_in_place(&mut letters);
        Word::from_raw(self.generators(), letters)
    }

    pub fn is_irreducible(&self, letters: &[Symbol]) -> bool {
        (0..letters.len()).all(|pos| self.rules.iter().all(|r| !letters[pos..].starts_with(r.lhs.letters())))
    }

    /// All redexes of `w`, ordered by position then rule index.
    pub fn redexes(&self, w: &Word) -> Vec<Redex> {
        let letters = w.letters();
        let mut out = Vec::new();
        for position in 0..letters.len() {
            for (rule, r) in self.rules.iter().enumerate() {
                if letters[position..].starts_with(r.lhs.letters()) {
                    out.push(Redex { position, rule });
                }
            }
        }
        out
    }

    /// Applies one rewrite step at `redex`.
    pub fn rewrite_at(&self, w: &Word, redex: Redex) -> Word {
        let rule = &self.rules[redex.rule];
        let lhs = rule.lhs.letters();
        assert!(w.letters()[redex.position..].starts_with(lhs), "no redex at {redex:?}");
        let mut letters = w.letters().to_vec();
        letters.splice(redex.position..redex.position + lhs.len(), rule.rhs.letters().iter().copied());
        Word::from_raw(self.generators(), letters)
    }

    /// Every overlap of two left-hand sides (suffix/prefix overlaps,
    /// including self-overlaps, and inclusions) with both descendants.
    pub fn critical_pairs(&self) -> Vec<CriticalPair> {
        let alphabet = self.generators();
        let mut out = Vec::new();
        let mut push = |peak: Vec<Symbol>, left: Vec<Symbol>, right: Vec<Symbol>, rules: (usize, usize)| {
            let (mut l, mut r) = (left.clone(), right.clone());
            self.reduce_in_place(&mut l);
            self.reduce_in_place(&mut r);
            out.push(CriticalPair {
                peak: Word::from_raw(alphabet, peak),
                left: Word::from_raw(alphabet, left),
                right: Word::from_raw(alphabet, right),
                rules,
                resolved: l == r,
            });
        };
        for (i, ri) in self.rules.iter().enumerate() {
            let li = ri.lhs.letters();
            for (j, rj) in self.rules.iter().enumerate() {
                let lj = rj.lhs.letters();
                // proper suffix of li equal to proper prefix of lj
                for k in 1..li.len().min(lj.len()) {
                    if li[li.len() - k..] == lj[..k] {
                        let peak = [li, &lj[k..]].concat();
                        let left = [ri.rhs.letters(), &lj[k..]].concat();
                        let right = [&li[..li.len() - k], rj.rhs.letters()].concat();
                        push(peak, left, right, (i, j));
                    }
                }
                // lj occurs inside li
                if i == j || lj.len() > li.len() || (li == lj && j < i) {
                    continue;
                }
                for p in 0..=li.len() - lj.len() {
                    if li[p..p + lj.len()] == *lj {
                        let left = ri.rhs.letters().to_vec();
                        let right = [&li[..p], rj.rhs.letters(), &li[p + lj.len()..]].concat();
                        push(li.to_vec(), left, right, (i, j));
                    }
                }
            }
        }
        out
    }

    /// Checks every critical pair; the result is cached.
    pub fn confluence(&self) -> &Confluence {
        self.confluence.get_or_init(|| {
            let pairs = self.critical_pairs();
            match pairs.iter().find(|p| !p.resolved) {
                Some(p) => Confluence::Unresolved(p.clone()),
                None => Confluence::Confluent { pairs_checked: pairs.len() },
            }
        })
    }

    pub fn is_locally_confluent(&self) -> bool {
        self.confluence().is_confluent()
    }

    pub(crate) fn require_confluent(&self) -> Result<(), RewriteError> {
        match self.confluence() {
            Confluence::Confluent { .. } => Ok(()),
            Confluence::Unresolved(p) => Err(RewriteError::NotConfluent(Box::new(p.clone()))),
        }
    }

    /// All irreducible words of length at most `max_len`, length-lex ordered.
    /// Does not require confluence.
    pub fn irreducible_words(&self, max_len: usize) -> Vec<Word> {
        let alphabet = self.generators();
        let mut all = vec![Vec::new()];
        let mut level: Vec<Vec<Symbol>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &level {
                for g in alphabet.symbols() {
                    let mut ext = w.clone();
                    ext.push(g);
                    // the prefix is irreducible, so only suffixes can match
                    if self.rules.iter().all(|r| !ext.ends_with(r.lhs.letters())) {
                        next.push(ext);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            level = next;
        }
        all.into_iter().map(|l| Word::from_raw(alphabet, l)).collect()
    }

    /// Normal forms of length at most `max_len`; requires a confluent system.
    pub fn enumerate_normal_forms(&self, max_len: usize) -> Result<Vec<Word>, RewriteError> {
        self.require_confluent()?;
        Ok(self.irreducible_words(max_len))
    }
}

impl fmt::Display for RewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn word(rs: &RewriteSystem, t: &str) -> Word {
        Word::parse(rs.generators(), t).unwrap()
    }

    fn rule_strings(rs: &RewriteSystem) -> Vec<String> {
        rs.rules().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn orient_presets() {
        let k = presets::system("k-inf").unwrap();
        assert_eq!(rule_strings(&k), ["e e -> e", "b b -> 1"]);
        let t = presets::system("t").unwrap();
        assert_eq!(rule_strings(&t), ["f f -> f", "g g -> 1", "f g f -> f"]);
    }

    #[test]
    fn orient_drops_trivial_relation() {
        let p = Presentation::from_texts(&["x"], &[("x", "x")]).unwrap();
        let rs = RewriteSystem::orient(&p);
        assert!(rs.rules().is_empty());
        assert_eq!(rs.warnings().len(), 1);
    }

    #[test]
    fn orient_flips_relations_written_small_to_large() {
        let p = Presentation::from_texts(&["a", "b"], &[("1", "a a"), ("a b", "b a")]).unwrap();
        let rs = RewriteSystem::orient(&p);
        assert_eq!(rule_strings(&rs), ["a a -> 1", "b a -> a b"]);
    }

    #[test]
    fn normal_form_examples() {
        let k = presets::system("k-inf").unwrap();
        assert_eq!(k.normal_form(&word(&k, "e e")).to_string(), "e");
        assert!(k.normal_form(&word(&k, "b b")).is_empty());
        assert_eq!(k.normal_form(&word(&k, "e b b e")).to_string(), "e");
    }

    /// D∞ = Z ⋊ C2 acting on the integers: a: n ↦ -n, b: n ↦ 1 - n. An
    /// element is (sign, shift) meaning n ↦ sign·n + shift.
    fn dihedral_value(letters: &str) -> (i64, i64) {
        letters.split_whitespace().fold((1, 0), |(s, t), g| {
            // apply the product left to right as a right action: x ↦ g(f(x))
            let (gs, gt) = match g {
                "a" => (-1, 0),
                "b" => (-1, 1),
                _ => unreachable!(),
            };
            (gs * s, gs * t + gt)
        })
    }

    #[test]
    fn dihedral_reduction_matches_group_oracle() {
        let d = presets::system("d-inf").unwrap();
        let input = "a b a b a a b a b a b a b";
        let nf = d.normal_form(&word(&d, input));
        assert_eq!(nf.to_string(), "b a b");
        assert_eq!(dihedral_value(&nf.to_string()), dihedral_value(input));
        // the two reduced words of length <= 5 with this value are unique
        assert_ne!(dihedral_value("a b a b a"), dihedral_value(input));
    }

    #[test]
    fn strategy_is_leftmost_lowest_index() {
        let p = Presentation::from_texts(&["a", "b"], &[("a b", "a"), ("a b", "b")]).unwrap();
        let rs = RewriteSystem::orient(&p);
        assert_eq!(rule_strings(&rs), ["a b -> a", "a b -> b"]);
        assert_eq!(rs.normal_form(&word(&rs, "a b")).to_string(), "a");
        assert_eq!(
            rs.redexes(&word(&rs, "a b b")),
            vec![Redex { position: 0, rule: 0 }, Redex { position: 0, rule: 1 }]
        );
        assert_eq!(rs.rewrite_at(&word(&rs, "a b"), Redex { position: 0, rule: 1 }).to_string(), "b");
    }

    #[test]
    fn with_rules_rejects_increasing_rule() {
        let p = Presentation::from_texts(&["a"], &[]).unwrap();
        let a = p.generators().clone();
        let bad = RewriteRule { lhs: Word::parse(&a, "a").unwrap(), rhs: Word::parse(&a, "a a").unwrap() };
        assert!(matches!(RewriteSystem::with_rules(&p, vec![bad]), Err(RewriteError::NotDecreasing { .. })));
    }

    fn peaks(rs: &RewriteSystem) -> Vec<String> {
        let mut v: Vec<String> = rs.critical_pairs().iter().map(|c| c.peak.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn critical_pairs_of_presets() {
        let k = presets::system("k-inf").unwrap();
        assert_eq!(peaks(&k), ["b b b", "e e e"]);
        assert!(k.critical_pairs().iter().all(|c| c.resolved));

        let t = presets::system("t").unwrap();
        assert_eq!(peaks(&t), ["f f f", "f f g f", "f g f f", "f g f g f", "g g g"]);
        assert!(t.critical_pairs().iter().all(|c| c.resolved));

        let free = RewriteSystem::orient(&Presentation::from_texts(&["x"], &[]).unwrap());
        assert!(free.critical_pairs().is_empty());
    }

    #[test]
    fn inclusion_pairs_are_found() {
        let p = Presentation::from_texts(&["a", "b"], &[("a b a", "1"), ("b", "a")]).unwrap();
        let rs = RewriteSystem::orient(&p);
        let pairs = rs.critical_pairs();
        let incl: Vec<_> = pairs.iter().filter(|c| c.peak.to_string() == "a b a").collect();
        assert_eq!(incl.len(), 1);
        assert_eq!(incl[0].right.to_string(), "a a a");
    }

    #[test]
    fn confluence_examples() {
        assert!(presets::system("k-inf").unwrap().is_locally_confluent());
        assert!(presets::system("d-inf").unwrap().is_locally_confluent());
        let p = Presentation::from_texts(&["a", "b"], &[("a b", "a"), ("a b", "b")]).unwrap();
        match RewriteSystem::orient(&p).confluence() {
            Confluence::Unresolved(pair) => assert_eq!(pair.peak.to_string(), "a b"),
            other => panic!("expected unresolved pair, got {other:?}"),
        }
    }

    #[test]
    fn enumerate_examples() {
        let k = presets::system("k-inf").unwrap();
        let nfs: Vec<String> = k.enumerate_normal_forms(3).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(nfs, ["1", "e", "b", "e b", "b e", "e b e", "b e b"]);
        assert_eq!(k.enumerate_normal_forms(0).unwrap().len(), 1);
        let d = presets::system("d-inf").unwrap();
        assert_eq!(d.enumerate_normal_forms(5).unwrap().len(), 11);

        let p = Presentation::from_texts(&["a", "b"], &[("a b", "a"), ("a b", "b")]).unwrap();
        assert!(matches!(
            RewriteSystem::orient(&p).enumerate_normal_forms(2),
            Err(RewriteError::NotConfluent(_))
        ));
    }
}
