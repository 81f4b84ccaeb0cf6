//! Kernel classes of a homomorphism onto a finite monoid, and bounded
//! evidence that the classes which are subsemigroups are commutative.
//!
//! A kernel class is a subsemigroup exactly when its image is idempotent,
//! so only those classes are checked. Every verdict is labelled with the
//! word-length bound it was computed at; classes are typically infinite and
//! nothing here is a proof.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::finite::{FiniteMonoid, GeneratorMap, HomError, Homomorphism};
use crate::rewrite::RewriteSystem;
use crate::word::{Alphabet, Symbol, Word, WordError};

#[derive(Debug, Error)]
pub enum MalcevError {
    #[error("element {0} is not idempotent")]
    NotIdempotent(String),
    #[error("line {line}: malformed descriptor: {message}")]
    Descriptor { line: usize, message: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Irreducible source words (up to a bound) with a common image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelClass {
    pub element: usize,
    pub label: Word,
    pub is_idempotent: bool,
    pub members: Vec<Word>,
}

/// Partitions the irreducible source words of length at most `max_len` by
/// their image. One class per target element, in target order.
pub fn classify(h: &Homomorphism, max_len: usize) -> Vec<KernelClass> {
    let target = h.target();
    let mut classes: Vec<KernelClass> = (0..target.len())
        .map(|x| KernelClass {
            element: x,
            label: target.element(x).clone(),
            is_idempotent: target.is_idempotent(x),
            members: Vec::new(),
        })
        .collect();
    for w in h.source().irreducible_words(max_len) {
        classes[h.image(&w)].members.push(w);
    }
    classes
}

/// A description of the members of one kernel class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    /// `prefix (block)^k suffix` for every `k >= min_k`.
    Power { prefix: Vec<Symbol>, block: Vec<Symbol>, suffix: Vec<Symbol>, min_k: usize },
    Finite(Vec<Vec<Symbol>>),
}

impl Pattern {
    /// Instances of length at most `max_len`, length-lex ordered.
    pub fn instances(&self, max_len: usize) -> Vec<Vec<Symbol>> {
        let mut out = match self {
            Pattern::Finite(words) => words.iter().filter(|w| w.len() <= max_len).cloned().collect(),
            Pattern::Power { prefix, block, suffix, min_k } => {
                let fixed = prefix.len() + suffix.len();
                let mut out = Vec::new();
                let mut k = *min_k;
                while fixed + k * block.len() <= max_len {
                    let mut w = prefix.clone();
                    for _ in 0..k {
                        w.extend_from_slice(block);
                    }
                    w.extend_from_slice(suffix);
                    out.push(w);
                    if block.is_empty() {
                        break;
                    }
                    k += 1;
                }
                out
            }
        };
        out.sort_by(|a, b| crate::word::shortlex(a, b));
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDescriptor {
    pub element: usize,
    pub pattern: Pattern,
}

fn parse_pattern(src: &Arc<Alphabet>, text: &str) -> Result<Pattern, String> {
    let open = text.find('(').ok_or("expected `(block)^k`")?;
    let close = text.find(")^k").ok_or("expected `)^k`")?;
    if close < open {
        return Err("expected `(block)^k`".into());
    }
    let letters = |t: &str| -> Result<Vec<Symbol>, String> {
        t.split_whitespace().map(|n| src.symbol(n).ok_or_else(|| format!("unknown generator {n:?}"))).collect()
    };
    let block = letters(&text[open + 1..close])?;
    if block.is_empty() {
        return Err("the repeated block is empty".into());
    }
    let mut rest: Vec<&str> = text[close + 3..].split_whitespace().collect();
    let min_k = match rest.pop() {
        Some("k>=0") => 0,
        Some("k>0") => 1,
        _ => return Err("expected range `k>=0` or `k>0`".into()),
    };
    Ok(Pattern::Power { prefix: letters(&text[..open])?, block, suffix: letters(&rest.join(" "))?, min_k })
}

/// Parses descriptor lines:
///
/// ```text
/// class 1: singleton 1
/// class f: pattern (e b)^k e k>=0
/// class g f g: pattern (b e)^k b k>0
/// class f g: finite e b, e b e b
/// ```
///
/// Several lines for the same class describe the union of their instances.
pub fn parse_descriptors(h: &Homomorphism, text: &str) -> Result<Vec<ClassDescriptor>, MalcevError> {
    let src = h.source().generators();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let err = |message: String| MalcevError::Descriptor { line, message };
        let body = content.strip_prefix("class ").ok_or_else(|| err("expected `class`".into()))?;
        let (element, desc) = body.split_once(':').ok_or_else(|| err("expected `:`".into()))?;
        let element = h.target().parse_element(element).map_err(|e| err(e.to_string()))?;
        let desc = desc.trim();
        let (kind, arg) = desc.split_once(' ').unwrap_or((desc, ""));
        let word = |t: &str| Word::parse(src, t).map(Word::into_letters).map_err(|e| err(e.to_string()));
        let pattern = match kind {
            "singleton" => Pattern::Finite(vec![word(arg)?]),
            "finite" => Pattern::Finite(arg.split(',').map(word).collect::<Result<_, _>>()?),
            "pattern" => parse_pattern(src, arg).map_err(err)?,
            other => return Err(err(format!("unknown descriptor kind {other:?}"))),
        };
        out.push(ClassDescriptor { element, pattern });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMismatch {
    pub element: usize,
    pub label: Word,
    /// Pattern instances that are not members of the class.
    pub missing: Vec<Word>,
    /// Class members not produced by any pattern.
    pub unexpected: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescriptorMatch {
    pub matched: bool,
    pub classes_checked: usize,
    pub mismatches: Vec<ClassMismatch>,
}

/// Compares every described class with the union of its patterns' instances
/// of length at most `max_len`. Classes without a descriptor are ignored.
pub fn match_class_descriptors(h: &Homomorphism, max_len: usize, descriptors: &[ClassDescriptor]) -> DescriptorMatch {
    let src = h.source().generators();
    let classes = classify(h, max_len);
    let mut expected: BTreeMap<usize, BTreeSet<Word>> = BTreeMap::new();
    for d in descriptors {
        expected
            .entry(d.element)
            .or_default()
            .extend(d.pattern.instances(max_len).into_iter().map(|l| Word::from_raw(src, l)));
    }
    let mut mismatches = Vec::new();
    for (&element, want) in &expected {
        let class = &classes[element];
        let have: BTreeSet<Word> = class.members.iter().cloned().collect();
        if &have != want {
            mismatches.push(ClassMismatch {
                element,
                label: class.label.clone(),
                missing: want.difference(&have).cloned().collect(),
                unexpected: have.difference(want).cloned().collect(),
            });
        }
    }
    DescriptorMatch { matched: mismatches.is_empty(), classes_checked: expected.len(), mismatches }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Commutativity {
    pub bound: usize,
    pub members: usize,
    /// Unordered pairs `u < v` examined, up to and including a violation.
    pub pairs_checked: u64,
    /// The least pair `(u, v)` with `uv ≠ vu`.
    pub counterexample: Option<(Word, Word)>,
}

impl Commutativity {
    pub fn is_commutative(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `uv = vu` for all members `u < v` of the class of the idempotent
/// `q`, with lengths at most `max_len`.
pub fn class_commutative(h: &Homomorphism, q: usize, max_len: usize) -> Result<Commutativity, MalcevError> {
    let target = h.target();
    if !target.is_idempotent(q) {
        return Err(MalcevError::NotIdempotent(target.element(q).to_string()));
    }
    let rs = h.source();
    let members: Vec<Vec<Symbol>> = rs
        .irreducible_words(max_len)
        .into_iter()
        .filter(|w| h.image(w) == q)
        .map(Word::into_letters)
        .collect();
    let m = members.len();
    let violation = (0..m).into_par_iter().find_map_first(|i| {
        let (mut uv, mut vu) = (Vec::new(), Vec::new());
        (i + 1..m).find_map(|j| {
            uv.clear();
            uv.extend_from_slice(&members[i]);
            uv.extend_from_slice(&members[j]);
            vu.clear();
            vu.extend_from_slice(&members[j]);
            vu.extend_from_slice(&members[i]);
            rs.reduce_in_place(&mut uv);
            rs.reduce_in_place(&mut vu);
            (uv != vu).then_some((i, j))
        })
    });
    let total = (m * m.saturating_sub(1) / 2) as u64;
    let (pairs_checked, counterexample) = match violation {
        Some((i, j)) => {
            let before: usize = (0..i).map(|a| m - 1 - a).sum();
            let gens = rs.generators();
            (
                (before + (j - i)) as u64,
                Some((Word::from_raw(gens, members[i].clone()), Word::from_raw(gens, members[j].clone()))),
            )
        }
        None => (total, None),
    };
    Ok(Commutativity { bound: max_len, members: m, pairs_checked, counterexample })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSummary {
    pub element: usize,
    pub label: Word,
    pub idempotent: bool,
    pub members: usize,
    /// `None` for classes that are not subsemigroups; those are not checked.
    pub commutativity: Option<Commutativity>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MalcevStatus {
    Pass,
    Fail { label: Word, u: Word, v: Word },
}

/// Bounded evidence for membership in the Mal'cev product of commutative
/// semigroups by finite semigroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MalcevReport {
    pub homomorphism: String,
    pub target_size: usize,
    pub bound: usize,
    pub classes: Vec<ClassSummary>,
    pub status: MalcevStatus,
}

impl MalcevReport {
    pub fn passed(&self) -> bool {
        self.status == MalcevStatus::Pass
    }
}

impl fmt::Display for MalcevReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "homomorphism {} onto a {}-element monoid, bound {}", self.homomorphism, self.target_size, self.bound)?;
        for c in &self.classes {
            match &c.commutativity {
                Some(v) if v.is_commutative() => writeln!(
                    f,
                    "  class {}: idempotent, {} members, commutative up to length {} ({} pairs)",
                    c.label, c.members, v.bound, v.pairs_checked
                )?,
                Some(v) => {
                    let (u, w) = v.counterexample.as_ref().expect("non-commutative verdict has a pair");
                    writeln!(f, "  class {}: idempotent, {} members, NOT commutative: {u} / {w}", c.label, c.members)?
                }
                None => writeln!(f, "  class {}: not a subsemigroup, not checked ({} members)", c.label, c.members)?,
            }
        }
        match &self.status {
            MalcevStatus::Pass => write!(f, "PASS (bounded evidence up to length {})", self.bound),
            MalcevStatus::Fail { label, u, v } => write!(f, "FAIL class {label}: {u} and {v} do not commute"),
        }
    }
}

/// Validates the homomorphism, classifies the source up to `max_len`, and
/// checks commutativity of every idempotent class.
pub fn malcev_com_fin_evidence(
    source: &RewriteSystem,
    target: &FiniteMonoid,
    map: &GeneratorMap,
    max_len: usize,
) -> Result<MalcevReport, HomError> {
    let h = Homomorphism::new(source, map, target)?;
    let mut classes = Vec::new();
    let mut status = MalcevStatus::Pass;
    for class in classify(&h, max_len) {
        let commutativity = if class.is_idempotent {
            let v = class_commutative(&h, class.element, max_len).expect("class image is idempotent");
            if let (MalcevStatus::Pass, Some((u, w))) = (&status, &v.counterexample) {
                status = MalcevStatus::Fail { label: class.label.clone(), u: u.clone(), v: w.clone() };
            }
            Some(v)
        } else {
            None
        };
        classes.push(ClassSummary {
            element: class.element,
            label: class.label,
            idempotent: class.is_idempotent,
            members: class.members.len(),
            commutativity,
        });
    }
    Ok(MalcevReport { homomorphism: h.to_string(), target_size: target.len(), bound: max_len, classes, status })
}

/// Descriptors of the six kernel classes of `k-inf` onto `t` (`e=f, b=g`).
pub const K_INF_ONTO_T_DESCRIPTORS: &str = "\
class 1: singleton 1
class g: singleton b
class f: pattern (e b)^k e k>=0
class g f: pattern (b e)^k k>0
class f g: pattern (e b)^k k>0
class g f g: pattern (b e)^k b k>0
";
