//! Identities over variable alphabets and bounded checks of them in
//! finitely presented monoids.
//!
//! Identities in an infinite monoid cannot be decided here; every check is a
//! bounded search for a refuting substitution whose values are irreducible
//! words of bounded length. A verdict without a witness is reported together
//! with its bound and is never treated as a proof.

mod candidates;
mod free_pair;
mod isoterm;

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::rewrite::RewriteSystem;
use crate::word::{is_balanced, Alphabet, Substitution, Symbol, Word, WordError};

pub use candidates::{multinomial, BalancedCandidates};
pub use free_pair::{free_pair_check, Collision, FreePairError, FreePairReport};
pub use isoterm::{isoterm_check, zimin_isoterm_check, IsotermReport, IsotermStatus, Refutation};

pub const DEFAULT_IDENTITY_BOUND: usize = 3;
pub const DEFAULT_ISOTERM_BOUND: usize = 2;

#[derive(Debug, Error)]
pub enum IdentityError {
    #[error("identity must have the form `<word> = <word>`: {0:?}")]
    Syntax(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A formal equation `lhs ≈ rhs` between words over a variable alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    vars: Arc<Alphabet>,
    lhs: Word,
    rhs: Word,
}

impl Identity {
    pub fn new(lhs: Word, rhs: Word) -> Result<Self, WordError> {
        if lhs.alphabet() != rhs.alphabet() {
            return Err(WordError::AlphabetMismatch);
        }
        Ok(Identity { vars: lhs.alphabet().clone(), lhs, rhs })
    }

    /// Parses `x x y x = x y x x`; variables are declared in order of first
    /// appearance, left side first.
    pub fn parse(text: &str) -> Result<Self, IdentityError> {
        let (l, r) = split_sides(text)?;
        let mut names: Vec<&str> = Vec::new();
        for tok in l.split_whitespace().chain(r.split_whitespace()) {
            if tok != "1" && !names.contains(&tok) {
                names.push(tok);
            }
        }
        let vars = Alphabet::variables(names)?;
        Self::parse_over(&vars, text)
    }

    /// Parses an identity over a fixed variable alphabet.
    pub fn parse_over(vars: &Arc<Alphabet>, text: &str) -> Result<Self, IdentityError> {
        let (l, r) = split_sides(text)?;
        Ok(Identity::new(Word::parse(vars, l)?, Word::parse(vars, r)?)?)
    }

    pub fn vars(&self) -> &Arc<Alphabet> {
        &self.vars
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &Word {
        &self.rhs
    }

    /// Both sides are the same word letter for letter.
    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn split_sides(text: &str) -> Result<(&str, &str), IdentityError> {
    let (l, r) = text.split_once('=').ok_or_else(|| IdentityError::Syntax(text.to_string()))?;
    if r.contains('=') || l.trim().is_empty() || r.trim().is_empty() {
        return Err(IdentityError::Syntax(text.to_string()));
    }
    Ok((l, r))
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Normal forms of both sides of `id` under `s`.
pub fn evaluate(rs: &RewriteSystem, id: &Identity, s: &Substitution) -> Result<(Word, Word), WordError> {
    if s.codomain() != rs.generators() {
        return Err(WordError::AlphabetMismatch);
    }
    let l = s.apply(id.lhs())?;
    let r = s.apply(id.rhs())?;
    Ok((rs.normal_form(&l), rs.normal_form(&r)))
}

/// Holds in the additive monoid of nonnegative integers, i.e. is balanced.
pub fn holds_in_naturals(id: &Identity) -> bool {
    is_balanced(id.lhs(), id.rhs())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Fails(Substitution),
    NoWitnessUpTo(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Substitutions examined, counting up to and including the witness.
    pub searched: u64,
}

impl Verdict {
    pub fn fails(&self) -> bool {
        matches!(self.outcome, Outcome::Fails(_))
    }

    pub fn witness(&self) -> Option<&Substitution> {
        match &self.outcome {
            Outcome::Fails(s) => Some(s),
            Outcome::NoWitnessUpTo(_) => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Fails(s) => write!(f, "FAILS {s}"),
            Outcome::NoWitnessUpTo(b) => write!(f, "NO-WITNESS-UP-TO {b}"),
        }
    }
}

/// Enumerates substitutions sending each of `arity` variables to an
/// irreducible word of length at most `bound`.
///
/// Tuples are graded by their longest value; grades are visited in
/// increasing order, and within a grade in odometer order (variables in
/// declaration order, the last turning fastest, values length-lex). The
/// first refuting tuple is the least one in this order, and raising the
/// bound only appends grades, so a witness found at one bound is the
/// witness at every larger bound.
pub(crate) struct WitnessSearch<'a> {
    rs: &'a RewriteSystem,
    values: Vec<Vec<Symbol>>,
    /// `cut[g]`: number of values of length at most `g`.
    cut: Vec<usize>,
    arity: usize,
}

fn pow(base: usize, exp: usize) -> u64 {
    (base as u64).saturating_pow(exp as u32)
}

impl<'a> WitnessSearch<'a> {
    pub(crate) fn new(rs: &'a RewriteSystem, arity: usize, bound: usize) -> Self {
        let values: Vec<Vec<Symbol>> = rs.irreducible_words(bound).into_iter().map(Word::into_letters).collect();
        let cut = (0..=bound).map(|g| values.iter().filter(|v| v.len() <= g).count()).collect();
        WitnessSearch { rs, values, cut, arity }
    }

    pub(crate) fn total(&self) -> u64 {
        pow(self.values.len(), self.arity)
    }

    fn differs(&self, lhs: &[Symbol], rhs: &[Symbol], assignment: &[usize], buf: &mut (Vec<Symbol>, Vec<Symbol>)) -> bool {
        let (l, r) = buf;
        l.clear();
        r.clear();
        for v in lhs {
            l.extend_from_slice(&self.values[assignment[v.index()]]);
        }
        for v in rhs {
            r.extend_from_slice(&self.values[assignment[v.index()]]);
        }
        self.rs.reduce_in_place(l);
        self.rs.reduce_in_place(r);
        l != r
    }

    /// Scans the tuples of one grade whose first coordinate is `first`:
    /// coordinates below `limit`, at least one at or above `floor`. Returns
    /// the position within the block and the refuting tuple.
    fn scan_block(&self, lhs: &[Symbol], rhs: &[Symbol], first: usize, floor: usize, limit: usize) -> Option<(u64, Vec<usize>)> {
        let mut assignment = vec![0usize; self.arity];
        assignment[0] = first;
        let mut buf = (Vec::new(), Vec::new());
        let mut offset = 0u64;
        loop {
            if assignment.iter().any(|&i| i >= floor) {
                if self.differs(lhs, rhs, &assignment, &mut buf) {
                    return Some((offset, assignment));
                }
                offset += 1;
            }
            let mut pos = self.arity;
            loop {
                if pos == 1 {
                    return None;
                }
                pos -= 1;
                assignment[pos] += 1;
                if assignment[pos] < limit {
                    break;
                }
                assignment[pos] = 0;
            }
        }
    }

    /// Least refuting tuple and its 0-based rank in the enumeration.
    pub(crate) fn first_failure(&self, lhs: &[Symbol], rhs: &[Symbol], parallel: bool) -> Option<(u64, Vec<usize>)> {
        if lhs == rhs {
            return None;
        }
        if self.arity == 0 {
            let mut buf = (Vec::new(), Vec::new());
            return self.differs(lhs, rhs, &[], &mut buf).then(|| (0, Vec::new()));
        }
        let mut base = 0u64;
        let mut floor = 0;
        for &limit in &self.cut {
            if limit == floor {
                continue;
            }
            let rest = self.arity - 1;
            let block = |i: usize| if i >= floor { pow(limit, rest) } else { pow(limit, rest) - pow(floor, rest) };
            let run = |first: usize| self.scan_block(lhs, rhs, first, floor, limit).map(|(off, a)| (first, off, a));
            let found = if parallel {
                (0..limit).into_par_iter().find_map_first(run)
            } else {
                (0..limit).find_map(run)
            };
            if let Some((first, off, a)) = found {
                let before: u64 = (0..first).map(block).sum();
                return Some((base + before + off, a));
            }
            base += pow(limit, self.arity) - pow(floor, self.arity);
            floor = limit;
        }
        None
    }

    pub(crate) fn substitution(&self, vars: &Arc<Alphabet>, assignment: &[usize]) -> Substitution {
        let images = assignment.iter().map(|&i| Word::from_raw(self.rs.generators(), self.values[i].clone())).collect();
        Substitution::new(vars, self.rs.generators(), images).expect("assignment covers every variable")
    }
}

/// The least substitution (values: irreducible words of length at most
/// `max_sub_len`) under which the two sides have different normal forms.
pub fn find_witness(rs: &RewriteSystem, id: &Identity, max_sub_len: usize) -> Option<Substitution> {
    check_identity(rs, id, max_sub_len).witness().cloned()
}

pub fn check_identity(rs: &RewriteSystem, id: &Identity, max_sub_len: usize) -> Verdict {
    let search = WitnessSearch::new(rs, id.vars().len(), max_sub_len);
    match search.first_failure(id.lhs().letters(), id.rhs().letters(), true) {
        Some((rank, assignment)) => Verdict {
            outcome: Outcome::Fails(search.substitution(id.vars(), &assignment)),
            searched: rank + 1,
        },
        None => Verdict { outcome: Outcome::NoWitnessUpTo(max_sub_len), searched: search.total() },
    }
}
