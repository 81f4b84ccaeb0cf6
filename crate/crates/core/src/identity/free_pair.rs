use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::rewrite::RewriteSystem;
use crate::word::{Alphabet, Symbol, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FreePairError {
    #[error("free pair needs two distinct nonempty words")]
    Degenerate,
    #[error("words are not over the system's generators")]
    AlphabetMismatch,
}

/// Two distinct `{u, v}`-sequences with the same value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    /// Sequences over the two-letter alphabet `u v`.
    pub first: Word,
    pub second: Word,
    /// The common normal form.
    pub value: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreePairReport {
    pub free: bool,
    /// Number of nonempty sequences compared.
    pub products: usize,
    pub collision: Option<Collision>,
}

/// Checks that all `{u, v}`-sequences of length `1..=max_len` have pairwise
/// distinct normal forms. On failure the least colliding pair (first
/// component, then second, both length-lex with `u < v`) is returned.
pub fn free_pair_check(rs: &RewriteSystem, u: &Word, v: &Word, max_len: usize) -> Result<FreePairReport, FreePairError> {
    if u == v || u.is_empty() || v.is_empty() {
        return Err(FreePairError::Degenerate);
    }
    if u.alphabet() != rs.generators() || v.alphabet() != rs.generators() {
        return Err(FreePairError::AlphabetMismatch);
    }
    let labels: Arc<Alphabet> = Alphabet::variables(["u", "v"]).expect("valid names");
    // normal form -> (first sequence, second sequence if any)
    let mut seen: HashMap<Vec<Symbol>, (usize, Option<usize>)> = HashMap::new();
    let mut sequences: Vec<Vec<Symbol>> = Vec::new();
    for len in 1..=max_len {
        for bits in 0..(1u64 << len) {
            let seq: Vec<Symbol> = (0..len).rev().map(|i| Symbol(((bits >> i) & 1) as u16)).collect();
            let mut value = Vec::new();
            for s in &seq {
                value.extend_from_slice(if s.0 == 0 { u.letters() } else { v.letters() });
            }
            rs.reduce_in_place(&mut value);
            let index = sequences.len();
            seen.entry(value).and_modify(|e| {
                if e.1.is_none() {
                    e.1 = Some(index)
                }
            })
            .or_insert((index, None));
            sequences.push(seq);
        }
    }
    let least = seen
        .iter()
        .filter_map(|(value, &(a, b))| b.map(|b| (a, b, value)))
        .min_by_key(|&(a, b, _)| (a, b));
    let collision = least.map(|(a, b, value)| Collision {
        first: Word::from_raw(&labels, sequences[a].clone()),
        second: Word::from_raw(&labels, sequences[b].clone()),
        value: Word::from_raw(rs.generators(), value.clone()),
    });
    Ok(FreePairReport { free: collision.is_none(), products: sequences.len(), collision })
}
