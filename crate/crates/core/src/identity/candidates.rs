use std::sync::Arc;

use crate::word::{Alphabet, Symbol, Word};

/// `(k1 + ... + kr)! / (k1! ... kr!)`, or `None` on overflow.
pub fn multinomial(counts: &[usize]) -> Option<u128> {
    let mut result: u128 = 1;
    let mut total: u128 = 0;
    for &k in counts {
        // multiply by C(total + k, k) one factor at a time; each partial
        // product is itself a binomial coefficient, so the division is exact
        for i in 1..=k as u128 {
            total += 1;
            result = result.checked_mul(total)? / i;
        }
    }
    Some(result)
}

/// All words with the same Parikh vector as a target, streamed in
/// lexicographic (hence length-lex) order.
#[derive(Debug, Clone)]
pub struct BalancedCandidates {
    alphabet: Arc<Alphabet>,
    next: Option<Vec<Symbol>>,
}

impl BalancedCandidates {
    pub fn new(target: &Word) -> Self {
        let mut letters = target.letters().to_vec();
        letters.sort_unstable();
        BalancedCandidates { alphabet: target.alphabet().clone(), next: Some(letters) }
    }

    /// Number of candidates, the target included.
    pub fn total(target: &Word) -> Option<u128> {
        multinomial(target.parikh().counts())
    }

    /// Yields raw letter vectors instead of words.
    pub(crate) fn next_letters(&mut self) -> Option<Vec<Symbol>> {
        let current = self.next.take()?;
        self.next = next_permutation(&current);
        Some(current)
    }
}

/// Lexicographic successor among rearrangements of `letters`.
fn next_permutation(letters: &[Symbol]) -> Option<Vec<Symbol>> {
    let i = letters.windows(2).rposition(|w| w[0] < w[1])?;
    let j = letters.iter().rposition(|&s| s > letters[i])?;
    let mut out = letters.to_vec();
    out.swap(i, j);
    out[i + 1..].reverse();
    Some(out)
}

impl Iterator for BalancedCandidates {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        self.next_letters().map(|l| Word::from_raw(&self.alphabet, l))
    }
}
