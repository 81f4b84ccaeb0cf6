//! Alphabets, words, Parikh vectors, substitutions and Zimin words.
//!
//! Symbols are interned as indices into an [`Alphabet`]; the declaration
//! order of the alphabet fixes the lexicographic order used everywhere else
//! in the crate. The empty word stands for the identity element and is
//! written `1` in text.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Add;
use std::sync::Arc;

use thiserror::Error;

/// Index of a symbol inside its alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u16);

impl Symbol {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlphabetKind {
    Generators,
    Variables,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid symbol name {0:?} (expected ASCII letters/digits, not `1`)")]
    InvalidSymbolName(String),
    #[error("duplicate symbol {0:?}")]
    DuplicateSymbol(String),
    #[error("too many symbols for one alphabet")]
    AlphabetTooLarge,
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("symbol index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("empty word text (write `1` for the empty word)")]
    EmptyText,
    #[error("words are over different alphabets")]
    AlphabetMismatch,
    #[error("zimin words are indexed from 1")]
    ZiminIndex,
    #[error("zimin word Z_{needed} needs {needed} variables, alphabet has {available}")]
    NotEnoughVariables { needed: usize, available: usize },
    #[error("variable {0:?} has no assigned value")]
    UnassignedVariable(String),
    #[error("substitution assigns {got} values for {expected} variables")]
    SubstitutionArity { expected: usize, got: usize },
    #[error("malformed assignment {0:?} (expected `name=word`)")]
    MalformedAssignment(String),
}

/// An ordered set of distinct symbol names.
#[derive(Debug, Clone)]
pub struct Alphabet {
    kind: AlphabetKind,
    symbols: Vec<String>,
    lookup: HashMap<String, Symbol>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name != "1" && name.bytes().all(|b| b.is_ascii_alphanumeric())
}

impl Alphabet {
    pub fn new<I, S>(kind: AlphabetKind, names: I) -> Result<Arc<Alphabet>, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut symbols = Vec::new();
        let mut lookup = HashMap::new();
        for name in names {
            let name = name.into();
            if !valid_name(&name) {
                return Err(WordError::InvalidSymbolName(name));
            }
            if lookup.contains_key(&name) {
                return Err(WordError::DuplicateSymbol(name));
            }
            let index = u16::try_from(symbols.len()).map_err(|_| WordError::AlphabetTooLarge)?;
            lookup.insert(name.clone(), Symbol(index));
            symbols.push(name);
        }
        Ok(Arc::new(Alphabet { kind, symbols, lookup }))
    }

    pub fn generators<I, S>(names: I) -> Result<Arc<Alphabet>, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::new(AlphabetKind::Generators, names)
    }

    pub fn variables<I, S>(names: I) -> Result<Arc<Alphabet>, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::new(AlphabetKind::Variables, names)
    }

    /// The variable alphabet `x1, ..., xn`.
    pub fn numbered_variables(n: usize) -> Arc<Alphabet> {
        Self::variables((1..=n).map(|i| format!("x{i}"))).expect("generated names are valid")
    }

    pub fn kind(&self) -> AlphabetKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, symbol: Symbol) -> &str {
        &self.symbols[symbol.index()]
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.lookup.get(name).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.symbols.len()).map(|i| Symbol(i as u16))
    }
}

fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Length-then-lexicographic comparison of letter sequences.
pub fn shortlex(a: &[Symbol], b: &[Symbol]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// A finite word over an alphabet. The empty word denotes `1`.
#[derive(Clone)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    letters: Vec<Symbol>,
}

impl Word {
    pub fn empty(alphabet: &Arc<Alphabet>) -> Word {
        Word { alphabet: alphabet.clone(), letters: Vec::new() }
    }

    pub fn from_letters(alphabet: &Arc<Alphabet>, letters: Vec<Symbol>) -> Result<Word, WordError> {
        if let Some(bad) = letters.iter().find(|s| s.index() >= alphabet.len()) {
            return Err(WordError::IndexOutOfRange(bad.index()));
        }
        Ok(Word { alphabet: alphabet.clone(), letters })
    }

    /// Caller guarantees every letter indexes into `alphabet`.
    pub(crate) fn from_raw(alphabet: &Arc<Alphabet>, letters: Vec<Symbol>) -> Word {
        debug_assert!(letters.iter().all(|s| s.index() < alphabet.len()));
        Word { alphabet: alphabet.clone(), letters }
    }

    /// Parses the word text format: space-separated symbol names, or `1`.
    pub fn parse(alphabet: &Arc<Alphabet>, text: &str) -> Result<Word, WordError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(WordError::EmptyText);
        }
        if text == "1" {
            return Ok(Word::empty(alphabet));
        }
        let letters = text
            .split_whitespace()
            .map(|tok| alphabet.symbol(tok).ok_or_else(|| WordError::UnknownSymbol(tok.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word { alphabet: alphabet.clone(), letters })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Symbol> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Juxtaposition `uv`.
    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        if !same_alphabet(&self.alphabet, &other.alphabet) {
            return Err(WordError::AlphabetMismatch);
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Word { alphabet: self.alphabet.clone(), letters })
    }

    pub fn parikh(&self) -> ParikhVector {
        let mut counts = vec![0usize; self.alphabet.len()];
        for s in &self.letters {
            counts[s.index()] += 1;
        }
        ParikhVector { alphabet: self.alphabet.clone(), counts }
    }

    /// Number of occurrences of `symbol`.
    pub fn occurrences(&self, symbol: Symbol) -> usize {
        self.letters.iter().filter(|&&s| s == symbol).count()
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && same_alphabet(&self.alphabet, &other.alphabet)
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Length-lex order; ties between different alphabets fall back to the
/// alphabets' symbol lists so that `Ord` agrees with `Eq`.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.letters, &other.letters).then_with(|| {
            if same_alphabet(&self.alphabet, &other.alphabet) {
                Ordering::Equal
            } else {
                self.alphabet.symbols.cmp(&other.alphabet.symbols)
            }
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.alphabet.name(*s))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Occurrence counts of every symbol of an alphabet in a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParikhVector {
    alphabet: Arc<Alphabet>,
    counts: Vec<usize>,
}

impl ParikhVector {
    pub fn count(&self, symbol: Symbol) -> usize {
        self.counts[symbol.index()]
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.alphabet.symbol(name).map(|s| self.count(s))
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    fn by_name(&self) -> BTreeMap<&str, usize> {
        self.alphabet
            .symbols()
            .filter(|&s| self.count(s) > 0)
            .map(|s| (self.alphabet.name(s), self.count(s)))
            .collect()
    }
}

impl Add for &ParikhVector {
    type Output = ParikhVector;

    fn add(self, rhs: &ParikhVector) -> ParikhVector {
        assert!(same_alphabet(&self.alphabet, &rhs.alphabet), "parikh vectors over different alphabets");
        ParikhVector {
            alphabet: self.alphabet.clone(),
            counts: self.counts.iter().zip(&rhs.counts).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.alphabet.symbols().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}:{}", self.alphabet.name(s), self.count(s))?;
        }
        f.write_str("}")
    }
}

/// True iff every symbol occurs equally often in `u` and `v`.
pub fn is_balanced(u: &Word, v: &Word) -> bool {
    if same_alphabet(&u.alphabet, &v.alphabet) {
        return u.parikh() == v.parikh();
    }
    u.parikh().by_name() == v.parikh().by_name()
}

/// A total assignment of words over `codomain` to the symbols of `domain`.
#[derive(Clone, PartialEq, Eq)]
pub struct Substitution {
    domain: Arc<Alphabet>,
    codomain: Arc<Alphabet>,
    images: Vec<Word>,
}

impl Substitution {
    pub fn new(
        domain: &Arc<Alphabet>,
        codomain: &Arc<Alphabet>,
        images: Vec<Word>,
    ) -> Result<Substitution, WordError> {
        if images.len() != domain.len() {
            return Err(WordError::SubstitutionArity { expected: domain.len(), got: images.len() });
        }
        if images.iter().any(|w| !same_alphabet(&w.alphabet, codomain)) {
            return Err(WordError::AlphabetMismatch);
        }
        Ok(Substitution { domain: domain.clone(), codomain: codomain.clone(), images })
    }

    /// Every symbol maps to itself.
    pub fn identity(alphabet: &Arc<Alphabet>) -> Substitution {
        let images = alphabet.symbols().map(|s| Word::from_raw(alphabet, vec![s])).collect();
        Substitution { domain: alphabet.clone(), codomain: alphabet.clone(), images }
    }

    /// Parses `x=e b, y=1`. Every domain symbol must be assigned exactly once.
    pub fn parse(
        domain: &Arc<Alphabet>,
        codomain: &Arc<Alphabet>,
        text: &str,
    ) -> Result<Substitution, WordError> {
        let mut images: Vec<Option<Word>> = vec![None; domain.len()];
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) =
                part.split_once('=').ok_or_else(|| WordError::MalformedAssignment(part.to_string()))?;
            let name = name.trim();
            let symbol = domain.symbol(name).ok_or_else(|| WordError::UnknownSymbol(name.to_string()))?;
            if images[symbol.index()].is_some() {
                return Err(WordError::DuplicateSymbol(name.to_string()));
            }
            images[symbol.index()] = Some(Word::parse(codomain, value)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, w)| w.ok_or_else(|| WordError::UnassignedVariable(domain.names()[i].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Substitution { domain: domain.clone(), codomain: codomain.clone(), images })
    }

    pub fn domain(&self) -> &Arc<Alphabet> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Alphabet> {
        &self.codomain
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, symbol: Symbol) -> &Word {
        &self.images[symbol.index()]
    }

    pub fn image_of(&self, name: &str) -> Option<&Word> {
        self.domain.symbol(name).map(|s| self.image(s))
    }

    /// Replaces every letter of `w` by its image. No reduction is applied.
    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        let mut out = Vec::new();
        if same_alphabet(&w.alphabet, &self.domain) {
            self.apply_into(&w.letters, &mut out);
        } else {
            for &s in &w.letters {
                let name = w.alphabet.name(s);
                let target =
                    self.domain.symbol(name).ok_or_else(|| WordError::UnassignedVariable(name.to_string()))?;
                out.extend_from_slice(&self.images[target.index()].letters);
            }
        }
        Ok(Word { alphabet: self.codomain.clone(), letters: out })
    }

    /// Appends the image of `letters` (over the domain) to `out`.
    pub(crate) fn apply_into(&self, letters: &[Symbol], out: &mut Vec<Symbol>) {
        for &s in letters {
            out.extend_from_slice(&self.images[s.index()].letters);
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.domain.symbols().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}={}", self.domain.name(s), self.image(s))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Substitution({self})")
    }
}

/// The Zimin word `Z_n` over the first `n` symbols of `vars`:
/// `Z_1 = x1`, `Z_{k+1} = Z_k x_{k+1} Z_k`.
pub fn zimin(n: usize, vars: &Arc<Alphabet>) -> Result<Word, WordError> {
    if n == 0 {
        return Err(WordError::ZiminIndex);
    }
    if vars.len() < n {
        return Err(WordError::NotEnoughVariables { needed: n, available: vars.len() });
    }
    let mut letters = Vec::with_capacity((1usize << n) - 1);
    letters.push(Symbol(0));
    for k in 1..n {
        let prefix_len = letters.len();
        letters.push(Symbol(k as u16));
        letters.extend_from_within(..prefix_len);
    }
    Ok(Word { alphabet: vars.clone(), letters })
}

/// `Z_n` over a fresh alphabet `x1, ..., xn`.
pub fn zimin_word(n: usize) -> Result<Word, WordError> {
    zimin(n, &Alphabet::numbered_variables(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens() -> Arc<Alphabet> {
        Alphabet::generators(["e", "b"]).unwrap()
    }

    #[test]
    fn concat_examples() {
        let a = gens();
        let eb = Word::parse(&a, "e b").unwrap();
        let e = Word::parse(&a, "e").unwrap();
        assert_eq!(eb.concat(&e).unwrap().to_string(), "e b e");
        let b = Word::parse(&a, "b").unwrap();
        assert_eq!(Word::empty(&a).concat(&b).unwrap(), b);

        let x = Alphabet::numbered_variables(2);
        let u = Word::parse(&x, "x1 x2").unwrap();
        let v = Word::parse(&x, "x1").unwrap();
        assert_eq!(u.concat(&v).unwrap().to_string(), "x1 x2 x1");
        assert_eq!(u.concat(&e), Err(WordError::AlphabetMismatch));
    }

    #[test]
    fn parikh_examples() {
        let z3 = zimin_word(3).unwrap();
        let p = z3.parikh();
        assert_eq!((p.get("x1"), p.get("x2"), p.get("x3")), (Some(4), Some(2), Some(1)));
        let a = gens();
        assert_eq!(Word::empty(&a).parikh().counts(), &[0, 0]);
        let ebe = Word::parse(&a, "e b e").unwrap().parikh();
        assert_eq!((ebe.get("e"), ebe.get("b")), (Some(2), Some(1)));
        assert_eq!(ebe.to_string(), "{e:2, b:1}");
    }

    #[test]
    fn zimin_examples() {
        assert_eq!(zimin_word(1).unwrap().to_string(), "x1");
        assert_eq!(zimin_word(2).unwrap().to_string(), "x1 x2 x1");
        let z3 = zimin_word(3).unwrap();
        assert_eq!(z3.to_string(), "x1 x2 x1 x3 x1 x2 x1");
        assert_eq!(z3.len(), 7);
        assert_eq!(zimin_word(0), Err(WordError::ZiminIndex));
        let two = Alphabet::numbered_variables(2);
        assert_eq!(zimin(3, &two), Err(WordError::NotEnoughVariables { needed: 3, available: 2 }));
    }

    #[test]
    fn substitution_examples() {
        let x3 = Alphabet::numbered_variables(3);
        let z3 = zimin(3, &x3).unwrap();

        // x1 -> 1 leaves Z_2 on the remaining variables
        let rest = Alphabet::variables(["x2", "x3"]).unwrap();
        let drop_x1 = Substitution::parse(&x3, &rest, "x1=1, x2=x2, x3=x3").unwrap();
        assert_eq!(drop_x1.apply(&z3).unwrap().to_string(), "x2 x3 x2");

        let a = gens();
        let s = Substitution::parse(&x3, &a, "x1=e,x2=b,x3=b").unwrap();
        assert_eq!(s.apply(&z3).unwrap().to_string(), "e b e b e b e");

        assert_eq!(Substitution::identity(&x3).apply(&z3).unwrap(), z3);
    }

    #[test]
    fn substitution_errors() {
        let x = Alphabet::variables(["x", "y"]).unwrap();
        let a = gens();
        assert_eq!(
            Substitution::parse(&x, &a, "x=e").unwrap_err(),
            WordError::UnassignedVariable("y".into())
        );
        assert!(matches!(Substitution::parse(&x, &a, "x=e,y=q"), Err(WordError::UnknownSymbol(_))));
        assert!(matches!(Substitution::parse(&x, &a, "x e"), Err(WordError::MalformedAssignment(_))));

        let only_x = Alphabet::variables(["x"]).unwrap();
        let s = Substitution::parse(&only_x, &a, "x=e").unwrap();
        let w = Word::parse(&x, "x y").unwrap();
        assert_eq!(s.apply(&w), Err(WordError::UnassignedVariable("y".into())));
    }

    #[test]
    fn balanced_examples() {
        let v = Alphabet::variables(["x", "y"]).unwrap();
        let w = |t: &str| Word::parse(&v, t).unwrap();
        assert!(is_balanced(&w("x x y x"), &w("x y x x")));
        assert!(!is_balanced(&w("x y"), &w("x")));
        let z3 = zimin_word(3).unwrap();
        let mut shuffled = z3.letters().to_vec();
        shuffled.reverse();
        shuffled.rotate_left(2);
        assert!(is_balanced(&z3, &Word::from_letters(z3.alphabet(), shuffled).unwrap()));
    }

    #[test]
    fn text_format() {
        let a = gens();
        assert!(Word::parse(&a, "1").unwrap().is_empty());
        assert_eq!(Word::empty(&a).to_string(), "1");
        assert_eq!(Word::parse(&a, ""), Err(WordError::EmptyText));
        assert_eq!(Word::parse(&a, "e z"), Err(WordError::UnknownSymbol("z".into())));
        assert_eq!(Word::parse(&a, "e 1"), Err(WordError::UnknownSymbol("1".into())));
    }

    #[test]
    fn alphabet_validation() {
        assert_eq!(Alphabet::generators(["e", "e"]).unwrap_err(), WordError::DuplicateSymbol("e".into()));
        assert!(matches!(Alphabet::generators(["1"]), Err(WordError::InvalidSymbolName(_))));
        assert!(matches!(Alphabet::generators(["a-b"]), Err(WordError::InvalidSymbolName(_))));
        assert!(matches!(Alphabet::generators([""]), Err(WordError::InvalidSymbolName(_))));
        assert!(Alphabet::generators(Vec::<String>::new()).unwrap().is_empty());
    }

    #[test]
    fn shortlex_order_follows_declaration() {
        let a = Alphabet::generators(["e", "b"]).unwrap();
        let mut ws: Vec<Word> =
            ["b e", "e", "1", "b", "e b"].iter().map(|t| Word::parse(&a, t).unwrap()).collect();
        ws.sort();
        let shown: Vec<String> = ws.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["1", "e", "b", "e b", "b e"]);
    }
}
