//! Finite monoids materialized from confluent rewriting systems, their Cayley
//! tables, and homomorphisms from finitely presented monoids onto them.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::identity::Identity;
use crate::rewrite::{RewriteError, RewriteSystem};
use crate::word::{Alphabet, Symbol, Word, WordError};

pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Debug, Error)]
pub enum FiniteError {
    #[error("monoid has more than {budget} elements (possibly infinite)")]
    BudgetExceeded { budget: usize },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

#[derive(Debug, Error)]
pub enum HomError {
    #[error("relation {relation} violated: {lhs_image} != {rhs_image}")]
    RelationViolated { relation: String, lhs_image: Word, rhs_image: Word },
    #[error("generator {0:?} has no image")]
    UnmappedGenerator(String),
    #[error("generator {0:?} is mapped twice")]
    DuplicateGenerator(String),
    #[error("malformed generator map entry {0:?} (expected `gen=elementWord`)")]
    Malformed(String),
    #[error("source and target alphabets do not match the generator map")]
    AlphabetMismatch,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A finite monoid whose elements are normal-form words, ordered length-lex.
/// Element 0 is the identity.
#[derive(Debug, Clone)]
pub struct FiniteMonoid {
    system: RewriteSystem,
    elements: Vec<Word>,
    lookup: HashMap<Vec<Symbol>, usize>,
    /// `action[x][g]` is the element `x·g` for generator `g`.
    action: Vec<Vec<usize>>,
    table: Vec<usize>,
}

impl FiniteMonoid {
    /// Breadth-first closure of `{1}` under right multiplication by the
    /// generators. Fails if more than `budget` elements appear.
    pub fn build(rs: &RewriteSystem, budget: usize) -> Result<FiniteMonoid, FiniteError> {
        rs.require_confluent()?;
        let gens = rs.generators().len();
        let mut found: HashMap<Vec<Symbol>, usize> = HashMap::new();
        let mut words: Vec<Vec<Symbol>> = vec![Vec::new()];
        found.insert(Vec::new(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in rs.generators().symbols() {
                let mut next = words[x].clone();
                next.push(g);
                rs.reduce_in_place(&mut next);
                if !found.contains_key(&next) {
                    if words.len() == budget {
                        return Err(FiniteError::BudgetExceeded { budget });
                    }
                    found.insert(next.clone(), words.len());
                    queue.push_back(words.len());
                    words.push(next);
                }
            }
        }

        words.sort_by(|a, b| crate::word::shortlex(a, b));
        let lookup: HashMap<Vec<Symbol>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let action = words
            .iter()
            .map(|w| {
                rs.generators()
                    .symbols()
                    .map(|g| {
                        let mut next = w.clone();
                        next.push(g);
                        rs.reduce_in_place(&mut next);
                        lookup[&next]
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        debug_assert!(action.iter().all(|row| row.len() == gens));

        let n = words.len();
        let mut table = vec![0; n * n];
        for x in 0..n {
            for (y, w) in words.iter().enumerate() {
                table[x * n + y] = w.iter().fold(x, |acc, g| action[acc][g.index()]);
            }
        }
        let elements = words.into_iter().map(|w| Word::from_raw(rs.generators(), w)).collect();
        Ok(FiniteMonoid { system: rs.clone(), elements, lookup, action, table })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn element(&self, x: usize) -> &Word {
        &self.elements[x]
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.system
    }

    pub fn generators(&self) -> &Arc<Alphabet> {
        self.system.generators()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.len() + y]
    }

    /// The element represented by any word over the generators.
    pub fn evaluate(&self, letters: &[Symbol]) -> usize {
        letters.iter().fold(0, |acc, g| self.action[acc][g.index()])
    }

    /// Resolves a word (not necessarily reduced) to its element index.
    pub fn element_of(&self, w: &Word) -> Result<usize, WordError> {
        if w.alphabet() != self.generators() {
            return Err(WordError::AlphabetMismatch);
        }
        Ok(self.evaluate(w.letters()))
    }

    /// Parses an element in word text format.
    pub fn parse_element(&self, text: &str) -> Result<usize, WordError> {
        let w = Word::parse(self.generators(), text)?;
        self.element_of(&w)
    }

    pub fn index_of_normal_form(&self, letters: &[Symbol]) -> Option<usize> {
        self.lookup.get(letters).copied()
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_idempotent(x)).collect()
    }

    /// Length of the longest normal form.
    pub fn diameter(&self) -> usize {
        self.elements.iter().map(Word::len).max().unwrap_or(0)
    }

    /// Writes the Cayley table with elements labelled by their normal forms.
    pub fn cayley_table(&self) -> String {
        let labels: Vec<String> = self.elements.iter().map(|w| w.to_string().replace(' ', "")).collect();
        let width = labels.iter().map(String::len).max().unwrap_or(1);
        let mut out = format!("{:>width$} |", "");
        for l in &labels {
            out.push_str(&format!(" {l:>width$}"));
        }
        out.push('\n');
        for (x, l) in labels.iter().enumerate() {
            out.push_str(&format!("{l:>width$} |"));
            for y in 0..self.len() {
                out.push_str(&format!(" {:>width$}", labels[self.mul(x, y)]));
            }
            out.push('\n');
        }
        out
    }

    /// Checks `u ≈ v` under every assignment of elements to the variables.
    /// Assignments are enumerated with the last variable varying fastest, so a
    /// reported counterexample is the lexicographically least one.
    pub fn holds(&self, id: &Identity) -> FiniteVerdict {
        let vars = id.vars().len();
        let n = self.len();
        let eval = |w: &Word, assignment: &[usize]| {
            w.letters().iter().fold(0, |acc, v| self.mul(acc, assignment[v.index()]))
        };
        let mut assignment = vec![0usize; vars];
        let mut checked = 0u64;
        loop {
            checked += 1;
            if eval(id.lhs(), &assignment) != eval(id.rhs(), &assignment) {
                return FiniteVerdict { counterexample: Some(assignment), checked };
            }
            // odometer step
            let mut pos = vars;
            loop {
                if pos == 0 {
                    return FiniteVerdict { counterexample: None, checked };
                }
                pos -= 1;
                assignment[pos] += 1;
                if assignment[pos] < n {
                    break;
                }
                assignment[pos] = 0;
            }
        }
    }
}

/// Result of an exhaustive identity check in a finite monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteVerdict {
    /// Element indices assigned to the identity's variables, if it fails.
    pub counterexample: Option<Vec<usize>>,
    pub checked: u64,
}

impl FiniteVerdict {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Image of every source generator, as target element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap(pub Vec<usize>);

impl GeneratorMap {
    /// Parses `e=f,b=g`; element words are resolved through the target.
    pub fn parse(text: &str, source: &Arc<Alphabet>, target: &FiniteMonoid) -> Result<Self, HomError> {
        let mut images: Vec<Option<usize>> = vec![None; source.len()];
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (g, w) = part.split_once('=').ok_or_else(|| HomError::Malformed(part.to_string()))?;
            let g = g.trim();
            let s = source.symbol(g).ok_or_else(|| WordError::UnknownSymbol(g.to_string()))?;
            if images[s.index()].is_some() {
                return Err(HomError::DuplicateGenerator(g.to_string()));
            }
            images[s.index()] = Some(target.parse_element(w)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| HomError::UnmappedGenerator(source.names()[i].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GeneratorMap(images))
    }
}

/// A validated monoid homomorphism from a presented monoid onto a finite one.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    source: RewriteSystem,
    target: FiniteMonoid,
    images: Vec<usize>,
}

impl Homomorphism {
    /// Checks that every defining relation of the source holds under the
    /// induced map.
    pub fn new(source: &RewriteSystem, map: &GeneratorMap, target: &FiniteMonoid) -> Result<Self, HomError> {
        if map.0.len() != source.generators().len() || map.0.iter().any(|&x| x >= target.len()) {
            return Err(HomError::AlphabetMismatch);
        }
        let h = Homomorphism { source: source.clone(), target: target.clone(), images: map.0.clone() };
        for r in source.relations() {
            let (l, rr) = (h.image(&r.lhs), h.image(&r.rhs));
            if l != rr {
                return Err(HomError::RelationViolated {
                    relation: r.to_string(),
                    lhs_image: target.element(l).clone(),
                    rhs_image: target.element(rr).clone(),
                });
            }
        }
        Ok(h)
    }

    pub fn source(&self) -> &RewriteSystem {
        &self.source
    }

    pub fn target(&self) -> &FiniteMonoid {
        &self.target
    }

    pub fn generator_images(&self) -> &[usize] {
        &self.images
    }

    pub fn image_letters(&self, letters: &[Symbol]) -> usize {
        letters.iter().fold(0, |acc, g| self.target.mul(acc, self.images[g.index()]))
    }

    pub fn image(&self, w: &Word) -> usize {
        self.image_letters(w.letters())
    }
}

impl fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.source.generators();
        for (i, s) in gens.symbols().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}={}", gens.name(s), self.target.element(self.images[s.index()]))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::rewrite::Presentation;

    fn t() -> FiniteMonoid {
        FiniteMonoid::build(&presets::system("t").unwrap(), 100).unwrap()
    }

    fn labels(m: &FiniteMonoid, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&x| m.element(x).to_string()).collect()
    }

    #[test]
    fn t_has_six_elements() {
        let m = t();
        let all: Vec<usize> = (0..m.len()).collect();
        assert_eq!(labels(&m, &all), ["1", "f", "g", "f g", "g f", "g f g"]);
        assert_eq!(m.diameter(), 3);
    }

    #[test]
    fn k_inf_exceeds_budget() {
        let k = presets::system("k-inf").unwrap();
        assert!(matches!(FiniteMonoid::build(&k, 100), Err(FiniteError::BudgetExceeded { budget: 100 })));
    }

    #[test]
    fn no_generators_gives_trivial_monoid() {
        let p = Presentation::parse("generators:").unwrap();
        let m = FiniteMonoid::build(&RewriteSystem::orient(&p), 10).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.idempotents(), [0]);
    }

    #[test]
    fn idempotents() {
        let m = t();
        assert_eq!(labels(&m, &m.idempotents()), ["1", "f", "f g", "g f", "g f g"]);
        let c2 = FiniteMonoid::build(&presets::system("c2").unwrap(), 10).unwrap();
        assert_eq!(c2.len(), 2);
        assert_eq!(c2.idempotents(), [0]);
    }

    #[test]
    fn cayley_table_is_associative_and_unital() {
        let m = t();
        for x in 0..m.len() {
            assert_eq!(m.mul(0, x), x);
            assert_eq!(m.mul(x, 0), x);
            for y in 0..m.len() {
                for z in 0..m.len() {
                    assert_eq!(m.mul(m.mul(x, y), z), m.mul(x, m.mul(y, z)));
                }
            }
        }
        assert!(m.cayley_table().contains("gfg |"));
    }

    #[test]
    fn hom_k_inf_onto_t() {
        let k = presets::system("k-inf").unwrap();
        let m = t();
        let map = GeneratorMap::parse("e=f,b=g", k.generators(), &m).unwrap();
        let h = Homomorphism::new(&k, &map, &m).unwrap();
        let w = |s: &str| Word::parse(k.generators(), s).unwrap();
        assert_eq!(m.element(h.image(&w("e b e"))).to_string(), "f");
        assert_eq!(m.element(h.image(&w("b"))).to_string(), "g");
        assert_eq!(h.image(&Word::empty(k.generators())), 0);
        assert_eq!(h.to_string(), "e=f,b=g");
    }

    #[test]
    fn hom_relation_violation() {
        let k = presets::system("k-inf").unwrap();
        let m = t();
        let map = GeneratorMap::parse("e=g,b=g", k.generators(), &m).unwrap();
        match Homomorphism::new(&k, &map, &m) {
            Err(HomError::RelationViolated { relation, lhs_image, rhs_image }) => {
                assert_eq!(relation, "e e = e");
                assert_eq!(lhs_image.to_string(), "1");
                assert_eq!(rhs_image.to_string(), "g");
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn identity_hom_on_t() {
        let ts = presets::system("t").unwrap();
        let m = t();
        let map = GeneratorMap::parse("f=f,g=g", ts.generators(), &m).unwrap();
        assert!(Homomorphism::new(&ts, &map, &m).is_ok());
    }

    #[test]
    fn generator_map_errors() {
        let k = presets::system("k-inf").unwrap();
        let m = t();
        assert!(matches!(GeneratorMap::parse("e=f", k.generators(), &m), Err(HomError::UnmappedGenerator(_))));
        assert!(matches!(GeneratorMap::parse("e=f,e=g", k.generators(), &m), Err(HomError::DuplicateGenerator(_))));
        assert!(matches!(GeneratorMap::parse("e:f", k.generators(), &m), Err(HomError::Malformed(_))));
        assert!(GeneratorMap::parse("e=f f g f,b=g g g", k.generators(), &m).is_ok());
    }

    #[test]
    fn holds_in_t() {
        let m = t();
        let v = m.holds(&Identity::parse("x y = y x").unwrap());
        let cx = v.counterexample.unwrap();
        assert_eq!(labels(&m, &cx), ["f", "g"]);

        let trivial = FiniteMonoid::build(&RewriteSystem::orient(&Presentation::parse("generators:").unwrap()), 1)
            .unwrap();
        assert!(trivial.holds(&Identity::parse("x y = y y x").unwrap()).holds());

        let c2 = FiniteMonoid::build(&presets::system("c2").unwrap(), 10).unwrap();
        assert!(c2.holds(&Identity::parse("x x y y = y y x x").unwrap()).holds());
    }
}
