use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::word::{Alphabet, Word, WordError};

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: undeclared generator {name:?}")]
    UndeclaredGenerator { line: usize, name: String },
    #[error("line {line}: duplicate generator {name:?}")]
    DuplicateGenerator { line: usize, name: String },
    #[error("missing `generators:` line")]
    MissingGenerators,
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A defining relation `lhs = rhs`. Either side may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Generators plus defining relations, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Arc<Alphabet>,
    relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(generators: Arc<Alphabet>, relations: Vec<Relation>) -> Result<Self, WordError> {
        for r in &relations {
            if r.lhs.alphabet() != &generators || r.rhs.alphabet() != &generators {
                return Err(WordError::AlphabetMismatch);
            }
        }
        Ok(Presentation { generators, relations })
    }

    /// Builds a presentation from generator names and `(lhs, rhs)` word texts.
    pub fn from_texts(generators: &[&str], relations: &[(&str, &str)]) -> Result<Self, WordError> {
        let alphabet = Alphabet::generators(generators.iter().copied())?;
        let relations = relations
            .iter()
            .map(|(l, r)| Ok(Relation { lhs: Word::parse(&alphabet, l)?, rhs: Word::parse(&alphabet, r)? }))
            .collect::<Result<Vec<_>, WordError>>()?;
        Ok(Presentation { generators: alphabet, relations })
    }

    /// Parses the presentation file format:
    ///
    /// ```text
    /// # comment
    /// generators: e b
    /// relation: e e = e
    /// relation: b b = 1
    /// ```
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut generators: Option<Arc<Alphabet>> = None;
        let mut relations = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let syntax = |message: &str| PresentationError::Syntax { line, message: message.to_string() };
            let (key, rest) = content.split_once(':').ok_or_else(|| syntax("expected `key: value`"))?;
            match key.trim() {
                "generators" => {
                    if generators.is_some() {
                        return Err(syntax("second `generators:` line"));
                    }
                    let alphabet = Alphabet::generators(rest.split_whitespace()).map_err(|e| match e {
                        WordError::DuplicateSymbol(name) => PresentationError::DuplicateGenerator { line, name },
                        WordError::InvalidSymbolName(name) => {
                            PresentationError::Syntax { line, message: format!("invalid generator name {name:?}") }
                        }
                        other => PresentationError::Word(other),
                    })?;
                    generators = Some(alphabet);
                }
                "relation" => {
                    let alphabet = generators.as_ref().ok_or_else(|| syntax("relation before `generators:`"))?;
                    let (l, r) = rest.split_once('=').ok_or_else(|| syntax("relation needs `=`"))?;
                    if r.contains('=') {
                        return Err(syntax("relation has more than one `=`"));
                    }
                    let side = |t: &str| {
                        Word::parse(alphabet, t).map_err(|e| match e {
                            WordError::UnknownSymbol(name) => PresentationError::UndeclaredGenerator { line, name },
                            WordError::EmptyText => syntax("empty relation side (write `1`)"),
                            other => PresentationError::Word(other),
                        })
                    };
                    relations.push(Relation { lhs: side(l)?, rhs: side(r)? });
                }
                other => return Err(syntax(&format!("unknown key {other:?}"))),
            }
        }
        let generators = generators.ok_or(PresentationError::MissingGenerators)?;
        Ok(Presentation { generators, relations })
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, PresentationError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| PresentationError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn generators(&self) -> &Arc<Alphabet> {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// The same presentation with generators declared in `order`.
    pub fn with_generator_order(&self, order: &[&str]) -> Result<Self, WordError> {
        let alphabet = Alphabet::generators(order.iter().copied())?;
        let relations = self
            .relations
            .iter()
            .map(|r| {
                Ok(Relation {
                    lhs: Word::parse(&alphabet, &r.lhs.to_string())?,
                    rhs: Word::parse(&alphabet, &r.rhs.to_string())?,
                })
            })
            .collect::<Result<Vec<_>, WordError>>()?;
        Ok(Presentation { generators: alphabet, relations })
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.generators.names().join(" "))?;
        for r in &self.relations {
            writeln!(f, "relation: {r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file_format() {
        let p = Presentation::parse("# K\ngenerators: e b\n\nrelation: e e = e\nrelation: b b = 1\n").unwrap();
        assert_eq!(p.generators().names(), ["e", "b"]);
        let shown: Vec<String> = p.relations().iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["e e = e", "b b = 1"]);
        assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn generators_only() {
        let p = Presentation::parse("generators: x").unwrap();
        assert_eq!(p.generators().len(), 1);
        assert!(p.relations().is_empty());
        let none = Presentation::parse("generators:").unwrap();
        assert!(none.generators().is_empty());
    }

    #[test]
    fn undeclared_generator_reports_line() {
        let err = Presentation::parse("generators: e b\n# x\nrelation: e z = e\n").unwrap_err();
        match err {
            PresentationError::UndeclaredGenerator { line, name } => {
                assert_eq!(line, 3);
                assert_eq!(name, "z");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn other_errors() {
        assert!(matches!(
            Presentation::parse("generators: e e"),
            Err(PresentationError::DuplicateGenerator { line: 1, .. })
        ));
        assert!(matches!(Presentation::parse("relation: e = e"), Err(PresentationError::Syntax { line: 1, .. })));
        assert!(matches!(Presentation::parse("# nothing\n"), Err(PresentationError::MissingGenerators)));
        assert!(matches!(
            Presentation::parse("generators: e\nrelation: e e e"),
            Err(PresentationError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            Presentation::parse("generators: e\nrelation: e = "),
            Err(PresentationError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            Presentation::parse("generators: e\nrules: e = 1"),
            Err(PresentationError::Syntax { line: 2, .. })
        ));
    }
}
