//! String rewriting and identity checking for finitely presented monoids,
//! tuned for free products of two-element monoids such as
//! `⟨e, b | e e = e, b b = 1⟩`.
//!
//! The pieces:
//!
//! * [`word`]: alphabets, words, Parikh vectors, substitutions, Zimin words.
//! * [`rewrite`]: presentations, length-lex rewriting systems, critical pairs
//!   and bounded Knuth-Bendix completion.
//! * [`finite`]: finite monoids by closure, Cayley tables, homomorphisms.
//! * [`identity`]: identities, bounded witness search, isoterm checks and
//!   free-pair checks.
//! * [`malcev`]: evidence that a monoid is commutative-by-finite.
//! * [`report`]: the full verification run.
//!
//! Every search is bounded and says so in its result.

pub mod finite;
pub mod identity;
pub mod malcev;
pub mod presets;
pub mod report;
pub mod rewrite;
pub mod word;

use thiserror::Error;

pub use finite::{FiniteMonoid, GeneratorMap, Homomorphism};
pub use identity::{check_identity, find_witness, Identity, Outcome, Verdict};
pub use rewrite::{Presentation, RewriteSystem};
pub use word::{Alphabet, Substitution, Symbol, Word};

/// Any error raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Word(#[from] word::WordError),
    #[error(transparent)]
    Presentation(#[from] rewrite::PresentationError),
    #[error(transparent)]
    Rewrite(#[from] rewrite::RewriteError),
    #[error(transparent)]
    Finite(#[from] finite::FiniteError),
    #[error(transparent)]
    Hom(#[from] finite::HomError),
    #[error(transparent)]
    Identity(#[from] identity::IdentityError),
    #[error(transparent)]
    FreePair(#[from] identity::FreePairError),
    #[error(transparent)]
    Malcev(#[from] malcev::MalcevError),
}
