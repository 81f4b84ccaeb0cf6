//! Presentations, length-lex rewriting systems, critical pairs and
//! Knuth-Bendix completion.

mod completion;
mod presentation;
mod system;

pub use completion::{knuth_bendix, Completion, CompletionBudget, CompletionStatus};
pub use presentation::{Presentation, PresentationError, Relation};
pub use system::{Confluence, CriticalPair, Redex, RewriteError, RewriteRule, RewriteSystem};
