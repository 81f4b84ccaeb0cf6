//! Bounded Knuth-Bendix completion under the length-lex order.

use super::presentation::Presentation;
use super::system::{reduce_with, RewriteRule, RewriteSystem};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionBudget {
    pub max_rules: usize,
    pub max_iterations: usize,
}

impl Default for CompletionBudget {
    fn default() -> Self {
        CompletionBudget { max_rules: 200, max_iterations: 50 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletionStatus {
    Complete,
    Partial,
}

#[derive(Debug, Clone)]
pub struct Completion {
    pub system: RewriteSystem,
    pub status: CompletionStatus,
    pub iterations: usize,
}

fn max_lhs(rules: &[RewriteRule]) -> usize {
    rules.iter().map(|r| r.lhs().len()).max().unwrap_or(0)
}

fn normalize(rules: &[RewriteRule], w: &Word) -> Word {
    let mut letters = w.letters().to_vec();
    reduce_with(rules, max_lhs(rules), &mut letters);
    Word::from_raw(w.alphabet(), letters)
}

/// Adds `u = v` as an oriented rule after normalizing both sides, then
/// interreduces until every lhs is irreducible modulo the other rules and
/// every rhs is irreducible.
fn add_equation(rules: &mut Vec<RewriteRule>, u: &Word, v: &Word) -> bool {
    let mut pending = vec![(u.clone(), v.clone())];
    let mut added = false;
    while let Some((u, v)) = pending.pop() {
        let (u, v) = (normalize(rules, &u), normalize(rules, &v));
        let Some(rule) = RewriteRule::orient(u, v) else { continue };
        added = true;
        // rules whose lhs the new rule can rewrite become equations again
        let (keep, redo): (Vec<_>, Vec<_>) = std::mem::take(rules)
            .into_iter()
            .partition(|r| !contains(r.lhs().letters(), rule.lhs().letters()));
        *rules = keep;
        rules.push(rule);
        pending.extend(redo.into_iter().map(|r| (r.lhs().clone(), r.rhs().clone())));
        let snapshot = rules.clone();
        for r in rules.iter_mut() {
            let rhs = normalize(&snapshot, r.rhs());
            *r = RewriteRule::new(r.lhs().clone(), rhs).expect("normalizing the rhs keeps the rule decreasing");
        }
    }
    added
}

fn contains(haystack: &[crate::word::Symbol], needle: &[crate::word::Symbol]) -> bool {
    needle.len() <= haystack.len() && haystack.windows(needle.len()).any(|w| w == needle)
}

/// Orients `p`, then resolves unresolved critical pairs into new rules until
/// the system is confluent or the budget runs out.
pub fn knuth_bendix(p: &Presentation, budget: CompletionBudget) -> Completion {
    let mut rules: Vec<RewriteRule> = Vec::new();
    for r in p.relations() {
        add_equation(&mut rules, &r.lhs, &r.rhs);
    }
    let mut iterations = 0;
    loop {
        let system = RewriteSystem::assemble(p.clone(), rules.clone());
        let unresolved: Vec<_> = system.critical_pairs().into_iter().filter(|c| !c.resolved).collect();
        if unresolved.is_empty() {
            return Completion { system, status: CompletionStatus::Complete, iterations };
        }
        if iterations >= budget.max_iterations || rules.len() > budget.max_rules {
            return Completion { system, status: CompletionStatus::Partial, iterations };
        }
        iterations += 1;
        for pair in unresolved {
            add_equation(&mut rules, &pair.left, &pair.right);
            if rules.len() > budget.max_rules {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FiniteMonoid;
    use crate::presets;

    #[test]
    fn presets_are_already_complete() {
        let k = knuth_bendix(&presets::presentation("k-inf").unwrap(), CompletionBudget::default());
        assert_eq!(k.status, CompletionStatus::Complete);
        assert_eq!(k.system.rules().len(), 2);
        let t = knuth_bendix(&presets::presentation("t").unwrap(), CompletionBudget::default());
        assert_eq!(t.status, CompletionStatus::Complete);
        assert_eq!(t.system.rules().len(), 3);
    }

    #[test]
    fn free_monoid_completes_empty() {
        let p = Presentation::from_texts(&["x"], &[]).unwrap();
        let c = knuth_bendix(&p, CompletionBudget::default());
        assert_eq!(c.status, CompletionStatus::Complete);
        assert!(c.system.rules().is_empty());
    }

    #[test]
    fn collapses_conflicting_rules() {
        let p = Presentation::from_texts(&["a", "b"], &[("a b", "a"), ("a b", "b")]).unwrap();
        let c = knuth_bendix(&p, CompletionBudget::default());
        assert_eq!(c.status, CompletionStatus::Complete);
        let rules: Vec<String> = c.system.rules().iter().map(ToString::to_string).collect();
        assert_eq!(rules, ["b -> a", "a a -> a"]);
        assert_eq!(FiniteMonoid::build(&c.system, 100).unwrap().len(), 2);
    }

    #[test]
    fn completes_symmetric_group() {
        let p = Presentation::from_texts(&["a", "b"], &[("a a a", "1"), ("b b", "1"), ("a b a b", "1")]).unwrap();
        let c = knuth_bendix(&p, CompletionBudget::default());
        assert_eq!(c.status, CompletionStatus::Complete);
        assert!(c.system.is_locally_confluent());
        assert_eq!(FiniteMonoid::build(&c.system, 100).unwrap().len(), 6);
        // interreduced: no lhs contains another lhs
        let rules = c.system.rules();
        for (i, r) in rules.iter().enumerate() {
            for (j, s) in rules.iter().enumerate() {
                if i != j {
                    assert!(!contains(r.lhs().letters(), s.lhs().letters()), "{r} contains {s}");
                }
            }
            assert!(c.system.is_irreducible(r.rhs().letters()));
        }
    }

    #[test]
    fn zero_iterations_is_partial() {
        let p = Presentation::from_texts(&["a", "b"], &[("a b", "a"), ("b a", "b")]).unwrap();
        let c = knuth_bendix(&p, CompletionBudget { max_rules: 10, max_iterations: 0 });
        assert_eq!(c.status, CompletionStatus::Partial);
    }
}
