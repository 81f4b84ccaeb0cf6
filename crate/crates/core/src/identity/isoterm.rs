use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::candidates::BalancedCandidates;
use super::WitnessSearch;
use crate::rewrite::RewriteSystem;
use crate::word::{zimin, Alphabet, Substitution, Symbol, Word, WordError};

const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsotermStatus {
    Isoterm,
    Inconclusive,
}

impl fmt::Display for IsotermStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsotermStatus::Isoterm => "ISOTERM",
            IsotermStatus::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Refutation {
    pub candidate: Word,
    pub witness: Arc<Substitution>,
}

/// Outcome of checking that no other word `w` makes `target ≈ w` hold.
///
/// Only balanced candidates (same Parikh vector as the target) are
/// examined. Unbalanced ones are refuted wholesale whenever the monoid
/// contains a free monogenic submonoid, which is assumed, not verified.
#[derive(Debug, Clone)]
pub struct IsotermReport {
    pub target: Word,
    pub bound: usize,
    /// Balanced candidates other than the target itself.
    pub candidates_total: u64,
    pub refuted: Vec<Refutation>,
    pub unresolved: Vec<Word>,
    /// Refutations found by the canonical substitution ladder before any
    /// general enumeration (zero for [`isoterm_check`]).
    pub ladder_refuted: u64,
    pub status: IsotermStatus,
}

impl IsotermReport {
    pub fn balanced_only(&self) -> bool {
        true
    }
}

impl fmt::Display for IsotermReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} target={} balanced-candidates={} refuted={} unresolved={} witness-bound={}",
            self.status,
            self.target,
            self.candidates_total,
            self.refuted.len(),
            self.unresolved.len(),
            self.bound
        )
    }
}

fn run<F>(target: &Word, bound: usize, ladder_refuted: impl Fn(&Arc<Substitution>) -> bool, refute: F) -> IsotermReport
where
    F: Fn(&[Symbol]) -> Option<Arc<Substitution>> + Sync,
{
    let alphabet = target.alphabet();
    let mut stream = BalancedCandidates::new(target);
    let mut report = IsotermReport {
        target: target.clone(),
        bound,
        candidates_total: 0,
        refuted: Vec::new(),
        unresolved: Vec::new(),
        ladder_refuted: 0,
        status: IsotermStatus::Isoterm,
    };
    loop {
        let mut chunk = Vec::with_capacity(CHUNK);
        for _ in 0..CHUNK {
            match stream.next_letters() {
                Some(c) if c.as_slice() == target.letters() => {}
                Some(c) => chunk.push(c),
                None => break,
            }
        }
        if chunk.is_empty() {
            break;
        }
        let outcomes: Vec<_> = chunk.par_iter().map(|c| refute(c)).collect();
        for (c, outcome) in chunk.into_iter().zip(outcomes) {
            report.candidates_total += 1;
            let candidate = Word::from_raw(alphabet, c);
            match outcome {
                Some(witness) => {
                    if ladder_refuted(&witness) {
                        report.ladder_refuted += 1;
                    }
                    report.refuted.push(Refutation { candidate, witness });
                }
                None => report.unresolved.push(candidate),
            }
        }
    }
    if !report.unresolved.is_empty() {
        report.status = IsotermStatus::Inconclusive;
    }
    report
}

/// Tries to refute `target ≈ w` for every balanced `w ≠ target` by a
/// bounded witness search.
pub fn isoterm_check(rs: &RewriteSystem, target: &Word, max_sub_len: usize) -> IsotermReport {
    let vars = target.alphabet().clone();
    let search = WitnessSearch::new(rs, vars.len(), max_sub_len);
    run(target, max_sub_len, |_| false, |c| {
        search
            .first_failure(target.letters(), c, false)
            .map(|(_, a)| Arc::new(search.substitution(&vars, &a)))
    })
}

/// The substitutions `x1..x(k-1) -> 1, xk -> g1, x(k+1).. -> g2` for
/// `k = 1..=n`, where `g1`, `g2` are the first two generators.
fn ladder(rs: &RewriteSystem, vars: &Arc<Alphabet>, n: usize) -> Vec<Arc<Substitution>> {
    let gens = rs.generators();
    if gens.len() < 2 {
        return Vec::new();
    }
    let (g1, g2) = (gens.symbols().next().unwrap(), gens.symbols().nth(1).unwrap());
    (0..n)
        .map(|k| {
            let images = (0..vars.len())
                .map(|i| {
                    let letters = match i.cmp(&k) {
                        std::cmp::Ordering::Less => vec![],
                        std::cmp::Ordering::Equal => vec![g1],
                        std::cmp::Ordering::Greater => vec![g2],
                    };
                    Word::from_letters(gens, letters).expect("generator indices are valid")
                })
                .collect();
            Arc::new(Substitution::new(vars, gens, images).expect("one image per variable"))
        })
        .collect()
}

/// Same contract as [`isoterm_check`] on `Z_n`, but each candidate is first
/// tried against the canonical ladder: deleting `x1, ..., x(k-1)` and sending
/// `xk` to the first generator and every later variable to the second. This
/// refutes every non-Zimin candidate in the presets without enumeration;
/// the general search remains as fallback.
pub fn zimin_isoterm_check(rs: &RewriteSystem, n: usize, max_sub_len: usize) -> Result<IsotermReport, WordError> {
    let vars = Alphabet::numbered_variables(n);
    let target = zimin(n, &vars)?;
    let ladder = ladder(rs, &vars, n);
    let reduce = |s: &Substitution, letters: &[Symbol]| {
        let mut out = Vec::new();
        s.apply_into(letters, &mut out);
        rs.reduce_in_place(&mut out);
        out
    };
    let target_values: Vec<Vec<Symbol>> = ladder.iter().map(|s| reduce(s, target.letters())).collect();
    let search = WitnessSearch::new(rs, n, max_sub_len);
    let report = run(
        &target,
        max_sub_len,
        |w| ladder.iter().any(|s| Arc::ptr_eq(s, w)),
        |c| {
            for (s, value) in ladder.iter().zip(&target_values) {
                if reduce(s, c) != *value {
                    return Some(s.clone());
                }
            }
            search
                .first_failure(target.letters(), c, false)
                .map(|(_, a)| Arc::new(search.substitution(&vars, &a)))
        },
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::{evaluate, Identity};
    use crate::presets;
    use crate::word::zimin_word;

    fn sys(name: &str) -> RewriteSystem {
        presets::system(name).unwrap()
    }

    fn recheck(rs: &RewriteSystem, report: &IsotermReport) {
        for r in &report.refuted {
            let id = Identity::new(report.target.clone(), r.candidate.clone()).unwrap();
            let (l, rr) = evaluate(rs, &id, &r.witness).unwrap();
            assert_ne!(l, rr, "witness {} does not refute {}", r.witness, r.candidate);
        }
    }

    #[test]
    fn k_inf_z2() {
        let k = sys("k-inf");
        let report = isoterm_check(&k, &zimin_word(2).unwrap(), 1);
        assert_eq!(report.status, IsotermStatus::Isoterm);
        assert_eq!(report.candidates_total, 2);
        let shown: Vec<(String, String)> =
            report.refuted.iter().map(|r| (r.candidate.to_string(), r.witness.to_string())).collect();
        assert_eq!(
            shown,
            [
                ("x1 x1 x2".to_string(), "x1=e, x2=b".to_string()),
                ("x2 x1 x1".to_string(), "x1=e, x2=b".to_string())
            ]
        );
        recheck(&k, &report);
    }

    #[test]
    fn k_inf_z3() {
        let k = sys("k-inf");
        let report = isoterm_check(&k, &zimin_word(3).unwrap(), 2);
        assert_eq!(report.status, IsotermStatus::Isoterm);
        assert_eq!(report.refuted.len(), 104);
        recheck(&k, &report);
    }

    #[test]
    fn single_variable_square_is_vacuous() {
        let free = RewriteSystem::orient(&crate::rewrite::Presentation::from_texts(&["x"], &[]).unwrap());
        let target = Word::parse(&Alphabet::numbered_variables(1), "x1 x1").unwrap();
        let report = isoterm_check(&free, &target, 2);
        assert_eq!(report.status, IsotermStatus::Isoterm);
        assert_eq!(report.candidates_total, 0);
    }

    #[test]
    fn zimin_fast_path() {
        let k = sys("k-inf");
        let r = zimin_isoterm_check(&k, 2, 1).unwrap();
        assert_eq!((r.status, r.refuted.len(), r.ladder_refuted), (IsotermStatus::Isoterm, 2, 2));
        recheck(&k, &r);

        let d = sys("d-inf");
        let r = zimin_isoterm_check(&d, 2, 1).unwrap();
        assert_eq!((r.status, r.refuted.len()), (IsotermStatus::Isoterm, 2));
        assert_eq!(r.refuted[0].witness.to_string(), "x1=a, x2=b");
        recheck(&d, &r);

        let r = zimin_isoterm_check(&k, 1, 3).unwrap();
        assert_eq!((r.status, r.candidates_total), (IsotermStatus::Isoterm, 0));
        assert!(zimin_isoterm_check(&k, 0, 1).is_err());
    }

    #[test]
    fn fast_path_agrees_with_general_search() {
        for name in ["k-inf", "d-inf"] {
            let rs = sys(name);
            let general = isoterm_check(&rs, &zimin_word(3).unwrap(), 2);
            let fast = zimin_isoterm_check(&rs, 3, 2).unwrap();
            assert_eq!(general.status, fast.status);
            assert_eq!(general.unresolved, fast.unresolved);
            let a: Vec<&Word> = general.refuted.iter().map(|r| &r.candidate).collect();
            let b: Vec<&Word> = fast.refuted.iter().map(|r| &r.candidate).collect();
            assert_eq!(a, b);
            recheck(&rs, &fast);
        }
    }

    #[test]
    fn inconclusive_when_bound_too_small() {
        // with only the empty word available nothing can be refuted
        let k = sys("k-inf");
        let r = isoterm_check(&k, &zimin_word(2).unwrap(), 0);
        assert_eq!(r.status, IsotermStatus::Inconclusive);
        assert_eq!(r.unresolved.len(), 2);
    }
}
