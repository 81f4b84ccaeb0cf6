//! The full verification run: every checkable claim about the free products
//! of two-element monoids, one [`ReportLine`] per check.

use std::error::Error as StdError;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::finite::{FiniteError, FiniteMonoid, GeneratorMap, HomError, Homomorphism};
use crate::identity::{
    check_identity, evaluate, free_pair_check, holds_in_naturals, zimin_isoterm_check, Identity, IsotermStatus,
    Outcome,
};
use crate::malcev::{self, malcev_com_fin_evidence, match_class_descriptors, parse_descriptors};
use crate::presets;
use crate::rewrite::{Confluence, RewriteSystem};
use crate::word::{zimin, Alphabet, Substitution, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        })
    }
}

/// `STATUS<TAB>check-name<TAB>detail`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportLine {
    pub status: Status,
    pub name: String,
    pub detail: String,
}

impl ReportLine {
    pub fn new(status: Status, name: impl Into<String>, detail: impl Into<String>) -> Self {
        ReportLine { status, name: name.into(), detail: detail.into() }
    }
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.status, self.name, self.detail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

pub const DESCRIPTOR_BOUND: usize = 12;
pub const COMMUTATIVITY_BOUND: usize = 10;
pub const ISOTERM_BOUND: usize = 2;
pub const IDENTITY_BOUND: usize = 3;

type CheckResult = Result<(bool, String), Box<dyn StdError + Send + Sync>>;

#[derive(Default)]
struct Suite {
    lines: Vec<ReportLine>,
}

impl Suite {
    fn check(&mut self, name: &str, f: impl FnOnce() -> CheckResult) -> bool {
        let line = match f() {
            Ok((true, detail)) => ReportLine::new(Status::Pass, name, detail),
            Ok((false, detail)) => ReportLine::new(Status::Fail, name, detail),
            Err(e) => ReportLine::new(Status::Fail, name, format!("error: {e}")),
        };
        let passed = line.status == Status::Pass;
        self.lines.push(line);
        passed
    }

    fn info(&mut self, name: &str, detail: impl Into<String>) {
        self.lines.push(ReportLine::new(Status::Info, name, detail));
    }
}

fn sys(name: &str) -> Result<RewriteSystem, Box<dyn StdError + Send + Sync>> {
    Ok(presets::system(name)?)
}

fn t_monoid() -> Result<FiniteMonoid, Box<dyn StdError + Send + Sync>> {
    Ok(FiniteMonoid::build(&sys("t")?, 100)?)
}

fn k_to_t() -> Result<Homomorphism, Box<dyn StdError + Send + Sync>> {
    let k = sys("k-inf")?;
    let t = t_monoid()?;
    let map = GeneratorMap::parse("e=f,b=g", k.generators(), &t)?;
    Ok(Homomorphism::new(&k, &map, &t)?)
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// `(p q)^k p` as a word over `rs`'s generators.
fn alternating(rs: &RewriteSystem, p: &str, q: &str, k: usize, trailing: bool) -> Result<Word, Box<dyn StdError + Send + Sync>> {
    let mut text = vec![format!("{p} {q}"); k].join(" ");
    if trailing {
        if !text.is_empty() {
            text.push(' ');
        }
        text.push_str(p);
    }
    if text.is_empty() {
        text.push('1');
    }
    Ok(Word::parse(rs.generators(), &text)?)
}

struct IdentityExpectation {
    short: &'static str,
    text: &'static str,
    holds_in: &'static [&'static str],
    fails_in: &'static [&'static str],
}

const SEPARATING_IDENTITIES: [IdentityExpectation; 3] = [
    IdentityExpectation {
        short: "x2yx=xyx2",
        text: "x x y x = x y x x",
        holds_in: &["j-inf"],
        fails_in: &["d-inf", "k-inf"],
    },
    IdentityExpectation {
        short: "x2y2=y2x2",
        text: "x x y y = y y x x",
        holds_in: &["d-inf"],
        fails_in: &["j-inf", "k-inf"],
    },
    IdentityExpectation {
        short: "x4yx2=x2yx4",
        text: "x x x x y x x = x x y x x x x",
        holds_in: &["k-inf"],
        fails_in: &["d-inf"],
    },
];

/// Runs every check in order. Internal errors become FAIL lines.
pub fn reproduce(profile: Profile) -> Vec<ReportLine> {
    let mut s = Suite::default();

    for name in presets::CORE_PRESETS {
        s.check(&format!("confluence.{name}"), || {
            let rs = sys(name)?;
            Ok(match rs.confluence() {
                Confluence::Confluent { pairs_checked } => {
                    (true, format!("{} rules, {pairs_checked} critical pairs, all resolved", rs.rules().len()))
                }
                Confluence::Unresolved(p) => (false, format!("unresolved {p}")),
            })
        });
    }

    for name in ["j-inf", "d-inf", "k-inf"] {
        s.check(&format!("normal-forms.{name}"), || {
            let nfs = sys(name)?.enumerate_normal_forms(16)?;
            let mut per_len = [0usize; 17];
            for w in &nfs {
                per_len[w.len()] += 1;
            }
            let ok = per_len[0] == 1 && per_len[1..].iter().all(|&c| c == 2);
            Ok((ok, format!("lengths 0..16: {}", join(per_len))))
        });
    }

    s.check("t.elements", || {
        let t = t_monoid()?;
        let shown = join(t.elements());
        Ok((shown == "1, f, g, f g, g f, g f g", format!("{} elements: {shown}", t.len())))
    });
    s.check("t.idempotents", || {
        let t = t_monoid()?;
        let idem = t.idempotents();
        let shown = join(idem.iter().map(|&x| t.element(x)));
        Ok((shown == "1, f, f g, g f, g f g", format!("{} idempotents: {shown}; g is not", idem.len())))
    });
    s.check("k-inf.infinite", || match FiniteMonoid::build(&sys("k-inf")?, 1000) {
        Err(FiniteError::BudgetExceeded { budget }) => Ok((true, format!("closure exceeds {budget} elements"))),
        Err(e) => Err(e.into()),
        Ok(m) => Ok((false, format!("closure finished with {} elements", m.len()))),
    });

    s.check("hom.k-inf-to-t", || {
        let h = k_to_t()?;
        Ok((true, format!("{h} respects e e = e and b b = 1")))
    });
    s.check("hom.k-inf-to-t.rejects-e=g", || {
        let k = sys("k-inf")?;
        let t = t_monoid()?;
        let map = GeneratorMap::parse("e=g,b=g", k.generators(), &t)?;
        match Homomorphism::new(&k, &map, &t) {
            Err(HomError::RelationViolated { relation, lhs_image, rhs_image }) => {
                Ok((true, format!("{relation} maps to {lhs_image} != {rhs_image}")))
            }
            Err(e) => Err(e.into()),
            Ok(_) => Ok((false, "e=g accepted".into())),
        }
    });

    s.check("kernel.descriptors", || {
        let h = k_to_t()?;
        let d = parse_descriptors(&h, malcev::K_INF_ONTO_T_DESCRIPTORS)?;
        let m = match_class_descriptors(&h, DESCRIPTOR_BOUND, &d);
        let detail = if m.matched {
            format!("{} classes match their descriptors up to length {DESCRIPTOR_BOUND}", m.classes_checked)
        } else {
            let first = &m.mismatches[0];
            format!(
                "class {}: missing [{}] unexpected [{}]",
                first.label,
                join(&first.missing),
                join(&first.unexpected)
            )
        };
        Ok((m.matched, detail))
    });
    s.check("kernel.class-sizes", || {
        let l = DESCRIPTOR_BOUND;
        let classes = malcev::classify(&k_to_t()?, l);
        let sizes: Vec<(String, usize)> = classes.iter().map(|c| (c.label.to_string(), c.members.len())).collect();
        let expected = [
            ("1", 1),
            ("f", l.div_ceil(2)),
            ("g", 1),
            ("f g", l / 2),
            ("g f", l / 2),
            ("g f g", (l - 1) / 2),
        ];
        let ok = sizes.len() == 6 && sizes.iter().zip(expected).all(|((a, n), (b, m))| a == b && *n == m);
        Ok((ok, format!("bound {l}: {}", join(sizes.iter().map(|(a, n)| format!("|{a}|={n}"))))))
    });

    s.check("malcev.k-inf-to-t", || {
        let k = sys("k-inf")?;
        let t = t_monoid()?;
        let r = malcev_com_fin_evidence(&k, &t, &GeneratorMap::parse("e=f,b=g", k.generators(), &t)?, COMMUTATIVITY_BOUND)?;
        let checked = r.classes.iter().filter(|c| c.commutativity.is_some()).count();
        Ok((r.passed(), format!("{checked} idempotent classes commutative up to length {COMMUTATIVITY_BOUND}; class g unchecked (not a subsemigroup)")))
    });
    s.check("malcev.d-inf-to-c2", || {
        let d = sys("d-inf")?;
        let c2 = FiniteMonoid::build(&sys("c2")?, 10)?;
        let r = malcev_com_fin_evidence(&d, &c2, &GeneratorMap::parse("a=c,b=c", d.generators(), &c2)?, COMMUTATIVITY_BOUND)?;
        Ok((r.passed(), format!("kernel of the sign map commutative up to length {COMMUTATIVITY_BOUND}")))
    });

    s.check("zimin.shape", || {
        for n in 1..=10 {
            let z = zimin(n, &Alphabet::numbered_variables(n))?;
            let p = z.parikh();
            if z.len() != (1 << n) - 1 || (1..=n).any(|i| p.count(crate::word::Symbol((i - 1) as u16)) != 1 << (n - i)) {
                return Ok((false, format!("Z_{n} has wrong length or letter counts")));
            }
        }
        Ok((true, "|Z_n| = 2^n - 1 and x_i occurs 2^(n-i) times, n = 1..10".into()))
    });
    s.check("zimin.delete-x1", || {
        for n in 1..=10 {
            let big = Alphabet::numbered_variables(n + 1);
            let small = Alphabet::numbered_variables(n);
            let mut images = vec![Word::empty(&small)];
            images.extend((1..=n).map(|i| Word::parse(&small, &format!("x{i}")).expect("declared")));
            let shift = Substitution::new(&big, &small, images)?;
            if shift.apply(&zimin(n + 1, &big)?)? != zimin(n, &small)? {
                return Ok((false, format!("Z_{} with x1 deleted is not Z_{n}", n + 1)));
            }
        }
        Ok((true, "Z_(n+1) with x1 -> 1 is Z_n after renaming, n = 1..10".into()))
    });
    for (preset, g1, g2) in [("k-inf", "e", "b"), ("d-inf", "a", "b")] {
        s.check(&format!("zimin.value.{preset}"), || {
            let rs = sys(preset)?;
            for n in 1..=8 {
                let vars = Alphabet::numbered_variables(n + 1);
                let text = (1..=n + 1).map(|i| format!("x{i}={}", if i == 1 { g1 } else { g2 })).collect::<Vec<_>>().join(",");
                let sub = Substitution::parse(&vars, rs.generators(), &text)?;
                let value = rs.normal_form(&sub.apply(&zimin(n + 1, &vars)?)?);
                if value != alternating(&rs, g1, g2, (1 << n) - 1, true)? {
                    return Ok((false, format!("n={n}: value {value}")));
                }
            }
            Ok((true, format!("Z_(n+1) at x1={g1}, others={g2} is ({g1}{g2})^(2^n - 1){g1}, n = 1..8")))
        });
    }
    for (preset, p, q) in [("k-inf", "e", "b"), ("d-inf", "a", "b")] {
        s.check(&format!("naturals.embedding.{preset}"), || {
            let rs = sys(preset)?;
            let powers: Vec<Word> = (1..=24).map(|l| alternating(&rs, p, q, l, false)).collect::<Result<_, _>>()?;
            let irreducible = powers.iter().all(|w| rs.normal_form(w) == *w);
            let additive = (0..12).all(|i| {
                (0..12).all(|j| {
                    powers[i].concat(&powers[j]).map(|w| rs.normal_form(&w) == powers[i + j + 1]).unwrap_or(false)
                })
            });
            Ok((irreducible && additive, format!("({p}{q})^l are distinct and multiply additively, l = 1..24")))
        });
    }

    let mut isoterm_ns = vec![2, 3];
    if profile == Profile::Full {
        isoterm_ns.push(4);
    }
    for preset in ["k-inf", "d-inf"] {
        for &n in &isoterm_ns {
            s.check(&format!("isoterm.{preset}.Z{n}"), || {
                let r = zimin_isoterm_check(&sys(preset)?, n, ISOTERM_BOUND)?;
                Ok((r.status == IsotermStatus::Isoterm, r.to_string()))
            });
        }
    }

    let mut separations_ok = true;
    for e in &SEPARATING_IDENTITIES {
        for preset in ["j-inf", "d-inf", "k-inf"] {
            let name = format!("identity.{}.{preset}", e.short);
            let expect_holds = e.holds_in.contains(&preset);
            let expect_fails = e.fails_in.contains(&preset);
            let run = || -> Result<(crate::identity::Verdict, RewriteSystem, Identity), Box<dyn StdError + Send + Sync>> {
                let rs = sys(preset)?;
                let id = Identity::parse(e.text)?;
                Ok((check_identity(&rs, &id, IDENTITY_BOUND), rs, id))
            };
            if !expect_holds && !expect_fails {
                match run() {
                    Ok((v, _, _)) => s.info(&name, format!("{} (no expectation)", v)),
                    Err(err) => s.info(&name, format!("error: {err}")),
                }
                continue;
            }
            let ok = s.check(&name, || {
                let (v, rs, id) = run()?;
                match &v.outcome {
                    Outcome::Fails(w) => {
                        let (l, r) = evaluate(&rs, &id, w)?;
                        let reverified = l != r;
                        Ok((expect_fails && reverified, format!("{v} ({l} != {r})")))
                    }
                    Outcome::NoWitnessUpTo(_) => Ok((expect_holds, format!("{v} ({} substitutions)", v.searched))),
                }
            });
            separations_ok &= ok;
        }
    }
    if separations_ok {
        s.info(
            "identity.separation",
            "Id(J-inf), Id(D-inf), Id(K-inf) pairwise distinct; J/D and D/K incomparable (refutations exact, satisfactions bounded)",
        );
    } else {
        s.lines.push(ReportLine::new(Status::Fail, "identity.separation", "a separating identity did not behave as expected"));
    }

    s.check("freepair.i2c3", || {
        let rs = sys("i2c3")?;
        let u = Word::parse(rs.generators(), "e g")?;
        let v = Word::parse(rs.generators(), "e g g")?;
        let r = free_pair_check(&rs, &u, &v, 6)?;
        Ok((r.free && r.products == 126, format!("u = e g, v = e g g: {} products of length 1..6 pairwise distinct", r.products)))
    });
    s.check("freepair.k-inf.collision", || {
        let rs = sys("k-inf")?;
        let u = Word::parse(rs.generators(), "e b")?;
        let v = Word::parse(rs.generators(), "b e")?;
        let r = free_pair_check(&rs, &u, &v, 3)?;
        Ok(match r.collision {
            Some(c) => (true, format!("u = e b, v = b e: {} and {} both equal {}", c.first, c.second, c.value)),
            None => (false, "no collision found".into()),
        })
    });

    s.check("naturals.balanced-equivalence", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let agreed = (0..100).all(|_| {
            let id = random_identity(&mut rng, 3, 6);
            let numeric = (0..50).all(|_| {
                let values: Vec<u64> = (0..3).map(|_| rng.gen_range(0..=10)).collect();
                let sum = |w: &Word| w.letters().iter().map(|v| values[v.index()]).sum::<u64>();
                sum(id.lhs()) == sum(id.rhs())
            });
            numeric == holds_in_naturals(&id)
        });
        Ok((agreed, "balanced <=> equal sums under 50 random assignments, 100 seeded identities".into()))
    });

    s.info(
        "conclusion.k-inf",
        "Com-by-Fin decomposition and Zimin isoterms both have bounded evidence; non-finite-basability itself is not machine-checked",
    );
    s.lines
}

/// A random identity over `x1..x{vars}` with sides of length `0..=max_len`.
/// Balanced identities are produced as shuffles so that both outcomes occur.
pub fn random_identity<R: Rng>(rng: &mut R, vars: usize, max_len: usize) -> Identity {
    let alphabet = Alphabet::numbered_variables(vars);
    let side = |rng: &mut R| {
        let len = rng.gen_range(0..=max_len);
        (0..len).map(|_| crate::word::Symbol(rng.gen_range(0..vars) as u16)).collect::<Vec<_>>()
    };
    let lhs = side(rng);
    let rhs = if rng.gen_bool(0.5) {
        let mut r = lhs.clone();
        for i in (1..r.len()).rev() {
            r.swap(i, rng.gen_range(0..=i));
        }
        r
    } else {
        side(rng)
    };
    Identity::new(
        Word::from_letters(&alphabet, lhs).expect("indices in range"),
        Word::from_letters(&alphabet, rhs).expect("indices in range"),
    )
    .expect("same alphabet")
}

/// Exit status of a run: 0 iff no line failed.
pub fn exit_code(lines: &[ReportLine]) -> i32 {
    i32::from(lines.iter().any(|l| l.status == Status::Fail))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_format() {
        let l = ReportLine::new(Status::Pass, "t.elements", "6 elements");
        assert_eq!(l.to_string(), "PASS\tt.elements\t6 elements");
        assert_eq!(exit_code(std::slice::from_ref(&l)), 0);
        assert_eq!(exit_code(&[l, ReportLine::new(Status::Fail, "x", "y")]), 1);
    }

    #[test]
    fn alternating_words() {
        let k = presets::system("k-inf").unwrap();
        assert_eq!(alternating(&k, "e", "b", 0, true).unwrap().to_string(), "e");
        assert_eq!(alternating(&k, "e", "b", 2, true).unwrap().to_string(), "e b e b e");
        assert_eq!(alternating(&k, "e", "b", 0, false).unwrap().to_string(), "1");
    }
}
