use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use monoidlab::finite::{FiniteMonoid, GeneratorMap, Homomorphism, DEFAULT_BUDGET};
use monoidlab::identity::{
    check_identity, evaluate, free_pair_check, holds_in_naturals, isoterm_check, zimin_isoterm_check, Identity,
    IsotermStatus, DEFAULT_IDENTITY_BOUND, DEFAULT_ISOTERM_BOUND,
};
use monoidlab::malcev::{malcev_com_fin_evidence, match_class_descriptors, parse_descriptors};
use monoidlab::report::{self, Profile, ReportLine, Status};
use monoidlab::rewrite::{knuth_bendix, CompletionBudget, CompletionStatus, Confluence, Presentation};
use monoidlab::word::{zimin, Alphabet, Substitution, Word};
use monoidlab::{presets, Error, RewriteSystem};

#[derive(Parser)]
#[command(name = "monoidlab", version, about = "String rewriting and identity checks for finitely presented monoids")]
struct Cli {
    /// Worker threads for the parallel searches.
    #[arg(long, global = true, env = "MONOIDLAB_JOBS", value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Lines,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// One of j-inf, d-inf, k-inf, t, i2c3, c2.
    #[arg(long)]
    preset: Option<String>,
    /// A presentation file (`generators:` / `relation:` lines).
    #[arg(long)]
    file: Option<PathBuf>,
}

impl Source {
    fn presentation(&self) -> Result<Presentation, Error> {
        match (&self.preset, &self.file) {
            (Some(name), _) => Ok(presets::presentation(name)?),
            (None, Some(path)) => Ok(Presentation::from_file(path)?),
            (None, None) => unreachable!("clap enforces the group"),
        }
    }

    fn system(&self) -> Result<RewriteSystem, Error> {
        let rs = RewriteSystem::orient(&self.presentation()?);
        for w in rs.warnings() {
            log::warn!("{w}");
        }
        Ok(rs)
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Target {
    /// Preset naming the finite target monoid.
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    target_file: Option<PathBuf>,
}

impl Target {
    fn monoid(&self, budget: usize) -> Result<FiniteMonoid, Error> {
        let p = match (&self.target, &self.target_file) {
            (Some(name), _) => presets::presentation(name)?,
            (None, Some(path)) => Presentation::from_file(path)?,
            (None, None) => unreachable!("clap enforces the group"),
        };
        Ok(FiniteMonoid::build(&RewriteSystem::orient(&p), budget)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word.
    Nf {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        word: String,
    },
    /// All normal forms up to a length.
    Enumerate {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Critical-pair check.
    Confluence {
        #[command(flatten)]
        source: Source,
    },
    /// Bounded Knuth-Bendix completion.
    Complete {
        #[command(flatten)]
        source: Source,
        /// Maximum number of rules.
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, default_value_t = 50)]
        max_iterations: usize,
    },
    /// Elements and Cayley table of a finite monoid.
    Finite {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    Idempotents {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Validates a generator map onto a finite monoid.
    Hom {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        target: Target,
        /// `gen=element,...`, elements given as words over the target.
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Bounded witness search for an identity.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        identity: String,
        #[arg(long, default_value_t = DEFAULT_IDENTITY_BOUND)]
        max_witness_len: usize,
        /// Evaluate this substitution (`x=e b, y=1`) instead of searching.
        #[arg(long)]
        substitution: Option<String>,
    },
    /// Whether an identity holds in the additive naturals.
    Naturals {
        #[arg(long)]
        identity: String,
    },
    /// Isoterm check of a word over variables.
    Isoterm {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = DEFAULT_ISOTERM_BOUND)]
        max_witness_len: usize,
    },
    /// Prints Z_n, or checks it is an isoterm when a monoid is given.
    Zimin {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, conflicts_with = "preset")]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ISOTERM_BOUND)]
        max_witness_len: usize,
    },
    /// Commutative-by-finite evidence through a homomorphism.
    Malcev {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        /// Class descriptor file to match as well.
        #[arg(long)]
        descriptors: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Whether two words generate a free subsemigroup (bounded).
    Freepair {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Runs every verification check.
    Reproduce {
        #[arg(long, value_enum, default_value_t = ProfileArg::Quick)]
        profile: ProfileArg,
    },
}

/// What a command produced: a status, a one-line summary for `--format
/// lines`, and the full human-readable text.
struct Output {
    status: Status,
    summary: String,
    human: String,
}

impl Output {
    fn ok(text: impl Into<String>) -> Self {
        let human: String = text.into();
        Output { status: Status::Pass, summary: human.lines().next().unwrap_or("").to_string(), human }
    }

    fn with(status: Status, summary: impl Into<String>, human: impl Into<String>) -> Self {
        Output { status, summary: summary.into(), human: human.into() }
    }
}

fn run(command: Command) -> Result<Output, Error> {
    Ok(match command {
        Command::Nf { source, word } => {
            let rs = source.system()?;
            Output::ok(rs.normal_form(&Word::parse(rs.generators(), &word)?).to_string())
        }
        Command::Enumerate { source, max_len } => {
            let nfs = source.system()?.enumerate_normal_forms(max_len)?;
            let list: Vec<String> = nfs.iter().map(ToString::to_string).collect();
            Output::with(Status::Pass, format!("{} normal forms up to length {max_len}", nfs.len()), list.join("\n"))
        }
        Command::Confluence { source } => {
            let rs = source.system()?;
            let rules: Vec<String> = rs.rules().iter().map(|r| format!("  {r}")).collect();
            match rs.confluence() {
                Confluence::Confluent { pairs_checked } => {
                    let summary = format!("CONFLUENT ({pairs_checked} critical pairs resolved)");
                    Output::with(Status::Pass, summary.clone(), format!("{summary}\n{}", rules.join("\n")))
                }
                Confluence::Unresolved(pair) => {
                    let summary = format!("NOT CONFLUENT: {pair}");
                    Output::with(Status::Fail, summary.clone(), format!("{summary}\n{}", rules.join("\n")))
                }
            }
        }
        Command::Complete { source, budget, max_iterations } => {
            let c = knuth_bendix(&source.presentation()?, CompletionBudget { max_rules: budget, max_iterations });
            let label = match c.status {
                CompletionStatus::Complete => "COMPLETE",
                CompletionStatus::Partial => "PARTIAL",
            };
            let summary = format!("{label} {} rules after {} iterations", c.system.rules().len(), c.iterations);
            let rules: Vec<String> = c.system.rules().iter().map(|r| format!("  {r}")).collect();
            let status = if c.status == CompletionStatus::Complete { Status::Pass } else { Status::Fail };
            Output::with(status, summary.clone(), format!("{summary}\n{}", rules.join("\n")))
        }
        Command::Finite { source, budget } => {
            let m = FiniteMonoid::build(&source.system()?, budget)?;
            let elements: Vec<String> = m.elements().iter().map(ToString::to_string).collect();
            let summary = format!("{} elements: {}", m.len(), elements.join(", "));
            Output::with(Status::Pass, summary.clone(), format!("{summary}\n{}", m.cayley_table().trim_end()))
        }
        Command::Idempotents { source, budget } => {
            let m = FiniteMonoid::build(&source.system()?, budget)?;
            let idem: Vec<String> = m.idempotents().iter().map(|&x| m.element(x).to_string()).collect();
            Output::ok(format!("{} idempotents: {}", idem.len(), idem.join(", ")))
        }
        Command::Hom { source, target, map, budget } => {
            let rs = source.system()?;
            let m = target.monoid(budget)?;
            let gmap = GeneratorMap::parse(&map, rs.generators(), &m)?;
            match Homomorphism::new(&rs, &gmap, &m) {
                Ok(h) => Output::ok(format!("VALID {h}: all {} relations respected", rs.relations().len())),
                Err(e @ monoidlab::finite::HomError::RelationViolated { .. }) => {
                    let text = format!("INVALID {e}");
                    Output::with(Status::Fail, text.clone(), text)
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Check { source, identity, max_witness_len, substitution } => {
            let rs = source.system()?;
            let id = Identity::parse(&identity)?;
            if let Some(text) = substitution {
                let s = Substitution::parse(id.vars(), rs.generators(), &text)?;
                let (l, r) = evaluate(&rs, &id, &s)?;
                let text = format!("{l} {} {r}", if l == r { "=" } else { "!=" });
                let status = if l == r { Status::Pass } else { Status::Fail };
                return Ok(Output::with(status, text.clone(), text));
            }
            let v = check_identity(&rs, &id, max_witness_len);
            let mut human = v.to_string();
            if let Some(w) = v.witness() {
                let (l, r) = evaluate(&rs, &id, w)?;
                human.push_str(&format!("\n  lhs = {l}\n  rhs = {r}"));
            } else {
                human.push_str(&format!("\n  {} substitutions searched", v.searched));
            }
            let status = if v.fails() { Status::Fail } else { Status::Pass };
            Output::with(status, v.to_string(), human)
        }
        Command::Naturals { identity } => {
            let id = Identity::parse(&identity)?;
            if holds_in_naturals(&id) {
                Output::ok("HOLDS (balanced)")
            } else {
                let p = (id.lhs().parikh(), id.rhs().parikh());
                let text = format!("FAILS (unbalanced: {} vs {})", p.0, p.1);
                Output::with(Status::Fail, text.clone(), text)
            }
        }
        Command::Isoterm { source, word, max_witness_len } => {
            let rs = source.system()?;
            let target = Word::parse(&variables_of(&word)?, &word)?;
            isoterm_output(isoterm_check(&rs, &target, max_witness_len))
        }
        Command::Zimin { n, preset, file, max_witness_len } => {
            if preset.is_none() && file.is_none() {
                let z = zimin(n, &Alphabet::numbered_variables(n))?;
                return Ok(Output::ok(z.to_string()));
            }
            let rs = Source { preset, file }.system()?;
            isoterm_output(zimin_isoterm_check(&rs, n, max_witness_len)?)
        }
        Command::Malcev { source, target, map, max_len, descriptors, budget } => {
            let rs = source.system()?;
            let m = target.monoid(budget)?;
            let gmap = GeneratorMap::parse(&map, rs.generators(), &m)?;
            let r = malcev_com_fin_evidence(&rs, &m, &gmap, max_len)?;
            let mut human = r.to_string();
            let mut status = if r.passed() { Status::Pass } else { Status::Fail };
            if let Some(path) = descriptors {
                let text = std::fs::read_to_string(&path).map_err(|source| {
                    monoidlab::rewrite::PresentationError::Io { path: path.display().to_string(), source }
                })?;
                let h = Homomorphism::new(&rs, &gmap, &m)?;
                let d = parse_descriptors(&h, &text)?;
                let dm = match_class_descriptors(&h, max_len, &d);
                if dm.matched {
                    human.push_str(&format!("\ndescriptors match for {} classes up to length {max_len}", dm.classes_checked));
                } else {
                    status = Status::Fail;
                    for mm in &dm.mismatches {
                        human.push_str(&format!("\ndescriptor mismatch in class {}: missing [{}] unexpected [{}]",
                            mm.label, join(&mm.missing), join(&mm.unexpected)));
                    }
                }
            }
            let summary = human.lines().last().unwrap_or("").to_string();
            Output::with(status, summary, human)
        }
        Command::Freepair { source, u, v, max_len } => {
            let rs = source.system()?;
            let r = free_pair_check(&rs, &Word::parse(rs.generators(), &u)?, &Word::parse(rs.generators(), &v)?, max_len)?;
            match r.collision {
                None => Output::ok(format!("FREE {} products of length 1..{max_len} pairwise distinct", r.products)),
                Some(c) => {
                    let text = format!("NOT FREE {} and {} both equal {}", c.first, c.second, c.value);
                    Output::with(Status::Fail, text.clone(), text)
                }
            }
        }
        Command::Reproduce { .. } => unreachable!("handled by main"),
    })
}

fn join(words: &[Word]) -> String {
    words.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Variables of a word, in order of first appearance.
fn variables_of(text: &str) -> Result<std::sync::Arc<Alphabet>, Error> {
    let mut names: Vec<&str> = Vec::new();
    for t in text.split_whitespace().filter(|&t| t != "1") {
        if !names.contains(&t) {
            names.push(t);
        }
    }
    Ok(Alphabet::variables(names)?)
}

fn isoterm_output(r: monoidlab::identity::IsotermReport) -> Output {
    let status = if r.status == IsotermStatus::Isoterm { Status::Pass } else { Status::Fail };
    let mut human = r.to_string();
    for w in r.unresolved.iter().take(10) {
        human.push_str(&format!("\n  unresolved: {w}"));
    }
    Output::with(status, r.to_string(), human)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Nf { .. } => "nf",
        Command::Enumerate { .. } => "enumerate",
        Command::Confluence { .. } => "confluence",
        Command::Complete { .. } => "complete",
        Command::Finite { .. } => "finite",
        Command::Idempotents { .. } => "idempotents",
        Command::Hom { .. } => "hom",
        Command::Check { .. } => "check",
        Command::Naturals { .. } => "naturals",
        Command::Isoterm { .. } => "isoterm",
        Command::Zimin { .. } => "zimin",
        Command::Malcev { .. } => "malcev",
        Command::Freepair { .. } => "freepair",
        Command::Reproduce { .. } => "reproduce",
    }
}

fn dispatch(cli: Cli) -> ExitCode {
    if let Command::Reproduce { profile } = cli.command {
        let lines = report::reproduce(match profile {
            ProfileArg::Quick => Profile::Quick,
            ProfileArg::Full => Profile::Full,
        });
        for line in &lines {
            println!("{line}");
        }
        if cli.format == Format::Human {
            let failed = lines.iter().filter(|l| l.status == Status::Fail).count();
            println!("{} checks, {failed} failed", lines.len());
        }
        return ExitCode::from(report::exit_code(&lines) as u8);
    }
    let name = command_name(&cli.command);
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Human => println!("{}", out.human),
                Format::Lines => println!("{}", ReportLine::new(out.status, name, out.summary)),
            }
            ExitCode::from(u8::from(out.status == Status::Fail))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs.into()).build() {
            Ok(pool) => pool.install(|| dispatch(cli)),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        None => dispatch(cli),
    }
}
