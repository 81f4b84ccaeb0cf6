//! Knuth-Bendix completion of presentations that are not confluent as written.

use monoidlab::rewrite::{knuth_bendix, CompletionBudget, Presentation, RewriteSystem};

fn show(title: &str, text: &str) -> Result<(), monoidlab::Error> {
    let p: Presentation = text.parse()?;
    let raw = RewriteSystem::orient(&p);
    println!("{title}: oriented rules confluent? {}", raw.is_locally_confluent());
    let c = knuth_bendix(&p, CompletionBudget::default());
    println!("  {:?} after {} iterations", c.status, c.iterations);
    for r in c.system.rules() {
        println!("  {r}");
    }
    Ok(())
}

fn main() -> Result<(), monoidlab::Error> {
    show("left zero pair", "generators: a b\nrelation: a b = a\nrelation: a b = b\n")?;
    show("symmetric group S3", "generators: a b\nrelation: a a a = 1\nrelation: b b = 1\nrelation: a b a b = 1\n")?;
    // a budget too small to finish
    let p: Presentation = "generators: a b\nrelation: a b a = b a b\n".parse()?;
    let c = knuth_bendix(&p, CompletionBudget { max_rules: 5, max_iterations: 3 });
    println!("braid relation, small budget: {:?} with {} rules", c.status, c.system.rules().len());
    Ok(())
}
