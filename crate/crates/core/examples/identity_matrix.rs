//! Three identities that separate the equational theories of J-inf, D-inf and K-inf.

use monoidlab::identity::{check_identity, evaluate, Identity};
use monoidlab::presets;

fn main() -> Result<(), monoidlab::Error> {
    let identities = ["x x y x = x y x x", "x x y y = y y x x", "x x x x y x x = x x y x x x x"];
    for text in identities {
        let id = Identity::parse(text)?;
        println!("{id}");
        for name in ["j-inf", "d-inf", "k-inf"] {
            let rs = presets::system(name)?;
            let v = check_identity(&rs, &id, 3);
            match v.witness() {
                Some(w) => {
                    let (l, r) = evaluate(&rs, &id, w)?;
                    println!("  {name:6} {v}   ({l} vs {r})");
                }
                None => println!("  {name:6} {v}"),
            }
        }
    }
    Ok(())
}
