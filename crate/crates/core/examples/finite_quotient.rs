//! The six-element monoid T, its idempotents, and the map from K-inf onto it.

use monoidlab::finite::{FiniteMonoid, GeneratorMap, Homomorphism};
use monoidlab::presets;
use monoidlab::word::Word;

fn main() -> Result<(), monoidlab::Error> {
    let t = FiniteMonoid::build(&presets::system("t")?, 100)?;
    println!("T has {} elements", t.len());
    print!("{}", t.cayley_table());
    let idem: Vec<String> = t.idempotents().iter().map(|&x| t.element(x).to_string()).collect();
    println!("idempotents: {}", idem.join(", "));

    let k = presets::system("k-inf")?;
    let h = Homomorphism::new(&k, &GeneratorMap::parse("e=f,b=g", k.generators(), &t)?, &t)?;
    for text in ["e b e", "b e b", "e b e b", "b"] {
        let w = Word::parse(k.generators(), text)?;
        println!("{h}: {w} |-> {}", t.element(h.image(&w)));
    }

    match Homomorphism::new(&k, &GeneratorMap::parse("e=g,b=g", k.generators(), &t)?, &t) {
        Ok(_) => println!("e=g unexpectedly accepted"),
        Err(e) => println!("e=g rejected: {e}"),
    }

    match FiniteMonoid::build(&k, 500) {
        Ok(m) => println!("k-inf closed with {} elements?", m.len()),
        Err(e) => println!("k-inf: {e}"),
    }
    Ok(())
}
