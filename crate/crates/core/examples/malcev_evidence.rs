//! Bounded evidence that K-inf and D-inf are commutative-by-finite, plus the
//! kernel classes of K-inf onto T and their descriptors.

use monoidlab::finite::{FiniteMonoid, GeneratorMap, Homomorphism};
use monoidlab::malcev::{classify, malcev_com_fin_evidence, match_class_descriptors, parse_descriptors, K_INF_ONTO_T_DESCRIPTORS};
use monoidlab::presets;

fn main() -> Result<(), monoidlab::Error> {
    let k = presets::system("k-inf")?;
    let t = FiniteMonoid::build(&presets::system("t")?, 100)?;
    let map = GeneratorMap::parse("e=f,b=g", k.generators(), &t)?;
    let h = Homomorphism::new(&k, &map, &t)?;

    for class in classify(&h, 6) {
        let members: Vec<String> = class.members.iter().map(ToString::to_string).collect();
        println!("class {:5} idempotent={:5} {}", class.label.to_string(), class.is_idempotent, members.join(" | "));
    }
    let d = parse_descriptors(&h, K_INF_ONTO_T_DESCRIPTORS)?;
    let m = match_class_descriptors(&h, 12, &d);
    println!("descriptors match up to length 12: {}", m.matched);

    println!("{}", malcev_com_fin_evidence(&k, &t, &map, 10)?);

    let dinf = presets::system("d-inf")?;
    let c2 = FiniteMonoid::build(&presets::system("c2")?, 10)?;
    println!("{}", malcev_com_fin_evidence(&dinf, &c2, &GeneratorMap::parse("a=c,b=c", dinf.generators(), &c2)?, 10)?);
    Ok(())
}
