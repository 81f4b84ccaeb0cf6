//! Normal forms and confluence in the three free products of two-element monoids.

use monoidlab::presets;
use monoidlab::word::Word;

fn main() -> Result<(), monoidlab::Error> {
    for name in ["j-inf", "d-inf", "k-inf"] {
        let rs = presets::system(name)?;
        print!("{name}:\n{}", rs.presentation());
        for r in rs.rules() {
            println!("  rule {r}");
        }
        println!("  locally confluent: {}", rs.is_locally_confluent());
        let forms: Vec<String> = rs.enumerate_normal_forms(4)?.iter().map(ToString::to_string).collect();
        println!("  normal forms up to length 4: {}", forms.join(" | "));
    }

    let k = presets::system("k-inf")?;
    let w = Word::parse(k.generators(), "e b b e")?;
    println!("k-inf: {w} -> {}", k.normal_form(&w));
    let d = presets::system("d-inf")?;
    let w = Word::parse(d.generators(), "a b a b a a b a b a b a b")?;
    println!("d-inf: {w} -> {}", d.normal_form(&w));
    Ok(())
}
