//! Zimin words are isoterms for K-inf and D-inf: every balanced rearrangement
//! of Z_n is refuted by some substitution.
//!
//! Pass `4` as the first argument to include Z_4 (675,674 candidates).

use monoidlab::identity::zimin_isoterm_check;
use monoidlab::presets;

fn main() -> Result<(), monoidlab::Error> {
    let max_n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    for name in ["k-inf", "d-inf"] {
        let rs = presets::system(name)?;
        for n in 1..=max_n {
            let r = zimin_isoterm_check(&rs, n, 2)?;
            println!("{name} Z{n}: {r}");
            if let Some(first) = r.refuted.first() {
                println!("  e.g. {} refuted by {}", first.candidate, first.witness);
            }
        }
    }
    Ok(())
}
