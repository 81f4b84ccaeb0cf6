//! Free subsemigroups: `e g` and `e g g` are free in the free product of a
//! two-element semilattice and a cyclic group of order 3; `e b` and `b e` in
//! K-inf are not.

use monoidlab::identity::free_pair_check;
use monoidlab::presets;
use monoidlab::word::Word;

fn main() -> Result<(), monoidlab::Error> {
    for (name, u, v) in [("i2c3", "e g", "e g g"), ("k-inf", "e b", "b e"), ("d-inf", "a b", "b a")] {
        let rs = presets::system(name)?;
        let r = free_pair_check(&rs, &Word::parse(rs.generators(), u)?, &Word::parse(rs.generators(), v)?, 6)?;
        match r.collision {
            None => println!("{name}: u = {u}, v = {v} free on {} products", r.products),
            Some(c) => println!("{name}: u = {u}, v = {v} not free, {} = {} = {}", c.first, c.second, c.value),
        }
    }
    Ok(())
}
