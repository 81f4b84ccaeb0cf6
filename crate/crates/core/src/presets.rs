//! Built-in presentations.

use crate::rewrite::{Presentation, PresentationError, RewriteSystem};

/// The presets every verification run covers.
pub const CORE_PRESETS: [&str; 5] = ["j-inf", "d-inf", "k-inf", "t", "i2c3"];

/// Every addressable preset, including the auxiliary two-element group `c2`.
pub const ALL_PRESETS: [&str; 6] = ["j-inf", "d-inf", "k-inf", "t", "i2c3", "c2"];

/// Source text of a preset in the presentation file format.
pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        // free product of two two-element semilattices
        "j-inf" => "generators: e f\nrelation: e e = e\nrelation: f f = f\n",
        // infinite dihedral group
        "d-inf" => "generators: a b\nrelation: a a = 1\nrelation: b b = 1\n",
        // idempotent * involution
        "k-inf" => "generators: e b\nrelation: e e = e\nrelation: b b = 1\n",
        // six-element quotient of k-inf
        "t" => "generators: f g\nrelation: f f = f\nrelation: f g f = f\nrelation: g g = 1\n",
        "i2c3" => "generators: e g\nrelation: e e = e\nrelation: g g g = 1\n",
        "c2" => "generators: c\nrelation: c c = 1\n",
        _ => return None,
    })
}

pub fn presentation(name: &str) -> Result<Presentation, PresentationError> {
    let text = source(name).ok_or_else(|| PresentationError::UnknownPreset(name.to_string()))?;
    Presentation::parse(text)
}

/// The oriented rewrite system of a preset.
pub fn system(name: &str) -> Result<RewriteSystem, PresentationError> {
    presentation(name).map(|p| RewriteSystem::orient(&p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_parse_and_are_confluent() {
        for name in ALL_PRESETS {
            let rs = system(name).unwrap();
            assert!(rs.is_locally_confluent(), "{name}");
            assert!(rs.warnings().is_empty());
        }
        assert!(matches!(presentation("nope"), Err(PresentationError::UnknownPreset(_))));
    }
}
