//! Runs the whole verification report, as `monoidlab reproduce` does.

use monoidlab::report::{exit_code, reproduce, Profile};

fn main() {
    let profile = if std::env::args().any(|a| a == "--full") { Profile::Full } else { Profile::Quick };
    let lines = reproduce(profile);
    for line in &lines {
        println!("{line}");
    }
    std::process::exit(exit_code(&lines));
}
