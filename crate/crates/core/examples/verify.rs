//! The full verification matrix, as run by `planarcount verify`.

use planarcount::cli::run_checks;

fn main() {
    let checks = run_checks(12, 5, 256, 12, None);
    for c in &checks {
        println!("{}  {:<22} {}", c.status(), c.name, c.detail);
    }
    if checks.iter().any(|c| !c.passed) {
        std::process::exit(1);
    }
}
