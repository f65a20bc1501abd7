//! Computes every named constant and shows how it compares with the
//! published decimals.

use planarcount::closedform::{decimal, ConstantsBundle};

fn main() -> planarcount::Result<()> {
    let prec = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(256);
    let start = std::time::Instant::now();
    let bundle = ConstantsBundle::compute(prec)?;
    println!("computed at {prec} bits in {:.2?}\n", start.elapsed());
    println!("{:<12} {:<28} {:<18} agrees", "name", "value", "published");
    for e in bundle.entries() {
        println!(
            "{:<12} {:<28} {:<18} {}",
            e.name,
            decimal(&e.value, 20),
            e.published.unwrap_or("-"),
            e.agrees().map_or("-".to_string(), |a| a.to_string())
        );
    }
    Ok(())
}
