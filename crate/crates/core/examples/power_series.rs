//! Exact truncated power series: Catalan numbers from an implicit equation
//! and a round trip through exp and log.

use planarcount::pseries::{newton_scalar, Rat, USeries};

fn main() -> planarcount::Result<()> {
    let n = 10;
    // F = x(1 + F)²
    let cat = newton_scalar(
        |f: &USeries| {
            let one_plus = &USeries::one(f.order()) + f;
            Ok(f - &(&USeries::var(f.order()) * &(&one_plus * &one_plus)))
        },
        |f: &USeries| {
            let one_plus = &USeries::one(f.order()) + f;
            Ok(&USeries::one(f.order()) - &(&USeries::var(f.order()) * &one_plus).scale(&Rat::from(2)))
        },
        &USeries::zero(n),
        n,
    )?;
    println!("Catalan numbers: {cat}");

    let s = USeries::from_poly(&[0, 1, -3, 5, 2].map(Rat::from), n);
    let back = s.exp()?.log()?;
    println!("log(exp(S)) = S: {}", back == s);
    Ok(())
}
