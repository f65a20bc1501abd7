//! The growth ratio exp(λ(μ)) of planar graphs with about μn edges, as CSV
//! ready for plotting.

use planarcount::laws::{curve_to_csv, growth_curve, local_law};
use rug::Float;

fn main() -> planarcount::Result<()> {
    let f = |v: f64| Float::with_val(128, v);
    let points = growth_curve(&f(1.02), &f(2.98), 50)?;
    print!("{}", curve_to_csv(&points, 10, true));

    for mu in ["1.000001", "2.999"] {
        let pt = local_law(&Float::with_val(128, Float::parse(mu).unwrap()))?;
        eprintln!("mu = {mu}: growth ratio {:.6}", pt.growth_ratio().to_f64());
    }
    eprintln!("limits: e = {:.6}, 256/27 = {:.6}", std::f64::consts::E, 256.0 / 27.0);
    Ok(())
}
