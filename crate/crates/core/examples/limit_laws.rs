//! Parameters of the Gaussian and Poisson limit laws, and the edge-entropy
//! constant.

use planarcount::laws::{
    appearances_law, blocks_law, builtin_family_law, components_law, edge_entropy_tau, edges_law,
    local_law, CountKind, FamilyKind,
};
use rug::Float;

fn main() -> planarcount::Result<()> {
    let p = 256;
    let digits = 12;
    println!("edges        {}", edges_law(p)?.to_json(digits));
    println!("blocks       {}", blocks_law(p)?.to_json(digits));
    println!("components   {}", components_law(p)?.to_json(digits));
    println!("2-connected  {}", builtin_family_law(FamilyKind::Biconnected, p)?.to_json(digits));
    println!("isolated     {}", builtin_family_law(FamilyKind::SingleVertex, p)?.to_json(digits));
    println!("tau          {}", edge_entropy_tau(p)?.to_json(digits));

    let app = appearances_law(2, p)?;
    let half_mean = Float::with_val(p, &app.law.mean_coeff / 2u32);
    println!("appear h=2   {}", app.law.to_json(digits));
    println!("  P(X < mean/2 · n) <= base^n: {}", app.deviation_bound(&half_mean)?.to_json(digits));

    let pt = local_law(&Float::with_val(p, 2))?;
    println!("local mu=2   {}", pt.to_json(digits));
    for n in [100, 1000, 10000] {
        let l = pt.log_estimate(n, CountKind::Planar)?;
        println!("  log(g(n, 2n)/n!) ~ {:.6} at n = {n}", l.to_f64());
    }
    Ok(())
}
