//! Brute-force enumeration of small labelled graphs compared against the
//! series counts.

use planarcount::gfpipe::{extract_counts, Family, GfBundle};
use planarcount::oracle::{enumerate_counts, is_planar, GraphCode};

fn main() -> planarcount::Result<()> {
    let nmax = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    println!("K5 planar: {}", is_planar(&GraphCode::complete(5)?)?);
    println!("K3,3 planar: {}", is_planar(&GraphCode::complete_bipartite(3, 3)?)?);

    let start = std::time::Instant::now();
    let oracle = enumerate_counts(nmax)?;
    println!("enumerated n <= {nmax} in {:.2?}", start.elapsed());
    let fams = [Family::Planar, Family::Connected, Family::Biconnected];
    let series = extract_counts(&GfBundle::build(nmax)?, nmax, &fams)?;
    for n in 1..=nmax {
        let g = oracle.total(Family::Planar, n).unwrap();
        let c = oracle.total(Family::Connected, n).unwrap();
        let b = oracle.total(Family::Biconnected, n).unwrap();
        println!("n = {n}: g = {g}, c = {c}, b = {b}");
    }
    match oracle.first_difference(&series) {
        None => println!("series and enumeration agree"),
        Some((f, n, q)) => println!("mismatch in {} at n = {n}, q = {q}", f.letter()),
    }
    Ok(())
}
