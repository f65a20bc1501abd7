//! Exact counts of planar, connected planar and 2-connected planar graphs
//! from the generating-function pipeline.

use planarcount::gfpipe::{extract_counts, Family, GfBundle};

fn main() -> planarcount::Result<()> {
    let order = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(12);
    let bundle = GfBundle::build(order)?;
    let fams = [Family::Planar, Family::Connected, Family::Biconnected];
    let table = extract_counts(&bundle, order, &fams)?;
    println!("{:>3} {:>28} {:>28} {:>28}", "n", "planar", "connected", "2-connected");
    for n in 1..=order {
        let row: Vec<String> = fams.iter().map(|&f| table.total(f, n).unwrap().to_string()).collect();
        println!("{n:>3} {:>28} {:>28} {:>28}", row[0], row[1], row[2]);
    }
    println!("\nplanar graphs on 6 vertices by edge count:");
    for q in 0..=12 {
        println!("  q = {q:>2}: {}", table.get(Family::Planar, 6, q).unwrap());
    }
    Ok(())
}
