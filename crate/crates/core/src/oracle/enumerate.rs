use rayon::prelude::*;
use rug::Integer;

use super::code::{pair_count, GraphCode};
use super::planarity::is_planar;
use crate::error::{Error, Result};
use crate::gfpipe::{qmax, CountTable, Family};

/// Largest `n` the exhaustive enumeration accepts.
pub const ORACLE_NMAX: usize = 7;

const CHUNK: u32 = 1 << 12;

/// Component count and 2-connectivity of a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Connectivity {
    pub components: usize,
    /// Connected, at least two vertices, and no cut vertex. A single edge
    /// qualifies.
    pub biconnected: bool,
}

fn components_of(adj: &[u8], alive: u8) -> usize {
    let mut seen = 0u8;
    let mut count = 0;
    for v in 0..adj.len() {
        if alive >> v & 1 == 0 || seen >> v & 1 == 1 {
            continue;
        }
        count += 1;
        let mut frontier = 1u8 << v;
        seen |= frontier;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[u] & alive & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
    }
    count
}

pub fn connectivity(g: &GraphCode) -> Connectivity {
    let n = g.n();
    let adj = g.adjacency();
    let all = if n == 8 { u8::MAX } else { (1u8 << n) - 1 };
    let components = components_of(&adj[..n], all);
    let biconnected = n >= 2
        && components == 1
        && (0..n).all(|v| components_of(&adj[..n], all & !(1 << v)) == 1);
    Connectivity {
        components,
        biconnected,
    }
}

type Tally = [Vec<u64>; 3];

fn tally_range(n: usize, range: std::ops::Range<u64>) -> Result<Tally> {
    let width = qmax(n) + 1;
    let mut t: Tally = [vec![0; width], vec![0; width], vec![0; width]];
    for bits in range {
        let g = GraphCode::new(n, bits as u32)?;
        if !is_planar(&g)? {
            continue;
        }
        let q = g.edge_count();
        t[0][q] += 1;
        let c = connectivity(&g);
        if c.components == 1 {
            t[1][q] += 1;
        }
        if c.biconnected {
            t[2][q] += 1;
        }
    }
    Ok(t)
}

fn merge(mut a: Tally, b: Tally) -> Tally {
    for (x, y) in a.iter_mut().zip(b) {
        for (p, q) in x.iter_mut().zip(y) {
            *p += q;
        }
    }
    a
}

/// Planar, connected planar and 2-connected planar graphs on `1..=nmax`
/// labelled vertices, by edge count, from all `2^C(n,2)` graphs.
pub fn enumerate_counts(nmax: usize) -> Result<CountTable> {
    if nmax > ORACLE_NMAX {
        return Err(Error::Unsupported(format!("oracle nmax {nmax} (at most {ORACLE_NMAX})")));
    }
    let families = [Family::Planar, Family::Connected, Family::Biconnected];
    let mut table = CountTable::new(nmax, &families);
    for n in 1..=nmax {
        let total = 1u64 << pair_count(n);
        let chunks = total.div_ceil(u64::from(CHUNK));
        let tally = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = c * u64::from(CHUNK);
                tally_range(n, lo..(lo + u64::from(CHUNK)).min(total))
            })
            .try_reduce(
                || {
                    let w = qmax(n) + 1;
                    [vec![0; w], vec![0; w], vec![0; w]]
                },
                |a, b| Ok(merge(a, b)),
            )?;
        for (fam, counts) in families.iter().zip(tally) {
            let row = &mut table.tables.get_mut(fam).expect("family present")[n];
            for (q, c) in counts.into_iter().enumerate() {
                row[q] = Integer::from(c);
            }
        }
    }
    Ok(table)
}
