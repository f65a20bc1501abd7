use std::fmt;

use crate::error::{Error, Result};

/// Largest vertex count a [`GraphCode`] can hold.
pub const MAX_VERTICES: usize = 8;

/// A labelled simple graph on vertices `0..n` as a bitset over vertex
/// pairs. Pair `(i, j)` with `i < j` lives at bit `j(j−1)/2 + i`, so the
/// order is `(0,1), (0,2), (1,2), (0,3), …`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphCode {
    n: u8,
    bits: u32,
}

/// Bit position of the unordered pair `{i, j}`.
pub(crate) fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    b * (b - 1) / 2 + a
}

pub(crate) fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl GraphCode {
    pub fn new(n: usize, bits: u32) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Unsupported(format!("{n} vertices (at most {MAX_VERTICES})")));
        }
        let pairs = pair_count(n);
        if pairs < 32 && bits >> pairs != 0 {
            return Err(Error::Domain(format!("bits beyond the {pairs} pairs of {n} vertices")));
        }
        Ok(GraphCode { n: n as u8, bits })
    }

    pub fn empty(n: usize) -> Result<Self> {
        GraphCode::new(n, 0)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let pairs = pair_count(n.min(MAX_VERTICES));
        GraphCode::new(n, if pairs == 0 { 0 } else { u32::MAX >> (32 - pairs) })
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in a..a + b {
                edges.push((i, j));
            }
        }
        GraphCode::from_edges(a + b, &edges)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut bits = 0u32;
        for &(i, j) in edges {
            if i == j || i >= n || j >= n {
                return Err(Error::Domain(format!("bad edge ({i}, {j}) on {n} vertices")));
            }
            bits |= 1 << pair_index(i, j);
        }
        GraphCode::new(n, bits)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn edge_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && i < self.n() && j < self.n() && self.bits >> pair_index(i, j) & 1 == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 1..self.n() {
            for i in 0..j {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn without_edge(&self, i: usize, j: usize) -> Self {
        GraphCode {
            n: self.n,
            bits: self.bits & !(1 << pair_index(i, j)),
        }
    }

    /// Neighbourhood bitmasks.
    pub fn adjacency(&self) -> [u8; MAX_VERTICES] {
        let mut adj = [0u8; MAX_VERTICES];
        for (i, j) in self.edges() {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        adj
    }

    pub(crate) fn from_adjacency(n: usize, adj: &[u8; MAX_VERTICES]) -> Self {
        let mut bits = 0u32;
        for j in 1..n {
            for i in 0..j {
                if adj[j] >> i & 1 == 1 {
                    bits |= 1 << pair_index(i, j);
                }
            }
        }
        GraphCode { n: n as u8, bits }
    }
}

impl fmt::Debug for GraphCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GraphCode(n={}, edges={:?})", self.n, self.edges())
    }
}
