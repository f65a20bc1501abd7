//! Exhaustive enumeration of small labelled graphs: planarity by minor
//! search, connectivity, and count tables comparable with the series.

mod code;
mod enumerate;
mod planarity;

pub use code::{GraphCode, MAX_VERTICES};
pub use enumerate::{connectivity, enumerate_counts, Connectivity, ORACLE_NMAX};
pub use planarity::is_planar;
