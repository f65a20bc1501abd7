use rug::Float;
use serde::Serialize;

use super::format::decimal;
use super::tpoint::{b4, xi};
use crate::error::{Error, Result};

/// Outcome of the grid check `2B₄(t) < ξ(t)`.
#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub gridsize: usize,
    /// Smallest relative margin `(ξ − 2B₄)/ξ` on the grid.
    pub min_margin: f64,
    pub argmin_t: f64,
    /// Relative margin at the first and last grid points.
    pub margin_first: f64,
    pub margin_last: f64,
}

/// Relative margin `(ξ(t) − 2B₄(t))/ξ(t)`.
pub fn regularity_margin(t: &Float) -> Float {
    let x = xi(t);
    let twice_b4 = b4(t) * 2u32;
    (x.clone() - twice_b4) / x
}

/// Checks `2B₄(t) < ξ(t)` at `t = i/(gridsize+1)`, `i = 1..=gridsize`.
pub fn verify_psi_regular(gridsize: usize, prec: u32) -> Result<RegularityReport> {
    if gridsize < 1000 {
        return Err(Error::Domain(format!("gridsize {gridsize} below 1000")));
    }
    let mut min_margin = f64::INFINITY;
    let mut argmin_t = 0.0;
    let mut first = 0.0;
    let mut last = 0.0;
    for i in 1..=gridsize {
        let t = Float::with_val(prec, i) / (gridsize as u32 + 1);
        let m = regularity_margin(&t);
        if !m.is_sign_positive() || m.is_zero() {
            return Err(Error::Regularity {
                t: decimal(&t, 12),
                lhs: decimal(&(b4(&t) * 2u32), 12),
                rhs: decimal(&xi(&t), 12),
            });
        }
        let mf = m.to_f64();
        if mf < min_margin {
            min_margin = mf;
            argmin_t = t.to_f64();
        }
        if i == 1 {
            first = mf;
        }
        last = mf;
    }
    Ok(RegularityReport {
        gridsize,
        min_margin,
        argmin_t,
        margin_first: first,
        margin_last: last,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holds_at_unit_weight_parameter() {
        let t = Float::with_val(256, 0.6263716633);
        let m = regularity_margin(&t).to_f64();
        // 2·0.000767 against 0.0382
        assert!((m - (1.0 - 2.0 * 0.7671782851e-3 / 0.0381910976)).abs() < 1e-8);
    }

    #[test]
    fn absolute_gap_grows_toward_zero() {
        let gap = |t: f64| {
            let t = Float::with_val(256, t);
            (xi(&t) - b4(&t) * 2u32).to_f64()
        };
        assert!(gap(1e-3) > gap(1e-2) && gap(1e-2) > 0.0);
        assert!(regularity_margin(&Float::with_val(256, 1e-4)).to_f64() > 0.0);
    }
}
