use rug::Float;
use serde_json::json;

use crate::closedform::{decimal, rho_of_y, solve_rho_equals, HpDual};
use crate::error::{Error, Result};

/// Exponential growth of `[yᵐ] G(1, y)`.
#[derive(Clone, Debug)]
pub struct EdgeEntropy {
    /// The edge weight `y*` where `ρ(y*) = 1`, the singularity of `G(1, y)`.
    pub singularity: Float,
    /// Growth rate `1/y*`.
    pub tau: Float,
    pub log2_tau: Float,
}

impl EdgeEntropy {
    pub fn to_json(&self, digits: usize) -> serde_json::Value {
        json!({
            "singularity": decimal(&self.singularity, digits),
            "tau": decimal(&self.tau, digits),
            "log2_tau": decimal(&self.log2_tau, digits),
        })
    }
}

/// Locates `ρ(y) = 1` and reports the growth rate of the edge-indexed
/// coefficients. `ρ` decreases in `y` and `ρ(1) < 1`, so the root lies
/// below 1; the lower end is halved until it is bracketed.
pub fn edge_entropy_tau(prec: u32) -> Result<EdgeEntropy> {
    let rho = |y: &Float| -> Result<Float> { Ok(rho_of_y(&HpDual::constant(y.clone()))?.v) };
    let hi = Float::with_val(prec, 1);
    let mut lo = Float::with_val(prec, 0.5);
    let mut n = 0;
    while rho(&lo)? <= 1 {
        lo /= 2u32;
        n += 1;
        if n > 60 {
            return Err(Error::RootBracketing("rho(y) = 1 not bracketed".into()));
        }
    }
    let singularity = solve_rho_equals(&Float::with_val(prec, 1), lo, hi)?;
    let tau = Float::with_val(prec, singularity.recip_ref());
    let log2_tau = Float::with_val(prec, tau.log2_ref());
    Ok(EdgeEntropy {
        singularity,
        tau,
        log2_tau,
    })
}
