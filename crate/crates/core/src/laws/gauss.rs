use rug::Float;
use serde::Serialize;
use serde_json::json;

use crate::closedform::{b_x_derivatives, decimal, rho_jet, solve_t_of_y, TPoint};
use crate::error::{Error, Result};

/// Which parameter a Gaussian law describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LawContext {
    Edges,
    Blocks,
    Appearances { h: u32 },
}

/// Mean and variance both linear in `n`: `μₙ ∼ mean_coeff·n`,
/// `σₙ² ∼ var_coeff·n`.
#[derive(Clone, Debug)]
pub struct GaussLaw {
    pub context: LawContext,
    pub mean_coeff: Float,
    pub var_coeff: Float,
}

impl GaussLaw {
    pub fn to_json(&self, digits: usize) -> serde_json::Value {
        json!({
            "law": "gaussian",
            "context": self.context,
            "mean_coeff": decimal(&self.mean_coeff, digits),
            "var_coeff": decimal(&self.var_coeff, digits),
        })
    }
}

/// Number of edges in a random planar graph: `κ = −ρ'(1)/ρ(1)` and
/// `λ = −ρ''/ρ − ρ'/ρ + (ρ'/ρ)²` at `y = 1`.
pub fn edges_law(prec: u32) -> Result<GaussLaw> {
    let j = rho_jet(&Float::with_val(prec, 1))?;
    let l1 = Float::with_val(prec, &j.d1 / &j.v);
    let l2 = Float::with_val(prec, &j.d2 / &j.v);
    let kappa = -l1.clone();
    let lambda = -l2 - &l1 + Float::with_val(prec, l1.square_ref());
    Ok(GaussLaw {
        context: LawContext::Edges,
        mean_coeff: kappa,
        var_coeff: lambda,
    })
}

/// Number of blocks in a random connected planar graph. The singularity
/// moves as `R·exp(−y B'(R))`, so mean and variance coefficients coincide
/// at `B'(R) = log(R/ρ)`.
pub fn blocks_law(prec: u32) -> Result<GaussLaw> {
    let tp = TPoint::new(solve_t_of_y(&Float::with_val(prec, 1))?)?;
    let zeta = Float::with_val(prec, &tp.xi / &tp.rho).ln();
    Ok(GaussLaw {
        context: LawContext::Blocks,
        mean_coeff: zeta.clone(),
        var_coeff: zeta,
    })
}

/// `B'(x)` sampled as `x → R⁻`, and its extrapolated limit.
#[derive(Clone, Debug)]
pub struct ZetaCheck {
    /// `(ε, B'(R(1−ε)))` for decreasing `ε`.
    pub samples: Vec<(f64, Float)>,
    pub extrapolated: Float,
}

/// Independent route to `ζ`: evaluate `∂B/∂x` numerically just below `R`
/// and remove the linear term in `ε` by Richardson extrapolation.
pub fn zeta_by_extrapolation(prec: u32) -> Result<ZetaCheck> {
    let one = Float::with_val(prec, 1);
    let tp = TPoint::new(solve_t_of_y(&one)?)?;
    let mut samples = Vec::new();
    for k in 6..=12 {
        let eps = 10f64.powi(-k);
        let x = Float::with_val(prec, &tp.xi) * (Float::with_val(prec, 1) - Float::with_val(prec, eps));
        let (b1, _) = b_x_derivatives(&x, &one)?;
        samples.push((eps, b1));
    }
    let n = samples.len();
    if n < 2 {
        return Err(Error::NoConvergence("too few extrapolation samples".into()));
    }
    let (coarse, fine) = (&samples[n - 2].1, &samples[n - 1].1);
    let extrapolated = (Float::with_val(prec, fine * 10u32) - coarse) / 9u32;
    Ok(ZetaCheck {
        samples,
        extrapolated,
    })
}
