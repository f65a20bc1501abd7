use rayon::prelude::*;
use rug::float::Constant;
use rug::Float;
use serde_json::json;

use crate::closedform::{
    big_y, decimal, edge_density, gamma_minus_five_halves, newton_bracketed, q_rho,
    solve_t_of_y, HpDual, SingularCoefficients, TPoint,
};
use crate::error::{Error, Result};

const BRACKET_LIMIT: usize = 80;

/// Whether an estimate is for all planar graphs or connected ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountKind {
    Planar,
    Connected,
}

/// The local limit law at edge ratio `μ`.
#[derive(Clone, Debug)]
pub struct LocalLawPoint {
    pub mu: Float,
    /// Edge weight with `−uρ'(u)/ρ(u) = μ`.
    pub u: Float,
    /// Parameter `t` with `Y(t) = u`.
    pub t: Float,
    pub rho_u: Float,
    pub sigma: Float,
    /// `λ(μ) = −μ log u − log ρ(u)`.
    pub lambda_mu: Float,
    pub g5: Float,
    pub c5: Float,
}

impl LocalLawPoint {
    /// `exp(λ(μ))`.
    pub fn growth_ratio(&self) -> Float {
        self.lambda_mu.clone().exp()
    }

    /// Natural log of the asymptotic estimate of `g_{n,⌊μn⌋}/n!` (or the
    /// connected analogue):
    ///
    /// ```text
    /// K₅(u) ρ(u)^(−n) u^(−⌊μn⌋) / (√(2πn) Γ(−5/2) σ n^(7/2))
    /// ```
    pub fn log_estimate(&self, n: u64, kind: CountKind) -> Result<Float> {
        if n == 0 {
            return Err(Error::Domain("n must be positive".into()));
        }
        let p = self.mu.prec();
        let k5 = match kind {
            CountKind::Planar => &self.g5,
            CountKind::Connected => &self.c5,
        };
        let lead = Float::with_val(p, k5 / gamma_minus_five_halves(p));
        if !lead.is_sign_positive() || lead.is_zero() {
            return Err(Error::Domain("leading constant is not positive".into()));
        }
        let nf = Float::with_val(p, n);
        let q = Float::with_val(p, &self.mu * n).floor();
        let ln_n = Float::with_val(p, nf.ln_ref());
        let two_pi_n = Float::with_val(p, Constant::Pi) * 2u32 * &nf;
        Ok(lead.ln()
            - nf * Float::with_val(p, self.rho_u.ln_ref())
            - q * Float::with_val(p, self.u.ln_ref())
            - two_pi_n.ln() / 2u32
            - Float::with_val(p, self.sigma.ln_ref())
            - ln_n * 7u32 / 2u32)
    }

    pub fn to_json(&self, digits: usize) -> serde_json::Value {
        json!({
            "law": "local",
            "mu": decimal(&self.mu, digits),
            "u": decimal(&self.u, digits),
            "rho_u": decimal(&self.rho_u, digits),
            "sigma": decimal(&self.sigma, digits),
            "lambda_mu": decimal(&self.lambda_mu, digits),
            "growth_ratio": decimal(&self.growth_ratio(), digits),
            "G5": decimal(&self.g5, digits),
            "C5": decimal(&self.c5, digits),
        })
    }
}

/// `μ`, `dμ/dt`, and `σ²` as functions of the parameter `t`, where
/// `μ = −Y ρ_t / (Y_t ρ)` and `σ² = Y μ_t / Y_t`.
fn mu_in_t(t: &Float) -> (Float, Float, Float) {
    let p = t.prec();
    let td = HpDual::variable(t.clone());
    let y = big_y(&td);
    let r = q_rho(&td);
    let num = Float::with_val(p, &y.v * &r.d1);
    let den = Float::with_val(p, &y.d1 * &r.v);
    let dnum = Float::with_val(p, &y.d1 * &r.d1) + Float::with_val(p, &y.v * &r.d2);
    let dden = Float::with_val(p, &y.d2 * &r.v) + Float::with_val(p, &y.d1 * &r.d1);
    let mu = -Float::with_val(p, &num / &den);
    let den2 = Float::with_val(p, den.square_ref());
    let dmu = -(Float::with_val(p, &dnum * &den) - Float::with_val(p, &num * &dden)) / den2;
    let sigma2 = Float::with_val(p, &y.v * &dmu) / &y.d1;
    (mu, dmu, sigma2)
}

fn edge_ratio(u: &Float) -> Result<Float> {
    Ok(edge_density(u)?.0)
}

/// The local law at `μ ∈ (1,3)`. The weight `u` is bracketed from `[1/2, 2]`
/// by geometric expansion, then refined in the parameter `t`.
pub fn local_law(mu: &Float) -> Result<LocalLawPoint> {
    let p = mu.prec();
    if !(*mu > 1 && *mu < 3) {
        return Err(Error::Domain(format!("mu = {} outside (1,3)", mu.to_f64())));
    }
    let mut lo = Float::with_val(p, 0.5);
    let mut hi = Float::with_val(p, 2);
    let mut steps = 0;
    while edge_ratio(&lo)? >= *mu {
        lo /= 2u32;
        steps += 1;
        if steps > BRACKET_LIMIT {
            return Err(Error::RootBracketing(format!("no lower weight for mu = {}", mu.to_f64())));
        }
    }
    steps = 0;
    while edge_ratio(&hi)? <= *mu {
        hi *= 2u32;
        steps += 1;
        if steps > BRACKET_LIMIT {
            return Err(Error::RootBracketing(format!("no upper weight for mu = {}", mu.to_f64())));
        }
    }
    let t_lo = solve_t_of_y(&lo)?;
    let t_hi = solve_t_of_y(&hi)?;
    let t = newton_bracketed(t_lo, t_hi, |t| {
        let (m, dm, _) = mu_in_t(t);
        (m - mu, dm)
    })?;
    let (_, _, sigma2) = mu_in_t(&t);
    if !sigma2.is_sign_positive() || sigma2.is_zero() {
        return Err(Error::Domain("non-positive variance".into()));
    }
    let tp = TPoint::new(t.clone())?;
    let sc = SingularCoefficients::from_tpoint(&tp);
    let u = tp.y.clone();
    let lambda_mu = -Float::with_val(p, mu * Float::with_val(p, u.ln_ref()))
        - Float::with_val(p, tp.rho.ln_ref());
    Ok(LocalLawPoint {
        mu: mu.clone(),
        u,
        t,
        rho_u: tp.rho,
        sigma: sigma2.sqrt(),
        lambda_mu,
        g5: sc.g5,
        c5: sc.c5,
    })
}

/// One row of the growth-ratio curve.
#[derive(Clone, Debug)]
pub struct CurvePoint {
    pub mu: Float,
    pub u: Float,
    pub lambda_mu: Float,
    pub growth_ratio: Float,
}

/// `steps` equally spaced ratios from `mu_min` to `mu_max` inclusive,
/// evaluated in parallel.
pub fn growth_curve(mu_min: &Float, mu_max: &Float, steps: usize) -> Result<Vec<CurvePoint>> {
    let p = mu_min.prec().max(mu_max.prec());
    if steps == 0 {
        return Ok(Vec::new());
    }
    if mu_min > mu_max {
        return Err(Error::Domain("mu_min exceeds mu_max".into()));
    }
    let width = Float::with_val(p, mu_max - mu_min);
    (0..steps)
        .into_par_iter()
        .map(|i| {
            let mu = if steps == 1 {
                Float::with_val(p, mu_min)
            } else {
                Float::with_val(p, &width * i as u64) / (steps as u64 - 1) + mu_min
            };
            let pt = local_law(&mu)?;
            Ok(CurvePoint {
                growth_ratio: pt.growth_ratio(),
                mu,
                u: pt.u,
                lambda_mu: pt.lambda_mu,
            })
        })
        .collect()
}

/// Renders the curve as CSV with columns `mu,u,lambda_mu,growth_ratio`.
pub fn curve_to_csv(points: &[CurvePoint], digits: usize, header: bool) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if header {
        w.write_record(["mu", "u", "lambda_mu", "growth_ratio"])
            .expect("writing to memory");
    }
    for pt in points {
        w.write_record([
            decimal(&pt.mu, digits),
            decimal(&pt.u, digits),
            decimal(&pt.lambda_mu, digits),
            decimal(&pt.growth_ratio, digits),
        ])
        .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("ascii output")
}
