use rug::Float;

use super::real::HpDual;
use super::roots::{newton_bracketed, t_of_y_dual};
use super::tpoint::{self, TPoint};
use crate::error::{Error, Result};

/// `R(y) = ξ(t(y))`, the singularity of the network series.
pub fn r_of_y(y: &HpDual) -> Result<HpDual> {
    Ok(tpoint::xi(&t_of_y_dual(y)?))
}

/// `ρ(y)`, the singularity of the planar-graph series.
pub fn rho_of_y(y: &HpDual) -> Result<HpDual> {
    Ok(tpoint::q_rho(&t_of_y_dual(y)?))
}

/// `(ρ, ρ', ρ'')` at `y`.
pub fn rho_jet(y: &Float) -> Result<HpDual> {
    rho_of_y(&HpDual::variable(y.clone()))
}

/// The whole parametric point at `t(y)` with derivatives in `y`.
pub fn tpoint_of_y(y: &HpDual) -> Result<TPoint<HpDual>> {
    TPoint::new(t_of_y_dual(y)?)
}

/// `μ(y) = −yρ'(y)/ρ(y)` and its derivative in `y`.
pub fn edge_density(y: &Float) -> Result<(Float, Float)> {
    let j = rho_jet(y)?;
    let p = y.prec();
    let l1 = Float::with_val(p, &j.d1 / &j.v);
    let l2 = Float::with_val(p, &j.d2 / &j.v);
    let mu = -Float::with_val(p, y * &l1);
    // d/dy of −y ρ'/ρ = −ρ'/ρ − y(ρ''/ρ − (ρ'/ρ)²)
    let dmu = -l1.clone() - Float::with_val(p, y * (l2 - l1.square()));
    Ok((mu, dmu))
}

/// `σ²(y) = y μ'(y)`, the variance coefficient of the edge count.
pub fn edge_variance(y: &Float) -> Result<Float> {
    let (_, dmu) = edge_density(y)?;
    Ok(dmu * y)
}

/// The `y` in `[lo, hi]` with `ρ(y) = target`.
pub fn solve_rho_equals(target: &Float, lo: Float, hi: Float) -> Result<Float> {
    newton_bracketed(lo, hi, |y| match rho_jet(y) {
        Ok(j) => (j.v - target, j.d1),
        Err(_) => {
            let nan = Float::with_val(y.prec(), f64::NAN);
            (nan.clone(), nan)
        }
    })
    .map_err(|e| match e {
        Error::RootBracketing(m) => Error::RootBracketing(format!("rho(y) = target: {m}")),
        other => other,
    })
}

/// Central difference of `ρ` with step `h`, for checking the jets.
pub fn rho_central_difference(y: &Float, h: &Float) -> Result<(Float, Float)> {
    let p = y.prec();
    let val = |v: Float| -> Result<Float> { Ok(rho_of_y(&HpDual::constant(v))?.v) };
    let up = val(Float::with_val(p, y + h))?;
    let mid = val(y.clone())?;
    let dn = val(Float::with_val(p, y - h))?;
    let h2 = Float::with_val(p, h.square_ref());
    let d1 = Float::with_val(p, &up - &dn) / (Float::with_val(p, h) * 2u32);
    let d2 = (up - mid * 2u32 + dn) / h2;
    Ok((d1, d2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: f64) -> Float {
        Float::with_val(256, v)
    }

    #[test]
    fn values_at_one() {
        let r = r_of_y(&HpDual::constant(f(1.0))).unwrap();
        assert!((r.v.to_f64() - 0.0381910976).abs() < 1e-10);
        let j = rho_jet(&f(1.0)).unwrap();
        assert!((1.0 / j.v.to_f64() / 27.2268777685 - 1.0).abs() < 1e-9);
        let kappa = -(j.d1.to_f64() / j.v.to_f64());
        assert!((kappa - 2.2132652385).abs() < 1e-8);
    }

    #[test]
    fn jets_agree_with_differences() {
        let y = f(1.0);
        let j = rho_jet(&y).unwrap();
        let (d1, d2) = rho_central_difference(&y, &f(1e-8)).unwrap();
        assert!(((d1 - &j.d1) / &j.d1).abs().to_f64() < 1e-10);
        assert!(((d2 - &j.d2) / &j.d2).abs().to_f64() < 1e-10);
    }
}
