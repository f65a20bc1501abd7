//! Numeric evaluation of the network series `D(x,y)` and of `B(x,y)`,
//! `C(x,y)` at real arguments inside the disc of convergence.

use rug::Float;

use super::real::{HpDual, Real};
use super::roots::{newton_bracketed, solve_t_of_y};
use super::tpoint::TPoint;
use crate::error::{Error, Result};

const CONTINUATION_STEPS: usize = 48;
const NEWTON_LIMIT: usize = 64;

/// Residuals of the network system in the unknowns `D` and `U = U(x,D)`,
/// with `V = D(1+U)²` eliminated:
///
/// ```text
/// U − xD(1+V)² = 0
/// (D/2)K − log(1+D) + log(1+y) + xD²/(1+xD) = 0
/// K = 1/(1+xD) + 1/(1+D) − 1 − (1+U)²(1+V)²/(1+U+V)³
/// ```
pub fn network_residual<T: Real>(x: &T, y: &T, d: &T, u: &T) -> [T; 2] {
    let one = x.lit(1);
    let pu = u.clone() + 1;
    let v = d.clone() * pu.powi(2);
    let pv = v.clone() + 1;
    let xd = x.clone() * d.clone();
    let r1 = u.clone() - xd.clone() * pv.powi(2);
    let s = pu.clone() + v;
    let k = (xd.clone() + 1).recip() + (d.clone() + 1).recip() - one
        - pu.powi(2) * pv.powi(2) / s.powi(3);
    let r2 = d.clone() * k / 2 - (d.clone() + 1).ln()
        + (y.clone() + 1).ln()
        + xd * d.clone() / (x.clone() * d.clone() + 1);
    [r1, r2]
}

/// Jacobian of [`network_residual`] in `(D, U)` at plain float arguments.
fn network_jacobian(x: &Float, y: &Float, d: &Float, u: &Float) -> [[Float; 2]; 2] {
    let c = |v: &Float| HpDual::constant(v.clone());
    let var = |v: &Float| HpDual::variable(v.clone());
    let by_d = network_residual(&c(x), &c(y), &var(d), &c(u));
    let by_u = network_residual(&c(x), &c(y), &c(d), &var(u));
    [
        [by_d[0].d1.clone(), by_u[0].d1.clone()],
        [by_d[1].d1.clone(), by_u[1].d1.clone()],
    ]
}

fn solve2(j: &[[Float; 2]; 2], r: &[Float; 2]) -> Result<[Float; 2]> {
    let p = j[0][0].prec();
    let det = Float::with_val(p, &j[0][0] * &j[1][1]) - Float::with_val(p, &j[0][1] * &j[1][0]);
    if det.is_zero() || !det.is_finite() {
        return Err(Error::AtBranchPoint);
    }
    let a = (Float::with_val(p, &j[1][1] * &r[0]) - Float::with_val(p, &j[0][1] * &r[1])) / &det;
    let b = (Float::with_val(p, &j[0][0] * &r[1]) - Float::with_val(p, &j[1][0] * &r[0])) / &det;
    Ok([a, b])
}

fn newton_values(x: &Float, y: &Float, d: &mut Float, u: &mut Float, limit: usize) -> Result<()> {
    let p = d.prec();
    let tiny_bits = p as i32 - 8;
    let stall_bits = p as i32 / 2;
    let mut last: Option<Float> = None;
    for _ in 0..limit {
        let r = network_residual(x, y, d, u);
        let j = network_jacobian(x, y, d, u);
        let [dd, du] = solve2(&j, &r)?;
        *d -= &dd;
        *u -= &du;
        let scale = Float::with_val(p, d.abs_ref()) + 1u32;
        let step = Float::with_val(p, dd.abs_ref()) + du.abs();
        if step <= Float::with_val(p, &scale >> tiny_bits) {
            return Ok(());
        }
        // Near the branch point the Jacobian degenerates and rounding sets a
        // floor above the absolute tolerance; stop once steps stall there.
        if let Some(prev) = &last {
            if step <= (scale >> stall_bits) && &step >= prev {
                return Ok(());
            }
        }
        last = Some(step);
    }
    Err(Error::NoConvergence(format!(
        "network Newton at x = {}, y = {}",
        x.to_f64(),
        y.to_f64()
    )))
}

/// A converged point of the network system.
#[derive(Clone, Debug)]
pub struct NetworkPoint<T> {
    pub d: T,
    /// `U(x, D)`.
    pub u: T,
    /// `W = D(1 + U)`.
    pub w: T,
    pub at_branch: bool,
}

/// Float solution at `(x, y)` via continuation in `X = √(1 − x/R(y))`.
fn solve_values(x: &Float, y: &Float) -> Result<(Float, Float, bool)> {
    let prec = x.prec().max(y.prec());
    let zero = Float::with_val(prec, 0);
    if x.is_sign_negative() && !x.is_zero() {
        return Err(Error::Domain(format!("x = {} is negative", x.to_f64())));
    }
    if y.is_zero() {
        return Ok((zero.clone(), zero, false));
    }
    if x.is_zero() {
        return Ok((Float::with_val(prec, y), zero, false));
    }
    let tp = TPoint::new(solve_t_of_y(&Float::with_val(prec, y))?)?;
    let r = &tp.xi;
    let gap = Float::with_val(prec, r - x) / r;
    let branch_tol = Float::with_val(prec, 1) >> (prec as i32 - 12);
    if gap.is_sign_negative() && gap.clone().abs() > branch_tol {
        return Err(Error::Domain(format!(
            "x = {} beyond the singularity R(y) = {}",
            x.to_f64(),
            r.to_f64()
        )));
    }
    if gap.clone().abs() <= branch_tol {
        return Ok((tp.d0.clone(), tp.u0.clone(), true));
    }
    let big_x = gap.sqrt();
    let (mut d, mut u) = if big_x < 1e-3 {
        let x2 = Float::with_val(prec, big_x.square_ref());
        let x3 = Float::with_val(prec, &x2 * &big_x);
        let d = tp.d0.clone() + tp.d2.clone() * &x2 + tp.d3.clone() * &x3;
        let u = tp.u0.clone() - tp.u1.clone() * &big_x + tp.u2.clone() * &x2;
        (d, u)
    } else {
        continuation_seed(r, y, &big_x)?
    };
    let xs = Float::with_val(prec, x);
    let ys = Float::with_val(prec, y);
    newton_values(&xs, &ys, &mut d, &mut u, NEWTON_LIMIT)?;
    Ok((d, u, false))
}

/// Follows the solution branch from `x = 0` at low precision.
fn continuation_seed(r: &Float, y: &Float, big_x: &Float) -> Result<(Float, Float)> {
    let lp = 64;
    let ys = Float::with_val(lp, y);
    let mut d = ys.clone();
    let mut u = Float::with_val(lp, 0);
    let target = Float::with_val(lp, big_x);
    for j in 1..=CONTINUATION_STEPS {
        let frac = Float::with_val(lp, j) / CONTINUATION_STEPS as u32;
        let xj = Float::with_val(lp, 1) - (Float::with_val(lp, 1) - &target) * frac;
        let x = Float::with_val(lp, r) * (Float::with_val(lp, 1) - xj.square());
        newton_values(&x, &ys, &mut d, &mut u, 40)?;
    }
    let p = big_x.prec();
    Ok((Float::with_val(p, &d), Float::with_val(p, &u)))
}

/// `D(x,y)` and `U(x,D)` for `0 ≤ x ≤ R(y)`. Derivative parts carried by
/// `x` or `y` propagate to the result through the implicit equations.
pub fn solve_network<T: Real>(x: &T, y: &T) -> Result<NetworkPoint<T>> {
    let (dv, uv, at_branch) = solve_values(x.value(), y.value())?;
    if at_branch {
        if !(x.is_constant() && y.is_constant()) {
            return Err(Error::AtBranchPoint);
        }
        let d = x.from_float(&dv);
        let u = x.from_float(&uv);
        let w = d.clone() * (u.clone() + 1);
        return Ok(NetworkPoint { d, u, w, at_branch });
    }
    let mut d = x.from_float(&dv);
    let mut u = x.from_float(&uv);
    if !(x.is_constant() && y.is_constant()) {
        let xv = Float::with_val(dv.prec(), x.value());
        let yv = Float::with_val(dv.prec(), y.value());
        let j = network_jacobian(&xv, &yv, &dv, &uv);
        let p = dv.prec();
        let det = Float::with_val(p, &j[0][0] * &j[1][1]) - Float::with_val(p, &j[0][1] * &j[1][0]);
        if det.is_zero() {
            return Err(Error::AtBranchPoint);
        }
        let inv = [
            [x.from_float(&(j[1][1].clone() / &det)), x.from_float(&(-j[0][1].clone() / &det))],
            [x.from_float(&(-j[1][0].clone() / &det)), x.from_float(&(j[0][0].clone() / &det))],
        ];
        // Chord steps with the value-level Jacobian: each fixes one more
        // derivative order.
        for _ in 0..3 {
            let [r1, r2] = network_residual(x, y, &d, &u);
            let dd = inv[0][0].clone() * r1.clone() + inv[0][1].clone() * r2.clone();
            let du = inv[1][0].clone() * r1 + inv[1][1].clone() * r2;
            d = d - dd;
            u = u - du;
        }
    }
    let w = d.clone() * (u.clone() + 1);
    Ok(NetworkPoint { d, u, w, at_branch })
}

/// `D(x, y)` alone.
pub fn solve_d_scalar<T: Real>(x: &T, y: &T) -> Result<T> {
    Ok(solve_network(x, y)?.d)
}

/// The elementary expression for `B` in terms of `x`, `y`, `z = D`,
/// `w = W`, written without divisions by `x`.
pub fn beta_regular<T: Real>(x: &T, y: &T, z: &T, w: &T) -> T {
    let one = x.lit(1);
    let x2 = x.powi(2);
    let xz = x.clone() * z.clone();
    let xw = x.clone() * w.clone();
    let w2 = w.powi(2);
    let l1z = (z.clone() + 1).ln();

    let first = xz.clone() * (x.clone() * 6 - 2 + xz.clone()) / 8
        + x2.clone() * (z.clone() + 1) * ((y.clone() + 1).ln() - l1z.clone()) / 2
        - x2.clone() * l1z / 4
        + (xz.clone() + 1).ln() / 4;

    let num = (x.clone() + 1) * (w.clone() + 1) * (z.clone() + w2.clone()) * 2
        + (w.clone() - z.clone()) * 3;
    let one_m4x = one.clone() - x.clone() * 4;
    let inner = one.clone() - x.clone() + xz.clone() - xw.clone() + xw.clone() * w.clone();
    let logs = inner.ln() - (one.clone() - x.clone()).ln()
        - (z.clone() + w.clone() + w2.clone() + 1).ln();
    let second = x.clone() * num / ((w.clone() + 1).powi(2) * 8)
        - (xz + xw.clone() + xw * w.clone() + 1).ln() / 8
        + one_m4x.clone() * (w.clone() + 1).ln() / 8
        + (one_m4x + x2 * 2) * logs / 16;

    first - second
}

/// `B(x,y)` for `0 ≤ x ≤ R(y)`.
pub fn eval_b_num<T: Real>(x: &T, y: &T) -> Result<T> {
    if x.value().is_zero() && x.is_constant() {
        return Ok(x.lit(0));
    }
    let p = solve_network(x, y)?;
    Ok(beta_regular(x, y, &p.d, &p.w))
}

/// `∂B/∂x` and `∂²B/∂x²` at `(u, y)`, `u < R(y)`.
pub fn b_x_derivatives(u: &Float, y: &Float) -> Result<(Float, Float)> {
    let b = eval_b_num(&HpDual::variable(u.clone()), &HpDual::constant(y.clone()))?;
    Ok((b.d1, b.d2))
}

/// `C(x,y) = F log x − F log F + F + B(F,y)` where `F` inverts
/// `ψ(u) = u·exp(−B_x(u,y))` on `(0, R(y)]`. Valid for `0 < x ≤ ρ(y)`.
pub fn eval_c_num(x: &Float, y: &Float) -> Result<Float> {
    let prec = x.prec();
    let tp = TPoint::new(solve_t_of_y(&Float::with_val(prec, y))?)?;
    let (r, rho) = (&tp.xi, &tp.rho);
    let tol = Float::with_val(prec, rho) >> (prec as i32 - 16);
    let diff = Float::with_val(prec, x - rho);
    if diff > tol {
        return Err(Error::Domain(format!(
            "x = {} beyond the singularity rho(y) = {}",
            x.to_f64(),
            rho.to_f64()
        )));
    }
    if !x.is_sign_positive() || x.is_zero() {
        return Err(Error::Domain("C is evaluated for x > 0 only".into()));
    }
    let f = if diff.abs() <= tol {
        r.clone()
    } else {
        let hi = Float::with_val(prec, r) * (Float::with_val(prec, 1) - Float::with_val(prec, 1e-30));
        newton_bracketed(Float::with_val(prec, x), hi, |u| {
            let (b1, b2) = b_x_derivatives(u, y).unwrap_or_else(|_| {
                (Float::with_val(prec, f64::NAN), Float::with_val(prec, f64::NAN))
            });
            let e = Float::with_val(prec, -&b1).exp();
            let psi = Float::with_val(prec, u * &e);
            let dpsi = e * (Float::with_val(prec, 1) - Float::with_val(prec, u * &b2));
            (psi - x, dpsi)
        })?
    };
    let b = eval_b_num(&f, &Float::with_val(prec, y))?;
    let lx = Float::with_val(prec, x.ln_ref());
    let lf = Float::with_val(prec, f.ln_ref());
    Ok(Float::with_val(prec, &f * &lx) - Float::with_val(prec, &f * &lf) + &f + b)
}
