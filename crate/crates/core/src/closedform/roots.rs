use rug::{Assign, Float};

use super::real::HpDual;
use super::tpoint::big_y;
use crate::error::{Error, Result};

/// Number of scan points used to bracket the root of `Y(t) = y`.
pub const SCAN_POINTS: usize = 2048;
const SCAN_LO: f64 = 1e-6;
const SCAN_HI: f64 = 1.0 - 1e-6;

/// Safeguarded Newton on a bracket `[lo, hi]` where `f` changes sign.
/// `f` returns the value and the derivative. Falls back to bisection
/// whenever a Newton step leaves the bracket.
pub fn newton_bracketed(
    mut lo: Float,
    mut hi: Float,
    f: impl Fn(&Float) -> (Float, Float),
) -> Result<Float> {
    let prec = lo.prec();
    let (flo, _) = f(&lo);
    let (fhi, _) = f(&hi);
    if flo.is_sign_positive() == fhi.is_sign_positive() {
        return Err(Error::RootBracketing("no sign change on bracket".into()));
    }
    let lo_positive = flo.is_sign_positive();
    let tol_bits = prec as i32 - 6;
    let mut x = Float::with_val(prec, &lo + &hi) / 2u32;
    for _ in 0..(4 * prec as usize + 200) {
        let (fx, dfx) = f(&x);
        if fx.is_zero() {
            return Ok(x);
        }
        if fx.is_sign_positive() == lo_positive {
            lo.assign(&x);
        } else {
            hi.assign(&x);
        }
        let mut next = Float::with_val(prec, &x - Float::with_val(prec, &fx / &dfx));
        if !dfx.is_normal() || next <= lo || next >= hi || !next.is_finite() {
            next = Float::with_val(prec, &lo + &hi) / 2u32;
        }
        let step = Float::with_val(prec, &next - &x).abs();
        let scale = Float::with_val(prec, x.abs_ref()).max(&Float::with_val(prec, 1e-300));
        x = next;
        let width = Float::with_val(prec, &hi - &lo);
        let tiny = Float::with_val(prec, &scale >> tol_bits);
        if step <= tiny || width <= tiny {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence("bracketed Newton iteration limit".into()))
}

/// The unique `t ∈ (0,1)` with `Y(t) = y`.
pub fn solve_t_of_y(y: &Float) -> Result<Float> {
    let prec = y.prec().max(64);
    let scan_prec = 64;
    let yv = Float::with_val(scan_prec, y);
    let grid: Vec<Float> = (0..SCAN_POINTS)
        .map(|i| {
            let frac = i as f64 / (SCAN_POINTS - 1) as f64;
            Float::with_val(scan_prec, SCAN_LO + (SCAN_HI - SCAN_LO) * frac)
        })
        .collect();
    let signs: Vec<bool> = grid
        .iter()
        .map(|t| (big_y(t) - yv.clone()).is_sign_positive())
        .collect();
    let changes: Vec<usize> = (1..signs.len()).filter(|&i| signs[i] != signs[i - 1]).collect();
    if changes.len() != 1 {
        return Err(Error::RootBracketing(format!(
            "Y(t) = {} has {} sign changes on the scan grid",
            y.to_f64(),
            changes.len()
        )));
    }
    let i = changes[0];
    let lo = Float::with_val(prec, &grid[i - 1]);
    let hi = Float::with_val(prec, &grid[i]);
    let target = Float::with_val(prec, y);
    newton_bracketed(lo, hi, |t| {
        let d = big_y(&HpDual::variable(t.clone()));
        (d.v - &target, d.d1)
    })
}

/// `Y'(t)` and `Y''(t)`.
pub fn y_derivatives(t: &Float) -> (Float, Float) {
    let d = big_y(&HpDual::variable(t.clone()));
    (d.d1, d.d2)
}

/// `t(y)` as a jet: value and the first two derivatives in the direction
/// carried by `y`.
pub fn t_of_y_dual(y: &HpDual) -> Result<HpDual> {
    let t = solve_t_of_y(&y.v)?;
    let (y1, y2) = y_derivatives(&t);
    if y1.is_zero() {
        return Err(Error::ParametrizationSingular);
    }
    let prec = t.prec();
    let t1 = Float::with_val(prec, &y.d1 / &y1);
    let t1sq = Float::with_val(prec, t1.square_ref());
    let t2 = (Float::with_val(prec, &y.d2 - y2 * t1sq)) / &y1;
    Ok(HpDual::new(t, t1, t2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: f64) -> Float {
        Float::with_val(256, v)
    }

    #[test]
    fn root_at_unit_weight() {
        let t = solve_t_of_y(&f(1.0)).unwrap();
        assert!((t.to_f64() - 0.6263716633).abs() < 1e-10);
    }

    #[test]
    fn inverts_y() {
        for y in [0.5, 1.0, 2.0] {
            let t = solve_t_of_y(&f(y)).unwrap();
            let back = big_y(&t) - f(y);
            assert!(back.abs() < Float::with_val(256, 1e-70), "y = {y}");
        }
    }

    #[test]
    fn monotone_in_y() {
        let ts: Vec<f64> = (0..=10)
            .map(|i| solve_t_of_y(&f(0.9 + 0.02 * i as f64)).unwrap().to_f64())
            .collect();
        assert!(ts.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn out_of_range_weight_fails() {
        assert!(matches!(
            solve_t_of_y(&f(1e9)),
            Err(Error::RootBracketing(_))
        ));
    }
}
