use clap::ValueEnum;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::closedform::{
    rho_central_difference, rho_jet, verify_psi_regular, ConstantsBundle,
};
use crate::error::{Error, Result};
use crate::gfpipe::{extract_counts, Family, GfBundle};
use crate::oracle::enumerate_counts;

const REGULARITY_GRID: usize = 10_000;

/// Deliberate corruption applied before checking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Adds one labelled graph to the stored count of planar graphs with
    /// three vertices and two edges.
    SeriesCoefficient,
}

/// One row of the verification matrix.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    pub fn status(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> CheckOutcome {
    match f() {
        Ok((passed, detail)) => CheckOutcome { name, passed, detail },
        Err(e) => CheckOutcome {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn rel_diff(a: &Float, b: &Float) -> f64 {
    let d = Float::with_val(a.prec(), a - b).abs();
    (d / Float::with_val(b.prec(), b.abs_ref())).to_f64()
}

/// Runs the whole suite. Failures are reported in the returned rows, never
/// as an early exit.
pub fn run_checks(
    order: usize,
    oracle_nmax: usize,
    prec: u32,
    digits: usize,
    fault: Option<Fault>,
) -> Vec<CheckOutcome> {
    let order = order.max(oracle_nmax).max(3);
    let mut out = Vec::new();
    let bundle = GfBundle::build(order).map(|mut b| {
        if fault == Some(Fault::SeriesCoefficient) {
            let bumped = b.g.coeff(3, 2) + Rational::from((1, 6));
            b.g.set_coeff(3, 2, bumped);
        }
        b
    });
    let bundle = match bundle {
        Ok(b) => b,
        Err(e) => {
            out.push(CheckOutcome {
                name: "series_pipeline",
                passed: false,
                detail: e.to_string(),
            });
            return out;
        }
    };

    out.push(check("oracle_vs_series", || {
        let fams = [Family::Planar, Family::Connected, Family::Biconnected];
        let oracle = enumerate_counts(oracle_nmax)?;
        let series = extract_counts(&bundle, oracle_nmax, &fams)?;
        Ok(match series.first_difference(&oracle) {
            None => (true, format!("g, c, b equal for n <= {oracle_nmax}")),
            Some((fam, n, q)) => (
                false,
                format!(
                    "{}: n = {n}, q = {q}: series {} vs oracle {}",
                    fam.letter(),
                    series.get(fam, n, q).cloned().unwrap_or_default(),
                    oracle.get(fam, n, q).cloned().unwrap_or_default()
                ),
            ),
        })
    }));

    out.push(check("integral_counts", || {
        let fams = [Family::Planar, Family::Connected, Family::Biconnected, Family::Networks];
        let t = extract_counts(&bundle, order, &fams)?;
        let negative = t
            .tables
            .values()
            .flatten()
            .flatten()
            .any(|c| *c < Integer::ZERO);
        Ok((!negative, format!("g, c, b, d integral and nonnegative to n = {order}")))
    }));

    out.push(check("b_route_equality", || {
        let diff = bundle.b_route_difference()?;
        Ok((diff.is_zero(), format!("closed form vs y-integral to order ({order}, {})", 3 * order)))
    }));

    out.push(check("b_y_derivative", || {
        let r = bundle.b_derivative_residual()?;
        Ok((r.is_zero(), "dB/dy = (x^2/2)(1+D)/(1+y)".into()))
    }));

    out.push(check("psi_inverse", || {
        let r = bundle.psi_of_f_minus_x()?;
        Ok((r.is_zero(), format!("psi(F(x)) = x to order {}", r.order())))
    }));

    let constants = ConstantsBundle::compute(prec);
    out.push(check("constants", || {
        let c = constants.as_ref().map_err(|e| Error::ConstantsInconsistent(e.to_string()))?;
        let bad: Vec<&str> = c
            .entries()
            .iter()
            .filter(|e| e.agrees() == Some(false))
            .map(|e| e.name)
            .collect();
        Ok(if bad.is_empty() {
            (true, "identities hold; all published values reproduced".into())
        } else {
            (false, format!("disagree: {}", bad.join(", ")))
        })
    }));

    out.push(check("c0_two_routes", || {
        let c = constants.as_ref().map_err(|e| Error::ConstantsInconsistent(e.to_string()))?;
        let err = Float::with_val(prec, &c.c_at_rho - &c.c0).abs().to_f64();
        Ok((err <= 1e-10, format!("|C(rho) - (R + B0 + B2)| = {err:.3e}")))
    }));

    out.push(check("dual_vs_difference", || {
        let y = Float::with_val(prec, 1);
        let j = rho_jet(&y)?;
        let (d1, d2) = rho_central_difference(&y, &Float::with_val(prec, 1e-8))?;
        let (e1, e2) = (rel_diff(&d1, &j.d1), rel_diff(&d2, &j.d2));
        Ok((e1 <= 1e-10 && e2 <= 1e-10, format!("rho' rel {e1:.2e}, rho'' rel {e2:.2e}")))
    }));

    out.push(check("psi_regular_grid", || {
        let r = verify_psi_regular(REGULARITY_GRID, prec)?;
        Ok((
            true,
            format!("2*B4 < xi on {} points, min margin {:.4} at t = {:.4}", r.gridsize, r.min_margin, r.argmin_t),
        ))
    }));

    out.push(check("precision_stability", || {
        let c = constants.as_ref().map_err(|e| Error::ConstantsInconsistent(e.to_string()))?;
        let doubled = ConstantsBundle::compute(2 * prec)?;
        let unstable = c.unstable_digits(&doubled, digits);
        Ok(if unstable.is_empty() {
            (true, format!("{digits} digits identical at {} and {} bits", prec, 2 * prec))
        } else {
            (false, format!("changed at doubled precision: {}", unstable.join(", ")))
        })
    }));

    out
}
