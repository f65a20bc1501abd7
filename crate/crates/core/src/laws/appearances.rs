use rug::ops::Pow;
use rug::{Float, Integer};
use serde::Serialize;
use serde_json::json;

use super::gauss::{GaussLaw, LawContext};
use crate::closedform::{decimal, newton_bracketed, solve_t_of_y, TPoint};
use crate::error::{Error, Result};

const BRACKET_LIMIT: usize = 200;

/// Lower or upper tail of a deviation bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    Lower,
    Upper,
}

/// Exponential bound `P(Xₙ ≶ Zn) ≤ baseⁿ` at a given ratio `Z`.
#[derive(Clone, Debug)]
pub struct DeviationBound {
    pub z: Float,
    pub tail: Tail,
    pub u: Float,
    /// `x(u)`.
    pub x: Float,
    /// `ρ / (x(u) u^Z)`, below 1 whenever `Z` differs from the mean ratio.
    pub base: Float,
}

impl DeviationBound {
    pub fn to_json(&self, digits: usize) -> serde_json::Value {
        json!({
            "z": decimal(&self.z, digits),
            "tail": self.tail,
            "u": decimal(&self.u, digits),
            "x_of_u": decimal(&self.x, digits),
            "base": decimal(&self.base, digits),
        })
    }
}

/// Appearances of a fixed rooted connected graph on `h` vertices.
#[derive(Clone, Debug)]
pub struct AppearancesLaw {
    pub h: u32,
    pub rho: Float,
    pub law: GaussLaw,
    h_factorial: Float,
}

/// The Gaussian law of appearances: mean `ρʰ/h!`, variance `ρ`.
pub fn appearances_law(h: u32, prec: u32) -> Result<AppearancesLaw> {
    if h == 0 {
        return Err(Error::Domain("h must be at least 1".into()));
    }
    let tp = TPoint::new(solve_t_of_y(&Float::with_val(prec, 1))?)?;
    let rho = tp.rho;
    let h_factorial = Float::with_val(prec, Integer::from(Integer::factorial(h)));
    let mean = Float::with_val(prec, (&rho).pow(h)) / &h_factorial;
    Ok(AppearancesLaw {
        h,
        law: GaussLaw {
            context: LawContext::Appearances { h },
            mean_coeff: mean,
            var_coeff: rho.clone(),
        },
        rho,
        h_factorial,
    })
}

impl AppearancesLaw {
    fn prec(&self) -> u32 {
        self.rho.prec()
    }

    /// `c = (u − 1)/h!`.
    fn slope(&self, u: &Float) -> Float {
        Float::with_val(self.prec(), u - 1u32) / &self.h_factorial
    }

    /// The smallest positive root of `x·exp((u−1)xʰ/h!) = ρ`.
    pub fn x_of_u(&self, u: &Float) -> Result<Float> {
        let p = self.prec();
        if !u.is_sign_positive() || u.is_zero() {
            return Err(Error::Domain("u must be positive".into()));
        }
        if *u == 1 {
            return Ok(self.rho.clone());
        }
        let c = self.slope(u);
        let h = self.h;
        let ln_rho = Float::with_val(p, self.rho.ln_ref());
        let f = |x: &Float| {
            let xh = Float::with_val(p, x.pow(h));
            let v = Float::with_val(p, x.ln_ref()) + Float::with_val(p, &c * &xh) - &ln_rho;
            let d = Float::with_val(p, x.recip_ref()) + Float::with_val(p, &c * &xh) * h / x;
            (v, d)
        };
        let (lo, hi) = if *u > 1 {
            let mut lo = Float::with_val(p, &self.rho) / 2u32;
            let mut n = 0;
            while f(&lo).0.is_sign_positive() {
                lo /= 2u32;
                n += 1;
                if n > BRACKET_LIMIT {
                    return Err(Error::RootBracketing("x(u) lower bracket".into()));
                }
            }
            (lo, self.rho.clone())
        } else {
            // f increases up to x_p with x_pʰ = 1/(h|c|).
            let xp = Float::with_val(p, Float::with_val(p, -&c) * h).recip().root(h);
            if f(&xp).0.is_sign_negative() {
                return Err(Error::Domain(format!("no solution x(u) at u = {}", u.to_f64())));
            }
            (self.rho.clone(), xp)
        };
        newton_bracketed(lo, hi, f)
    }

    /// `Z(u) = −u x'(u)/x(u) = u xʰ / (h! (1 + h c xʰ))`.
    pub fn z_of_u(&self, u: &Float) -> Result<Float> {
        let p = self.prec();
        let x = self.x_of_u(u)?;
        let xh = Float::with_val(p, x.pow(self.h));
        let c = self.slope(u);
        let den = (Float::with_val(p, &c * &xh) * self.h + 1u32) * &self.h_factorial;
        Ok(Float::with_val(p, u * xh) / den)
    }

    /// Solves `Z(u) = z` and forms the exponential tail bound.
    pub fn deviation_bound(&self, z: &Float) -> Result<DeviationBound> {
        let p = self.prec();
        if !z.is_sign_positive() || z.is_zero() {
            return Err(Error::Domain("Z must be positive".into()));
        }
        let mean = &self.law.mean_coeff;
        let tail = if z < mean { Tail::Lower } else { Tail::Upper };
        let u = if z == mean {
            Float::with_val(p, 1)
        } else {
            let zf = |u: &Float| self.z_of_u(u).map(|v| v - z);
            let (lo, hi) = match tail {
                Tail::Lower => {
                    let mut lo = Float::with_val(p, 0.5);
                    let mut n = 0;
                    while zf(&lo)?.is_sign_positive() {
                        lo /= 2u32;
                        n += 1;
                        if n > BRACKET_LIMIT {
                            return Err(Error::Domain(format!(
                                "Z = {} below the attainable range",
                                z.to_f64()
                            )));
                        }
                    }
                    (lo, Float::with_val(p, 1))
                }
                Tail::Upper => {
                    let mut hi = Float::with_val(p, 2);
                    let mut n = 0;
                    while zf(&hi)?.is_sign_negative() {
                        hi *= 2u32;
                        n += 1;
                        if n > BRACKET_LIMIT {
                            return Err(Error::Domain(format!(
                                "Z = {} above the attainable range",
                                z.to_f64()
                            )));
                        }
                    }
                    (Float::with_val(p, 1), hi)
                }
            };
            let nan = || Float::with_val(p, f64::NAN);
            newton_bracketed(lo, hi, |u| {
                let step = Float::with_val(p, u >> (p as i32 / 3));
                let up = Float::with_val(p, u + &step);
                let dn = Float::with_val(p, u - &step);
                match (zf(u), zf(&up), zf(&dn)) {
                    (Ok(v), Ok(a), Ok(b)) => (v, (a - b) / (step * 2u32)),
                    _ => (nan(), nan()),
                }
            })?
        };
        let x = self.x_of_u(&u)?;
        let uz = Float::with_val(p, (&u).pow(z));
        let base = Float::with_val(p, &self.rho / x.clone()) / uz;
        Ok(DeviationBound {
            z: z.clone(),
            tail,
            u,
            x,
            base,
        })
    }
}
