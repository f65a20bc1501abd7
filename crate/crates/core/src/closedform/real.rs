use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::Float;

/// Arbitrary-precision real scalar.
pub type HpScalar = Float;

/// Default working precision in bits.
pub const DEFAULT_PREC: u32 = 256;

/// Scalar types the closed forms are evaluated over: plain high-precision
/// floats and second-order jets of them.
pub trait Real:
    Clone
    + Send
    + Sync
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<i64, Output = Self>
    + Sub<i64, Output = Self>
    + Mul<i64, Output = Self>
    + Div<i64, Output = Self>
{
    /// An integer constant at this value's precision (zero derivatives).
    fn lit(&self, v: i64) -> Self;
    fn from_float(&self, v: &Float) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn powi(&self, n: i32) -> Self;
    /// The underlying value, dropping any derivative parts.
    fn value(&self) -> &Float;
    /// True when no derivative information is carried.
    fn is_constant(&self) -> bool;

    fn ratio(&self, n: i64, d: i64) -> Self {
        self.lit(n) / self.lit(d)
    }
    fn recip(&self) -> Self {
        self.lit(1) / self.clone()
    }
    /// `x^(n/2)` for odd or even `n`.
    fn pow_half(&self, n: i32) -> Self {
        self.sqrt().powi(n)
    }
    fn prec(&self) -> u32 {
        self.value().prec()
    }
    fn to_f64(&self) -> f64 {
        self.value().to_f64()
    }
}

impl Real for Float {
    fn lit(&self, v: i64) -> Self {
        Float::with_val(self.prec(), v)
    }
    fn from_float(&self, v: &Float) -> Self {
        Float::with_val(self.prec(), v)
    }
    fn exp(&self) -> Self {
        self.clone().exp()
    }
    fn ln(&self) -> Self {
        self.clone().ln()
    }
    fn sqrt(&self) -> Self {
        self.clone().sqrt()
    }
    fn powi(&self, n: i32) -> Self {
        self.clone().pow(n)
    }
    fn value(&self) -> &Float {
        self
    }
    fn is_constant(&self) -> bool {
        true
    }
}

/// Value with first and second derivatives along one direction.
#[derive(Clone, Debug, PartialEq)]
pub struct HpDual {
    pub v: Float,
    pub d1: Float,
    pub d2: Float,
}

impl HpDual {
    pub fn new(v: Float, d1: Float, d2: Float) -> Self {
        HpDual { v, d1, d2 }
    }

    pub fn constant(v: Float) -> Self {
        let z = Float::with_val(v.prec(), 0);
        HpDual {
            v,
            d1: z.clone(),
            d2: z,
        }
    }

    /// The independent variable itself: derivative 1, curvature 0.
    pub fn variable(v: Float) -> Self {
        let p = v.prec();
        HpDual {
            v,
            d1: Float::with_val(p, 1),
            d2: Float::with_val(p, 0),
        }
    }

    /// Applies `f` given `f(v)`, `f'(v)`, `f''(v)`.
    fn chain(&self, f0: Float, f1: Float, f2: Float) -> Self {
        let d1 = Float::with_val(self.prec(), &f1 * &self.d1);
        let d2 = f2 * self.d1.clone().square() + f1 * &self.d2;
        HpDual { v: f0, d1, d2 }
    }
}

impl Add for HpDual {
    type Output = HpDual;
    fn add(self, r: HpDual) -> HpDual {
        HpDual::new(self.v + r.v, self.d1 + r.d1, self.d2 + r.d2)
    }
}

impl Sub for HpDual {
    type Output = HpDual;
    fn sub(self, r: HpDual) -> HpDual {
        HpDual::new(self.v - r.v, self.d1 - r.d1, self.d2 - r.d2)
    }
}

impl Mul for HpDual {
    type Output = HpDual;
    fn mul(self, r: HpDual) -> HpDual {
        let p = self.v.prec();
        let d1 = Float::with_val(p, &self.d1 * &r.v) + &self.v * &r.d1;
        let cross = Float::with_val(p, &self.d1 * &r.d1) * 2u32;
        let d2 = Float::with_val(p, &self.d2 * &r.v) + cross + &self.v * &r.d2;
        HpDual::new(self.v * r.v, d1, d2)
    }
}

impl Div for HpDual {
    type Output = HpDual;
    fn div(self, r: HpDual) -> HpDual {
        let inv = Float::with_val(r.v.prec(), r.v.recip_ref());
        let inv2 = Float::with_val(r.v.prec(), inv.square_ref());
        let f1 = -inv2.clone();
        let f2 = inv2 * &inv * 2u32;
        self * r.chain(inv, f1, f2)
    }
}

impl Neg for HpDual {
    type Output = HpDual;
    fn neg(self) -> HpDual {
        HpDual::new(-self.v, -self.d1, -self.d2)
    }
}

impl Add<i64> for HpDual {
    type Output = HpDual;
    fn add(mut self, r: i64) -> HpDual {
        self.v += r;
        self
    }
}

impl Sub<i64> for HpDual {
    type Output = HpDual;
    fn sub(mut self, r: i64) -> HpDual {
        self.v -= r;
        self
    }
}

impl Mul<i64> for HpDual {
    type Output = HpDual;
    fn mul(self, r: i64) -> HpDual {
        HpDual::new(self.v * r, self.d1 * r, self.d2 * r)
    }
}

impl Div<i64> for HpDual {
    type Output = HpDual;
    fn div(self, r: i64) -> HpDual {
        HpDual::new(self.v / r, self.d1 / r, self.d2 / r)
    }
}

impl Real for HpDual {
    fn lit(&self, v: i64) -> Self {
        HpDual::constant(Float::with_val(self.prec(), v))
    }
    fn from_float(&self, v: &Float) -> Self {
        HpDual::constant(Float::with_val(self.prec(), v))
    }
    fn exp(&self) -> Self {
        let e = self.v.clone().exp();
        self.chain(e.clone(), e.clone(), e)
    }
    fn ln(&self) -> Self {
        let inv = Float::with_val(self.prec(), self.v.recip_ref());
        let f2 = -Float::with_val(self.prec(), inv.square_ref());
        self.chain(self.v.clone().ln(), inv, f2)
    }
    fn sqrt(&self) -> Self {
        let s = self.v.clone().sqrt();
        let f1 = Float::with_val(self.prec(), s.recip_ref()) / 2u32;
        let f2 = -Float::with_val(self.prec(), &f1 / &self.v) / 2u32;
        self.chain(s, f1, f2)
    }
    fn powi(&self, n: i32) -> Self {
        let p = self.prec();
        let f0 = self.v.clone().pow(n);
        let f1 = Float::with_val(p, (&self.v).pow(n - 1)) * n;
        let f2 = Float::with_val(p, (&self.v).pow(n - 2)) * (n * (n - 1));
        self.chain(f0, f1, f2)
    }
    fn value(&self) -> &Float {
        &self.v
    }
    fn is_constant(&self) -> bool {
        self.d1.is_zero() && self.d2.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: f64) -> Float {
        Float::with_val(128, v)
    }

    fn close(a: &Float, b: f64) -> bool {
        (a.to_f64() - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn product_and_quotient_rules() {
        let x = HpDual::variable(f(2.0));
        // x^3/(1+x) at 2: value 8/3, d1 = (3x²(1+x) − x³)/(1+x)² = 28/9
        let g = x.clone().powi(3) / (x + 1);
        assert!(close(&g.v, 8.0 / 3.0));
        assert!(close(&g.d1, 28.0 / 9.0));
        // d2 = 2x(x² + 3x + 3)/(1+x)³ = 4·13/27
        assert!(close(&g.d2, 52.0 / 27.0));
    }

    #[test]
    fn transcendental_chain() {
        let x = HpDual::variable(f(0.5));
        let g = x.clone().exp().ln();
        assert!(close(&g.v, 0.5) && close(&g.d1, 1.0) && g.d2.to_f64().abs() < 1e-30);
        let s = (x * 4).sqrt();
        // √(4x): d1 = 1/√x, d2 = −x^{-3/2}/2
        assert!(close(&s.d1, 2f64.sqrt()));
        assert!(close(&s.d2, -(0.5f64).powf(-1.5) / 2.0));
    }

    #[test]
    fn float_real_impl() {
        let x = f(3.0);
        assert_eq!(Real::powi(&x, 3).to_f64(), 27.0);
        assert!(close(&x.pow_half(3), 27f64.sqrt()));
        assert!(close(&x.ratio(1, 4), 0.25));
    }
}
