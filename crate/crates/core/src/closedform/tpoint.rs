//! Parametric closed forms in the variable `t ∈ (0,1)`.
//!
//! Everything about the dominant singularity is a rational/logarithmic
//! function of `t`: the edge weight is `y = Y(t)` and the singularity of the
//! network series is `x = ξ(t)`.

use super::real::Real;
use crate::error::{Error, Result};

/// `Σ c_i t^i` by Horner's rule.
pub fn poly<T: Real>(t: &T, coeffs: &[i64]) -> T {
    let mut acc = t.lit(0);
    for &c in coeffs.iter().rev() {
        acc = acc * t.clone() + c;
    }
    acc
}

const ALPHA: [i64; 6] = [144, 592, 664, 135, 6, -5];
const P_POLY: [i64; 8] = [-2400, 57952, 303862, 466546, 264775, 76679, 11495, 739];
const Q_POLY: [i64; 6] = [400, 1808, 2527, 1155, 237, 17];
const T_POLY: [i64; 13] = [
    243072, 2596736, 11835336, 30156200, 47354348, 47691938, 31133003, 13180580, 3723625,
    719346, 98693, 10112, 691,
];
/// `185t⁴ + 698t³ − 217t² − 160t + 6`, shared by `B₂` and `A`.
const K_POLY: [i64; 5] = [6, -160, -217, 698, 185];
const B0_POLY: [i64; 7] = [6, -172, 205, 1436, 972, 920, 217];

fn one_minus<T: Real>(t: &T) -> T {
    t.lit(1) - t.clone()
}

/// `a + b·t`
fn lin<T: Real>(t: &T, a: i64, b: i64) -> T {
    t.clone() * b + a
}

pub fn xi<T: Real>(t: &T) -> T {
    lin(t, 1, 3) * one_minus(t).powi(3) / (t.powi(3) * 16)
}

pub fn big_y<T: Real>(t: &T) -> T {
    let front = lin(t, 1, 2) / (lin(t, 1, 3) * one_minus(t));
    let num = t.powi(2) * one_minus(t) * poly(t, &[18, 36, 5]);
    let den = lin(t, 3, 1) * lin(t, 1, 2) * lin(t, 1, 3).powi(2) * 2;
    front * (-(num / den)).exp() - 1
}

pub fn alpha_poly<T: Real>(t: &T) -> T {
    poly(t, &ALPHA)
}

pub fn beta_poly<T: Real>(t: &T) -> T {
    t.clone() * lin(t, 1, 1) * q_poly(t) * 3
}

pub fn p_poly<T: Real>(t: &T) -> T {
    poly(t, &P_POLY)
}

pub fn q_poly<T: Real>(t: &T) -> T {
    poly(t, &Q_POLY)
}

/// Same polynomial as `α`; it appears under this name in `B₅`.
pub fn s_poly<T: Real>(t: &T) -> T {
    poly(t, &ALPHA)
}

pub fn t_poly<T: Real>(t: &T) -> T {
    poly(t, &T_POLY)
}

pub fn d0<T: Real>(t: &T) -> T {
    t.powi(2) * 3 / (one_minus(t) * lin(t, 1, 3))
}

pub fn d2<T: Real>(t: &T) -> T {
    let num = t.powi(2) * lin(t, 1, 1) * lin(t, 1, 2).powi(2) * poly(t, &[18, 6, 1]) * 48;
    -(num / (lin(t, 1, 3) * beta_poly(t)))
}

pub fn d3<T: Real>(t: &T) -> T {
    let front = t.powi(3) * lin(t, 1, 1).powi(2) * lin(t, 1, 2).powi(2) * lin(t, 3, 1).powi(2) * 384;
    front * alpha_poly(t).pow_half(3) / beta_poly(t).pow_half(5)
}

pub fn b0<T: Real>(t: &T) -> T {
    let t3 = t.powi(3);
    let t6 = t.powi(6);
    let l1 = lin(t, 1, 1).ln();
    let l2 = lin(t, 1, 2).ln();
    let l3 = lin(t, 1, 3).ln();
    let a = lin(t, -1, 3).powi(2) * lin(t, 1, 1).powi(6) * l1 / (t6.clone() * 512);
    let b = poly(t, &[-1, 0, 6, -16, 3]) * l3 / (t3 * 32);
    let c = lin(t, 1, 3).powi(2) * one_minus(t).powi(6) * l2 / (t6 * 1024);
    let d = lin(t, 3, 1).ln() / 4 - t.ln() / 2 - t.lit(16).ln() * 3 / 8;
    let e = poly(t, &B0_POLY) * one_minus(t).powi(2)
        / (t.powi(4) * lin(t, 1, 3) * lin(t, 3, 1) * 2048);
    a - b - c + d - e
}

pub fn b2<T: Real>(t: &T) -> T {
    let t3 = t.powi(3);
    let t6 = t.powi(6);
    let om3 = one_minus(t).powi(3);
    let a = om3.clone() * lin(t, -1, 3) * lin(t, 1, 3) * lin(t, 1, 1).powi(3) * lin(t, 1, 1).ln()
        / (t6.clone() * 256);
    let b = om3 * lin(t, 1, 3) * lin(t, 1, 3).ln() / (t3 * 32);
    let c = lin(t, 1, 3).powi(2) * one_minus(t).powi(6) * lin(t, 1, 2).ln() / (t6 * 512);
    let d = one_minus(t).powi(4) * poly(t, &K_POLY)
        / (t.powi(4) * lin(t, 1, 3) * lin(t, 3, 1) * 1024);
    a - b + c + d
}

pub fn b4<T: Real>(t: &T) -> T {
    let lg = lin(t, 1, 1).ln() - lin(t, 1, 2).ln() / 2;
    let a = lg * one_minus(t).powi(6) * lin(t, 1, 3).powi(2) / (t.powi(6) * 512);
    let b = p_poly(t) * one_minus(t).powi(5) / (t.powi(4) * lin(t, 3, 1) * q_poly(t) * 2048);
    a + b
}

pub fn b5<T: Real>(t: &T) -> T {
    let sqrt3 = t.lit(3).sqrt();
    let ratio = s_poly(t) / (t.clone() * q_poly(t));
    -(sqrt3 * one_minus(t).powi(6) * ratio.pow_half(5)) / (lin(t, 1, 1).pow_half(3) * 90)
}

pub fn a_fn<T: Real>(t: &T) -> T {
    let t3 = t.powi(3);
    let a = lin(t, 1, 1).ln() * lin(t, -1, 3) * lin(t, 1, 1).powi(3) / (t3.clone() * 16);
    let b = lin(t, 1, 2).ln() * lin(t, 1, 3) * one_minus(t).powi(3) / (t3 * 32);
    let c = one_minus(t) * poly(t, &K_POLY)
        / (t.clone() * lin(t, 1, 3).powi(2) * lin(t, 3, 1) * 64);
    a + b + c
}

/// The singularity `ρ` of the planar-graph series as a function of `t`.
pub fn q_rho<T: Real>(t: &T) -> T {
    lin(t, 1, 3).sqrt() * one_minus(t).powi(3) / (t.powi(3) * 16) * a_fn(t).exp()
}

pub fn u0<T: Real>(t: &T) -> T {
    (t.clone() * 3).recip()
}

/// Magnitude of the `X¹` coefficient; the coefficient itself is `−u1`.
pub fn u1<T: Real>(t: &T) -> T {
    let num = lin(t, 1, 3).powi(2) * s_poly(t) * 4;
    let den = t.powi(3) * lin(t, 1, 1) * q_poly(t) * 27;
    (num / den).sqrt()
}

pub fn u2<T: Real>(t: &T) -> T {
    lin(t, 1, 3) * t_poly(t) * 2 / (t.powi(2) * lin(t, 1, 1).powi(2) * q_poly(t).powi(2) * 27)
}

/// All parametric quantities at one value of `t`, evaluated once.
#[derive(Clone, Debug)]
pub struct TPoint<T: Real> {
    pub t: T,
    pub xi: T,
    pub y: T,
    pub alpha_poly: T,
    pub beta_poly: T,
    pub p_poly: T,
    pub q_poly: T,
    pub s_poly: T,
    pub t_poly: T,
    pub d0: T,
    pub d2: T,
    pub d3: T,
    pub b0: T,
    pub b2: T,
    pub b4: T,
    pub b5: T,
    pub a: T,
    pub rho: T,
    pub u0: T,
    pub u1: T,
    pub u2: T,
}

impl<T: Real> TPoint<T> {
    pub fn new(t: T) -> Result<Self> {
        let tv = t.value();
        if !(tv.is_sign_positive() && *tv > 0 && *tv < 1) {
            return Err(Error::Domain(format!("t = {} outside (0,1)", tv.to_f64())));
        }
        Ok(TPoint {
            xi: xi(&t),
            y: big_y(&t),
            alpha_poly: alpha_poly(&t),
            beta_poly: beta_poly(&t),
            p_poly: p_poly(&t),
            q_poly: q_poly(&t),
            s_poly: s_poly(&t),
            t_poly: t_poly(&t),
            d0: d0(&t),
            d2: d2(&t),
            d3: d3(&t),
            b0: b0(&t),
            b2: b2(&t),
            b4: b4(&t),
            b5: b5(&t),
            a: a_fn(&t),
            rho: q_rho(&t),
            u0: u0(&t),
            u1: u1(&t),
            u2: u2(&t),
            t,
        })
    }
}
