use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Assign, Float, Rational};

use super::Rat;
use crate::error::{Error, Result};

/// Truncated univariate power series `Σ_{k ≤ order} c_k x^k` with exact
/// rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct USeries {
    coeffs: Vec<Rat>,
}

impl USeries {
    pub fn zero(order: usize) -> Self {
        USeries {
            coeffs: vec![Rat::new(); order + 1],
        }
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rat::from(1), order)
    }

    /// The series `x` itself (zero when `order == 0`).
    pub fn var(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rat::from(1);
        }
        s
    }

    /// Builds a series from its coefficient list; the order is `len - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        USeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rat::from(c)).collect())
    }

    /// Polynomial coefficients padded with zeros (or truncated) to `order`.
    pub fn from_poly(coeffs: &[Rat], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (dst, src) in s.coeffs.iter_mut().zip(coeffs) {
            dst.assign(src);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^k`; `None` beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&Rat> {
        self.coeffs.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.cmp0().is_eq())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        USeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        USeries {
            coeffs: self.coeffs.iter().map(|a| Rat::from(a * c)).collect(),
        }
    }

    /// Multiplies by `x^k`. The known range grows by `k` as well.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![Rat::new(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        USeries { coeffs }
    }

    /// Exact division by `x^k`.
    pub fn div_x(&self, k: usize) -> Result<Self> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| c.cmp0().is_ne()) {
            return Err(Error::InexactDivision { kx: k, ky: 0 });
        }
        Ok(USeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(USeries {
            coeffs: poly_inverse(&self.coeffs)?,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let order = self.order().min(other.order());
        let inv = other.truncate(order).inverse()?;
        Ok(&self.truncate(order) * &inv)
    }

    /// Formal exponential; requires a zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs[0].cmp0().is_ne() {
            return Err(Error::BadConstantTerm("exp needs a zero constant term"));
        }
        Ok(USeries {
            coeffs: poly_exp(&self.coeffs),
        })
    }

    /// Formal logarithm; requires constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != 1 {
            return Err(Error::BadConstantTerm("log needs constant term 1"));
        }
        Ok(USeries {
            coeffs: poly_log(&self.coeffs)?,
        })
    }

    /// Term-by-term derivative; the order drops by one (an order-0 series
    /// differentiates to the zero series of order 0).
    pub fn derive(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        USeries {
            coeffs: (1..self.coeffs.len())
                .map(|k| Rat::from(&self.coeffs[k] * Rat::from(k as u64)))
                .collect(),
        }
    }

    /// Antiderivative with zero constant of integration; the order grows by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rat::new());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(Rat::from(c / Rat::from(k as u64 + 1)));
        }
        USeries { coeffs }
    }

    /// `self(inner(x))`, where `inner` has zero constant term.
    pub fn compose(&self, inner: &USeries) -> Result<Self> {
        if inner.coeffs[0].cmp0().is_ne() {
            return Err(Error::Composition("inner series must have zero constant term"));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = USeries::constant(self.coeffs[order].clone(), order);
        for k in (0..order).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Evaluates the polynomial `Σ poly_k u^k` at `u = inner`, exactly.
    /// No condition on the constant term of `inner`.
    pub fn compose_poly(poly: &[Rat], inner: &USeries) -> Self {
        let order = inner.order();
        let mut acc = USeries::zero(order);
        for c in poly.iter().rev() {
            acc = &acc * inner;
            acc.coeffs[0] += c;
        }
        acc
    }

    /// Evaluates the truncated polynomial at a real point.
    pub fn eval(&self, x: &Float) -> Float {
        let mut acc = Float::with_val(x.prec(), 0);
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }
}

impl fmt::Display for USeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.cmp0().is_eq() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl Add for &USeries {
    type Output = USeries;
    fn add(self, rhs: &USeries) -> USeries {
        let order = self.order().min(rhs.order());
        USeries {
            coeffs: (0..=order)
                .map(|k| Rat::from(&self.coeffs[k] + &rhs.coeffs[k]))
                .collect(),
        }
    }
}

impl Sub for &USeries {
    type Output = USeries;
    fn sub(self, rhs: &USeries) -> USeries {
        let order = self.order().min(rhs.order());
        USeries {
            coeffs: (0..=order)
                .map(|k| Rat::from(&self.coeffs[k] - &rhs.coeffs[k]))
                .collect(),
        }
    }
}

impl Mul for &USeries {
    type Output = USeries;
    fn mul(self, rhs: &USeries) -> USeries {
        let order = self.order().min(rhs.order());
        USeries {
            coeffs: poly_mul(&self.coeffs, &rhs.coeffs, order),
        }
    }
}

impl Neg for &USeries {
    type Output = USeries;
    fn neg(self) -> USeries {
        USeries {
            coeffs: self.coeffs.iter().map(|c| Rat::from(-c)).collect(),
        }
    }
}

// Dense kernels on coefficient slices. The bivariate series reuses them
// row by row.

/// Index one past the last nonzero coefficient.
pub(crate) fn effective_len(a: &[Rat]) -> usize {
    a.iter().rposition(|c| c.cmp0().is_ne()).map_or(0, |i| i + 1)
}

/// `out[0..=order] += a * b` truncated at `order`.
pub(crate) fn poly_mul_acc(out: &mut [Rat], a: &[Rat], b: &[Rat], order: usize) {
    let la = effective_len(a).min(order + 1);
    let lb = effective_len(b).min(order + 1);
    let mut tmp = Rational::new();
    for i in 0..la {
        let ai = &a[i];
        if ai.cmp0().is_eq() {
            continue;
        }
        let top = lb.min(order + 1 - i);
        for j in 0..top {
            let bj = &b[j];
            if bj.cmp0().is_eq() {
                continue;
            }
            tmp.assign(ai * bj);
            out[i + j] += &tmp;
        }
    }
}

pub(crate) fn poly_mul(a: &[Rat], b: &[Rat], order: usize) -> Vec<Rat> {
    let mut out = vec![Rat::new(); order + 1];
    poly_mul_acc(&mut out, a, b, order);
    out
}

pub(crate) fn poly_inverse(a: &[Rat]) -> Result<Vec<Rat>> {
    if a[0].cmp0().is_eq() {
        return Err(Error::NotAUnit);
    }
    let n = a.len();
    let inv0 = Rat::from(a[0].recip_ref());
    let mut out = vec![Rat::new(); n];
    out[0].assign(&inv0);
    let mut tmp = Rational::new();
    for k in 1..n {
        let mut acc = Rat::new();
        for i in 1..=k {
            if a[i].cmp0().is_eq() || out[k - i].cmp0().is_eq() {
                continue;
            }
            tmp.assign(&a[i] * &out[k - i]);
            acc += &tmp;
        }
        acc *= &inv0;
        out[k] = -acc;
    }
    Ok(out)
}

/// exp of a series with zero constant term: `k e_k = Σ_{i=1}^{k} i a_i e_{k-i}`.
pub(crate) fn poly_exp(a: &[Rat]) -> Vec<Rat> {
    let n = a.len();
    let mut out = vec![Rat::new(); n];
    out[0] = Rat::from(1);
    let mut tmp = Rational::new();
    for k in 1..n {
        let mut acc = Rat::new();
        for i in 1..=k {
            if a[i].cmp0().is_eq() {
                continue;
            }
            tmp.assign(&a[i] * &out[k - i]);
            tmp *= i as u64;
            acc += &tmp;
        }
        acc /= k as u64;
        out[k] = acc;
    }
    out
}

/// log of a series with constant term 1, as `∫ a'/a`.
pub(crate) fn poly_log(a: &[Rat]) -> Result<Vec<Rat>> {
    let n = a.len();
    if n == 1 {
        return Ok(vec![Rat::new()]);
    }
    let da: Vec<Rat> = (1..n).map(|k| Rat::from(&a[k] * Rat::from(k as u64))).collect();
    let inv = poly_inverse(&a[..n - 1])?;
    let q = poly_mul(&da, &inv, n - 2);
    let mut out = vec![Rat::new(); n];
    for k in 1..n {
        out[k] = Rat::from(&q[k - 1] / Rat::from(k as u64));
    }
    Ok(out)
}
