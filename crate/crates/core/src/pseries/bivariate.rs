use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;
use rug::{Assign, Float};

use super::univariate::{effective_len, poly_exp, poly_inverse, poly_log, poly_mul, poly_mul_acc};
use super::{Rat, USeries};
use crate::error::{Error, Result};

/// Work estimate (row pairs times row length) above which `mul` fans out
/// across threads.
const PAR_THRESHOLD: usize = 20_000;

/// Truncated bivariate series `Σ c_{k,q} x^k y^q`, `k ≤ xorder`, `q ≤ yorder`,
/// stored densely as one y-polynomial per power of x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BSeries {
    rows: Vec<Vec<Rat>>,
    yorder: usize,
}

impl BSeries {
    pub fn zero(xorder: usize, yorder: usize) -> Self {
        BSeries {
            rows: vec![vec![Rat::new(); yorder + 1]; xorder + 1],
            yorder,
        }
    }

    pub fn constant(c: Rat, xorder: usize, yorder: usize) -> Self {
        let mut s = Self::zero(xorder, yorder);
        s.rows[0][0] = c;
        s
    }

    pub fn one(xorder: usize, yorder: usize) -> Self {
        Self::constant(Rat::from(1), xorder, yorder)
    }

    pub fn var_x(xorder: usize, yorder: usize) -> Self {
        Self::monomial(Rat::from(1), 1, 0, xorder, yorder)
    }

    pub fn var_y(xorder: usize, yorder: usize) -> Self {
        Self::monomial(Rat::from(1), 0, 1, xorder, yorder)
    }

    /// `c x^kx y^ky`, or zero if the monomial lies outside the rectangle.
    pub fn monomial(c: Rat, kx: usize, ky: usize, xorder: usize, yorder: usize) -> Self {
        let mut s = Self::zero(xorder, yorder);
        if kx <= xorder && ky <= yorder {
            s.rows[kx][ky] = c;
        }
        s
    }

    /// A series depending on y alone, taken from a univariate series in y.
    pub fn from_y_series(s: &USeries, xorder: usize, yorder: usize) -> Self {
        let mut out = Self::zero(xorder, yorder);
        for (dst, src) in out.rows[0].iter_mut().zip(s.coeffs()) {
            dst.assign(src);
        }
        out
    }

    /// A series depending on x alone.
    pub fn from_x_series(s: &USeries, xorder: usize, yorder: usize) -> Self {
        let mut out = Self::zero(xorder, yorder);
        for (row, c) in out.rows.iter_mut().zip(s.coeffs()) {
            row[0].assign(c);
        }
        out
    }

    pub fn from_fn(xorder: usize, yorder: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        BSeries {
            rows: (0..=xorder)
                .map(|k| (0..=yorder).map(|q| f(k, q)).collect())
                .collect(),
            yorder,
        }
    }

    pub fn xorder(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn yorder(&self) -> usize {
        self.yorder
    }

    /// Coefficient of `x^k y^q`; zero outside the stored rectangle.
    pub fn coeff(&self, k: usize, q: usize) -> Rat {
        self.rows
            .get(k)
            .and_then(|r| r.get(q))
            .cloned()
            .unwrap_or_default()
    }

    pub fn set_coeff(&mut self, k: usize, q: usize, c: Rat) {
        self.rows[k][q] = c;
    }

    /// The y-polynomial multiplying `x^k`.
    pub fn row(&self, k: usize) -> &[Rat] {
        &self.rows[k]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| effective_len(r) == 0)
    }

    pub fn truncate(&self, xorder: usize, yorder: usize) -> Self {
        let xorder = xorder.min(self.xorder());
        let yorder = yorder.min(self.yorder);
        BSeries {
            rows: self.rows[..=xorder]
                .iter()
                .map(|r| r[..=yorder].to_vec())
                .collect(),
            yorder,
        }
    }

    /// Changes the x-order, truncating or padding with zero rows.
    pub fn resize_x(&self, xorder: usize) -> Self {
        let mut rows: Vec<Vec<Rat>> = self.rows.iter().take(xorder + 1).cloned().collect();
        rows.resize(xorder + 1, vec![Rat::new(); self.yorder + 1]);
        BSeries {
            rows,
            yorder: self.yorder,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.map_rows(|r| r.iter().map(|a| Rat::from(a * c)).collect())
    }

    fn map_rows(&self, f: impl Fn(&[Rat]) -> Vec<Rat>) -> Self {
        BSeries {
            rows: self.rows.iter().map(|r| f(r)).collect(),
            yorder: self.yorder,
        }
    }

    /// Multiplies by `x^kx y^ky`. Orders are kept, so high terms fall off.
    pub fn shift(&self, kx: usize, ky: usize) -> Self {
        let mut out = Self::zero(self.xorder(), self.yorder);
        for k in 0..=self.xorder() {
            if k + kx > self.xorder() {
                break;
            }
            for q in 0..=self.yorder {
                if q + ky > self.yorder {
                    break;
                }
                out.rows[k + kx][q + ky].assign(&self.rows[k][q]);
            }
        }
        out
    }

    /// Exact division by `x^kx y^ky`. Both orders drop accordingly.
    pub fn div_monomial(&self, kx: usize, ky: usize) -> Result<Self> {
        let err = Error::InexactDivision { kx, ky };
        if kx > self.xorder() || ky > self.yorder {
            return Err(err);
        }
        let bad_row = self.rows[..kx].iter().any(|r| effective_len(r) > 0);
        let bad_col = self.rows.iter().any(|r| effective_len(&r[..ky]) > 0);
        if bad_row || bad_col {
            return Err(err);
        }
        Ok(BSeries {
            rows: self.rows[kx..].iter().map(|r| r[ky..].to_vec()).collect(),
            yorder: self.yorder - ky,
        })
    }

    /// Multiplies every row by the same y-polynomial.
    pub fn mul_y_poly(&self, p: &[Rat]) -> Self {
        let m = self.yorder;
        self.map_rows(|r| poly_mul(r, p, m))
    }

    pub fn inverse(&self) -> Result<Self> {
        let m = self.yorder;
        let inv0 = poly_inverse(&self.rows[0])?;
        let n = self.xorder();
        let mut out: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
        out.push(inv0);
        for k in 1..=n {
            let mut acc = vec![Rat::new(); m + 1];
            for i in 1..=k {
                poly_mul_acc(&mut acc, &self.rows[i], &out[k - i], m);
            }
            let mut row = poly_mul(&acc, &out[0], m);
            row.iter_mut().for_each(|c| *c = Rat::from(-&*c));
            out.push(row);
        }
        Ok(BSeries {
            rows: out,
            yorder: m,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let n = self.xorder().min(other.xorder());
        let m = self.yorder.min(other.yorder);
        Ok(&self.truncate(n, m) * &other.truncate(n, m).inverse()?)
    }

    /// Formal exponential; the coefficient of `x^0 y^0` must vanish.
    pub fn exp(&self) -> Result<Self> {
        if self.rows[0][0].cmp0().is_ne() {
            return Err(Error::BadConstantTerm("exp needs a zero constant term"));
        }
        let m = self.yorder;
        let n = self.xorder();
        let mut out: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
        out.push(poly_exp(&self.rows[0]));
        for r in 1..=n {
            let mut acc = vec![Rat::new(); m + 1];
            for i in 1..=r {
                if effective_len(&self.rows[i]) == 0 {
                    continue;
                }
                let scaled: Vec<Rat> = self.rows[i]
                    .iter()
                    .map(|c| Rat::from(c * Rat::from(i as u64)))
                    .collect();
                poly_mul_acc(&mut acc, &scaled, &out[r - i], m);
            }
            let rr = Rat::from(r as u64);
            acc.iter_mut().for_each(|c| *c /= &rr);
            out.push(acc);
        }
        Ok(BSeries {
            rows: out,
            yorder: m,
        })
    }

    /// Formal logarithm; the coefficient of `x^0 y^0` must be 1.
    pub fn log(&self) -> Result<Self> {
        if self.rows[0][0] != 1 {
            return Err(Error::BadConstantTerm("log needs constant term 1"));
        }
        let row0 = poly_log(&self.rows[0])?;
        if self.xorder() == 0 {
            return Ok(BSeries {
                rows: vec![row0],
                yorder: self.yorder,
            });
        }
        let da = self.derive_x();
        let q = &da * &self.truncate(da.xorder(), self.yorder).inverse()?;
        let mut out = q.integrate_x();
        out.rows[0] = row0;
        Ok(out)
    }

    pub fn derive_x(&self) -> Self {
        if self.xorder() == 0 {
            return Self::zero(0, self.yorder);
        }
        BSeries {
            rows: (1..self.rows.len())
                .map(|k| {
                    let kk = Rat::from(k as u64);
                    self.rows[k].iter().map(|c| Rat::from(c * &kk)).collect()
                })
                .collect(),
            yorder: self.yorder,
        }
    }

    pub fn derive_y(&self) -> Self {
        if self.yorder == 0 {
            return Self::zero(self.xorder(), 0);
        }
        BSeries {
            rows: self
                .rows
                .iter()
                .map(|r| {
                    (1..r.len())
                        .map(|q| Rat::from(&r[q] * Rat::from(q as u64)))
                        .collect()
                })
                .collect(),
            yorder: self.yorder - 1,
        }
    }

    pub fn integrate_x(&self) -> Self {
        let mut rows = Vec::with_capacity(self.rows.len() + 1);
        rows.push(vec![Rat::new(); self.yorder + 1]);
        for (k, r) in self.rows.iter().enumerate() {
            let d = Rat::from(k as u64 + 1);
            rows.push(r.iter().map(|c| Rat::from(c / &d)).collect());
        }
        BSeries {
            rows,
            yorder: self.yorder,
        }
    }

    pub fn integrate_y(&self) -> Self {
        BSeries {
            rows: self
                .rows
                .iter()
                .map(|r| {
                    let mut out = Vec::with_capacity(r.len() + 1);
                    out.push(Rat::new());
                    for (q, c) in r.iter().enumerate() {
                        out.push(Rat::from(c / Rat::from(q as u64 + 1)));
                    }
                    out
                })
                .collect(),
            yorder: self.yorder + 1,
        }
    }

    /// Univariate `outer` evaluated at this series, which must have a zero
    /// constant term. The outer series must reach total degree
    /// `xorder + yorder`, since every power up to that one contributes.
    pub fn compose_outer(outer: &USeries, inner: &BSeries) -> Result<Self> {
        if inner.rows[0][0].cmp0().is_ne() {
            return Err(Error::Composition("inner series must have zero constant term"));
        }
        let need = inner.xorder() + inner.yorder;
        if outer.order() < need {
            return Err(Error::Composition("outer series order below total degree of inner"));
        }
        Ok(Self::compose_poly(&outer.coeffs()[..=need], inner))
    }

    /// Exact evaluation of the polynomial `Σ poly_j u^j` at `u = inner`.
    pub fn compose_poly(poly: &[Rat], inner: &BSeries) -> Self {
        let mut acc = Self::zero(inner.xorder(), inner.yorder);
        for c in poly.iter().rev() {
            acc = &acc * inner;
            acc.rows[0][0] += c;
        }
        acc
    }

    /// `self(inner(x,y), y)` for each outer series at once, sharing the
    /// powers of `inner`. `inner` must vanish at `x = 0`.
    pub fn compose_x_many(outers: &[&BSeries], inner: &BSeries) -> Result<Vec<Self>> {
        if effective_len(&inner.rows[0]) > 0 {
            return Err(Error::Composition("inner series must vanish at x = 0"));
        }
        let n = outers
            .iter()
            .map(|o| o.xorder())
            .chain([inner.xorder()])
            .min()
            .unwrap_or(0);
        let m = outers
            .iter()
            .map(|o| o.yorder)
            .chain([inner.yorder])
            .min()
            .unwrap_or(0);
        let inner = inner.truncate(n, m);
        let mut outs: Vec<BSeries> = outers
            .iter()
            .map(|o| BSeries::from_y_row(&o.rows[0][..=m], n))
            .collect();
        let mut power = inner.clone();
        for k in 1..=n {
            for (out, o) in outs.iter_mut().zip(outers) {
                let row = &o.rows[k][..=m];
                if effective_len(row) == 0 {
                    continue;
                }
                *out = &*out + &power.mul_y_poly(row);
            }
            if k < n {
                power = &power * &inner;
            }
        }
        Ok(outs)
    }

    pub fn compose_x(&self, inner: &BSeries) -> Result<Self> {
        Ok(Self::compose_x_many(&[self], inner)?.remove(0))
    }

    /// `self(x, inner(x,y))`. `inner` must vanish at `y = 0`, so its q-th
    /// power starts at `y^q` and the sum is finite.
    pub fn compose_y(&self, inner: &BSeries) -> Result<Self> {
        if inner.rows.iter().any(|r| r[0].cmp0().is_ne()) {
            return Err(Error::Composition("inner series must vanish at y = 0"));
        }
        let n = self.xorder().min(inner.xorder());
        let m = self.yorder.min(inner.yorder);
        let inner = inner.truncate(n, m);
        let column = |q: usize| {
            let mut c = BSeries::zero(n, m);
            for k in 0..=n {
                c.rows[k][0].assign(&self.rows[k][q]);
            }
            c
        };
        let mut acc = column(m);
        for q in (0..m).rev() {
            acc = &(&acc * &inner) + &column(q);
        }
        Ok(acc)
    }

    fn from_y_row(row: &[Rat], xorder: usize) -> Self {
        let mut s = Self::zero(xorder, row.len() - 1);
        s.rows[0] = row.to_vec();
        s
    }

    /// Substitutes `y = 1`, summing each row. Exact for planar-graph series
    /// whose rows are polynomials inside the stored y-range.
    pub fn at_y_one(&self) -> USeries {
        USeries::from_coeffs(
            self.rows
                .iter()
                .map(|r| r.iter().fold(Rat::new(), |acc, c| acc + c))
                .collect(),
        )
    }

    /// The series in y obtained from the row of `x^k`.
    pub fn row_series(&self, k: usize) -> USeries {
        USeries::from_coeffs(self.rows[k].clone())
    }

    pub fn eval(&self, x: &Float, y: &Float) -> Float {
        let prec = x.prec().max(y.prec());
        let mut acc = Float::with_val(prec, 0);
        for r in self.rows.iter().rev() {
            let mut row = Float::with_val(prec, 0);
            for c in r.iter().rev() {
                row *= y;
                row += c;
            }
            acc *= x;
            acc += row;
        }
        acc
    }
}

impl Add for &BSeries {
    type Output = BSeries;
    fn add(self, rhs: &BSeries) -> BSeries {
        let n = self.xorder().min(rhs.xorder());
        let m = self.yorder.min(rhs.yorder);
        BSeries::from_fn(n, m, |k, q| Rat::from(&self.rows[k][q] + &rhs.rows[k][q]))
    }
}

impl Sub for &BSeries {
    type Output = BSeries;
    fn sub(self, rhs: &BSeries) -> BSeries {
        let n = self.xorder().min(rhs.xorder());
        let m = self.yorder.min(rhs.yorder);
        BSeries::from_fn(n, m, |k, q| Rat::from(&self.rows[k][q] - &rhs.rows[k][q]))
    }
}

impl Neg for &BSeries {
    type Output = BSeries;
    fn neg(self) -> BSeries {
        self.map_rows(|r| r.iter().map(|c| Rat::from(-c)).collect())
    }
}

impl Mul for &BSeries {
    type Output = BSeries;
    fn mul(self, rhs: &BSeries) -> BSeries {
        let n = self.xorder().min(rhs.xorder());
        let m = self.yorder.min(rhs.yorder);
        let la: Vec<usize> = self.rows[..=n].iter().map(|r| effective_len(r)).collect();
        let lb: Vec<usize> = rhs.rows[..=n].iter().map(|r| effective_len(r)).collect();
        let row = |k: usize| {
            let mut out = vec![Rat::new(); m + 1];
            for i in 0..=k {
                if la[i] == 0 || lb[k - i] == 0 {
                    continue;
                }
                poly_mul_acc(&mut out, &self.rows[i], &rhs.rows[k - i], m);
            }
            out
        };
        let work: usize = la.iter().sum::<usize>() * lb.iter().sum::<usize>();
        let rows = if work > PAR_THRESHOLD {
            (0..=n).into_par_iter().map(row).collect()
        } else {
            (0..=n).map(row).collect()
        };
        BSeries { rows, yorder: m }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::from((n, d))
    }

    fn xy(n: usize, m: usize) -> (BSeries, BSeries) {
        (BSeries::var_x(n, m), BSeries::var_y(n, m))
    }

    #[test]
    fn inverse_of_one_plus_x_plus_y() {
        let (x, y) = xy(4, 4);
        let a = &(&BSeries::one(4, 4) + &x) + &y;
        let inv = a.inverse().unwrap();
        // 1/(1+x+y) = Σ (-1)^(k+q) C(k+q, k) x^k y^q
        for k in 0..=4 {
            for q in 0..=4 {
                let binom = (1..=q).fold(1i64, |acc, j| acc * (k + j) as i64 / j as i64);
                let sign = if (k + q) % 2 == 0 { 1 } else { -1 };
                assert_eq!(inv.coeff(k, q), Rat::from(sign * binom));
            }
        }
        assert_eq!(&a * &inv, BSeries::one(4, 4));
    }

    #[test]
    fn exp_log_round_trip() {
        let (x, y) = xy(6, 6);
        let s = &(&x.scale(&r(2, 3)) + &(&x * &y)) - &y.scale(&r(1, 5));
        let e = s.exp().unwrap();
        assert_eq!(e.log().unwrap(), s);
    }

    #[test]
    fn exp_of_sum_is_product() {
        let (x, y) = xy(5, 5);
        assert_eq!(
            (&x + &y).exp().unwrap(),
            &x.exp().unwrap() * &y.exp().unwrap()
        );
    }

    #[test]
    fn y_integration_then_derivative() {
        let s = BSeries::from_fn(3, 4, |k, q| r((k * 7 + q) as i64 - 5, (q + 1) as i64));
        assert_eq!(s.integrate_y().derive_y(), s);
        let y2 = BSeries::monomial(r(1, 1), 0, 2, 1, 2);
        assert_eq!(y2.integrate_y().coeff(0, 3), r(1, 3));
    }

    #[test]
    fn compose_x_and_y() {
        let (x, y) = xy(5, 5);
        // (1 + x y) with x := x + x y equals 1 + x y + x y^2
        let outer = &BSeries::one(5, 5) + &(&x * &y);
        let inner = &x + &(&x * &y);
        let got = outer.compose_x(&inner).unwrap();
        let expected = &(&BSeries::one(5, 5) + &(&x * &y)) + &(&(&x * &y) * &y);
        assert_eq!(got, expected);

        // y^2 with y := y + x y
        let sq = BSeries::monomial(r(1, 1), 0, 2, 5, 5);
        let sub = &y + &(&x * &y);
        assert_eq!(sq.compose_y(&sub).unwrap(), &sub * &sub);
    }

    #[test]
    fn univariate_outer_into_bivariate() {
        let (x, y) = xy(4, 4);
        let s = &x + &y;
        let expm1 = &USeries::var(8).exp().unwrap() - &USeries::one(8);
        let log1p = USeries::from_ints(&[1, 1, 0, 0, 0, 0, 0, 0, 0]).log().unwrap();
        let e = BSeries::compose_outer(&expm1, &s).unwrap();
        assert_eq!(BSeries::compose_outer(&log1p, &e).unwrap(), s);
        assert!(BSeries::compose_outer(&USeries::var(3), &s).is_err());
    }

    #[test]
    fn exact_monomial_division() {
        let (x, y) = xy(4, 4);
        let s = &(&x * &x) * &y;
        let q = s.div_monomial(2, 1).unwrap();
        assert_eq!(q, BSeries::one(2, 3));
        assert!(s.div_monomial(3, 0).is_err());
    }
}
