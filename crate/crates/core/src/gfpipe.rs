//! Exact truncated generating functions of planar graphs and count extraction.
//!
//! Series are bivariate in `x` (vertices, exponential) and `y` (edges,
//! ordinary). The chain is: 3-connected maps (`U`, `V`, `M`) → networks
//! (`D`) → 2-connected graphs (`B`) → connected (`C`, via `F = x C_x`) →
//! all planar graphs (`G = exp C`).

use std::collections::BTreeMap;

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pseries::{newton_implicit, newton_scalar, BSeries, FnSystem, Rat, USeries};

fn rat(n: i64, d: i64) -> Rat {
    Rat::from((n, d))
}

/// Fixed-order helper for building expressions: every constructor shares
/// the same rectangle.
#[derive(Clone, Copy)]
struct Ctx {
    n: usize,
    m: usize,
}

impl Ctx {
    fn of(s: &BSeries) -> Self {
        Ctx {
            n: s.xorder(),
            m: s.yorder(),
        }
    }
    fn c(&self, v: Rat) -> BSeries {
        BSeries::constant(v, self.n, self.m)
    }
    fn int(&self, v: i64) -> BSeries {
        self.c(Rat::from(v))
    }
    fn x(&self) -> BSeries {
        BSeries::var_x(self.n, self.m)
    }
    fn y(&self) -> BSeries {
        BSeries::var_y(self.n, self.m)
    }
}

fn one_plus(s: &BSeries) -> BSeries {
    &Ctx::of(s).int(1) + s
}

fn sq(s: &BSeries) -> BSeries {
    s * s
}

/// `U(x,y)`, `V(x,y)` from `U = xy(1+V)²`, `V = y(1+U)²`.
pub fn solve_uv(orderx: usize, ordery: usize) -> Result<(BSeries, BSeries)> {
    let ctx = Ctx {
        n: orderx,
        m: ordery,
    };
    let (x, y) = (ctx.x(), ctx.y());
    let xy = &x * &y;
    let sys = FnSystem {
        residual: |v: &[BSeries]| {
            Ok(vec![
                &v[0] - &(&xy * &sq(&one_plus(&v[1]))),
                &v[1] - &(&y * &sq(&one_plus(&v[0]))),
            ])
        },
        jacobian: |v: &[BSeries]| {
            let two = rat(2, 1);
            Ok(vec![
                vec![ctx.int(1), -&(&xy * &one_plus(&v[1])).scale(&two)],
                vec![-&(&y * &one_plus(&v[0])).scale(&two), ctx.int(1)],
            ])
        },
    };
    let mut sol = newton_implicit(&sys, &[BSeries::zero(orderx, ordery), y.clone()], orderx)?;
    let v = sol.pop().unwrap();
    let u = sol.pop().unwrap();
    Ok((u, v))
}

/// The 3-connected map series `M(x,y)`.
pub fn series_m(orderx: usize, ordery: usize) -> Result<BSeries> {
    let (u, v) = solve_uv(orderx, ordery)?;
    let ctx = Ctx {
        n: orderx,
        m: ordery,
    };
    let bracket = bracket_k(&ctx.y(), &u, &v, &(&ctx.x() * &ctx.y()))?;
    Ok(bracket.shift(2, 2))
}

/// `1/(1+xs) + 1/(1+s) − 1 − (1+U)²(1+V)²/(1+U+V)³` with `xs` passed in.
fn bracket_k(s: &BSeries, u: &BSeries, v: &BSeries, xs: &BSeries) -> Result<BSeries> {
    let ctx = Ctx::of(s);
    let p = map_ratio(u, v)?;
    let a = one_plus(xs).inverse()?;
    let b = one_plus(s).inverse()?;
    Ok(&(&(&a + &b) - &ctx.int(1)) - &p)
}

/// `(1+U)²(1+V)²/(1+U+V)³`.
fn map_ratio(u: &BSeries, v: &BSeries) -> Result<BSeries> {
    let s = one_plus(&(u + v));
    let num = &sq(&one_plus(u)) * &sq(&one_plus(v));
    Ok(&num * &(&s * &sq(&s)).inverse()?)
}

/// Solution of the network system: `D(x,y)` together with `U(x,D)` and
/// `V(x,D)`, found jointly from
///
/// ```text
/// U = xD(1+V)²,  V = D(1+U)²,
/// (D/2)·K(x,D) − log(1+D) + log(1+y) + xD²/(1+xD) = 0.
/// ```
///
/// `(D/2)·K` equals `M(x,D)/(2x²D)` once `U`, `V` are taken at `s = D`, so
/// no bivariate substitution is needed.
#[derive(Clone, Debug)]
pub struct Networks {
    pub d: BSeries,
    pub u_at_d: BSeries,
    pub v_at_d: BSeries,
}

pub fn solve_networks(orderx: usize, ordery: usize) -> Result<Networks> {
    let ctx = Ctx {
        n: orderx,
        m: ordery,
    };
    let (x, y) = (ctx.x(), ctx.y());
    let log1py = one_plus(&y).log()?;
    let half = rat(1, 2);
    let two = rat(2, 1);

    let residual = |v: &[BSeries]| -> Result<Vec<BSeries>> {
        let (u, w, d) = (&v[0], &v[1], &v[2]);
        let xd = &x * d;
        let k = bracket_k(d, u, w, &xd)?;
        let r3 = &(&(&(d * &k).scale(&half) - &one_plus(d).log()?) + &log1py)
            + &(&(&xd * d) * &one_plus(&xd).inverse()?);
        Ok(vec![
            u - &(&xd * &sq(&one_plus(w))),
            w - &(d * &sq(&one_plus(u))),
            r3,
        ])
    };
    let jacobian = |v: &[BSeries]| -> Result<Vec<Vec<BSeries>>> {
        let (u, w, d) = (&v[0], &v[1], &v[2]);
        let xd = &x * d;
        let pu = one_plus(u);
        let pw = one_plus(w);
        let s_inv = one_plus(&(u + w)).inverse()?;
        let p = map_ratio(u, w)?;
        let three_s = s_inv.scale(&rat(3, 1));
        let dp_du = &p * &(&pu.inverse()?.scale(&two) - &three_s);
        let dp_dw = &p * &(&pw.inverse()?.scale(&two) - &three_s);
        let k = bracket_k(d, u, w, &xd)?;
        let inv_xd = one_plus(&xd).inverse()?;
        let inv_d = one_plus(d).inverse()?;
        // d/dD of (D/2)K: K/2 + (D/2)(−x/(1+xD)² − 1/(1+D)²)
        let dk = -&(&(&x * &sq(&inv_xd)) + &sq(&inv_d));
        let d_half_dk = &k.scale(&half) + &(d * &dk).scale(&half);
        // d/dD of xD²/(1+xD) = (2xD + x²D²)/(1+xD)²
        let d_frac = &(&xd.scale(&two) + &sq(&xd)) * &sq(&inv_xd);
        let r3_d = &(&d_half_dk - &inv_d) + &d_frac;
        let minus_half_d = d.scale(&rat(-1, 2));
        Ok(vec![
            vec![ctx.int(1), -&(&xd * &pw).scale(&two), -&(&x * &sq(&pw))],
            vec![-&(d * &pu).scale(&two), ctx.int(1), -&sq(&pu)],
            vec![&minus_half_d * &dp_du, &minus_half_d * &dp_dw, r3_d],
        ])
    };
    let sys = FnSystem {
        residual,
        jacobian,
    };
    let seed = [BSeries::zero(orderx, ordery), y.clone(), y.clone()];
    let mut sol = newton_implicit(&sys, &seed, orderx)?;
    let d = sol.pop().unwrap();
    let v_at_d = sol.pop().unwrap();
    let u_at_d = sol.pop().unwrap();
    Ok(Networks { d, u_at_d, v_at_d })
}

pub fn solve_d(orderx: usize, ordery: usize) -> Result<BSeries> {
    Ok(solve_networks(orderx, ordery)?.d)
}

/// `D` solved the long way: `M(x,s)/(2x²s)` is formed by exact division and
/// substituted at `s = D` inside the Newton iteration. Much slower than
/// [`solve_d`]; kept as an independent check.
pub fn solve_d_by_composition(orderx: usize, ordery: usize) -> Result<BSeries> {
    let m_full = series_m(orderx + 2, ordery + 2)?;
    let reduced = m_full.div_monomial(2, 1)?.scale(&rat(1, 2));
    let reduced_ds = reduced.derive_y();
    let ctx = Ctx {
        n: orderx,
        m: ordery,
    };
    let (x, y) = (ctx.x(), ctx.y());
    let log1py = one_plus(&y).log()?;
    newton_scalar(
        |d: &BSeries| {
            let xd = &x * d;
            Ok(&(&(&reduced.compose_y(d)? - &one_plus(d).log()?) + &log1py)
                + &(&(&xd * d) * &one_plus(&xd).inverse()?))
        },
        |d: &BSeries| {
            let xd = &x * d;
            let inv_xd = one_plus(&xd).inverse()?;
            let d_frac = &(&xd.scale(&rat(2, 1)) + &sq(&xd)) * &sq(&inv_xd);
            Ok(&(&reduced_ds.compose_y(d)? - &one_plus(d).inverse()?) + &d_frac)
        },
        &y,
        orderx,
    )
}

/// `B = (x²/2) ∫₀^y (1+D(x,t))/(1+t) dt`.
pub fn series_b_integral(d: &BSeries) -> Result<BSeries> {
    let ctx = Ctx::of(d);
    let integrand = &one_plus(d) * &one_plus(&ctx.y()).inverse()?;
    let integral = integrand.integrate_y().truncate(ctx.n, ctx.m);
    Ok(integral.shift(2, 0).scale(&rat(1, 2)))
}

/// `B` as an elementary expression in `x`, `y`, `z = D(x,y)` and
/// `w = D(1+U(x,D))`, with the divisions by `x` carried out symbolically:
///
/// ```text
/// B = xz(6x−2+xz)/8 + (x²/2)(1+z)(log(1+y) − log(1+z)) − (x²/4)log(1+z)
///     + log(1+xz)/4
///   − x[2(1+x)(1+w)(z+w²) + 3(w−z)] / (8(1+w)²)
///   + log(1+xz+xw+xw²)/8 − (1−4x)/8 · log(1+w)
///   − (1−4x+2x²)/16 · [log(1−x+xz−xw+xw²) − log(1−x) − log(1+z+w+w²)]
/// ```
pub fn series_b_closed(net: &Networks) -> Result<BSeries> {
    let z = &net.d;
    let ctx = Ctx::of(z);
    let (x, y) = (ctx.x(), ctx.y());
    let w = z * &one_plus(&net.u_at_d);
    let xz = &x * z;
    let x2 = &x * &x;
    let log1pz = one_plus(z).log()?;

    let six_x_m2 = &x.scale(&rat(6, 1)) - &ctx.int(2);
    let t1 = (&xz * &(&six_x_m2 + &xz)).scale(&rat(1, 8));
    let t2 = (&(&x2 * &one_plus(z)) * &(&one_plus(&y).log()? - &log1pz)).scale(&rat(1, 2));
    let t3 = (&x2 * &log1pz).scale(&rat(-1, 4));
    let t4 = one_plus(&xz).log()?.scale(&rat(1, 4));
    let first = &(&(&t1 + &t2) + &t3) + &t4;

    let w2 = &w * &w;
    let xw = &x * &w;
    let xw2 = &x * &w2;
    let z_plus_w2 = z + &w2;
    let num = &(&(&one_plus(&x) * &one_plus(&w)) * &z_plus_w2).scale(&rat(2, 1))
        + &(&w - z).scale(&rat(3, 1));
    let s1 = (&(&x * &num) * &sq(&one_plus(&w)).inverse()?).scale(&rat(1, 8));
    let s2 = one_plus(&(&(&xz + &xw) + &xw2)).log()?.scale(&rat(-1, 8));
    let one_m4x = &ctx.int(1) - &x.scale(&rat(4, 1));
    let s3 = (&one_m4x * &one_plus(&w).log()?).scale(&rat(1, 8));
    let poly = &one_m4x + &x2.scale(&rat(2, 1));
    let inner = &(&(&xz - &x) - &xw) + &xw2;
    let logs = &(&one_plus(&inner).log()? - &(&ctx.int(1) - &x).log()?)
        - &one_plus(&(&(z + &w) + &w2)).log()?;
    let s4 = (&poly * &logs).scale(&rat(1, 16));
    let second = &(&(&s1 + &s2) + &s3) + &s4;

    Ok(&first - &second)
}

/// `F = x C_x`, `C`, `G` from `B`. `B` must be known one x-order beyond
/// the requested `orderx`.
pub fn series_fcg(b: &BSeries, orderx: usize) -> Result<(BSeries, BSeries, BSeries)> {
    if b.xorder() < orderx + 1 {
        return Err(Error::PipelineInconsistency(format!(
            "B needed to x-order {}, got {}",
            orderx + 1,
            b.xorder()
        )));
    }
    let b = b.truncate(orderx + 1, b.yorder());
    let bx = b.derive_x();
    let bxx = bx.derive_x();
    let n = orderx;
    let m = b.yorder();
    let x_times = |s: &BSeries, k: usize| s.resize_x(k).shift(1, 0);
    let f = newton_scalar(
        |f: &BSeries| {
            let k = f.xorder();
            let e = bx.compose_x(f)?.exp()?;
            Ok(f - &x_times(&e, k))
        },
        |f: &BSeries| {
            let k = f.xorder();
            let parts = BSeries::compose_x_many(&[&bx, &bxx], f)?;
            let e = parts[0].exp()?;
            Ok(&BSeries::one(k, m) - &x_times(&(&e * &parts[1]), k))
        },
        &BSeries::zero(n, m),
        n,
    )?;
    let c = f.div_monomial(1, 0)?.integrate_x();
    let g = c.exp()?;
    Ok((f, c, g))
}

/// Every series of the pipeline at a common order budget.
#[derive(Clone, Debug)]
pub struct GfBundle {
    pub orderx: usize,
    pub ordery: usize,
    pub u: BSeries,
    pub v: BSeries,
    pub m: BSeries,
    pub d: BSeries,
    pub b: BSeries,
    pub f: BSeries,
    pub c: BSeries,
    pub g: BSeries,
    pub b1: USeries,
    pub c1: USeries,
    pub g1: USeries,
    pub f1: USeries,
}

impl GfBundle {
    /// Builds all series to x-order `orderx` and y-order `3·orderx`.
    pub fn build(orderx: usize) -> Result<Self> {
        Self::build_with(orderx, 3 * orderx)
    }

    pub fn build_with(orderx: usize, ordery: usize) -> Result<Self> {
        let net = solve_networks(orderx + 1, ordery)?;
        let b_ext = series_b_closed(&net)?;
        let (f, c, g) = series_fcg(&b_ext, orderx)?;
        let (u, v) = solve_uv(orderx, ordery)?;
        let m = map_ratio_bracket(&u, &v)?;
        let b = b_ext.truncate(orderx, ordery);
        let d = net.d.truncate(orderx, ordery);
        let bundle = GfBundle {
            orderx,
            ordery,
            b1: b.at_y_one(),
            c1: c.at_y_one(),
            g1: g.at_y_one(),
            f1: f.at_y_one(),
            u,
            v,
            m,
            d,
            b,
            f,
            c,
            g,
        };
        bundle.check_nonnegative()?;
        Ok(bundle)
    }

    fn check_nonnegative(&self) -> Result<()> {
        for (name, s) in [
            ("D", &self.d),
            ("B", &self.b),
            ("F", &self.f),
            ("C", &self.c),
            ("G", &self.g),
        ] {
            for k in 0..=s.xorder() {
                if let Some(q) = s.row(k).iter().position(|c| c.cmp0().is_lt()) {
                    return Err(Error::PipelineInconsistency(format!(
                        "negative coefficient in {name} at x^{k} y^{q}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `ψ(F(x)) − x` at `y = 1`, with `ψ(u) = u·exp(−B_x(u))`.
    pub fn psi_of_f_minus_x(&self) -> Result<USeries> {
        let n = self.orderx;
        let bx = self.b1.derive();
        let f = self.f1.truncate(n - 1);
        let neg = bx.compose(&f)?.scale(&rat(-1, 1));
        let psi = &f * &neg.exp()?;
        Ok(&psi - &USeries::var(n - 1))
    }

    /// `∂B/∂y − (x²/2)(1+D)/(1+y)`, identically zero for a consistent
    /// bundle.
    pub fn b_derivative_residual(&self) -> Result<BSeries> {
        let ctx = Ctx::of(&self.d);
        let rhs = (&one_plus(&self.d) * &one_plus(&ctx.y()).inverse()?)
            .shift(2, 0)
            .scale(&rat(1, 2));
        Ok(&self.b.derive_y() - &rhs)
    }

    /// Stored `B` minus the `y`-integral route recomputed from `D`.
    pub fn b_route_difference(&self) -> Result<BSeries> {
        Ok(&self.b - &series_b_integral(&self.d)?)
    }

    pub fn series(&self, which: Family) -> &BSeries {
        match which {
            Family::Planar => &self.g,
            Family::Connected => &self.c,
            Family::Biconnected => &self.b,
            Family::Networks => &self.d,
        }
    }
}

fn map_ratio_bracket(u: &BSeries, v: &BSeries) -> Result<BSeries> {
    let ctx = Ctx::of(u);
    let y = ctx.y();
    Ok(bracket_k(&y, u, v, &(&ctx.x() * &y))?.shift(2, 2))
}

/// Which labelled family a count refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// All planar graphs (`g`).
    Planar,
    /// Connected planar graphs (`c`).
    Connected,
    /// 2-connected planar graphs, a single edge included (`b`).
    Biconnected,
    /// Planar networks (`d`).
    Networks,
}

impl Family {
    pub fn letter(self) -> &'static str {
        match self {
            Family::Planar => "g",
            Family::Connected => "c",
            Family::Biconnected => "b",
            Family::Networks => "d",
        }
    }

    pub fn from_letter(s: &str) -> Option<Self> {
        match s {
            "g" => Some(Family::Planar),
            "c" => Some(Family::Connected),
            "b" => Some(Family::Biconnected),
            "d" => Some(Family::Networks),
            _ => None,
        }
    }
}

/// Largest edge count tabulated for `n` vertices.
pub fn qmax(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).min(3 * n)
}

impl Family {
    /// Largest edge count tabulated at `n`. Networks also carry the edges
    /// at their two unlabelled poles, so they reach `3n`.
    pub fn qmax(self, n: usize) -> usize {
        match self {
            Family::Networks => 3 * n,
            _ => qmax(n),
        }
    }
}

/// Exact labelled counts by vertices and edges, for `n = 1..=nmax` and
/// `q = 0..=qmax(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub nmax: usize,
    pub tables: BTreeMap<Family, Vec<Vec<Integer>>>,
}

impl CountTable {
    pub fn new(nmax: usize, families: &[Family]) -> Self {
        let rows = |fam: Family| -> Vec<Vec<Integer>> {
            (0..=nmax)
                .map(|n| {
                    if n == 0 {
                        Vec::new()
                    } else {
                        vec![Integer::new(); fam.qmax(n) + 1]
                    }
                })
                .collect()
        };
        CountTable {
            nmax,
            tables: families.iter().map(|&f| (f, rows(f))).collect(),
        }
    }

    pub fn get(&self, fam: Family, n: usize, q: usize) -> Option<&Integer> {
        self.tables.get(&fam)?.get(n)?.get(q)
    }

    pub fn total(&self, fam: Family, n: usize) -> Option<Integer> {
        let row = self.tables.get(&fam)?.get(n)?;
        Some(row.iter().sum())
    }

    pub fn families(&self) -> impl Iterator<Item = Family> + '_ {
        self.tables.keys().copied()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut fams = serde_json::Map::new();
        for (fam, rows) in &self.tables {
            let mut totals = Vec::new();
            let mut cells = Vec::new();
            for (n, row) in rows.iter().enumerate().skip(1) {
                let total: Integer = row.iter().sum();
                totals.push(serde_json::json!({"n": n.to_string(), "count": total.to_string()}));
                for (q, c) in row.iter().enumerate() {
                    cells.push(serde_json::json!({
                        "n": n.to_string(),
                        "q": q.to_string(),
                        "count": c.to_string(),
                    }));
                }
            }
            fams.insert(
                fam.letter().to_string(),
                serde_json::json!({"totals": totals, "bivariate": cells}),
            );
        }
        serde_json::json!({"nmax": self.nmax.to_string(), "families": fams})
    }

    /// First cell where the two tables differ, if any.
    pub fn first_difference(&self, other: &CountTable) -> Option<(Family, usize, usize)> {
        for (fam, rows) in &self.tables {
            let Some(orows) = other.tables.get(fam) else {
                return Some((*fam, 0, 0));
            };
            for n in 1..=self.nmax.min(other.nmax) {
                if rows[n].len() != orows[n].len() {
                    return Some((*fam, n, 0));
                }
                for q in 0..rows[n].len() {
                    if rows[n][q] != orows[n][q] {
                        return Some((*fam, n, q));
                    }
                }
            }
        }
        None
    }
}

/// `n!·[xⁿ yᵠ]`, required to be an integer.
pub fn scaled_coefficient(s: &BSeries, n: usize, q: usize) -> Result<Integer> {
    let v = Rational::from(&s.coeff(n, q) * Integer::from(Integer::factorial(n as u32)));
    if *v.denom() != 1 {
        return Err(Error::PipelineInconsistency(format!(
            "n!·[x^{n} y^{q}] = {v} is not an integer"
        )));
    }
    Ok(v.numer().clone())
}

pub fn extract_counts(bundle: &GfBundle, nmax: usize, families: &[Family]) -> Result<CountTable> {
    if nmax > bundle.orderx || 3 * nmax > bundle.ordery {
        return Err(Error::PipelineInconsistency(format!(
            "series order ({}, {}) too small for n ≤ {nmax}",
            bundle.orderx, bundle.ordery
        )));
    }
    let mut table = CountTable::new(nmax, families);
    for (&fam, rows) in table.tables.iter_mut() {
        let s = bundle.series(fam);
        for (n, row) in rows.iter_mut().enumerate().skip(1) {
            for (q, cell) in row.iter_mut().enumerate() {
                *cell = scaled_coefficient(s, n, q)?;
            }
            // Nothing may sit beyond the tabulated range.
            for q in row.len()..=s.yorder() {
                if s.coeff(n, q).cmp0().is_ne() {
                    return Err(Error::PipelineInconsistency(format!(
                        "{} has a term at x^{n} y^{q} beyond the edge bound",
                        fam.letter()
                    )));
                }
            }
        }
    }
    Ok(table)
}

/// Ratios `(cₙ/n!)/(c_{n+1}/(n+1)!)` for `n = 1..order`.
pub fn coefficient_ratios(s: &USeries) -> Vec<f64> {
    (1..s.order())
        .filter_map(|n| {
            let a = s.coeff(n)?;
            let b = s.coeff(n + 1)?;
            if b.cmp0().is_eq() {
                return None;
            }
            Some(Rational::from(a / b).to_f64())
        })
        .collect()
}
