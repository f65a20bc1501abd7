//! Newton lifting for implicit systems `Φ(F) = 0` over a truncated series ring.
//!
//! Each step solves the linearised system with the Jacobian evaluated at the
//! current approximation. If the approximation is correct through `x^{p-1}`,
//! one step makes it correct through `x^{2p-1}`.

use super::{BSeries, USeries};
use crate::error::{Error, Result};

/// The operations Newton lifting needs from a series type. "Order" always
/// refers to the lifting variable x.
pub trait SeriesRing: Clone + Send + Sync {
    fn x_order(&self) -> usize;
    /// Truncates or zero-pads to the given x-order.
    fn with_x_order(&self, order: usize) -> Self;
    fn add_s(&self, rhs: &Self) -> Self;
    fn sub_s(&self, rhs: &Self) -> Self;
    fn mul_s(&self, rhs: &Self) -> Self;
    fn inverse_s(&self) -> Result<Self>;
    fn is_unit(&self) -> bool;
    fn is_zero_s(&self) -> bool;
}

impl SeriesRing for USeries {
    fn x_order(&self) -> usize {
        self.order()
    }
    fn with_x_order(&self, order: usize) -> Self {
        USeries::from_poly(self.coeffs(), order)
    }
    fn add_s(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_s(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_s(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inverse_s(&self) -> Result<Self> {
        self.inverse()
    }
    fn is_unit(&self) -> bool {
        self.coeffs()[0].cmp0().is_ne()
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
}

impl SeriesRing for BSeries {
    fn x_order(&self) -> usize {
        self.xorder()
    }
    fn with_x_order(&self, order: usize) -> Self {
        self.resize_x(order)
    }
    fn add_s(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_s(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_s(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inverse_s(&self) -> Result<Self> {
        self.inverse()
    }
    fn is_unit(&self) -> bool {
        self.row(0)[0].cmp0().is_ne()
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
}

/// Residual and Jacobian of an implicit system, both evaluated at the order
/// of the arguments.
pub trait ImplicitSystem<S: SeriesRing> {
    fn residual(&self, vars: &[S]) -> Result<Vec<S>>;
    /// `J[i][j] = ∂Φ_i/∂F_j`.
    fn jacobian(&self, vars: &[S]) -> Result<Vec<Vec<S>>>;
}

/// An implicit system given by a pair of closures.
pub struct FnSystem<R, J> {
    pub residual: R,
    pub jacobian: J,
}

impl<S, R, J> ImplicitSystem<S> for FnSystem<R, J>
where
    S: SeriesRing,
    R: Fn(&[S]) -> Result<Vec<S>>,
    J: Fn(&[S]) -> Result<Vec<Vec<S>>>,
{
    fn residual(&self, vars: &[S]) -> Result<Vec<S>> {
        (self.residual)(vars)
    }
    fn jacobian(&self, vars: &[S]) -> Result<Vec<Vec<S>>> {
        (self.jacobian)(vars)
    }
}

/// Gaussian elimination with unit pivots over the series ring.
pub fn solve_linear<S: SeriesRing>(mut a: Vec<Vec<S>>, mut b: Vec<S>) -> Result<Vec<S>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| a[r][col].is_unit())
            .ok_or(Error::SingularImplicitSystem)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].inverse_s()?;
        for r in 0..n {
            if r == col || a[r][col].is_zero_s() {
                continue;
            }
            let factor = a[r][col].mul_s(&inv);
            for c in col..n {
                let t = factor.mul_s(&a[col][c]);
                a[r][c] = a[r][c].sub_s(&t);
            }
            b[r] = b[r].sub_s(&factor.mul_s(&b[col]));
        }
        b[col] = b[col].mul_s(&inv);
    }
    Ok(b)
}

/// Lifts `seed` (exact at `x^0`) to a solution of `sys` through x-order
/// `order`. Fails if the Jacobian is not invertible at the seed or the
/// residual has not vanished after `⌈log₂(order+1)⌉ + 2` steps.
pub fn newton_implicit<S: SeriesRing>(
    sys: &impl ImplicitSystem<S>,
    seed: &[S],
    order: usize,
) -> Result<Vec<S>> {
    let max_steps = (usize::BITS - order.leading_zeros()) as usize + 2;
    let mut vars: Vec<S> = seed.iter().map(|s| s.with_x_order(0)).collect();
    let mut precision = 1usize; // number of correct x-coefficients
    for _ in 0..max_steps {
        let target = (2 * precision - 1).min(order);
        let cur: Vec<S> = vars.iter().map(|s| s.with_x_order(target)).collect();
        let res = sys.residual(&cur)?;
        if precision > order && res.iter().all(|r| r.is_zero_s()) {
            return Ok(cur);
        }
        let jac = sys.jacobian(&cur)?;
        let delta = solve_linear(jac, res)?;
        vars = cur.iter().zip(&delta).map(|(v, d)| v.sub_s(d)).collect();
        precision = (2 * precision).min(order + 1);
        if precision > order {
            let res = sys.residual(&vars)?;
            if res.iter().all(|r| r.is_zero_s()) {
                return Ok(vars);
            }
            // Stay at full order and let the remaining steps retry.
            precision = order + 1;
        }
    }
    Err(Error::NoConvergence(format!(
        "residual nonzero after {max_steps} Newton steps at order {order}"
    )))
}

/// Scalar convenience wrapper around [`newton_implicit`].
pub fn newton_scalar<S: SeriesRing>(
    residual: impl Fn(&S) -> Result<S>,
    derivative: impl Fn(&S) -> Result<S>,
    seed: &S,
    order: usize,
) -> Result<S> {
    let sys = FnSystem {
        residual: |v: &[S]| Ok(vec![residual(&v[0])?]),
        jacobian: |v: &[S]| Ok(vec![vec![derivative(&v[0])?]]),
    };
    Ok(newton_implicit(&sys, std::slice::from_ref(seed), order)?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseries::Rat;
    use rug::ops::Pow;
    use rug::Integer;

    #[test]
    fn tree_function_matches_lagrange() {
        let n = 12;
        let x = USeries::var(n);
        let f = newton_scalar(
            |f: &USeries| Ok(f - &(&x * &f.exp()?)),
            |f: &USeries| Ok(&USeries::one(n) - &(&x * &f.exp()?)),
            &USeries::zero(n),
            n,
        )
        .unwrap();
        for k in 1..=n {
            let num = Integer::from(k).pow(k as u32 - 1);
            let den = Integer::from(Integer::factorial(k as u32));
            assert_eq!(f.coeff(k).unwrap(), &Rat::from((num, den)), "k = {k}");
        }
    }

    #[test]
    fn catalan_fixed_point() {
        let n = 8;
        let x = USeries::var(n);
        let one = USeries::one(n);
        let f = newton_scalar(
            |f: &USeries| {
                let g = f + &one;
                Ok(f - &(&x * &(&g * &g)))
            },
            |f: &USeries| {
                let g = f + &one;
                Ok(&one - &(&x * &g).scale(&Rat::from(2)))
            },
            &USeries::zero(n),
            n,
        )
        .unwrap();
        let cat = [0, 1, 2, 5, 14, 42, 132, 429, 1430];
        assert_eq!(f, USeries::from_ints(&cat));
    }

    #[test]
    fn identity_system_returns_target() {
        let s = USeries::from_ints(&[0, 3, -1, 4, 1, -5]);
        let f = newton_scalar(
            |f: &USeries| Ok(f - &s),
            |_| Ok(USeries::one(5)),
            &USeries::zero(5),
            5,
        )
        .unwrap();
        assert_eq!(f, s);
    }

    #[test]
    fn non_unit_jacobian_is_rejected() {
        let err = newton_scalar(
            |f: &USeries| Ok(f.clone()),
            |_| Ok(USeries::zero(4)),
            &USeries::zero(4),
            4,
        );
        assert!(matches!(err, Err(Error::SingularImplicitSystem)));
    }

    #[test]
    fn coupled_bivariate_system() {
        // U = x y (1+V)^2, V = y (1+U)^2
        let (n, m) = (5, 15);
        let x = BSeries::var_x(n, m);
        let y = BSeries::var_y(n, m);
        let one = BSeries::one(n, m);
        let two = Rat::from(2);
        let sys = FnSystem {
            residual: |v: &[BSeries]| {
                let pv = &one + &v[1];
                let pu = &one + &v[0];
                Ok(vec![
                    &v[0] - &(&(&x * &y) * &(&pv * &pv)),
                    &v[1] - &(&y * &(&pu * &pu)),
                ])
            },
            jacobian: |v: &[BSeries]| {
                let pv = &one + &v[1];
                let pu = &one + &v[0];
                Ok(vec![
                    vec![one.clone(), -&(&(&x * &y) * &pv).scale(&two)],
                    vec![-&(&y * &pu).scale(&two), one.clone()],
                ])
            },
        };
        let sol = newton_implicit(&sys, &[BSeries::zero(n, m), y.clone()], n).unwrap();
        let res = sys.residual(&sol).unwrap();
        assert!(res.iter().all(|r| r.is_zero()));
        assert_eq!(sol[1].row(0)[1], Rat::from(1));
    }
}
