use rug::ops::Pow;
use rug::{Float, Integer};
use serde_json::json;

use crate::closedform::{decimal, eval_b_num, solve_t_of_y, SingularCoefficients, TPoint};
use crate::error::{Error, Result};

/// A Poisson law, optionally shifted by one (`1 + P(ν)`).
#[derive(Clone, Debug)]
pub struct PoissonLaw {
    pub parameter: Float,
    pub shifted: bool,
}

impl PoissonLaw {
    fn offset(&self) -> u64 {
        u64::from(self.shifted)
    }

    /// Probability of the value `k`.
    pub fn pmf(&self, k: u64) -> Float {
        let p = self.parameter.prec();
        let Some(j) = k.checked_sub(self.offset()) else {
            return Float::with_val(p, 0);
        };
        let num = Float::with_val(p, (&self.parameter).pow(j));
        let fact = Float::with_val(p, Integer::from(Integer::factorial(j as u32)));
        num / fact * Float::with_val(p, -&self.parameter).exp()
    }

    pub fn mean(&self) -> Float {
        Float::with_val(self.parameter.prec(), &self.parameter + self.offset())
    }

    /// Probability of the smallest value (`e^{−ν}`).
    pub fn mode_mass(&self) -> Float {
        Float::with_val(self.parameter.prec(), -&self.parameter).exp()
    }

    /// Masses from the smallest value until the remaining tail is below
    /// `tail`.
    pub fn table(&self, tail: f64) -> Vec<(u64, Float)> {
        let p = self.parameter.prec();
        let mut out = Vec::new();
        let mut total = Float::with_val(p, 0);
        let mut k = self.offset();
        loop {
            let m = self.pmf(k);
            total += &m;
            out.push((k, m));
            let rest = Float::with_val(p, 1) - &total;
            if rest.to_f64() < tail || out.len() > 10_000 {
                return out;
            }
            k += 1;
        }
    }

    pub fn to_json(&self, digits: usize) -> serde_json::Value {
        json!({
            "law": if self.shifted { "shifted_poisson" } else { "poisson" },
            "parameter": decimal(&self.parameter, digits),
            "mean": decimal(&self.mean(), digits),
            "p_min": decimal(&self.mode_mass(), digits),
        })
    }
}

/// Number of connected components: `1 + P(ν)` with `ν = C₀ = R + B₀ + B₂`.
pub fn components_law(prec: u32) -> Result<PoissonLaw> {
    let tp = TPoint::new(solve_t_of_y(&Float::with_val(prec, 1))?)?;
    let sc = SingularCoefficients::from_tpoint(&tp);
    Ok(PoissonLaw {
        parameter: sc.c0,
        shifted: true,
    })
}

/// Components isomorphic to members of a small family `A`: `P(A(ρ))`.
/// The caller guarantees that `A` converges beyond `ρ`.
pub fn family_law(a_at: impl Fn(&Float) -> Result<Float>, prec: u32) -> Result<PoissonLaw> {
    let tp = TPoint::new(solve_t_of_y(&Float::with_val(prec, 1))?)?;
    let parameter = a_at(&tp.rho)?;
    if !parameter.is_sign_positive() || parameter.is_zero() {
        return Err(Error::Domain("family parameter must be positive".into()));
    }
    Ok(PoissonLaw {
        parameter,
        shifted: false,
    })
}

/// Families with a known generating function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// 2-connected components, `A = B`.
    Biconnected,
    /// Isolated vertices, `A(x) = x`.
    SingleVertex,
    /// Isolated edges, `A(x) = x²/2`.
    SingleEdge,
    /// A fixed connected graph: `A(x) = xⁿ/|Aut|`.
    Fixed { vertices: u32, automorphisms: u64 },
}

pub fn builtin_family_law(kind: FamilyKind, prec: u32) -> Result<PoissonLaw> {
    let monomial = |n: u32, aut: u64| {
        move |x: &Float| -> Result<Float> {
            if aut == 0 {
                return Err(Error::Domain("automorphism count must be positive".into()));
            }
            Ok(Float::with_val(x.prec(), x.pow(n)) / aut)
        }
    };
    match kind {
        FamilyKind::Biconnected => family_law(
            |x| eval_b_num(x, &Float::with_val(x.prec(), 1)),
            prec,
        ),
        FamilyKind::SingleVertex => family_law(monomial(1, 1), prec),
        FamilyKind::SingleEdge => family_law(monomial(2, 2), prec),
        FamilyKind::Fixed {
            vertices,
            automorphisms,
        } => family_law(monomial(vertices, automorphisms), prec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_law_values() {
        let law = components_law(256).unwrap();
        assert!(law.shifted);
        assert!((law.mode_mass().to_f64() - 0.9632528217).abs() < 1e-9);
        assert!((law.mean().to_f64() - 1.0374393660).abs() < 1e-9);
        assert!(law.pmf(0).is_zero());
    }

    #[test]
    fn pmf_sums_to_one() {
        let law = components_law(256).unwrap();
        let total: f64 = law.table(1e-18).iter().map(|(_, m)| m.to_f64()).sum();
        assert!((total - 1.0).abs() < 1e-15);
        let plain = PoissonLaw {
            parameter: Float::with_val(128, 3.5),
            shifted: false,
        };
        let total: f64 = plain.table(1e-18).iter().map(|(_, m)| m.to_f64()).sum();
        assert!((total - 1.0).abs() < 1e-15);
    }

    #[test]
    fn built_in_families() {
        let b = builtin_family_law(FamilyKind::Biconnected, 256).unwrap();
        assert!((b.parameter.to_f64() - 0.0006837025).abs() < 1e-9);
        let v = builtin_family_law(FamilyKind::SingleVertex, 256).unwrap();
        let e = builtin_family_law(FamilyKind::SingleEdge, 256).unwrap();
        let rho = v.parameter.clone();
        assert_eq!(e.parameter, rho.clone().square() / 2u32);
        let tri = builtin_family_law(
            FamilyKind::Fixed {
                vertices: 3,
                automorphisms: 6,
            },
            256,
        )
        .unwrap();
        assert_eq!(tri.parameter, rho.pow(3u32) / 6u32);
    }
}
