use rug::float::Constant;
use rug::Float;
use serde::Serialize;

use super::format::decimal;
use super::real::{HpDual, Real};
use super::rho::{solve_rho_equals, tpoint_of_y};
use super::roots::solve_t_of_y;
use super::scalar::{eval_b_num, eval_c_num};
use super::tpoint::TPoint;
use crate::error::{Error, Result};

/// `Γ(−5/2) = −8√π/15`, from `Γ(1/2) = √π` and `Γ(z) = Γ(z+1)/z`.
pub fn gamma_minus_five_halves(prec: u32) -> Float {
    let sqrt_pi = Float::with_val(prec, Constant::Pi).sqrt();
    -sqrt_pi * 8u32 / 15u32
}

/// Coefficients of the singular expansions of `F`, `C` and `G` at `ρ(y)`,
/// in terms of `R(y)` and the `Bᵢ(y)`.
#[derive(Clone, Debug)]
pub struct SingularCoefficients<T> {
    pub f0: T,
    pub f2: T,
    pub f3: T,
    pub c0: T,
    pub c2: T,
    pub c4: T,
    pub c5: T,
    pub g5: T,
}

impl<T: Real> SingularCoefficients<T> {
    pub fn from_tpoint(tp: &TPoint<T>) -> Self {
        let r = tp.xi.clone();
        let f0 = r.clone();
        let f2 = r.powi(2) / (tp.b4.clone() * 2 - r.clone());
        let ratio = r.lit(1) - tp.b4.clone() * 2 / r.clone();
        let f3 = -(tp.b5.clone() * 5 / 2) / ratio.pow_half(5);
        let c0 = r.clone() + tp.b0.clone() + tp.b2.clone();
        let c2 = -f0.clone();
        let c4 = -(f0.clone() + f2.clone()) / 2;
        let c5 = -(f3.clone() * 2) / 5;
        let g5 = c0.exp() * c5.clone();
        SingularCoefficients {
            f0,
            f2,
            f3,
            c0,
            c2,
            c4,
            c5,
            g5,
        }
    }
}

/// `C₀(y)`, `C₅(y)`, `G₅(y)` at a real edge weight.
pub fn singular_coefficients_at(y: &Float) -> Result<SingularCoefficients<Float>> {
    let tp = TPoint::new(solve_t_of_y(y)?)?;
    Ok(SingularCoefficients::from_tpoint(&tp))
}

/// Every named constant, computed at one working precision.
#[derive(Clone, Debug)]
pub struct ConstantsBundle {
    pub prec: u32,
    pub t0: Float,
    pub r: Float,
    pub rho: Float,
    pub gamma: Float,
    pub b0: Float,
    pub b2: Float,
    pub b4: Float,
    pub b5: Float,
    pub f0: Float,
    pub f2: Float,
    pub f3: Float,
    pub c0: Float,
    pub c2: Float,
    pub c4: Float,
    pub c5: Float,
    pub g: Float,
    pub c: Float,
    pub kappa: Float,
    pub lambda: Float,
    pub zeta: Float,
    pub nu: Float,
    pub exp_neg_nu: Float,
    /// Edge weight where `ρ(y) = 1`.
    pub tau_root: Float,
    pub tau: Float,
    pub log2_tau: Float,
    pub b_at_rho: Float,
    /// `C(ρ)` from the numeric route through `F(ρ) = R` and `B(R)`.
    pub c_at_rho: Float,
}

/// One reported constant with its provenance.
#[derive(Clone, Debug)]
pub struct ConstantEntry {
    pub name: &'static str,
    pub value: Float,
    pub published: Option<&'static str>,
    pub formula: &'static str,
}

/// Serialized form of [`ConstantEntry`].
#[derive(Clone, Debug, Serialize)]
pub struct ConstantRecord {
    pub name: String,
    pub value: String,
    pub paper_value: Option<String>,
    pub agrees_to_digits: Option<u32>,
    pub agrees: Option<bool>,
    pub formula: String,
}

impl ConstantEntry {
    /// Relative error against the published value.
    pub fn relative_error(&self) -> Option<f64> {
        let p = parse(self.published?, self.value.prec());
        let err = Float::with_val(self.value.prec(), &self.value - &p) / &p;
        Some(err.abs().to_f64())
    }

    pub fn absolute_error(&self) -> Option<f64> {
        let p = parse(self.published?, self.value.prec());
        Some(Float::with_val(self.value.prec(), &self.value - &p).abs().to_f64())
    }

    /// Agreement within `1e-8` relative, or within one unit of the last
    /// printed digit (published values are sometimes truncated).
    pub fn agrees(&self) -> Option<bool> {
        let unit = last_digit_unit(self.published?);
        Some(self.relative_error()? <= 1e-8 || self.absolute_error()? <= unit)
    }

    pub fn agrees_to_digits(&self) -> Option<u32> {
        let published = self.published?;
        let sig = significant_digits(published) as u32;
        let rel = self.relative_error()?;
        if rel == 0.0 {
            return Some(sig);
        }
        Some(((-rel.log10()).floor().max(0.0) as u32).min(sig))
    }

    pub fn record(&self, digits: usize) -> ConstantRecord {
        ConstantRecord {
            name: self.name.to_string(),
            value: decimal(&self.value, digits),
            paper_value: self.published.map(str::to_string),
            agrees_to_digits: self.agrees_to_digits(),
            agrees: self.agrees(),
            formula: self.formula.to_string(),
        }
    }
}

fn parse(s: &str, prec: u32) -> Float {
    Float::with_val(prec, Float::parse(s).expect("published constants are valid decimals"))
}

/// Size of one unit in the last printed digit of a decimal literal.
pub fn last_digit_unit(s: &str) -> f64 {
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().unwrap_or(0)),
        None => (s, 0),
    };
    let decimals = mant.split_once('.').map_or(0, |(_, f)| f.len()) as i32;
    10f64.powi(exp - decimals)
}

fn significant_digits(s: &str) -> usize {
    let mant = s.split(['e', 'E']).next().unwrap_or(s);
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    digits.trim_start_matches('0').len()
}

impl ConstantsBundle {
    pub fn compute(prec: u32) -> Result<Self> {
        let one = Float::with_val(prec, 1);
        let t0 = solve_t_of_y(&one)?;
        let tp = TPoint::new(t0.clone())?;
        let sc = SingularCoefficients::from_tpoint(&tp);
        let jet = tpoint_of_y(&HpDual::variable(one.clone()))?;
        let (rv, r1, r2) = (&jet.rho.v, &jet.rho.d1, &jet.rho.d2);

        let l1 = Float::with_val(prec, r1 / rv);
        let l2 = Float::with_val(prec, r2 / rv);
        let kappa = -l1.clone();
        let lambda = -l2 - &l1 + Float::with_val(prec, l1.square_ref());

        let rho = tp.rho.clone();
        let r = tp.xi.clone();
        let c = Float::with_val(prec, &sc.c5 / gamma_minus_five_halves(prec));
        let g = Float::with_val(prec, sc.c0.clone().exp() * &c);
        let zeta = Float::with_val(prec, &r / &rho).ln();
        let b_at_rho = eval_b_num(&rho, &one)?;
        let c_at_rho = eval_c_num(&rho, &one)?;

        let tau_root = solve_rho_equals(
            &one,
            Float::with_val(prec, 0.02),
            Float::with_val(prec, 0.9),
        )?;
        let tau = Float::with_val(prec, tau_root.recip_ref());
        let log2_tau = Float::with_val(prec, tau.log2_ref());

        let bundle = ConstantsBundle {
            prec,
            gamma: Float::with_val(prec, rho.recip_ref()),
            b0: tp.b0.clone(),
            b2: tp.b2.clone(),
            b4: tp.b4.clone(),
            b5: tp.b5.clone(),
            f0: sc.f0,
            f2: sc.f2,
            f3: sc.f3,
            nu: sc.c0.clone(),
            exp_neg_nu: Float::with_val(prec, -&sc.c0).exp(),
            c0: sc.c0,
            c2: sc.c2,
            c4: sc.c4,
            c5: sc.c5,
            g,
            c,
            kappa,
            lambda,
            zeta,
            tau_root,
            tau,
            log2_tau,
            b_at_rho,
            c_at_rho,
            t0,
            r,
            rho,
        };
        bundle.check_identities()?;
        Ok(bundle)
    }

    /// Relative tolerance for identities that hold exactly in the algebra
    /// but pass through a few hundred rounded operations here.
    pub fn identity_tolerance(&self) -> Float {
        Float::with_val(self.prec, 1) >> (self.prec as i32 - 16)
    }

    /// Every identity tying the constants together, as
    /// `(name, left, right)`.
    pub fn identities(&self) -> Vec<(&'static str, Float, Float)> {
        let p = self.prec;
        let f = |v: Float| v;
        vec![
            ("gamma*rho = 1", Float::with_val(p, &self.gamma * &self.rho), Float::with_val(p, 1)),
            (
                "C0 = R + B0 + B2",
                f(self.c0.clone()),
                Float::with_val(p, &self.r + &self.b0) + &self.b2,
            ),
            (
                "C0 = R log rho - R log R + R + B0",
                f(self.c0.clone()),
                Float::with_val(p, &self.r * Float::with_val(p, self.rho.ln_ref()))
                    - Float::with_val(p, &self.r * Float::with_val(p, self.r.ln_ref()))
                    + &self.r
                    + &self.b0,
            ),
            (
                "rho = R exp(B2/R)",
                f(self.rho.clone()),
                Float::with_val(p, &self.b2 / &self.r).exp() * &self.r,
            ),
            ("zeta = -B2/R", f(self.zeta.clone()), -Float::with_val(p, &self.b2 / &self.r)),
            ("nu = C0", f(self.nu.clone()), f(self.c0.clone())),
        ]
    }

    pub fn check_identities(&self) -> Result<()> {
        let tol = self.identity_tolerance();
        for (name, a, b) in self.identities() {
            let scale = Float::with_val(self.prec, b.abs_ref()).max(&Float::with_val(self.prec, 1e-30));
            let rel = Float::with_val(self.prec, &a - &b).abs() / scale;
            if rel > tol {
                return Err(Error::ConstantsInconsistent(format!(
                    "{name}: {} vs {}",
                    decimal(&a, 30),
                    decimal(&b, 30)
                )));
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> Vec<ConstantEntry> {
        let e = |name, value: &Float, published, formula| ConstantEntry {
            name,
            value: value.clone(),
            published,
            formula,
        };
        let one_plus_nu = Float::with_val(self.prec, &self.nu + 1u32);
        vec![
            e("t0", &self.t0, Some("0.6263716633"), "unique t in (0,1) with Y(t) = 1"),
            e("R", &self.r, Some("0.0381910976"), "xi(t0) = (1+3t)(1-t)^3/(16t^3)"),
            e("rho", &self.rho, None, "q(t0) = sqrt(1+3t)(1-t)^3 exp(A)/(16t^3)"),
            e("gamma", &self.gamma, Some("27.2268777685"), "1/rho"),
            e("B0", &self.b0, Some("0.7396995711e-3"), "B0(t0)"),
            e("B2", &self.b2, Some("-0.1491431215e-2"), "B2(t0)"),
            e("B4", &self.b4, Some("0.7671782851e-3"), "B4(t0)"),
            e("B5", &self.b5, Some("-0.3501857790e-5"), "B5(t0)"),
            e("F0", &self.f0, None, "R"),
            e("F2", &self.f2, None, "R^2/(2B4 - R)"),
            e("F3", &self.f3, None, "-(5/2) B5 (1 - 2B4/R)^(-5/2)"),
            e("C0", &self.c0, None, "R + B0 + B2"),
            e("C2", &self.c2, None, "-F0"),
            e("C4", &self.c4, None, "-(F0 + F2)/2"),
            e("C5", &self.c5, None, "-(2/5) F3"),
            e("c", &self.c, Some("0.4104361100e-5"), "C5/Gamma(-5/2), Gamma(-5/2) = -8 sqrt(pi)/15"),
            e("g", &self.g, Some("0.4260938569e-5"), "exp(C0) c"),
            e("kappa", &self.kappa, Some("2.2132652385"), "-rho'(1)/rho(1)"),
            e(
                "lambda",
                &self.lambda,
                Some("0.4303471697"),
                "-rho''(1)/rho(1) - rho'(1)/rho(1) + (rho'(1)/rho(1))^2",
            ),
            e("zeta", &self.zeta, Some("0.0390518027"), "log(R/rho)"),
            e("nu", &self.nu, Some("0.0374393660"), "C0"),
            e("exp_neg_nu", &self.exp_neg_nu, Some("0.9632528217"), "exp(-nu)"),
            e("one_plus_nu", &one_plus_nu, Some("1.0374393660"), "1 + nu"),
            e("B_at_rho", &self.b_at_rho, Some("0.0006837025"), "B(rho, 1) from the closed form in x, y, D, W"),
            e("tau_root", &self.tau_root, None, "y with rho(y) = 1"),
            e("tau", &self.tau, Some("6.03"), "1/tau_root"),
            e("log2_tau", &self.log2_tau, Some("2.59"), "log2(tau)"),
        ]
    }

    pub fn entry(&self, name: &str) -> Option<ConstantEntry> {
        self.entries().into_iter().find(|e| e.name == name)
    }

    /// Names whose `digits`-digit renderings differ between two bundles.
    pub fn unstable_digits(&self, other: &ConstantsBundle, digits: usize) -> Vec<&'static str> {
        self.entries()
            .iter()
            .zip(other.entries())
            .filter(|(a, b)| decimal(&a.value, digits) != decimal(&b.value, digits))
            .map(|(a, _)| a.name)
            .collect()
    }

    pub fn to_json(&self, digits: usize) -> serde_json::Value {
        let records: Vec<ConstantRecord> = self.entries().iter().map(|e| e.record(digits)).collect();
        serde_json::json!({
            "precision_bits": self.prec.to_string(),
            "digits": digits.to_string(),
            "constants": records,
        })
    }
}
