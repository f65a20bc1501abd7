//! One test per acceptance criterion. Each prints a single
//! `[PASS]` / `[FAIL]` line to stderr (bypassing output capture) and then
//! asserts, so failures are both visible and counted.

use std::io::Write;
use std::time::{Duration, Instant};

use planarcount::closedform::{
    decimal, rho_central_difference, rho_jet, verify_psi_regular, ConstantsBundle,
};
use planarcount::gfpipe::{extract_counts, Family, GfBundle};
use planarcount::laws::{appearances_law, growth_curve, local_law};
use planarcount::oracle::enumerate_counts;
use rug::Float;

const PREC: u32 = 256;

fn report(id: &str, pass: bool, detail: String) {
    let line = format!(
        "[{}] criterion {id}: {detail}\n",
        if pass { "PASS" } else { "FAIL" }
    );
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    assert!(pass, "{line}");
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn parse(s: &str) -> Float {
    Float::with_val(PREC, Float::parse(s).unwrap())
}

fn rel_err(v: &Float, expect: &str) -> f64 {
    let e = parse(expect);
    (Float::with_val(PREC, v - &e) / e).abs().to_f64()
}

fn abs_err(v: &Float, expect: &str) -> f64 {
    Float::with_val(PREC, v - &parse(expect)).abs().to_f64()
}

struct Check {
    name: &'static str,
    err: f64,
    tol: f64,
}

impl Check {
    fn ok(&self) -> bool {
        self.err <= self.tol
    }
}

fn summarize(checks: &[Check]) -> (bool, String) {
    let pass = checks.iter().all(Check::ok);
    let detail = checks
        .iter()
        .map(|c| format!("{} err {:.1e} (tol {:.0e})", c.name, c.err, c.tol))
        .collect::<Vec<_>>()
        .join(", ");
    (pass, detail)
}

#[test]
fn criterion_01_gamma() {
    let (c, dt) = timed(|| ConstantsBundle::compute(PREC).unwrap());
    let err = rel_err(&c.gamma, "27.2268777685");
    let pass = err <= 1e-9 && dt < Duration::from_secs(5);
    report(
        "1",
        pass,
        format!("gamma = {}, rel err {err:.1e} (tol 1e-9), {dt:.2?} (limit 5s)", decimal(&c.gamma, 14)),
    );
}

#[test]
fn criterion_02_g_and_c() {
    let c = ConstantsBundle::compute(PREC).unwrap();
    let (pass, detail) = summarize(&[
        Check { name: "g", err: rel_err(&c.g, "0.4260938569e-5"), tol: 1e-8 },
        Check { name: "c", err: rel_err(&c.c, "0.4104361100e-5"), tol: 1e-8 },
    ]);
    report("2", pass, format!("relative: {detail}"));
}

#[test]
fn criterion_03_kappa_lambda() {
    let (c, dt) = timed(|| ConstantsBundle::compute(PREC).unwrap());
    let (pass, detail) = summarize(&[
        Check { name: "kappa", err: abs_err(&c.kappa, "2.2132652385"), tol: 1e-8 },
        Check { name: "lambda", err: abs_err(&c.lambda, "0.4303471697"), tol: 1e-8 },
    ]);
    let pass = pass && dt < Duration::from_secs(5);
    report("3", pass, format!("absolute: {detail}, {dt:.2?} (limit 5s)"));
}

#[test]
fn criterion_04_zeta_nu_b_at_rho() {
    let (c, dt) = timed(|| ConstantsBundle::compute(PREC).unwrap());
    let (pass, detail) = summarize(&[
        Check { name: "zeta", err: abs_err(&c.zeta, "0.0390518027"), tol: 1e-8 },
        Check { name: "nu", err: abs_err(&c.nu, "0.0374393660"), tol: 1e-8 },
        Check { name: "exp(-nu)", err: abs_err(&c.exp_neg_nu, "0.9632528217"), tol: 1e-8 },
        Check { name: "B(rho)", err: abs_err(&c.b_at_rho, "0.0006837025"), tol: 1e-8 },
    ]);
    let pass = pass && dt < Duration::from_secs(10);
    report("4", pass, format!("absolute: {detail}, {dt:.2?} (limit 10s)"));
}

#[test]
fn criterion_05_parametric_constants() {
    let c = ConstantsBundle::compute(PREC).unwrap();
    let (pass, detail) = summarize(&[
        Check { name: "t0", err: abs_err(&c.t0, "0.6263716633"), tol: 1e-9 },
        Check { name: "R", err: abs_err(&c.r, "0.0381910976"), tol: 1e-9 },
        Check { name: "B0 rel", err: rel_err(&c.b0, "0.7396995711e-3"), tol: 1e-8 },
        Check { name: "B2 rel", err: rel_err(&c.b2, "-0.1491431215e-2"), tol: 1e-8 },
        Check { name: "B4 rel", err: rel_err(&c.b4, "0.7671782851e-3"), tol: 1e-8 },
        Check { name: "B5 rel", err: rel_err(&c.b5, "-0.3501857790e-5"), tol: 1e-8 },
    ]);
    report("5", pass, detail);
}

#[test]
fn criterion_06_tau() {
    let c = ConstantsBundle::compute(PREC).unwrap();
    let (pass, detail) = summarize(&[
        Check { name: "tau", err: abs_err(&c.tau, "6.03"), tol: 1e-2 },
        Check { name: "log2 tau", err: abs_err(&c.log2_tau, "2.59"), tol: 1e-2 },
    ]);
    report(
        "6",
        pass,
        format!("tau = {}, log2 tau = {}; {detail}", decimal(&c.tau, 8), decimal(&c.log2_tau, 8)),
    );
}

#[test]
fn criterion_07a_curve_left_endpoint() {
    let mu = Float::with_val(PREC, 1) + Float::with_val(PREC, 1e-6);
    let p = local_law(&mu).unwrap();
    let e = Float::with_val(PREC, 1).exp();
    let err = Float::with_val(PREC, &p.growth_ratio() - &e).abs().to_f64();
    report(
        "7a",
        err <= 1e-3,
        format!("exp(lambda(1+1e-6)) = {}, |. - e| = {err:.2e} (tol 1e-3)", decimal(&p.growth_ratio(), 10)),
    );
}

#[test]
fn criterion_07b_curve_right_endpoint() {
    let mu = Float::with_val(PREC, 3) - Float::with_val(PREC, 1e-3);
    let p = local_law(&mu).unwrap();
    let target = Float::with_val(PREC, 256) / 27u32;
    let err = Float::with_val(PREC, &p.growth_ratio() - &target).abs().to_f64();
    report(
        "7b",
        err <= 1e-2,
        format!(
            "exp(lambda(3-1e-3)) = {}, |. - 256/27| = {err:.2e} (tol 1e-2)",
            decimal(&p.growth_ratio(), 10)
        ),
    );
}

#[test]
fn criterion_07c_curve_runtime() {
    let lo = Float::with_val(PREC, 1.05);
    let hi = Float::with_val(PREC, 2.95);
    let (curve, dt) = timed(|| growth_curve(&lo, &hi, 100).unwrap());
    let pass = curve.len() == 100 && dt < Duration::from_secs(30);
    report("7c", pass, format!("{} points in {dt:.2?} (limit 30s)", curve.len()));
}

fn oracle_equivalence(nmax: usize) -> (bool, String) {
    let families = [Family::Planar, Family::Connected, Family::Biconnected];
    let bundle = GfBundle::build(nmax).unwrap();
    let series = extract_counts(&bundle, nmax, &families).unwrap();
    let oracle = enumerate_counts(nmax).unwrap();
    match oracle.first_difference(&series) {
        None => (true, format!("g, c, b and every g_(n,q) equal for n <= {nmax}")),
        Some((fam, n, q)) => (false, format!("first mismatch in {} at n = {n}, q = {q}", fam.letter())),
    }
}

#[test]
fn criterion_08_oracle_to_six() {
    let ((pass, detail), dt) = timed(|| oracle_equivalence(6));
    let pass = pass && dt < Duration::from_secs(60);
    report("8", pass, format!("{detail}, {dt:.2?} (limit 60s)"));
}

#[test]
fn criterion_08_oracle_seven() {
    let ((pass, detail), dt) = timed(|| oracle_equivalence(7));
    let pass = pass && dt < Duration::from_secs(1800);
    report("8 (n = 7)", pass, format!("{detail}, {dt:.2?} (limit 30min)"));
}

#[test]
fn criterion_09_property_suite() {
    let mut failures = Vec::new();
    let mut note = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };
    let bundle = GfBundle::build_with(12, 36).unwrap();
    note("B routes", bundle.b_route_difference().unwrap().is_zero());
    note("dB/dy identity", bundle.b_derivative_residual().unwrap().is_zero());
    note("psi(F(x)) = x", bundle.psi_of_f_minus_x().unwrap().is_zero());

    let c = ConstantsBundle::compute(PREC).unwrap();
    let c0_err = Float::with_val(PREC, &c.c_at_rho - &c.c0).abs().to_f64();
    note("C0 two routes", c0_err <= 1e-10);

    let y = Float::with_val(PREC, 1);
    let j = rho_jet(&y).unwrap();
    let (d1, d2) = rho_central_difference(&y, &Float::with_val(PREC, 1e-8)).unwrap();
    let rel = |a: &Float, b: &Float| (Float::with_val(PREC, a - b) / b).abs().to_f64();
    let (e1, e2) = (rel(&d1, &j.d1), rel(&d2, &j.d2));
    note("dual vs difference", e1 <= 1e-10 && e2 <= 1e-10);

    let grid = verify_psi_regular(10_000, PREC);
    note("2B4 < xi grid", grid.is_ok());

    let doubled = ConstantsBundle::compute(2 * PREC).unwrap();
    let unstable = c.unstable_digits(&doubled, 12);
    note("precision doubling", unstable.is_empty());

    let pass = failures.is_empty();
    let detail = if pass {
        format!(
            "B routes, dB/dy, psi inverse at (12,36); C0 err {c0_err:.1e}; jet rel errs {e1:.1e}/{e2:.1e}; \
             10^4-point grid; 12 digits stable at {} bits",
            2 * PREC
        )
    } else {
        format!("failed: {}", failures.join(", "))
    };
    report("9", pass, detail);
}

#[test]
fn criterion_10_appearances_spot_check() {
    let law = appearances_law(1, PREC).unwrap();
    let mean_err = Float::with_val(PREC, &law.law.mean_coeff - &law.rho).abs().to_f64();
    let var_err = Float::with_val(PREC, &law.law.var_coeff - &law.rho).abs().to_f64();
    let x1 = law.x_of_u(&Float::with_val(PREC, 1)).unwrap();
    let exact = x1 == law.rho;
    let pass = mean_err <= 1e-10 && var_err <= 1e-10 && exact;
    report(
        "10",
        pass,
        format!("mean err {mean_err:.1e}, var err {var_err:.1e} (tol 1e-10), x(1) == rho: {exact}"),
    );
}
