use planarcount::closedform::{edge_density, eval_c_num, ConstantsBundle};
use planarcount::laws::{
    appearances_law, blocks_law, builtin_family_law, components_law, edge_entropy_tau, edges_law,
    growth_curve, local_law, zeta_by_extrapolation, CountKind, FamilyKind, Tail,
};
use planarcount::Error;
use rug::Float;

const P: u32 = 256;

fn f(v: f64) -> Float {
    Float::with_val(P, v)
}

fn rel(a: &Float, b: &Float) -> f64 {
    (Float::with_val(P, a - b) / b).abs().to_f64()
}

#[test]
fn edge_density_is_increasing_in_the_weight() {
    let mut prev = 0.0;
    let mut u = 0.05;
    while u <= 20.0 {
        let (mu, dmu) = edge_density(&f(u)).unwrap();
        let mu = mu.to_f64();
        assert!(mu > prev && dmu.is_sign_positive(), "u = {u}");
        assert!(mu > 1.0 && mu < 3.0);
        prev = mu;
        u *= 1.25;
    }
}

#[test]
fn growth_exponent_is_concave() {
    let curve = growth_curve(&f(1.05), &f(2.95), 40).unwrap();
    assert_eq!(curve.len(), 40);
    let lam: Vec<f64> = curve.iter().map(|p| p.lambda_mu.to_f64()).collect();
    for w in lam.windows(3) {
        assert!(w[0] + w[2] - 2.0 * w[1] < 0.0, "{w:?}");
    }
}

#[test]
fn local_law_at_the_mean_recovers_the_global_constants() {
    let c = ConstantsBundle::compute(P).unwrap();
    let edges = edges_law(P).unwrap();
    let at_kappa = local_law(&edges.mean_coeff).unwrap();
    assert!(Float::with_val(P, &at_kappa.u - 1u32).abs().to_f64() < 1e-40);
    assert!(rel(&at_kappa.growth_ratio(), &c.gamma) < 1e-40);
    let sigma2 = Float::with_val(P, at_kappa.sigma.square_ref());
    assert!(rel(&sigma2, &edges.var_coeff) < 1e-30);
    assert!(rel(&edges.mean_coeff, &c.kappa) < 1e-40);
    assert!(rel(&edges.var_coeff, &c.lambda) < 1e-40);
    assert!(rel(&at_kappa.c5, &c.c5) < 1e-10);
    let g5 = Float::with_val(P, c.c0.exp_ref()) * &c.c5;
    assert!(rel(&at_kappa.g5, &g5) < 1e-10);
}

#[test]
fn local_estimate_grows_like_gamma() {
    let law = local_law(&f(2.0)).unwrap();
    let a = law.log_estimate(1000, CountKind::Planar).unwrap();
    let b = law.log_estimate(1001, CountKind::Planar).unwrap();
    let step = Float::with_val(P, &b - &a).to_f64();
    assert!((step - law.lambda_mu.to_f64()).abs() < 0.02, "{step}");
    let conn = law.log_estimate(1000, CountKind::Connected).unwrap();
    assert!(conn < a);
    assert!(matches!(law.log_estimate(0, CountKind::Planar), Err(Error::Domain(_))));
}

#[test]
fn local_law_rejects_mu_outside_range() {
    for mu in [1.0, 3.0, 0.5, 3.5] {
        assert!(matches!(local_law(&f(mu)), Err(Error::Domain(_))), "{mu}");
    }
}

#[test]
fn components_parameter_equals_c_at_rho() {
    let c = ConstantsBundle::compute(P).unwrap();
    let law = components_law(P).unwrap();
    assert!(law.shifted);
    let direct = eval_c_num(&c.rho, &f(1.0)).unwrap();
    assert!(Float::with_val(P, &law.parameter - &direct).abs().to_f64() < 1e-10);
    let total: f64 = law.table(1e-15).iter().map(|(_, m)| m.to_f64()).sum();
    assert!((total - 1.0).abs() < 1e-14);
    assert_eq!(law.table(1e-3)[0].0, 1);
}

#[test]
fn isolated_vertex_law_has_parameter_rho() {
    let c = ConstantsBundle::compute(P).unwrap();
    let law = builtin_family_law(FamilyKind::SingleVertex, P).unwrap();
    assert!(rel(&law.parameter, &c.rho) < 1e-60);
    let edge = builtin_family_law(FamilyKind::SingleEdge, P).unwrap();
    let expect = Float::with_val(P, c.rho.square_ref()) / 2u32;
    assert!(rel(&edge.parameter, &expect) < 1e-60);
}

#[test]
fn zeta_two_routes() {
    let blocks = blocks_law(P).unwrap();
    let check = zeta_by_extrapolation(P).unwrap();
    let err = Float::with_val(P, &check.extrapolated - &blocks.mean_coeff).abs().to_f64();
    assert!(err < 1e-6, "{err:e}");
    assert_eq!(blocks.mean_coeff, blocks.var_coeff);
}

#[test]
fn appearances_of_a_single_vertex() {
    let law = appearances_law(1, P).unwrap();
    assert_eq!(law.law.mean_coeff, law.rho);
    let z = Float::with_val(P, &law.rho * 2u32);
    let up = law.deviation_bound(&z).unwrap();
    assert_eq!(up.tail, Tail::Upper);
    assert!(up.u > 1 && up.base < 1 && up.base > 0);
    let z = Float::with_val(P, &law.rho / 2u32);
    let down = law.deviation_bound(&z).unwrap();
    assert_eq!(down.tail, Tail::Lower);
    assert!(down.u < 1 && down.base < 1);
    let back = law.z_of_u(&up.u).unwrap();
    assert!(Float::with_val(P, &back - &law.rho * Float::with_val(P, 2)).abs().to_f64() < 1e-30);
    assert!(matches!(appearances_law(0, P), Err(Error::Domain(_))));
}

#[test]
fn entropy_constant() {
    let e = edge_entropy_tau(P).unwrap();
    let tau = e.tau.to_f64();
    assert!((tau - 6.03747).abs() < 1e-4, "{tau}");
    assert!((e.log2_tau.to_f64() - tau.log2()).abs() < 1e-12);
}
