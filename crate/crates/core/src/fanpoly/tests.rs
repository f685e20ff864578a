use std::f64::consts::PI;

use proptest::prelude::*;

use super::*;
use crate::fangeom::{solve_radius, DataKind, FanSpec, DEFAULT_TOL};
use crate::irreducibility::Verdict;
use crate::poly::{convert_coeffs, is_poly_square, parse_poly_in, quadratic_discriminant};

fn s(t: &str) -> Scalar {
    t.parse().unwrap()
}

fn xy(t: &str) -> MultiPoly<Scalar> {
    parse_poly_in(t, &[Var::X, Var::Y]).unwrap()
}

/// T_k by the three-term recurrence.
fn chebyshev(k: u32) -> UniPoly<Rational> {
    let u = UniPoly::identity(Var::U);
    let two_u = u.scale(&Rational::from_integer(2));
    let (mut a, mut b) = (UniPoly::constant(Var::U, Rational::one()), u);
    if k == 0 {
        return a;
    }
    for _ in 1..k {
        let next = &(&two_u * &b) - &a;
        a = std::mem::replace(&mut b, next);
    }
    b
}

#[test]
fn small_multiple_angle_polys() {
    assert_eq!(cos_multiple_angle(1).unwrap().to_string(), "u");
    assert_eq!(cos_multiple_angle(2).unwrap().to_string(), "2*u^2 - 1");
    assert_eq!(cos_multiple_angle(3).unwrap().to_string(), "4*u^3 - 3*u");
    assert_eq!(cos_multiple_angle(0), Err(FanError::ZeroK));
}

#[test]
fn multiple_angle_matches_recurrence() {
    for k in 1..=20 {
        let g = cos_multiple_angle(k).unwrap();
        assert_eq!(g, chebyshev(k), "k = {k}");
        assert_eq!(g.degree(), Some(k as usize));
        assert_eq!(g.leading_coeff(), Rational::from_integer(1i64 << (k - 1)));
    }
}

#[test]
fn even_family_example() {
    let fam = build_even_poly(3, &AngleParam::Exact(s("1/2"))).unwrap();
    let expected = xy("x^2*y^2 - x*(4*x^3 - 3*x)*y + (4*x^3 - 3*x)^2 - 3/4");
    assert_eq!(fam.poly, expected);
    assert_eq!(fam.poly.degree_in(Var::X), 6);
    assert_eq!(fam.poly.degree_in(Var::Y), 2);
    assert_eq!(fam.parity, Parity::EvenCase);
}

#[test]
fn odd_family_example() {
    let fam = build_odd_poly(3, &AngleParam::Exact(s("1/2"))).unwrap();
    let ys = fam.poly.coefficients_in(Var::Y);
    let free = ys[0].with_vars(&[Var::X, Var::Y]).unwrap();
    assert_eq!(free, xy("(1/2 + 4*x^3 - 3*x)^2"));
    assert_eq!(ys[2].with_vars(&[Var::X, Var::Y]).unwrap(), xy("4*x^4"));
    assert_eq!(fam.poly.degree_in(Var::X), 6);
    // G_k(0) = 0 for odd k, so the y-free part has constant term p²
    assert_eq!(fam.poly.constant_term(), s("1/4"));
}

#[test]
fn family_guards() {
    let half = AngleParam::Exact(s("1/2"));
    assert_eq!(build_even_poly(4, &half), Err(FanError::Parity(4)));
    assert_eq!(build_odd_poly(1, &half), Err(FanError::Parity(1)));
    assert_eq!(build_even_poly(3, &AngleParam::Exact(s("0"))), Err(FanError::StraightAngle));
    assert!(matches!(build_odd_poly(3, &AngleParam::Exact(s("1"))), Err(FanError::AngleRange(_))));
    assert!(matches!(build_even_poly(3, &AngleParam::Exact(s("-3/2"))), Err(FanError::AngleRange(_))));
}

#[test]
fn symbolic_family_keeps_w() {
    let fam = build_even_poly(3, &AngleParam::Symbolic).unwrap();
    assert_eq!(fam.poly.vars(), &[Var::X, Var::Y, Var::W]);
    assert_eq!(fam.poly.degree_in(Var::W), 2);
    let at = fam.poly.specialize(&[(Var::W, s("1/2"))]).unwrap().compact();
    let exact = build_even_poly(3, &AngleParam::Exact(s("1/2"))).unwrap().poly;
    assert_eq!(at.with_vars(&[Var::X, Var::Y]).unwrap(), exact);
}

#[test]
fn quadratic_irrational_angle() {
    // p = cos(π/5) = (1 + √5)/4
    let p = s("1/4 + 1/4*sqrt(5)");
    let fam = build_even_poly(5, &AngleParam::Exact(p)).unwrap();
    assert_eq!(fam.poly.degree_in(Var::X), 10);
}

fn discriminant_forms(k: u32, p: &Scalar) -> (MultiPoly<Scalar>, MultiPoly<Scalar>) {
    let g = cos_multiple_angle(k).unwrap().with_var(Var::X).to_scalar().to_multi();
    let x = MultiPoly::var(Var::X);
    let p2m1 = MultiPoly::constant(p.square().minus(&Scalar::one()), &[]);
    let g2m1 = &g.pow(2) - &MultiPoly::one(&[]);
    let even = &(&(&MultiPoly::constant(Scalar::int(4), &[]) * &p2m1) * &x.pow(2)) * &g2m1;
    let odd = &(&(&MultiPoly::constant(Scalar::int(16), &[]) * &x.pow(4)) * &p2m1) * &g2m1;
    (even, odd)
}

#[test]
fn discriminants_have_factored_form() {
    for k in [3, 5, 7] {
        for p in ["1/2", "-1/3", "2/7"] {
            let p = s(p);
            let (even, odd) = discriminant_forms(k, &p);
            let e = build_even_poly(k, &AngleParam::Exact(p.clone())).unwrap();
            let o = build_odd_poly(k, &AngleParam::Exact(p.clone())).unwrap();
            let de = quadratic_discriminant(&e.poly, Var::Y).unwrap();
            let do_ = quadratic_discriminant(&o.poly, Var::Y).unwrap();
            assert_eq!(de.with_vars(&[Var::X]).unwrap(), even.with_vars(&[Var::X]).unwrap());
            assert_eq!(do_.with_vars(&[Var::X]).unwrap(), odd.with_vars(&[Var::X]).unwrap());
            assert!(is_poly_square(&de.to_univariate(Var::X).unwrap()).is_none());
        }
    }
    // k = 3, p = 1/2: −3x²(16x⁶ − 24x⁴ + 9x² − 1)
    let e = build_even_poly(3, &AngleParam::Exact(s("1/2"))).unwrap();
    let d = quadratic_discriminant(&e.poly, Var::Y).unwrap();
    let expected = parse_poly_in("-3*x^2*(16*x^6 - 24*x^4 + 9*x^2 - 1)", &[Var::X]).unwrap();
    assert_eq!(d.with_vars(&[Var::X]).unwrap(), expected);
}

#[test]
fn family_polys_are_primitive_in_y() {
    for k in [3, 5, 9] {
        let e = build_even_poly(k, &AngleParam::Exact(s("1/3"))).unwrap();
        let o = build_odd_poly(k, &AngleParam::Exact(s("1/3"))).unwrap();
        for fam in [e, o] {
            let q: MultiPoly<Rational> = convert_coeffs(&fam.poly).unwrap();
            assert!(crate::poly::is_primitive_in(&q, Var::Y).unwrap());
        }
    }
}

#[test]
fn two_fan_closed_forms() {
    assert_eq!(two_fan_u_squared(&s("0"), &s("1")).unwrap(), s("1/2"));
    assert_eq!(two_fan_u_squared(&s("1/2"), &s("2")).unwrap(), s("1/4"));
    assert!(matches!(two_fan_u_squared(&s("1"), &s("1")), Err(FanError::AngleRange(_))));
    assert!(matches!(two_fan_u_squared(&s("1/2"), &s("0")), Err(FanError::NonPositive(_))));
    assert_eq!(side_length_two_fan(&s("0"), &s("1")).unwrap(), s("1/2"));
    assert_eq!(side_length_two_fan(&s("1/2"), &s("1")).unwrap(), s("1/4"));
    assert!(matches!(side_length_two_fan(&s("-1"), &s("1")), Err(FanError::AngleRange(_))));
}

#[test]
fn side_length_two_fan_solves_linear_equation() {
    // (a² + 2pa + 1)·x + p² − 1 at p = 1/2, a = 1
    let x = side_length_two_fan(&s("1/2"), &s("1")).unwrap();
    assert!(s("3").times(&x).plus(&s("1/4")).minus(&s("1")).is_zero());
}

/// h rebuilt from E = cos²α cos²β + sin²α sin²β − cos²δ cos²γ − sin²δ sin²γ,
/// X = cos²α cos²β sin²α sin²β, Y = cos²δ cos²γ sin²δ sin²γ as
/// (E² − 4X − 4Y)² − 64XY, using only squared cosines.
fn h_oracle() -> MultiPoly<Rational> {
    let vars = [Var::Y, Var::Z, Var::W, Var::X];
    let v = |x: Var| MultiPoly::<Rational>::var(x).with_vars(&vars).unwrap();
    let k = |n: i64| MultiPoly::constant(Rational::from_integer(n), &vars);
    let (y, z, w, x) = (v(Var::Y), v(Var::Z), v(Var::W), v(Var::X));
    let ca2 = &y.pow(2) * &x;
    let cb2 = &z.pow(2) * &x;
    let cg2 = x.clone();
    let cd2 = w.pow(2);
    let sa2 = &k(1) - &ca2;
    let sb2 = &k(1) - &cb2;
    let sg2 = &k(1) - &cg2;
    let sd2 = &k(1) - &cd2;
    let e = &(&(&ca2 * &cb2) + &(&sa2 * &sb2)) - &(&(&cd2 * &cg2) + &(&sd2 * &sg2));
    let xx = &(&ca2 * &cb2) * &(&sa2 * &sb2);
    let yy = &(&cd2 * &cg2) * &(&sd2 * &sg2);
    let inner = &(&e.pow(2) - &(&k(4) * &xx)) - &(&k(4) * &yy);
    &inner.pow(2) - &(&(&k(64) * &xx) * &yy)
}

#[test]
fn sextic_matches_closed_form_oracle() {
    let h = eliminate_three_fan();
    assert_eq!(h, &h_oracle().with_vars(h.vars()).unwrap());
}

#[test]
fn sextic_golden_specialization() {
    let h = eliminate_three_fan();
    let r = |n: i64| Rational::from_integer(n);
    let at = h.specialize(&[(Var::Y, r(2)), (Var::Z, r(3)), (Var::W, r(2))]).unwrap().compact();
    assert_eq!(
        at.to_univariate(Var::X).unwrap().to_string(),
        "20736*x^6 - 225792*x^5 + 453376*x^4 - 180224*x^3 + 37632*x^2 - 3584*x + 256"
    );
}

fn cert(kind: DataKind, p: &str, vals: &[&str]) -> Certificate {
    let spec = FanSpec::new(kind, s(p), vals.iter().map(|v| s(v)).collect()).unwrap();
    certify_nonconstructible(&spec).unwrap()
}

#[test]
fn nonagon_certificate() {
    let c = cert(DataKind::CentralDistances, "1/2", &["1", "1", "1"]);
    assert_eq!(c.verdict, CertificateVerdict::Nonconstructible);
    assert_eq!(c.witness_poly.as_deref(), Some("8*x^3 - 6*x - 1"));
    assert_eq!(c.degree, Some(3));
    assert_eq!(c.evidence.as_ref().unwrap().verdict, Verdict::Irreducible);
    assert!(c.revalidate().unwrap());
    // δ = 4π/3
    let c = cert(DataKind::CentralDistances, "-1/2", &["1", "1", "1"]);
    assert_eq!(c.witness_poly.as_deref(), Some("8*x^3 - 6*x + 1"));
    assert_eq!(c.verdict, CertificateVerdict::Nonconstructible);
}

#[test]
fn scaled_equal_distances() {
    let c = cert(DataKind::CentralDistances, "1/2", &["5/3", "5/3", "5/3"]);
    assert_eq!(c.witness_poly.as_deref(), Some("8*x^3 - 6*x - 1"));
    assert!(c.root_description.contains("5/3"));
}

#[test]
fn power_of_two_degree_is_undecided() {
    // square: G₄(x) = p with p = −1 (full turn) gives x = cos(π/4)
    let c = cert(DataKind::CentralDistances, "-1", &["1", "1", "1", "1"]);
    assert_eq!(c.verdict, CertificateVerdict::Undecided);
    assert_eq!(c.degree, Some(2));
}

#[test]
fn two_and_one_fans_are_constructible() {
    for (p, vals) in [("1/2", vec!["1", "2"]), ("0", vec!["1", "1"]), ("-1/3", vec!["2", "3"])] {
        let c = cert(DataKind::CentralDistances, p, &vals);
        assert_eq!(c.verdict, CertificateVerdict::ConstructibleWithConstruction, "{p} {vals:?}");
        assert_eq!(c.degree, Some(1));
        assert!(c.revalidate().unwrap());
    }
    let c = cert(DataKind::CentralDistances, "1/2", &["1"]);
    assert_eq!(c.verdict, CertificateVerdict::ConstructibleWithConstruction);
    assert_eq!(c.witness_poly.as_deref(), Some("2*x - 1"));
    let c = cert(DataKind::SideLengths, "1/2", &["1", "1"]);
    assert_eq!(c.verdict, CertificateVerdict::ConstructibleWithConstruction);
    assert_eq!(c.witness_poly.as_deref(), Some("4*x - 1"));
    assert!(c.u_convention.contains("2r"));
    let c = cert(DataKind::SideLengths, "0", &["1"]);
    assert_eq!(c.witness_poly.as_deref(), Some("x - 1"));
}

#[test]
fn three_fan_with_half_angle_parameter() {
    let c = cert(DataKind::CentralDistances, "1/2", &["1", "21/20", "11/10"]);
    assert_eq!(c.pattern, Pattern::ThreeFan);
    assert_eq!(c.verdict, CertificateVerdict::Nonconstructible, "{:?}", c.notes);
    let fam = c.family_evidence.as_ref().unwrap();
    assert_eq!(fam.verdict, Verdict::Irreducible);
    assert!(fam.field.starts_with("Q["));
    assert!(fam.revalidate().unwrap());
    assert!(c.revalidate().unwrap());
}

#[test]
fn even_and_odd_family_certificates() {
    let c = cert(DataKind::CentralDistances, "1/2", &["1", "1", "1", "21/20"]);
    assert_eq!(c.pattern, Pattern::EvenFamily { k: 3 });
    assert_eq!(c.family_evidence.as_ref().unwrap().verdict, Verdict::Irreducible);
    assert_ne!(c.verdict, CertificateVerdict::ConstructibleWithConstruction);
    assert!(c.revalidate().unwrap());
    let c = cert(DataKind::CentralDistances, "1/2", &["1", "1", "21/20", "1", "21/20"]);
    assert_eq!(c.pattern, Pattern::OddFamily { k: 3 });
    assert_eq!(c.family_evidence.as_ref().unwrap().verdict, Verdict::Irreducible);
    assert!(c.revalidate().unwrap());
}

#[test]
fn unsupported_and_numeric_inputs_are_undecided() {
    let c = cert(DataKind::SideLengths, "-1", &["1", "1", "1"]);
    assert_eq!(c.verdict, CertificateVerdict::Undecided);
    assert_eq!(c.pattern, Pattern::Unsupported);
    let c = cert(DataKind::CentralDistances, "-1", &["1", "1", "11/10", "11/10"]);
    assert_eq!(c.pattern, Pattern::Unsupported);
    assert_eq!(c.verdict, CertificateVerdict::Undecided);
    let spec = FanSpec::numeric(DataKind::CentralDistances, 2.0 * PI / 3.0, &[1.0, 1.0, 1.0]).unwrap();
    assert_eq!(certify_nonconstructible(&spec).unwrap().verdict, CertificateVerdict::Undecided);
}

#[test]
fn nonexistent_fan_is_an_error() {
    let spec = FanSpec::new(DataKind::CentralDistances, s("1/2"), vec![s("1"), s("3"), s("1")]).unwrap();
    assert!(matches!(certify_nonconstructible(&spec), Err(FanError::Geom(_))));
}

#[test]
fn certificate_json_round_trip() {
    let c = cert(DataKind::CentralDistances, "1/2", &["1", "1", "1"]);
    let json = serde_json::to_string(&c).unwrap();
    for key in ["\"fan\"", "\"witness_poly\"", "\"degree\"", "\"evidence\"", "\"verdict\":\"nonconstructible\""] {
        assert!(json.contains(key), "{key}");
    }
    let back: Certificate = serde_json::from_str(&json).unwrap();
    assert_eq!(back, c);
}

fn rational_p() -> impl Strategy<Value = Rational> {
    (1i64..20, 2i64..21, any::<bool>())
        .prop_filter("inside (0,1)", |(a, b, _)| a < b)
        .prop_map(|(a, b, neg)| Rational::new(if neg { -a } else { a }, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn even_family_vanishes_on_fans(k in prop::sample::select(vec![3u32, 5, 7, 9]), p in rational_p(), alpha_frac in 0.05f64..0.95) {
        // k equal half-angles α and one β with kα + β = δ/2
        let pf = p.to_f64();
        let half = pf.acos();
        let alpha = alpha_frac * half / k as f64;
        let beta = half - k as f64 * alpha;
        let x = alpha.cos();
        let c = beta.cos() / x;
        let fam = build_even_poly(k, &AngleParam::Exact(Scalar::from(p))).unwrap();
        let v = fam.poly.eval_f64(&[(Var::X, x), (Var::Y, c)]).unwrap();
        prop_assert!(v.abs() < 1e-9, "{v}");
    }

    #[test]
    fn odd_family_vanishes_on_fans(k in prop::sample::select(vec![3u32, 5, 7, 9]), p in rational_p(), alpha_frac in 0.05f64..0.95) {
        let pf = p.to_f64();
        let half = pf.acos();
        let alpha = alpha_frac * half / k as f64;
        let beta = (half - k as f64 * alpha) / 2.0;
        let x = alpha.cos();
        let c = beta.cos() / x;
        let fam = build_odd_poly(k, &AngleParam::Exact(Scalar::from(p))).unwrap();
        let v = fam.poly.eval_f64(&[(Var::X, x), (Var::Y, c * c)]).unwrap();
        prop_assert!(v.abs() < 1e-9, "{v}");
    }

    #[test]
    fn sextic_vanishes_on_three_fans(p in rational_p(), a in 0.05f64..0.9, b in 0.05f64..0.9) {
        let half = p.to_f64().acos();
        let (alpha, beta) = (a * half / 2.0, b * half / 2.0);
        let gamma = half - alpha - beta;
        prop_assume!(gamma > 0.0 && gamma < PI / 2.0);
        // scale so the third distance is 1
        let u = gamma.cos();
        let (y, z) = (alpha.cos() / u, beta.cos() / u);
        let v = eliminate_three_fan()
            .eval_f64(&[(Var::Y, y), (Var::Z, z), (Var::W, p.to_f64()), (Var::X, u * u)])
            .unwrap();
        prop_assert!(v.abs() < 1e-9, "{v}");
    }

    #[test]
    fn two_fan_value_is_positive(p in rational_p(), c in 1i64..50, d in 1i64..50) {
        let c = Scalar::from(Rational::new(c, d).unwrap());
        let u2 = two_fan_u_squared(&Scalar::from(p), &c).unwrap();
        prop_assert!(u2.signum() > 0);
    }

    #[test]
    fn solved_three_fans_have_small_family_residual(p in rational_p(), a in 0.2f64..0.45, b in 0.2f64..0.45) {
        let half = p.to_f64().acos();
        let (alpha, beta) = (a * half, b * half);
        let gamma = half - alpha - beta;
        let r = 1.0 / gamma.cos();
        let d = [alpha.cos() * r, beta.cos() * r, 1.0];
        let spec = FanSpec::numeric(DataKind::CentralDistances, 2.0 * half, &d).unwrap();
        let sol = solve_radius(&spec, DEFAULT_TOL).unwrap();
        let res = sol.family_residual.unwrap();
        prop_assert!(res.abs() < 1e-9, "{res}");
    }
}
