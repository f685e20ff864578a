//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::f64::consts::PI;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use arcfan_core::exactnum::{Coeff, Rational, Scalar};
use arcfan_core::fangeom::{solve_radius, DataKind, FanSpec, GeomError, DEFAULT_TOL};
use arcfan_core::fanpoly::{
    build_even_poly, build_odd_poly, certify_nonconstructible, cos_multiple_angle, eliminate_three_fan, two_fan_u_squared,
    side_length_two_fan, AngleParam, CertificateVerdict,
};
use arcfan_core::irreducibility::{univariate_irreducible_over_q, Verdict};
use arcfan_core::poly::{is_poly_square, is_primitive_in, parse_poly_in, quadratic_discriminant, MultiPoly, UniPoly, Var};
use arcfan_core::sweep::{count_instances, enumerate_a, run_sweep, SweepConfig};

use common::{chebyshev_coeffs, int_poly_text, kronecker_reducible, multiply, random_int_poly, random_p};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed <= budget, format!("took {:.2}s, budget {:.0}s", elapsed.as_secs_f64(), budget.as_secs_f64()))
}

fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den).unwrap()
}

fn golden_sextic() -> Outcome {
    let point = [(Var::Y, rat(2, 1)), (Var::Z, rat(3, 1)), (Var::W, rat(2, 1))];
    let h = eliminate_three_fan().specialize(&point).map_err(|e| e.to_string())?.compact();
    let text = h.to_univariate(Var::X).map_err(|e| e.to_string())?.to_string();
    let want = "20736*x^6 - 225792*x^5 + 453376*x^4 - 180224*x^3 + 37632*x^2 - 3584*x + 256";
    ensure(text == want, format!("got {text}"))?;
    Ok("h(2,3,2,x) byte-exact".into())
}

fn golden_coefficients() -> Outcome {
    let vars = [Var::Y, Var::Z, Var::W, Var::X];
    let h = eliminate_three_fan().map_coeffs(|c| Scalar::from(c.clone()));
    let coeffs = h.coefficients_in(Var::X);
    ensure(coeffs.len() == 7, format!("deg_x h = {}", coeffs.len() as i64 - 1))?;
    let norm = |p: &MultiPoly<Scalar>| p.with_vars(&vars).unwrap();
    let x6 = parse_poly_in("16*y^4*z^4", &vars).unwrap();
    let x5 = parse_poly_in(
        "-16*y^2*z^6*w^2 - 16*y^4*z^4 - 16*y^6*z^2*w^2 - 16*y^4*z^2 - 16*y^2*z^4 \
         - 16*y^2*z^2*w^2 + 8*y^2*z^2 + 8*y^2*z^6 + 8*y^6*z^2",
        &vars,
    )
    .unwrap();
    ensure(norm(&coeffs[6]) == norm(&x6), format!("x^6 coefficient {}", coeffs[6]))?;
    ensure(norm(&coeffs[5]) == norm(&x5), format!("x^5 coefficient {}", coeffs[5]))?;
    Ok("x^6 and x^5 coefficients match symbolically".into())
}

fn count_reproduction() -> Outcome {
    let start = Instant::now();
    let n = count_instances(1000, 100).map_err(|e| e.to_string())?;
    // |A^(1)_k| = k(k−1)/2 and |A^(2)_k| = Σ_{j≤k} (j² − 1), both signs
    let closed = 2 * ((1..=1000u64).map(|j| j - 1).sum::<u64>() + (1..=100u64).map(|j| j * j - 1).sum::<u64>());
    ensure(n as u64 == closed, format!("{n} vs closed form {closed}"))?;
    ensure(n == 1_675_500, format!("{n}"))?;
    let direct = enumerate_a(1000, 1).unwrap().len() + enumerate_a(100, 2).unwrap().len();
    ensure(2 * direct == n, format!("enumerated {direct} per sign"))?;
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{n} instances in {:.2}s", start.elapsed().as_secs_f64()))
}

fn desk_sweep() -> Outcome {
    let mut details = Vec::new();
    let mut first = None;
    for (workers, budget) in [(1usize, 600u64), (4, 180)] {
        let config = SweepConfig { k1: 50, k2: 10, dedupe: true, worker_count: workers, ..SweepConfig::default() };
        let start = Instant::now();
        let r = run_sweep(&config).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(r.failures.is_empty(), format!("{} failures, first {:?}", r.failures.len(), r.failures.first()))?;
        ensure(r.polynomials_tested == 2 * r.distinct_values, "both signs not tested")?;
        ensure(r.irreducible_count == r.polynomials_tested, "not every instance irreducible")?;
        ensure(r.instances.len() == r.polynomials_tested, "instance records missing")?;
        ensure(r.instances.iter().all(|i| i.degree_x == 6), "an instance has deg_x != 6")?;
        ensure(r.instances.iter().all(|i| i.verdict == Verdict::Irreducible), "an instance is not irreducible")?;
        within(elapsed, Duration::from_secs(budget))?;
        details.push(format!("{workers} worker(s) {:.1}s", elapsed.as_secs_f64()));
        match &first {
            None => first = Some(r.instances),
            Some(prev) => ensure(*prev == r.instances, "worker counts disagree")?,
        }
    }
    let n = first.map_or(0, |v| v.len());
    Ok(format!("{n} polynomials irreducible of degree 6; {}", details.join(", ")))
}

fn nonagon() -> Outcome {
    let start = Instant::now();
    let spec = FanSpec::new(DataKind::CentralDistances, Scalar::from(rat(1, 2)), vec![Scalar::int(1); 3]).unwrap();
    let cert = certify_nonconstructible(&spec).map_err(|e| e.to_string())?;
    ensure(cert.witness_poly.as_deref() == Some("8*x^3 - 6*x - 1"), format!("witness {:?}", cert.witness_poly))?;
    ensure(cert.degree == Some(3), format!("degree {:?}", cert.degree))?;
    let ev = cert.evidence.as_ref().ok_or("no evidence")?;
    ensure(ev.verdict == Verdict::Irreducible, "witness not irreducible")?;
    ensure(ev.revalidate().map_err(|e| e.to_string())?, "evidence does not revalidate")?;
    ensure(cert.verdict == CertificateVerdict::Nonconstructible, format!("verdict {:?}", cert.verdict))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("8*x^3 - 6*x - 1 irreducible, degree 3, nonconstructible".into())
}

fn family_degrees() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    for k in [3u32, 5, 7, 9] {
        let g = int_poly_text(&chebyshev_coeffs(k), "x");
        for _ in 0..20 {
            let (num, den) = random_p(&mut rng);
            let p = Scalar::from(rat(num, den));
            let pt = format!("({num}/{den})");
            let even = build_even_poly(k, &AngleParam::Exact(p.clone())).map_err(|e| e.to_string())?.poly;
            let odd = build_odd_poly(k, &AngleParam::Exact(p.clone())).map_err(|e| e.to_string())?.poly;
            let expected = [
                format!("4*({pt}^2 - 1)*x^2*(({g})^2 - 1)"),
                format!("16*x^4*({pt}^2 - 1)*(({g})^2 - 1)"),
            ];
            for (fam, want) in [(&even, &expected[0]), (&odd, &expected[1])] {
                ensure(fam.degree_in(Var::X) == 2 * k, format!("k={k} p={pt}: deg_x {}", fam.degree_in(Var::X)))?;
                ensure(fam.degree_in(Var::Y) == 2, "not quadratic in y")?;
                ensure(is_primitive_in(fam, Var::Y).map_err(|e| e.to_string())?, format!("k={k} p={pt}: not primitive"))?;
                let disc = quadratic_discriminant(fam, Var::Y).map_err(|e| e.to_string())?;
                let want = parse_poly_in(want, &[Var::X]).unwrap();
                ensure(disc.with_vars(&[Var::X]).unwrap() == want, format!("k={k} p={pt}: discriminant {disc}"))?;
                let uni = disc.to_univariate(Var::X).map_err(|e| e.to_string())?;
                ensure(is_poly_square(&uni).is_none(), format!("k={k} p={pt}: discriminant is a square"))?;
                checked += 1;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{checked} family polynomials"))
}

fn chebyshev_oracle() -> Outcome {
    let start = Instant::now();
    for k in 1..=20u32 {
        let g = cos_multiple_angle(k).map_err(|e| e.to_string())?;
        let want = UniPoly::<Rational>::from_integers(Var::U, &chebyshev_coeffs(k));
        ensure(g == want, format!("k={k}: {g}"))?;
        ensure(g.degree() == Some(k as usize), format!("k={k}: degree"))?;
        ensure(g.leading_coeff() == Rational::from_integer(1i64 << (k - 1)), format!("k={k}: leading coefficient"))?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("G_1 through G_20".into())
}

/// Half-angle budget split into `parts` positive shares, each below π/2.
fn random_angles(rng: &mut impl Rng, half: f64, weights: &[f64]) -> Option<Vec<f64>> {
    let shares: Vec<f64> = weights.iter().map(|w| w * rng.gen_range(0.3..1.0)).collect();
    let total: f64 = shares.iter().sum();
    let angles: Vec<f64> = shares.iter().map(|s| s / total * half).collect();
    angles.iter().all(|&a| a > 0.02 && a < PI / 2.0 - 0.02).then_some(angles)
}

fn exact_value(f: f64) -> Scalar {
    Scalar::from(Rational::from_f64(f).unwrap())
}

fn numeric_consistency() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst_residual = 0.0f64;
    let mut worst_value = 0.0f64;
    let mut record = |residual: f64, value: f64, what: &str| -> Result<(), String> {
        ensure(residual <= 1e-12, format!("{what}: residual {residual:e}"))?;
        ensure(value.abs() < 1e-9, format!("{what}: polynomial value {value:e}"))?;
        worst_residual = worst_residual.max(residual);
        worst_value = worst_value.max(value.abs());
        Ok(())
    };
    for family in ["even", "odd", "three", "two"] {
        let mut done = 0;
        while done < 100 {
            let (num, den) = random_p(&mut rng);
            let p = rat(num, den);
            let half = p.to_f64().acos();
            let k = [3usize, 5, 7, 9][rng.gen_range(0..4)];
            let weights: Vec<f64> = match family {
                "even" | "odd" => vec![1.0; k + 1],
                "three" => vec![1.0; 3],
                _ => vec![1.0; 2],
            };
            let Some(angles) = random_angles(&mut rng, half, &weights) else { continue };
            // the last angle carries the remaining budget; equal angles share one value
            let (values, x_of_u): (Vec<f64>, Box<dyn Fn(f64) -> Vec<(Var, f64)>>) = match family {
                "even" => {
                    let alpha = angles[0];
                    let beta = half - k as f64 * alpha;
                    if !(beta > 0.02 && beta < PI / 2.0 - 0.02) {
                        continue;
                    }
                    let c = beta.cos() / alpha.cos();
                    let c = exact_value(c).to_f64();
                    ([vec![1.0; k], vec![c]].concat(), Box::new(move |u| vec![(Var::X, u), (Var::Y, c)]))
                }
                "odd" => {
                    let alpha = angles[0];
                    let beta = (half - k as f64 * alpha) / 2.0;
                    if !(beta > 0.02 && beta < PI / 2.0 - 0.02) {
                        continue;
                    }
                    let c = beta.cos() / alpha.cos();
                    ([vec![1.0; k], vec![c, c]].concat(), Box::new(move |u| vec![(Var::X, u), (Var::Y, c * c)]))
                }
                "three" => {
                    let g = angles[2].cos();
                    let (y, z) = (angles[0].cos() / g, angles[1].cos() / g);
                    (vec![y, z, 1.0], Box::new(move |u| vec![(Var::Y, y), (Var::Z, z), (Var::X, u * u)]))
                }
                _ => {
                    let c = angles[1].cos() / angles[0].cos();
                    (vec![1.0, c], Box::new(move |u| vec![(Var::X, u), (Var::Y, c)]))
                }
            };
            let spec = FanSpec::new(DataKind::CentralDistances, Scalar::from(p.clone()), values.iter().map(|&v| exact_value(v)).collect())
                .map_err(|e| e.to_string())?;
            let sol = solve_radius(&spec, DEFAULT_TOL).map_err(|e| format!("{family} p={num}/{den}: {e}"))?;
            let ps = Scalar::from(p.clone());
            let exact: MultiPoly<Scalar> = match family {
                "even" => build_even_poly(k as u32, &AngleParam::Exact(ps)).unwrap().poly,
                "odd" => build_odd_poly(k as u32, &AngleParam::Exact(ps)).unwrap().poly,
                "three" => eliminate_three_fan()
                    .specialize(&[(Var::W, p.clone())])
                    .unwrap()
                    .map_coeffs(|c| Scalar::from(c.clone())),
                _ => parse_poly_in(&format!("(y^2 - 2*({num}/{den})*y + 1)*x^2 + ({num}/{den})^2 - 1"), &[Var::X, Var::Y]).unwrap(),
            };
            let value = exact.eval_f64(&x_of_u(sol.u)).map_err(|e| e.to_string())?;
            record(sol.residual.abs(), value, &format!("{family} p={num}/{den}"))?;
            done += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("400 fans; worst residual {worst_residual:.1e}, worst polynomial value {worst_value:.1e}"))
}

fn two_fan_constructions() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < 100 {
        let (num, den) = random_p(&mut rng);
        let p = Scalar::from(rat(num, den));
        let c = Scalar::from(rat(rng.gen_range(1..=80), rng.gen_range(1..=40)));
        // each half-angle lies in (0, π/2): distances (1, c) need δ/2 above
        // arccos(min/max), side lengths (1, c) need it below π/2 + arcsin(min/max)
        let (ratio, half) = (c.to_f64().min(1.0 / c.to_f64()), (num as f64 / den as f64).acos());
        if half <= ratio.acos() || half > ratio.asin() + PI / 2.0 {
            continue;
        }
        done += 1;

        let u2 = two_fan_u_squared(&p, &c).map_err(|e| e.to_string())?.to_f64();
        let spec = FanSpec::new(DataKind::CentralDistances, p.clone(), vec![Scalar::int(1), c.clone()]).unwrap();
        let sol = solve_radius(&spec, DEFAULT_TOL).map_err(|e| format!("2-fan p={p} c={c}: {e}"))?;
        let err = (sol.u * sol.u - u2).abs();
        ensure(err <= 1e-9, format!("2-fan p={p} c={c}: {err:e}"))?;
        worst = worst.max(err);

        let x = side_length_two_fan(&p, &c).map_err(|e| e.to_string())?.to_f64();
        let spec = FanSpec::new(DataKind::SideLengths, p.clone(), vec![Scalar::int(1), c.clone()]).unwrap();
        let sol = solve_radius(&spec, DEFAULT_TOL).map_err(|e| format!("side lengths p={p} a2={c}: {e}"))?;
        let err = (sol.u * sol.u - x).abs();
        ensure(err <= 1e-9, format!("side lengths p={p} a2={c}: {err:e}"))?;
        worst = worst.max(err);
    }
    let full = Scalar::int(-1);
    for n in 1..=2 {
        let values = vec![Scalar::int(1); n];
        let built = FanSpec::new(DataKind::CentralDistances, full.clone(), values.clone());
        ensure(built == Err(GeomError::Degenerate(n)), format!("n={n}: {built:?}"))?;
        let forged = FanSpec { n, p: Some(full.clone()), delta: 2.0 * PI, kind: DataKind::CentralDistances, values };
        let solved = solve_radius(&forged, DEFAULT_TOL).map(|s| s.radius);
        ensure(solved == Err(GeomError::Degenerate(n)), format!("n={n}: solve gave {solved:?}"))?;
    }
    let three = FanSpec::new(DataKind::CentralDistances, full, vec![Scalar::int(1); 3]);
    ensure(three.is_ok(), "full-turn 3-fan rejected")?;
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("200 closed forms within {worst:.1e}; full-turn 1- and 2-fans rejected"))
}

fn factorization_oracle() -> Outcome {
    let start = Instant::now();
    common::oracle_self_check();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut cases: Vec<Vec<i128>> = Vec::new();
    for _ in 0..10_000 {
        let deg = rng.gen_range(1..=6);
        cases.push(random_int_poly(&mut rng, deg, 9));
    }
    for _ in 0..2_000 {
        let da = rng.gen_range(1..=3);
        let db = rng.gen_range(1..=6 - da);
        let a = random_int_poly(&mut rng, da, 5);
        let b = random_int_poly(&mut rng, db, 5);
        cases.push(multiply(&a, &b));
    }
    let (mut reducible, mut irreducible) = (0, 0);
    for f in &cases {
        let ints: Vec<i64> = f.iter().map(|&c| c as i64).collect();
        let p = UniPoly::<Rational>::from_integers(Var::X, &ints);
        let ev = univariate_irreducible_over_q(&p).map_err(|e| e.to_string())?;
        let oracle = kronecker_reducible(f);
        let got = match ev.verdict {
            Verdict::Irreducible => false,
            Verdict::Reducible => true,
            Verdict::Inconclusive => return Err(format!("inconclusive on {p}")),
        };
        ensure(got == oracle, format!("{p}: library says reducible={got}, oracle says {oracle}"))?;
        if oracle {
            reducible += 1;
        } else {
            irreducible += 1;
        }
    }
    ensure(reducible > 0 && irreducible > 0, "one verdict never occurred")?;
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("{} polynomials agree ({irreducible} irreducible, {reducible} reducible)", cases.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("golden sextic", golden_sextic),
        ("golden coefficients", golden_coefficients),
        ("count reproduction", count_reproduction),
        ("desk-scale sweep", desk_sweep),
        ("nonagon certificate", nonagon),
        ("family degrees and discriminants", family_degrees),
        ("multiple-angle oracle", chebyshev_oracle),
        ("numeric/exact consistency", numeric_consistency),
        ("2-fan and side-length constructions", two_fan_constructions),
        ("factorization oracle", factorization_oracle),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    let mut out = std::io::stdout().lock();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => writeln!(out, "PASS criterion {}: {name}: {detail} [{secs:.2}s]", i + 1).unwrap(),
            Err(why) => {
                failed += 1;
                writeln!(out, "FAIL criterion {}: {name}: {why} [{secs:.2}s]", i + 1).unwrap();
            }
        }
        out.flush().unwrap();
    }
    writeln!(out, "{} of {} criteria passed", criteria.len() - failed, criteria.len()).unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
