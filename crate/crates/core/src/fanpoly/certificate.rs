//! Instance certificates: pick the polynomial whose root determines the
//! radius, isolate the irreducible factor that vanishes at the numeric
//! solution, and apply the degree criterion.

use serde::{Deserialize, Serialize};

use super::{build_even_poly, build_odd_poly, cos_multiple_angle, eliminate_three_fan, AngleParam, FanError};
use crate::exactnum::{Coeff, Rational, Scalar};
use crate::fangeom::{solve_radius, DataKind, FanSolution, FanSpec, DEFAULT_TOL};
use crate::irreducibility::{
    count_roots, factor_over_q, multivariate_irreducible_by_specialization, power_of_two_verdict,
    quadratic_irreducible_by_discriminant, univariate_irreducible_over_q, univariate_irreducible_over_quadratic,
    DegreeVerdict, IrreducibilityEvidence, Verdict,
};
use crate::poly::{convert_coeffs, MultiPoly, PolyError, UniPoly, Var};

/// Half-widths of the isolating interval around the numeric root, tried in order.
const ISOLATION_RADII: [f64; 3] = [1e-7, 1e-10, 1e-12];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateVerdict {
    Nonconstructible,
    ConstructibleWithConstruction,
    Undecided,
}

/// Which family the data belong to, up to reordering and a common scale.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Pattern {
    /// n equal distances d: G_n(x) = p with x = d·u.
    EqualDistances { n: usize },
    /// k distances d and one c ≠ d, k odd ≥ 3.
    EvenFamily { k: u32 },
    /// k distances d and two c ≠ d, k odd ≥ 3.
    OddFamily { k: u32 },
    ThreeFan,
    TwoFan,
    OneFan,
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub fan: FanSpec,
    pub u_convention: String,
    pub pattern: Pattern,
    /// The instance polynomial in x before factoring.
    pub instance_poly: Option<String>,
    /// Integer primitive polynomial of the root, irreducible over Q.
    pub witness_poly: Option<String>,
    pub root_description: String,
    pub degree: Option<usize>,
    pub evidence: Option<IrreducibilityEvidence>,
    pub degree_verdict: Option<DegreeVerdict>,
    /// Irreducibility of the symbolic family the instance belongs to.
    pub family_evidence: Option<IrreducibilityEvidence>,
    pub verdict: CertificateVerdict,
    pub notes: Vec<String>,
}

impl Certificate {
    fn undecided(fan: &FanSpec, pattern: Pattern, note: impl Into<String>) -> Self {
        Certificate {
            fan: fan.clone(),
            u_convention: fan.kind.u_convention().to_string(),
            pattern,
            instance_poly: None,
            witness_poly: None,
            root_description: String::new(),
            degree: None,
            evidence: None,
            degree_verdict: None,
            family_evidence: None,
            verdict: CertificateVerdict::Undecided,
            notes: vec![note.into()],
        }
    }

    /// Re-checks the claims behind the verdict from the recorded data alone.
    pub fn revalidate(&self) -> Result<bool, FanError> {
        match self.verdict {
            CertificateVerdict::Undecided => Ok(true),
            CertificateVerdict::Nonconstructible | CertificateVerdict::ConstructibleWithConstruction => {
                let (Some(ev), Some(text), Some(deg)) = (&self.evidence, &self.witness_poly, self.degree) else {
                    return Ok(false);
                };
                let w: UniPoly<Rational> = crate::poly::parse_uni(text, Var::X)?;
                if w.degree() != Some(deg) || ev.verdict != Verdict::Irreducible || !ev.revalidate()? {
                    return Ok(false);
                }
                if self.verdict == CertificateVerdict::ConstructibleWithConstruction {
                    return Ok(deg <= 2);
                }
                let subject = ev.subject.compact().with_vars(&[Var::X]).and_then(|s| s.to_univariate(Var::X))?;
                Ok(subject == w && !deg.is_power_of_two())
            }
        }
    }
}

fn counts(values: &[Scalar]) -> Vec<(Scalar, usize)> {
    let mut out: Vec<(Scalar, usize)> = Vec::new();
    for v in values {
        match out.iter_mut().find(|(w, _)| w == v) {
            Some((_, c)) => *c += 1,
            None => out.push((v.clone(), 1)),
        }
    }
    out.sort_by(|a, b| b.1.cmp(&a.1));
    out
}

/// Pattern of the data with the scale `d` (the repeated value) and the
/// remaining value `c` where relevant.
fn classify(spec: &FanSpec) -> (Pattern, Option<Scalar>, Option<Scalar>) {
    let cs = counts(&spec.values);
    let n = spec.n;
    if spec.kind == DataKind::SideLengths {
        return match n {
            1 => (Pattern::OneFan, None, None),
            2 => (Pattern::TwoFan, None, None),
            _ => (Pattern::Unsupported, None, None),
        };
    }
    if cs.len() == 1 {
        return match n {
            1 => (Pattern::OneFan, None, None),
            2 => (Pattern::TwoFan, None, None),
            _ => (Pattern::EqualDistances { n }, Some(cs[0].0.clone()), None),
        };
    }
    match n {
        1 => unreachable!("one value has one count"),
        2 => (Pattern::TwoFan, None, None),
        3 => (Pattern::ThreeFan, None, None),
        _ if cs.len() == 2 => {
            let (d, k) = (&cs[0].0, cs[0].1);
            let (c, m) = (&cs[1].0, cs[1].1);
            let k32 = k as u32;
            let odd_k = k >= 3 && k % 2 == 1;
            match m {
                1 if odd_k => (Pattern::EvenFamily { k: k32 }, Some(d.clone()), Some(c.clone())),
                2 if odd_k => (Pattern::OddFamily { k: k32 }, Some(d.clone()), Some(c.clone())),
                _ => (Pattern::Unsupported, None, None),
            }
        }
        _ => (Pattern::Unsupported, None, None),
    }
}

fn div(a: &Scalar, b: &Scalar) -> Result<Scalar, FanError> {
    Ok(a.checked_div(b)?)
}

/// The instance polynomial in x, the numeric root it must vanish at, and
/// what x means.
struct Instance {
    poly: UniPoly<Scalar>,
    x0: f64,
    description: String,
}

fn specialize_to_x(p: &MultiPoly<Scalar>, point: &[(Var, Scalar)]) -> Result<UniPoly<Scalar>, FanError> {
    let s = p.specialize(point)?.compact();
    Ok(if s.is_constant() { UniPoly::constant(Var::X, s.constant_term()) } else { s.to_univariate(Var::X)? })
}

fn instance(spec: &FanSpec, p: &Scalar, pattern: &Pattern, d: &Option<Scalar>, c: &Option<Scalar>, u: f64) -> Result<Instance, FanError> {
    let vals = &spec.values;
    let x = UniPoly::<Scalar>::identity(Var::X);
    let konst = |s: Scalar| UniPoly::constant(Var::X, s);
    match (pattern, spec.kind) {
        (Pattern::EqualDistances { n }, _) => {
            let d = d.as_ref().expect("scale present");
            let g = cos_multiple_angle(*n as u32)?.with_var(Var::X).to_scalar();
            Ok(Instance {
                poly: g.checked_sub(&konst(p.clone()))?,
                x0: d.to_f64() * u,
                description: format!("x = {d}·u = {d}/r, the cosine of each half-angle"),
            })
        }
        (Pattern::EvenFamily { k }, _) | (Pattern::OddFamily { k }, _) => {
            let d = d.as_ref().expect("scale present");
            let c = c.as_ref().expect("second value present");
            let ratio = div(c, d)?;
            let (fam, y) = match pattern {
                Pattern::EvenFamily { .. } => (build_even_poly(*k, &AngleParam::Exact(p.clone()))?, ratio),
                _ => (build_odd_poly(*k, &AngleParam::Exact(p.clone()))?, ratio.square()),
            };
            Ok(Instance {
                poly: specialize_to_x(&fam.poly, &[(Var::Y, y)])?,
                x0: d.to_f64() * u,
                description: format!("x = {d}·u = {d}/r"),
            })
        }
        (Pattern::ThreeFan, _) => {
            let h = eliminate_three_fan().map_coeffs(|r| Scalar::from(r.clone()));
            let y = div(&vals[0], &vals[2])?;
            let z = div(&vals[1], &vals[2])?;
            let d3 = &vals[2];
            Ok(Instance {
                poly: specialize_to_x(&h, &[(Var::Y, y), (Var::Z, z), (Var::W, p.clone())])?,
                x0: (d3.to_f64() * u).powi(2),
                description: format!("x = ({d3}·u)² = ({d3}/r)²"),
            })
        }
        (Pattern::TwoFan, DataKind::CentralDistances) => {
            let cc = div(&vals[1], &vals[0])?;
            let d1 = &vals[0];
            // (c² − 2pc + 1)·x + p² − 1
            let lead = cc.square().checked_sub(&Scalar::int(2).checked_mul(p)?.checked_mul(&cc)?)?.checked_add(&Scalar::one())?;
            Ok(Instance {
                poly: x.scale(&lead).checked_add(&konst(p.square().checked_sub(&Scalar::one())?))?,
                x0: (d1.to_f64() * u).powi(2),
                description: format!("x = ({d1}·u)² = ({d1}/r)²; r = {d1}/sqrt(x)"),
            })
        }
        (Pattern::TwoFan, DataKind::SideLengths) => {
            let a = div(&vals[1], &vals[0])?;
            let a1 = &vals[0];
            // (a² + 2pa + 1)·x + p² − 1
            let lead = a.square().checked_add(&Scalar::int(2).checked_mul(p)?.checked_mul(&a)?)?.checked_add(&Scalar::one())?;
            Ok(Instance {
                poly: x.scale(&lead).checked_add(&konst(p.square().checked_sub(&Scalar::one())?))?,
                x0: (a1.to_f64() * u).powi(2),
                description: format!("x = ({a1}·u)² with u = 1/(2r); r = {a1}/(2·sqrt(x))"),
            })
        }
        (Pattern::OneFan, DataKind::CentralDistances) => {
            let d = &vals[0];
            Ok(Instance {
                poly: x.scale(d).checked_sub(&konst(p.clone()))?,
                x0: u,
                description: "x = u = 1/r".to_string(),
            })
        }
        (Pattern::OneFan, DataKind::SideLengths) => {
            let a = &vals[0];
            // sin(δ/2) = a·u, so a²·x = 1 − p²
            Ok(Instance {
                poly: x.scale(&a.square()).checked_add(&konst(p.square().checked_sub(&Scalar::one())?))?,
                x0: u * u,
                description: "x = u² with u = 1/(2r)".to_string(),
            })
        }
        (Pattern::Unsupported, _) => unreachable!("handled by the caller"),
    }
}

/// Irreducible rational factor of `f` with a root in a small interval
/// around `x0`; `None` when the isolation stays ambiguous.
fn isolate(f: &UniPoly<Rational>, x0: f64) -> Result<Option<UniPoly<Rational>>, FanError> {
    let fac = factor_over_q(f)?;
    for eps in ISOLATION_RADII {
        let (Some(a), Some(b)) = (Rational::from_f64(x0 - eps), Rational::from_f64(x0 + eps)) else {
            return Ok(None);
        };
        let hits: Vec<&UniPoly<Rational>> =
            fac.factors.iter().map(|g| &g.poly).filter(|g| count_roots(g, &a, &b) > 0).collect();
        match hits.as_slice() {
            [one] => return Ok(Some((*one).clone())),
            [] => return Ok(None),
            _ => continue,
        }
    }
    Ok(None)
}

fn rational_view(poly: &UniPoly<Scalar>, notes: &mut Vec<String>) -> Result<UniPoly<Rational>, FanError> {
    match poly.to_rational() {
        Some(r) => Ok(r),
        None => {
            notes.push(
                "instance coefficients are quadratic irrationals; the factored polynomial is its norm over Q, \
                 whose roots include the instance roots"
                    .to_string(),
            );
            Ok(poly.norm()?)
        }
    }
}

fn radicand_of(poly: &UniPoly<Scalar>) -> Option<u64> {
    poly.coeffs().iter().find_map(Coeff::radicand)
}

/// Irreducibility of the symbolic family the instance lies in, for exact
/// rational p.
fn family_evidence(pattern: &Pattern, p: &Scalar) -> Result<Option<IrreducibilityEvidence>, FanError> {
    let Some(_) = p.as_rational() else { return Ok(None) };
    let ev = match pattern {
        Pattern::EvenFamily { k } | Pattern::OddFamily { k } => {
            let fam = match pattern {
                Pattern::EvenFamily { .. } => build_even_poly(*k, &AngleParam::Exact(p.clone()))?,
                _ => build_odd_poly(*k, &AngleParam::Exact(p.clone()))?,
            };
            let q: MultiPoly<Rational> = convert_coeffs(&fam.poly)?;
            quadratic_irreducible_by_discriminant(&q, Var::Y)?
        }
        Pattern::ThreeFan => {
            let r = p.as_rational().expect("checked above").clone();
            let hw = eliminate_three_fan().specialize(&[(Var::W, r)])?.compact();
            multivariate_irreducible_by_specialization(
                &hw,
                Var::X,
                &[(Var::Y, Rational::from_integer(2)), (Var::Z, Rational::from_integer(3))],
            )?
        }
        _ => return Ok(None),
    };
    Ok(Some(ev))
}

/// Decides whether the radius of `spec` is constructible from its data.
///
/// Nonexistent fans are errors. Unsupported patterns, numeric angles and
/// power-of-two degrees give `Undecided` with a note.
pub fn certify_nonconstructible(spec: &FanSpec) -> Result<Certificate, FanError> {
    let sol = solve_radius(spec, DEFAULT_TOL)?;
    let (pattern, d, c) = classify(spec);
    let Some(p) = spec.p.clone() else {
        return Ok(Certificate::undecided(spec, pattern, "angle given only numerically; an exact p is required"));
    };
    if pattern == Pattern::Unsupported {
        let why = match spec.kind {
            DataKind::SideLengths => "side-length data with n ≥ 3 are not covered by a proved family",
            DataKind::CentralDistances => "distances match no proved family (equal, k+1 or k+2 with k odd ≥ 3, n ≤ 3)",
        };
        return Ok(Certificate::undecided(spec, pattern, why));
    }
    let inst = match instance(spec, &p, &pattern, &d, &c, sol.u) {
        Ok(i) => i,
        Err(FanError::Poly(PolyError::MixedRadicands(a, b))) | Err(FanError::Num(crate::exactnum::NumError::RadicandMismatch(a, b))) => {
            return Ok(Certificate::undecided(
                spec,
                pattern,
                format!("data mix sqrt({a}) and sqrt({b}); only one quadratic field is supported"),
            ));
        }
        Err(FanError::StraightAngle) => {
            return Ok(Certificate::undecided(spec, pattern, "the family excludes p = 0"));
        }
        Err(e) => return Err(e),
    };

    let mut cert = Certificate::undecided(spec, pattern.clone(), "");
    cert.notes.clear();
    cert.instance_poly = Some(inst.poly.to_string());
    cert.root_description = inst.description.clone();
    if matches!(pattern, Pattern::OneFan | Pattern::TwoFan) {
        return constructible(cert, &inst);
    }

    let rational = rational_view(&inst.poly, &mut cert.notes)?;
    let Some(factor) = isolate(&rational, inst.x0)? else {
        cert.notes.push(format!("could not isolate the factor vanishing at x ≈ {:.12}", inst.x0));
        return Ok(cert);
    };
    let (_, ints) = factor.integer_primitive();
    let witness = UniPoly::from_bigints(Var::X, &ints);
    let evidence = univariate_irreducible_over_q(&witness)?;
    cert.witness_poly = Some(witness.to_string());
    cert.degree = witness.degree();
    cert.family_evidence = family_evidence(&pattern, &p)?;
    if evidence.verdict != Verdict::Irreducible {
        cert.notes.push("isolated factor failed the irreducibility check".to_string());
        cert.evidence = Some(evidence);
        return Ok(cert);
    }
    let context = format!("{}; {}", inst.description, spec.kind.u_convention());
    let dv = power_of_two_verdict(&witness, Some(&evidence), &context)?;
    cert.evidence = Some(evidence);
    if dv.nonconstructible {
        cert.verdict = CertificateVerdict::Nonconstructible;
        cert.notes.push(
            "evidence is over Q; the data generate a field of degree at most 2 over Q, so a minimal polynomial \
             over Q whose degree is not a power of 2 rules out constructibility from the data"
                .to_string(),
        );
    } else {
        cert.notes.push(format!("minimal polynomial has degree {}, a power of 2; the degree criterion is silent", dv.degree));
    }
    cert.degree_verdict = Some(dv);
    Ok(cert)
}

/// 1-fans and 2-fans: x solves a linear equation over the data field, and
/// u (or r) is at most one square root away.
fn constructible(mut cert: Certificate, inst: &Instance) -> Result<Certificate, FanError> {
    let evidence = match inst.poly.to_rational() {
        Some(r) => univariate_irreducible_over_q(&r)?,
        None => univariate_irreducible_over_quadratic(&inst.poly, radicand_of(&inst.poly).expect("irrational coefficient"))?,
    };
    let witness = match inst.poly.to_rational() {
        Some(r) => UniPoly::from_bigints(Var::X, &r.integer_primitive().1).to_string(),
        None => inst.poly.monic().to_string(),
    };
    cert.witness_poly = Some(witness);
    cert.degree = inst.poly.degree();
    cert.evidence = Some(evidence);
    cert.verdict = CertificateVerdict::ConstructibleWithConstruction;
    cert.notes.push(match cert.pattern {
        Pattern::OneFan if cert.fan.kind == DataKind::CentralDistances => "r = d/p, a rational expression in the data".to_string(),
        _ => "x is a rational expression in the data; r needs one square root".to_string(),
    });
    Ok(cert)
}

/// Value of the matching exact family polynomial at a numeric solution,
/// `None` when the data fit no family.
pub fn family_residual(spec: &FanSpec, sol: &FanSolution) -> Option<f64> {
    let (pattern, d, c) = classify(spec);
    let p = spec.p_f64();
    let u = sol.u;
    let vals = spec.values_f64();
    let pt = |x: f64, y: f64| vec![(Var::X, x), (Var::Y, y), (Var::W, p)];
    match (pattern, spec.kind) {
        (Pattern::EqualDistances { n }, _) => {
            let g = cos_multiple_angle(n as u32).ok()?;
            Some(g.eval_f64(d?.to_f64() * u) - p)
        }
        (Pattern::EvenFamily { k }, _) => {
            let (d, c) = (d?.to_f64(), c?.to_f64());
            let fam = build_even_poly(k, &AngleParam::Symbolic).ok()?;
            fam.poly.eval_f64(&pt(d * u, c / d)).ok()
        }
        (Pattern::OddFamily { k }, _) => {
            let (d, c) = (d?.to_f64(), c?.to_f64());
            let fam = build_odd_poly(k, &AngleParam::Symbolic).ok()?;
            fam.poly.eval_f64(&pt(d * u, (c / d).powi(2))).ok()
        }
        (Pattern::ThreeFan, _) => {
            let (y, z, d3) = (vals[0] / vals[2], vals[1] / vals[2], vals[2]);
            eliminate_three_fan()
                .eval_f64(&[(Var::Y, y), (Var::Z, z), (Var::W, p), (Var::X, (d3 * u).powi(2))])
                .ok()
        }
        (Pattern::TwoFan, DataKind::CentralDistances) => {
            let c = vals[1] / vals[0];
            Some((c * c - 2.0 * p * c + 1.0) * (vals[0] * u).powi(2) + p * p - 1.0)
        }
        (Pattern::TwoFan, DataKind::SideLengths) => {
            let a = vals[1] / vals[0];
            Some((a * a + 2.0 * p * a + 1.0) * (vals[0] * u).powi(2) + p * p - 1.0)
        }
        (Pattern::OneFan, DataKind::CentralDistances) => Some(vals[0] * u - p),
        (Pattern::OneFan, DataKind::SideLengths) => Some(vals[0] * vals[0] * u * u + p * p - 1.0),
        (Pattern::Unsupported, _) => None,
    }
}

