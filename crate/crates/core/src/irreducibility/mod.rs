//! Irreducibility tests over Q, Q(√d) and polynomial rings, each returning
//! checkable evidence, plus the power-of-two degree criterion for
//! non-constructibility.

mod sturm;
mod zassenhaus;
mod zp;

pub use sturm::{count_roots, Sturm};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{Coeff, Rational, Scalar};
use crate::poly::{content_and_primitive, quadratic_discriminant, MultiPoly, PolyError, UniPoly, Var};

use zassenhaus::ZPoly;

const FACTOR_SEED: u64 = 0x9e37_79b9;
const RATIONAL_ROOT_LIMIT: u64 = 1_000_000_000_000;
const MOD_P_PRIMES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IrrError {
    #[error("polynomial is constant or zero")]
    Constant,
    #[error("polynomial is not primitive in {0}: content {1}")]
    NotPrimitive(Var, String),
    #[error("specialization point does not bind {0}")]
    UnboundVariable(Var),
    #[error("degree verdict needs irreducibility evidence")]
    MissingEvidence,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Irreducible,
    Reducible,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Irreducible => "irreducible",
            Verdict::Reducible => "reducible",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    RationalRoot,
    ModPWitness,
    FullFactorization,
    DiscriminantNonsquare,
    Specialization,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub poly: UniPoly<Rational>,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `root` is absent when no rational root exists.
    RationalRoot { root: Option<Rational>, content: Rational, factors: Vec<Factor> },
    Prime { prime: u64 },
    Factors { content: Rational, factors: Vec<Factor> },
    Discriminant {
        discriminant: MultiPoly<Rational>,
        /// Point at which a multivariate discriminant specializes to a non-square.
        refuted_at: Option<Vec<(Var, Rational)>>,
        square_root: Option<MultiPoly<Rational>>,
    },
    Specialization { point: Vec<(Var, Rational)>, specialized: UniPoly<Rational>, inner: Box<IrreducibilityEvidence> },
    Norm { radicand: u64, poly: UniPoly<Scalar>, shift: i64, norm: UniPoly<Rational>, factors: Vec<UniPoly<Scalar>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityEvidence {
    pub subject: MultiPoly<Rational>,
    pub variable: Var,
    /// Ring in which the verdict holds.
    pub field: String,
    pub verdict: Verdict,
    pub method: Method,
    pub witness: Witness,
}

/// Complete factorization `content · ∏ factorᵢ^eᵢ` with primitive integer
/// factors of positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub content: Rational,
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn expand(&self) -> UniPoly<Rational> {
        let var = self.factors.first().map_or(Var::X, |f| f.poly.var());
        let mut acc = UniPoly::constant(var, self.content.clone());
        for f in &self.factors {
            acc = &acc * &f.poly.pow(f.multiplicity);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].multiplicity == 1
    }
}

fn to_factors(var: Var, fs: Vec<(ZPoly, u32)>) -> Vec<Factor> {
    fs.into_iter().map(|(g, e)| Factor { poly: UniPoly::from_bigints(var, &g), multiplicity: e }).collect()
}

fn check_nonconstant<C: Coeff>(p: &UniPoly<C>) -> Result<usize, IrrError> {
    match p.degree() {
        Some(d) if d >= 1 => Ok(d),
        _ => Err(IrrError::Constant),
    }
}

pub fn factor_over_q(p: &UniPoly<Rational>) -> Result<Factorization, IrrError> {
    check_nonconstant(p)?;
    let (content, ints) = p.integer_primitive();
    let fs = zassenhaus::factor_primitive(&ints, FACTOR_SEED);
    Ok(Factorization { content, factors: to_factors(p.var(), fs) })
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > RATIONAL_ROOT_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// `Some(root)` or `Some(None)` when decided, `None` when the coefficients
/// are too large to enumerate candidates.
fn find_rational_root(f: &[BigInt]) -> Option<Option<Rational>> {
    if f[0].is_zero() {
        return Some(Some(Rational::zero()));
    }
    let nums = divisors(&f[0])?;
    let dens = divisors(f.last().unwrap())?;
    if nums.len() * dens.len() > 200_000 {
        return None;
    }
    let n = f.len() - 1;
    for &e in &dens {
        for &d in &nums {
            if d.gcd(&e) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let num = BigInt::from(d) * sign;
                let den = BigInt::from(e);
                // e^n · f(num/den)
                let mut acc = BigInt::zero();
                let mut dp = BigInt::from(1);
                let mut ep = den.pow(n as u32);
                for c in f {
                    acc += c * &dp * &ep;
                    dp *= &num;
                    ep /= &den;
                }
                if acc.is_zero() {
                    return Some(Some(Rational::new(num, den).expect("nonzero denominator")));
                }
            }
        }
    }
    Some(None)
}

fn mod_p_witness(f: &[BigInt]) -> Option<u64> {
    let lc = f.last().unwrap();
    zp::small_primes()
        .filter(|&p| !zp::divides_bigint(p, lc))
        .take(MOD_P_PRIMES)
        .find(|&p| zp::is_irreducible(&zp::reduce(f, p), p))
}

/// Decides irreducibility over Q. Never inconclusive.
pub fn univariate_irreducible_over_q(p: &UniPoly<Rational>) -> Result<IrreducibilityEvidence, IrrError> {
    let deg = check_nonconstant(p)?;
    let var = p.var();
    let (content, ints) = p.integer_primitive();
    let evidence = |verdict, method, witness| IrreducibilityEvidence {
        subject: p.to_multi(),
        variable: var,
        field: "Q".into(),
        verdict,
        method,
        witness,
    };
    if deg == 1 {
        let factors = vec![Factor { poly: UniPoly::from_bigints(var, &ints), multiplicity: 1 }];
        return Ok(evidence(Verdict::Irreducible, Method::FullFactorization, Witness::Factors { content, factors }));
    }
    if let Some(found) = find_rational_root(&ints) {
        match found {
            Some(root) => {
                let (_, lin) = UniPoly::new(var, vec![-root.clone(), Rational::one()]).integer_primitive();
                let lin = UniPoly::from_bigints(var, &lin);
                let q = UniPoly::from_bigints(var, &ints).div_rem(&lin)?.0;
                let factors = vec![Factor { poly: lin, multiplicity: 1 }, Factor { poly: q, multiplicity: 1 }];
                return Ok(evidence(
                    Verdict::Reducible,
                    Method::RationalRoot,
                    Witness::RationalRoot { root: Some(root), content, factors },
                ));
            }
            None if deg <= 3 => {
                return Ok(evidence(
                    Verdict::Irreducible,
                    Method::RationalRoot,
                    Witness::RationalRoot { root: None, content, factors: Vec::new() },
                ));
            }
            None => {}
        }
    }
    if let Some(prime) = mod_p_witness(&ints) {
        return Ok(evidence(Verdict::Irreducible, Method::ModPWitness, Witness::Prime { prime }));
    }
    let fac = factor_over_q(p)?;
    let verdict = if fac.is_irreducible() { Verdict::Irreducible } else { Verdict::Reducible };
    Ok(evidence(verdict, Method::FullFactorization, Witness::Factors { content: fac.content, factors: fac.factors }))
}

/// Outcome of a polynomial squareness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquareTest {
    Square(MultiPoly<Rational>),
    /// Not a square; multivariate refutations carry the specialization used.
    NotSquare(Option<Vec<(Var, Rational)>>),
    Unknown,
}

/// Exact for constants and univariate polynomials; for several variables
/// only refutes, via leading-term parity and specializations (a square
/// specializes to a square).
pub fn square_test(d: &MultiPoly<Rational>) -> SquareTest {
    let used = d.used_vars();
    match used.len() {
        0 => match d.constant_term().sqrt_exact() {
            Some(r) => SquareTest::Square(MultiPoly::constant(r, d.vars())),
            None => SquareTest::NotSquare(None),
        },
        1 => {
            let u = d.to_univariate(used[0]).expect("single variable");
            match u.sqrt_exact() {
                Some(h) => SquareTest::Square(h.to_multi()),
                None => SquareTest::NotSquare(None),
            }
        }
        _ => {
            let (mono, lc) = d.leading_term().expect("nonzero");
            if lc.is_negative() || mono.0.iter().any(|e| e % 2 == 1) {
                return SquareTest::NotSquare(None);
            }
            let main = used[0];
            for offset in 0..6i64 {
                let point: Vec<(Var, Rational)> = used[1..]
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (v, Rational::from_integer(2 + offset + 3 * i as i64)))
                    .collect();
                let s = d.specialize(&point).expect("bound");
                if s.is_zero() {
                    continue;
                }
                let u = s.to_univariate(main).expect("single variable");
                if u.sqrt_exact().is_none() {
                    return SquareTest::NotSquare(Some(point));
                }
            }
            SquareTest::Unknown
        }
    }
}

/// One-directional discriminant criterion for a quadratic in `v` over the
/// polynomial ring in the remaining variables.
pub fn quadratic_irreducible_by_discriminant(
    p: &MultiPoly<Rational>,
    v: Var,
) -> Result<IrreducibilityEvidence, IrrError> {
    let disc = quadratic_discriminant(p, v)?;
    let (content, _) = content_and_primitive(p, v)?;
    if !content.is_constant() {
        return Err(IrrError::NotPrimitive(v, content.to_string()));
    }
    let rest: Vec<String> = p.used_vars().into_iter().filter(|&w| w != v).map(|w| w.to_string()).collect();
    let field = if rest.is_empty() { "Q".to_string() } else { format!("Q[{}]", rest.join(",")) };
    let (verdict, refuted_at, square_root) = match square_test(&disc) {
        SquareTest::NotSquare(at) => (Verdict::Irreducible, at, None),
        SquareTest::Square(h) => (Verdict::Inconclusive, None, Some(h)),
        SquareTest::Unknown => (Verdict::Inconclusive, None, None),
    };
    Ok(IrreducibilityEvidence {
        subject: p.clone(),
        variable: v,
        field,
        verdict,
        method: Method::DiscriminantNonsquare,
        witness: Witness::Discriminant { discriminant: disc, refuted_at, square_root },
    })
}

/// Irreducibility of a primitive multivariate polynomial via one
/// degree-preserving specialization of every other variable.
pub fn multivariate_irreducible_by_specialization(
    p: &MultiPoly<Rational>,
    main: Var,
    point: &[(Var, Rational)],
) -> Result<IrreducibilityEvidence, IrrError> {
    for v in p.used_vars() {
        if v != main && !point.iter().any(|(w, _)| *w == v) {
            return Err(IrrError::UnboundVariable(v));
        }
    }
    let (content, _) = content_and_primitive(p, main)?;
    if !content.is_constant() {
        return Err(IrrError::NotPrimitive(main, content.to_string()));
    }
    let rest: Vec<String> = p.used_vars().into_iter().filter(|&w| w != main).map(|w| w.to_string()).collect();
    let field = format!("Q[{}][{main}]", rest.join(","));
    let bound: Vec<(Var, Rational)> = point.iter().filter(|(v, _)| p.var_index(*v).is_some()).cloned().collect();
    let specialized = p.specialize(&bound)?.compact();
    let specialized = if specialized.is_constant() {
        UniPoly::constant(main, specialized.constant_term())
    } else {
        specialized.to_univariate(main)?
    };
    let full_degree = p.degree_in(main) as usize;
    let witness_for = |inner: IrreducibilityEvidence| Witness::Specialization {
        point: point.to_vec(),
        specialized: specialized.clone(),
        inner: Box::new(inner),
    };
    if specialized.degree() != Some(full_degree) || full_degree == 0 {
        let inner = IrreducibilityEvidence {
            subject: specialized.to_multi(),
            variable: main,
            field: "Q".into(),
            verdict: Verdict::Inconclusive,
            method: Method::Specialization,
            witness: Witness::Factors { content: Rational::one(), factors: Vec::new() },
        };
        return Ok(IrreducibilityEvidence {
            subject: p.clone(),
            variable: main,
            field,
            verdict: Verdict::Inconclusive,
            method: Method::Specialization,
            witness: witness_for(inner),
        });
    }
    let inner = univariate_irreducible_over_q(&specialized)?;
    let verdict = if inner.verdict == Verdict::Irreducible { Verdict::Irreducible } else { Verdict::Inconclusive };
    Ok(IrreducibilityEvidence {
        subject: p.clone(),
        variable: main,
        field,
        verdict,
        method: Method::Specialization,
        witness: witness_for(inner),
    })
}

/// Irreducibility over Q(√d) by Trager's norm method: shift until the norm
/// is squarefree, factor it over Q and pull factors back by gcds.
pub fn univariate_irreducible_over_quadratic(
    p: &UniPoly<Scalar>,
    d: u64,
) -> Result<IrreducibilityEvidence, IrrError> {
    let deg = check_nonconstant(p)?;
    let var = p.var();
    let field = format!("Q(sqrt({d}))");
    let sqrt_d = Scalar::from_quad(crate::exactnum::QuadExt::new(Rational::zero(), Rational::one(), d).map_err(PolyError::from)?);
    // irrational input is represented over Q by its norm
    let subject = match p.to_rational() {
        Some(q) => q.to_multi(),
        None => p.norm()?.to_multi(),
    };
    let mk = |verdict, witness| IrreducibilityEvidence {
        subject: subject.clone(),
        variable: var,
        field: field.clone(),
        verdict,
        method: Method::FullFactorization,
        witness,
    };
    let g = p.gcd(&p.derivative())?;
    if g.deg() > 0 {
        let q = p.div_rem(&g)?.0;
        return Ok(mk(
            Verdict::Reducible,
            Witness::Norm { radicand: d, poly: p.clone(), shift: 0, norm: UniPoly::zero(var), factors: vec![g, q] },
        ));
    }
    if deg == 1 {
        return Ok(mk(
            Verdict::Irreducible,
            Witness::Norm { radicand: d, poly: p.clone(), shift: 0, norm: UniPoly::zero(var), factors: vec![p.clone()] },
        ));
    }
    for shift in 0..16i64 {
        let s = sqrt_d.times(&Scalar::int(shift));
        let moved = p.compose(&UniPoly::new(var, vec![s.negated(), Scalar::one()]));
        let norm = moved.norm()?;
        if norm.gcd(&norm.derivative())?.deg() > 0 {
            continue;
        }
        let fac = factor_over_q(&norm)?;
        let mut factors = Vec::new();
        for f in &fac.factors {
            let h = moved.gcd(&f.poly.to_scalar())?;
            if h.deg() > 0 {
                let back = h.compose(&UniPoly::new(var, vec![s.clone(), Scalar::one()]));
                factors.push(back);
            }
        }
        let verdict = if factors.len() == 1 { Verdict::Irreducible } else { Verdict::Reducible };
        return Ok(mk(verdict, Witness::Norm { radicand: d, poly: p.clone(), shift, norm, factors }));
    }
    Ok(mk(
        Verdict::Inconclusive,
        Witness::Norm { radicand: d, poly: p.clone(), shift: -1, norm: UniPoly::zero(var), factors: Vec::new() },
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeVerdict {
    pub degree: usize,
    pub is_power_of_two: bool,
    pub nonconstructible: bool,
    /// Which quantity the polynomial's root describes.
    pub root_context: String,
    pub conclusion: String,
}

/// Degree criterion: an algebraic number whose minimal polynomial has
/// degree not a power of two is not constructible. A power-of-two degree
/// decides nothing.
pub fn power_of_two_verdict(
    p: &UniPoly<Rational>,
    evidence: Option<&IrreducibilityEvidence>,
    root_context: &str,
) -> Result<DegreeVerdict, IrrError> {
    let ev = evidence.ok_or(IrrError::MissingEvidence)?;
    if ev.verdict != Verdict::Irreducible {
        return Err(IrrError::MissingEvidence);
    }
    let degree = check_nonconstant(p)?;
    let is_power_of_two = degree.is_power_of_two();
    Ok(DegreeVerdict {
        degree,
        is_power_of_two,
        nonconstructible: !is_power_of_two,
        root_context: root_context.to_string(),
        conclusion: if is_power_of_two { "criterion inapplicable" } else { "nonconstructible" }.to_string(),
    })
}

impl IrreducibilityEvidence {
    fn subject_uni(&self) -> Result<UniPoly<Rational>, IrrError> {
        Ok(self.subject.compact().with_vars(&[self.variable]).map_err(IrrError::from)?.to_univariate(self.variable)?)
    }

    /// Re-derives the verdict from the recorded witness.
    pub fn revalidate(&self) -> Result<bool, IrrError> {
        match (&self.witness, self.verdict) {
            (Witness::Prime { prime }, Verdict::Irreducible) => {
                let f = self.subject_uni()?;
                let (_, ints) = f.integer_primitive();
                let red = zp::reduce(&ints, *prime);
                Ok(zp::degree(&red) == f.degree() && zp::is_irreducible(&red, *prime))
            }
            (Witness::RationalRoot { root: None, .. }, Verdict::Irreducible) => {
                let f = self.subject_uni()?;
                let (_, ints) = f.integer_primitive();
                Ok(f.deg() <= 3 && find_rational_root(&ints) == Some(None))
            }
            (Witness::RationalRoot { root: Some(r), content, factors }, Verdict::Reducible) => {
                let f = self.subject_uni()?;
                let prod = Factorization { content: content.clone(), factors: factors.clone() }.expand();
                Ok(f.eval(r).is_zero() && prod == f && factors.iter().all(|g| g.poly.deg() >= 1))
            }
            (Witness::Factors { content, factors }, v) => {
                let f = self.subject_uni()?;
                let fac = Factorization { content: content.clone(), factors: factors.clone() };
                if fac.expand() != f {
                    return Ok(false);
                }
                let fresh = factor_over_q(&f)?;
                Ok(fresh == fac && (v == Verdict::Irreducible) == fac.is_irreducible())
            }
            (Witness::Discriminant { discriminant, .. }, v) => {
                let again = quadratic_irreducible_by_discriminant(&self.subject, self.variable)?;
                Ok(&again.witness_discriminant() == discriminant && again.verdict == v)
            }
            (Witness::Specialization { point, specialized, inner }, v) => {
                let again = multivariate_irreducible_by_specialization(&self.subject, self.variable, point)?;
                let Witness::Specialization { specialized: s2, .. } = &again.witness else { return Ok(false) };
                let inner_ok = inner.verdict != Verdict::Irreducible || inner.revalidate()?;
                Ok(s2 == specialized && again.verdict == v && inner_ok)
            }
            (Witness::Norm { radicand, poly, .. }, v) => {
                let again = univariate_irreducible_over_quadratic(poly, *radicand)?;
                Ok(again.verdict == v)
            }
            _ => Ok(false),
        }
    }

    fn witness_discriminant(&self) -> MultiPoly<Rational> {
        match &self.witness {
            Witness::Discriminant { discriminant, .. } => discriminant.clone(),
            _ => MultiPoly::zero(&[]),
        }
    }
}
