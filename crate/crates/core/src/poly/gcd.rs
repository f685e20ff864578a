//! Multivariate gcd over a coefficient field by recursive primitive
//! remainder sequences. Only used for content extraction; degrees here are
//! small.

use crate::exactnum::Coeff;

use super::{Monomial, MultiPoly, PolyError, Var};

fn normalize<C: Coeff>(p: MultiPoly<C>) -> MultiPoly<C> {
    match p.leading_coeff().and_then(Coeff::inverse) {
        Some(inv) => p.scale(&inv),
        None => p,
    }
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`, normalised
/// to leading coefficient one. Lives over the variables other than `v`.
pub fn content_in<C: Coeff>(p: &MultiPoly<C>, v: Var) -> Result<MultiPoly<C>, PolyError> {
    let coeffs: Vec<MultiPoly<C>> = p.coefficients_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    let rest: Vec<Var> = p.vars().iter().copied().filter(|&w| w != v).collect();
    if coeffs.is_empty() {
        return Err(PolyError::ZeroPolynomial);
    }
    // A single-term coefficient pins the gcd down to a monomial.
    if coeffs.iter().any(|c| c.num_terms() == 1) {
        let mut mins: Option<Monomial> = None;
        for c in &coeffs {
            for (m, _) in c.terms() {
                mins = Some(match mins {
                    None => m.clone(),
                    Some(cur) => Monomial(cur.0.iter().zip(&m.0).map(|(a, b)| *a.min(b)).collect()),
                });
            }
        }
        let mins = mins.expect("nonzero coefficients");
        return Ok(MultiPoly::from_terms(&rest, [(mins.0, C::one())]));
    }
    let mut g = coeffs[0].clone();
    for c in &coeffs[1..] {
        g = gcd(&g, c)?;
        if g.is_constant() {
            break;
        }
    }
    Ok(normalize(g))
}

fn prem<C: Coeff>(a: &[MultiPoly<C>], b: &[MultiPoly<C>]) -> Vec<MultiPoly<C>> {
    let mut r = a.to_vec();
    let n = b.len() - 1;
    let lcb = &b[n];
    trim(&mut r);
    while r.len() > n && !r.is_empty() {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        let shift = dr - n;
        for c in r.iter_mut() {
            *c = &*c * lcb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - &(&lcr * bj);
        }
        trim(&mut r);
    }
    r
}

fn trim<C: Coeff>(v: &mut Vec<MultiPoly<C>>) {
    while v.last().is_some_and(MultiPoly::is_zero) {
        v.pop();
    }
}

/// Greatest common divisor over the coefficient field, normalised so the
/// graded-lex leading coefficient is one.
pub fn gcd<C: Coeff>(a: &MultiPoly<C>, b: &MultiPoly<C>) -> Result<MultiPoly<C>, PolyError> {
    if a.is_zero() {
        return Ok(normalize(b.clone()));
    }
    if b.is_zero() {
        return Ok(normalize(a.clone()));
    }
    let zero = MultiPoly::zero(b.vars());
    let a = a.checked_add(&zero)?;
    let b = b.with_vars(a.vars())?;
    let vars = a.vars().to_vec();
    let mut used = a.used_vars();
    for v in b.used_vars() {
        if !used.contains(&v) {
            used.push(v);
        }
    }
    let Some(&v) = used.first() else {
        return Ok(MultiPoly::one(&vars));
    };
    let rest: Vec<Var> = vars.iter().copied().filter(|&w| w != v).collect();

    let ca = content_in(&a, v)?;
    let cb = content_in(&b, v)?;
    let c = gcd(&ca, &cb)?.with_vars(&vars)?;
    let pa = a.div_exact(&ca.with_vars(&vars)?)?;
    let pb = b.div_exact(&cb.with_vars(&vars)?)?;
    if pa.degree_in(v) == 0 || pb.degree_in(v) == 0 {
        return Ok(normalize(c));
    }
    let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa.coefficients_in(v), pb.coefficients_in(v))
    } else {
        (pb.coefficients_in(v), pa.coefficients_in(v))
    };
    loop {
        let r = prem(&f, &g);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return Ok(normalize(c));
        }
        let rp = MultiPoly::from_coefficients_in(v, &r, &rest)?.with_vars(&vars)?;
        let rc = content_in(&rp, v)?.with_vars(&vars)?;
        let rp = rp.div_exact(&rc)?;
        f = g;
        g = rp.coefficients_in(v);
    }
    let gp = MultiPoly::from_coefficients_in(v, &g, &rest)?.with_vars(&vars)?;
    let gc = content_in(&gp, v)?.with_vars(&vars)?;
    let gp = gp.div_exact(&gc)?;
    Ok(normalize(&c * &gp))
}
