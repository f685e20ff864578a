//! Exact polynomials: dense univariate ([`UniPoly`]) and sparse multivariate
//! ([`MultiPoly`]) over [`Coeff`] scalars.

mod gcd;
mod multi;
mod text;
mod uni;
mod var;

pub use gcd::{content_in, gcd};
pub use multi::{Binding, Monomial, MultiPoly};
pub use text::{convert_coeffs, parse_poly, parse_poly_in, parse_scalar, parse_uni, TermJson, TermListJson};
pub use uni::UniPoly;
pub use var::Var;

use thiserror::Error;

use crate::exactnum::{rational_content, Coeff, NumError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("coefficients from different quadratic fields sqrt({0}) and sqrt({1})")]
    MixedRadicands(u64, u64),
    #[error("variable {0} is not available")]
    MissingVariable(Var),
    #[error("polynomial still depends on {0}")]
    NotUnivariate(Var),
    #[error("division by zero")]
    DivisionByZero,
    #[error("division leaves a remainder")]
    NotDivisible,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("expected degree {expected} in {var}, found {found}")]
    WrongDegree { var: Var, expected: u32, found: u32 },
    #[error("coefficient is not rational")]
    NotRational,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Splits `p = content · primitive` with respect to `main`.
///
/// The content is free of `main`. The primitive part has coefficient gcd one
/// in (other variables)[main]; when all coefficients are rational it is
/// moreover an integer polynomial with coprime coefficients, and its leading
/// coefficient is positive.
pub fn content_and_primitive<C: Coeff>(
    p: &MultiPoly<C>,
    main: Var,
) -> Result<(MultiPoly<C>, MultiPoly<C>), PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let g = content_in(p, main)?;
    let prim = p.div_exact(&g.with_vars(p.vars())?)?;
    let rationals: Option<Vec<_>> = prim.coeffs().map(Coeff::to_rational).collect();
    let mut numeric = match rationals {
        Some(rs) => C::from_rational(rational_content(&rs)),
        None => C::one(),
    };
    if prim.leading_coeff().map_or(0, Coeff::signum) < 0 {
        numeric = numeric.negated();
    }
    let inv = numeric.inverse().ok_or(PolyError::ZeroPolynomial)?;
    Ok((g.scale(&numeric), prim.scale(&inv)))
}

/// True when the content with respect to `main` is a nonzero constant.
pub fn is_primitive_in<C: Coeff>(p: &MultiPoly<C>, main: Var) -> Result<bool, PolyError> {
    Ok(content_in(p, main)?.is_constant())
}

/// `b² − 4ac` for `p = a·v² + b·v + c`, over the remaining variables.
pub fn quadratic_discriminant<C: Coeff>(p: &MultiPoly<C>, v: Var) -> Result<MultiPoly<C>, PolyError> {
    let found = p.degree_in(v);
    if found != 2 || p.var_index(v).is_none() {
        return Err(PolyError::WrongDegree { var: v, expected: 2, found });
    }
    let cs = p.coefficients_in(v);
    let four = C::from_rational(4.into());
    let b2 = &cs[1] * &cs[1];
    let ac = (&cs[2] * &cs[0]).scale(&four);
    Ok(&b2 - &ac)
}

/// Square test with witness; see [`UniPoly::sqrt_exact`].
pub fn is_poly_square<C: Coeff>(p: &UniPoly<C>) -> Option<UniPoly<C>> {
    p.sqrt_exact()
}
