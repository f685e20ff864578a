//! Polynomial families attached to n-fans: the multiple-angle polynomial
//! G_k, the equal-distance quadratics P(e) and P(o), the 2-fan closed forms,
//! the 3-fan sextic h, and certificates built from them.

mod certificate;
mod elim;

pub use certificate::{certify_nonconstructible, family_residual, Certificate, CertificateVerdict, Pattern};
pub use elim::{eliminate_three_fan, is_even_in};

use std::fmt;

use num_integer::binomial;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{Coeff, NumError, Rational, Scalar};
use crate::fangeom::GeomError;
use crate::irreducibility::IrrError;
use crate::poly::{MultiPoly, PolyError, UniPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("k must be an odd integer at least 3, got {0}")]
    Parity(u32),
    #[error("k must be positive")]
    ZeroK,
    #[error("p = {0} must lie in the open interval (-1, 1)")]
    AngleRange(String),
    #[error("p = 0 (central angle pi) is excluded for this family")]
    StraightAngle,
    #[error("{0} must be positive")]
    NonPositive(String),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Irr(#[from] IrrError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// `G_k(u)` with `cos(kα) = G_k(cos α)`, expanded over Z.
pub fn cos_multiple_angle(k: u32) -> Result<UniPoly<Rational>, FanError> {
    if k == 0 {
        return Err(FanError::ZeroK);
    }
    let u = UniPoly::identity(Var::U);
    let one_minus_u2 = &UniPoly::constant(Var::U, Rational::one()) - &u.pow(2);
    let mut g = UniPoly::zero(Var::U);
    for j in (0..=k).step_by(2) {
        let sign = if (j / 2) % 2 == 0 { 1 } else { -1 };
        let c = Rational::from_integer(sign * binomial(k as i64, j as i64));
        let term = (&u.pow(k - j) * &one_minus_u2.pow(j / 2)).scale(&c);
        g = &g + &term;
    }
    Ok(g)
}

/// The cosine of the half central angle, either a concrete number or the
/// indeterminate `w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleParam {
    Exact(Scalar),
    Symbolic,
}

impl AngleParam {
    fn as_poly(&self) -> MultiPoly<Scalar> {
        match self {
            AngleParam::Exact(p) => MultiPoly::constant(p.clone(), &[]),
            AngleParam::Symbolic => MultiPoly::var(Var::W),
        }
    }
}

impl fmt::Display for AngleParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AngleParam::Exact(p) => write!(f, "{p}"),
            AngleParam::Symbolic => f.write_str("w"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    EvenCase,
    OddCase,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanAnglePoly {
    pub k: u32,
    pub parity: Parity,
    pub p: AngleParam,
    /// Polynomial in x (= u) and y; in the odd case y stands for c².
    pub poly: MultiPoly<Scalar>,
}

fn check_family_args(k: u32, p: &AngleParam) -> Result<(), FanError> {
    if k < 3 || k % 2 == 0 {
        return Err(FanError::Parity(k));
    }
    if let AngleParam::Exact(v) = p {
        if !v.in_open_unit_interval() {
            return Err(FanError::AngleRange(v.to_string()));
        }
        if v.is_zero() {
            return Err(FanError::StraightAngle);
        }
    }
    Ok(())
}

fn g_in_x(k: u32) -> Result<MultiPoly<Scalar>, FanError> {
    let g = cos_multiple_angle(k)?.with_var(Var::X);
    Ok(g.to_multi().map_coeffs(|c| Scalar::from(c.clone())))
}

fn scalar(n: i64) -> MultiPoly<Scalar> {
    MultiPoly::constant(Scalar::int(n), &[])
}

/// `x²y² − 2p·x·G_k(x)·y + (G_k(x)² + p² − 1)`: fans (1, …, 1, c) with k
/// unit distances, x = u = 1/r, y = c.
pub fn build_even_poly(k: u32, p: &AngleParam) -> Result<FanAnglePoly, FanError> {
    check_family_args(k, p)?;
    let x = MultiPoly::var(Var::X);
    let y = MultiPoly::var(Var::Y);
    let g = g_in_x(k)?;
    let pp = p.as_poly();
    let a = x.pow(2).checked_mul(&y.pow(2))?;
    let b = scalar(2).checked_mul(&pp)?.checked_mul(&x)?.checked_mul(&g)?.checked_mul(&y)?;
    let c = g.pow(2).checked_add(&pp.pow(2))?.checked_sub(&scalar(1))?;
    let poly = a.checked_sub(&b)?.checked_add(&c)?;
    Ok(FanAnglePoly { k, parity: Parity::EvenCase, p: p.clone(), poly: order_vars(poly)? })
}

/// `4x⁴y² − (4p·x²·G_k(x) + 4x²)·y + (p + G_k(x))²`: fans (1, …, 1, c, c)
/// with k unit distances, x = u = 1/r, y = c².
pub fn build_odd_poly(k: u32, p: &AngleParam) -> Result<FanAnglePoly, FanError> {
    check_family_args(k, p)?;
    let x = MultiPoly::var(Var::X);
    let y = MultiPoly::var(Var::Y);
    let g = g_in_x(k)?;
    let pp = p.as_poly();
    let a = scalar(4).checked_mul(&x.pow(4))?.checked_mul(&y.pow(2))?;
    let b = scalar(4)
        .checked_mul(&pp)?
        .checked_mul(&x.pow(2))?
        .checked_mul(&g)?
        .checked_add(&scalar(4).checked_mul(&x.pow(2))?)?
        .checked_mul(&y)?;
    let c = pp.checked_add(&g)?.pow(2);
    let poly = a.checked_sub(&b)?.checked_add(&c)?;
    Ok(FanAnglePoly { k, parity: Parity::OddCase, p: p.clone(), poly: order_vars(poly)? })
}

fn order_vars(p: MultiPoly<Scalar>) -> Result<MultiPoly<Scalar>, PolyError> {
    let mut vars = vec![Var::X, Var::Y];
    if p.var_index(Var::W).is_some() {
        vars.push(Var::W);
    }
    p.compact().with_vars(&vars)
}

fn check_open_unit(p: &Scalar) -> Result<(), FanError> {
    if p.in_open_unit_interval() {
        Ok(())
    } else {
        Err(FanError::AngleRange(p.to_string()))
    }
}

fn check_positive(v: &Scalar, name: &str) -> Result<(), FanError> {
    if v.signum() > 0 {
        Ok(())
    } else {
        Err(FanError::NonPositive(format!("{name} = {v}")))
    }
}

/// u² = (1 − p²)/(c² − 2pc + 1) for the 2-fan (1, c), u = 1/r.
pub fn two_fan_u_squared(p: &Scalar, c: &Scalar) -> Result<Scalar, FanError> {
    check_open_unit(p)?;
    check_positive(c, "c")?;
    let num = Scalar::one().checked_sub(&p.square())?;
    let den = c.square().checked_sub(&Scalar::int(2).checked_mul(p)?.checked_mul(c)?)?.checked_add(&Scalar::one())?;
    Ok(num.checked_div(&den)?)
}

/// x = u² = (1 − p²)/(a₂² + 2p·a₂ + 1) for side lengths (1, a₂), u = 1/(2r).
pub fn side_length_two_fan(p: &Scalar, a2: &Scalar) -> Result<Scalar, FanError> {
    check_open_unit(p)?;
    check_positive(a2, "a2")?;
    let num = Scalar::one().checked_sub(&p.square())?;
    let den = a2.square().checked_add(&Scalar::int(2).checked_mul(p)?.checked_mul(a2)?)?.checked_add(&Scalar::one())?;
    Ok(num.checked_div(&den)?)
}

#[cfg(test)]
mod tests;
