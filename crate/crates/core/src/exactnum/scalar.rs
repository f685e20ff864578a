use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{NumError, QuadExt, Rational};

/// Coefficient ring used by the polynomial types.
///
/// The arithmetic methods are infallible. For [`Scalar`] they panic when two
/// irrational values with different radicands meet; the polynomial layer
/// checks compatibility first and reports it as an error.
pub trait Coeff: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn from_rational(r: Rational) -> Self;
    /// `None` when `s` does not lie in this coefficient ring.
    fn from_scalar(s: Scalar) -> Option<Self>;
    fn to_rational(&self) -> Option<Rational>;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    /// Radicand of the quadratic field this value lives in, `None` when rational.
    fn radicand(&self) -> Option<u64>;
    /// Sign of the value under the real embedding.
    fn signum(&self) -> i32;
    fn to_f64(&self) -> f64;
    fn sqrt_exact(&self) -> Option<Self>;
    fn conjugate(&self) -> Self;
    /// True when the printed form needs parentheses inside a product.
    fn is_compound(&self) -> bool;

    fn compatible(&self, rhs: &Self) -> bool {
        match (self.radicand(), rhs.radicand()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn from_scalar(s: Scalar) -> Option<Self> {
        s.as_rational().cloned()
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.recip().ok()
    }
    fn radicand(&self) -> Option<u64> {
        None
    }
    fn signum(&self) -> i32 {
        Rational::signum(self)
    }
    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }
    fn sqrt_exact(&self) -> Option<Self> {
        Rational::sqrt_exact(self)
    }
    fn conjugate(&self) -> Self {
        self.clone()
    }
    fn is_compound(&self) -> bool {
        false
    }
}

/// A rational number or an irrational element of some Q(√d). Values with a
/// zero radical part are always normalised to [`Scalar::Rat`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Quad(QuadExt),
}

impl Scalar {
    pub fn from_quad(q: QuadExt) -> Self {
        if q.is_rational() {
            Scalar::Rat(q.rational_part().clone())
        } else {
            Scalar::Quad(q)
        }
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rat(Rational::from_integer(n))
    }

    fn lift(&self, d: u64) -> QuadExt {
        match self {
            Scalar::Rat(r) => QuadExt::from_rational(r.clone(), d).expect("radicand already validated"),
            Scalar::Quad(q) => q.clone(),
        }
    }

    fn combine(
        &self,
        rhs: &Scalar,
        rat: impl FnOnce(&Rational, &Rational) -> Result<Rational, NumError>,
        quad: impl FnOnce(&QuadExt, &QuadExt) -> Result<QuadExt, NumError>,
    ) -> Result<Scalar, NumError> {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(rat(a, b)?)),
            (Scalar::Quad(a), b) => Ok(Scalar::from_quad(quad(a, &b.lift(a.radicand()))?)),
            (a, Scalar::Quad(b)) => Ok(Scalar::from_quad(quad(&a.lift(b.radicand()), b)?)),
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar, NumError> {
        self.combine(rhs, |a, b| Ok(a + b), |a, b| a.checked_add(b))
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar, NumError> {
        self.combine(rhs, |a, b| Ok(a - b), |a, b| a.checked_sub(b))
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar, NumError> {
        self.combine(rhs, |a, b| Ok(a * b), |a, b| a.checked_mul(b))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, NumError> {
        self.combine(rhs, |a, b| a.checked_div(b), |a, b| a.checked_div(b))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Quad(_) => None,
        }
    }

    /// Exact square, used for the many places where only `p²` matters.
    pub fn square(&self) -> Scalar {
        self.times(self)
    }

    /// Whether the value lies strictly between −1 and 1.
    pub fn in_open_unit_interval(&self) -> bool {
        let one = Scalar::int(1);
        one.minus(self).signum() > 0 && self.plus(&one).signum() > 0
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::Rat(Rational::zero())
    }
    fn one() -> Self {
        Scalar::Rat(Rational::one())
    }
    fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }
    fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }
    fn from_rational(r: Rational) -> Self {
        Scalar::Rat(r)
    }
    fn from_scalar(s: Scalar) -> Option<Self> {
        Some(s)
    }
    fn to_rational(&self) -> Option<Rational> {
        self.as_rational().cloned()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("mixed radicands")
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("mixed radicands")
    }
    fn times(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("mixed radicands")
    }
    fn negated(&self) -> Self {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Quad(q) => Scalar::Quad(q.neg()),
        }
    }
    fn inverse(&self) -> Option<Self> {
        match self {
            Scalar::Rat(r) => r.recip().ok().map(Scalar::Rat),
            Scalar::Quad(q) => q.inverse().ok().map(Scalar::from_quad),
        }
    }
    fn radicand(&self) -> Option<u64> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Quad(q) => Some(q.radicand()),
        }
    }
    fn signum(&self) -> i32 {
        match self {
            Scalar::Rat(r) => r.signum(),
            Scalar::Quad(q) => q.signum(),
        }
    }
    fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rat(r) => r.to_f64(),
            Scalar::Quad(q) => q.to_f64(),
        }
    }
    fn sqrt_exact(&self) -> Option<Self> {
        match self {
            Scalar::Rat(r) => r.sqrt_exact().map(Scalar::Rat),
            Scalar::Quad(q) => q.sqrt_exact().map(Scalar::from_quad),
        }
    }
    fn conjugate(&self) -> Self {
        match self {
            Scalar::Rat(_) => self.clone(),
            Scalar::Quad(q) => Scalar::Quad(q.conjugate()),
        }
    }
    fn is_compound(&self) -> bool {
        match self {
            Scalar::Rat(_) => false,
            Scalar::Quad(q) => !q.rational_part().is_zero(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => fmt::Display::fmt(r, f),
            Scalar::Quad(q) => fmt::Display::fmt(q, f),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = NumError;

    /// Accepts `a/b`, `a/b+c/e*sqrt(d)`, `a/b*sqrt(d)/c` and similar
    /// arithmetic over rationals and square roots of integers.
    fn from_str(s: &str) -> Result<Self, NumError> {
        crate::poly::parse_scalar(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn mixed_rational_and_quadratic() {
        let r2 = s("sqrt(2)");
        assert_eq!(r2.times(&r2), s("2"));
        assert_eq!(s("1/2").plus(&r2).to_string(), "1/2+sqrt(2)");
        assert!(s("sqrt(2)").checked_add(&s("sqrt(3)")).is_err());
    }

    #[test]
    fn parses_cli_forms() {
        assert_eq!(s("2*sqrt(2)/3"), s("2/3*sqrt(2)"));
        assert_eq!(s("1/2+3/4*sqrt(2)").to_string(), "1/2+3/4*sqrt(2)");
        assert_eq!(s("sqrt(8)"), s("2*sqrt(2)"));
        assert_eq!(s("sqrt(9)/6"), s("1/2"));
        assert_eq!(s("-1/2"), Scalar::Rat("-1/2".parse().unwrap()));
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn unit_interval() {
        assert!(s("1/2").in_open_unit_interval());
        assert!(s("-sqrt(2)/2").in_open_unit_interval());
        assert!(!s("1").in_open_unit_interval());
        assert!(!s("-1").in_open_unit_interval());
    }

    #[test]
    fn json_round_trip() {
        let v = s("1/3-2/5*sqrt(7)");
        let j = serde_json::to_string(&v).unwrap();
        assert_eq!(j, "\"1/3-2/5*sqrt(7)\"");
        let back: Scalar = serde_json::from_str(&j).unwrap();
        assert_eq!(back, v);
    }
}
