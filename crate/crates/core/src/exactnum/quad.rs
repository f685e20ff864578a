use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;

use super::{NumError, Rational};

/// Element `a + b·√d` of the real quadratic field Q(√d), `d` square-free and
/// at least 2. The square root is the positive real one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    d: u64,
    a: Rational,
    b: Rational,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self, NumError> {
        if d < 2 || !is_square_free(d) {
            return Err(NumError::InvalidRadicand(d));
        }
        Ok(QuadExt { d, a, b })
    }

    pub fn from_rational(a: Rational, d: u64) -> Result<Self, NumError> {
        Self::new(a, Rational::zero(), d)
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn radical_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QuadExt { d: self.d, a: self.a.clone(), b: -&self.b }
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(self.d) * &self.b * &self.b
    }

    fn check(&self, rhs: &QuadExt) -> Result<(), NumError> {
        if self.d != rhs.d {
            return Err(NumError::RadicandMismatch(self.d, rhs.d));
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &QuadExt) -> Result<QuadExt, NumError> {
        self.check(rhs)?;
        Ok(QuadExt { d: self.d, a: &self.a + &rhs.a, b: &self.b + &rhs.b })
    }

    pub fn checked_sub(&self, rhs: &QuadExt) -> Result<QuadExt, NumError> {
        self.check(rhs)?;
        Ok(QuadExt { d: self.d, a: &self.a - &rhs.a, b: &self.b - &rhs.b })
    }

    pub fn checked_mul(&self, rhs: &QuadExt) -> Result<QuadExt, NumError> {
        self.check(rhs)?;
        let d = Rational::from_integer(self.d);
        Ok(QuadExt {
            d: self.d,
            a: &self.a * &rhs.a + d * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        })
    }

    pub fn inverse(&self) -> Result<QuadExt, NumError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let conj = self.conjugate();
        Ok(QuadExt { d: self.d, a: conj.a.checked_div(&n)?, b: conj.b.checked_div(&n)? })
    }

    pub fn checked_div(&self, rhs: &QuadExt) -> Result<QuadExt, NumError> {
        self.check(rhs)?;
        self.checked_mul(&rhs.inverse()?)
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt { d: self.d, a: -&self.a, b: -&self.b }
    }

    pub fn scale(&self, r: &Rational) -> QuadExt {
        QuadExt { d: self.d, a: &self.a * r, b: &self.b * r }
    }

    /// Sign of the real number `a + b√d`, decided exactly.
    pub fn signum(&self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with d·b²
        let lhs = &self.a * &self.a;
        let rhs = Rational::from_integer(self.d) * &self.b * &self.b;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * (self.d as f64).sqrt()
    }

    /// Square root inside Q(√d), if one exists.
    pub fn sqrt_exact(&self) -> Option<QuadExt> {
        if self.signum() < 0 {
            return None;
        }
        let d = Rational::from_integer(self.d);
        if self.b.is_zero() {
            if let Some(r) = self.a.sqrt_exact() {
                return Some(QuadExt { d: self.d, a: r, b: Rational::zero() });
            }
            // a = d·y²
            let y = self.a.checked_div(&d).ok()?.sqrt_exact()?;
            return Some(QuadExt { d: self.d, a: Rational::zero(), b: y });
        }
        // (x + y√d)² = x² + d y² + 2xy√d; x² is a root of t² − a t + d b²/4
        let root_n = self.norm().sqrt_exact()?;
        let half = Rational::new(1, 2).expect("nonzero");
        for cand in [(&self.a + &root_n) * &half, (&self.a - &root_n) * &half] {
            if let Some(x) = cand.sqrt_exact() {
                if x.is_zero() {
                    continue;
                }
                let y = self.b.checked_div(&(&x + &x)).ok()?;
                let r = QuadExt { d: self.d, a: x, b: y };
                if r.checked_mul(&r).ok()? == *self {
                    return Some(r);
                }
            }
        }
        None
    }
}

/// Writes `n = s²·f` with `f` square-free; returns `(s, f)`. Trial division
/// up to `√n`.
pub fn square_part(n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut f = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            f *= p;
        }
        p += 1;
    }
    (s, f * m)
}

pub fn is_square_free(n: u64) -> bool {
    n != 0 && square_part(n).0 == 1
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let radical = |f: &mut fmt::Formatter<'_>, b: &Rational| -> fmt::Result {
            if b.is_one() {
                write!(f, "sqrt({})", self.d)
            } else if (-b).is_one() {
                write!(f, "-sqrt({})", self.d)
            } else {
                write!(f, "{}*sqrt({})", b, self.d)
            }
        };
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return radical(f, &self.b);
        }
        write!(f, "{}", self.a)?;
        if self.b.is_positive() {
            write!(f, "+")?;
        }
        radical(f, &self.b)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `i^(1/m) / j` for `m ∈ {1, 2}`, with `1 ≤ j` and `1 ≤ i < j^m`.
pub fn rationalize_radicand(i: u64, j: u64, m: u32) -> Result<super::Scalar, NumError> {
    if m != 1 && m != 2 {
        return Err(NumError::OutOfRange(format!("root index m={m} must be 1 or 2")));
    }
    if j < 1 || i < 1 || (i as u128) >= (j as u128).pow(m) {
        return Err(NumError::OutOfRange(format!("need 1 <= j and 1 <= i < j^{m}, got i={i}, j={j}")));
    }
    let jr = BigInt::from(j);
    if m == 1 {
        return Ok(super::Scalar::Rat(Rational::new(i, jr)?));
    }
    let (s, f) = square_part(i);
    let coeff = Rational::new(s, jr)?;
    if f == 1 {
        Ok(super::Scalar::Rat(coeff))
    } else {
        Ok(super::Scalar::Quad(QuadExt::new(Rational::zero(), coeff, f)?))
    }
}
