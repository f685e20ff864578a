use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::exactnum::{rational_content, Coeff, Rational, Scalar};

use super::{MultiPoly, PolyError, Var};

/// Dense univariate polynomial; `coeffs[i]` multiplies `var^i` and the
/// leading coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly<C: Coeff> {
    var: Var,
    coeffs: Vec<C>,
}

impl<C: Coeff> UniPoly<C> {
    pub fn new(var: Var, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn zero(var: Var) -> Self {
        UniPoly { var, coeffs: Vec::new() }
    }

    pub fn constant(var: Var, c: C) -> Self {
        Self::new(var, vec![c])
    }

    pub fn monomial(var: Var, c: C, e: usize) -> Self {
        let mut coeffs = vec![C::zero(); e + 1];
        coeffs[e] = c;
        Self::new(var, coeffs)
    }

    pub fn identity(var: Var) -> Self {
        Self::monomial(var, C::one(), 1)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial treated as degree 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    fn check_compatible(&self, rhs: &Self) -> Result<(), PolyError> {
        let mine = self.coeffs.iter().find_map(|c| c.radicand());
        let theirs = rhs.coeffs.iter().find_map(|c| c.radicand());
        match (mine, theirs) {
            (Some(a), Some(b)) if a != b => Err(PolyError::MixedRadicands(a, b)),
            _ => Ok(()),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_compatible(rhs)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).plus(&rhs.coeff(i))).collect();
        Ok(Self::new(self.var, coeffs))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_compatible(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Ok(Self::new(self.var, out))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(self.var, C::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.times(&C::from_rational(Rational::from_integer(i as i64))))
            .collect();
        Self::new(self.var, coeffs)
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, c| acc.times(x).plus(c))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(inner.var), |acc, c| &(&acc * inner) + &Self::constant(inner.var, c.clone()))
    }

    /// Division with remainder over the coefficient field.
    pub fn div_rem(&self, rhs: &Self) -> Result<(Self, Self), PolyError> {
        self.check_compatible(rhs)?;
        let d = rhs.degree().ok_or(PolyError::DivisionByZero)?;
        let inv = rhs.leading_coeff().inverse().ok_or(PolyError::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(self.var), self.clone()));
        }
        let mut quot = vec![C::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = rem[i + d].times(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].minus(&c.times(b));
            }
            quot[i] = c;
        }
        rem.truncate(d);
        Ok((Self::new(self.var, quot), Self::new(self.var, rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff().inverse() {
            Some(inv) if !self.is_zero() => self.scale(&inv),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor over the coefficient field.
    pub fn gcd(&self, rhs: &Self) -> Result<Self, PolyError> {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Exact polynomial square root: `Some(h)` with `h² = self` and positive
    /// leading coefficient, `None` when `self` is not a square.
    ///
    /// Odd degree or a negative leading coefficient rule a square out at
    /// once; otherwise the root is matched coefficient by coefficient from the
    /// top and verified.
    pub fn sqrt_exact(&self) -> Option<Self> {
        let Some(n) = self.degree() else {
            return Some(self.clone());
        };
        if n % 2 == 1 {
            return None;
        }
        let lc = self.leading_coeff();
        if lc.signum() < 0 {
            return None;
        }
        let m = n / 2;
        let top = lc.sqrt_exact()?;
        let two_top_inv = top.plus(&top).inverse()?;
        let mut h = vec![C::zero(); m + 1];
        h[m] = top;
        for i in (0..m).rev() {
            // coefficient of x^(m+i) in h² equals 2·h_m·h_i + Σ_{j+k=m+i, i<j,k<m} h_j h_k
            let mut acc = self.coeff(m + i);
            for j in (i + 1)..m {
                let k = m + i - j;
                if k > i && k < m {
                    acc = acc.minus(&h[j].times(&h[k]));
                }
            }
            h[i] = acc.times(&two_top_inv);
        }
        let root = Self::new(self.var, h);
        if &(&root * &root) == self {
            Some(root)
        } else {
            None
        }
    }

    pub fn is_square(&self) -> bool {
        self.sqrt_exact().is_some()
    }

    pub fn to_multi(&self) -> MultiPoly<C> {
        MultiPoly::from_terms(
            &[self.var],
            self.coeffs.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())),
        )
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> UniPoly<D> {
        UniPoly::new(self.var, self.coeffs.iter().map(f).collect())
    }

    /// Coefficient-wise conjugate.
    pub fn conjugate(&self) -> Self {
        Self::new(self.var, self.coeffs.iter().map(Coeff::conjugate).collect())
    }
}

impl UniPoly<Rational> {
    pub fn from_integers(var: Var, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn from_bigints(var: Var, coeffs: &[BigInt]) -> Self {
        Self::new(var, coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// Splits into a rational content and an integer primitive polynomial
    /// with positive leading coefficient: `self = content · primitive`.
    pub fn integer_primitive(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let mut content = rational_content(&self.coeffs);
        if self.leading_coeff().is_negative() {
            content = -content;
        }
        let prim = self
            .coeffs
            .iter()
            .map(|c| {
                let q = c.checked_div(&content).expect("content nonzero");
                debug_assert!(q.is_integer());
                q.numer().clone()
            })
            .collect();
        (content, prim)
    }

    /// True when all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    pub fn to_scalar(&self) -> UniPoly<Scalar> {
        self.map_coeffs(|c| Scalar::Rat(c.clone()))
    }
}

impl UniPoly<Scalar> {
    /// Rational view, `None` if some coefficient is irrational.
    pub fn to_rational(&self) -> Option<UniPoly<Rational>> {
        let coeffs = self.coeffs.iter().map(|c| c.as_rational().cloned()).collect::<Option<Vec<_>>>()?;
        Some(UniPoly::new(self.var, coeffs))
    }

    /// `f · f̄` where the bar conjugates every coefficient; rational whenever
    /// the coefficients share one quadratic field.
    pub fn norm(&self) -> Result<UniPoly<Rational>, PolyError> {
        let prod = self.checked_mul(&self.conjugate())?;
        prod.to_rational().ok_or(PolyError::NotRational)
    }
}

impl<C: Coeff> Add for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn add(self, rhs: Self) -> UniPoly<C> {
        self.checked_add(rhs).expect("incompatible coefficients")
    }
}

impl<C: Coeff> Sub for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn sub(self, rhs: Self) -> UniPoly<C> {
        self.checked_sub(rhs).expect("incompatible coefficients")
    }
}

impl<C: Coeff> Mul for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn mul(self, rhs: Self) -> UniPoly<C> {
        self.checked_mul(rhs).expect("incompatible coefficients")
    }
}

impl<C: Coeff> Neg for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn neg(self) -> UniPoly<C> {
        UniPoly::new(self.var, self.coeffs.iter().map(Coeff::negated).collect())
    }
}
