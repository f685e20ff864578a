use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use crate::exactnum::Coeff;

use super::{PolyError, UniPoly, Var};

/// Exponent vector aligned with the owning polynomial's variable list,
/// ordered graded-lexicographically (total degree first, then earlier
/// variables dominate).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// What a variable is replaced by in [`MultiPoly::substitute`].
#[derive(Clone, Debug)]
pub enum Binding<C: Coeff> {
    Scalar(C),
    Poly(MultiPoly<C>),
}

/// Sparse polynomial in named indeterminates.
#[derive(Clone, Debug)]
pub struct MultiPoly<C: Coeff> {
    vars: Vec<Var>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(vars: &[Var]) -> Self {
        MultiPoly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(c: C, vars: &[Var]) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; vars.len()]), c);
        }
        p
    }

    pub fn one(vars: &[Var]) -> Self {
        Self::constant(C::one(), vars)
    }

    pub fn var(v: Var) -> Self {
        let mut p = Self::zero(&[v]);
        p.terms.insert(Monomial(vec![1]), C::one());
        p
    }

    /// Sums the given terms; exponent vectors must match `vars` in length.
    pub fn from_terms(vars: &[Var], terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
            p.add_term(Monomial(exps), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.plus(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter().rev()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = &C> {
        self.terms.values()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn var_index(&self, v: Var) -> Option<usize> {
        self.vars.iter().position(|&w| w == v)
    }

    /// Variables that occur with a positive exponent, in list order.
    pub fn used_vars(&self) -> Vec<Var> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.0[*i] > 0))
            .map(|(_, &v)| v)
            .collect()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The constant coefficient (zero when absent).
    pub fn constant_term(&self) -> C {
        self.terms.get(&Monomial(vec![0; self.vars.len()])).cloned().unwrap_or_else(C::zero)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        match self.var_index(v) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Rewrites the polynomial over `vars`, which must contain every used variable.
    pub fn with_vars(&self, vars: &[Var]) -> Result<Self, PolyError> {
        let used = self.used_vars();
        if let Some(v) = used.iter().find(|v| !vars.contains(v)) {
            return Err(PolyError::MissingVariable(*v));
        }
        let map: Vec<Option<usize>> = vars.iter().map(|v| self.var_index(*v)).collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let exps = map.iter().map(|src| src.map_or(0, |i| m.0[i])).collect();
                (Monomial(exps), c.clone())
            })
            .collect();
        Ok(MultiPoly { vars: vars.to_vec(), terms })
    }

    /// Drops variables that do not occur.
    pub fn compact(&self) -> Self {
        self.with_vars(&self.used_vars()).expect("used vars are kept")
    }

    fn merged_vars(&self, rhs: &Self) -> Vec<Var> {
        let mut vars = self.vars.clone();
        for v in &rhs.vars {
            if !vars.contains(v) {
                vars.push(*v);
            }
        }
        vars
    }

    fn aligned(&self, rhs: &Self) -> (Self, Self) {
        if self.vars == rhs.vars {
            return (self.clone(), rhs.clone());
        }
        let vars = self.merged_vars(rhs);
        (self.with_vars(&vars).expect("superset"), rhs.with_vars(&vars).expect("superset"))
    }

    fn check_compatible(&self, rhs: &Self) -> Result<(), PolyError> {
        let mine = self.coeffs().find_map(|c| c.radicand());
        let theirs = rhs.coeffs().find_map(|c| c.radicand());
        if let (Some(a), Some(b)) = (mine, theirs) {
            if a != b {
                return Err(PolyError::MixedRadicands(a, b));
            }
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_compatible(rhs)?;
        let (mut a, b) = self.aligned(rhs);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        Ok(a)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_compatible(rhs)?;
        let (a, b) = self.aligned(rhs);
        let mut out = Self::zero(&a.vars);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let exps = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                out.add_term(Monomial(exps), ca.times(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v.times(c))).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        MultiPoly::from_terms(&self.vars, self.terms.iter().map(|(m, c)| (m.0.clone(), f(c))))
    }

    pub fn try_map_coeffs<D: Coeff, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<MultiPoly<D>, E> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.0.clone(), f(c)?));
        }
        Ok(MultiPoly::from_terms(&self.vars, terms))
    }

    /// Coefficients with respect to `v`, indexed by exponent. Each coefficient
    /// lives over the remaining variables.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly<C>> {
        let rest: Vec<Var> = self.vars.iter().copied().filter(|&w| w != v).collect();
        let Some(idx) = self.var_index(v) else {
            return vec![self.with_vars(&rest).expect("v unused")];
        };
        let deg = self.degree_in(v) as usize;
        let mut out = vec![MultiPoly::zero(&rest); deg + 1];
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let e = exps.remove(idx) as usize;
            out[e].terms.insert(Monomial(exps), c.clone());
        }
        out
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in): `Σ coeffs[e]·v^e`,
    /// with `v` placed last in the variable list.
    pub fn from_coefficients_in(v: Var, coeffs: &[MultiPoly<C>], rest: &[Var]) -> Result<Self, PolyError> {
        let mut vars = rest.to_vec();
        vars.retain(|&w| w != v);
        vars.push(v);
        let mut out = Self::zero(&vars);
        for (e, c) in coeffs.iter().enumerate() {
            let c = c.with_vars(&vars[..vars.len() - 1])?;
            for (m, val) in c.terms {
                let mut exps = m.0;
                exps.push(e as u32);
                out.add_term(Monomial(exps), val);
            }
        }
        Ok(out)
    }

    /// Replaces variables by scalars or polynomials. Unbound variables keep
    /// their order; variables introduced by bindings are appended.
    pub fn substitute(&self, bindings: &BTreeMap<Var, Binding<C>>) -> Result<Self, PolyError> {
        for b in bindings.values() {
            match b {
                Binding::Scalar(c) => self.check_compatible(&MultiPoly::constant(c.clone(), &[]))?,
                Binding::Poly(p) => self.check_compatible(p)?,
            }
        }
        let mut out_vars: Vec<Var> = self.vars.iter().copied().filter(|v| !bindings.contains_key(v)).collect();
        for b in bindings.values() {
            if let Binding::Poly(p) = b {
                for v in p.used_vars() {
                    if !out_vars.contains(&v) {
                        out_vars.push(v);
                    }
                }
            }
        }
        // per-variable power caches
        let mut cache: HashMap<(usize, u32), MultiPoly<C>> = HashMap::new();
        let mut out = Self::zero(&out_vars);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut free = vec![0u32; out_vars.len()];
            let mut factor: Option<MultiPoly<C>> = None;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = self.vars[i];
                match bindings.get(&v) {
                    None => {
                        let j = out_vars.iter().position(|&w| w == v).expect("unbound var kept");
                        free[j] = e;
                    }
                    Some(Binding::Scalar(s)) => {
                        for _ in 0..e {
                            coeff = coeff.times(s);
                        }
                    }
                    Some(Binding::Poly(p)) => {
                        let pw = cache
                            .entry((i, e))
                            .or_insert_with(|| p.with_vars(&out_vars).expect("vars merged").pow(e))
                            .clone();
                        factor = Some(match factor {
                            None => pw,
                            Some(f) => &f * &pw,
                        });
                    }
                }
            }
            let mono = MultiPoly::from_terms(&out_vars, [(free, coeff)]);
            let term = match factor {
                None => mono,
                Some(f) => &mono * &f,
            };
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Convenience wrapper binding every variable in `point` to a scalar.
    pub fn specialize(&self, point: &[(Var, C)]) -> Result<Self, PolyError> {
        let bindings = point.iter().map(|(v, c)| (*v, Binding::Scalar(c.clone()))).collect();
        self.substitute(&bindings)
    }

    pub fn eval_f64(&self, point: &[(Var, f64)]) -> Result<f64, PolyError> {
        let mut values = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match point.iter().find(|(w, _)| w == v) {
                Some((_, x)) => values.push(*x),
                None if self.terms.keys().all(|m| m.0[i] == 0) => values.push(0.0),
                None => return Err(PolyError::MissingVariable(*v)),
            }
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().zip(&values).fold(c.to_f64(), |acc, (&e, &x)| acc * x.powi(e as i32))
            })
            .sum())
    }

    /// Univariate view in `v`; fails when any other variable occurs.
    pub fn to_univariate(&self, v: Var) -> Result<UniPoly<C>, PolyError> {
        if let Some(other) = self.used_vars().into_iter().find(|&w| w != v) {
            return Err(PolyError::NotUnivariate(other));
        }
        let coeffs = self.coefficients_in(v).into_iter().map(|c| c.constant_term()).collect();
        Ok(UniPoly::new(v, coeffs))
    }

    /// Exact quotient `self / rhs`; errors when the division leaves a remainder.
    pub fn div_exact(&self, rhs: &Self) -> Result<Self, PolyError> {
        if rhs.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        self.check_compatible(rhs)?;
        let (mut rem, b) = self.aligned(rhs);
        let (lm, lc) = b.leading_term().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero");
        let lc_inv = lc.inverse().ok_or(PolyError::DivisionByZero)?;
        let mut quot = Self::zero(&rem.vars);
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return Err(PolyError::NotDivisible);
            }
            let exps: Vec<u32> = m.0.iter().zip(&lm.0).map(|(a, b)| a - b).collect();
            let t = MultiPoly::from_terms(&rem.vars, [(exps, c.times(&lc_inv))]);
            rem = &rem - &(&t * &b);
            quot = &quot + &t;
        }
        Ok(quot)
    }
}

impl<C: Coeff> PartialEq for MultiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let a = self.compact();
        let b = other.compact();
        if a.vars.len() != b.vars.len() || !a.vars.iter().all(|v| b.vars.contains(v)) {
            return false;
        }
        b.with_vars(&a.vars).map(|b| b.terms == a.terms).unwrap_or(false)
    }
}

impl<C: Coeff> Eq for MultiPoly<C> {}

impl<C: Coeff> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    /// Panics on mixed radicands; see [`MultiPoly::checked_add`].
    fn add(self, rhs: Self) -> MultiPoly<C> {
        self.checked_add(rhs).expect("incompatible coefficients")
    }
}

impl<C: Coeff> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        self.checked_sub(rhs).expect("incompatible coefficients")
    }
}

impl<C: Coeff> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        self.checked_mul(rhs).expect("incompatible coefficients")
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }
}

impl<C: Coeff> Add for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        &self + &rhs
    }
}

impl<C: Coeff> Sub for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}
