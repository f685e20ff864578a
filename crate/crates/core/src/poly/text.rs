//! Canonical text form and the JSON term-list form.
//!
//! Text: terms in descending graded-lex order joined by ` + ` / ` - `, each
//! written `coeff*v1^e1*v2^e2` with unit coefficients and unit exponents
//! omitted, e.g. `20736*x^6 - 225792*x^5 + 256`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactnum::{square_part, Coeff, NumError, QuadExt, Rational, Scalar};

use super::{MultiPoly, PolyError, UniPoly, Var};

fn format_terms<'a, C: Coeff>(
    f: &mut fmt::Formatter<'_>,
    vars: &[Var],
    terms: impl Iterator<Item = (&'a [u32], &'a C)>,
) -> fmt::Result {
    let mut first = true;
    for (exps, c) in terms {
        let mono: Vec<String> = vars
            .iter()
            .zip(exps)
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        let mono = mono.join("*");
        let text = if mono.is_empty() {
            if c.is_compound() {
                format!("({c})")
            } else {
                c.to_string()
            }
        } else if c.is_one() {
            mono
        } else if c.negated().is_one() {
            format!("-{mono}")
        } else if c.is_compound() {
            format!("({c})*{mono}")
        } else {
            format!("{c}*{mono}")
        };
        if first {
            f.write_str(&text)?;
            first = false;
        } else if let Some(rest) = text.strip_prefix('-') {
            write!(f, " - {rest}")?;
        } else {
            write!(f, " + {text}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, self.vars(), self.terms().map(|(m, c)| (m.0.as_slice(), c)))
    }
}

impl<C: Coeff> fmt::Display for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = [self.var()];
        let exps: Vec<[u32; 1]> = (0..self.coeffs().len()).map(|i| [i as u32]).collect();
        let terms = self
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (exps[i].as_slice(), c));
        format_terms(f, &var, terms)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Rational),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>, PolyError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            let r = lit.parse::<Rational>().map_err(|_| PolyError::Parse(format!("bad number `{lit}`")))?;
            out.push(Token::Num(r));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(PolyError::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    seen_vars: Vec<Var>,
}

type P = MultiPoly<Scalar>;

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_op(&mut self, op: char) -> Result<(), PolyError> {
        if self.eat_op(op) {
            Ok(())
        } else {
            Err(PolyError::Parse(format!("expected `{op}`")))
        }
    }

    fn expr(&mut self) -> Result<P, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat_op('-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<P, PolyError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                acc = acc.checked_mul(&self.unary()?)?;
            } else if self.eat_op('/') {
                let rhs = self.unary()?;
                if !rhs.is_constant() {
                    return Err(PolyError::Parse("division by a non-constant".into()));
                }
                let inv = rhs.constant_term().inverse().ok_or(PolyError::DivisionByZero)?;
                acc = acc.checked_mul(&P::constant(inv, &[]))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<P, PolyError> {
        if self.eat_op('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<P, PolyError> {
        let base = self.atom()?;
        if self.eat_op('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Num(n)) if n.is_integer() && !n.is_negative() => {
                    self.pos += 1;
                    let e: u32 = n.numer().try_into().map_err(|_| PolyError::Parse("exponent too large".into()))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(PolyError::Parse("expected a non-negative integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<P, PolyError> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(P::constant(Scalar::Rat(n), &[]))
            }
            Some(Token::Ident(name)) if name == "sqrt" => {
                self.pos += 1;
                self.expect_op('(')?;
                let inner = self.expr()?;
                self.expect_op(')')?;
                let value = if inner.is_constant() { inner.constant_term().as_rational().cloned() } else { None };
                let value = value.ok_or_else(|| PolyError::Parse("sqrt needs a rational constant".into()))?;
                Ok(P::constant(sqrt_rational(&value)?, &[]))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let v: Var = name.parse().map_err(PolyError::Parse)?;
                if !self.seen_vars.contains(&v) {
                    self.seen_vars.push(v);
                }
                Ok(P::var(v))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_op(')')?;
                Ok(e)
            }
            other => Err(PolyError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn sqrt_rational(r: &Rational) -> Result<Scalar, PolyError> {
    if r.is_negative() {
        return Err(PolyError::Parse("square root of a negative number".into()));
    }
    if let Some(s) = r.sqrt_exact() {
        return Ok(Scalar::Rat(s));
    }
    // √(a/b) = √(a·b)/b
    let n = r.numer() * r.denom();
    let n: u64 = (&n).try_into().map_err(|_| PolyError::Parse("radicand too large".into()))?;
    let (s, f) = square_part(n);
    let coeff = Rational::new(BigInt::from(s), r.denom().clone()).map_err(PolyError::Num)?;
    Ok(Scalar::Quad(QuadExt::new(Rational::zero(), coeff, f).map_err(PolyError::Num)?))
}

/// Parses polynomial text. Variables are ordered by first appearance.
pub fn parse_poly(s: &str) -> Result<MultiPoly<Scalar>, PolyError> {
    let mut parser = Parser { tokens: tokenize(s)?, pos: 0, seen_vars: Vec::new() };
    if parser.tokens.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(PolyError::Parse(format!("trailing input in `{s}`")));
    }
    p.with_vars(&parser.seen_vars)
}

/// Parses polynomial text over an explicit variable list.
pub fn parse_poly_in(s: &str, vars: &[Var]) -> Result<MultiPoly<Scalar>, PolyError> {
    parse_poly(s)?.with_vars(vars)
}

pub fn parse_scalar(s: &str) -> Result<Scalar, NumError> {
    let p = parse_poly(s).map_err(|_| NumError::Parse(s.to_string()))?;
    if !p.is_constant() {
        return Err(NumError::Parse(s.to_string()));
    }
    Ok(p.constant_term())
}

/// Converts the coefficients of a parsed polynomial into `C`.
pub fn convert_coeffs<C: Coeff>(p: &MultiPoly<Scalar>) -> Result<MultiPoly<C>, PolyError> {
    p.try_map_coeffs(|c| C::from_scalar(c.clone()).ok_or(PolyError::NotRational))
}

/// Parses a univariate polynomial in `var`.
pub fn parse_uni<C: Coeff>(s: &str, var: Var) -> Result<UniPoly<C>, PolyError> {
    let p = parse_poly(s)?;
    convert_coeffs::<C>(&p)?.to_univariate(var)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exponents: Vec<u32>,
}

/// JSON term-list form: variable list plus terms in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermListJson {
    pub vars: Vec<Var>,
    pub terms: Vec<TermJson>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn to_term_list(&self) -> TermListJson {
        TermListJson {
            vars: self.vars().to_vec(),
            terms: self
                .terms()
                .map(|(m, c)| TermJson { coeff: c.to_string(), exponents: m.0.clone() })
                .collect(),
        }
    }

    pub fn from_term_list(list: &TermListJson) -> Result<Self, PolyError> {
        let mut terms = Vec::with_capacity(list.terms.len());
        for t in &list.terms {
            if t.exponents.len() != list.vars.len() {
                return Err(PolyError::Parse("exponent vector length mismatch".into()));
            }
            let s: Scalar = t.coeff.parse().map_err(PolyError::Num)?;
            let c = C::from_scalar(s).ok_or(PolyError::NotRational)?;
            terms.push((t.exponents.clone(), c));
        }
        Ok(MultiPoly::from_terms(&list.vars, terms))
    }
}

impl<C: Coeff> Serialize for MultiPoly<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for MultiPoly<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let p = parse_poly(&s).map_err(serde::de::Error::custom)?;
        convert_coeffs(&p).map_err(serde::de::Error::custom)
    }
}

impl<C: Coeff> Serialize for UniPoly<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for UniPoly<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let p = parse_poly(&s).map_err(serde::de::Error::custom)?;
        let var = p.used_vars().first().copied().unwrap_or(Var::X);
        convert_coeffs::<C>(&p).and_then(|p| p.to_univariate(var)).map_err(serde::de::Error::custom)
    }
}
