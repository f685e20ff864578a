//! Central angles given as exact p = cos(δ/2), as δ = q·pi, or as radians.

use std::f64::consts::PI;

use arcfan_core::exactnum::{QuadExt, Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub enum Angle {
    Exact(Scalar),
    Numeric(f64),
}

/// cos(a·π/b) for 0 ≤ a ≤ b, when it is rational or quadratic.
fn cos_pi_fraction(a: i64, b: i64) -> Option<Scalar> {
    let q = |n: i64, d: i64| Rational::new(n, d).expect("nonzero denominator");
    let quad = |r: Rational, s: Rational, d: u64| Scalar::from_quad(QuadExt::new(r, s, d).expect("valid radicand"));
    Some(match (a, b) {
        (0, _) => Scalar::int(1),
        (a, b) if a == b => Scalar::int(-1),
        (1, 2) => Scalar::int(0),
        (1, 3) => Scalar::from(q(1, 2)),
        (2, 3) => Scalar::from(q(-1, 2)),
        (1, 4) => quad(q(0, 1), q(1, 2), 2),
        (3, 4) => quad(q(0, 1), q(-1, 2), 2),
        (1, 6) => quad(q(0, 1), q(1, 2), 3),
        (5, 6) => quad(q(0, 1), q(-1, 2), 3),
        (1, 5) => quad(q(1, 4), q(1, 4), 5),
        (2, 5) => quad(q(-1, 4), q(1, 4), 5),
        (3, 5) => quad(q(1, 4), q(-1, 4), 5),
        (4, 5) => quad(q(-1, 4), q(-1, 4), 5),
        _ => return None,
    })
}

/// p = cos(q·π/2) when it is rational or lies in one quadratic field.
pub fn exact_p_for_pi_multiple(q: &Rational) -> Option<Scalar> {
    // r = q/2 reduced into [0, 2), then folded into [0, 1] by symmetry
    let r = q.checked_div(&Rational::from_integer(2)).ok()?;
    let (n, d) = (r.numer().clone(), r.denom().clone());
    let n: i64 = n.try_into().ok()?;
    let d: i64 = d.try_into().ok()?;
    let mut a = n.rem_euclid(2 * d);
    if a > d {
        a = 2 * d - a;
    }
    let g = num_gcd(a, d);
    cos_pi_fraction(a / g, d / g)
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs().max(1)
    } else {
        num_gcd(b, a % b)
    }
}

/// Parses δ as `pi`, `q*pi`, `q pi`, `qpi` (q rational) or plain radians.
pub fn parse_delta(text: &str) -> Result<Angle, String> {
    let t = text.trim().replace(' ', "");
    if let Some(coef) = t.strip_suffix("pi") {
        let coef = coef.trim_end_matches('*');
        let q: Rational = if coef.is_empty() {
            Rational::one()
        } else if coef == "-" {
            -Rational::one()
        } else {
            coef.parse().map_err(|_| format!("cannot parse the multiple of pi in {text:?}"))?
        };
        return Ok(match exact_p_for_pi_multiple(&q) {
            Some(p) => Angle::Exact(p),
            None => Angle::Numeric(q.to_f64() * PI),
        });
    }
    t.parse::<f64>().map(Angle::Numeric).map_err(|_| format!("cannot parse angle {text:?}"))
}
