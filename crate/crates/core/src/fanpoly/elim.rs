//! The 3-fan sextic h(y, z, w, x), obtained by squaring away the odd sine
//! powers in cos²(α + β) = cos²(δ' − γ).

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::exactnum::Rational;
use crate::poly::{Binding, MultiPoly, PolyError, Var};

const CA: Var = Var::Aux(0);
const SA: Var = Var::Aux(1);
const CB: Var = Var::Aux(2);
const SB: Var = Var::Aux(3);
const CG: Var = Var::Aux(4);
const SG: Var = Var::Aux(5);
const CD: Var = Var::Aux(6);
const SD: Var = Var::Aux(7);

type P = MultiPoly<Rational>;

fn v(x: Var) -> P {
    MultiPoly::var(x)
}

fn k(n: i64) -> P {
    MultiPoly::constant(Rational::from_integer(n), &[])
}

/// Replaces `var^(2m)` by `new^m`; fails if `var` occurs to an odd power.
fn halve_exponent(p: &P, var: Var, new: Var) -> Result<P, PolyError> {
    let Some(i) = p.var_index(var) else { return Ok(p.clone()) };
    let mut vars = p.vars().to_vec();
    vars[i] = new;
    let mut terms = Vec::with_capacity(p.num_terms());
    for (m, c) in p.terms() {
        let mut e = m.0.clone();
        if e[i] % 2 == 1 {
            return Err(PolyError::WrongDegree { var, expected: e[i] + 1, found: e[i] });
        }
        e[i] /= 2;
        terms.push((e, c.clone()));
    }
    Ok(MultiPoly::from_terms(&vars, terms))
}

fn compute() -> Result<P, PolyError> {
    let (ca, sa, cb, sb) = (v(CA), v(SA), v(CB), v(SB));
    let (cg, sg, cd, sd) = (v(CG), v(SG), v(CD), v(SD));

    let h1 = (&ca * &cb - &sa * &sb).pow(2) - (&cd * &cg + &sd * &sg).pow(2);
    let s1 = &k(2) * &(&(&ca * &cb) * &(&sa * &sb)) + &k(2) * &(&(&cd * &cg) * &(&sd * &sg));
    let h2 = (&h1 + &s1).pow(2) - s1.pow(2);
    let s2 = &k(8) * &(&(&(&ca * &cb) * &(&sa * &sb)) * &(&(&cd * &cg) * &(&sd * &sg)));
    let h3 = (&h2 + &s2).pow(2) - s2.pow(2);

    // sin² → 1 − cos²; every sine now appears to an even power
    let mut h4 = h3;
    let mut bindings = BTreeMap::new();
    for (s, c) in [(SA, CA), (SB, CB), (SG, CG), (SD, CD)] {
        h4 = halve_exponent(&h4, s, s)?;
        bindings.insert(s, Binding::Poly(&k(1) - &v(c).pow(2)));
    }
    let h4 = h4.substitute(&bindings)?;

    // cos α = y·u, cos β = z·u, cos γ = u, cos δ' = w
    let u = v(Var::U);
    let mut b = BTreeMap::new();
    b.insert(CA, Binding::Poly(&v(Var::Y) * &u));
    b.insert(CB, Binding::Poly(&v(Var::Z) * &u));
    b.insert(CG, Binding::Poly(u.clone()));
    b.insert(CD, Binding::Poly(v(Var::W)));
    let h5 = h4.substitute(&b)?.compact();

    let h = halve_exponent(&h5, Var::U, Var::X)?;
    h.with_vars(&[Var::Y, Var::Z, Var::W, Var::X])
}

/// h(y, z, w, x) over Z: for the 3-fan with central distances (y, z, 1) and
/// cos(δ/2) = w, the square x = u² of u = 1/r is a root. Computed once.
pub fn eliminate_three_fan() -> &'static MultiPoly<Rational> {
    static H: OnceLock<MultiPoly<Rational>> = OnceLock::new();
    H.get_or_init(|| compute().expect("elimination leaves only even powers"))
}

/// True when every monomial of `p` has an even exponent of `var`.
pub fn is_even_in(p: &MultiPoly<Rational>, var: Var) -> bool {
    match p.var_index(var) {
        None => true,
        Some(i) => p.terms().all(|(m, c)| c.is_zero() || m.0[i] % 2 == 0),
    }
}
