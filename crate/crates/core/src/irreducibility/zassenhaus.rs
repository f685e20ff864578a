//! Complete factorization of integer polynomials: squarefree decomposition,
//! factorization modulo a prime, quadratic Hensel lifting and subset
//! recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::zp::{self, Zp};
use crate::exactnum::Rational;
use crate::poly::{UniPoly, Var};

/// Integer polynomial, ascending coefficients.
pub type ZPoly = Vec<BigInt>;

pub fn ztrim(mut f: ZPoly) -> ZPoly {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    ztrim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()).collect())
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    ztrim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect())
}

/// Symmetric residues in (−m/2, m/2].
fn zmods(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division by a monic polynomial, exact over Z.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt]) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i - db + j] -= &c * bj;
        }
        q[i - db] = c;
    }
    r.truncate(db);
    (ztrim(q), ztrim(r))
}

/// Exact division in Z[x]; `None` when `b` does not divide `a`.
pub fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len().checked_sub(1)?;
    let lc = &b[db];
    let mut r = a.to_vec();
    if r.len() <= db {
        return if ztrim(r).is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let (c, rem) = r[i].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i - db + j] -= &c * bj;
        }
        q[i - db] = c;
    }
    if r[..db].iter().all(Zero::is_zero) {
        Some(ztrim(q))
    } else {
        None
    }
}

fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(f: &[BigInt]) -> ZPoly {
    let c = content(f);
    if c.is_zero() {
        return Vec::new();
    }
    let c = if f.last().is_some_and(Signed::is_negative) { -c } else { c };
    f.iter().map(|x| x / &c).collect()
}

fn lift_zp(f: &Zp) -> ZPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

pub fn to_uni(f: &[BigInt], var: Var) -> UniPoly<Rational> {
    UniPoly::from_bigints(var, f)
}

/// Yun's algorithm on a primitive polynomial: squarefree primitive parts
/// with their multiplicities (trivial parts omitted).
pub fn squarefree_decomposition(f: &[BigInt]) -> Vec<(ZPoly, u32)> {
    let q = to_uni(f, Var::X);
    let d = q.derivative();
    let mut out = Vec::new();
    let a0 = q.gcd(&d).expect("nonzero");
    if a0.deg() == 0 {
        return vec![(primitive(f), 1)];
    }
    let mut b = q.div_rem(&a0).expect("nonzero").0;
    let mut c = d.div_rem(&a0).expect("nonzero").0;
    let mut e = c.checked_sub(&b.derivative()).expect("same field");
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&e).expect("nonzero");
        if a.deg() > 0 {
            out.push((primitive(&a.integer_primitive().1), i));
        }
        b = b.div_rem(&a).expect("nonzero").0;
        c = e.div_rem(&a).expect("nonzero").0;
        e = c.checked_sub(&b.derivative()).expect("same field");
        i += 1;
    }
    out
}

fn norm2_ceil(f: &[BigInt]) -> BigInt {
    let s: BigInt = f.iter().map(|c| c * c).sum();
    s.sqrt() + 1
}

/// One quadratic Hensel step: from f ≡ g·h, s·g + t·h ≡ 1 (mod m) with h
/// monic, produce the same data modulo m².
fn hensel_step(f: &[BigInt], g: &ZPoly, h: &ZPoly, s: &ZPoly, t: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zmods(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = zdivrem_monic(&zmods(&zmul(s, &e), &m2), h);
    let q = zmods(&q, &m2);
    let g1 = zmods(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &m2);
    let h1 = zmods(&zadd(h, &r), &m2);

    let b = zmods(&zsub(&zadd(&zmul(s, &g1), &zmul(t, &h1)), &[BigInt::one()]), &m2);
    let (c, d) = zdivrem_monic(&zmods(&zmul(s, &b), &m2), &h1);
    let s1 = zmods(&zsub(s, &d), &m2);
    let t1 = zmods(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g1)), &m2);
    (g1, h1, s1, t1)
}

/// Lifts f ≡ lc(f)·∏ facs (mod p) to modulus `target`, returning monic
/// lifted factors.
fn multifactor_lift(f: &[BigInt], facs: &[Zp], p: u64, target: &BigInt) -> Vec<ZPoly> {
    if facs.len() == 1 {
        let lc = f.last().expect("nonzero").clone();
        let inv = lc.modinv(target).expect("lc coprime to p");
        return vec![zmods(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), target)];
    }
    let pb = BigInt::from(p);
    let lc_p = zp::reduce(&[f.last().unwrap().clone()], p)[0];
    let h0 = facs[0].clone();
    let g0 = zp::scale(&facs[1..].iter().fold(vec![1], |acc, x| zp::mul(&acc, x, p)), lc_p, p);
    let (_, s0, t0) = zp::ext_gcd(&g0, &h0, p);

    let (mut g, mut h, mut s, mut t) = (lift_zp(&g0), lift_zp(&h0), lift_zp(&s0), lift_zp(&t0));
    let mut m = pb;
    while &m < target {
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let mut out = vec![zmods(&h, target)];
    out.extend(multifactor_lift(&zmods(&g, target), &facs[1..], p, target));
    out
}

fn choose_prime(f: &[BigInt], rng: &mut ChaCha8Rng) -> (u64, Vec<Zp>) {
    let lc = f.last().expect("nonzero");
    let mut best: Option<(u64, Vec<Zp>)> = None;
    let mut tried = 0;
    for p in zp::small_odd_primes() {
        if zp::divides_bigint(p, lc) {
            continue;
        }
        let fp = zp::reduce(f, p);
        if !zp::is_squarefree(&fp, p) {
            continue;
        }
        let facs = zp::factor_squarefree(&fp, p, rng);
        if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried == 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.expect("a squarefree f has good primes")
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors of a primitive squarefree polynomial of degree ≥ 1
/// with positive leading coefficient.
pub fn factor_squarefree(f: &[BigInt], seed: u64) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (p, facs) = choose_prime(f, &mut rng);
    if facs.len() == 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().abs();
    let bound = BigInt::from(2) * &lc * (BigInt::one() << n) * norm2_ceil(f);
    let mut m = BigInt::from(p);
    while m <= bound {
        m = &m * &m;
    }
    let mut lifted = multifactor_lift(f, &facs, p, &m);

    let mut rest = f.to_vec();
    let mut out = Vec::new();
    let mut k = 1;
    while 2 * k <= lifted.len() {
        let mut found = false;
        for sub in subsets(lifted.len(), k) {
            let lc_rest = rest.last().unwrap().clone();
            let cand = sub.iter().fold(vec![lc_rest], |acc, &i| zmods(&zmul(&acc, &lifted[i]), &m));
            let cand = primitive(&cand);
            if let Some(q) = zdiv_exact(&rest, &cand) {
                out.push(cand);
                rest = q;
                let mut i = 0;
                lifted.retain(|_| {
                    i += 1;
                    !sub.contains(&(i - 1))
                });
                found = true;
                break;
            }
        }
        if !found {
            k += 1;
        }
    }
    out.push(primitive(&rest));
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Full factorization over Z of a primitive polynomial: irreducible
/// primitive factors with multiplicities, sorted by degree.
pub fn factor_primitive(f: &[BigInt], seed: u64) -> Vec<(ZPoly, u32)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    // x^k divides
    let k = f.iter().take_while(|c| c.is_zero()).count();
    if k > 0 {
        out.push((vec![BigInt::zero(), BigInt::one()], k as u32));
        f.drain(..k);
    }
    if f.len() > 1 {
        for (part, mult) in squarefree_decomposition(&f) {
            for g in factor_squarefree(&part, seed) {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    out
}

#[cfg(test)]
pub fn mul_all(factors: &[(ZPoly, u32)]) -> ZPoly {
    let mut acc = vec![BigInt::one()];
    for (g, e) in factors {
        for _ in 0..*e {
            acc = zmul(&acc, g);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(cs: &[i64]) -> ZPoly {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn swinnerton_dyer_like_quartic_is_irreducible() {
        // x^4 - 10x^2 + 1 splits modulo every prime, so only lifting and
        // recombination can prove it irreducible
        let f = z(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree(&f, 1), vec![f.clone()]);
    }

    #[test]
    fn splits_product() {
        let a = z(&[-2, 0, 1]);
        let b = z(&[3, 5, 0, 7]);
        let c = z(&[1, 1]);
        let f = zmul(&zmul(&a, &b), &c);
        let fs = factor_squarefree(&f, 3);
        assert_eq!(fs.len(), 3);
        let back = fs.iter().fold(vec![BigInt::one()], |acc, g| zmul(&acc, g));
        assert_eq!(back, f);
    }

    #[test]
    fn repeated_factors() {
        let a = z(&[1, 1]);
        let b = z(&[-3, 0, 2]);
        let f = zmul(&zmul(&zmul(&a, &a), &b), &z(&[0, 0, 1]));
        let fs = factor_primitive(&f, 0);
        assert_eq!(fs, vec![(z(&[0, 1]), 2), (z(&[1, 1]), 2), (z(&[-3, 0, 2]), 1)]);
        assert_eq!(mul_all(&fs), f);
    }

    #[test]
    fn large_leading_coefficient() {
        let a = z(&[7, -3, 12]);
        let b = z(&[-5, 0, 0, 9]);
        let f = zmul(&a, &b);
        let fs = factor_squarefree(&f, 11);
        assert_eq!(fs, vec![a, b]);
    }

    #[test]
    fn exact_division() {
        assert_eq!(zdiv_exact(&z(&[-1, 0, 1]), &z(&[1, 1])), Some(z(&[-1, 1])));
        assert_eq!(zdiv_exact(&z(&[-1, 0, 1]), &z(&[1, 2])), None);
    }
}
