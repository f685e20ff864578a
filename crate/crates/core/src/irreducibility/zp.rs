//! Dense polynomials over F_p for word-sized primes. Coefficients ascending,
//! always reduced and trimmed.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

pub type Zp = Vec<u64>;

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powmod_u64(a, p - 2, p)
}

pub fn trim(mut f: Zp) -> Zp {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn degree(f: &[u64]) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

/// Reduction of an integer polynomial; the result is trimmed.
pub fn reduce(f: &[BigInt], p: u64) -> Zp {
    let pb = BigInt::from(p);
    trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().expect("residue fits")).collect())
}

#[cfg(test)]
pub fn add(a: &[u64], b: &[u64], p: u64) -> Zp {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + y) % p;
    }
    trim(out)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Zp {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Zp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

pub fn scale(a: &[u64], c: u64, p: u64) -> Zp {
    trim(a.iter().map(|&x| mulmod(x, c, p)).collect())
}

pub fn monic(a: &[u64], p: u64) -> Zp {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, inv_mod(lc, p), p),
    }
}

pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Zp, Zp) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = inv_mod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = mulmod(r[i], inv, p);
        if c == 0 {
            continue;
        }
        q[i - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            let k = i - db + j;
            r[k] = (r[k] + p - mulmod(c, bj, p)) % p;
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Zp {
    divrem(a, b, p).1
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Zp {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Returns (g, s, t) with s·a + t·b = g monic.
pub fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Zp, Zp, Zp) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = inv_mod(*r0.last().expect("gcd of zero polynomials"), p);
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub fn derivative(a: &[u64], p: u64) -> Zp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

pub fn mulmod_poly(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Zp {
    rem(&mul(a, b, p), f, p)
}

/// `base^e mod f`.
pub fn powmod(base: &[u64], e: &BigUint, f: &[u64], p: u64) -> Zp {
    let mut acc: Zp = rem(&[1], f, p);
    let b = rem(base, f, p);
    for i in (0..e.bits()).rev() {
        acc = mulmod_poly(&acc, &acc, f, p);
        if e.bit(i) {
            acc = mulmod_poly(&acc, &b, f, p);
        }
    }
    acc
}

fn frobenius(a: &[u64], f: &[u64], p: u64) -> Zp {
    powmod(a, &BigUint::from(p), f, p)
}

pub fn is_squarefree(f: &[u64], p: u64) -> bool {
    let d = derivative(f, p);
    !d.is_empty() && degree(&gcd(f, &d, p)) == Some(0)
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: f of degree n ≥ 1 is irreducible over F_p iff
/// x^(p^n) ≡ x mod f and gcd(x^(p^(n/q)) − x, f) = 1 for each prime q | n.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(n) = degree(f) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = monic(f, p);
    let x: Zp = rem(&[0, 1], &f, p);
    // frob[i] = x^(p^i) mod f
    let mut frob = vec![x.clone()];
    for i in 1..=n {
        let next = frobenius(&frob[i - 1], &f, p);
        frob.push(next);
    }
    if frob[n] != x {
        return false;
    }
    prime_factors(n).into_iter().all(|q| {
        let h = sub(&frob[n / q], &x, p);
        degree(&gcd(&f, &h, p)) == Some(0)
    })
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs (d, product of all irreducible factors of degree d).
pub fn distinct_degree(f: &[u64], p: u64) -> Vec<(usize, Zp)> {
    let mut out = Vec::new();
    let mut f = monic(f, p);
    let x: Zp = vec![0, 1];
    let mut h = rem(&x, &f, p);
    let mut d = 0;
    while degree(&f).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = frobenius(&h, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if degree(&g) != Some(0) {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((d, g));
        }
    }
    if degree(&f).unwrap_or(0) > 0 {
        let n = degree(&f).unwrap();
        out.push((n, f));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of irreducibles of degree `d`
/// (p odd).
pub fn equal_degree<R: Rng>(f: &[u64], d: usize, p: u64, rng: &mut R) -> Vec<Zp> {
    let n = degree(f).unwrap_or(0);
    if n == d {
        return vec![monic(f, p)];
    }
    let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a: Zp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let g = gcd(f, &a, p);
        let split = if degree(&g) != Some(0) {
            g
        } else {
            let b = sub(&powmod(&a, &exp, f, p), &[1], p);
            gcd(f, &b, p)
        };
        let ds = degree(&split).unwrap_or(0);
        if ds > 0 && ds < n {
            let other = divrem(f, &split, p).0;
            let mut out = equal_degree(&split, d, p, rng);
            out.extend(equal_degree(&other, d, p, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial over F_p, p odd.
pub fn factor_squarefree<R: Rng>(f: &[u64], p: u64, rng: &mut R) -> Vec<Zp> {
    let mut out = Vec::new();
    for (d, g) in distinct_degree(f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out.sort();
    out
}

pub fn small_odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|q| q * q <= n).all(|q| n % q != 0))
}

pub fn small_primes() -> impl Iterator<Item = u64> {
    std::iter::once(2).chain(small_odd_primes())
}

pub fn divides_bigint(p: u64, n: &BigInt) -> bool {
    (n % BigInt::from(p)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rabin_small_cases() {
        // x^2 + 1 is irreducible mod 3, splits mod 5
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 1], 5));
        // x^4 + 1 is reducible mod every prime
        for p in small_primes().take(8) {
            assert!(!is_irreducible(&[1, 0, 0, 0, 1], p), "p = {p}");
        }
        // x^3 - x - 1 irreducible mod 2 and 3
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(is_irreducible(&[2, 2, 0, 1], 3));
    }

    #[test]
    fn factor_recovers_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = 13;
        let a = vec![3, 1];
        let b = vec![2, 0, 1];
        let c = vec![5, 1, 0, 1];
        let f = mul(&mul(&a, &b, p), &c, p);
        let fs = factor_squarefree(&f, p, &mut rng);
        let prod = fs.iter().fold(vec![1], |acc, g| mul(&acc, g, p));
        assert_eq!(prod, monic(&f, p));
        assert!(fs.iter().all(|g| is_irreducible(g, p)));
    }

    #[test]
    fn ext_gcd_identity() {
        let p = 11;
        let a = vec![1, 2, 1];
        let b = vec![3, 1];
        let (g, s, t) = ext_gcd(&a, &b, p);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), vec![1]);
    }

    #[test]
    fn prime_iterators() {
        assert_eq!(small_primes().take(6).collect::<Vec<_>>(), vec![2, 3, 5, 7, 11, 13]);
    }
}
