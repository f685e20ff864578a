//! Test-side oracles that share no code with the library.

#![allow(dead_code)]

use rand::Rng;

/// Coefficients of cos(kθ) as a polynomial in cos θ, lowest degree first,
/// from T_{k+1} = 2u·T_k − T_{k−1}.
pub fn chebyshev_coeffs(k: u32) -> Vec<i64> {
    let (mut a, mut b) = (vec![1i64], vec![0i64, 1]);
    if k == 0 {
        return a;
    }
    for _ in 1..k {
        let mut next = vec![0i64; b.len() + 1];
        for (i, c) in b.iter().enumerate() {
            next[i + 1] += 2 * c;
        }
        for (i, c) in a.iter().enumerate() {
            next[i] -= c;
        }
        a = std::mem::replace(&mut b, next);
    }
    b
}

/// Renders integer coefficients (lowest first) as an expression in `var`.
pub fn int_poly_text(coeffs: &[i64], var: &str) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| format!("({c})*{var}^{i}"))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// A random rational in (−1, 1) other than 0, as (numerator, denominator).
pub fn random_p(rng: &mut impl Rng) -> (i64, i64) {
    let den = rng.gen_range(2..=60i64);
    loop {
        let num = rng.gen_range(-(den - 1)..den);
        if num != 0 {
            return (num, den);
        }
    }
}

fn eval(f: &[i128], a: i128) -> i128 {
    f.iter().rev().fold(0, |acc, c| acc * a + c)
}

fn divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn divides(g: &[i128], f: &[i128]) -> bool {
    let mut r = f.to_vec();
    let m = g.len() - 1;
    let lg = g[m];
    while r.len() > m {
        let lr = *r.last().unwrap();
        if lr % lg != 0 {
            return false;
        }
        let q = lr / lg;
        let shift = r.len() - 1 - m;
        for (i, c) in g.iter().enumerate() {
            r[shift + i] -= q * c;
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

/// Newton form at `nodes` back to coefficients, lowest degree first.
fn from_newton(newton: &[i128], nodes: &[i128]) -> Vec<i128> {
    let mut g = vec![0i128; newton.len()];
    let mut basis = vec![1i128];
    for (k, c) in newton.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            g[i] += c * b;
        }
        let mut next = vec![0i128; basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= nodes[k] * b;
        }
        basis = next;
    }
    g
}

struct Search<'a> {
    f: &'a [i128],
    nodes: Vec<i128>,
    choices: Vec<Vec<i128>>,
}

impl Search<'_> {
    /// Depth-first over values g(a_i); divided differences of an integer
    /// polynomial at integer nodes are integers, which prunes early.
    fn run(&self, rows: &mut Vec<Vec<i128>>) -> bool {
        let i = rows.len();
        let m = self.nodes.len() - 1;
        if i == self.nodes.len() {
            let newton: Vec<i128> = rows.iter().map(|r| *r.last().unwrap()).collect();
            let lead = newton[m];
            if lead == 0 || self.f.last().unwrap() % lead != 0 {
                return false;
            }
            return divides(&from_newton(&newton, &self.nodes), self.f);
        }
        for &v in &self.choices[i] {
            let mut row = vec![v];
            let mut ok = true;
            for j in 1..=i {
                let num = row[j - 1] - rows[i - 1][j - 1];
                let den = self.nodes[i] - self.nodes[i - j];
                if num % den != 0 {
                    ok = false;
                    break;
                }
                row.push(num / den);
            }
            if !ok {
                continue;
            }
            rows.push(row);
            if self.run(rows) {
                return true;
            }
            rows.pop();
        }
        false
    }
}

/// Kronecker's method: does f ∈ Z[x] (lowest degree first, deg ≥ 1) have
/// a factor of degree between 1 and deg f − 1?
pub fn kronecker_reducible(f: &[i128]) -> bool {
    let n = f.len() - 1;
    assert!(n >= 1 && f[n] != 0);
    if n == 1 {
        return false;
    }
    let mut points: Vec<(usize, i128, i128)> = Vec::new();
    for a in -8..=8i128 {
        let v = eval(f, a);
        if v == 0 {
            return true;
        }
        points.push((divisors(v).len(), a, v));
    }
    points.sort();
    for m in 1..=n / 2 {
        let chosen = &points[..=m];
        let nodes: Vec<i128> = chosen.iter().map(|p| p.1).collect();
        // g and −g are the same factor: fix the sign of g(a_0)
        let choices: Vec<Vec<i128>> = chosen
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let ds = divisors(p.2);
                if i == 0 {
                    ds
                } else {
                    ds.iter().flat_map(|&d| [d, -d]).collect()
                }
            })
            .collect();
        let search = Search { f, nodes, choices };
        if search.run(&mut Vec::new()) {
            return true;
        }
    }
    false
}

pub fn multiply(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Random polynomial of exact degree `deg` with coefficients in [−bound, bound].
pub fn random_int_poly(rng: &mut impl Rng, deg: usize, bound: i128) -> Vec<i128> {
    let mut f: Vec<i128> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    while f[deg] == 0 {
        f[deg] = rng.gen_range(-bound..=bound);
    }
    f
}

/// Known cases for the oracle itself.
pub fn oracle_self_check() {
    assert!(kronecker_reducible(&[-1, 0, 1]));
    assert!(!kronecker_reducible(&[1, 0, 1]));
    assert!(!kronecker_reducible(&[-2, 0, 1]));
    assert!(kronecker_reducible(&multiply(&[1, 1, 1], &[2, 0, 3])));
    assert!(!kronecker_reducible(&[-1, -6, 0, 8]));
    assert!(kronecker_reducible(&[4, 0, 0, 0, 1]));
}
