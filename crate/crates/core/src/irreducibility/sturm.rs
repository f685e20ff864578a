//! Sturm sequences over Q for exact real-root counting.

use crate::exactnum::Rational;
use crate::poly::UniPoly;

pub struct Sturm {
    seq: Vec<UniPoly<Rational>>,
}

impl Sturm {
    /// Sequence for the squarefree part of `f` (nonzero).
    pub fn new(f: &UniPoly<Rational>) -> Self {
        let d = f.derivative();
        let g = f.gcd(&d).expect("nonzero polynomial");
        let f = f.div_rem(&g).expect("nonzero gcd").0;
        let mut seq = vec![f.clone(), f.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero divisor").1;
            seq.push(-&r);
        }
        seq.pop();
        Sturm { seq }
    }

    fn sign_changes(&self, x: &Rational) -> usize {
        let signs: Vec<i32> = self.seq.iter().map(|p| p.eval(x).signum()).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in (a, b].
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.sign_changes(a).saturating_sub(self.sign_changes(b))
    }
}

/// Distinct real roots of `f` in the half-open interval (a, b].
pub fn count_roots(f: &UniPoly<Rational>, a: &Rational, b: &Rational) -> usize {
    Sturm::new(f).count(a, b)
}
