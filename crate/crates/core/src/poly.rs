//! Univariate polynomials over the rationals, with Sturm-sequence root
//! counting and isolation.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{midpoint, qi, Q};

/// Dense polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<Q>,
}

impl Poly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(v: Q) -> Self {
        Poly::new(vec![v])
    }

    /// The polynomial `z`.
    pub fn z() -> Self {
        Poly::new(vec![Q::zero(), Q::one()])
    }

    /// `a + b z`.
    pub fn linear(a: Q, b: Q) -> Self {
        Poly::new(vec![a, b])
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&v| qi(v)).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    /// Coefficient of `z^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Q {
        self.c.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn scale(&self, s: &Q) -> Self {
        Poly::new(self.c.iter().map(|a| a * s).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * qi(i as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut c = vec![Q::zero()];
        c.extend(
            self.c
                .iter()
                .enumerate()
                .map(|(i, a)| a / qi(i as i64 + 1)),
        );
        Poly::new(c)
    }

    /// `∫_a^b self`.
    pub fn integrate(&self, a: &Q, b: &Q) -> Q {
        let p = self.antiderivative();
        p.eval(b) - p.eval(a)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading();
        let mut r = self.c.clone();
        let mut quo = vec![Q::zero(); self.c.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r[r.len() - 1].clone() / &lead;
            for (i, di) in d.c.iter().enumerate() {
                r[k + i] -= &f * di;
            }
            quo[k] = f;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Poly::new(quo), Poly::new(r))
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&(Q::one() / self.leading()))
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.divrem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    /// `self / gcd(self, self')`: same roots, all simple.
    pub fn square_free(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = Poly::gcd(self, &self.derivative());
        self.div_exact(&g).expect("gcd divides")
    }

    /// Substitutes `z -> a + b z`.
    pub fn compose_linear(&self, a: &Q, b: &Q) -> Poly {
        let lin = Poly::linear(a.clone(), b.clone());
        let mut acc = Poly::zero();
        for coef in self.c.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(coef.clone());
        }
        acc
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let d = self.derivative();
        if d.is_zero() {
            return seq;
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].divrem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-r);
        }
        seq
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    pub fn count_roots(&self, a: &Q, b: &Q) -> usize {
        let p = self.square_free();
        count_open(&p, &p.sturm_sequence(), a, b)
    }

    /// Isolating intervals for the distinct real roots in the open interval
    /// `(a, b)`, sorted. Each entry `(lo, hi)` holds exactly one root in the
    /// open interval `(lo, hi)`, or `lo == hi` when the root was hit exactly.
    pub fn isolate_roots(&self, a: &Q, b: &Q) -> Vec<(Q, Q)> {
        let p = self.square_free();
        let mut out = Vec::new();
        if p.degree().unwrap_or(0) == 0 {
            return out;
        }
        let seq = p.sturm_sequence();
        let mut work = vec![(a.clone(), b.clone())];
        while let Some((l, h)) = work.pop() {
            match count_open(&p, &seq, &l, &h) {
                0 => {}
                1 => out.push((l, h)),
                _ => {
                    let m = midpoint(&l, &h);
                    if p.eval(&m).is_zero() {
                        out.push((m.clone(), m.clone()));
                    }
                    work.push((l, m.clone()));
                    work.push((m, h));
                }
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    /// Narrows an isolating interval from [`Poly::isolate_roots`] to width at
    /// most `tol` by exact bisection.
    pub fn refine_root(&self, lo: &Q, hi: &Q, tol: &Q) -> (Q, Q) {
        let p = self.square_free();
        let seq = p.sturm_sequence();
        let (mut l, mut h) = (lo.clone(), hi.clone());
        while l != h && &(&h - &l) > tol {
            let m = midpoint(&l, &h);
            if p.eval(&m).is_zero() {
                return (m.clone(), m);
            }
            if count_open(&p, &seq, &l, &m) == 1 {
                h = m;
            } else {
                l = m;
            }
        }
        (l, h)
    }
}

/// Distinct roots of the square-free `p` in `(a, b)`. Skipping zeros in the
/// sign sequence makes the count valid even when `a` or `b` is a root.
fn count_open(p: &Poly, seq: &[Poly], a: &Q, b: &Q) -> usize {
    if a >= b {
        return 0;
    }
    let n = sign_changes(seq, a).saturating_sub(sign_changes(seq, b));
    n - usize::from(p.eval(b).is_zero())
}

fn sign_changes(seq: &[Poly], x: &Q) -> usize {
    let mut count = 0;
    let mut prev = 0i8;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
    }
    count
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.c.into_iter().map(|a| -a).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}
