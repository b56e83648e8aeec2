//! Sparse bivariate polynomials in `z₁, z₂` with rational coefficients.

use alloc::collections::BTreeMap;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::Q;

/// Keys are exponent pairs `(i, j)` for `z₁ⁱ z₂ʲ`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Q>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Q, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Poly2 { terms }
    }

    pub fn z1() -> Self {
        Self::monomial(Q::one(), 1, 0)
    }

    pub fn z2() -> Self {
        Self::monomial(Q::one(), 0, 1)
    }

    /// `c + a z₁ + b z₂`.
    pub fn affine(c: Q, a: Q, b: Q) -> Self {
        &(&Self::constant(c) + &Self::monomial(a, 1, 0)) + &Self::monomial(b, 0, 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Q {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    fn insert_add(&mut self, key: (u32, u32), c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(Q::one()), |acc, _| &acc * self)
    }

    pub fn eval(&self, z1: &Q, z2: &Q) -> Q {
        let mut acc = Q::zero();
        for ((i, j), c) in &self.terms {
            acc += c * num_traits::pow(z1.clone(), *i as usize) * num_traits::pow(z2.clone(), *j as usize);
        }
        acc
    }

    pub fn d1(&self) -> Self {
        let mut out = Poly2::zero();
        for ((i, j), c) in &self.terms {
            if *i > 0 {
                out.insert_add((i - 1, *j), c * Q::from_integer((*i).into()));
            }
        }
        out
    }

    pub fn d2(&self) -> Self {
        let mut out = Poly2::zero();
        for ((i, j), c) in &self.terms {
            if *j > 0 {
                out.insert_add((*i, j - 1), c * Q::from_integer((*j).into()));
            }
        }
        out
    }

    /// Substitutes `z₁ = v`; the result no longer depends on `z₁`.
    pub fn subs_z1(&self, v: &Q) -> Self {
        let mut out = Poly2::zero();
        for ((i, j), c) in &self.terms {
            out.insert_add((0, *j), c * num_traits::pow(v.clone(), *i as usize));
        }
        out
    }

    pub fn subs_z2(&self, v: &Q) -> Self {
        let mut out = Poly2::zero();
        for ((i, j), c) in &self.terms {
            out.insert_add((*i, 0), c * num_traits::pow(v.clone(), *j as usize));
        }
        out
    }

    /// `p(a₁ + b₁ s, a₂ + b₂ t)` as a polynomial in `(s, t)`.
    pub fn compose_affine(&self, a1: &Q, b1: &Q, a2: &Q, b2: &Q) -> Self {
        let x = Poly2::affine(a1.clone(), b1.clone(), Q::zero());
        let y = Poly2::affine(a2.clone(), Q::zero(), b2.clone());
        let max_i = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let xs: alloc::vec::Vec<Poly2> = (0..=max_i).map(|e| x.pow(e)).collect();
        let ys: alloc::vec::Vec<Poly2> = (0..=max_j).map(|e| y.pow(e)).collect();
        let mut out = Poly2::zero();
        for ((i, j), c) in &self.terms {
            out = &out + &(&xs[*i as usize] * &ys[*j as usize]).scale(c);
        }
        out
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_add(*k, c.clone());
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_add(*k, -c.clone());
        }
        out
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &rhs.terms {
                out.insert_add((i + k, j + l), a * b);
            }
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.scale(&-Q::one())
    }
}
