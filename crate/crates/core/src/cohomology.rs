//! Integral cohomology of a Bott manifold and its characteristic classes.
//!
//! `H*(Mₙ(A), ℤ) = ℤ[x₁..xₙ] / (x_k² + α_k x_k)` with `α_k = Σ_{j<k} Aʲ_k x_j`.
//! Classes are stored on the square-free monomial basis, a monomial being a
//! bitmask (bit `k−1` for `x_k`).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::tower::BottMatrix;

/// Integer class on the square-free monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyClass {
    n: usize,
    terms: BTreeMap<u32, BigInt>,
}

impl CohomologyClass {
    pub fn zero(n: usize) -> Self {
        CohomologyClass { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        CohomologyClass::monomial(n, 0, BigInt::one())
    }

    /// `coeff · ∏_{k ∈ mask} x_k`.
    pub fn monomial(n: usize, mask: u32, coeff: BigInt) -> Self {
        let mut c = CohomologyClass::zero(n);
        c.add_term(mask, coeff);
        c
    }

    /// Builds a class from `(1-based indices, coefficient)` pairs.
    pub fn from_terms(n: usize, terms: &[(&[usize], i64)]) -> Self {
        let mut c = CohomologyClass::zero(n);
        for (idx, v) in terms {
            c.add_term(mask_of(idx), BigInt::from(*v));
        }
        c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Nonzero terms as `(mask, coefficient)`, masks ascending.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    /// Coefficient of `∏_{k ∈ indices} x_k` (1-based, distinct).
    pub fn coefficient(&self, indices: &[usize]) -> BigInt {
        self.terms
            .get(&mask_of(indices))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mask: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_insert_with(BigInt::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let mut r = CohomologyClass::zero(self.n);
        for (m, c) in &self.terms {
            r.add_term(*m, c * s);
        }
        r
    }

    /// Exact division of every coefficient; `None` if some is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        let mut r = CohomologyClass::zero(self.n);
        for (m, c) in &self.terms {
            let (q, rem) = c.div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            r.add_term(*m, q);
        }
        Some(r)
    }

    /// Component of cohomological degree `2d` (monomials with `d` factors).
    pub fn homogeneous(&self, d: u32) -> Self {
        CohomologyClass {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// True when every coefficient is even.
    pub fn is_even(&self) -> bool {
        self.terms.values().all(Integer::is_even)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.count_ones());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn mod2(&self) -> Mod2Class {
        Mod2Class {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.is_odd())
                .map(|(m, _)| *m)
                .collect(),
        }
    }
}

/// Class with `ℤ/2` coefficients on the same basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mod2Class {
    pub n: usize,
    /// Monomials with coefficient 1.
    pub terms: BTreeSet<u32>,
}

impl Mod2Class {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Bitmask of 1-based indices.
pub fn mask_of(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &k| m | (1 << (k - 1)))
}

/// 1-based indices of a bitmask, ascending.
pub fn indices_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// The cohomology ring of one Bott tower.
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    a: BottMatrix,
}

/// A primitive class of square zero, attached to stage `index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareZeroPrimitive {
    pub index: usize,
    pub class: CohomologyClass,
}

impl CohomologyRing {
    pub fn new(a: &BottMatrix) -> Self {
        assert!(a.n() <= 31, "stage too large for bitmask monomials");
        CohomologyRing { a: a.clone() }
    }

    pub fn matrix(&self) -> &BottMatrix {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn one(&self) -> CohomologyClass {
        CohomologyClass::one(self.n())
    }

    pub fn x(&self, k: usize) -> CohomologyClass {
        assert!((1..=self.n()).contains(&k));
        CohomologyClass::monomial(self.n(), 1 << (k - 1), BigInt::one())
    }

    /// `α_k = Σ_{j<k} Aʲ_k x_j`.
    pub fn alpha(&self, k: usize) -> CohomologyClass {
        assert!((1..=self.n()).contains(&k));
        let mut c = CohomologyClass::zero(self.n());
        for j in 1..k {
            c.add_term(1 << (j - 1), BigInt::from(self.a.entry(k, j)));
        }
        c
    }

    /// `y_k = x_k + α_k`.
    pub fn y(&self, k: usize) -> CohomologyClass {
        self.x(k).add(&self.alpha(k))
    }

    /// `x_S · x_k`, reducing `x_k² = −α_k x_k` recursively.
    fn mul_var(&self, mask: u32, k: usize) -> CohomologyClass {
        let bit = 1u32 << (k - 1);
        if mask & bit == 0 {
            return CohomologyClass::monomial(self.n(), mask | bit, BigInt::one());
        }
        let mut r = CohomologyClass::zero(self.n());
        for j in 1..k {
            let a = self.a.entry(k, j);
            if a != 0 {
                r = r.add(&self.mul_var(mask, j).scale(&BigInt::from(-a)));
            }
        }
        r
    }

    pub fn mul(&self, u: &CohomologyClass, v: &CohomologyClass) -> CohomologyClass {
        let mut out = CohomologyClass::zero(self.n());
        for (mv, cv) in &v.terms {
            for (mu, cu) in &u.terms {
                let mut t = CohomologyClass::monomial(self.n(), *mu, cu * cv);
                for k in indices_of(*mv) {
                    let mut next = CohomologyClass::zero(self.n());
                    for (m, c) in &t.terms {
                        next = next.add(&self.mul_var(*m, k).scale(c));
                    }
                    t = next;
                    if t.is_zero() {
                        break;
                    }
                }
                out = out.add(&t);
            }
        }
        out
    }

    fn product(&self, factors: impl Iterator<Item = CohomologyClass>) -> CohomologyClass {
        factors.fold(self.one(), |acc, f| self.mul(&acc, &f))
    }

    /// `c = ∏ (1 + x_j + y_j)`.
    pub fn chern_total(&self) -> CohomologyClass {
        let one = self.one();
        self.product((1..=self.n()).map(|j| one.add(&self.x(j)).add(&self.y(j))))
    }

    /// `c₁ = Σ (x_j + y_j)`.
    pub fn chern_1(&self) -> CohomologyClass {
        (1..=self.n()).fold(CohomologyClass::zero(self.n()), |acc, j| {
            acc.add(&self.x(j)).add(&self.y(j))
        })
    }

    /// `p = ∏ (1 + α_j²)`.
    pub fn pontrjagin_total(&self) -> CohomologyClass {
        let one = self.one();
        self.product((1..=self.n()).map(|j| {
            let a = self.alpha(j);
            one.add(&self.mul(&a, &a))
        }))
    }

    /// `p_k`, the part of degree `4k`.
    pub fn pontrjagin(&self, k: u32) -> CohomologyClass {
        self.pontrjagin_total().homogeneous(2 * k)
    }

    /// `w₂ = c₁ mod 2`.
    pub fn stiefel_whitney_2(&self) -> Mod2Class {
        self.chern_1().mod2()
    }

    fn alpha_square_zero(&self, k: usize) -> bool {
        let a = self.alpha(k);
        self.mul(&a, &a).is_zero()
    }

    /// All `α_k² = 0`.
    pub fn is_q_trivial(&self) -> bool {
        (1..=self.n()).all(|k| self.alpha_square_zero(k))
    }

    /// For each `j` with `α_j² = 0`: `x_j + α_j/2` when `α_j` is even,
    /// otherwise `2x_j + α_j`.
    pub fn square_zero_primitives(&self) -> Vec<SquareZeroPrimitive> {
        (1..=self.n())
            .filter(|&j| self.alpha_square_zero(j))
            .map(|j| {
                let a = self.alpha(j);
                let class = match a.div_exact(&BigInt::from(2)) {
                    Some(half) => self.x(j).add(&half),
                    None => self.x(j).scale(&BigInt::from(2)).add(&a),
                };
                SquareZeroPrimitive { index: j, class }
            })
            .collect()
    }

    /// Number of stages failing "`α_k` even and `α_k² = 0`".
    pub fn topological_twist(&self) -> usize {
        (1..=self.n())
            .filter(|&k| !(self.alpha(k).is_even() && self.alpha_square_zero(k)))
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::{normalize_twist, BottMatrix};
    use alloc::vec;
    use proptest::prelude::*;

    fn cls(n: usize, t: &[(&[usize], i64)]) -> CohomologyClass {
        CohomologyClass::from_terms(n, t)
    }

    #[test]
    fn generators_stage3() {
        let (a, b, c) = (3, -2, 5);
        let r = CohomologyRing::new(&BottMatrix::stage3(a, b, c));
        assert_eq!(r.y(3), cls(3, &[(&[1], b), (&[2], c), (&[3], 1)]));
        assert!(r.alpha(1).is_zero());
        assert_eq!(r.alpha(2), cls(3, &[(&[1], a)]));
        assert_eq!(r.mul(&r.x(2), &r.x(2)), cls(3, &[(&[1, 2], -a)]));
        for k in 1..=3 {
            assert!(r.mul(&r.x(k), &r.y(k)).is_zero());
        }
        let v = cls(3, &[(&[2], 4), (&[1, 3], -1)]);
        assert_eq!(r.mul(&r.one(), &v), v);
    }

    #[test]
    fn chern_classes() {
        let (a, b, c) = (2, -1, 3);
        let r = CohomologyRing::new(&BottMatrix::stage3(a, b, c));
        assert_eq!(
            r.chern_1(),
            cls(3, &[(&[1], 2 + a + b), (&[2], 2 + c), (&[3], 2)])
        );
        assert_eq!(r.chern_total().homogeneous(1), r.chern_1());
        let id = CohomologyRing::new(&BottMatrix::identity(3));
        let expected = (1..=3).fold(id.one(), |acc, j| {
            id.mul(&acc, &id.one().add(&id.x(j).scale(&BigInt::from(2))))
        });
        assert_eq!(id.chern_total(), expected);
        let k = [3, -1, 0, 2];
        let t = CohomologyRing::new(&BottMatrix::twist1(&k));
        let mut terms: Vec<(Vec<usize>, i64)> =
            k.iter().enumerate().map(|(i, ki)| (vec![i + 1], 2 + ki)).collect();
        terms.push((vec![5], 2));
        let refs: Vec<(&[usize], i64)> = terms.iter().map(|(i, v)| (i.as_slice(), *v)).collect();
        assert_eq!(t.chern_1(), cls(5, &refs));
    }

    #[test]
    fn pontrjagin_and_w2() {
        for (a, b, c) in [(1, 2, 3), (-2, 0, 4), (0, 1, -1), (5, -3, 2)] {
            let r = CohomologyRing::new(&BottMatrix::stage3(a, b, c));
            assert_eq!(r.pontrjagin(1), cls(3, &[(&[1, 2], c * (2 * b - a * c))]));
            assert_eq!(r.stiefel_whitney_2(), cls(3, &[(&[1], a + b), (&[2], c)]).mod2());
        }
        let r = CohomologyRing::new(&BottMatrix::stage3(0, 1, -1));
        assert_eq!(r.pontrjagin(1), cls(3, &[(&[1, 2], -2)]));
        let id = CohomologyRing::new(&BottMatrix::identity(4));
        assert_eq!(id.pontrjagin_total(), id.one());
    }

    #[test]
    fn q_triviality_and_primitives() {
        for (a, b, c) in [(1, 2, 3), (2, 3, 0), (2, 3, 4), (0, 1, 1), (3, 6, 4)] {
            let r = CohomologyRing::new(&BottMatrix::stage3(a, b, c));
            assert_eq!(r.is_q_trivial(), c * (2 * b - a * c) == 0);
        }
        assert!(CohomologyRing::new(&BottMatrix::identity(3)).is_q_trivial());
        assert!(!CohomologyRing::new(&BottMatrix::stage3(0, 1, 1)).is_q_trivial());

        let r = CohomologyRing::new(&BottMatrix::stage3(4, 0, 0));
        let p = r.square_zero_primitives();
        assert_eq!(p[0].class, r.x(1));
        assert_eq!(p[1].class, cls(3, &[(&[2], 1), (&[1], 2)]));
        let r = CohomologyRing::new(&BottMatrix::stage3(1, 5, 0));
        let p = r.square_zero_primitives();
        assert_eq!(p[1].class, cls(3, &[(&[2], 2), (&[1], 1)]));
        for prim in &p {
            assert!(r.mul(&prim.class, &prim.class).is_zero());
        }
    }

    #[test]
    fn topological_twist_examples() {
        for (a, c) in [(1, 2), (-2, 3), (0, 1)] {
            let r = CohomologyRing::new(&BottMatrix::stage3(2 * a, 2 * a * c, 2 * c));
            assert_eq!(r.topological_twist(), 0);
        }
        assert_eq!(CohomologyRing::new(&BottMatrix::identity(4)).topological_twist(), 0);
        assert_eq!(CohomologyRing::new(&BottMatrix::stage3(1, 0, 0)).topological_twist(), 1);
    }

    /// Towers `2 C₃C₂C₁ − I` where `C_k` has at most one nonzero entry below
    /// the diagonal, in row `k`, with entries in `[-2, 2]`.
    fn factorization_oracle() -> BTreeSet<(i64, i64, i64)> {
        let mul = |x: [[i64; 3]; 3], y: [[i64; 3]; 3]| {
            let mut z = [[0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    z[i][j] = (0..3).map(|k| x[i][k] * y[k][j]).sum();
                }
            }
            z
        };
        let id = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        let mut out = BTreeSet::new();
        for c21 in -2..=2 {
            let mut c2 = id;
            c2[1][0] = c21;
            for col in 0..2 {
                for v in -2..=2 {
                    let mut c3 = id;
                    c3[2][col] = v;
                    let c = mul(c3, c2);
                    out.insert((2 * c[1][0], 2 * c[2][0], 2 * c[2][1]));
                }
            }
        }
        out
    }

    #[test]
    fn topological_twist_zero_matches_factorization() {
        let oracle = factorization_oracle();
        for a in -4..=4i64 {
            for b in -4..=4i64 {
                for c in -4..=4i64 {
                    let r = CohomologyRing::new(&BottMatrix::stage3(a, b, c));
                    assert_eq!(
                        r.topological_twist() == 0,
                        oracle.contains(&(a, b, c)),
                        "({a},{b},{c})"
                    );
                }
            }
        }
    }

    #[test]
    fn top_degree_and_rank() {
        let m = BottMatrix::new(vec![
            vec![1, 0, 0, 0],
            vec![2, 1, 0, 0],
            vec![-1, 3, 1, 0],
            vec![1, 1, -2, 1],
        ])
        .unwrap();
        let r = CohomologyRing::new(&m);
        let top = (1..=4).fold(r.one(), |acc, k| r.mul(&acc, &r.x(k)));
        assert_eq!(top, CohomologyClass::monomial(4, 0b1111, BigInt::one()));
        for k in 1..=4 {
            assert!(r.mul(&top, &r.x(k)).is_zero());
        }
        // Every basis monomial is a product of distinct generators: 2ⁿ of them.
        let basis: BTreeSet<u32> = (0..16u32)
            .map(|mask| {
                let p = indices_of(mask).into_iter().fold(r.one(), |acc, k| r.mul(&acc, &r.x(k)));
                let m = p.terms().next().unwrap().0;
                m
            })
            .collect();
        assert_eq!(basis.len(), 16);
    }

    #[test]
    fn two_step_pontrjagin() {
        let m = BottMatrix::twist2(&[1, -2], &[3, 1, 2]);
        let r = CohomologyRing::new(&m);
        let (an, an1) = (r.alpha(3), r.alpha(4));
        let (s, t) = (r.mul(&an, &an), r.mul(&an1, &an1));
        assert_eq!(r.pontrjagin(1), s.add(&t));
        assert_eq!(r.pontrjagin(2), r.mul(&s, &t));
    }

    fn arb_matrix(lo: usize, hi: usize, bound: i64) -> impl Strategy<Value = BottMatrix> {
        (lo..=hi).prop_flat_map(move |n| {
            proptest::collection::vec(-bound..=bound, n * (n - 1) / 2).prop_map(move |v| {
                let mut rows = BottMatrix::identity(n).rows().to_vec();
                let mut it = v.into_iter();
                for (i, row) in rows.iter_mut().enumerate() {
                    for x in row.iter_mut().take(i) {
                        *x = it.next().unwrap();
                    }
                }
                BottMatrix::new(rows).unwrap()
            })
        })
    }

    fn arb_class(n: usize) -> impl Strategy<Value = CohomologyClass> {
        proptest::collection::vec((0u32..(1 << n), -5i64..=5), 0..5).prop_map(move |ts| {
            let mut c = CohomologyClass::zero(n);
            for (m, v) in ts {
                c.add_term(m, BigInt::from(v));
            }
            c
        })
    }

    fn arb_ring_with_classes() -> impl Strategy<Value = (BottMatrix, [CohomologyClass; 3])> {
        arb_matrix(1, 6, 3).prop_flat_map(|a| {
            let n = a.n();
            (Just(a), [arb_class(n), arb_class(n), arb_class(n)])
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn ring_axioms((a, [u, v, w]) in arb_ring_with_classes()) {
            let r = CohomologyRing::new(&a);
            prop_assert_eq!(r.mul(&u, &v), r.mul(&v, &u));
            prop_assert_eq!(r.mul(&r.mul(&u, &v), &w), r.mul(&u, &r.mul(&v, &w)));
            prop_assert_eq!(r.mul(&u, &v.add(&w)), r.mul(&u, &v).add(&r.mul(&u, &w)));
        }

        #[test]
        fn x_times_y_vanishes(a in arb_matrix(2, 6, 5)) {
            let r = CohomologyRing::new(&a);
            for k in 1..=a.n() {
                prop_assert!(r.mul(&r.x(k), &r.y(k)).is_zero());
            }
        }

        #[test]
        fn pontrjagin_vanishes_above_twist(a in arb_matrix(2, 6, 3)) {
            let t = a.twist() as u32;
            let r = CohomologyRing::new(&normalize_twist(&a));
            for k in t + 1..=a.n() as u32 {
                prop_assert!(r.pontrjagin(k).is_zero());
            }
        }

        #[test]
        fn middle_pontrjagin_vanishes(a in arb_matrix(4, 4, 3)) {
            prop_assume!(a.twist() == 3);
            prop_assert!(CohomologyRing::new(&a).pontrjagin(2).is_zero());
        }

        #[test]
        fn topological_twist_bounded(a in arb_matrix(1, 6, 4)) {
            prop_assert!(CohomologyRing::new(&a).topological_twist() <= a.twist());
        }
    }
}
