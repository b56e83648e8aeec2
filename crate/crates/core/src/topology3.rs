//! Diffeomorphism classification of stage-3 Bott manifolds and of twist-one
//! towers `M_{N+1}(k)` from cohomological invariants.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::tower::Permutation;

/// `w₂ = (a+b)x₁ + c x₂ mod 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum W2Class {
    Zero,
    X1,
    X2,
    X1PlusX2,
}

/// The three diffeomorphism types of ℚ-trivial stage-3 Bott manifolds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QTrivialType {
    /// `(S²)³`: `a, b, c` all even.
    Product3,
    /// `M₁ × M₂` with `M₂` the nontrivial `S²`-bundle over `S²`.
    M1xM2,
    /// The partition type `M_(3)`: `a, b` odd and `c` even.
    M3Partition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage3Invariants {
    /// `p₁ = p · x₁x₂` with `p = c(2b − ac)`.
    pub p: BigInt,
    pub w2_class: W2Class,
    pub q_trivial: bool,
    pub q_trivial_type: Option<QTrivialType>,
    /// Equal exactly for diffeomorphic triples.
    pub diffeo_key: String,
}

pub fn stage3_invariants(a: i64, b: i64, c: i64) -> Stage3Invariants {
    let (ba, bb, bc) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
    let p = &bc * (BigInt::from(2) * &bb - &ba * &bc);
    let w2_class = match ((a + b).is_odd(), c.is_odd()) {
        (false, false) => W2Class::Zero,
        (true, false) => W2Class::X1,
        (false, true) => W2Class::X2,
        (true, true) => W2Class::X1PlusX2,
    };
    let q_trivial = p.is_zero();
    let q_trivial_type = q_trivial.then(|| {
        if a.is_even() && b.is_even() && c.is_even() {
            QTrivialType::Product3
        } else if a.is_odd() && b.is_odd() && c.is_even() {
            QTrivialType::M3Partition
        } else {
            QTrivialType::M1xM2
        }
    });
    let diffeo_key = match q_trivial_type {
        Some(QTrivialType::Product3) => String::from("q:product3"),
        Some(QTrivialType::M1xM2) => String::from("q:m1xm2"),
        Some(QTrivialType::M3Partition) => String::from("q:m3"),
        None if a.is_odd() => {
            let bpar = if c.is_even() { format!("{}", b.rem_euclid(2)) } else { String::from("*") };
            format!("p:{}:a1:b{}", p.abs(), bpar)
        }
        None => {
            let prod = ((1 + b) * (1 + c)).rem_euclid(2);
            format!("p:{}:a0:bc{}", p.abs(), prod)
        }
    };
    Stage3Invariants { p, w2_class, q_trivial, q_trivial_type, diffeo_key }
}

/// Diffeomorphism test for `M₃(a,b,c)` and `M₃(a′,b′,c′)`.
///
/// Non-ℚ-trivial pairs: `|p| = |p′|`, `a ≡ a′`, and when `a, a′` are both
/// even `(1+b)(1+c) ≡ (1+b′)(1+c′)`, when `c, c′` are both even `b ≡ b′`
/// (all mod 2). ℚ-trivial pairs compare their type. Mixed pairs are never
/// diffeomorphic since `p₁` differs.
pub fn stage3_diffeomorphic(t1: (i64, i64, i64), t2: (i64, i64, i64)) -> bool {
    let i1 = stage3_invariants(t1.0, t1.1, t1.2);
    let i2 = stage3_invariants(t2.0, t2.1, t2.2);
    match (i1.q_trivial_type, i2.q_trivial_type) {
        (Some(x), Some(y)) => x == y,
        (None, None) => {
            let (a, b, c) = t1;
            let (a2, b2, c2) = t2;
            i1.p.abs() == i2.p.abs()
                && a.is_even() == a2.is_even()
                && (!(a.is_even() && a2.is_even())
                    || ((1 + b) * (1 + c)).is_even() == ((1 + b2) * (1 + c2)).is_even())
                && (!(c.is_even() && c2.is_even()) || b.is_even() == b2.is_even())
        }
        _ => false,
    }
}

/// Diffeomorphism test for `M_{N+1}(k)` and `M_{N+1}(k′)`: a permutation `σ`
/// with `k′_{σ(i)} ≡ kᵢ mod 2` and `k′_{σ(i)}k′_{σ(j)} = ±kᵢkⱼ` for `i ≠ j`.
pub fn twist1_diffeomorphic(k: &[i64], k2: &[i64]) -> bool {
    if k.len() != k2.len() {
        return false;
    }
    let n = k.len();
    Permutation::all(n).iter().any(|s| {
        let s = s.as_slice();
        (0..n).all(|i| (k2[s[i]] - k[i]).is_even())
            && (0..n).all(|i| {
                (i + 1..n).all(|j| {
                    let lhs = i128::from(k2[s[i]]) * i128::from(k2[s[j]]);
                    let rhs = i128::from(k[i]) * i128::from(k[j]);
                    lhs.abs() == rhs.abs()
                })
            })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Twist1Error {
    #[error("need N > 2 base factors")]
    TooShort,
    #[error("all entries of k must be nonzero")]
    ZeroEntry,
    #[error("|k_i| coincide; brute-force class count is {count}")]
    NonGeneric { count: u64 },
}

impl Twist1Error {
    pub fn code(&self) -> &'static str {
        match self {
            Twist1Error::TooShort => "too_short",
            Twist1Error::ZeroEntry => "zero_entry",
            Twist1Error::NonGeneric { .. } => "non_generic",
        }
    }
}

/// Number of biholomorphism classes among the Bott manifolds diffeomorphic to
/// `M_{N+1}(k)`: `2^{N−1}` when the `|kᵢ|` are distinct.
pub fn twist1_class_count(k: &[i64]) -> Result<u64, Twist1Error> {
    if k.len() <= 2 {
        return Err(Twist1Error::TooShort);
    }
    if k.contains(&0) {
        return Err(Twist1Error::ZeroEntry);
    }
    let abs: BTreeSet<i64> = k.iter().map(|x| x.abs()).collect();
    if abs.len() < k.len() {
        return Err(Twist1Error::NonGeneric { count: twist1_class_count_brute(k) });
    }
    Ok(1 << (k.len() - 1))
}

/// Sign patterns `±kᵢ` modulo permutations of the base factors and the
/// global sign flip `τ_{N+1}`.
pub fn twist1_class_count_brute(k: &[i64]) -> u64 {
    let n = k.len();
    let mut classes = BTreeSet::new();
    for mask in 0..1u64 << n {
        let mut v: Vec<i64> =
            (0..n).map(|i| if mask >> i & 1 == 1 { -k[i] } else { k[i] }).collect();
        v.sort_unstable();
        let mut w: Vec<i64> = v.iter().map(|x| -x).collect();
        w.sort_unstable();
        classes.insert(v.min(w));
    }
    classes.len() as u64
}
