//! Compatibility of Bott complex structures with split symplectic forms
//! `ω = Σ kᵢ ωᵢ` on `(S²)ⁿ`, with counts and enumeration for stage 3.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::cohomology::CohomologyRing;
use crate::rational::{ceil, ceil_u64, qi, Q};
use crate::tower::{fiber_inversion, BottMatrix};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SymplecticError {
    #[error("weights must be positive")]
    NotPositive,
    #[error("weights must be weakly decreasing")]
    NotOrdered,
    #[error("length mismatch")]
    LengthMismatch,
    #[error("matrix entries below the diagonal must be even and nonpositive")]
    NotEvenNonpositive,
    #[error("search range too large")]
    TooLarge,
}

impl SymplecticError {
    pub fn code(&self) -> &'static str {
        match self {
            SymplecticError::NotPositive => "not_positive",
            SymplecticError::NotOrdered => "not_ordered",
            SymplecticError::LengthMismatch => "length_mismatch",
            SymplecticError::NotEvenNonpositive => "not_even_nonpositive",
            SymplecticError::TooLarge => "too_large",
        }
    }
}

/// `ω = Σ kᵢ ωᵢ` with `k₁ ≥ k₂ ≥ … > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSymplecticForm {
    k: Vec<Q>,
}

impl SplitSymplecticForm {
    pub fn new(k: Vec<Q>) -> Result<Self, SymplecticError> {
        if k.iter().any(|x| !x.is_positive()) {
            return Err(SymplecticError::NotPositive);
        }
        if k.windows(2).any(|w| w[0] < w[1]) {
            return Err(SymplecticError::NotOrdered);
        }
        Ok(SplitSymplecticForm { k })
    }

    pub fn k(&self) -> &[Q] {
        &self.k
    }
}

/// `⌈k₁/k₂⌉` Hirzebruch structures on `(S², k₁) × (S², k₂)`.
pub fn hirzebruch_compat_count(k1: &Q, k2: &Q) -> Result<u64, SymplecticError> {
    SplitSymplecticForm::new(vec![k1.clone(), k2.clone()])?;
    Ok(ceil_u64(&(k1 / k2)))
}

/// Whether `M₃(2a, 2b, 2c)` is of Bott type for `ω_{k₁,k₂,k₃}`.
pub fn stage3_compatible(a: i64, b: i64, c: i64, k: &SplitSymplecticForm) -> bool {
    assert_eq!(k.k.len(), 3, "stage-3 compatibility needs three weights");
    let [k1, k2, k3] = [&k.k[0], &k.k[1], &k.k[2]];
    let abs_a = qi(a.abs());
    if c == 0 {
        (k1 - &abs_a * k2 - qi(b.abs()) * k3).is_positive()
    } else {
        let inner = k2 - qi(c.abs()) * k3;
        i128::from(b) == i128::from(a) * i128::from(c)
            && inner.is_positive()
            && (k1 - &abs_a * &inner).is_positive()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompatibleCounts {
    pub n_b0: u64,
    pub n_bne0: u64,
    pub n_b: u64,
}

fn check3(k1: &Q, k2: &Q, k3: &Q) -> Result<SplitSymplecticForm, SymplecticError> {
    SplitSymplecticForm::new(vec![k1.clone(), k2.clone(), k3.clone()])
}

/// Largest `j ≥ 0` with `x − j y > 0`, for `x, y > 0`.
fn max_steps(x: &Q, y: &Q) -> u64 {
    ceil_u64(&(x / y)) - 1
}

/// `N_{B,0} = Σ_{j=0}^{b_max} ⌈(k₁ − j k₃)/k₂⌉`,
/// `N_{B≠0} = Σ_{j=1}^{c_max} ⌈k₁/(k₂ − j k₃)⌉`.
pub fn count_compatible(k1: &Q, k2: &Q, k3: &Q) -> Result<CompatibleCounts, SymplecticError> {
    check3(k1, k2, k3)?;
    let b_max = max_steps(k1, k3);
    let c_max = max_steps(k2, k3);
    if b_max > 10_000_000 || c_max > 10_000_000 {
        return Err(SymplecticError::TooLarge);
    }
    let n_b0 = (0..=b_max)
        .map(|j| ceil_u64(&((k1 - Q::from_integer(j.into()) * k3) / k2)))
        .sum::<u64>();
    let n_bne0 = (1..=c_max)
        .map(|j| ceil_u64(&(k1 / (k2 - Q::from_integer(j.into()) * k3))))
        .sum::<u64>();
    Ok(CompatibleCounts { n_b0, n_bne0, n_b: n_b0 + n_bne0 })
}

/// Lexicographic maximum of the fiber-inversion orbit of `M₃(x, y, z)`:
/// `a, b ≥ 0` when `c = 0`, and `a ≥ 0`, `c > 0` otherwise.
pub fn fiber_normal_form(x: i64, y: i64, z: i64) -> (i64, i64, i64) {
    let mut seen = BTreeSet::new();
    let mut stack = vec![BottMatrix::stage3(x, y, z)];
    while let Some(m) = stack.pop() {
        if !seen.insert(m.as_stage3().unwrap()) {
            continue;
        }
        for k in 1..=3 {
            stack.push(fiber_inversion(&m, k).expect("stage 3 inversions fit"));
        }
    }
    *seen.iter().next_back().unwrap()
}

/// One representative `(2a, 2b, 2c)` (matrix entries) per class of compatible
/// stage-3 towers, classes taken modulo fiber inversions. Found by direct
/// search over the bounded box of `(a, b, c)`.
pub fn enumerate_compatible(k1: &Q, k2: &Q, k3: &Q) -> Result<Vec<(i64, i64, i64)>, SymplecticError> {
    let form = check3(k1, k2, k3)?;
    let to_i64 = |x: &Q| ceil(x).to_i64().filter(|v| *v < 100_000).ok_or(SymplecticError::TooLarge);
    let c_lim = to_i64(&(k2 / k3))?;
    let a_lim0 = to_i64(&(k1 / k2))?;
    let b_lim0 = to_i64(&(k1 / k3))?;
    let mut found = BTreeSet::new();
    for c in -c_lim..=c_lim {
        if c == 0 {
            for a in -a_lim0..=a_lim0 {
                for b in -b_lim0..=b_lim0 {
                    if stage3_compatible(a, b, 0, &form) {
                        found.insert(fiber_normal_form(2 * a, 2 * b, 0));
                    }
                }
            }
        } else {
            let inner = k2 - qi(c.abs()) * k3;
            if !inner.is_positive() {
                continue;
            }
            let a_lim = to_i64(&(k1 / inner))?;
            for a in -a_lim..=a_lim {
                if stage3_compatible(a, a * c, c, &form) {
                    found.insert(fiber_normal_form(2 * a, 2 * a * c, 2 * c));
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// The product class `Σ kᵢ xᵢ` is Kähler on `Mₙ(A)` (entries of `A` even and
/// nonpositive below the diagonal): `Σᵢ kᵢ(δʲᵢ − mʲᵢ) > 0` for all `j`, with
/// `mʲᵢ = −Aʲᵢ/2`, and every `αⱼ² = 0`.
pub fn product_class_is_kahler(a: &BottMatrix, k: &[Q]) -> Result<bool, SymplecticError> {
    let n = a.n();
    if k.len() != n {
        return Err(SymplecticError::LengthMismatch);
    }
    if k.iter().any(|x| !x.is_positive()) {
        return Err(SymplecticError::NotPositive);
    }
    for i in 1..=n {
        for j in 1..i {
            let v = a.entry(i, j);
            if v > 0 || v % 2 != 0 {
                return Err(SymplecticError::NotEvenNonpositive);
            }
        }
    }
    let positive = (1..=n).all(|j| {
        let s: Q = (1..=n)
            .map(|i| {
                let delta_minus_m = if i == j {
                    qi(1)
                } else if i > j {
                    Q::new(a.entry(i, j).into(), 2.into())
                } else {
                    Q::zero()
                };
                &k[i - 1] * delta_minus_m
            })
            .sum();
        s.is_positive()
    });
    let ring = CohomologyRing::new(a);
    let square_zero = (1..=n).all(|j| {
        let al = ring.alpha(j);
        ring.mul(&al, &al).is_zero()
    });
    Ok(positive && square_zero)
}

/// Kähler condition for the class `Σ rᵢ xᵢ` on `M_{N+1}(k)`:
/// `rᵢ > −kᵢ r_{N+1}` when `kᵢ < 0`, `rᵢ > 0` otherwise, and `r_{N+1} > 0`.
pub fn twist1_compatible(k: &[i64], r: &[Q]) -> Result<bool, SymplecticError> {
    if r.len() != k.len() + 1 {
        return Err(SymplecticError::LengthMismatch);
    }
    let last = &r[k.len()];
    Ok(last.is_positive()
        && k.iter().zip(r).all(|(&ki, ri)| {
            if ki < 0 {
                ri > &(qi(-ki) * last)
            } else {
                ri.is_positive()
            }
        }))
}
