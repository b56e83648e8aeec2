//! Admissible Kähler classes on projectivised line bundles.
//!
//! A class is fixed by components `(d_a, s_a, r_a)` with `0 < |r_a| < 1`.
//! The fiber momentum `z` ranges over `[-1, 1]`, `p_c(z) = Π (1 + r_a z)^{d_a}`
//! and the metric is encoded by a profile `F` with `Θ = F / p_c`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::poly::Poly;
use crate::rational::{q, qi};
use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AdmissibleError {
    #[error("at least one component is required")]
    Empty,
    #[error("component {0} has zero degree")]
    ZeroDegree(usize),
    #[error("component {0} needs 0 < |r| < 1")]
    RadiusOutOfRange(usize),
    #[error("endpoint system is singular")]
    SingularSystem,
    #[error("profile degree {degree} exceeds {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("transform parameters are singular")]
    SingularParameters,
    #[error("transformed component {0} leaves 0 < |r| < 1")]
    TransformedOutOfRange(usize),
    #[error("evaluation point is a pole")]
    PoleHit,
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

impl AdmissibleError {
    pub fn code(&self) -> &'static str {
        match self {
            AdmissibleError::Empty => "empty_data",
            AdmissibleError::ZeroDegree(_) => "zero_degree",
            AdmissibleError::RadiusOutOfRange(_) => "radius_out_of_range",
            AdmissibleError::SingularSystem => "singular_system",
            AdmissibleError::DegreeTooHigh { .. } => "degree_too_high",
            AdmissibleError::SingularParameters => "singular_parameters",
            AdmissibleError::TransformedOutOfRange(_) => "transformed_out_of_range",
            AdmissibleError::PoleHit => "pole_hit",
            AdmissibleError::InvalidArgument(_) => "invalid_argument",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub d: u32,
    pub s: Q,
    pub r: Q,
}

impl Component {
    pub fn new(d: u32, s: Q, r: Q) -> Self {
        Component { d, s, r }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleData {
    components: Vec<Component>,
}

impl AdmissibleData {
    pub fn new(components: Vec<Component>) -> Result<Self, AdmissibleError> {
        if components.is_empty() {
            return Err(AdmissibleError::Empty);
        }
        for (i, c) in components.iter().enumerate() {
            if c.d == 0 {
                return Err(AdmissibleError::ZeroDegree(i));
            }
            if c.r.is_zero() || c.r.abs() >= Q::one() {
                return Err(AdmissibleError::RadiusOutOfRange(i));
            }
        }
        Ok(AdmissibleData { components })
    }

    /// Two curve factors with `s = (2, -2)`, the setting of the bidegree `(1,-1)` bundle.
    pub fn ks(r1: Q, r2: Q) -> Result<Self, AdmissibleError> {
        Self::new(vec![Component::new(1, qi(2), r1), Component::new(1, qi(-2), r2)])
    }

    /// `2m` curve factors, `m` of them with radius `r₊` and `m` with `r₋`.
    pub fn balanced(m: u32, r_plus: Q, r_minus: Q) -> Result<Self, AdmissibleError> {
        Self::new(vec![
            Component::new(m, qi(2), r_plus),
            Component::new(m, qi(-2), r_minus),
        ])
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn radii(&self) -> Vec<Q> {
        self.components.iter().map(|c| c.r.clone()).collect()
    }

    /// Complex dimension of the total space, `1 + Σ d_a`.
    pub fn dimension(&self) -> usize {
        1 + self.components.iter().map(|c| c.d as usize).sum::<usize>()
    }

    pub fn p_c(&self) -> Poly {
        self.components
            .iter()
            .fold(Poly::one(), |acc, c| &acc * &Poly::linear(Q::one(), c.r.clone()).pow(c.d))
    }

    /// `Σ 2 d_a s_a r_a p_c / (1 + r_a z)`, a polynomial.
    fn base_scalar_numerator(&self) -> Poly {
        let mut out = Poly::zero();
        for (i, c) in self.components.iter().enumerate() {
            let mut term = Poly::linear(Q::one(), c.r.clone()).pow(c.d - 1);
            for (j, o) in self.components.iter().enumerate() {
                if i != j {
                    term = &term * &Poly::linear(Q::one(), o.r.clone()).pow(o.d);
                }
            }
            let k = qi(2 * c.d as i64) * &c.s * &c.r;
            out = &out + &term.scale(&k);
        }
        out
    }
}

/// Extremal profile with scalar curvature `a1 z + a3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalProfile {
    pub f: Poly,
    pub a1: Q,
    pub a3: Q,
}

fn twice_integrated(p: &Poly) -> Poly {
    p.antiderivative().antiderivative()
}

pub fn extremal_polynomial(data: &AdmissibleData) -> Result<ExtremalProfile, AdmissibleError> {
    let pc = data.p_c();
    let g = twice_integrated(&data.base_scalar_numerator());
    let u = twice_integrated(&(&Poly::z() * &pc));
    let v = twice_integrated(&pc);
    let (gd, ud, vd) = (g.derivative(), u.derivative(), v.derivative());
    let (one, m1) = (Q::one(), -Q::one());

    // Unknowns (A1, A3, C1, C0) with F = G - A1 U - A3 V + C1 z + C0.
    let m = vec![
        vec![-u.eval(&one), -v.eval(&one), one.clone(), one.clone()],
        vec![-u.eval(&m1), -v.eval(&m1), m1.clone(), one.clone()],
        vec![-ud.eval(&one), -vd.eval(&one), one.clone(), Q::zero()],
        vec![-ud.eval(&m1), -vd.eval(&m1), one.clone(), Q::zero()],
    ];
    let rhs = vec![
        -g.eval(&one),
        -g.eval(&m1),
        -qi(2) * pc.eval(&one) - gd.eval(&one),
        qi(2) * pc.eval(&m1) - gd.eval(&m1),
    ];
    let x = linalg::solve(&m, &rhs).ok_or(AdmissibleError::SingularSystem)?;
    let f = &(&(&g - &u.scale(&x[0])) - &v.scale(&x[1])) + &Poly::linear(x[3].clone(), x[2].clone());
    Ok(ExtremalProfile {
        f,
        a1: x[0].clone(),
        a3: x[1].clone(),
    })
}

/// True iff `F > 0` on the open interval `(-1, 1)`.
pub fn is_positive_on_interval(f: &Poly) -> bool {
    if f.is_zero() {
        return false;
    }
    let (lo, hi) = (-Q::one(), Q::one());
    f.count_roots(&lo, &hi) == 0 && f.eval(&Q::zero()).is_positive()
}

pub fn is_csc(profile: &ExtremalProfile) -> bool {
    profile.a1.is_zero()
}

/// Kähler–Einstein test for two curve factors with `s = (2, -2)`: CSC with
/// `r_a s_a = 1` on both factors.
pub fn is_ke_ks(r1: &Q, r2: &Q) -> bool {
    let Ok(data) = AdmissibleData::ks(r1.clone(), r2.clone()) else {
        return false;
    };
    let Ok(profile) = extremal_polynomial(&data) else {
        return false;
    };
    is_csc(&profile) && data.components().iter().all(|c| &c.s * &c.r == Q::one())
}

/// `α₀β₁ - α₁β₀` for the balanced class on the `2m`-fold product of curves.
pub fn csc_condition(m: u32, r_plus: &Q, r_minus: &Q) -> Q {
    let (one, m1) = (Q::one(), -Q::one());
    let lp = Poly::linear(one.clone(), r_plus.clone());
    let lm = Poly::linear(one.clone(), r_minus.clone());
    let full = &lp.pow(m) * &lm.pow(m);
    let alpha0 = full.integrate(&m1, &one);
    let alpha1 = (&Poly::z() * &full).integrate(&m1, &one);

    let e_plus = full.eval(&one);
    let e_minus = full.eval(&m1);
    let (mut beta0, mut beta1) = (&e_plus + &e_minus, &e_plus - &e_minus);
    if m > 0 {
        let reduced = &lp.pow(m - 1) * &lm.pow(m - 1);
        let k = qi(2 * m as i64) * (r_plus - r_minus);
        beta0 += &k * reduced.integrate(&m1, &one);
        beta1 += &k * (&Poly::z() * &reduced).integrate(&m1, &one);
    }
    alpha0 * beta1 - alpha1 * beta0
}

/// The CSC condition as a polynomial in `r₋` (degree at most `2m`).
pub fn csc_condition_poly(m: u32, r_plus: &Q) -> Poly {
    let n = 2 * m as usize + 1;
    let xs: Vec<Q> = (1..=n as i64).map(|k| q(-k, n as i64 + 1)).collect();
    let ys: Vec<Q> = xs.iter().map(|x| csc_condition(m, r_plus, x)).collect();
    let p = lagrange(&xs, &ys);
    debug_assert_eq!(p.eval(&q(1, 7)), csc_condition(m, r_plus, &q(1, 7)));
    p
}

fn lagrange(xs: &[Q], ys: &[Q]) -> Poly {
    let mut out = Poly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::one();
        let mut denom = Q::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = &basis * &Poly::linear(-xj.clone(), Q::one());
                denom *= xi - xj;
            }
        }
        out = &out + &basis.scale(&(yi / denom));
    }
    out
}

/// Isolating bracket for one root; `lo == hi` when the root is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: Q,
    pub hi: Q,
}

impl RootBracket {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Q {
        crate::rational::midpoint(&self.lo, &self.hi)
    }

    pub fn contains(&self, x: &Q) -> bool {
        if self.is_exact() {
            x == &self.lo
        } else {
            &self.lo < x && x < &self.hi
        }
    }
}

pub const DEFAULT_ROOT_TOLERANCE: f64 = 1e-12;

/// Distinct roots of the CSC condition for `r₋ ∈ (-1, 0)`, each bracketed to
/// width at most `tol`.
pub fn csc_family_solve(m: u32, r_plus: &Q, tol: &Q) -> Result<Vec<RootBracket>, AdmissibleError> {
    check_family_args(m, r_plus, tol)?;
    Ok(bracket_roots(&csc_condition_poly(m, r_plus), tol))
}

fn check_family_args(m: u32, r_plus: &Q, tol: &Q) -> Result<(), AdmissibleError> {
    if m == 0 {
        return Err(AdmissibleError::InvalidArgument("m must be positive"));
    }
    if !tol.is_positive() {
        return Err(AdmissibleError::InvalidArgument("tolerance must be positive"));
    }
    if !r_plus.is_positive() || r_plus >= &Q::one() {
        return Err(AdmissibleError::InvalidArgument("r_plus must lie in (0, 1)"));
    }
    Ok(())
}

fn bracket_roots(p: &Poly, tol: &Q) -> Vec<RootBracket> {
    if p.is_zero() {
        return Vec::new();
    }
    p.isolate_roots(&-Q::one(), &Q::zero())
        .into_iter()
        .map(|(lo, hi)| {
            let (lo, hi) = if lo == hi { (lo, hi) } else { p.refine_root(&lo, &hi, tol) };
            RootBracket { lo, hi }
        })
        .collect()
}

/// Roots in `(-1, 0)` other than the family `r₋ = -r₊`. A root shared with
/// that family is kept when it has higher multiplicity.
pub fn second_family_roots(m: u32, r_plus: &Q, tol: &Q) -> Result<Vec<RootBracket>, AdmissibleError> {
    check_family_args(m, r_plus, tol)?;
    let p = csc_condition_poly(m, r_plus);
    let first = Poly::linear(r_plus.clone(), Q::one());
    let (deflated, rem) = p.divrem(&first);
    if !rem.is_zero() {
        return Ok(bracket_roots(&p, tol));
    }
    Ok(bracket_roots(&deflated, tol))
}

/// Möbius change of the fiber coordinate with parameters `(α, β)`.
pub fn cproj_transform(
    f: &Poly,
    data: &AdmissibleData,
    alpha: &Q,
    beta: &Q,
) -> Result<(Poly, AdmissibleData), AdmissibleError> {
    let denom_ab = beta * beta - alpha * alpha;
    if denom_ab.is_zero() {
        return Err(AdmissibleError::SingularParameters);
    }
    let top = data.dimension() + 1;
    if let Some(deg) = f.degree() {
        if deg > top {
            return Err(AdmissibleError::DegreeTooHigh { degree: deg, max: top });
        }
    }
    let mut scale = denom_ab;
    let mut comps = Vec::with_capacity(data.components().len());
    for (i, c) in data.components().iter().enumerate() {
        let b = beta - alpha * &c.r;
        if b.is_zero() {
            return Err(AdmissibleError::SingularParameters);
        }
        for _ in 0..c.d {
            scale *= &b;
        }
        let r = (beta * &c.r - alpha) / &b;
        if r.is_zero() || r.abs() >= Q::one() {
            return Err(AdmissibleError::TransformedOutOfRange(i));
        }
        comps.push(Component::new(c.d, c.s.clone(), r));
    }
    // (β z - α)^k (β - α z)^{top - k}
    let num = Poly::linear(-alpha.clone(), beta.clone());
    let den = Poly::linear(beta.clone(), -alpha.clone());
    let mut out = Poly::zero();
    for (k, fk) in f.coeffs().iter().enumerate() {
        if fk.is_zero() {
            continue;
        }
        let term = &num.pow(k as u32) * &den.pow((top - k) as u32);
        out = &out + &term.scale(fk);
    }
    let out = out.scale(&(Q::one() / scale));
    Ok((out, AdmissibleData { components: comps }))
}

/// Parameters undoing `(α, β)`.
pub fn cproj_inverse(alpha: &Q, beta: &Q) -> (Q, Q) {
    (-alpha.clone(), beta.clone())
}

/// Parameters of `(α, β)` followed by `(α', β')`.
pub fn cproj_compose(first: (&Q, &Q), second: (&Q, &Q)) -> (Q, Q) {
    let (a, b) = first;
    let (a2, b2) = second;
    (a * b2 + a2 * b, b * b2 + a * a2)
}

/// `Σ 2 d_a s_a r_a / (1 + r_a z) - F''(z) / p_c(z)`.
pub fn scalar_profile(f: &Poly, data: &AdmissibleData, z: &Q) -> Result<Q, AdmissibleError> {
    let mut acc = Q::zero();
    for c in data.components() {
        let den = Q::one() + &c.r * z;
        if den.is_zero() {
            return Err(AdmissibleError::PoleHit);
        }
        acc += qi(2 * c.d as i64) * &c.s * &c.r / den;
    }
    let pc = data.p_c().eval(z);
    Ok(acc - f.derivative().derivative().eval(z) / pc)
}
