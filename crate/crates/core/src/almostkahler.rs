//! Extremal almost-Kähler metrics over the unit-square fiber.
//!
//! The fiber momentum is `(z₁, z₂) ∈ [0,1]²` and `Q = p₀ + p₁z₁ + p₂z₂`. The
//! symmetric matrix `P = Q·H` is fixed by six rational unknowns: `a₁₁, a₁₂, a₂₂`
//! shape `P` and `A₁, A₂, A₃` give the affine extremal function.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::poly2::Poly2;
use crate::rational::{q, qi};
use crate::Q;

/// Refinement depth cap for the positivity certificate.
pub const POSITIVITY_MAX_DEPTH: u32 = 20;

/// Interior grid size used by [`default_samples`].
pub const DEFAULT_GRID: u32 = 5;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AkError {
    #[error("Q must be positive on the closed square")]
    InvalidData,
    #[error("linear system is singular")]
    SingularSystem,
    #[error("positivity undecided after {0} refinement levels")]
    Inconclusive(u32),
    #[error("P is singular at a sample point")]
    SingularSample,
}

impl AkError {
    pub fn code(&self) -> &'static str {
        match self {
            AkError::InvalidData => "invalid_data",
            AkError::SingularSystem => "singular_system",
            AkError::Inconclusive(_) => "inconclusive",
            AkError::SingularSample => "singular_sample",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFiberData {
    p0: Q,
    p1: i64,
    p2: i64,
}

impl SquareFiberData {
    pub fn new(p0: Q, p1: i64, p2: i64) -> Result<Self, AkError> {
        let corners = [
            p0.clone(),
            &p0 + qi(p1),
            &p0 + qi(p2),
            &p0 + qi(p1) + qi(p2),
        ];
        if corners.iter().any(|c| !c.is_positive()) {
            return Err(AkError::InvalidData);
        }
        Ok(SquareFiberData { p0, p1, p2 })
    }

    pub fn p0(&self) -> &Q {
        &self.p0
    }

    pub fn p1(&self) -> i64 {
        self.p1
    }

    pub fn p2(&self) -> i64 {
        self.p2
    }

    pub fn q(&self) -> Poly2 {
        Poly2::affine(self.p0.clone(), qi(self.p1), qi(self.p2))
    }

    /// Data with the two fiber coordinates exchanged.
    pub fn swapped(&self) -> Self {
        SquareFiberData {
            p0: self.p0.clone(),
            p1: self.p2,
            p2: self.p1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AkSolution {
    pub a11: Q,
    pub a12: Q,
    pub a22: Q,
    pub big_a1: Q,
    pub big_a2: Q,
    pub big_a3: Q,
}

impl AkSolution {
    pub fn from_vec(x: &[Q]) -> Self {
        AkSolution {
            a11: x[0].clone(),
            a12: x[1].clone(),
            a22: x[2].clone(),
            big_a1: x[3].clone(),
            big_a2: x[4].clone(),
            big_a3: x[5].clone(),
        }
    }

    pub fn to_vec(&self) -> Vec<Q> {
        vec![
            self.a11.clone(),
            self.a12.clone(),
            self.a22.clone(),
            self.big_a1.clone(),
            self.big_a2.clone(),
            self.big_a3.clone(),
        ]
    }

    pub fn is_csc(&self) -> bool {
        self.big_a1.is_zero() && self.big_a2.is_zero()
    }
}

/// `z(1 - z)` in the given variable.
fn bump(v: Poly2) -> Poly2 {
    let one = Poly2::constant(Q::one());
    &v * &(&one - &v)
}

/// The matrix entries `(P₁₁, P₁₂, P₂₂)` assembled from a solution.
pub fn assemble_p(data: &SquareFiberData, sol: &AkSolution) -> (Poly2, Poly2, Poly2) {
    let b1 = bump(Poly2::z1());
    let b2 = bump(Poly2::z2());
    let two_q = data.q().scale(&qi(2));
    let p11 = &b1 * &(&two_q + &b1.scale(&sol.a11));
    let p12 = (&b1 * &b2).scale(&sol.a12);
    let p22 = &b2 * &(&two_q + &b2.scale(&sol.a22));
    (p11, p12, p22)
}

/// Coefficient matrix in the unknowns `(a₁₁, a₁₂, a₂₂, A₁, A₂, A₃)`, rows
/// indexed by the monomials `1, z₁, z₂, z₁², z₁z₂, z₂²`.
pub fn system_matrix(data: &SquareFiberData) -> Vec<Vec<Q>> {
    let (p0, p1, p2) = (data.p0.clone(), qi(data.p1), qi(data.p2));
    let z = Q::zero();
    vec![
        vec![qi(-2), qi(-2), qi(-2), z.clone(), z.clone(), -p0.clone()],
        vec![qi(12), qi(4), z.clone(), -p0.clone(), z.clone(), -p1.clone()],
        vec![z.clone(), qi(4), qi(12), z.clone(), -p0.clone(), -p2.clone()],
        vec![qi(-12), z.clone(), z.clone(), -p1.clone(), z.clone(), z.clone()],
        vec![z.clone(), qi(-8), z.clone(), -p2.clone(), -p1.clone(), z.clone()],
        vec![z.clone(), z.clone(), qi(-12), z.clone(), -p2, z],
    ]
}

pub fn system_rhs(data: &SquareFiberData) -> Vec<Q> {
    let (p0, p1, p2) = (data.p0.clone(), qi(data.p1), qi(data.p2));
    vec![
        qi(-4) + qi(4) * &p1 + qi(4) * &p2 - qi(8) * p0,
        qi(-16) * p1,
        qi(-16) * p2,
        Q::zero(),
        Q::zero(),
        Q::zero(),
    ]
}

pub fn system_determinant(data: &SquareFiberData) -> Q {
    linalg::det(&system_matrix(data))
}

/// `6p₀² + 6p₀p₁ + p₁² + 6p₀p₂ + 3p₁p₂ + p₂²`, positive whenever `Q > 0` on the square.
pub fn determinant_quadratic(p0: &Q, p1: &Q, p2: &Q) -> Q {
    qi(6) * p0 * p0 + qi(6) * p0 * p1 + p1 * p1 + qi(6) * p0 * p2 + qi(3) * p1 * p2 + p2 * p2
}

/// The full 6×6 determinant equals `-96 (2p₀ + p₁ + p₂)` times [`determinant_quadratic`].
pub fn determinant_linear_factor(p0: &Q, p1: &Q, p2: &Q) -> Q {
    qi(-96) * (qi(2) * p0 + p1 + p2)
}

pub fn solve_ak(data: &SquareFiberData) -> Result<AkSolution, AkError> {
    let x = linalg::solve(&system_matrix(data), &system_rhs(data)).ok_or(AkError::SingularSystem)?;
    Ok(AkSolution::from_vec(&x))
}

/// `4 - P₁₁,₁₁ - 2P₁₂,₁₂ - P₂₂,₂₂ - (A₁z₁ + A₂z₂ + A₃)Q`.
pub fn residual(data: &SquareFiberData, sol: &AkSolution) -> Poly2 {
    let (p11, p12, p22) = assemble_p(data, sol);
    let lhs = &(&(&Poly2::constant(qi(4)) - &p11.d1().d1()) - &p12.d1().d2().scale(&qi(2))) - &p22.d2().d2();
    let affine = Poly2::affine(sol.big_a3.clone(), sol.big_a1.clone(), sol.big_a2.clone());
    &lhs - &(&affine * &data.q())
}

/// Left-hand sides of the two strict inequalities for positive definiteness
/// of `P` on the open square, after removing the boundary factors.
pub fn positivity_polynomials(data: &SquareFiberData, sol: &AkSolution) -> (Poly2, Poly2) {
    let b1 = bump(Poly2::z1());
    let b2 = bump(Poly2::z2());
    let two_q = data.q().scale(&qi(2));
    let g1 = &two_q + &b1.scale(&sol.a11);
    let g2 = &two_q + &b2.scale(&sol.a22);
    let det = &(&g1 * &g2) - &(&b1 * &b2).scale(&(&sol.a12 * &sol.a12));
    (det, g1)
}

/// Decides `P > 0` on `(0,1)²`.
pub fn check_positivity(data: &SquareFiberData, sol: &AkSolution) -> Result<bool, AkError> {
    let (det, g1) = positivity_polynomials(data, sol);
    for g in [&det, &g1] {
        match certify_positive(g, POSITIVITY_MAX_DEPTH) {
            Certificate::Positive => {}
            Certificate::Negative => return Ok(false),
            Certificate::Undecided => return Err(AkError::Inconclusive(POSITIVITY_MAX_DEPTH)),
        }
    }
    Ok(true)
}

enum Certificate {
    Positive,
    Negative,
    Undecided,
}

/// Lower bound of `g` on `[x, x+h] × [y, y+h]` from its Taylor expansion at
/// the lower corner.
fn box_lower_bound(g: &Poly2, x: &Q, y: &Q, h: &Q) -> Q {
    let shifted = g.compose_affine(x, h, y, h);
    let mut bound = shifted.coeff(0, 0);
    for (k, c) in shifted.terms() {
        if *k != (0, 0) && c.is_negative() {
            bound += c;
        }
    }
    bound
}

fn certify_positive(g: &Poly2, max_depth: u32) -> Certificate {
    let mut stack = vec![(Q::zero(), Q::zero(), Q::one(), 0u32)];
    while let Some((x, y, h, depth)) = stack.pop() {
        if box_lower_bound(g, &x, &y, &h).is_positive() {
            continue;
        }
        let half = &h / qi(2);
        let cx = &x + &half;
        let cy = &y + &half;
        if !g.eval(&cx, &cy).is_positive() {
            return Certificate::Negative;
        }
        if depth >= max_depth {
            return Certificate::Undecided;
        }
        for (dx, dy) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let nx = &x + &half * qi(dx);
            let ny = &y + &half * qi(dy);
            stack.push((nx, ny, half.clone(), depth + 1));
        }
    }
    Certificate::Positive
}

/// Interior grid `{k/(n+1)}²` for `k = 1..=n`.
pub fn default_samples(n: u32) -> Vec<(Q, Q)> {
    let d = i64::from(n) + 1;
    let mut out = Vec::new();
    for i in 1..d {
        for j in 1..d {
            out.push((q(i, d), q(j, d)));
        }
    }
    out
}

/// Value and gradient of `N/D` at a point, with `D ≠ 0`.
fn quotient_gradient(n: &Poly2, d: &Poly2, x: &Q, y: &Q) -> (Q, Q) {
    let dv = d.eval(x, y);
    let nv = n.eval(x, y);
    let d2 = &dv * &dv;
    let g1 = (n.d1().eval(x, y) * &dv - &nv * d.d1().eval(x, y)) / &d2;
    let g2 = (n.d2().eval(x, y) * &dv - &nv * d.d2().eval(x, y)) / &d2;
    (g1, g2)
}

/// The two integrability defects `∂₂H¹¹ - ∂₁H¹²` and `∂₁H²² - ∂₂H¹²` at a point.
pub fn integrability_residual(
    data: &SquareFiberData,
    sol: &AkSolution,
    z1: &Q,
    z2: &Q,
) -> Result<(Q, Q), AkError> {
    let (p11, p12, p22) = assemble_p(data, sol);
    let det = &(&p11 * &p22) - &(&p12 * &p12);
    if det.eval(z1, z2).is_zero() {
        return Err(AkError::SingularSample);
    }
    let qp = data.q();
    // H⁻¹ = Q adj(P) / det P
    let (_, h11_2) = quotient_gradient(&(&qp * &p22), &det, z1, z2);
    let (h12_1, h12_2) = quotient_gradient(&-&(&qp * &p12), &det, z1, z2);
    let (h22_1, _) = quotient_gradient(&(&qp * &p11), &det, z1, z2);
    Ok((h11_2 - h12_1, h22_1 - h12_2))
}

/// True iff both integrability identities hold at every sample.
pub fn check_integrability(
    data: &SquareFiberData,
    sol: &AkSolution,
    samples: &[(Q, Q)],
) -> Result<bool, AkError> {
    for (x, y) in samples {
        let (r1, r2) = integrability_residual(data, sol, x, y)?;
        if !r1.is_zero() || !r2.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The vanishing and normal-derivative conditions of `P` on the four edges.
pub fn boundary_conditions_hold(p11: &Poly2, p12: &Poly2, p22: &Poly2, qp: &Poly2) -> bool {
    let (zero, one) = (Q::zero(), Q::one());
    let two_q = qp.scale(&qi(2));
    let checks = [
        p11.subs_z1(&zero).is_zero(),
        p12.subs_z1(&zero).is_zero(),
        p11.d1().subs_z1(&zero) == two_q.subs_z1(&zero),
        p11.subs_z1(&one).is_zero(),
        p12.subs_z1(&one).is_zero(),
        p11.d1().subs_z1(&one) == -&two_q.subs_z1(&one),
        p22.subs_z2(&one).is_zero(),
        p12.subs_z2(&one).is_zero(),
        p22.d2().subs_z2(&one) == -&two_q.subs_z2(&one),
        p22.subs_z2(&zero).is_zero(),
        p12.subs_z2(&zero).is_zero(),
        p22.d2().subs_z2(&zero) == two_q.subs_z2(&zero),
    ];
    checks.iter().all(|c| *c)
}

pub fn boundary_conditions_check(sol: &AkSolution, data: &SquareFiberData) -> bool {
    let (p11, p12, p22) = assemble_p(data, sol);
    boundary_conditions_hold(&p11, &p12, &p22, &data.q())
}
