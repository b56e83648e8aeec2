//! Fan data of a Bott tower: support functions, ample and Kähler cones,
//! Demazure roots, reductivity, Fano and CSC obstructions.
//!
//! The lattice has basis `v₁..vₙ`; the other rays are `uⱼ = −Σᵢ Aʲᵢ vᵢ`, the
//! negated columns of `A`. Maximal cones pick one of `uⱼ, vⱼ` for every `j`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::rational::{qi, Q};
use crate::tower::{canonical_form, BottMatrix, TowerError, DEFAULT_STAGE_BOUND};

/// One of the two rays of a primitive pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RayKind {
    U,
    V,
}

/// A ray `u_j` or `v_j`, with 1-based `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ray {
    pub kind: RayKind,
    pub index: usize,
}

/// Integer coordinates of `u_j` in the `v`-basis.
pub fn u_ray(a: &BottMatrix, j: usize) -> Vec<i64> {
    (1..=a.n()).map(|i| -a.entry(i, j)).collect()
}

/// Integer coordinates of a ray.
pub fn ray_vector(a: &BottMatrix, r: Ray) -> Vec<i64> {
    match r.kind {
        RayKind::U => u_ray(a, r.index),
        RayKind::V => (1..=a.n()).map(|i| i64::from(i == r.index)).collect(),
    }
}

/// All `2n` rays, ordered `u₁, v₁, u₂, v₂, …`.
pub fn rays(n: usize) -> Vec<Ray> {
    (1..=n)
        .flat_map(|j| {
            [RayKind::U, RayKind::V]
                .into_iter()
                .map(move |kind| Ray { kind, index: j })
        })
        .collect()
}

/// Values of an invariant divisor's support function on the rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportFunction {
    /// Values on `u₁..uₙ`.
    pub s: Vec<Q>,
    /// Values on `v₁..vₙ`.
    pub t: Vec<Q>,
}

impl SupportFunction {
    pub fn new(s: Vec<Q>, t: Vec<Q>) -> Self {
        assert_eq!(s.len(), t.len());
        SupportFunction { s, t }
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    /// The anticanonical divisor `Σ_ρ D_ρ`: value 1 on every ray.
    pub fn anticanonical(n: usize) -> Self {
        SupportFunction::new(vec![Q::one(); n], vec![Q::one(); n])
    }

    /// `D = Σ rⱼ D_{eⱼ}` with `eⱼ` the chosen ray of pair `j`.
    pub fn from_basis(choice: &[RayKind], r: &[Q]) -> Self {
        assert_eq!(choice.len(), r.len());
        let n = r.len();
        let mut f = SupportFunction::new(vec![Q::zero(); n], vec![Q::zero(); n]);
        for (j, (k, v)) in choice.iter().zip(r).enumerate() {
            match k {
                RayKind::U => f.s[j] = v.clone(),
                RayKind::V => f.t[j] = v.clone(),
            }
        }
        f
    }

    pub fn value(&self, r: Ray) -> &Q {
        match r.kind {
            RayKind::U => &self.s[r.index - 1],
            RayKind::V => &self.t[r.index - 1],
        }
    }
}

/// Writes `w` (in `v`-coordinates) as a nonnegative combination of the rays of
/// a maximal cone containing it. Pairs with zero weight are omitted.
///
/// The basis of any maximal cone is lower triangular with `±1` diagonal, so the
/// cone is found row by row: a positive residual picks `v_i`, a negative one
/// `u_i`, and a zero residual makes the choice irrelevant.
pub fn cone_decomposition(a: &BottMatrix, w: &[Q]) -> Vec<(Ray, Q)> {
    let n = a.n();
    assert_eq!(w.len(), n);
    let mut lambda: Vec<(Ray, Q)> = Vec::new();
    // Weights on chosen u-rays, by pair index, for the triangular solve.
    let mut u_weight = vec![Q::zero(); n];
    for i in 0..n {
        let mut r = w[i].clone();
        for (j, uw) in u_weight.iter().enumerate().take(i) {
            if !uw.is_zero() {
                // column of u_j has entry −A[i][j] in row i
                r += uw * qi(a.entry(i + 1, j + 1));
            }
        }
        if r.is_positive() {
            lambda.push((Ray { kind: RayKind::V, index: i + 1 }, r));
        } else if r.is_negative() {
            let l = -r;
            u_weight[i] = l.clone();
            lambda.push((Ray { kind: RayKind::U, index: i + 1 }, l));
        }
    }
    lambda
}

/// Value of the piecewise-linear support function at `w`.
pub fn eval_support(a: &BottMatrix, psi: &SupportFunction, w: &[Q]) -> Q {
    cone_decomposition(a, w)
        .iter()
        .map(|(r, l)| l * psi.value(*r))
        .sum()
}

/// `uⱼ + vⱼ = −Σ_{i>j} Aʲᵢ vᵢ`.
fn pair_sum(a: &BottMatrix, j: usize) -> Vec<Q> {
    (1..=a.n())
        .map(|i| if i > j { qi(-a.entry(i, j)) } else { Q::zero() })
        .collect()
}

/// Batyrev's test over the primitive collections `{uⱼ, vⱼ}`:
/// `ψ(uⱼ) + ψ(vⱼ) > ψ(uⱼ + vⱼ)` (ample), or `≥` when `strict` is false (nef).
pub fn is_ample(a: &BottMatrix, psi: &SupportFunction, strict: bool) -> bool {
    (1..=a.n()).all(|j| {
        let lhs = &psi.s[j - 1] + &psi.t[j - 1];
        let rhs = eval_support(a, psi, &pair_sum(a, j));
        if strict {
            lhs > rhs
        } else {
            lhs >= rhs
        }
    })
}

/// `coeffs · r > rhs` (or `≥` when not strict).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub coeffs: Vec<Q>,
    pub rhs: Q,
    pub strict: bool,
}

impl Inequality {
    pub fn holds(&self, r: &[Q]) -> bool {
        let lhs: Q = self.coeffs.iter().zip(r).map(|(c, x)| c * x).sum();
        if self.strict {
            lhs > self.rhs
        } else {
            lhs >= self.rhs
        }
    }
}

/// The ample cone in the coordinates `D = Σ rⱼ D_{eⱼ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerCone {
    pub choice: Vec<RayKind>,
    pub inequalities: Vec<Inequality>,
    /// The cone is exactly `{rⱼ > 0 for all j}`.
    pub first_orthant: bool,
}

impl KahlerCone {
    pub fn contains(&self, r: &[Q]) -> bool {
        self.inequalities.iter().all(|i| i.holds(r))
    }
}

/// Ample-cone inequalities for the generator set `choice`.
///
/// The cone containing `uⱼ + vⱼ` does not depend on the divisor, so every
/// Batyrev inequality is linear in `r`.
pub fn kahler_cone(a: &BottMatrix, choice: &[RayKind]) -> KahlerCone {
    let n = a.n();
    assert_eq!(choice.len(), n);
    let mut inequalities = Vec::with_capacity(n);
    for j in 1..=n {
        let mut coeffs = vec![Q::zero(); n];
        coeffs[j - 1] = Q::one();
        for (ray, l) in cone_decomposition(a, &pair_sum(a, j)) {
            if choice[ray.index - 1] == ray.kind {
                coeffs[ray.index - 1] -= l;
            }
        }
        inequalities.push(Inequality { coeffs, rhs: Q::zero(), strict: true });
    }
    let first_orthant = inequalities
        .iter()
        .enumerate()
        .all(|(j, ie)| ie.coeffs.iter().enumerate().all(|(k, c)| *c == qi(i64::from(j == k))));
    KahlerCone { choice: choice.to_vec(), inequalities, first_orthant }
}

/// The `2^{n−1}` generator sets with `D₁ = D_{u₁}`.
pub fn basis_choices(n: usize) -> Vec<Vec<RayKind>> {
    (0..1u64 << (n - 1))
        .map(|bits| {
            (0..n)
                .map(|j| {
                    if j > 0 && (bits >> (j - 1)) & 1 == 1 {
                        RayKind::V
                    } else {
                        RayKind::U
                    }
                })
                .collect()
        })
        .collect()
}

/// Demazure roots `χ` with `χ(u_ρ) = 1` for one ray and `χ(u_ρ′) ≤ 0` for the
/// others, as integer covectors in the dual basis `ε₁..εₙ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemazureRootSet {
    pub roots: BTreeSet<Vec<i64>>,
}

impl DemazureRootSet {
    pub fn contains(&self, chi: &[i64]) -> bool {
        self.roots.contains(chi)
    }

    pub fn is_symmetric(&self) -> bool {
        self.roots
            .iter()
            .all(|r| self.roots.contains(&r.iter().map(|x| -x).collect::<Vec<_>>()))
    }
}

/// `εᵢ` as a covector.
pub fn epsilon(n: usize, i: usize) -> Vec<i64> {
    (1..=n).map(|k| i64::from(k == i)).collect()
}

fn dot(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// All Demazure roots, using the default stage bound.
pub fn demazure_roots(a: &BottMatrix) -> Result<DemazureRootSet, TowerError> {
    demazure_roots_bounded(a, DEFAULT_STAGE_BOUND)
}

/// All Demazure roots. For each ray the root polytope is bounded; its vertices
/// come from `n`-subsets of tight constraints and give per-coordinate bounds
/// for the lattice-point search.
pub fn demazure_roots_bounded(a: &BottMatrix, bound: usize) -> Result<DemazureRootSet, TowerError> {
    let n = a.n();
    if n > bound {
        return Err(TowerError::StageTooLarge { n, bound });
    }
    let all: Vec<Vec<i64>> = rays(n).into_iter().map(|r| ray_vector(a, r)).collect();
    let mut roots = BTreeSet::new();
    for (rho, target) in all.iter().enumerate() {
        let others: Vec<&Vec<i64>> =
            all.iter().enumerate().filter(|(i, _)| *i != rho).map(|(_, v)| v).collect();
        let Some((lo, hi)) = root_box(target, &others, n) else {
            continue;
        };
        let mut chi = lo.clone();
        'outer: loop {
            if dot(&chi, target) == 1 && others.iter().all(|u| dot(&chi, u) <= 0) {
                roots.insert(chi.clone());
            }
            let mut k = 0;
            loop {
                if k == n {
                    break 'outer;
                }
                if chi[k] < hi[k] {
                    chi[k] += 1;
                    break;
                }
                chi[k] = lo[k];
                k += 1;
            }
        }
    }
    Ok(DemazureRootSet { roots })
}

/// Integer bounding box of `{χ : χ·target = 1, χ·u ≤ 0}` from its vertices.
fn root_box(target: &[i64], others: &[&Vec<i64>], n: usize) -> Option<(Vec<i64>, Vec<i64>)> {
    let to_q = |v: &[i64]| v.iter().map(|&x| qi(x)).collect::<Vec<Q>>();
    let mut lo: Option<Vec<Q>> = None;
    let mut hi: Option<Vec<Q>> = None;
    let m = others.len();
    let mut subset: Vec<usize> = (0..n - 1).collect();
    loop {
        let mut rows = vec![to_q(target)];
        let mut rhs = vec![Q::one()];
        for &i in &subset {
            rows.push(to_q(others[i]));
            rhs.push(Q::zero());
        }
        if let Some(x) = linalg::solve(&rows, &rhs) {
            let feasible = others.iter().all(|u| {
                let v: Q = u.iter().zip(&x).map(|(a, b)| b * qi(*a)).sum();
                !v.is_positive()
            });
            if feasible {
                match (&mut lo, &mut hi) {
                    (Some(l), Some(h)) => {
                        for k in 0..n {
                            if x[k] < l[k] {
                                l[k] = x[k].clone();
                            }
                            if x[k] > h[k] {
                                h[k] = x[k].clone();
                            }
                        }
                    }
                    _ => {
                        lo = Some(x.clone());
                        hi = Some(x);
                    }
                }
            }
        }
        // next (n−1)-subset of 0..m
        let k = n - 1;
        let Some(i) = (0..k).rev().find(|&i| subset[i] < m - k + i) else {
            break;
        };
        subset[i] += 1;
        for t in i + 1..k {
            subset[t] = subset[t - 1] + 1;
        }
        if k == 0 {
            break;
        }
    }
    let (lo, hi) = (lo?, hi?);
    use num_traits::ToPrimitive;
    let lo: Vec<i64> = lo.iter().map(|v| v.ceil().to_integer().to_i64().unwrap()).collect();
    let hi: Vec<i64> = hi.iter().map(|v| v.floor().to_integer().to_i64().unwrap()).collect();
    lo.iter().zip(&hi).all(|(l, h)| l <= h).then_some((lo, hi))
}

/// `R(Σ) = −R(Σ)`.
pub fn is_reductive(a: &BottMatrix) -> Result<bool, TowerError> {
    Ok(demazure_roots(a)?.is_symmetric())
}

/// Why a tower cannot carry a CSC Kähler metric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CscWitness {
    /// Row `i` (1-based) has same-signed, not all zero, entries below the
    /// diagonal.
    SameSignRow(usize),
    /// The leading block of size `n − twist` differs from the identity and
    /// has topological twist 0.
    TwistBlock { size: usize },
}

/// A sufficient condition for `Aut₀` to be non-reductive.
pub fn csc_obstructed(a: &BottMatrix) -> Option<CscWitness> {
    let n = a.n();
    for i in 2..=n {
        let row: Vec<i64> = (1..i).map(|j| a.entry(i, j)).collect();
        if row.iter().any(|&x| x != 0) && (row.iter().all(|&x| x >= 0) || row.iter().all(|&x| x <= 0)) {
            return Some(CscWitness::SameSignRow(i));
        }
    }
    let size = n - a.twist();
    if size >= 2 {
        let block = BottMatrix::new(a.rows()[..size].iter().map(|r| r[..size].to_vec()).collect())
            .expect("leading block of a unipotent matrix");
        if !block.is_identity()
            && crate::cohomology::CohomologyRing::new(&block).topological_twist() == 0
        {
            return Some(CscWitness::TwistBlock { size });
        }
    }
    None
}

/// `c₁` is ample, i.e. the anticanonical support function is strictly convex.
pub fn is_fano(a: &BottMatrix) -> bool {
    is_ample(a, &SupportFunction::anticanonical(a.n()), true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KeStatus {
    Ke,
    NotKe,
    Unknown,
}

/// Kähler–Einstein status from the classification in stages 3 and 4.
pub fn kahler_einstein_stage34(a: &BottMatrix) -> Result<KeStatus, TowerError> {
    let listed: Vec<BottMatrix> = match a.n() {
        3 => vec![BottMatrix::identity(3), BottMatrix::stage3(0, 1, -1)],
        4 => vec![
            BottMatrix::identity(4),
            BottMatrix::new(vec![
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![1, -1, 1, 0],
                vec![0, 0, 0, 1],
            ])?,
        ],
        _ => return Ok(KeStatus::Unknown),
    };
    let c = canonical_form(a)?;
    for m in &listed {
        if canonical_form(m)? == c {
            return Ok(KeStatus::Ke);
        }
    }
    Ok(KeStatus::NotKe)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::CohomologyRing;
    use crate::rational::q;
    use crate::tower::equivalence_orbit;
    use proptest::prelude::*;

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn eval_on_rays() {
        let a = BottMatrix::stage3(2, -1, 3);
        let psi = SupportFunction::new(qs(&[5, -2, 7]), qs(&[1, 4, -3]));
        assert_eq!(eval_support(&a, &psi, &qs(&[1, 0, 0])), qi(1));
        for r in rays(3) {
            assert_eq!(eval_support(&a, &psi, &qs(&ray_vector(&a, r))), *psi.value(r));
        }
        // Hirzebruch example: ψ(−a v₂) = ψ(a u₂) = 0.
        for av in [1, 3] {
            let h = BottMatrix::hirzebruch(av);
            let psi = SupportFunction::new(vec![qi(7), Q::zero()], vec![Q::zero(), qi(5)]);
            assert_eq!(eval_support(&h, &psi, &qs(&[0, -av])), Q::zero());
        }
    }

    /// Oracle: try every maximal cone, solve for the coordinates, keep the
    /// nonnegative ones.
    fn brute_force_eval(a: &BottMatrix, psi: &SupportFunction, w: &[Q]) -> Vec<Q> {
        let n = a.n();
        let mut values = Vec::new();
        for bits in 0..1u32 << n {
            let basis: Vec<Ray> = (1..=n)
                .map(|j| Ray {
                    kind: if bits >> (j - 1) & 1 == 1 { RayKind::U } else { RayKind::V },
                    index: j,
                })
                .collect();
            let cols: Vec<Vec<i64>> = basis.iter().map(|r| ray_vector(a, *r)).collect();
            let m: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| qi(cols[j][i])).collect()).collect();
            let lam = linalg::solve(&m, w).expect("every cone is a basis");
            if lam.iter().all(|l| !l.is_negative()) {
                values.push(basis.iter().zip(&lam).map(|(r, l)| l * psi.value(*r)).sum());
            }
        }
        values
    }

    /// Oracle for convexity: every cone's linear piece must lie below ψ on all
    /// rays, strictly on rays outside the cone.
    fn convex_by_pieces(a: &BottMatrix, psi: &SupportFunction, strict: bool) -> bool {
        let n = a.n();
        for bits in 0..1u32 << n {
            let basis: Vec<Ray> = (1..=n)
                .map(|j| Ray {
                    kind: if bits >> (j - 1) & 1 == 1 { RayKind::U } else { RayKind::V },
                    index: j,
                })
                .collect();
            let m: Vec<Vec<Q>> = basis.iter().map(|r| qs(&ray_vector(a, *r))).collect();
            let vals: Vec<Q> = basis.iter().map(|r| psi.value(*r).clone()).collect();
            let lin = linalg::solve(&m, &vals).unwrap();
            for r in rays(n) {
                let mv: Q = qs(&ray_vector(a, r)).iter().zip(&lin).map(|(x, y)| x * y).sum();
                let inside = basis.contains(&r);
                if mv > *psi.value(r) || (strict && !inside && mv == *psi.value(r)) {
                    return false;
                }
            }
        }
        true
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

    fn arb_q() -> impl Strategy<Value = Q> {
        (-6i64..=6, 1i64..=3).prop_map(|(a, b)| q(a, b))
    }

    fn arb_instance() -> impl Strategy<Value = (BottMatrix, SupportFunction, Vec<Q>)> {
        arb_matrix(2, 6, 3).prop_flat_map(|a| {
            let n = a.n();
            (
                Just(a),
                (proptest::collection::vec(arb_q(), n), proptest::collection::vec(arb_q(), n))
                    .prop_map(|(s, t)| SupportFunction::new(s, t)),
                proptest::collection::vec(arb_q(), n),
            )
        })
    }

    proptest! {
        #[test]
        fn eval_matches_brute_force((a, psi, w) in arb_instance()) {
            let v = eval_support(&a, &psi, &w);
            let all = brute_force_eval(&a, &psi, &w);
            prop_assert!(!all.is_empty());
            for x in all {
                prop_assert_eq!(&x, &v);
            }
        }

        #[test]
        fn batyrev_equals_piecewise_convexity((a, psi, _) in arb_instance()) {
            prop_assert_eq!(is_ample(&a, &psi, false), convex_by_pieces(&a, &psi, false));
            prop_assert_eq!(is_ample(&a, &psi, true), convex_by_pieces(&a, &psi, true));
        }

        #[test]
        fn nonpositive_matrices_have_orthant_cone(
            a in arb_matrix(2, 5, 3),
            r in proptest::collection::vec(arb_q(), 5),
        ) {
            let n = a.n();
            let rows: Vec<Vec<i64>> = a.rows().iter().enumerate()
                .map(|(i, row)| row.iter().enumerate().map(|(j, &x)| if j < i { -x.abs() } else { x }).collect())
                .collect();
            let a = BottMatrix::new(rows).unwrap();
            let r = &r[..n];
            let psi = SupportFunction::from_basis(&vec![RayKind::U; n], r);
            prop_assert_eq!(is_ample(&a, &psi, true), r.iter().all(|x| x.is_positive()));
            prop_assert!(kahler_cone(&a, &vec![RayKind::U; n]).first_orthant);
        }

        #[test]
        fn cone_inequalities_match_is_ample(
            a in arb_matrix(2, 4, 3),
            bits in 0u32..8,
            r in proptest::collection::vec(arb_q(), 4),
        ) {
            let n = a.n();
            let choice = &basis_choices(n)[(bits as usize) % (1 << (n - 1))];
            let cone = kahler_cone(&a, choice);
            let psi = SupportFunction::from_basis(choice, &r[..n]);
            prop_assert_eq!(cone.contains(&r[..n]), is_ample(&a, &psi, true));
        }
    }

    #[test]
    fn hirzebruch_first_quadrant() {
        for av in -4..=4 {
            let h = BottMatrix::hirzebruch(av);
            assert!(basis_choices(2).iter().any(|c| kahler_cone(&h, c).first_orthant));
        }
    }

    #[test]
    fn stage3_cone_examples() {
        // a ≤ 0, b > 0, c < 0 with all-u generators: r₁ > b r₃.
        for (av, b, c) in [(0, 2, -1), (-1, 3, -2)] {
            let cone = kahler_cone(&BottMatrix::stage3(av, b, c), &[RayKind::U; 3]);
            assert_eq!(cone.inequalities[0].coeffs, qs(&[1, 0, -b]));
        }
        for av in -3..=3i64 {
            for b in -3..=3i64 {
                for c in -3..=3i64 {
                    let m = BottMatrix::stage3(av, b, c);
                    let some = basis_choices(3).iter().any(|ch| kahler_cone(&m, ch).first_orthant);
                    let expected = (av <= 0 && b * c >= 0) || (av >= 0 && (b - av * c) * c >= 0);
                    assert_eq!(some, expected, "({av},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn twist1_cone() {
        let k = [-2, -1, 3];
        let a = BottMatrix::twist1(&k);
        let choice = [RayKind::U, RayKind::U, RayKind::U, RayKind::V];
        let cone = kahler_cone(&a, &choice);
        for (j, &kj) in k.iter().enumerate() {
            let mut expected = vec![Q::zero(); 4];
            expected[j] = Q::one();
            if kj < 0 {
                expected[3] = qi(kj);
            }
            assert_eq!(cone.inequalities[j].coeffs, expected);
        }
        assert_eq!(cone.inequalities[3].coeffs, qs(&[0, 0, 0, 1]));
    }

    fn two_twist_special(m: usize, qq: i64, k: i64) -> BottMatrix {
        let n = 2 * m + 2;
        let mut rows = BottMatrix::identity(n).rows().to_vec();
        for j in 0..m {
            rows[2 * m][j] = qq;
            rows[2 * m][m + j] = -qq;
            rows[2 * m + 1][j] = qq * (k + 1);
            rows[2 * m + 1][m + j] = qq * (k - 1);
        }
        rows[2 * m + 1][2 * m] = 2;
        BottMatrix::new(rows).unwrap()
    }

    #[test]
    fn two_twist_cone() {
        for (m, qq, k) in [(1, 1, 2), (2, 3, 4), (1, 2, 5)] {
            let a = two_twist_special(m, qq, k);
            let n = 2 * m + 2;
            let mut choice = vec![RayKind::U; n];
            choice[n - 2] = RayKind::V;
            choice[n - 1] = RayKind::V;
            let cone = kahler_cone(&a, &choice);
            for j in 0..n {
                let mut e = vec![Q::zero(); n];
                e[j] = Q::one();
                if (m..2 * m).contains(&j) {
                    e[2 * m] = qi(-qq);
                }
                assert_eq!(cone.inequalities[j].coeffs, e, "row {j}");
            }
            assert!(!is_fano(&a));
            assert!(csc_obstructed(&a).is_some());
        }
    }

    #[test]
    fn roots_small_cases() {
        let r = demazure_roots(&BottMatrix::identity(1)).unwrap();
        assert_eq!(r.roots, [vec![1], vec![-1]].into_iter().collect());
        assert!(demazure_roots(&BottMatrix::stage3(0, 1, -1)).unwrap().is_symmetric());
        assert!(!is_reductive(&BottMatrix::stage3(1, 1, 1)).unwrap());
        assert!(is_reductive(&BottMatrix::identity(4)).unwrap());
        assert_eq!(demazure_roots(&BottMatrix::identity(2)).unwrap().roots.len(), 4);
    }

    #[test]
    fn roots_satisfy_definition() {
        for m in [BottMatrix::stage3(1, -2, 3), BottMatrix::twist2(&[1, 0], &[-1, 2, 1])] {
            let vecs: Vec<Vec<i64>> = rays(m.n()).into_iter().map(|r| ray_vector(&m, r)).collect();
            for chi in &demazure_roots(&m).unwrap().roots {
                let vals: Vec<i64> = vecs.iter().map(|u| dot(chi, u)).collect();
                assert_eq!(vals.iter().filter(|&&v| v == 1).count(), 1);
                assert!(vals.iter().all(|&v| v == 1 || v <= 0));
            }
        }
    }

    #[test]
    fn epsilon_roots_follow_row_signs() {
        for av in -2..=2i64 {
            for b in -2..=2i64 {
                for c in -2..=2i64 {
                    let m = BottMatrix::stage3(av, b, c);
                    let roots = demazure_roots(&m).unwrap();
                    for i in 1..=3 {
                        let row: Vec<i64> = (1..i).map(|j| m.entry(i, j)).collect();
                        let pos = roots.contains(&epsilon(3, i));
                        let neg = roots.contains(&epsilon(3, i).iter().map(|x| -x).collect::<Vec<_>>());
                        assert_eq!(pos, row.iter().all(|&x| x >= 0));
                        assert_eq!(neg, row.iter().all(|&x| x <= 0));
                    }
                }
            }
        }
    }

    #[test]
    fn reductive_stage3_closed_form() {
        for av in -3..=3i64 {
            for b in -3..=3i64 {
                for c in -3..=3i64 {
                    let expected = (av == 0 && b * c < 0) || (av == 0 && b == 0 && c == 0);
                    assert_eq!(is_reductive(&BottMatrix::stage3(av, b, c)).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn csc_obstruction_examples() {
        assert_eq!(csc_obstructed(&BottMatrix::stage3(2, -5, 1)), Some(CscWitness::SameSignRow(2)));
        assert_eq!(csc_obstructed(&BottMatrix::identity(3)), None);
        assert_eq!(csc_obstructed(&BottMatrix::stage3(0, 1, -1)), None);
    }

    #[test]
    fn csc_obstruction_implies_nonreductive() {
        for v in 0..729usize {
            let mut d = v;
            let mut e = [0i64; 6];
            for x in e.iter_mut() {
                *x = (d % 3) as i64 - 1;
                d /= 3;
            }
            let m = BottMatrix::new(vec![
                vec![1, 0, 0, 0],
                vec![e[0], 1, 0, 0],
                vec![e[1], e[2], 1, 0],
                vec![e[3], e[4], e[5], 1],
            ])
            .unwrap();
            if csc_obstructed(&m).is_some() {
                assert!(!is_reductive(&m).unwrap(), "{m:?}");
            }
        }
        let m = BottMatrix::new(vec![
            vec![1, 0, 0, 0],
            vec![2, 1, 0, 0],
            vec![2, -2, 1, 0],
            vec![0, 0, 0, 1],
        ])
        .unwrap();
        assert!(csc_obstructed(&m).is_some());
        assert!(!is_reductive(&m).unwrap());
    }

    fn stage3_fano_list(av: i64, b: i64, c: i64) -> bool {
        matches!((av, b, c), (1, 0, 0) | (1, 1, 1) | (1, -1, -1) | (-1, 0, 0) | (-1, 0, 1) | (-1, 0, -1))
            || (av == 0 && b.abs() <= 1 && c.abs() <= 1)
    }

    #[test]
    fn fano_stage3_list() {
        for av in -2..=2i64 {
            for b in -2..=2i64 {
                for c in -2..=2i64 {
                    let m = BottMatrix::stage3(av, b, c);
                    assert_eq!(is_fano(&m), stage3_fano_list(av, b, c), "({av},{b},{c})");
                    if CohomologyRing::new(&m).topological_twist() == 0 && is_fano(&m) {
                        assert!(m.is_identity());
                    }
                }
            }
        }
    }

    #[test]
    fn fano_twist1_and_orbit_invariance() {
        for v in 0..125 {
            let k = [v % 5 - 2, (v / 5) % 5 - 2, v / 25 - 2];
            let m = BottMatrix::twist1(&k);
            assert_eq!(is_fano(&m), k.iter().all(|x| x.abs() <= 1), "{k:?}");
        }
        for m in [BottMatrix::stage3(1, 2, 3), BottMatrix::stage3(0, 1, -1), BottMatrix::stage3(-1, 0, 1)] {
            let f = is_fano(&m);
            for r in equivalence_orbit(&m).unwrap().representatives {
                assert_eq!(is_fano(&r), f);
            }
        }
    }

    #[test]
    fn kahler_einstein_lookup() {
        assert_eq!(kahler_einstein_stage34(&BottMatrix::stage3(0, 1, -1)).unwrap(), KeStatus::Ke);
        assert_eq!(kahler_einstein_stage34(&BottMatrix::stage3(0, -1, 1)).unwrap(), KeStatus::Ke);
        assert_eq!(kahler_einstein_stage34(&BottMatrix::stage3(0, 0, 0)).unwrap(), KeStatus::Ke);
        assert_eq!(kahler_einstein_stage34(&BottMatrix::stage3(0, 1, 1)).unwrap(), KeStatus::NotKe);
        assert_eq!(kahler_einstein_stage34(&BottMatrix::identity(2)).unwrap(), KeStatus::Unknown);
        let m = BottMatrix::new(vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 1, -1, 1],
        ])
        .unwrap();
        assert_eq!(kahler_einstein_stage34(&m).unwrap(), KeStatus::Ke);
        assert_eq!(kahler_einstein_stage34(&BottMatrix::twist1(&[1, 1, 0])).unwrap(), KeStatus::NotKe);
    }
}
