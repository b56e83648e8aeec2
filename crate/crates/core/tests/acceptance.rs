//! Exit criteria. One PASS/FAIL line per criterion; non-zero exit on any failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bott_core::admissible::{
    cproj_transform, csc_condition, extremal_polynomial, is_csc, second_family_roots, AdmissibleData,
};
use bott_core::almostkahler::{
    check_integrability, default_samples, determinant_linear_factor, determinant_quadratic, solve_ak,
    system_determinant, SquareFiberData, DEFAULT_GRID,
};
use bott_core::cohomology::{CohomologyClass, CohomologyRing};
use bott_core::fan::{eval_support, is_fano, is_reductive, ray_vector, Ray, RayKind, SupportFunction};
use bott_core::linalg;
use bott_core::poly::Poly;
use bott_core::rational::{q, qi};
use bott_core::symplectic::{count_compatible, enumerate_compatible, fiber_normal_form};
use bott_core::tower::{equivalence_orbit, fiber_inversion};
use bott_core::{BottMatrix, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// Random rational in the open interval (0, 1).
fn unit_rational(rng: &mut StdRng) -> Q {
    let d = rng.random_range(2..200i64);
    q(rng.random_range(1..d), d)
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed <= limit
}

fn c1_symplectic_count() -> Outcome {
    let t = Instant::now();
    let c = count_compatible(&qi(11), &qi(6), &qi(1)).unwrap();
    let el = t.elapsed();
    let ok = (c.n_b0, c.n_bne0, c.n_b) == (16, 27, 43);
    outcome(
        ok && within(el, Duration::from_millis(100)),
        format!("({}, {}, {}) in {el:?}", c.n_b0, c.n_bne0, c.n_b),
    )
}

fn c2_enumerate() -> Outcome {
    // Classes M₃(2a, 2b, 2c) for the form (5, 2, 1), written as (a, b, c).
    let listed = [
        (0, 0, 0), (0, 1, 0), (0, 2, 0), (0, 3, 0), (0, 4, 0), (1, 0, 0), (2, 0, 0),
        (1, 2, 0), (1, 1, 0), (0, 0, 1), (1, 1, 1), (2, 2, 1), (3, 3, 1), (4, 4, 1),
    ];
    let t = Instant::now();
    let got = enumerate_compatible(&qi(5), &qi(2), &qi(1)).unwrap();
    let el = t.elapsed();
    let expected: BTreeSet<_> =
        listed.iter().map(|&(a, b, c)| fiber_normal_form(2 * a, 2 * b, 2 * c)).collect();
    let got_set: BTreeSet<_> = got.iter().copied().collect();
    let ok = got.len() == 14 && got_set == expected;
    outcome(ok && within(el, Duration::from_secs(1)), format!("{} classes in {el:?}", got.len()))
}

fn c3_reductive_scan() -> Outcome {
    let t = Instant::now();
    let mut mismatches = 0;
    for a in -5..=5i64 {
        for b in -5..=5i64 {
            for c in -5..=5i64 {
                let expected = (a == 0 && b * c < 0) || (a == 0 && b == 0 && c == 0);
                if is_reductive(&BottMatrix::stage3(a, b, c)).unwrap() != expected {
                    mismatches += 1;
                }
            }
        }
    }
    let el = t.elapsed();
    outcome(mismatches == 0 && within(el, Duration::from_secs(30)), format!("{mismatches} mismatches in {el:?}"))
}

fn c4_fano_scan() -> Outcome {
    let t = Instant::now();
    let mut closure = BTreeSet::new();
    for (a, b, c) in [(0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, -1), (-1, 0, 1)] {
        for m in equivalence_orbit(&BottMatrix::stage3(a, b, c)).unwrap().representatives {
            closure.insert(m.as_stage3().unwrap());
        }
    }
    let mut mismatches = 0;
    for a in -2..=2i64 {
        for b in -2..=2i64 {
            for c in -2..=2i64 {
                if is_fano(&BottMatrix::stage3(a, b, c)) != closure.contains(&(a, b, c)) {
                    mismatches += 1;
                }
            }
        }
    }
    let el = t.elapsed();
    outcome(
        mismatches == 0 && within(el, Duration::from_secs(30)),
        format!("{mismatches} mismatches, closure size {}, in {el:?}", closure.len()),
    )
}

fn ks_closed_form(r: &Q) -> Poly {
    let quad = Poly::new(vec![qi(2) - r + r * r, qi(4) * r - qi(2), r * (r - Q::one())]);
    (&Poly::from_i64(&[1, 0, -1]) * &quad).scale(&q(1, 2))
}

fn c5_ks_profile(rng: &mut StdRng) -> Outcome {
    let t = Instant::now();
    let mut bad = 0;
    for _ in 0..20 {
        let r = unit_rational(rng);
        let data = AdmissibleData::ks(r.clone(), &r - Q::one()).unwrap();
        if extremal_polynomial(&data).unwrap().f != ks_closed_form(&r) {
            bad += 1;
        }
    }
    let el = t.elapsed();
    outcome(bad == 0 && within(el, Duration::from_secs(1)), format!("{bad}/20 differ, {el:?}"))
}

fn c6_cproj(rng: &mut StdRng) -> Outcome {
    let t = Instant::now();
    let mut bad = 0;
    for _ in 0..20 {
        let r = unit_rational(rng);
        let one = Q::one();
        let data = AdmissibleData::ks(r.clone(), &r - &one).unwrap();
        let alpha = (qi(2) * &r - &one) / (&one - &r + &r * &r);
        match cproj_transform(&ks_closed_form(&r), &data, &alpha, &one) {
            Ok((f, d)) if f == ks_closed_form(&(&one - &r)) && d.radii() == vec![&one - &r, -r.clone()] => {}
            _ => bad += 1,
        }
    }
    let el = t.elapsed();
    outcome(bad == 0 && within(el, Duration::from_secs(1)), format!("{bad}/20 differ, {el:?}"))
}

fn c7_csc_families(rng: &mut StdRng) -> Outcome {
    let csc = |a: Q, b: Q| is_csc(&extremal_polynomial(&AdmissibleData::ks(a, b).unwrap()).unwrap());
    let mut family_fail = 0;
    for _ in 0..20 {
        let r = unit_rational(rng);
        if !csc(r.clone(), -r.clone()) || !csc(r.clone(), &r - Q::one()) {
            family_fail += 1;
        }
    }
    let mut off_hits = 0;
    let mut tested = 0;
    while tested < 20 {
        let r1 = unit_rational(rng);
        let r2 = -unit_rational(rng);
        if r2 == -r1.clone() || r2 == &r1 - Q::one() {
            continue;
        }
        tested += 1;
        if csc(r1, r2) {
            off_hits += 1;
        }
    }
    outcome(
        family_fail == 0 && off_hits == 0,
        format!("{family_fail}/20 family misses, {off_hits}/20 off-family CSC"),
    )
}

fn c8_csc_condition(rng: &mut StdRng) -> Outcome {
    let mut nonzero = 0;
    for m in 1..=5 {
        for _ in 0..20 {
            let r = unit_rational(rng);
            if !csc_condition(m, &r, &-r.clone()).is_zero() {
                nonzero += 1;
            }
        }
    }
    let tol = q(1, 1_000_000_000_000);
    let mut missing = Vec::new();
    for m in 2..=4 {
        for rp in [q(1, 5), q(1, 2), q(4, 5)] {
            if second_family_roots(m, &rp, &tol).unwrap().is_empty() {
                missing.push(format!("m={m} r+={rp}"));
            }
        }
    }
    let detail = if missing.is_empty() {
        format!("first family exact ({nonzero} nonzero); second family bracketed in all 9 cases")
    } else {
        format!(
            "first family exact ({nonzero} nonzero); no second-family root in (-1,0) for {}",
            missing.join(", ")
        )
    };
    outcome(nonzero == 0 && missing.is_empty(), detail)
}

fn c9_almost_kahler() -> Outcome {
    let t = Instant::now();
    let mut det_bad = 0;
    // a cubic in (p₀, p₁, p₂) is determined by its values on a 4x4x4 grid
    for a in 1..=4 {
        for b in 0..4 {
            for c in 0..4 {
                let Ok(d) = SquareFiberData::new(qi(a), b, c) else { continue };
                let (p0, p1, p2) = (qi(a), qi(b), qi(c));
                let expect = determinant_linear_factor(&p0, &p1, &p2) * determinant_quadratic(&p0, &p1, &p2);
                if system_determinant(&d) != expect {
                    det_bad += 1;
                }
            }
        }
    }
    let mut product_bad = 0;
    for p0 in [q(1, 2), qi(1), qi(3)] {
        let s = solve_ak(&SquareFiberData::new(p0, 0, 0).unwrap()).unwrap();
        if !s.big_a1.is_zero() || !s.big_a2.is_zero() {
            product_bad += 1;
        }
    }
    let samples = default_samples(DEFAULT_GRID);
    let mut integrable = 0;
    let mut n = 0;
    for p0 in [q(1, 2), qi(2)] {
        for p1 in 1..=5 {
            for p2 in [1, 3] {
                let d = SquareFiberData::new(p0.clone(), p1, p2).unwrap();
                let s = solve_ak(&d).unwrap();
                n += 1;
                if check_integrability(&d, &s, &samples) != Ok(false) {
                    integrable += 1;
                }
            }
        }
    }
    let el = t.elapsed();
    outcome(
        det_bad == 0 && product_bad == 0 && integrable == 0 && n == 20,
        format!("det {det_bad} bad, product {product_bad} bad, {integrable}/{n} integrable, {el:?}"),
    )
}

fn random_matrix(rng: &mut StdRng, n: usize, bound: i64) -> BottMatrix {
    let mut rows = BottMatrix::identity(n).rows().to_vec();
    for (i, row) in rows.iter_mut().enumerate() {
        for x in row.iter_mut().take(i) {
            *x = rng.random_range(-bound..=bound);
        }
    }
    BottMatrix::new(rows).unwrap()
}

fn random_q(rng: &mut StdRng) -> Q {
    q(rng.random_range(-6..=6), rng.random_range(1..=3))
}

fn support_by_cones(a: &BottMatrix, psi: &SupportFunction, w: &[Q]) -> Vec<Q> {
    let n = a.n();
    let mut values = Vec::new();
    for bits in 0..1u32 << n {
        let basis: Vec<Ray> = (1..=n)
            .map(|j| Ray { kind: if bits >> (j - 1) & 1 == 1 { RayKind::U } else { RayKind::V }, index: j })
            .collect();
        let cols: Vec<Vec<i64>> = basis.iter().map(|r| ray_vector(a, *r)).collect();
        let m: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| qi(cols[j][i])).collect()).collect();
        let lam = linalg::solve(&m, w).expect("maximal cones are unimodular");
        if lam.iter().all(|l| !l.is_negative()) {
            values.push(basis.iter().zip(&lam).map(|(r, l)| l * psi.value(*r)).sum());
        }
    }
    values
}

fn random_class(rng: &mut StdRng, ring: &CohomologyRing) -> CohomologyClass {
    let n = ring.n();
    let mut c = CohomologyClass::zero(n);
    for _ in 0..3 {
        let mut t = ring.one().scale(&BigInt::from(rng.random_range(-3..=3i64)));
        for _ in 0..rng.random_range(0..=2) {
            t = ring.mul(&t, &ring.x(rng.random_range(1..=n)));
        }
        c = c.add(&t);
    }
    c
}

fn c10_properties(rng: &mut StdRng) -> Outcome {
    let t = Instant::now();
    let mut support_bad = 0;
    for _ in 0..1000 {
        let n = rng.random_range(2..=6);
        let a = random_matrix(rng, n, 3);
        let psi = SupportFunction::new(
            (0..n).map(|_| random_q(rng)).collect(),
            (0..n).map(|_| random_q(rng)).collect(),
        );
        let w: Vec<Q> = (0..n).map(|_| random_q(rng)).collect();
        let v = eval_support(&a, &psi, &w);
        let all = support_by_cones(&a, &psi, &w);
        if all.is_empty() || all.iter().any(|x| x != &v) {
            support_bad += 1;
        }
    }

    let mut ring_bad = 0;
    for _ in 0..100 {
        let n = rng.random_range(2..=5);
        let ring = CohomologyRing::new(&random_matrix(rng, n, 3));
        let (u, v, w) = (random_class(rng, &ring), random_class(rng, &ring), random_class(rng, &ring));
        let assoc = ring.mul(&ring.mul(&u, &v), &w) == ring.mul(&u, &ring.mul(&v, &w));
        let comm = ring.mul(&u, &v) == ring.mul(&v, &u);
        let dist = ring.mul(&u, &v.add(&w)) == ring.mul(&u, &v).add(&ring.mul(&u, &w));
        let unit = ring.mul(&ring.one(), &u) == u;
        let rel = (1..=n).all(|k| ring.mul(&ring.x(k), &ring.y(k)).is_zero());
        if !(assoc && comm && dist && unit && rel) {
            ring_bad += 1;
        }
    }

    let mut orbit_bad = 0;
    let mut scanned = 0;
    for n in 1..=4usize {
        let slots = n * (n - 1) / 2;
        for code in 0..3usize.pow(slots as u32) {
            let mut rows = BottMatrix::identity(n).rows().to_vec();
            let mut d = code;
            for (i, row) in rows.iter_mut().enumerate() {
                for x in row.iter_mut().take(i) {
                    *x = (d % 3) as i64 - 1;
                    d /= 3;
                }
            }
            let a = BottMatrix::new(rows).unwrap();
            scanned += 1;
            let o = equivalence_orbit(&a).unwrap();
            let mut ok = o.contains(&a) && o.contains(&a.inverse().unwrap());
            for m in &o.representatives {
                for k in 1..=n {
                    ok &= o.contains(&fiber_inversion(m, k).unwrap());
                }
            }
            if !ok {
                orbit_bad += 1;
            }
        }
    }

    let mut p1_bad = 0;
    for a in -4..=4i64 {
        for b in -4..=4i64 {
            for c in -4..=4i64 {
                let ring = CohomologyRing::new(&BottMatrix::stage3(a, b, c));
                let expect = CohomologyClass::from_terms(3, &[(&[1, 2], c * (2 * b - a * c))]);
                if ring.pontrjagin(1) != expect {
                    p1_bad += 1;
                }
            }
        }
    }
    let el = t.elapsed();
    outcome(
        support_bad == 0 && ring_bad == 0 && orbit_bad == 0 && p1_bad == 0,
        format!(
            "support {support_bad}/1000, ring {ring_bad}/100, orbit {orbit_bad}/{scanned}, p1 {p1_bad}/729 mismatches, {el:?}"
        ),
    )
}

fn c11_growth() -> Outcome {
    let t = Instant::now();
    let mut bad = 0;
    let mut cases = 0;
    for k1 in 2..=30i64 {
        for k2 in 2..=k1 {
            let n = count_compatible(&qi(k1), &qi(k2), &Q::one()).unwrap().n_b0 as i64;
            cases += 1;
            // k₁(k₁-1)/(2k₂) ≤ N ≤ k₁(k₁-1)/(2k₂) + (k₁-1)(k₂+1)/k₂, times 2k₂
            let base = k1 * (k1 - 1);
            if base > 2 * k2 * n || 2 * k2 * n > base + 2 * (k1 - 1) * (k2 + 1) {
                bad += 1;
            }
        }
    }
    let el = t.elapsed();
    outcome(bad == 0 && within(el, Duration::from_secs(10)), format!("{bad}/{cases} violations, {el:?}"))
}

fn main() -> ExitCode {
    let mut rng = StdRng::seed_from_u64(0x5eed_b077);
    let results = [
        ("1 symplectic count (11,6,1)", c1_symplectic_count()),
        ("2 compatible classes for (5,2,1)", c2_enumerate()),
        ("3 reductive scan |a|,|b|,|c| <= 5", c3_reductive_scan()),
        ("4 Fano scan |a|,|b|,|c| <= 2", c4_fano_scan()),
        ("5 extremal polynomial closed form", c5_ks_profile(&mut rng)),
        ("6 c-projective transform F_r -> F_(1-r)", c6_cproj(&mut rng)),
        ("7 CSC families", c7_csc_families(&mut rng)),
        ("8 CSC condition and second family", c8_csc_condition(&mut rng)),
        ("9 almost-Kahler system", c9_almost_kahler()),
        ("10 property suites", c10_properties(&mut rng)),
        ("11 growth bounds", c11_growth()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {name}: {}", o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
