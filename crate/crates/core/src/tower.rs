//! Bott tower matrices and the groupoid of toric equivalences.
//!
//! `A` is stored row-major; the entry in row `i`, column `j` (1-based) is
//! written `Aʲᵢ`. Stage-3 towers use `a = A¹₂`, `b = A¹₃`, `c = A²₃`.
//!
//! An element of the hyperoctahedral group `BCₙ` is a permutation `σ`
//! together with a set of flipped slots. It sends the pair `{uⱼ, vⱼ}` of fan
//! rays to slot `σ⁻¹(j)`, exchanging the two rays in flipped slots. The new
//! matrix is `A' = (P − AQ)⁻¹(AP − Q)` and the element induces an equivalence
//! exactly when `A'` is again lower-triangular unipotent.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

/// Orbit enumeration refuses stages above this unless told otherwise.
pub const DEFAULT_STAGE_BOUND: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TowerError {
    #[error("stage must be at least 1")]
    Empty,
    #[error("matrix is not square")]
    NotSquare,
    #[error("entry in row {row}, column {col} lies above the diagonal and is nonzero")]
    NotLowerTriangular { row: usize, col: usize },
    #[error("diagonal entry {0} is not 1")]
    NotUnipotent(usize),
    #[error("index {index} out of range for stage {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("not a permutation of 1..={0}")]
    BadPermutation(usize),
    #[error("conjugated matrix is not lower triangular")]
    Inapplicable,
    #[error("stage {n} exceeds the orbit bound {bound}")]
    StageTooLarge { n: usize, bound: usize },
    #[error("matrix entry overflowed 64 bits")]
    Overflow,
}

impl TowerError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            TowerError::Empty => "empty_matrix",
            TowerError::NotSquare => "not_square",
            TowerError::NotLowerTriangular { .. } => "not_lower_triangular",
            TowerError::NotUnipotent(_) => "not_unipotent",
            TowerError::IndexOutOfRange { .. } => "index_out_of_range",
            TowerError::BadPermutation(_) => "bad_permutation",
            TowerError::Inapplicable => "inapplicable",
            TowerError::StageTooLarge { .. } => "stage_too_large",
            TowerError::Overflow => "overflow",
        }
    }
}

/// Lower-triangular unipotent integer matrix encoding a Bott tower.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BottMatrix {
    rows: Vec<Vec<i64>>,
}

impl BottMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, TowerError> {
        let n = rows.len();
        if n == 0 {
            return Err(TowerError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(TowerError::NotSquare);
            }
            if row[i] != 1 {
                return Err(TowerError::NotUnipotent(i + 1));
            }
            if let Some(j) = (i + 1..n).find(|&j| row[j] != 0) {
                return Err(TowerError::NotLowerTriangular { row: i + 1, col: j + 1 });
            }
        }
        Ok(BottMatrix { rows })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        let rows = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        BottMatrix { rows }
    }

    /// `M₃(a, b, c)`.
    pub fn stage3(a: i64, b: i64, c: i64) -> Self {
        BottMatrix {
            rows: vec![vec![1, 0, 0], vec![a, 1, 0], vec![b, c, 1]],
        }
    }

    /// Hirzebruch surface `𝓗ₐ`.
    pub fn hirzebruch(a: i64) -> Self {
        BottMatrix { rows: vec![vec![1, 0], vec![a, 1]] }
    }

    /// `M_{N+1}(k)`: identity except the last row `(k₁, …, k_N, 1)`.
    pub fn twist1(k: &[i64]) -> Self {
        let mut m = BottMatrix::identity(k.len() + 1);
        let last = k.len();
        m.rows[last][..last].copy_from_slice(k);
        m
    }

    /// `M_{N+1}(l, k)`: rows `N` and `N+1` are `(l, 1, 0)` and `(k, 1)`.
    pub fn twist2(l: &[i64], k: &[i64]) -> Self {
        assert_eq!(l.len() + 1, k.len());
        let mut m = BottMatrix::twist1(k);
        let r = l.len();
        m.rows[r][..r].copy_from_slice(l);
        m
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// `Aʲᵢ` with 1-based row `i` and column `j`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i - 1][j - 1]
    }

    /// `(a, b, c)` when `n = 3`.
    pub fn as_stage3(&self) -> Option<(i64, i64, i64)> {
        (self.n() == 3).then(|| (self.rows[1][0], self.rows[2][0], self.rows[2][1]))
    }

    fn check_index(&self, k: usize) -> Result<(), TowerError> {
        if (1..=self.n()).contains(&k) {
            Ok(())
        } else {
            Err(TowerError::IndexOutOfRange { index: k, n: self.n() })
        }
    }

    /// Number of nonzero rows of `A − I`.
    pub fn twist(&self) -> usize {
        (0..self.n())
            .filter(|&i| self.rows[i][..i].iter().any(|&v| v != 0))
            .count()
    }

    /// Number of nonzero columns of `A − I`.
    pub fn cotwist(&self) -> usize {
        let n = self.n();
        (0..n)
            .filter(|&j| (j + 1..n).any(|i| self.rows[i][j] != 0))
            .count()
    }

    pub fn is_identity(&self) -> bool {
        self.twist() == 0
    }

    /// Exact inverse, again lower-triangular unipotent.
    #[allow(clippy::needless_range_loop)]
    pub fn inverse(&self) -> Result<BottMatrix, TowerError> {
        let n = self.n();
        let mut inv = vec![vec![0i64; n]; n];
        for k in 0..n {
            inv[k][k] = 1;
            for i in k + 1..n {
                let mut s: i128 = 0;
                for j in k..i {
                    s = s
                        .checked_sub(i128::from(self.rows[i][j]) * i128::from(inv[j][k]))
                        .ok_or(TowerError::Overflow)?;
                }
                inv[i][k] = i64::try_from(s).map_err(|_| TowerError::Overflow)?;
            }
        }
        Ok(BottMatrix { rows: inv })
    }
}

/// Permutation of `{1..n}`, stored as 0-based images.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// From 1-based images `σ(1), …, σ(n)`.
    pub fn from_images(images: &[usize]) -> Result<Self, TowerError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut v = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(TowerError::BadPermutation(n));
            }
            seen[x - 1] = true;
            v.push(x - 1);
        }
        Ok(Permutation(v))
    }

    /// The transposition `(i j)` of `{1..n}`, 1-based.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self, TowerError> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(TowerError::BadPermutation(n));
        }
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i - 1, j - 1);
        Ok(Permutation(v))
    }

    /// 0-based images.
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Next permutation in lexicographic order, `false` after the last one.
    fn advance(v: &mut [usize]) -> bool {
        let n = v.len();
        if n < 2 {
            return false;
        }
        let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
            return false;
        };
        let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        true
    }

    /// All permutations of `{1..n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut v: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(v.clone()));
            if !Self::advance(&mut v) {
                break;
            }
        }
        out
    }
}

/// A generator of the Bott tower groupoid.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EquivalenceMove {
    /// `τ_k`, exchanging `u_k` and `v_k` (1-based `k`).
    FiberInversion(usize),
    /// Conjugation `A ↦ P⁻¹AP`.
    PermutationConjugation(Permutation),
}

/// One applied generator inside an orbit, by indices into
/// [`OrbitReport::representatives`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitEdge {
    pub from: usize,
    pub to: usize,
    pub mv: EquivalenceMove,
}

/// Result of [`equivalence_orbit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    /// Sorted ascending; the first entry is the canonical form.
    pub representatives: Vec<BottMatrix>,
    pub canonical: BottMatrix,
    pub moves: Vec<OrbitEdge>,
}

impl OrbitReport {
    pub fn contains(&self, a: &BottMatrix) -> bool {
        self.representatives.binary_search(a).is_ok()
    }
}

/// Applies the `BCₙ` element (`σ`, flipped slots). Returns `None` when the
/// result is not lower-triangular unipotent.
///
/// With `P + Q` the permutation matrix of `σ`, `P − AQ` has columns `v_{σ(k)}`
/// or `u_{σ(k)}`; reordering them by `σ⁻¹` gives a lower-triangular `L` with
/// `±1` diagonal, so `(P − AQ)⁻¹ = P⁻¹L⁻¹` is applied by forward
/// substitution. `det(P − AQ) = ±1` holds by construction.
fn act(a: &BottMatrix, sigma: &[usize], flips: u64) -> Result<Option<BottMatrix>, TowerError> {
    let n = a.n();
    let flipped = |k: usize| (flips >> k) & 1 == 1;
    let mut pair_flipped = vec![false; n];
    for (k, &s) in sigma.iter().enumerate() {
        pair_flipped[s] = flipped(k);
    }
    let ar = &a.rows;
    let mut y = vec![vec![0i128; n]; n];
    for (k, &s) in sigma.iter().enumerate() {
        for i in 0..n {
            let mut r: i128 = if flipped(k) {
                -i128::from(i == s)
            } else {
                i128::from(ar[i][s])
            };
            for j in 0..i {
                if pair_flipped[j] && ar[i][j] != 0 {
                    // L[i][j] = −A[i][j]
                    r = i128::from(ar[i][j])
                        .checked_mul(y[j][k])
                        .and_then(|t| r.checked_add(t))
                        .ok_or(TowerError::Overflow)?;
                }
            }
            y[i][k] = if pair_flipped[i] { -r } else { r };
        }
    }
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            let v = y[sigma[i]][k];
            if (k > i && v != 0) || (k == i && v != 1) {
                return Ok(None);
            }
            rows[i][k] = i64::try_from(v).map_err(|_| TowerError::Overflow)?;
        }
    }
    Ok(Some(BottMatrix { rows }))
}

/// The fiber inversion `τ_k` (1-based `k`); always applicable.
pub fn fiber_inversion(a: &BottMatrix, k: usize) -> Result<BottMatrix, TowerError> {
    a.check_index(k)?;
    let id: Vec<usize> = (0..a.n()).collect();
    act(a, &id, 1 << (k - 1))?.ok_or(TowerError::Inapplicable)
}

/// `P⁻¹AP`, i.e. entries `A_{σ(i)σ(j)}`, when it is lower triangular.
pub fn permutation_conjugate(a: &BottMatrix, sigma: &Permutation) -> Result<BottMatrix, TowerError> {
    if sigma.len() != a.n() {
        return Err(TowerError::BadPermutation(a.n()));
    }
    act(a, &sigma.0, 0)?.ok_or(TowerError::Inapplicable)
}

/// All matrices equivalent to `a`, using the default stage bound.
pub fn equivalence_orbit(a: &BottMatrix) -> Result<OrbitReport, TowerError> {
    equivalence_orbit_bounded(a, DEFAULT_STAGE_BOUND)
}

/// All matrices equivalent to `a` by enumerating the `2ⁿ·n!` elements of
/// `BCₙ`. A composite of equivalences is again induced by a single group
/// element, so one pass is closed.
pub fn equivalence_orbit_bounded(a: &BottMatrix, bound: usize) -> Result<OrbitReport, TowerError> {
    let n = a.n();
    if n > bound || n > 20 {
        return Err(TowerError::StageTooLarge { n, bound });
    }
    let mut reps = BTreeSet::new();
    for sigma in Permutation::all(n) {
        for flips in 0..(1u64 << n) {
            if let Some(m) = act(a, &sigma.0, flips)? {
                reps.insert(m);
            }
        }
    }
    let representatives: Vec<BottMatrix> = reps.into_iter().collect();
    let index: BTreeMap<&BottMatrix, usize> =
        representatives.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut moves = Vec::new();
    for (from, m) in representatives.iter().enumerate() {
        for k in 1..=n {
            let t = fiber_inversion(m, k)?;
            moves.push(OrbitEdge {
                from,
                to: index[&t],
                mv: EquivalenceMove::FiberInversion(k),
            });
        }
        for i in 1..=n {
            for j in i + 1..=n {
                let s = Permutation::transposition(n, i, j)?;
                if let Ok(t) = permutation_conjugate(m, &s) {
                    moves.push(OrbitEdge {
                        from,
                        to: index[&t],
                        mv: EquivalenceMove::PermutationConjugation(s),
                    });
                }
            }
        }
    }
    Ok(OrbitReport {
        canonical: representatives[0].clone(),
        representatives,
        moves,
    })
}

/// Lexicographic-minimum representative of the orbit of `a`.
pub fn canonical_form(a: &BottMatrix) -> Result<BottMatrix, TowerError> {
    Ok(equivalence_orbit(a)?.canonical)
}

/// An equivalent matrix whose first `n − t` rows of `A − I` vanish
/// (`t` = twist). Zero rows are bubbled upwards by adjacent transpositions,
/// each applicable because the row being moved is zero.
pub fn normalize_twist(a: &BottMatrix) -> BottMatrix {
    let n = a.n();
    let mut m = a.clone();
    let is_zero_row = |m: &BottMatrix, i: usize| m.rows[i][..i].iter().all(|&v| v == 0);
    let mut placed = 0;
    for i in 0..n {
        if !is_zero_row(&m, i) {
            continue;
        }
        let mut pos = i;
        while pos > placed {
            let s = Permutation::transposition(n, pos, pos + 1).expect("in range");
            m = permutation_conjugate(&m, &s).expect("zero row moves freely");
            pos -= 1;
        }
        placed += 1;
    }
    m
}
