//! JSON shapes. Rationals travel as `"p/q"` strings (integers as `"n"`) and
//! big integers as decimal strings.

use bott_core::admissible::{AdmissibleData, Component, ExtremalProfile, RootBracket};
use bott_core::almostkahler::AkSolution;
use bott_core::cohomology::{indices_of, mask_of, CohomologyClass, Mod2Class};
use bott_core::fan::{Inequality, KahlerCone, RayKind};
use bott_core::poly::Poly;
use bott_core::symplectic::CompatibleCounts;
use bott_core::topology3::{QTrivialType, Stage3Invariants, W2Class};
use bott_core::tower::{EquivalenceMove, OrbitReport, Permutation};
use bott_core::{rational, BottMatrix, Q};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub fn q_str(x: &Q) -> String {
    x.to_string()
}

pub fn parse_q(s: &str) -> Result<Q, CliError> {
    if let Some(v) = rational::parse(s) {
        return Ok(v);
    }
    // scientific notation such as 1e-12
    s.trim()
        .parse::<f64>()
        .ok()
        .and_then(rational::from_f64)
        .ok_or_else(|| CliError::Parse(format!("not a rational number: {s:?}")))
}

fn parse_qs(v: &[String]) -> Result<Vec<Q>, CliError> {
    v.iter().map(|s| parse_q(s)).collect()
}

fn q_strs(v: &[Q]) -> Vec<String> {
    v.iter().map(q_str).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

impl From<&BottMatrix> for MatrixJson {
    fn from(a: &BottMatrix) -> Self {
        MatrixJson { n: a.n(), rows: a.rows().to_vec() }
    }
}

impl MatrixJson {
    pub fn to_domain(&self) -> Result<BottMatrix, CliError> {
        if self.rows.len() != self.n {
            return Err(CliError::Parse(format!("expected {} rows, found {}", self.n, self.rows.len())));
        }
        BottMatrix::new(self.rows.clone()).map_err(|e| CliError::domain(e.code(), e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: Vec<usize>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

impl From<&CohomologyClass> for ClassJson {
    fn from(c: &CohomologyClass) -> Self {
        ClassJson {
            n: c.n(),
            terms: c
                .terms()
                .map(|(m, v)| TermJson { monomial: indices_of(m), coeff: v.to_string() })
                .collect(),
        }
    }
}

impl From<&Mod2Class> for ClassJson {
    fn from(c: &Mod2Class) -> Self {
        ClassJson {
            n: c.n,
            terms: c
                .terms
                .iter()
                .map(|m| TermJson { monomial: indices_of(*m), coeff: "1".into() })
                .collect(),
        }
    }
}

impl ClassJson {
    pub fn to_domain(&self) -> Result<CohomologyClass, CliError> {
        let mut out = CohomologyClass::zero(self.n);
        for t in &self.terms {
            if t.monomial.iter().any(|&k| k == 0 || k > self.n) {
                return Err(CliError::Parse(format!("monomial index out of range: {:?}", t.monomial)));
            }
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| CliError::Parse(format!("not an integer: {:?}", t.coeff)))?;
            out = out.add(&CohomologyClass::monomial(self.n, mask_of(&t.monomial), c));
        }
        Ok(out)
    }

    pub fn to_mod2(&self) -> Result<Mod2Class, CliError> {
        Ok(self.to_domain()?.mod2())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityJson {
    pub coeffs: Vec<String>,
    pub rhs: String,
    pub strict: bool,
}

impl From<&Inequality> for InequalityJson {
    fn from(i: &Inequality) -> Self {
        InequalityJson { coeffs: q_strs(&i.coeffs), rhs: q_str(&i.rhs), strict: i.strict }
    }
}

impl InequalityJson {
    pub fn to_domain(&self) -> Result<Inequality, CliError> {
        Ok(Inequality { coeffs: parse_qs(&self.coeffs)?, rhs: parse_q(&self.rhs)?, strict: self.strict })
    }
}

pub fn choice_str(choice: &[RayKind]) -> String {
    choice.iter().map(|k| if *k == RayKind::U { 'u' } else { 'v' }).collect()
}

pub fn parse_choice(s: &str) -> Result<Vec<RayKind>, CliError> {
    s.chars()
        .map(|c| match c {
            'u' | 'U' => Ok(RayKind::U),
            'v' | 'V' => Ok(RayKind::V),
            _ => Err(CliError::Parse(format!("basis choice must use u/v, got {s:?}"))),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeJson {
    pub choice: String,
    pub inequalities: Vec<InequalityJson>,
    pub first_orthant: bool,
}

impl From<&KahlerCone> for ConeJson {
    fn from(c: &KahlerCone) -> Self {
        ConeJson {
            choice: choice_str(&c.choice),
            inequalities: c.inequalities.iter().map(InequalityJson::from).collect(),
            first_orthant: c.first_orthant,
        }
    }
}

impl ConeJson {
    pub fn to_domain(&self) -> Result<KahlerCone, CliError> {
        Ok(KahlerCone {
            choice: parse_choice(&self.choice)?,
            inequalities: self.inequalities.iter().map(|i| i.to_domain()).collect::<Result<_, _>>()?,
            first_orthant: self.first_orthant,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveJson {
    FiberInversion(usize),
    /// 1-based images.
    Permutation(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: usize,
    pub to: usize,
    #[serde(rename = "move")]
    pub mv: MoveJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub canonical: MatrixJson,
    pub representatives: Vec<MatrixJson>,
    pub moves: Vec<EdgeJson>,
}

impl From<&OrbitReport> for OrbitJson {
    fn from(o: &OrbitReport) -> Self {
        OrbitJson {
            canonical: MatrixJson::from(&o.canonical),
            representatives: o.representatives.iter().map(MatrixJson::from).collect(),
            moves: o
                .moves
                .iter()
                .map(|e| EdgeJson {
                    from: e.from,
                    to: e.to,
                    mv: match &e.mv {
                        EquivalenceMove::FiberInversion(k) => MoveJson::FiberInversion(*k),
                        EquivalenceMove::PermutationConjugation(p) => MoveJson::Permutation(p.images()),
                    },
                })
                .collect(),
        }
    }
}

impl OrbitJson {
    pub fn to_domain(&self) -> Result<OrbitReport, CliError> {
        let moves = self
            .moves
            .iter()
            .map(|e| {
                let mv = match &e.mv {
                    MoveJson::FiberInversion(k) => EquivalenceMove::FiberInversion(*k),
                    MoveJson::Permutation(p) => EquivalenceMove::PermutationConjugation(
                        Permutation::from_images(p).map_err(|e| CliError::Parse(e.to_string()))?,
                    ),
                };
                Ok(bott_core::tower::OrbitEdge { from: e.from, to: e.to, mv })
            })
            .collect::<Result<_, CliError>>()?;
        Ok(OrbitReport {
            representatives: self.representatives.iter().map(|m| m.to_domain()).collect::<Result<_, _>>()?,
            canonical: self.canonical.to_domain()?,
            moves,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage3Json {
    pub p: String,
    pub w2: String,
    pub q_trivial: bool,
    pub q_trivial_type: Option<String>,
    pub diffeo_key: String,
}

fn w2_str(w: W2Class) -> &'static str {
    match w {
        W2Class::Zero => "0",
        W2Class::X1 => "x1",
        W2Class::X2 => "x2",
        W2Class::X1PlusX2 => "x1+x2",
    }
}

fn qtype_str(t: QTrivialType) -> &'static str {
    match t {
        QTrivialType::Product3 => "product3",
        QTrivialType::M1xM2 => "m1xm2",
        QTrivialType::M3Partition => "m3",
    }
}

impl From<&Stage3Invariants> for Stage3Json {
    fn from(s: &Stage3Invariants) -> Self {
        Stage3Json {
            p: s.p.to_string(),
            w2: w2_str(s.w2_class).into(),
            q_trivial: s.q_trivial,
            q_trivial_type: s.q_trivial_type.map(|t| qtype_str(t).into()),
            diffeo_key: s.diffeo_key.clone(),
        }
    }
}

impl Stage3Json {
    pub fn to_domain(&self) -> Result<Stage3Invariants, CliError> {
        let w2_class = [W2Class::Zero, W2Class::X1, W2Class::X2, W2Class::X1PlusX2]
            .into_iter()
            .find(|w| w2_str(*w) == self.w2)
            .ok_or_else(|| CliError::Parse(format!("unknown w2 class {:?}", self.w2)))?;
        let q_trivial_type = match &self.q_trivial_type {
            None => None,
            Some(s) => Some(
                [QTrivialType::Product3, QTrivialType::M1xM2, QTrivialType::M3Partition]
                    .into_iter()
                    .find(|t| qtype_str(*t) == s)
                    .ok_or_else(|| CliError::Parse(format!("unknown type {s:?}")))?,
            ),
        };
        Ok(Stage3Invariants {
            p: self.p.parse().map_err(|_| CliError::Parse(format!("not an integer: {:?}", self.p)))?,
            w2_class,
            q_trivial: self.q_trivial,
            q_trivial_type,
            diffeo_key: self.diffeo_key.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsJson {
    #[serde(rename = "N_B0")]
    pub n_b0: u64,
    #[serde(rename = "N_Bne0")]
    pub n_bne0: u64,
    #[serde(rename = "N_B")]
    pub n_b: u64,
}

impl From<&CompatibleCounts> for CountsJson {
    fn from(c: &CompatibleCounts) -> Self {
        CountsJson { n_b0: c.n_b0, n_bne0: c.n_bne0, n_b: c.n_b }
    }
}

impl CountsJson {
    pub fn to_domain(&self) -> CompatibleCounts {
        CompatibleCounts { n_b0: self.n_b0, n_bne0: self.n_bne0, n_b: self.n_b }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub d: u32,
    pub s: String,
    pub r: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleJson {
    pub components: Vec<ComponentJson>,
}

impl From<&AdmissibleData> for AdmissibleJson {
    fn from(d: &AdmissibleData) -> Self {
        AdmissibleJson {
            components: d
                .components()
                .iter()
                .map(|c| ComponentJson { d: c.d, s: q_str(&c.s), r: q_str(&c.r) })
                .collect(),
        }
    }
}

impl AdmissibleJson {
    pub fn to_domain(&self) -> Result<AdmissibleData, CliError> {
        let comps = self
            .components
            .iter()
            .map(|c| Ok(Component::new(c.d, parse_q(&c.s)?, parse_q(&c.r)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        AdmissibleData::new(comps).map_err(|e| CliError::domain(e.code(), e.to_string()))
    }
}

/// Ascending coefficients.
pub fn poly_json(p: &Poly) -> Vec<String> {
    q_strs(p.coeffs())
}

pub fn parse_poly(v: &[String]) -> Result<Poly, CliError> {
    Ok(Poly::new(parse_qs(v)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileJson {
    pub f: Vec<String>,
    pub a1: String,
    pub a3: String,
}

impl From<&ExtremalProfile> for ProfileJson {
    fn from(p: &ExtremalProfile) -> Self {
        ProfileJson { f: poly_json(&p.f), a1: q_str(&p.a1), a3: q_str(&p.a3) }
    }
}

impl ProfileJson {
    pub fn to_domain(&self) -> Result<ExtremalProfile, CliError> {
        Ok(ExtremalProfile { f: parse_poly(&self.f)?, a1: parse_q(&self.a1)?, a3: parse_q(&self.a3)? })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootJson {
    pub lo: String,
    pub hi: String,
    pub approx: f64,
}

impl From<&RootBracket> for RootJson {
    fn from(b: &RootBracket) -> Self {
        RootJson { lo: q_str(&b.lo), hi: q_str(&b.hi), approx: rational::to_f64(&b.midpoint()) }
    }
}

impl RootJson {
    pub fn to_domain(&self) -> Result<RootBracket, CliError> {
        Ok(RootBracket { lo: parse_q(&self.lo)?, hi: parse_q(&self.hi)? })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AkSolutionJson {
    pub a11: String,
    pub a12: String,
    pub a22: String,
    #[serde(rename = "A1")]
    pub big_a1: String,
    #[serde(rename = "A2")]
    pub big_a2: String,
    #[serde(rename = "A3")]
    pub big_a3: String,
}

impl From<&AkSolution> for AkSolutionJson {
    fn from(s: &AkSolution) -> Self {
        AkSolutionJson {
            a11: q_str(&s.a11),
            a12: q_str(&s.a12),
            a22: q_str(&s.a22),
            big_a1: q_str(&s.big_a1),
            big_a2: q_str(&s.big_a2),
            big_a3: q_str(&s.big_a3),
        }
    }
}

impl AkSolutionJson {
    pub fn to_domain(&self) -> Result<AkSolution, CliError> {
        let v = parse_qs(&[
            self.a11.clone(),
            self.a12.clone(),
            self.a22.clone(),
            self.big_a1.clone(),
            self.big_a2.clone(),
            self.big_a3.clone(),
        ])?;
        Ok(AkSolution::from_vec(&v))
    }
}
