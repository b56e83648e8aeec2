//! `bott` command-line front end.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns a
//! [`CommandResult`]; the binary only prints it and exits with its code.

pub mod config;
pub mod dto;

use std::ffi::OsString;

use bott_core::admissible::{
    cproj_transform, csc_family_solve, extremal_polynomial, is_csc, is_positive_on_interval, AdmissibleData,
};
use bott_core::almostkahler::{self, SquareFiberData};
use bott_core::cohomology::CohomologyRing;
use bott_core::poly::Poly;
use bott_core::fan::{self, basis_choices, kahler_cone};
use bott_core::symplectic;
use bott_core::topology3;
use bott_core::tower::{equivalence_orbit_bounded, BottMatrix};
use bott_core::{rational, Q};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::{json, Value};

pub use config::Config;
use dto::*;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{message}")]
    Domain { code: String, message: String },
}

impl CliError {
    pub fn domain(code: &str, message: impl Into<String>) -> Self {
        CliError::Domain { code: code.into(), message: message.into() }
    }

    pub fn code(&self) -> &str {
        match self {
            CliError::Parse(_) => "parse_error",
            CliError::Domain { code, .. } => code,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }
}

macro_rules! domain_err {
    ($e:expr) => {
        $e.map_err(|e| CliError::domain(e.code(), e.to_string()))
    };
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Json(Value),
    Csv(String),
    Text(String),
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub command: String,
    pub inputs: Value,
    pub payload: Payload,
    pub exit_code: i32,
    pub envelope: bool,
    /// Written to standard error.
    pub diagnostics: String,
}

impl CommandResult {
    /// Standard output text.
    pub fn stdout(&self) -> String {
        let body = match &self.payload {
            Payload::Json(v) => v.to_string(),
            Payload::Csv(s) | Payload::Text(s) => return s.clone(),
            Payload::None => return String::new(),
        };
        if !self.envelope {
            return body + "\n";
        }
        let env = json!({
            "command": self.command,
            "inputs": self.inputs,
            "payload": match &self.payload { Payload::Json(v) => v.clone(), _ => Value::Null },
            "exit_code": self.exit_code,
        });
        env.to_string() + "\n"
    }
}

#[derive(Parser, Debug)]
#[command(name = "bott", version, about = "Exact invariants of Bott towers")]
pub struct Cli {
    /// Emit JSON (default).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV where the command supports it.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Wrap JSON output in {command, inputs, payload, exit_code}.
    #[arg(long, global = true)]
    pub envelope: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct MatrixArgs {
    /// Stage-3 matrix [[1,0,0],[a,1,0],[b,c,1]].
    #[arg(long, num_args = 3, value_names = ["A", "B", "C"], allow_negative_numbers = true,
          conflicts_with = "matrix")]
    pub stage3: Option<Vec<i64>>,
    /// Matrix as JSON {"n", "rows"}, inline or a file path.
    #[arg(long)]
    pub matrix: Option<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DataArgs {
    /// Admissible data as JSON {"components": [{"d", "s", "r"}]}, inline or a file path.
    #[arg(long, conflicts_with = "ks")]
    pub data: Option<String>,
    /// Two curve factors with s = (2, -2) and radii r1 r2.
    #[arg(long, num_args = 2, value_names = ["R1", "R2"], allow_hyphen_values = true)]
    pub ks: Option<Vec<String>>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    C,
    P,
    W2,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanKind {
    Reductive,
    Fano,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cmd {
    /// Number of nonzero rows of A - I.
    Twist(MatrixArgs),
    /// Number of nonzero columns of A - I.
    Cotwist(MatrixArgs),
    /// Equivalence orbit with its canonical form and generating moves.
    Orbit {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Ring data: alpha classes, relations, square-zero primitives.
    Cohomology(MatrixArgs),
    /// Total Chern or Pontrjagin class, or w2.
    Classes {
        #[arg(value_enum)]
        kind: ClassKind,
        #[command(flatten)]
        m: MatrixArgs,
    },
    /// Diffeomorphism invariants of M3(a,b,c); with --with, compares two triples.
    #[command(allow_negative_numbers = true)]
    Classify3 {
        a: i64,
        b: i64,
        c: i64,
        #[arg(long = "with", num_args = 3, value_names = ["A", "B", "C"], allow_negative_numbers = true)]
        other: Option<Vec<i64>>,
    },
    /// Twist-one towers M(k): class count, or diffeomorphism test against --with.
    #[command(name = "twist1-diffeo")]
    Twist1Diffeo {
        #[arg(value_delimiter = ',', allow_hyphen_values = true, required = true)]
        k: Vec<i64>,
        #[arg(long = "with", value_delimiter = ',', allow_hyphen_values = true)]
        other: Option<Vec<i64>>,
    },
    /// Kähler cone inequalities for one basis choice (u/v string) or all.
    Cone {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long)]
        choice: Option<String>,
    },
    /// Demazure roots.
    Roots {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Reductivity of the automorphism group.
    Reductive(MatrixArgs),
    Fano(MatrixArgs),
    /// Counts of Bott manifolds compatible with the split form (k1, k2, k3).
    #[command(name = "symplectic-count")]
    #[command(allow_negative_numbers = true)]
    SymplecticCount {
        #[arg(allow_hyphen_values = true)]
        k1: String,
        #[arg(allow_hyphen_values = true)]
        k2: String,
        #[arg(allow_hyphen_values = true)]
        k3: String,
    },
    /// Compatible stage-3 matrices, one per class.
    #[command(name = "compat-enumerate")]
    #[command(allow_negative_numbers = true)]
    CompatEnumerate {
        #[arg(allow_hyphen_values = true)]
        k1: String,
        #[arg(allow_hyphen_values = true)]
        k2: String,
        #[arg(allow_hyphen_values = true)]
        k3: String,
    },
    /// Extremal polynomial of an admissible class.
    #[command(name = "extremal-poly")]
    ExtremalPoly(DataArgs),
    /// Roots r_minus of the CSC condition, for one r_plus or a sweep.
    #[command(name = "csc-family")]
    CscFamily {
        #[arg(long)]
        m: u32,
        #[arg(long = "r-plus")]
        r_plus: Option<String>,
        #[arg(long)]
        sweep: Option<String>,
        #[arg(long, default_value = "0")]
        from: String,
        #[arg(long, default_value = "1")]
        to: String,
        #[arg(long)]
        tol: Option<String>,
    },
    /// c-projective transform; --trajectory N emits N+1 steps from (0, beta) to (alpha, beta).
    Cproj {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Profile coefficients, ascending; defaults to the extremal polynomial.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        f: Option<Vec<String>>,
        #[arg(long)]
        trajectory: Option<u32>,
    },
    /// Square-fiber almost-Kähler extremal system.
    #[command(name = "ak-solve", allow_negative_numbers = true)]
    AkSolve {
        #[arg(allow_hyphen_values = true)]
        p0: String,
        p1: i64,
        p2: i64,
        #[arg(long)]
        grid: Option<u32>,
    },
    /// Exhaustive stage-3 scan against the closed-form criteria.
    Scan {
        #[arg(value_enum)]
        kind: ScanKind,
        #[arg(long)]
        bound: Option<i64>,
    },
}

fn inline_or_file(s: &str) -> Result<String, CliError> {
    if s.trim_start().starts_with('{') {
        Ok(s.to_string())
    } else {
        std::fs::read_to_string(s).map_err(|e| CliError::Parse(format!("{s}: {e}")))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(s: &str) -> Result<T, CliError> {
    serde_json::from_str(&inline_or_file(s)?).map_err(|e| CliError::Parse(format!("json: {e}")))
}

impl MatrixArgs {
    fn load(&self) -> Result<BottMatrix, CliError> {
        if let Some(v) = &self.stage3 {
            return Ok(BottMatrix::stage3(v[0], v[1], v[2]));
        }
        match &self.matrix {
            Some(s) => parse_json::<MatrixJson>(s)?.to_domain(),
            None => Err(CliError::Parse("one of --stage3 or --matrix is required".into())),
        }
    }
}

impl DataArgs {
    fn load(&self) -> Result<AdmissibleData, CliError> {
        if let Some(v) = &self.ks {
            return domain_err!(AdmissibleData::ks(parse_q(&v[0])?, parse_q(&v[1])?));
        }
        match &self.data {
            Some(s) => parse_json::<AdmissibleJson>(s)?.to_domain(),
            None => Err(CliError::Parse("one of --data or --ks is required".into())),
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payload types serialize")
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Parse(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn f64_str(x: &Q) -> String {
    format!("{}", rational::to_f64(x))
}

fn stage3_fano_closed_form(a: i64, b: i64, c: i64) -> bool {
    matches!((a, b, c), (1, 0, 0) | (1, 1, 1) | (1, -1, -1) | (-1, 0, 0) | (-1, 0, 1) | (-1, 0, -1))
        || (a == 0 && b.abs() <= 1 && c.abs() <= 1)
}

fn stage3_reductive_closed_form(a: i64, b: i64, c: i64) -> bool {
    (a == 0 && b * c < 0) || (a == 0 && b == 0 && c == 0)
}

struct Ctx<'a> {
    cfg: &'a Config,
    csv: bool,
    json: bool,
}

impl Ctx<'_> {
    fn tolerance(&self, flag: &Option<String>) -> Result<Q, CliError> {
        let t = parse_q(flag.as_deref().unwrap_or(&self.cfg.tolerance))?;
        if !t.is_positive() {
            return Err(CliError::domain("invalid_argument", "tolerance must be positive"));
        }
        Ok(t)
    }
}

fn execute(cmd: &Cmd, ctx: &Ctx) -> Result<Payload, CliError> {
    Ok(match cmd {
        Cmd::Twist(m) => Payload::Json(json!(m.load()?.twist())),
        Cmd::Cotwist(m) => Payload::Json(json!(m.load()?.cotwist())),
        Cmd::Orbit { m, bound } => {
            let a = m.load()?;
            let o = domain_err!(equivalence_orbit_bounded(&a, bound.unwrap_or(ctx.cfg.stage_bound)))?;
            Payload::Json(to_json(&OrbitJson::from(&o)))
        }
        Cmd::Cohomology(m) => {
            let a = m.load()?;
            let r = CohomologyRing::new(&a);
            let n = a.n();
            let relations: Vec<Value> = (1..=n)
                .map(|k| json!({"k": k, "x_k^2": ClassJson::from(&r.mul(&r.x(k), &r.x(k)))}))
                .collect();
            let prims: Vec<Value> = r
                .square_zero_primitives()
                .iter()
                .map(|p| json!({"index": p.index, "class": ClassJson::from(&p.class)}))
                .collect();
            Payload::Json(json!({
                "n": n,
                "alpha": (1..=n).map(|k| ClassJson::from(&r.alpha(k))).collect::<Vec<_>>(),
                "relations": relations,
                "square_zero_primitives": prims,
                "q_trivial": r.is_q_trivial(),
                "topological_twist": r.topological_twist(),
            }))
        }
        Cmd::Classes { kind, m } => {
            let r = CohomologyRing::new(&m.load()?);
            let c = match kind {
                ClassKind::C => ClassJson::from(&r.chern_total()),
                ClassKind::P => ClassJson::from(&r.pontrjagin_total()),
                ClassKind::W2 => ClassJson::from(&r.stiefel_whitney_2()),
            };
            Payload::Json(to_json(&c))
        }
        Cmd::Classify3 { a, b, c, other } => match other {
            None => Payload::Json(to_json(&Stage3Json::from(&topology3::stage3_invariants(*a, *b, *c)))),
            Some(o) => Payload::Json(json!(topology3::stage3_diffeomorphic((*a, *b, *c), (o[0], o[1], o[2])))),
        },
        Cmd::Twist1Diffeo { k, other } => match other {
            Some(o) => {
                if o.len() != k.len() {
                    return Err(CliError::domain("length_mismatch", "both twist vectors need the same length"));
                }
                Payload::Json(json!(topology3::twist1_diffeomorphic(k, o)))
            }
            None => match topology3::twist1_class_count(k) {
                Ok(c) => Payload::Json(json!({"class_count": c, "generic": true})),
                Err(topology3::Twist1Error::NonGeneric { count }) => {
                    Payload::Json(json!({"class_count": count, "generic": false}))
                }
                Err(e) => return Err(CliError::domain(e.code(), e.to_string())),
            },
        },
        Cmd::Cone { m, choice } => {
            let a = m.load()?;
            match choice {
                Some(s) => {
                    let ch = parse_choice(s)?;
                    if ch.len() != a.n() {
                        return Err(CliError::domain("length_mismatch", "choice length must equal the stage"));
                    }
                    Payload::Json(to_json(&ConeJson::from(&kahler_cone(&a, &ch))))
                }
                None => {
                    let all: Vec<ConeJson> =
                        basis_choices(a.n()).iter().map(|c| ConeJson::from(&kahler_cone(&a, c))).collect();
                    Payload::Json(to_json(&all))
                }
            }
        }
        Cmd::Roots { m, bound } => {
            let a = m.load()?;
            let roots = domain_err!(fan::demazure_roots_bounded(&a, bound.unwrap_or(ctx.cfg.stage_bound)))?;
            Payload::Json(json!({
                "roots": roots.roots.iter().collect::<Vec<_>>(),
                "symmetric": roots.is_symmetric(),
            }))
        }
        Cmd::Reductive(m) => {
            let a = m.load()?;
            Payload::Json(json!(domain_err!(fan::is_reductive(&a))?))
        }
        Cmd::Fano(m) => Payload::Json(json!(fan::is_fano(&m.load()?))),
        Cmd::SymplecticCount { k1, k2, k3 } => {
            let c = domain_err!(symplectic::count_compatible(&parse_q(k1)?, &parse_q(k2)?, &parse_q(k3)?))?;
            Payload::Json(to_json(&CountsJson::from(&c)))
        }
        Cmd::CompatEnumerate { k1, k2, k3 } => {
            let list =
                domain_err!(symplectic::enumerate_compatible(&parse_q(k1)?, &parse_q(k2)?, &parse_q(k3)?))?;
            let ms: Vec<MatrixJson> =
                list.iter().map(|&(a, b, c)| MatrixJson::from(&BottMatrix::stage3(a, b, c))).collect();
            if ctx.csv {
                let rows: Vec<Vec<String>> =
                    list.iter().map(|t| vec![t.0.to_string(), t.1.to_string(), t.2.to_string()]).collect();
                Payload::Csv(csv_text(&["a", "b", "c"], &rows)?)
            } else {
                Payload::Json(to_json(&ms))
            }
        }
        Cmd::ExtremalPoly(d) => {
            let data = d.load()?;
            let p = domain_err!(extremal_polynomial(&data))?;
            let mut v = to_json(&ProfileJson::from(&p));
            v["csc"] = json!(is_csc(&p));
            v["positive"] = json!(is_positive_on_interval(&p.f));
            v["data"] = to_json(&AdmissibleJson::from(&data));
            Payload::Json(v)
        }
        Cmd::CscFamily { m, r_plus, sweep, from, to, tol } => {
            let tol = ctx.tolerance(tol)?;
            csc_family(*m, r_plus, sweep, from, to, &tol, ctx)?
        }
        Cmd::Cproj { data, alpha, beta, f, trajectory } => {
            let d = data.load()?;
            let (a, b) = (parse_q(alpha)?, parse_q(beta)?);
            let f = match f {
                Some(v) => parse_poly(v)?,
                None => domain_err!(extremal_polynomial(&d))?.f,
            };
            match trajectory {
                None => {
                    let (f2, d2) = domain_err!(cproj_transform(&f, &d, &a, &b))?;
                    Payload::Json(json!({
                        "alpha": q_str(&a),
                        "beta": q_str(&b),
                        "input": {"f": poly_json(&f), "r": d.radii().iter().map(q_str).collect::<Vec<_>>()},
                        "output": {"f": poly_json(&f2), "r": d2.radii().iter().map(q_str).collect::<Vec<_>>()},
                    }))
                }
                Some(steps) => cproj_trajectory(&f, &d, &a, &b, *steps, ctx)?,
            }
        }
        Cmd::AkSolve { p0, p1, p2, grid } => {
            let data = domain_err!(SquareFiberData::new(parse_q(p0)?, *p1, *p2))?;
            let sol = domain_err!(almostkahler::solve_ak(&data))?;
            let positivity = match almostkahler::check_positivity(&data, &sol) {
                Ok(true) => "certified",
                Ok(false) => "violated",
                Err(almostkahler::AkError::Inconclusive(_)) => "inconclusive",
                Err(e) => return Err(CliError::domain(e.code(), e.to_string())),
            };
            let samples = almostkahler::default_samples(grid.unwrap_or(ctx.cfg.grid));
            let integrable = domain_err!(almostkahler::check_integrability(&data, &sol, &samples))?;
            Payload::Json(json!({
                "solution": AkSolutionJson::from(&sol),
                "determinant": q_str(&almostkahler::system_determinant(&data)),
                "positive": match positivity { "certified" => json!(true), "violated" => json!(false), _ => Value::Null },
                "positivity": positivity,
                "integrable": integrable,
                "csc": sol.is_csc(),
            }))
        }
        Cmd::Scan { kind, bound } => scan(*kind, bound.unwrap_or(ctx.cfg.scan_bound), ctx)?,
    })
}

fn sweep_values(step: &Q, from: &Q, to: &Q) -> Vec<Q> {
    let mut out = Vec::new();
    if !step.is_positive() {
        return out;
    }
    let mut x = from + step;
    while &x < to {
        if x.is_positive() && x < Q::one() {
            out.push(x.clone());
        }
        x += step;
    }
    out
}

fn csc_family(
    m: u32,
    r_plus: &Option<String>,
    sweep: &Option<String>,
    from: &str,
    to: &str,
    tol: &Q,
    ctx: &Ctx,
) -> Result<Payload, CliError> {
    if let Some(rp) = r_plus {
        let rp = parse_q(rp)?;
        let roots = domain_err!(csc_family_solve(m, &rp, tol))?;
        if ctx.csv {
            let rows: Vec<Vec<String>> =
                roots.iter().map(|b| vec![m.to_string(), f64_str(&rp), f64_str(&b.midpoint())]).collect();
            return Ok(Payload::Csv(csv_text(&["m", "r_plus", "r_minus"], &rows)?));
        }
        return Ok(Payload::Json(json!({
            "m": m,
            "r_plus": q_str(&rp),
            "roots": roots.iter().map(RootJson::from).collect::<Vec<_>>(),
        })));
    }
    let step = parse_q(sweep.as_deref().unwrap_or(&ctx.cfg.sweep))?;
    if !step.is_positive() {
        return Err(CliError::domain("invalid_argument", "sweep step must be positive"));
    }
    if m == 0 {
        return Err(CliError::domain("invalid_argument", "m must be positive"));
    }
    let mut rows = Vec::new();
    let mut points = Vec::new();
    for rp in sweep_values(&step, &parse_q(from)?, &parse_q(to)?) {
        for b in domain_err!(csc_family_solve(m, &rp, tol))? {
            rows.push(vec![m.to_string(), f64_str(&rp), f64_str(&b.midpoint())]);
            points.push(json!({"r_plus": q_str(&rp), "root": RootJson::from(&b)}));
        }
    }
    // sweeps are plot data: CSV unless JSON is asked for
    if ctx.csv || !ctx.json {
        Ok(Payload::Csv(csv_text(&["m", "r_plus", "r_minus"], &rows)?))
    } else {
        Ok(Payload::Json(json!({"m": m, "points": points})))
    }
}

fn cproj_trajectory(f: &Poly, d: &AdmissibleData, a: &Q, b: &Q, steps: u32, ctx: &Ctx) -> Result<Payload, CliError> {
    if steps == 0 {
        return Err(CliError::domain("invalid_argument", "trajectory needs at least one step"));
    }
    let mut rows = Vec::new();
    let mut points = Vec::new();
    for k in 0..=steps {
        let ak = a * Q::from_integer(k.into()) / Q::from_integer(steps.into());
        let (_, d2) = domain_err!(cproj_transform(f, d, &ak, b))?;
        let r = d2.radii();
        let mut row = vec![k.to_string()];
        row.extend(r.iter().map(f64_str));
        rows.push(row);
        points.push(json!({"step": k, "alpha": q_str(&ak), "r": r.iter().map(q_str).collect::<Vec<_>>()}));
    }
    if ctx.csv {
        let mut header = vec!["step".to_string()];
        header.extend((1..=d.components().len()).map(|i| format!("r{i}")));
        let h: Vec<&str> = header.iter().map(String::as_str).collect();
        Ok(Payload::Csv(csv_text(&h, &rows)?))
    } else {
        Ok(Payload::Json(json!({"beta": q_str(b), "points": points})))
    }
}

fn scan(kind: ScanKind, bound: i64, ctx: &Ctx) -> Result<Payload, CliError> {
    if bound < 0 {
        return Err(CliError::domain("invalid_argument", "bound must be nonnegative"));
    }
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    let mut checked = 0u64;
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                let m = BottMatrix::stage3(a, b, c);
                let (got, expected) = match kind {
                    ScanKind::Reductive => (domain_err!(fan::is_reductive(&m))?, stage3_reductive_closed_form(a, b, c)),
                    ScanKind::Fano => (fan::is_fano(&m), stage3_fano_closed_form(a, b, c)),
                };
                checked += 1;
                if got != expected {
                    mismatches.push([a, b, c]);
                }
                rows.push(vec![a.to_string(), b.to_string(), c.to_string(), got.to_string(), expected.to_string()]);
            }
        }
    }
    if ctx.csv {
        return Ok(Payload::Csv(csv_text(&["a", "b", "c", "computed", "closed_form"], &rows)?));
    }
    Ok(Payload::Json(json!({
        "kind": kind,
        "bound": bound,
        "checked": checked,
        "mismatches": mismatches,
    })))
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Twist(_) => "twist",
        Cmd::Cotwist(_) => "cotwist",
        Cmd::Orbit { .. } => "orbit",
        Cmd::Cohomology(_) => "cohomology",
        Cmd::Classes { .. } => "classes",
        Cmd::Classify3 { .. } => "classify3",
        Cmd::Twist1Diffeo { .. } => "twist1-diffeo",
        Cmd::Cone { .. } => "cone",
        Cmd::Roots { .. } => "roots",
        Cmd::Reductive(_) => "reductive",
        Cmd::Fano(_) => "fano",
        Cmd::SymplecticCount { .. } => "symplectic-count",
        Cmd::CompatEnumerate { .. } => "compat-enumerate",
        Cmd::ExtremalPoly(_) => "extremal-poly",
        Cmd::CscFamily { .. } => "csc-family",
        Cmd::Cproj { .. } => "cproj",
        Cmd::AkSolve { .. } => "ak-solve",
        Cmd::Scan { .. } => "scan",
    }
}

fn error_result(command: &str, inputs: Value, e: &CliError) -> CommandResult {
    CommandResult {
        command: command.into(),
        inputs,
        payload: Payload::None,
        exit_code: e.exit_code(),
        envelope: false,
        diagnostics: json!({"error": e.code(), "message": e.to_string()}).to_string() + "\n",
    }
}

/// Runs with the configuration named by `BOTT_CONFIG`.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Config::from_env() {
        Ok(cfg) => run_with_config(argv, &cfg),
        Err(e) => error_result("", Value::Null, &e),
    }
}

pub fn run_with_config<I, T>(argv: I, cfg: &Config) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => CommandResult {
                    command: String::new(),
                    inputs: Value::Null,
                    payload: Payload::Text(text),
                    exit_code: if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 },
                    envelope: false,
                    diagnostics: String::new(),
                },
                _ => CommandResult {
                    command: String::new(),
                    inputs: Value::Null,
                    payload: Payload::None,
                    exit_code: 2,
                    envelope: false,
                    diagnostics: text,
                },
            };
        }
    };
    let name = command_name(&cli.cmd);
    let inputs = to_json(&cli.cmd);
    let ctx = Ctx { cfg, csv: cli.csv, json: cli.json };
    match execute(&cli.cmd, &ctx) {
        Ok(payload) => CommandResult {
            command: name.into(),
            inputs,
            payload,
            exit_code: 0,
            envelope: cli.envelope,
            diagnostics: String::new(),
        },
        Err(e) => CommandResult { envelope: cli.envelope, ..error_result(name, inputs, &e) },
    }
}
