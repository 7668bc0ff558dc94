//! Reproducible verification runs. Each suite enumerates its cases, runs them
//! in parallel, sorts them by parameter key and assembles a JSON report.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cache::{write_atomic, CacheError};
use crate::field::{make_field, Field, FieldElement as Fe, FieldError};
use crate::linalg::{Matrix, SparseVec};
use crate::meataxe::{
    is_graded_simple, is_irreducible, spin, GradedRep, SimplicityCertificate, Verdict,
};
use crate::pchar::{
    b_values, coadjoint, gen_regular_nilpotent, gen_regular_semisimple, gram_matrix, lambda_set,
    rational_duals, restrict_weights, semisimple_character, IsotropyReport, PChar, PCharError,
    Regularity, WeightVector,
};
use crate::superalg::{
    build_algebra, expected_superdimension, verify_algebra, AlgebraError, Family, LieSuperalgebra,
    Parity, Slot,
};
use crate::verma::{
    classify_p2, omega, phi, ptilde_baby_verma, queer_baby_verma, top_vector, xy_scalar, VermaError,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Suite {
    AC1,
    AC2,
    AC3,
    AC4,
    AC5,
    AC6,
    AC7,
    AC8,
    AC9,
    AC10,
    AC11,
}

impl Suite {
    pub fn all() -> [Suite; 11] {
        use Suite::*;
        [AC1, AC2, AC3, AC4, AC5, AC6, AC7, AC8, AC9, AC10, AC11]
    }

    pub fn title(self) -> &'static str {
        match self {
            Suite::AC1 => "structure constants satisfy the superalgebra axioms",
            Suite::AC2 => "Kac modules of ptilde(2): simplicity case split",
            Suite::AC3 => "periplectic baby Vermas at regular semisimple chi are irreducible",
            Suite::AC4 => "periplectic baby Vermas at regular nilpotent chi are irreducible",
            Suite::AC5 => "top graded piece of a regular semisimple baby Verma",
            Suite::AC6 => "q(2): graded simplicity of Z^q iff Phi(lambda) != 0",
            Suite::AC7 => "q(n) at strongly regular chi: isotropic dimension and simplicity",
            Suite::AC8 => "maximal b-value bound against largest simple dimension",
            Suite::AC9 => "Gram forms and coadjoint invariance of b-values",
            Suite::AC10 => "x y v = epsilon Omega(lambda) v with a constant sign",
            Suite::AC11 => "p(2) and qtilde(2) baby Vermas",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let digits = s
            .trim()
            .trim_start_matches(['A', 'a'])
            .trim_start_matches(['C', 'c']);
        match digits.parse::<usize>() {
            Ok(i @ 1..=11) => Ok(Suite::all()[i - 1]),
            _ => Err(format!("unknown suite `{s}` (expected AC1 .. AC11)")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentSpec {
    pub suite: Suite,
    pub family: Option<Family>,
    pub n: Option<usize>,
    pub p: Option<u32>,
    pub k: Option<u32>,
    pub seed: u64,
    /// Store full certificates instead of their summaries.
    pub full_certificates: bool,
    /// Invert every expected outcome; the run must then fail.
    pub negative_control: bool,
    pub output: Option<PathBuf>,
}

impl ExperimentSpec {
    pub fn new(suite: Suite) -> Self {
        ExperimentSpec {
            suite,
            family: None,
            n: None,
            p: None,
            k: None,
            seed: 42,
            full_certificates: false,
            negative_control: false,
            output: None,
        }
    }

    fn wants(&self, u: &Unit) -> bool {
        self.family.map_or(true, |f| f == u.family)
            && self.n.map_or(true, |n| n == u.n)
            && self.p.map_or(true, |p| p == u.p)
            && self.k.map_or(true, |k| k == u.k)
    }
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("no case of {0} matches the requested family, n, p and k")]
    UnsupportedGrid(Suite),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    PChar(#[from] PCharError),
    #[error(transparent)]
    Verma(#[from] VermaError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("report serialization failed: {0}")]
    Json(#[from] serde_json::Error),
    #[error("no weights with the required separation exist in the chosen pool")]
    NoWeights,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseRecord {
    /// Sortable parameter tuple; reports list cases in this order.
    pub key: String,
    pub family: Family,
    pub n: usize,
    pub p: u32,
    pub k: u32,
    pub chi: Vec<String>,
    pub lambda: Vec<String>,
    pub dim: Option<usize>,
    pub outcome: Value,
    pub expected: String,
    pub passed: bool,
    pub certificate: Option<Value>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct FieldInfo {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub title: String,
    pub parameters: ExperimentSpec,
    pub seed: u64,
    pub tool_version: String,
    pub fields: Vec<FieldInfo>,
    pub cases: Vec<CaseRecord>,
    pub checks: Vec<SuiteCheck>,
    pub summary: Value,
    pub failures: Vec<String>,
    pub passed: bool,
    pub elapsed_ms: u64,
}

impl Report {
    /// JSON with every timing zeroed, for determinism comparisons.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        for c in &mut r.cases {
            c.elapsed_ms = 0;
        }
        serde_json::to_string_pretty(&r).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write(&self, path: &Path) -> Result<(), ExperimentError> {
        write_atomic(path, self.to_json().as_bytes())?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
struct Unit {
    family: Family,
    n: usize,
    p: u32,
    k: u32,
}

impl Unit {
    fn new(family: Family, n: usize, p: u32, k: u32) -> Self {
        Unit { family, n, p, k }
    }

    fn field(&self) -> Result<Arc<Field>, ExperimentError> {
        Ok(Arc::new(make_field(self.p, self.k)?))
    }

    fn algebra(&self) -> Result<LieSuperalgebra, ExperimentError> {
        Ok(build_algebra(self.family, self.n, self.field()?)?)
    }

    fn info(&self) -> Result<FieldInfo, ExperimentError> {
        let f = self.field()?;
        Ok(FieldInfo {
            p: self.p,
            k: self.k,
            modulus: f.modulus().to_vec(),
        })
    }

    fn prefix(&self) -> String {
        format!("{}/{}/{}/{}", self.family, self.n, self.p, self.k)
    }

    fn record(&self, key: String, chi: Vec<String>, lambda: Vec<String>) -> CaseRecord {
        CaseRecord {
            key: format!("{}/{key}", self.prefix()),
            family: self.family,
            n: self.n,
            p: self.p,
            k: self.k,
            chi,
            lambda,
            dim: None,
            outcome: Value::Null,
            expected: String::new(),
            passed: false,
            certificate: None,
            elapsed_ms: 0,
        }
    }
}

#[derive(Default)]
struct SuiteOutput {
    cases: Vec<CaseRecord>,
    checks: Vec<SuiteCheck>,
    summary: BTreeMap<String, Value>,
    fields: Vec<FieldInfo>,
}

impl SuiteOutput {
    fn check(&mut self, name: &str, passed: bool, detail: Value) {
        self.checks.push(SuiteCheck {
            name: name.into(),
            passed,
            detail,
        });
    }
}

/// Run one suite; writes the report when `spec.output` is set.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Report, ExperimentError> {
    let start = Instant::now();
    let units: Vec<Unit> = suite_units(spec.suite)
        .into_iter()
        .filter(|u| spec.wants(u))
        .collect();
    if units.is_empty() {
        return Err(ExperimentError::UnsupportedGrid(spec.suite));
    }
    let mut out = SuiteOutput::default();
    for u in &units {
        out.fields.push(u.info()?);
    }
    match spec.suite {
        Suite::AC1 => ac1(spec, &units, &mut out)?,
        Suite::AC2 => ac2(spec, &units, &mut out)?,
        Suite::AC3 => ac3(spec, &units, &mut out)?,
        Suite::AC4 => ac4(spec, &units, &mut out)?,
        Suite::AC5 => ac5(spec, &units, &mut out)?,
        Suite::AC6 => ac6(spec, &units, &mut out)?,
        Suite::AC7 => ac7(spec, &units, &mut out)?,
        Suite::AC8 => ac8(spec, &units, &mut out)?,
        Suite::AC9 => ac9(spec, &units, &mut out)?,
        Suite::AC10 => ac10(spec, &units, &mut out)?,
        Suite::AC11 => ac11(spec, &units, &mut out)?,
    }
    out.cases.sort_by(|a, b| a.key.cmp(&b.key));
    out.fields.sort();
    out.fields.dedup();
    if spec.negative_control {
        for c in &mut out.cases {
            c.passed = !c.passed;
            c.expected = format!("not ({})", c.expected);
        }
    }
    let failures: Vec<String> = out
        .cases
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.key.clone())
        .chain(
            out.checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name.clone()),
        )
        .collect();
    let report = Report {
        suite: spec.suite,
        title: spec.suite.title().into(),
        parameters: spec.clone(),
        seed: spec.seed,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        fields: out.fields,
        passed: failures.is_empty(),
        failures,
        cases: out.cases,
        checks: out.checks,
        summary: Value::Object(out.summary.into_iter().collect()),
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    if let Some(path) = &spec.output {
        report.write(path)?;
    }
    Ok(report)
}

fn suite_units(s: Suite) -> Vec<Unit> {
    use Family::*;
    match s {
        Suite::AC1 => {
            let mut v = Vec::new();
            for fam in Family::all() {
                for n in 2..=4 {
                    for p in [3, 5] {
                        v.push(Unit::new(fam, n, p, 1));
                    }
                }
            }
            v
        }
        Suite::AC2 => vec![Unit::new(Ptilde, 2, 3, 3)],
        Suite::AC3 | Suite::AC5 | Suite::AC10 => {
            vec![Unit::new(Ptilde, 2, 3, 2), Unit::new(Ptilde, 3, 3, 2)]
        }
        Suite::AC4 => vec![Unit::new(Ptilde, 2, 3, 1), Unit::new(Ptilde, 3, 3, 1)],
        Suite::AC6 => vec![Unit::new(Q, 2, 3, 6), Unit::new(Q, 2, 5, 4)],
        Suite::AC7 => vec![Unit::new(Q, 2, 3, 6), Unit::new(Q, 3, 3, 3)],
        Suite::AC8 => vec![
            Unit::new(Ptilde, 2, 3, 1),
            Unit::new(Q, 2, 3, 1),
            Unit::new(Sq, 2, 3, 1),
        ],
        Suite::AC9 => Family::all()
            .into_iter()
            .map(|f| Unit::new(f, 3, 5, 1))
            .collect(),
        Suite::AC11 => vec![Unit::new(Pder, 2, 3, 2), Unit::new(Sq, 2, 3, 3)],
    }
}

fn case_seed(base: u64, key: &str) -> u64 {
    // FNV-1a, so that case seeds do not depend on scheduling
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in key.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ base
}

fn fmt_all(f: &Field, v: &[Fe]) -> Vec<String> {
    v.iter().map(|&x| f.format(x)).collect()
}

fn chi_desc(f: &Field, chi: &PChar) -> Vec<String> {
    chi.format(f)
}

/// Elements of the subfield of order `order`.
pub fn subfield(f: &Field, order: u64) -> Vec<Fe> {
    f.elements().filter(|&x| f.pow(x, order) == x).collect()
}

fn cert_value(spec: &ExperimentSpec, c: &SimplicityCertificate) -> Value {
    if spec.full_certificates {
        return serde_json::to_value(c).expect("certificate serializes");
    }
    json!({
        "verdict": c.verdict,
        "seed": c.seed,
        "graded": c.graded,
        "words_tried": c.words_tried,
        "kernel_dim": c.norton.as_ref().map(|n| n.nullspace.len()),
        "spin_dims": c.norton.as_ref().map(|n| n.spin_dims.clone()),
        "witness_dim": c.witness.as_ref().map(|w| w.len()),
    })
}

fn elapsed(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

/// `count` distinct weight vectors drawn from `pool` that pass the regularity test.
fn pick_weights(
    g: &LieSuperalgebra,
    pool: &[Fe],
    kind: Regularity,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(PChar, WeightVector)>, ExperimentError> {
    let mut out: Vec<(PChar, WeightVector)> = Vec::new();
    for _ in 0..100_000 {
        if out.len() == count {
            break;
        }
        let w: Vec<Fe> = (0..g.rank())
            .map(|_| pool[rng.gen_range(0..pool.len())])
            .collect();
        if let Ok((chi, lam)) = gen_regular_semisimple(g, &w, kind) {
            if out.iter().all(|(c, _)| c != &chi) {
                out.push((chi, lam));
            }
        }
    }
    if out.len() < count {
        return Err(ExperimentError::NoWeights);
    }
    Ok(out)
}

fn simple_dims_summary(out: &mut SuiteOutput) {
    let mut by_family: BTreeMap<String, usize> = BTreeMap::new();
    for c in &out.cases {
        let simple = c
            .outcome
            .get("simple")
            .and_then(Value::as_bool)
            .unwrap_or(false);
        if simple {
            if let Some(d) = c.dim {
                let e = by_family.entry(c.family.to_string()).or_insert(0);
                *e = (*e).max(d);
            }
        }
    }
    out.summary
        .insert("max_simple_dim".into(), json!(by_family));
}

// ---------------------------------------------------------------- AC1

fn ac1(
    _spec: &ExperimentSpec,
    units: &[Unit],
    out: &mut SuiteOutput,
) -> Result<(), ExperimentError> {
    let cases: Result<Vec<CaseRecord>, ExperimentError> = units
        .par_iter()
        .map(|u| {
            let t = Instant::now();
            let g = u.algebra()?;
            let report = verify_algebra(&g);
            let sdim = (g.dim_even(), g.dim_odd());
            let expected_sdim = expected_superdimension(u.family, u.n);
            let mut rec = u.record(String::new(), Vec::new(), Vec::new());
            rec.dim = Some(g.dim());
            rec.passed = report.passed() && sdim == expected_sdim;
            rec.outcome = json!({
                "superdimension": sdim,
                "checks": report.checks,
            });
            rec.expected = format!("all axioms hold, superdimension {expected_sdim:?}");
            rec.elapsed_ms = elapsed(t);
            Ok(rec)
        })
        .collect();
    out.cases = cases?;
    Ok(())
}

// ---------------------------------------------------------------- AC2

/// `frobinv(x^p - x)` over all `x`: the values `chi(h)` with `Lambda` nonempty.
fn artin_schreier_image(f: &Field) -> Vec<Fe> {
    let mut v: Vec<Fe> = f
        .elements()
        .map(|x| f.frobenius_inverse(f.sub(f.frobenius(x), x)))
        .collect();
    v.sort();
    v.dedup();
    v
}

fn ac2(
    spec: &ExperimentSpec,
    units: &[Unit],
    out: &mut SuiteOutput,
) -> Result<(), ExperimentError> {
    let u = units[0];
    let g = u.algebra()?;
    let f = g.field().clone();
    let image = artin_schreier_image(&f);
    let (h1, h2) = (g.cartan_even()[0], g.cartan_even()[1]);
    let e = g.slot_indices(Slot::PosEven)[0];
    let fi = g.slot_indices(Slot::NegEven)[0];
    let two_inv = f.inv(f.from_int(2)).expect("odd characteristic");
    let f_values = [f.zero(), f.one(), f.gen()];
    let mut chis = Vec::new();
    for (ih, &ch) in image.iter().enumerate() {
        for (iz, &cz) in image.iter().enumerate() {
            for (iff, &cf) in f_values.iter().enumerate() {
                let mut chi = PChar::zero(g.dim_even());
                chi.values[h1] = f.mul(f.add(ch, cz), two_inv);
                chi.values[h2] = f.mul(f.sub(cz, ch), two_inv);
                chi.values[fi] = cf;
                debug_assert!(chi.values[e].is_zero());
                chis.push((format!("{ih:02}/{iz:02}/{iff}"), chi));
            }
        }
    }
    let results: Result<Vec<Vec<CaseRecord>>, ExperimentError> = chis
        .par_iter()
        .map(|(key, chi)| {
            let t = Instant::now();
            let cls = classify_p2(&g, chi, case_seed(spec.seed, key))?;
            let ms = elapsed(t) / cls.cases.len().max(1) as u64;
            let p0_zero = crate::verma::chi_vanishes_on_p0(&g, chi);
            Ok(cls
                .cases
                .into_iter()
                .enumerate()
                .map(|(li, c)| {
                    let mut rec = u.record(
                        format!("{key}/{li:02}"),
                        chi_desc(&f, chi),
                        c.lambda.clone(),
                    );
                    rec.dim = Some(c.dim);
                    rec.passed = c.matches;
                    rec.expected = if c.expected_irreducible {
                        "irreducible of dimension 2p".into()
                    } else {
                        "reducible of dimension 2 with submodule Y (x) k_c".into()
                    };
                    rec.outcome = json!({
                        "chi_p0_zero": p0_zero,
                        "lambda_h": c.lambda_h,
                        "one_dimensional_case": c.one_dimensional_case,
                        "irreducible": c.irreducible,
                        "graded_simple": c.graded_simple,
                        "y_submodule": c.y_submodule,
                        "simple": c.irreducible,
                    });
                    rec.elapsed_ms = ms;
                    rec
                })
                .collect())
        })
        .collect();
    out.cases = results?.into_iter().flatten().collect();
    let total = out.cases.len();
    let matched = out.cases.iter().filter(|c| c.passed).count();
    let mut pattern: BTreeMap<String, usize> = BTreeMap::new();
    for c in out.cases.iter().filter(|c| !c.passed) {
        let key = format!(
            "chi_p0_zero={} lambda_h={}",
            c.outcome["chi_p0_zero"],
            c.outcome["lambda_h"].as_str().unwrap_or("?")
        );
        *pattern.entry(key).or_insert(0) += 1;
    }
    let mut dims: Vec<usize> = out
        .cases
        .iter()
        .filter(|c| c.outcome["irreducible"] == json!(true))
        .filter_map(|c| c.dim)
        .collect();
    if out
        .cases
        .iter()
        .any(|c| c.outcome["y_submodule"] == json!(true))
    {
        dims.push(1);
    }
    dims.sort_unstable();
    dims.dedup();
    out.summary.insert("cases".into(), json!(total));
    out.summary.insert("matched".into(), json!(matched));
    out.summary
        .insert("mismatch_pattern".into(), json!(pattern));
    out.summary.insert("irreducible_dims".into(), json!(dims));
    simple_dims_summary(out);
    out.check("at_least_500_cases", total >= 500, json!(total));
    out.check(
        "match_rate_100_percent",
        matched == total,
        json!({"matched": matched, "total": total}),
    );
    Ok(())
}

// ---------------------------------------------------------- AC3/5/10

struct PeriplecticCase {
    unit: Unit,
    key: String,
    g: Arc<LieSuperalgebra>,
    chi: PChar,
    lambda: WeightVector,
}

fn regss_cases(
    spec: &ExperimentSpec,
    units: &[Unit],
) -> Result<Vec<PeriplecticCase>, ExperimentError> {
    let mut out = Vec::new();
    for u in units {
        let g = Arc::new(u.algebra()?);
        let f = g.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(case_seed(spec.seed, &u.prefix()));
        let pool: Vec<Fe> = f.elements().collect();
        let count = if u.n == 2 { 3 } else { 2 };
        let chis = pick_weights(&g, &pool, Regularity::Regular, count, &mut rng)?;
        for (ci, (chi, _)) in chis.into_iter().enumerate() {
            for (li, lambda) in lambda_set(&g, &chi).into_iter().enumerate() {
                out.push(PeriplecticCase {
                    unit: *u,
                    key: format!("{ci:02}/{li:02}"),
                    g: g.clone(),
                    chi: chi.clone(),
                    lambda,
                });
            }
        }
    }
    Ok(out)
}

fn nilpotent_cases(units: &[Unit]) -> Result<Vec<PeriplecticCase>, ExperimentError> {
    let mut out = Vec::new();
    for u in units {
        let g = Arc::new(u.algebra()?);
        let chi = gen_regular_nilpotent(&g)?;
        for (li, lambda) in lambda_set(&g, &chi).into_iter().enumerate() {
            out.push(PeriplecticCase {
                unit: *u,
                key: format!("00/{li:02}"),
                g: g.clone(),
                chi: chi.clone(),
                lambda,
            });
        }
    }
    Ok(out)
}

fn half_rank(n: usize) -> u32 {
    (n * (n - 1) / 2) as u32
}

/// Ungraded irreducibility of a periplectic baby Verma, plus its dimension check.
fn periplectic_irreducibility(
    spec: &ExperimentSpec,
    c: &PeriplecticCase,
) -> Result<CaseRecord, ExperimentError> {
    let t = Instant::now();
    let f = c.g.field().clone();
    let z = ptilde_baby_verma(&c.g, &c.chi, &c.lambda)?;
    let p = c.unit.p as usize;
    let expected_dim = (2 * p).pow(half_rank(c.unit.n));
    let rep = GradedRep::from_module(&z, "periplectic baby verma");
    let seed = case_seed(spec.seed, &c.key);
    let cert = is_irreducible(&rep, seed);
    let irreducible = cert.verdict == Verdict::Irreducible;
    let graded = if irreducible {
        Verdict::Irreducible
    } else {
        is_graded_simple(&rep, seed).verdict
    };
    let mut rec = c
        .unit
        .record(c.key.clone(), chi_desc(&f, &c.chi), fmt_all(&f, &c.lambda));
    rec.dim = Some(z.dim());
    rec.passed = irreducible && z.dim() == expected_dim;
    rec.expected = format!("ungraded irreducible of dimension {expected_dim}");
    rec.outcome = json!({
        "ungraded": cert.verdict,
        "graded": graded,
        "simple": irreducible,
    });
    rec.certificate = Some(cert_value(spec, &cert));
    rec.elapsed_ms = elapsed(t);
    Ok(rec)
}

fn ac3(
    spec: &ExperimentSpec,
    units: &[Unit],
    out: &mut SuiteOutput,
) -> Result<(), ExperimentError> {
    let cases = regss_cases(spec, units)?;
    out.cases = cases
        .par_iter()
        .map(|c| periplectic_irreducibility(spec, c))
        .collect::<Result<_, _>>()?;
    simple_dims_summary(out);
    Ok(())
}

fn ac4(
    spec: &ExperimentSpec,
    units: &[Unit],
    out: &mut SuiteOutput,
) -> Result<(), ExperimentError> {
    let cases = nilpotent_cases(units)?;
    out.cases = cases
        .par_iter()
        .map(|c| periplectic_irreducibility(spec, c))
        .collect::<Result<_, _>>()?;
    for u in units {
        let count = out.cases.iter().filter(|c| c.n == u.n).count();
        let needed = if u.n == 2 { 9 } else { 5 };
        out.check(&format!("weights_n{}", u.n), count >= needed, json!(count));
    }
    simple_dims_summary(out);
    Ok(())
}

fn top_piece(spec: &ExperimentSpec, c: &PeriplecticCase) -> Result<CaseRecord, ExperimentError> {
    let t = Instant::now();
    let g = &c.g;
    let f = g.field().clone();
    let n = c.unit.n;
    let z = ptilde_baby_verma(g, &c.chi, &c.lambda)?;
    let top = half_rank(n) as usize;
    let piece = z.graded_piece(top);
    let expected_dim = (c.unit.p as usize).pow(half_rank(n));
    let d0 = g.dim_even();
    let restricted: Option<Vec<_>> = (0..d0).map(|x| z.action(x).restrict(&piece)).collect();
    let mut rec = c
        .unit
        .record(c.key.clone(), chi_desc(&f, &c.chi), fmt_all(&f, &c.lambda));
    rec.dim = Some(piece.len());
    rec.expected = format!(
        "top piece is an irreducible g_0-module of dimension {expected_dim}; y v has weight lambda + delta and is killed by n_0^+"
    );
    let Some(mats) = restricted else {
        rec.outcome = json!({"top_piece_invariant": false});
        rec.elapsed_ms = elapsed(t);
        return Ok(rec);
    };
    let parity = piece.iter().map(|&b| z.parity()[b]).collect();
    let rep = GradedRep::new(
        f.clone(),
        parity,
        mats,
        vec![Parity::Even; d0],
        "top piece".into(),
    );
    let cert = is_irreducible(&rep, case_seed(spec.seed, &c.key));

    // weight of y v: delta = -sum_{i<j} (eps_i + eps_j) has eps-coefficients -(n-1)
    let delta_eps = vec![f.from_int(-(n as i64 - 1)); n];
    let delta = restrict_weights(g, &delta_eps);
    let yv: SparseVec = top_vector(g, &z);
    let scale = |c: Fe, v: &SparseVec| -> SparseVec {
        v.iter()
            .filter_map(|&(i, x)| {
                let y = f.mul(c, x);
                (!y.is_zero()).then_some((i, y))
            })
            .collect()
    };
    let weight_ok = g.cartan_even().iter().enumerate().all(|(pos, &h)| {
        z.action(h).apply_sparse(&f, &yv) == scale(f.add(c.lambda[pos], delta[pos]), &yv)
    });
    let killed = g
        .slot_indices(Slot::PosEven)
        .iter()
        .all(|&x| z.action(x).apply_sparse(&f, &yv).is_empty());
    let pos: BTreeMap<usize, usize> = piece.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let in_piece = !yv.is_empty() && yv.iter().all(|(i, _)| pos.contains_key(&(*i as usize)));
    let generated = if in_piece {
        let mut dense = vec![Fe::ZERO; piece.len()];
        for &(i, x) in &yv {
            dense[pos[&(i as usize)]] = x;
        }
        spin(&rep, &[dense]).map(|s| s.dim()).unwrap_or(0)
    } else {
        0
    };
    rec.passed = cert.verdict == Verdict::Irreducible
        && piece.len() == expected_dim
        && weight_ok
        && killed
        && generated == piece.len();
    rec.outcome = json!({
        "top_piece_invariant": true,
        "top_piece_irreducible": cert.verdict == Verdict::Irreducible,
        "y_v_weight_lambda_plus_delta": weight_ok,
        "y_v_killed_by_n0_plus": killed,
        "y_v_generates_dim": generated,
    });
    rec.certificate = Some(cert_value(spec, &cert));
    rec.elapsed_ms = elapsed(t);
    Ok(rec)
}

fn ac5(
    spec: &ExperimentSpec,
    units: &[Unit],
    out: &mut SuiteOutput,
) -> Result<(), ExperimentError> {
    let cases = regss_cases(spec, units)?;
    out.cases = cases
        .par_iter()
        .map(|c| top_piece(spec, c))
        .collect::<Result<_, _>>()?;
    Ok(())
}

fn ac10(
    spec: &ExperimentSpec,
    units: &[Unit],
    out: &mut SuiteOutput,
) -> Result<(), ExperimentError> {
    let cases = regss_cases(spec, units)?;
    out.cases = cases
        .par_iter()
        .map(|c| -> Result<CaseRecord, ExperimentError> {
            let t = Instant::now();
            let f = c.g.field().clone();
            let z = ptilde_baby_verma(&c.g, &c.chi, &c.lambda)?;
            let om = omega(&c.lambda, &f);
            let mut rec =
                c.unit
                    .record(c.key.clone(), chi_desc(&f, &c.chi), fmt_all(&f, &c.lambda));
            rec.dim = Some(z.dim());
            rec.expected = "x y v = eps Omega(lambda) v with eps = +1 or -1".into();
            let (scalar, sign) = match xy_scalar(&c.g, &z) {
                Ok(s) => {
                    let sign = if om.is_zero() {
                        None
                    } else if s == om {
                        Some(1)
                    } else if s == f.neg(om) {
                        Some(-1)
                    } else {
                        None
                    };
                    (Some(f.format(s)), sign)
                }
                Err(_) => (None, None),
            };
            rec.passed = sign.is_some();
            rec.outcome = json!({
                "xy_scalar": scalar,
                "omega": f.format(om),
                "epsilon": sign,
            });
            rec.elapsed_ms = elapsed(t);
            Ok(rec)
        })
        .collect::<Result<_, _>>()?;
    let mut eps: BTreeMap<String, Value> = BTreeMap::new();
    for u in units {
        let signs: Vec<Value> = out
            .cases
            .iter()
            .filter(|c| c.n == u.n)
            .map(|c| c.outcome["epsilon"].clone())
            .collect();
        let constant =
            !signs.is_empty() && !signs[0].is_null() && signs.iter().all(|s| *s == signs[0]);
        out.check(
            &format!("constant_sign_n{}", u.n),
            constant,
            json!({"cases": signs.len(), "epsilon": signs.first()}),
        );
        eps.insert(
            u.n.to_string(),
            signs.first().cloned().unwrap_or(Value::Null),
        );
    }
    out.summary.insert("epsilon".into(), json!(eps));
    Ok(())
}

// ---------------------------------------------------------------- queer

struct QueerCase {
    unit: Unit,
    key: String,
    g: Arc<LieSuperalgebra>,
    chi: PChar,
    lambda: WeightVector,
}

struct QueerResult {
    rec: CaseRecord,
    simple: bool,
}

fn queer_simplicity(
    spec: &ExperimentSpec,
    c: &QueerCase,
    expected_iso: Option<usize>,
    expected_dim: Option<usize>,
) -> Result<QueerResult, ExperimentError> {
    let t = Instant::now();
    let f = c.g.field().clone();
    let mut rec = c
        .unit
        .record(c.key.clone(), chi_desc(&f, &c.chi), fmt_all(&f, &c.lambda));
    let (z, cm) = match queer_baby_verma(&c.g, &c.chi, &c.lambda, case_seed(spec.seed, &c.key)) {
        Ok(x) => x,
        Err(e @ VermaError::FieldTooSmall) => {
            rec.outcome = json!({"error": e.to_string()});
            rec.elapsed_ms = elapsed(t);
            return Ok(QueerResult { rec, simple: false });
        }
        Err(e) => return Err(e.into()),
    };
    let rep = GradedRep::from_module(&z, "queer baby verma");
    let cert = is_graded_simple(&rep, case_seed(spec.seed, &c.key));
    let simple = cert.verdict != Verdict::Reducible;
    rec.dim = Some(z.dim());
    rec.outcome = json!({
        "verdict": cert.verdict,
        "simple": simple,
        "isotropic_dim": cm.isotropic.len(),
        "cartan_module_dim": cm.dim(),
        "phi": f.format(phi(&c.lambda, &f)),
    });
    rec.certificate = Some(cert_value(spec, &cert));
    rec.passed = expected_iso.map_or(true, |e| e == cm.isotropic.len())
        && expected_dim.map_or(true, |e| e == z.dim());
    rec.elapsed_ms = elapsed(t);
    Ok(QueerResult { rec, simple })
}

fn ac6(
    spec: &ExperimentSpec,
    units: &[Unit],
    out: &mut SuiteOutput,
) -> Result<(), ExperimentError> {
    let mut cases = Vec::new();
    for u in units {
        let g = Arc::new(u.algebra()?);
        let f = g.field().clone();
        let p = u.p as i64;
        // weights from F_{p^{k/2}}, whose elements are all squares in F_{p^k}
        let pool = subfield(&f, (u.p as u64).pow(u.k / 2));
        let mut rng = ChaCha8Rng::seed_from_u64(case_seed(spec.seed, &u.prefix()));
        let mut chis: Vec<PChar> = Vec::new();
        let mut attempts = 0;
        while chis.len() < 20 && attempts < 10_000 {
            attempts += 1;
            let l1 = pool[rng.gen_range(0..pool.len())];
            let shift = f.from_int(rng.gen_range(0..p));
            // a third of the characters put lambda_1 -+ lambda_2 in the prime field
            let l2 = match attempts % 3 {
                0 => pool[rng.gen_range(0..pool.len())],
                1 => f.add(l1, shift),
                _ => f.sub(shift, l1),
            };
            let chi = semisimple_character(&g, &[l1, l2]);
            if !chis.contains(&chi) {
                chis.push(chi);
            }
        }
        for (ci, chi) in chis.into_iter().enumerate() {
            for (li, lambda) in lambda_set(&g, &chi).into_iter().enumerate() {
                cases.push(QueerCase {
                    unit: *u,
                    key: format!("{ci:02}/{li:02}"),
                    g: g.clone(),
                    chi: chi.clone(),
                    lambda,
                });
            }
        }
    }
    let results: Vec<QueerResult> = cases
        .par_iter()
        .map(|c| queer_simplicity(spec, c, None, None))
        .collect::<Result<_, _>>()?;
    let mut counts: BTreeMap<String, (usize, usize, usize)> = BTreeMap::new();
    out.cases = results
        .into_iter()
        .zip(&cases)
        .map(|(mut r, c)| {
            let f = c.g.field();
            let phi_nonzero = !phi(&c.lambda, f).is_zero();
            r.rec.passed = r.rec.passed && r.simple == phi_nonzero && r.rec.dim.is_some();
            r.rec.expected = if phi_nonzero {
                "graded simple (Phi != 0)".into()
            } else {
                "not graded simple (Phi = 0)".into()
            };
            let e = counts.entry(c.unit.p.to_string()).or_insert((0, 0, 0));
            if phi_nonzero {
                e.1 += 1;
            } else {
                e.0 += 1;
            }
            if r.rec.passed {
                e.2 += 1;
            }
            r.rec
        })
        .collect();
    for u in units {
        let (zero, nonzero, agree) = counts.get(&u.p.to_string()).copied().unwrap_or_default();
        let chis: std::collections::BTreeSet<&[String]> = out
            .cases
            .iter()
            .filter(|c| c.p == u.p)
            .map(|c| c.chi.as_slice())
            .collect();
        out.check(
            &format!("p{}_coverage", u.p),
            zero >= 10 && nonzero >= 10 && chis.len() >= 20,
            json!({"phi_zero": zero, "phi_nonzero": nonzero, "characters": chis.len(), "agree": agree}),
        );
    }
    simple_dims_summary(out);
    Ok(())
}

fn ac7(
    spec: &ExperimentSpec,
    units: &[Unit],
    out: &mut SuiteOutput,
) -> Result<(), ExperimentError> {
    let mut cases = Vec::new();
    for u in units {
        let g = Arc::new(u.algebra()?);
        let f = g.field().clone();
        // n = 2 takes weights in F_27 inside F_729, where f_lambda always has an isotropic line
        let pool = subfield(&f, (u.p as u64).pow(3));
        let mut rng = ChaCha8Rng::seed_from_u64(case_seed(spec.seed, &u.prefix()));
        let count = if u.n == 2 { 2 } else { 1 };
        let chis = pick_weights(&g, &pool, Regularity::StronglyRegular, count, &mut rng)?;
        for (ci, (chi, _)) in chis.into_iter().enumerate() {
            for (li, lambda) in lambda_set(&g, &chi).into_iter().enumerate() {
                cases.push(QueerCase {
                    unit: *u,
                    key: format!("{ci:02}/{li:02}"),
                    g: g.clone(),
                    chi: chi.clone(),
                    lambda,
                });
            }
        }
    }
    out.cases = cases
        .par_iter()
        .map(|c| {
            let n = c.unit.n;
            let p = c.unit.p as usize;
            let dim = p.pow(half_rank(n)) * (1usize << (n * n).div_ceil(2));
            let mut r = queer_simplicity(spec, c, Some(n / 2), Some(dim))?;
            r.rec.passed = r.rec.passed && r.simple;
            r.rec.expected = format!(
                "isotropic dimension {}, dimension {dim}, graded simple",
                n / 2
            );
            Ok(r.rec)
        })
        .collect::<Result<_, ExperimentError>>()?;
    simple_dims_summary(out);
    Ok(())
}

// ---------------------------------------------------------------- AC8

fn ac8(
    spec: &ExperimentSpec,
    units: &[Unit],
    out: &mut SuiteOutput,
) -> Result<(), ExperimentError> {
    let expected_max = |fam: Family| -> u32 {
        match fam {
            Family::Ptilde => 6,
            _ => 12,
        }
    };
    let mut per_family: BTreeMap<String, Value> = BTreeMap::new();
    for u in units {
        let g = u.algebra()?;
        let f = g.field().clone();
        let bound = BigUint::from(expected_max(u.family));
        let mut reports: Vec<IsotropyReport> = Vec::new();
        for (i, theta) in rational_duals(g.table()).enumerate() {
            let t = Instant::now();
            let r = b_values(g.table(), &theta);
            let mut rec = u.record(format!("rational/{i:04}"), chi_desc(&f, &theta), Vec::new());
            rec.passed = r.skw_term <= bound;
            rec.expected = format!("skw term at most {bound}");
            rec.outcome = serde_json::to_value(&r)?;
            rec.elapsed_ms = elapsed(t);
            out.cases.push(rec);
            reports.push(r);
        }
        let (rep_reports, simple_dim) = regular_representative(spec, u)?;
        for (i, (desc, r)) in rep_reports.iter().enumerate() {
            let mut rec = u.record(format!("regular/{i:04}"), desc.clone(), Vec::new());
            rec.passed = r.skw_term <= bound;
            rec.expected = format!("skw term at most {bound}");
            rec.outcome = serde_json::to_value(r)?;
            out.cases.push(rec);
        }
        let all: Vec<&IsotropyReport> = reports
            .iter()
            .chain(rep_reports.iter().map(|x| &x.1))
            .collect();
        let max = all
            .iter()
            .map(|r| r.skw_term.clone())
            .max()
            .unwrap_or_default();
        let min_c1 = all.iter().map(|r| r.centralizer_odd).min().unwrap_or(0);
        out.check(
            &format!("{}_max_skw_term", u.family),
            max == bound && BigUint::from(simple_dim as u64) == max,
            json!({"max": max.to_string(), "expected": bound.to_string(), "largest_simple_dim": simple_dim}),
        );
        if u.family == Family::Ptilde {
            out.check("ptilde_min_odd_centralizer", min_c1 == 2, json!(min_c1));
        }
        per_family.insert(
            u.family.to_string(),
            json!({"max_skw_term": max.to_string(), "min_odd_centralizer": min_c1, "largest_simple_dim": simple_dim}),
        );
    }
    out.summary.insert("families".into(), json!(per_family));
    Ok(())
}

/// b-values at regular representatives over an extension field, and the
/// dimension of a simple module built at such a character.
#[allow(clippy::type_complexity)]
fn regular_representative(
    spec: &ExperimentSpec,
    u: &Unit,
) -> Result<(Vec<(Vec<String>, IsotropyReport)>, usize), ExperimentError> {
    let mut reports = Vec::new();
    let seed = case_seed(spec.seed, &u.prefix());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match u.family {
        Family::Ptilde | Family::Pder => {
            let g = Unit::new(u.family, u.n, u.p, 2).algebra()?;
            let f = g.field().clone();
            let pool: Vec<Fe> = f.elements().collect();
            let (chi, lam) = pick_weights(&g, &pool, Regularity::Regular, 1, &mut rng)?.remove(0);
            reports.push((chi_desc(&f, &chi), b_values(g.table(), &chi)));
            let nil = gen_regular_nilpotent(&g)?;
            reports.push((chi_desc(&f, &nil), b_values(g.table(), &nil)));
            let z = ptilde_baby_verma(&g, &chi, &lam)?;
            let rep = GradedRep::from_module(&z, "regular representative");
            let simple = is_irreducible(&rep, seed).verdict == Verdict::Irreducible;
            Ok((reports, if simple { z.dim() } else { 0 }))
        }
        Family::Q | Family::Sq => {
            // weights from F_{p^3}; arithmetic in F_{p^6} for q(2) so that f_lambda splits
            let k = if u.family == Family::Q { 6 } else { 3 };
            let g = Unit::new(u.family, u.n, u.p, k).algebra()?;
            let f = g.field().clone();
            let pool = subfield(&f, (u.p as u64).pow(3));
            let (chi, lam) =
                pick_weights(&g, &pool, Regularity::StronglyRegular, 1, &mut rng)?.remove(0);
            reports.push((chi_desc(&f, &chi), b_values(g.table(), &chi)));
            let (z, _) = queer_baby_verma(&g, &chi, &lam, seed)?;
            let rep = GradedRep::from_module(&z, "regular representative");
            let simple = is_graded_simple(&rep, seed).verdict != Verdict::Reducible;
            Ok((reports, if simple { z.dim() } else { 0 }))
        }
    }
}

// ---------------------------------------------------------------- AC9

fn random_invertible(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = Matrix::from_rows(
            (0..n)
                .map(|_| (0..n).map(|_| f.random(rng)).collect())
                .collect(),
        );
        if m.inverse(f).is_some() {
            return m;
        }
    }
}

fn ac9(
    spec: &ExperimentSpec,
    units: &[Unit],
    out: &mut SuiteOutput,
) -> Result<(), ExperimentError> {
    const SAMPLES: usize = 1000;
    const INVARIANCE_SAMPLES: usize = 10;
    const CONJUGATIONS: usize = 50;
    out.cases = units
        .par_iter()
        .map(|u| -> Result<CaseRecord, ExperimentError> {
            let t = Instant::now();
            let g = u.algebra()?;
            let f = g.field().clone();
            let tab = g.table();
            let mut rng = ChaCha8Rng::seed_from_u64(case_seed(spec.seed, &u.prefix()));
            let mut bad_even = 0;
            let mut bad_rank = 0;
            let mut bad_odd = 0;
            let mut bad_invariance = 0;
            for s in 0..SAMPLES {
                let theta = PChar::random(&f, g.dim_even(), &mut rng);
                let ge = gram_matrix(tab, &theta, Parity::Even);
                let go = gram_matrix(tab, &theta, Parity::Odd);
                let m0 = ge.rows();
                let alternating = (0..m0).all(|i| {
                    ge[(i, i)].is_zero() && (0..m0).all(|j| ge[(i, j)] == f.neg(ge[(j, i)]))
                });
                if !alternating {
                    bad_even += 1;
                }
                if ge.rank(&f) % 2 != 0 {
                    bad_rank += 1;
                }
                if go != go.transpose() {
                    bad_odd += 1;
                }
                if s < INVARIANCE_SAMPLES {
                    let base = b_values(tab, &theta);
                    for _ in 0..CONJUGATIONS {
                        let gm = random_invertible(&f, u.n, &mut rng);
                        let moved = coadjoint(&g, &gm, &theta)?;
                        let r = b_values(tab, &moved);
                        if (r.b0, r.b1) != (base.b0, base.b1) {
                            bad_invariance += 1;
                        }
                    }
                }
            }
            let mut rec = u.record(String::new(), Vec::new(), Vec::new());
            rec.dim = Some(g.dim());
            rec.passed = bad_even == 0 && bad_rank == 0 && bad_odd == 0 && bad_invariance == 0;
            rec.expected =
                "even Gram alternating of even rank, odd Gram symmetric, b-values invariant".into();
            rec.outcome = json!({
                "samples": SAMPLES,
                "invariance_samples": INVARIANCE_SAMPLES,
                "conjugations_per_sample": CONJUGATIONS,
                "even_not_alternating": bad_even,
                "even_rank_odd": bad_rank,
                "odd_not_symmetric": bad_odd,
                "invariance_failures": bad_invariance,
            });
            rec.elapsed_ms = elapsed(t);
            Ok(rec)
        })
        .collect::<Result<_, _>>()?;
    Ok(())
}

// ---------------------------------------------------------------- AC11

fn ac11(
    spec: &ExperimentSpec,
    units: &[Unit],
    out: &mut SuiteOutput,
) -> Result<(), ExperimentError> {
    for u in units {
        let g = Arc::new(u.algebra()?);
        let f = g.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(case_seed(spec.seed, &u.prefix()));
        if u.family.is_periplectic() {
            let pool: Vec<Fe> = f.elements().collect();
            let (chi, _) = pick_weights(&g, &pool, Regularity::Regular, 1, &mut rng)?.remove(0);
            let cases: Vec<PeriplecticCase> = lambda_set(&g, &chi)
                .into_iter()
                .enumerate()
                .map(|(li, lambda)| PeriplecticCase {
                    unit: *u,
                    key: format!("00/{li:02}"),
                    g: g.clone(),
                    chi: chi.clone(),
                    lambda,
                })
                .collect();
            let recs: Vec<CaseRecord> = cases
                .par_iter()
                .map(|c| periplectic_irreducibility(spec, c))
                .collect::<Result<_, _>>()?;
            out.cases.extend(recs);
        } else {
            let pool: Vec<Fe> = f.elements().collect();
            let (chi, _) =
                pick_weights(&g, &pool, Regularity::StronglyRegular, 1, &mut rng)?.remove(0);
            let n = u.n;
            let dim = (u.p as usize).pow(half_rank(n)) * (1usize << (n * n - 1).div_ceil(2));
            let cases: Vec<QueerCase> = lambda_set(&g, &chi)
                .into_iter()
                .enumerate()
                .map(|(li, lambda)| QueerCase {
                    unit: *u,
                    key: format!("00/{li:02}"),
                    g: g.clone(),
                    chi: chi.clone(),
                    lambda,
                })
                .collect();
            let recs: Vec<CaseRecord> = cases
                .par_iter()
                .map(|c| {
                    let mut r = queer_simplicity(spec, c, None, Some(dim))?;
                    r.rec.passed = r.rec.passed && r.simple;
                    r.rec.expected = format!("graded simple of dimension {dim}");
                    Ok(r.rec)
                })
                .collect::<Result<_, ExperimentError>>()?;
            out.cases.extend(recs);
        }
    }
    simple_dims_summary(out);
    Ok(())
}

/// Largest simple dimension per family recorded in a report summary.
pub fn max_simple_dim(report: &Report, family: Family) -> Option<usize> {
    report.summary["max_simple_dim"][family.to_string()]
        .as_u64()
        .map(|d| d as usize)
}

/// Defaults read from a `key = value` file; command-line flags override them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub p: Option<u32>,
    pub k: Option<u32>,
    pub seed: Option<u64>,
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad value for `{key}`")]
    BadValue { line: usize, key: String },
}

pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let mut cfg = Config::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or(ConfigError::Syntax { line })?;
        let (key, value) = (key.trim(), value.trim());
        let bad = || ConfigError::BadValue {
            line,
            key: key.to_string(),
        };
        match key {
            "p" => cfg.p = Some(value.parse().map_err(|_| bad())?),
            "k" => cfg.k = Some(value.parse().map_err(|_| bad())?),
            "seed" => cfg.seed = Some(value.parse().map_err(|_| bad())?),
            "cache_dir" => {
                if value.is_empty() {
                    return Err(bad());
                }
                cfg.cache_dir = Some(PathBuf::from(value));
            }
            _ => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        }
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        assert_eq!("AC3".parse::<Suite>().unwrap(), Suite::AC3);
        assert_eq!("ac11".parse::<Suite>().unwrap(), Suite::AC11);
        assert_eq!("7".parse::<Suite>().unwrap(), Suite::AC7);
        assert!("AC12".parse::<Suite>().is_err());
    }

    #[test]
    fn config_lines() {
        let cfg = parse_config("# defaults\np = 5\nk=2\nseed = 9 # trailing\n").unwrap();
        assert_eq!(cfg.p, Some(5));
        assert_eq!(cfg.k, Some(2));
        assert_eq!(cfg.seed, Some(9));
        assert_eq!(
            parse_config("q = 1").unwrap_err(),
            ConfigError::UnknownKey {
                line: 1,
                key: "q".into()
            }
        );
        assert_eq!(
            parse_config("p 3").unwrap_err(),
            ConfigError::Syntax { line: 1 }
        );
    }

    #[test]
    fn grid_filter_rejects_unknown_rank() {
        let mut spec = ExperimentSpec::new(Suite::AC2);
        spec.n = Some(5);
        assert!(matches!(
            run_experiment(&spec),
            Err(ExperimentError::UnsupportedGrid(_))
        ));
    }
}
