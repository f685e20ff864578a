//! Parameter sweep over w₀ ∈ A_k^(m) = { i^(1/m)/j : 1 ≤ j ≤ k, 1 ≤ i < j^m }:
//! every h(y, z, ±w₀, x) must keep degree 6 in x and be irreducible.

mod config;

pub use config::SweepConfig;

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{rational_content, rationalize_radicand, Coeff, NumError, Rational, Scalar};
use crate::fangeom::{DataKind, FanSpec, GeomError};
use crate::fanpoly::{certify_nonconstructible, eliminate_three_fan, is_even_in, Certificate, FanError};
use crate::irreducibility::{
    multivariate_irreducible_by_specialization, univariate_irreducible_over_quadratic, IrrError,
    IrreducibilityEvidence, Verdict,
};
use crate::poly::{content_and_primitive, MultiPoly, Var};

/// Instances between two checkpoint writes.
pub const CHECKPOINT_EVERY: usize = 1000;

/// Values of (y, z) tried in order until one certifies irreducibility.
pub const SPECIALIZATION_POINTS: [(i64, i64); 5] = [(2, 3), (3, 2), (2, 5), (5, 2), (3, 5)];

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("root index m = {0} is not supported; use 1 or 2")]
    RootIndex(u32),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed checkpoint or report: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> SweepError + '_ {
    move |source| SweepError::Io { path: path.to_path_buf(), source }
}

/// All i^(1/m)/j with multiplicity, ordered by j then i.
pub fn enumerate_a(k: u64, m: u32) -> Result<Vec<Scalar>, SweepError> {
    if m != 1 && m != 2 {
        return Err(SweepError::RootIndex(m));
    }
    if k < 1 {
        return Err(SweepError::Config("k must be at least 1".into()));
    }
    let mut out = Vec::new();
    for j in 1..=k {
        for i in 1..j.pow(m) {
            out.push(rationalize_radicand(i, j, m)?);
        }
    }
    Ok(out)
}

/// Keeps the first occurrence of each value.
pub fn dedupe(values: &[Scalar]) -> Vec<Scalar> {
    let mut seen = HashSet::with_capacity(values.len());
    values.iter().filter(|v| seen.insert((*v).clone())).cloned().collect()
}

/// Number of (w₀, sign) instances with multiplicity, and the distinct w₀
/// values actually processed.
fn enumerate_values(config: &SweepConfig) -> Result<(usize, usize, Vec<Scalar>), SweepError> {
    let mut all = enumerate_a(config.k1, 1)?;
    all.extend(enumerate_a(config.k2, 2)?);
    let total = 2 * all.len();
    let distinct = dedupe(&all);
    let n_distinct = distinct.len();
    Ok((total, n_distinct, if config.dedupe { distinct } else { all }))
}

/// Total (w₀, sign) instances for the given bounds, counted with multiplicity.
pub fn count_instances(k1: u64, k2: u64) -> Result<usize, SweepError> {
    Ok(2 * (enumerate_a(k1, 1)?.len() + enumerate_a(k2, 2)?.len()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pipeline {
    /// All coefficients rational after substitution: irreducibility in Z[y,z,x].
    Rational,
    /// Odd powers of w survived: irreducibility over Q(√d)[y,z,x].
    QuadraticExtension,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub w0: Scalar,
    pub sign: i8,
    pub pipeline: Pipeline,
    pub degree_x: u32,
    /// The (y, z) point whose specialization certified irreducibility.
    pub point: Option<(i64, i64)>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub w0: Scalar,
    pub sign: i8,
    pub reason: String,
    pub evidence: Option<IrreducibilityEvidence>,
}

/// Aggregates over a prefix of the work list; merging is concatenation
/// plus sums, so the result does not depend on how work was split.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
struct Partial {
    polynomials_tested: usize,
    irreducible_count: usize,
    sign_pairs_identical: usize,
    pipeline_counts: BTreeMap<Pipeline, usize>,
    failures: Vec<Failure>,
    instances: Vec<InstanceRecord>,
}

impl Partial {
    fn merge(&mut self, other: Partial) {
        self.polynomials_tested += other.polynomials_tested;
        self.irreducible_count += other.irreducible_count;
        self.sign_pairs_identical += other.sign_pairs_identical;
        for (k, v) in other.pipeline_counts {
            *self.pipeline_counts.entry(k).or_default() += v;
        }
        self.failures.extend(other.failures);
        self.instances.extend(other.instances);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub total_enumerated_with_multiplicity: usize,
    pub distinct_values: usize,
    pub polynomials_tested: usize,
    pub irreducible_count: usize,
    /// Whether h has only even powers of w, making the two signs identical.
    pub h_even_in_w: bool,
    /// Values w₀ for which h(y,z,w₀,x) and h(y,z,−w₀,x) coincide.
    pub sign_pairs_identical: usize,
    pub pipeline_counts: BTreeMap<Pipeline, usize>,
    pub failures: Vec<Failure>,
    pub instances: Vec<InstanceRecord>,
    pub wall_time_secs: f64,
}

impl SweepReport {
    pub fn succeeded(&self) -> bool {
        self.failures.is_empty() && self.irreducible_count == self.polynomials_tested
    }

    pub fn to_json(&self) -> Result<String, SweepError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("k1 / k2".into(), format!("{} / {}", self.config.k1, self.config.k2)),
            ("dedupe".into(), self.config.dedupe.to_string()),
            ("workers".into(), self.config.worker_count.to_string()),
            ("instances (with multiplicity)".into(), self.total_enumerated_with_multiplicity.to_string()),
            ("distinct w0".into(), self.distinct_values.to_string()),
            ("polynomials tested".into(), self.polynomials_tested.to_string()),
            ("irreducible".into(), self.irreducible_count.to_string()),
            ("failures".into(), self.failures.len().to_string()),
            ("h even in w".into(), self.h_even_in_w.to_string()),
            ("identical sign pairs".into(), self.sign_pairs_identical.to_string()),
        ];
        for (p, n) in &self.pipeline_counts {
            rows.push((format!("pipeline {}", serde_json::to_string(p).unwrap_or_default().trim_matches('"')), n.to_string()));
        }
        rows.push(("wall time (s)".into(), format!("{:.3}", self.wall_time_secs)));
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        for f in &self.failures {
            out.push_str(&format!("FAIL w0 = {}{}: {}\n", if f.sign < 0 { "-" } else { "" }, f.w0, f.reason));
        }
        out
    }
}

fn h_scalar() -> &'static MultiPoly<Scalar> {
    static H: OnceLock<MultiPoly<Scalar>> = OnceLock::new();
    H.get_or_init(|| eliminate_three_fan().map_coeffs(|c| Scalar::from(c.clone())))
}

fn points() -> impl Iterator<Item = ((i64, i64), Vec<(Var, Rational)>)> {
    SPECIALIZATION_POINTS
        .iter()
        .map(|&(y, z)| ((y, z), vec![(Var::Y, Rational::from_integer(y)), (Var::Z, Rational::from_integer(z))]))
}

/// Outcome for one substituted polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceCheck {
    pub pipeline: Pipeline,
    pub degree_x: u32,
    pub point: Option<(i64, i64)>,
    pub verdict: Verdict,
    pub evidence: Option<IrreducibilityEvidence>,
    pub reason: Option<String>,
    /// The substituted polynomial after clearing denominators.
    pub poly: MultiPoly<Scalar>,
}

/// Substitutes `w` into `p(y, z, w, x)` and certifies irreducibility in x
/// over the coefficient ring, trying the specialization points in order.
pub fn check_instance(p: &MultiPoly<Scalar>, w: &Scalar) -> InstanceCheck {
    let expected = p.degree_in(Var::X);
    let sub = match p.specialize(&[(Var::W, w.clone())]) {
        Ok(s) => s.compact(),
        Err(e) => return failed(Pipeline::Rational, 0, MultiPoly::zero(&[]), format!("substitution failed: {e}")),
    };
    let rational: Option<MultiPoly<Rational>> = sub.try_map_coeffs(|c| c.as_rational().cloned().ok_or(())).ok();
    match rational {
        Some(q) => check_rational(q, expected),
        None => check_quadratic(sub, expected),
    }
}

fn failed(pipeline: Pipeline, degree_x: u32, poly: MultiPoly<Scalar>, reason: String) -> InstanceCheck {
    InstanceCheck { pipeline, degree_x, point: None, verdict: Verdict::Inconclusive, evidence: None, reason: Some(reason), poly }
}

fn check_rational(q: MultiPoly<Rational>, expected: u32) -> InstanceCheck {
    let content = rational_content(q.coeffs());
    let q = q.map_coeffs(|c| c.checked_div(&content).expect("nonzero content"));
    let as_scalar = q.map_coeffs(|c| Scalar::from(c.clone()));
    let deg = q.degree_in(Var::X);
    if deg != expected {
        return failed(Pipeline::Rational, deg, as_scalar, format!("degree in x dropped from {expected} to {deg}"));
    }
    let mut last = None;
    for (pt, point) in points() {
        match multivariate_irreducible_by_specialization(&q, Var::X, &point) {
            Ok(ev) if ev.verdict == Verdict::Irreducible => {
                return InstanceCheck {
                    pipeline: Pipeline::Rational,
                    degree_x: deg,
                    point: Some(pt),
                    verdict: Verdict::Irreducible,
                    evidence: Some(ev),
                    reason: None,
                    poly: as_scalar,
                };
            }
            Ok(ev) => last = Some(ev),
            Err(IrrError::NotPrimitive(_, c)) => {
                return failed(Pipeline::Rational, deg, as_scalar, format!("not primitive in x: content {c}"));
            }
            Err(e) => return failed(Pipeline::Rational, deg, as_scalar, format!("irreducibility test failed: {e}")),
        }
    }
    let mut out = failed(Pipeline::Rational, deg, as_scalar, "all specialization points inconclusive".into());
    out.evidence = last;
    out
}

fn check_quadratic(sub: MultiPoly<Scalar>, expected: u32) -> InstanceCheck {
    let deg = sub.degree_in(Var::X);
    if deg != expected {
        return failed(Pipeline::QuadraticExtension, deg, sub, format!("degree in x dropped from {expected} to {deg}"));
    }
    match content_and_primitive(&sub, Var::X) {
        Ok((c, _)) if c.is_constant() => {}
        Ok((c, _)) => return failed(Pipeline::QuadraticExtension, deg, sub, format!("not primitive in x: content {c}")),
        Err(e) => return failed(Pipeline::QuadraticExtension, deg, sub, e.to_string()),
    }
    let Some(d) = sub.coeffs().find_map(Coeff::radicand) else {
        return failed(Pipeline::QuadraticExtension, deg, sub, "no radicand found".into());
    };
    for (pt, point) in points() {
        let point: Vec<(Var, Scalar)> = point.into_iter().map(|(v, r)| (v, Scalar::from(r))).collect();
        let uni = sub.specialize(&point).map(|s| s.compact()).and_then(|s| s.to_univariate(Var::X));
        let Ok(uni) = uni else { continue };
        if uni.degree() != Some(deg as usize) {
            continue;
        }
        match univariate_irreducible_over_quadratic(&uni, d) {
            Ok(ev) if ev.verdict == Verdict::Irreducible => {
                return InstanceCheck {
                    pipeline: Pipeline::QuadraticExtension,
                    degree_x: deg,
                    point: Some(pt),
                    verdict: Verdict::Irreducible,
                    evidence: Some(ev),
                    reason: None,
                    poly: sub,
                };
            }
            Ok(_) => continue,
            Err(e) => return failed(Pipeline::QuadraticExtension, deg, sub, e.to_string()),
        }
    }
    failed(Pipeline::QuadraticExtension, deg, sub, "all specialization points inconclusive".into())
}

fn process_value(p: &MultiPoly<Scalar>, w0: &Scalar, record: bool) -> Partial {
    let mut part = Partial::default();
    let mut polys = Vec::with_capacity(2);
    for sign in [1i8, -1] {
        let w = if sign > 0 { w0.clone() } else { w0.negated() };
        let check = check_instance(p, &w);
        part.polynomials_tested += 1;
        *part.pipeline_counts.entry(check.pipeline).or_default() += 1;
        if check.verdict == Verdict::Irreducible {
            part.irreducible_count += 1;
        } else {
            part.failures.push(Failure {
                w0: w0.clone(),
                sign,
                reason: check.reason.clone().unwrap_or_else(|| "not certified".into()),
                evidence: check.evidence.clone(),
            });
        }
        if record {
            part.instances.push(InstanceRecord {
                w0: w0.clone(),
                sign,
                pipeline: check.pipeline,
                degree_x: check.degree_x,
                point: check.point,
                verdict: check.verdict,
            });
        }
        polys.push(check.poly);
    }
    if polys[0] == polys[1] {
        part.sign_pairs_identical += 1;
    }
    part
}

#[derive(Debug, Serialize, Deserialize)]
struct Checkpoint {
    fingerprint: String,
    next_value: usize,
    partial: Partial,
}

fn checkpoint_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".checkpoint");
    PathBuf::from(s)
}

/// Writes `bytes` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), SweepError> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(path))?;
    tmp.write_all(bytes).map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| SweepError::Io { path: path.to_path_buf(), source: e.error })?;
    Ok(())
}

fn load_checkpoint(path: &Path, fingerprint: &str) -> Result<Option<Checkpoint>, SweepError> {
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let cp: Checkpoint = serde_json::from_str(&text)?;
    Ok((cp.fingerprint == fingerprint).then_some(cp))
}

/// Runs the sweep on a pool of `worker_count` threads. With an output path
/// the JSON report is written there, and progress is checkpointed next to
/// it so an interrupted run resumes where it stopped.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport, SweepError> {
    config.validate()?;
    let start = Instant::now();
    let (total, distinct_values, values) = enumerate_values(config)?;
    let h = h_scalar();
    let h_even_in_w = is_even_in(eliminate_three_fan(), Var::W);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.worker_count)
        .build()
        .map_err(|e| SweepError::Config(e.to_string()))?;

    let fingerprint = config.fingerprint();
    let cp_path = config.output_path.as_deref().map(checkpoint_path);
    let (mut next, mut acc) = match cp_path.as_deref().map(|p| load_checkpoint(p, &fingerprint)).transpose()?.flatten() {
        Some(cp) => (cp.next_value, cp.partial),
        None => (0, Partial::default()),
    };
    let chunk = (CHECKPOINT_EVERY / 2).max(1);
    while next < values.len() {
        let end = (next + chunk).min(values.len());
        let parts: Vec<Partial> =
            pool.install(|| values[next..end].par_iter().map(|w| process_value(h, w, config.record_instances)).collect());
        for p in parts {
            acc.merge(p);
        }
        next = end;
        if let Some(path) = cp_path.as_deref() {
            if next < values.len() {
                let cp = Checkpoint { fingerprint: fingerprint.clone(), next_value: next, partial: acc.clone() };
                write_atomic(path, serde_json::to_string(&cp)?.as_bytes())?;
            }
        }
    }

    let report = SweepReport {
        config: config.clone(),
        total_enumerated_with_multiplicity: total,
        distinct_values,
        polynomials_tested: acc.polynomials_tested,
        irreducible_count: acc.irreducible_count,
        h_even_in_w,
        sign_pairs_identical: acc.sign_pairs_identical,
        pipeline_counts: acc.pipeline_counts,
        failures: acc.failures,
        instances: acc.instances,
        wall_time_secs: start.elapsed().as_secs_f64(),
    };
    if let Some(out) = config.output_path.as_deref() {
        write_atomic(out, report.to_json()?.as_bytes())?;
        if let Some(cp) = cp_path.as_deref() {
            if cp.exists() {
                fs::remove_file(cp).map_err(io_err(cp))?;
            }
        }
    }
    Ok(report)
}

/// The regular nonagon: central angle 2π/3 split by three unit distances.
pub fn verify_nonagon_corollary() -> Result<Certificate, SweepError> {
    let half = Scalar::from(Rational::new(1, 2)?);
    let spec = FanSpec::new(DataKind::CentralDistances, half, vec![Scalar::int(1); 3])?;
    Ok(certify_nonconstructible(&spec)?)
}
