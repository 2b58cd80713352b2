//! Every identity as a parameterised check, run over a grid of fields.
//!
//! A family is run per field. Records are merged and sorted by
//! `(id, key)`, so reports do not depend on scheduling or thread count.

mod diagonal;
mod elliptic;
mod lemmas;
mod report;
mod section5;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::characters::Characters;
use crate::error::{Error, Result};
use crate::fields::{is_prime, FieldCtx};
use crate::padics::{default_precision, PadicRationalZq, ZqCtx};

pub use report::{OutputFormat, Report, Summary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// Ordered `name=value` pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params(Vec<(String, String)>);

impl Params {
    pub fn field(p: u64, r: u32) -> Self {
        Params(vec![
            ("p".into(), p.to_string()),
            ("r".into(), r.to_string()),
        ])
    }

    pub fn with(mut self, name: &str, value: impl ToString) -> Self {
        self.0.push((name.into(), value.to_string()));
        self
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.0
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.0
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }

    pub fn compact(&self) -> String {
        let v: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        v.join(" ")
    }
}

impl Serialize for Params {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub id: String,
    pub params: Params,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Degenerate instances met while evaluating; reported, never hidden.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
    #[serde(skip)]
    key: Vec<i64>,
}

impl Record {
    fn new(id: &str, params: Params, key: Vec<i64>, status: Status) -> Self {
        Record {
            id: id.into(),
            params,
            status,
            branch: None,
            lhs: None,
            rhs: None,
            precision: None,
            detail: None,
            diagnostics: Vec::new(),
            wall_ms: None,
            key,
        }
    }

    fn skip(id: &str, params: Params, key: Vec<i64>, reason: impl Into<String>) -> Self {
        let mut r = Self::new(id, params, key, Status::Skip);
        r.detail = Some(reason.into());
        r
    }

    fn fail(id: &str, params: Params, key: Vec<i64>, reason: impl Into<String>) -> Self {
        let mut r = Self::new(id, params, key, Status::Fail);
        r.detail = Some(reason.into());
        r
    }

    /// Integer identity.
    fn ints(id: &str, params: Params, key: Vec<i64>, lhs: i64, rhs: i64) -> Self {
        let status = if lhs == rhs {
            Status::Pass
        } else {
            Status::Fail
        };
        let mut r = Self::new(id, params, key, status);
        r.lhs = Some(lhs.to_string());
        r.rhs = Some(rhs.to_string());
        r
    }

    /// p-adic identity; passes when the sides agree to at least `p^1`.
    fn padic(
        id: &str,
        params: Params,
        key: Vec<i64>,
        zq: &ZqCtx,
        lhs: &PadicRationalZq,
        rhs: &PadicRationalZq,
    ) -> Self {
        let agree = lhs.agreement(zq, rhs);
        let status = match agree {
            Some(prec) if prec >= 1 => Status::Pass,
            _ => Status::Fail,
        };
        let mut r = Self::new(id, params, key, status);
        r.lhs = Some(lhs.format(zq));
        r.rhs = Some(rhs.format(zq));
        r.precision = Some(agree.unwrap_or_else(|| lhs.abs_prec().min(rhs.abs_prec())));
        if agree.is_some_and(|prec| prec < 1) {
            r.detail = Some("no p-adic digits left to compare".into());
        }
        r
    }

    fn branch(mut self, b: impl Into<String>) -> Self {
        self.branch = Some(b.into());
        self
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn key(&self) -> &[i64] {
        &self.key
    }
}

/// All check families, in report order.
pub const FAMILIES: &[&str] = &[
    "complex",
    "cor-5.3",
    "cor-5.4",
    "cor-5.5",
    "gk",
    "lemma-2.1",
    "lemma-2.2",
    "lemma-2.3",
    "lemma-2.5",
    "lemma-2.6",
    "lemma-2.7",
    "lemma-2.8",
    "lemma-2.9",
    "lemma-4.1",
    "lemma-4.2",
    "lemma-5.1",
    "lemma-5.2",
    "phi-sum",
    "remark-5",
    "thm-1.1",
    "thm-1.2",
    "thm-1.3",
    "thm-1.5",
    "thm-1.6",
    "thm-1.7",
    "thm-1.8",
    "thm-1.9",
    "thm-5.6",
    "thm-5.7",
    "thm-5.8",
];

/// Field caps per family; the grid flags only ever shrink these.
pub(crate) mod caps {
    pub const DIAGONAL_PMAX: u64 = 13;
    pub const SUMMATION_QMAX: u64 = 49;
    pub const SUMMATION_EXHAUSTIVE_QMAX: u64 = 13;
    pub const SUMMATION_SAMPLES: u64 = 10;
    pub const ELLIPTIC_QMAX: u64 = 29;
    pub const THM18_PMAX: u64 = 13;
    pub const GK_PMAX: u64 = 7;
    pub const GK_MIN_PRECISION: u32 = 6;
    pub const LEMMA_QMAX: u64 = 25;
    pub const COMPLEX_QMAX: u64 = 49;
    pub const COMPLEX_TOL: f64 = 1e-8;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    /// Family ids, or `["all"]`.
    pub suite: Vec<String>,
    pub pmax: u64,
    pub rmax: u32,
    pub dmax: u64,
    /// Overrides the default precision for every field.
    pub precision: Option<u32>,
    #[serde(skip)]
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: vec!["all".into()],
            pmax: 29,
            rmax: 2,
            dmax: 7,
            precision: None,
            timings: false,
        }
    }
}

impl SuiteConfig {
    /// Resolved family ids; unknown names are a configuration error.
    pub fn families(&self) -> Result<Vec<&'static str>> {
        if self.suite.iter().any(|s| s == "all") {
            return Ok(FAMILIES.to_vec());
        }
        let mut out = Vec::new();
        for name in &self.suite {
            let hits: Vec<&'static str> = FAMILIES
                .iter()
                .copied()
                .filter(|f| *f == name || f.starts_with(&format!("{name}.")))
                .collect();
            if hits.is_empty() {
                return Err(Error::Config(format!(
                    "unknown check family {name:?}; known: {}",
                    FAMILIES.join(", ")
                )));
            }
            out.extend(hits);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// `(p, r)` with `p` an odd prime up to `pmax` and `r <= rmax`.
    pub fn fields(&self) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        for p in (3..=self.pmax).filter(|&p| is_prime(p)) {
            for r in 1..=self.rmax {
                out.push((p, r));
            }
        }
        out
    }

    pub fn precision_for(&self, p: u64, r: u32) -> u32 {
        self.precision.unwrap_or_else(|| default_precision(p, r))
    }
}

/// Shared per-field state for one family run.
pub(crate) struct FieldRun<'f> {
    pub field: &'f FieldCtx,
    pub prec: u32,
    pub cfg: &'f SuiteConfig,
}

impl<'f> FieldRun<'f> {
    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn r(&self) -> u32 {
        self.field.r()
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn params(&self) -> Params {
        Params::field(self.p(), self.r())
    }

    pub fn key(&self, rest: &[i64]) -> Vec<i64> {
        let mut k = vec![self.p() as i64, self.r() as i64];
        k.extend_from_slice(rest);
        k
    }

    pub fn chars(&self) -> Result<Characters<'f>> {
        Characters::new(self.field, self.prec)
    }
}

fn run_family(id: &str, run: &FieldRun<'_>) -> Vec<Record> {
    let out = match id {
        "thm-1.1" => diagonal::thm_1_1(run),
        "thm-1.2" => diagonal::thm_1_2(run),
        "thm-1.3" => diagonal::thm_1_3(run),
        "thm-1.5" => diagonal::thm_1_5(run),
        "thm-1.6" => diagonal::thm_1_6(run),
        "thm-1.7" => elliptic::thm_1_7(run),
        "thm-1.8" => elliptic::thm_1_8(run),
        "thm-1.9" => elliptic::thm_1_9(run),
        "thm-5.6" => elliptic::thm_5_6(run),
        "thm-5.7" => elliptic::thm_5_7(run),
        "thm-5.8" => elliptic::thm_5_8(run),
        "gk" => lemmas::gross_koblitz(run),
        "complex" => lemmas::complex_shadow(run),
        "phi-sum" => lemmas::phi_sum(run),
        "lemma-2.1" => lemmas::lemma_2_1(run),
        "lemma-2.2" => lemmas::lemma_2_2(run),
        "lemma-2.3" => lemmas::lemma_2_3(run),
        "lemma-2.5" => lemmas::lemma_2_5(run, false),
        "lemma-2.6" => lemmas::lemma_2_5(run, true),
        "lemma-2.7" => lemmas::lemma_2_7(run),
        "lemma-2.8" => lemmas::lemma_2_8(run),
        "lemma-2.9" => lemmas::lemma_2_9(run),
        "lemma-4.1" => lemmas::lemma_4_x(run, false),
        "lemma-4.2" => lemmas::lemma_4_x(run, true),
        "lemma-5.1" => section5::lemma_5_1(run),
        "lemma-5.2" => section5::lemma_5_2(run),
        "cor-5.3" => section5::cor_5_3(run),
        "cor-5.4" => section5::cor_5_4(run),
        "cor-5.5" => section5::cor_5_5(run),
        "remark-5" => section5::remark_5(run),
        _ => unreachable!("family list and dispatch agree"),
    };
    out.unwrap_or_else(|e| {
        vec![Record::fail(
            id,
            run.params(),
            run.key(&[]),
            format!("error: {e}"),
        )]
    })
}

/// Runs the configured families on the current rayon pool.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    let families = cfg.families()?;
    let fields = cfg
        .fields()
        .into_iter()
        .filter_map(|(p, r)| FieldCtx::new(p, r).ok())
        .collect::<Vec<_>>();
    let tasks: Vec<(&str, &FieldCtx)> = families
        .iter()
        .flat_map(|f| fields.iter().map(move |ctx| (*f, ctx)))
        .collect();
    let mut records: Vec<Record> = tasks
        .par_iter()
        .flat_map_iter(|(id, field)| {
            let run = FieldRun {
                field,
                prec: cfg.precision_for(field.p(), field.r()),
                cfg,
            };
            let start = Instant::now();
            let mut recs = run_family(id, &run);
            if cfg.timings {
                let ms = start.elapsed().as_secs_f64() * 1e3 / recs.len().max(1) as f64;
                for r in &mut recs {
                    r.wall_ms = Some(ms);
                }
            }
            recs
        })
        .collect();
    records.sort_by(|a, b| a.id.cmp(&b.id).then_with(|| a.key.cmp(&b.key)));
    Ok(Report::new(cfg.clone(), records))
}

/// Runs on a dedicated pool with `threads` workers.
pub fn run_suite_with_threads(cfg: &SuiteConfig, threads: usize) -> Result<Report> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| run_suite(cfg))
}

/// Deterministic spread of `n` nonzero elements: `g^{j floor((q-1)/n)}`.
pub(crate) fn sample_nonzero(field: &FieldCtx, n: u64) -> Vec<crate::fields::Fq<'_>> {
    let qm1 = field.q() - 1;
    if qm1 <= n {
        return field.nonzero().collect();
    }
    let step = qm1 / n;
    (0..n).map(|j| field.gen_pow((j * step) as i64)).collect()
}

/// One record per field summarising many instances of a pointwise formula.
pub(crate) struct Batch {
    total: u64,
    failures: Vec<String>,
}

impl Batch {
    pub fn new() -> Self {
        Batch {
            total: 0,
            failures: Vec::new(),
        }
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn record(self, id: &str, run: &FieldRun<'_>, extra: Option<String>) -> Record {
        let status = if self.failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        let mut rec = Record::new(id, run.params(), run.key(&[]), status);
        rec.lhs = Some(format!("{} instances", self.total));
        rec.rhs = Some(format!("{} failures", self.failures.len()));
        let mut detail: Vec<String> = self.failures.into_iter().take(3).collect();
        detail.extend(extra);
        if !detail.is_empty() {
            rec.detail = Some(detail.join("; "));
        }
        rec
    }
}

/// Branch counts per family, from the records.
pub(crate) fn coverage(records: &[Record]) -> BTreeMap<String, BTreeMap<String, u64>> {
    let mut cov: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::new();
    for r in records {
        if let (Some(b), Status::Pass | Status::Fail) = (&r.branch, r.status) {
            *cov.entry(r.id.clone())
                .or_default()
                .entry(b.clone())
                .or_default() += 1;
        }
    }
    cov
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_filter() {
        let mut cfg = SuiteConfig {
            suite: vec!["thm-1.2".into()],
            ..SuiteConfig::default()
        };
        assert_eq!(cfg.families().unwrap(), vec!["thm-1.2"]);
        cfg.suite = vec!["lemma-2".into()];
        assert_eq!(cfg.families().unwrap().len(), 8);
        cfg.suite = vec!["thm-9".into()];
        assert!(matches!(cfg.families(), Err(Error::Config(_))));
    }

    #[test]
    fn field_grid() {
        let cfg = SuiteConfig {
            pmax: 7,
            rmax: 1,
            ..SuiteConfig::default()
        };
        assert_eq!(cfg.fields(), vec![(3, 1), (5, 1), (7, 1)]);
    }

    #[test]
    fn samples_are_distinct() {
        let f = FieldCtx::new(7, 2).unwrap();
        let s = sample_nonzero(&f, 10);
        assert_eq!(s.len(), 10);
        let mut codes: Vec<u32> = s.iter().map(|x| x.code()).collect();
        codes.sort_unstable();
        codes.dedup();
        assert_eq!(codes.len(), 10);
    }
}
