use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::{coverage, Record, Status, SuiteConfig};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: u64,
    pub fail: u64,
    pub skip: u64,
}

impl Tally {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Skip => self.skip += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: u64,
    pub fail: u64,
    pub skip: u64,
    pub diagnostics: u64,
    pub families: BTreeMap<String, Tally>,
    /// Evaluated records per branch, for families with side conditions.
    pub branches: BTreeMap<String, BTreeMap<String, u64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub config: SuiteConfig,
    pub summary: Summary,
    pub records: Vec<Record>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Plain,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "plain" => Ok(OutputFormat::Plain),
            _ => Err(Error::Config(format!("unknown format {s:?}"))),
        }
    }
}

impl Report {
    pub(super) fn new(config: SuiteConfig, records: Vec<Record>) -> Self {
        let mut total = Tally::default();
        let mut families: BTreeMap<String, Tally> = BTreeMap::new();
        let mut diagnostics = 0;
        for r in &records {
            total.add(r.status);
            families.entry(r.id.clone()).or_default().add(r.status);
            diagnostics += r.diagnostics.len() as u64;
        }
        let summary = Summary {
            pass: total.pass,
            fail: total.fail,
            skip: total.skip,
            diagnostics,
            families,
            branches: coverage(&records),
        };
        Report {
            config,
            summary,
            records,
        }
    }

    pub fn is_success(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn records_for<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a Record> + 'a {
        self.records.iter().filter(move |r| r.id == id)
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(self)
                .map(|mut s| {
                    s.push('\n');
                    s
                })
                .map_err(|e| Error::Config(format!("json: {e}"))),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Plain => Ok(self.to_plain()),
        }
    }

    fn to_csv(&self) -> Result<String> {
        let err = |e: csv::Error| Error::Config(format!("csv: {e}"));
        let mut w = csv::Writer::from_writer(Vec::new());
        let timings = self.config.timings;
        let mut header = vec![
            "id",
            "params",
            "status",
            "branch",
            "lhs",
            "rhs",
            "precision",
            "detail",
            "diagnostics",
        ];
        if timings {
            header.push("wall_ms");
        }
        w.write_record(&header).map_err(err)?;
        for r in &self.records {
            let mut row = vec![
                r.id.clone(),
                r.params.compact(),
                status_str(r.status).to_string(),
                r.branch.clone().unwrap_or_default(),
                r.lhs.clone().unwrap_or_default(),
                r.rhs.clone().unwrap_or_default(),
                r.precision.map(|p| p.to_string()).unwrap_or_default(),
                r.detail.clone().unwrap_or_default(),
                r.diagnostics.join("; "),
            ];
            if timings {
                row.push(r.wall_ms.map(|m| format!("{m:.3}")).unwrap_or_default());
            }
            w.write_record(&row).map_err(err)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Config(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Config(format!("csv: {e}")))
    }

    fn to_plain(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            let _ = write!(
                s,
                "{:<4} {:<10} {}",
                status_str(r.status).to_uppercase(),
                r.id,
                r.params.compact()
            );
            if let Some(b) = &r.branch {
                let _ = write!(s, " branch={b}");
            }
            if let (Some(l), Some(rh)) = (&r.lhs, &r.rhs) {
                let _ = write!(s, " lhs={l} rhs={rh}");
            }
            if let Some(d) = &r.detail {
                let _ = write!(s, " ({d})");
            }
            for d in &r.diagnostics {
                let _ = write!(s, " [diagnostic: {d}]");
            }
            if let Some(ms) = r.wall_ms {
                let _ = write!(s, " {ms:.3}ms");
            }
            s.push('\n');
        }
        let sm = &self.summary;
        let _ = writeln!(
            s,
            "summary: pass={} fail={} skip={} diagnostics={}",
            sm.pass, sm.fail, sm.skip, sm.diagnostics
        );
        s
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skip => "skip",
    }
}
