//! Residual reports: per-check summaries, per-point rows, JSON and CSV export.

use std::io::Write;

use serde::{Deserialize, Serialize};
use velfield::Event;

use crate::config::Settings;

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_HEADER: [&str; 8] = ["check", "point", "x1", "x2", "x3", "t", "magnitude", "flag"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSummary {
    pub name: String,
    /// Absent for informational checks.
    pub tolerance: Option<f64>,
    pub informational: bool,
    pub points: usize,
    /// Points without a magnitude (singular, near-zero ψ, not applicable).
    pub skipped: usize,
    pub failures: usize,
    pub linf: f64,
    pub l2: f64,
    pub pass: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointRow {
    pub check: String,
    pub point: usize,
    pub event: Option<[f64; 4]>,
    pub magnitude: Option<f64>,
    pub flag: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidualReport {
    pub schema_version: u32,
    pub toolkit_version: String,
    pub scenario: Settings,
    pub checks: Vec<CheckSummary>,
    pub rows: Vec<PointRow>,
    pub all_pass: bool,
    pub timestamp: Option<String>,
    pub duration_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("report schema violation: {0}")]
pub struct SchemaError(pub String);

impl ResidualReport {
    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Structural consistency of a report.
    pub fn validate(&self) -> Result<(), SchemaError> {
        let err = |m: String| Err(SchemaError(m));
        if self.schema_version != SCHEMA_VERSION {
            return err(format!("schema_version {} (expected {SCHEMA_VERSION})", self.schema_version));
        }
        for (i, c) in self.checks.iter().enumerate() {
            if self.checks[..i].iter().any(|o| o.name == c.name) {
                return err(format!("check `{}` appears twice", c.name));
            }
            if c.informational != c.tolerance.is_none() {
                return err(format!("check `{}`: tolerance must be absent exactly for informational checks", c.name));
            }
            let rows: Vec<&PointRow> = self.rows.iter().filter(|r| r.check == c.name).collect();
            if rows.len() != c.points {
                return err(format!("check `{}` lists {} points but has {} rows", c.name, c.points, rows.len()));
            }
            if rows.iter().enumerate().any(|(k, r)| r.point != k) {
                return err(format!("check `{}` rows are not numbered 0..{}", c.name, c.points));
            }
            let skipped = rows.iter().filter(|r| r.magnitude.is_none()).count();
            if skipped != c.skipped || c.failures > c.points {
                return err(format!("check `{}` counts are inconsistent", c.name));
            }
            if c.informational && (c.failures != 0 || !c.pass) {
                return err(format!("informational check `{}` cannot fail", c.name));
            }
        }
        if let Some(r) = self.rows.iter().find(|r| self.check(&r.check).is_none()) {
            return err(format!("row refers to unknown check `{}`", r.check));
        }
        if self.all_pass != self.checks.iter().all(|c| c.pass) {
            return err("all_pass disagrees with the checks".into());
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        for r in &self.rows {
            let coord = |k: usize| r.event.map(|e| e[k].to_string()).unwrap_or_default();
            w.write_record([
                r.check.clone(),
                r.point.to_string(),
                coord(0),
                coord(1),
                coord(2),
                coord(3),
                r.magnitude.map(|m| m.to_string()).unwrap_or_default(),
                r.flag.clone().unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is UTF-8")
    }
}

/// Accumulates one check's rows before summarizing.
#[derive(Debug, Clone)]
pub struct CheckBuilder {
    pub name: String,
    pub tolerance: Option<f64>,
    /// Passing with every point skipped is allowed (not-applicable checks).
    pub allow_empty: bool,
    pub note: Option<String>,
    rows: Vec<(Option<[f64; 4]>, Result<f64, String>)>,
}

impl CheckBuilder {
    pub fn new(name: &str, tolerance: Option<f64>) -> Self {
        Self {
            name: name.to_string(),
            tolerance,
            allow_empty: false,
            note: None,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, event: Option<&Event>, magnitude: Result<f64, String>) {
        self.rows.push((event.map(|e| e.to_array()), magnitude));
    }

    pub fn value(&mut self, event: Option<&Event>, magnitude: f64) {
        self.push(event, Ok(magnitude));
    }

    pub fn finish(self) -> (CheckSummary, Vec<PointRow>) {
        let mut summary = CheckSummary {
            name: self.name.clone(),
            tolerance: self.tolerance,
            informational: self.tolerance.is_none(),
            points: self.rows.len(),
            skipped: 0,
            failures: 0,
            linf: 0.0,
            l2: 0.0,
            pass: true,
            note: self.note,
        };
        let mut sum_sq = 0.0;
        let mut rows = Vec::with_capacity(self.rows.len());
        for (point, (event, magnitude)) in self.rows.into_iter().enumerate() {
            let (magnitude, mut flag) = match magnitude {
                Ok(m) if m.is_finite() => (Some(m), None),
                Ok(_) => (None, Some("non-finite".to_string())),
                Err(msg) => (None, Some(msg)),
            };
            match magnitude {
                Some(m) => {
                    summary.linf = summary.linf.max(m);
                    sum_sq += m * m;
                    if let Some(tol) = self.tolerance {
                        if m > tol {
                            summary.failures += 1;
                            flag = Some("fail".into());
                        }
                    }
                }
                None => {
                    summary.skipped += 1;
                    // A residual that cannot be evaluated because it blew up is a failure.
                    if flag.as_deref() == Some("non-finite") && self.tolerance.is_some() {
                        summary.failures += 1;
                    }
                }
            }
            rows.push(PointRow {
                check: self.name.clone(),
                point,
                event,
                magnitude,
                flag,
            });
        }
        summary.l2 = sum_sq.sqrt();
        let evaluated = summary.points - summary.skipped;
        summary.pass = summary.informational || (summary.failures == 0 && (evaluated > 0 || self.allow_empty));
        if summary.skipped > 0 && summary.note.is_none() {
            summary.note = Some(format!("{} of {} points skipped", summary.skipped, summary.points));
        }
        (summary, rows)
    }
}
