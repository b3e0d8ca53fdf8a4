//! Machine-readable verification reports.
//!
//! A report is a flat list of check records plus a config echo and summary
//! counts. All timing information lives in the single `timing` field so
//! that two runs with the same config and seed produce byte-identical
//! output once that field is excluded.

use serde::Serialize;

use crate::config::RunConfig;

/// Pass semantics of a record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// Pass iff `residual <= tolerance * scale`.
    Bound,
    /// Sanity floor: pass iff `residual >= tolerance * scale` (used for
    /// non-solution checks that must produce large residuals).
    Floor,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub suite: &'static str,
    pub scenario: String,
    /// Stable equation tag identifying the checked relation.
    pub tag: String,
    pub kind: CheckKind,
    pub residual: f64,
    pub scale: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Convergence slope, present for finite-difference channels where a
    /// refinement study was run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<f64>,
}

impl Record {
    pub fn bound(
        suite: &'static str,
        scenario: impl Into<String>,
        tag: impl Into<String>,
        residual: f64,
        scale: f64,
        tolerance: f64,
    ) -> Self {
        let pass = residual.is_finite() && residual <= tolerance * scale;
        Self {
            suite,
            scenario: scenario.into(),
            tag: tag.into(),
            kind: CheckKind::Bound,
            residual,
            scale,
            tolerance,
            pass,
            slope: None,
        }
    }

    pub fn floor(
        suite: &'static str,
        scenario: impl Into<String>,
        tag: impl Into<String>,
        residual: f64,
        scale: f64,
        tolerance: f64,
    ) -> Self {
        let pass = residual.is_finite() && residual >= tolerance * scale;
        Self {
            suite,
            scenario: scenario.into(),
            tag: tag.into(),
            kind: CheckKind::Floor,
            residual,
            scale,
            tolerance,
            pass,
            slope: None,
        }
    }

    pub fn with_slope(mut self, slope: f64, expected: f64, window: f64) -> Self {
        self.slope = Some(slope);
        self.pass = self.pass && (slope - expected).abs() <= window;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    /// Seconds since the Unix epoch at the start of the run.
    pub started_unix: f64,
    /// Wall-clock duration of the run in seconds.
    pub wall_s: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub config: RunConfig,
    pub timing: Timing,
    pub summary: Summary,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(config: RunConfig, mut records: Vec<Record>, timing: Timing) -> Self {
        records.sort_by(|a, b| (a.suite, &a.scenario, &a.tag).cmp(&(b.suite, &b.scenario, &b.tag)));
        let passed = records.iter().filter(|r| r.pass).count();
        let summary = Summary {
            total: records.len(),
            passed,
            failed: records.len() - passed,
        };
        Self {
            version: env!("CARGO_PKG_VERSION"),
            config,
            timing,
            summary,
            records,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    /// CSV: one row per record under a fixed header; floats use the shortest
    /// round-trip representation.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,scenario,tag,kind,residual,scale,tolerance,pass,slope\n");
        for r in &self.records {
            let kind = match r.kind {
                CheckKind::Bound => "bound",
                CheckKind::Floor => "floor",
            };
            let slope = r.slope.map(|s| s.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                r.suite, r.scenario, r.tag, kind, r.residual, r.scale, r.tolerance, r.pass, slope
            ));
        }
        out
    }

    pub fn emit(&self) -> String {
        match self.config.format {
            crate::config::Format::Json => self.to_json(),
            crate::config::Format::Csv => self.to_csv(),
        }
    }
}
