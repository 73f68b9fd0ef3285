use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::gf::{Element, FieldTower};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteVerdict {
    Pass,
    Fail,
    ReportOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSummary {
    pub p: u32,
    pub m: u32,
    pub n: u32,
    pub q: u32,
}

impl From<&FieldTower> for FieldSummary {
    fn from(t: &FieldTower) -> Self {
        FieldSummary {
            p: t.p(),
            m: t.m(),
            n: t.n(),
            q: t.q(),
        }
    }
}

/// One failing (or, for report-only suites, noteworthy) case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSummary>,
    pub b: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<u32>,
    pub b_poly: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_poly: Option<String>,
    pub detail: String,
}

impl ExceptionRecord {
    pub fn new(tower: &FieldTower, b: Element, c: Option<Element>, detail: impl Into<String>) -> Self {
        ExceptionRecord {
            field: None,
            b: b.0,
            c: c.map(|c| c.0),
            b_poly: tower.render(b),
            c_poly: c.map(|c| tower.render(c)),
            detail: detail.into(),
        }
    }

    pub fn in_field(mut self, tower: &FieldTower) -> Self {
        self.field = Some(tower.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    /// `None` for suites spanning several fields.
    pub field: Option<FieldSummary>,
    pub assertive: bool,
    pub cases_total: u64,
    pub cases_passed: u64,
    pub exceptions: Vec<ExceptionRecord>,
    /// Data points that do not bear on the verdict.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub observations: Vec<ExceptionRecord>,
    /// Wall-clock time; only recorded on request so reports stay byte-stable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub verdict: SuiteVerdict,
}

impl SuiteReport {
    pub(crate) fn finish(
        suite: &str,
        field: Option<FieldSummary>,
        assertive: bool,
        cases_total: u64,
        exceptions: Vec<ExceptionRecord>,
        observations: Vec<ExceptionRecord>,
        elapsed: Option<Duration>,
    ) -> Self {
        let failed = exceptions.len() as u64;
        let verdict = match (assertive, exceptions.is_empty()) {
            (false, _) => SuiteVerdict::ReportOnly,
            (true, true) => SuiteVerdict::Pass,
            (true, false) => SuiteVerdict::Fail,
        };
        SuiteReport {
            suite: suite.to_string(),
            field,
            assertive,
            cases_total,
            cases_passed: cases_total.saturating_sub(failed),
            exceptions,
            observations,
            elapsed_ms: elapsed.map(|d| d.as_millis() as u64),
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict != SuiteVerdict::Fail
    }
}
