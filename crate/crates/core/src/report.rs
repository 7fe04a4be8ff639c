//! Line-delimited JSON reports.
//!
//! Every line is one object with a `kind` of `violation`, `warning`, or
//! `summary`. The summary line always comes last.

use serde::Serialize;

use crate::ingest::IngestReport;
use crate::reasoner::{Severity, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportLine {
    Violation(Finding),
    Warning(Finding),
    Summary(Summary),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subject: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code: Option<String>,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows_read: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows_ingested: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assertions_created: Option<usize>,
    pub violations: usize,
    pub warnings: usize,
}

impl ReportLine {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report lines always serialize")
    }
}

pub fn ingest_lines(report: &IngestReport) -> Vec<ReportLine> {
    let mut out: Vec<ReportLine> = report
        .violations
        .iter()
        .map(|v| {
            ReportLine::Violation(Finding {
                row: Some(v.row),
                field: Some(v.field.clone()),
                subject: None,
                code: Some(v.code.clone()),
                message: v.message.clone(),
            })
        })
        .collect();
    out.extend(report.warnings.iter().map(|w| {
        ReportLine::Warning(Finding {
            row: Some(w.row),
            field: Some(w.field.clone()),
            subject: None,
            code: None,
            message: w.message.clone(),
        })
    }));
    out.push(ReportLine::Summary(Summary {
        rows_read: Some(report.rows_read),
        rows_ingested: Some(report.rows_ingested),
        assertions_created: Some(report.assertions_created),
        violations: report.violations.len(),
        warnings: report.warnings.len(),
    }));
    out
}

pub fn validation_lines(violations: &[Violation]) -> Vec<ReportLine> {
    let mut summary = Summary::default();
    let mut out = Vec::with_capacity(violations.len() + 1);
    for v in violations {
        let finding = Finding {
            row: None,
            field: None,
            subject: Some(v.subject.to_string()),
            code: Some(v.code.as_str().to_string()),
            message: v.detail.clone(),
        };
        match v.severity {
            Severity::Error => {
                summary.violations += 1;
                out.push(ReportLine::Violation(finding));
            }
            Severity::Warning => {
                summary.warnings += 1;
                out.push(ReportLine::Warning(finding));
            }
        }
    }
    out.push(ReportLine::Summary(summary));
    out
}

/// Joins lines with a trailing newline.
pub fn to_jsonl(lines: &[ReportLine]) -> String {
    lines.iter().map(|l| l.to_json() + "\n").collect()
}
