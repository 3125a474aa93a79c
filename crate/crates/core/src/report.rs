//! Structured command output, rendered either as text or as one JSON document.

use std::fmt::Write as _;

use serde::Serialize;

use crate::classify::classify;
use crate::matrix::CoxeterMatrix;
use crate::ratfunc::SeriesTruncation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Check {
            name: name.into(),
            status: if passed {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            lhs: None,
            rhs: None,
            detail: None,
        }
    }

    pub fn not_applicable(name: impl Into<String>) -> Self {
        Check {
            status: CheckStatus::NotApplicable,
            ..Check::new(name, true)
        }
    }

    pub fn sides(mut self, lhs: impl ToString, rhs: impl ToString) -> Self {
        self.lhs = Some(lhs.to_string());
        self.rhs = Some(rhs.to_string());
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemSummary {
    pub name: String,
    pub rank: usize,
    pub finite: bool,
    #[serde(rename = "type")]
    pub type_name: String,
    pub cox: String,
}

impl SystemSummary {
    pub fn new(name: impl Into<String>, matrix: &CoxeterMatrix) -> Self {
        let info = classify(matrix, matrix.full_mask());
        SystemSummary {
            name: name.into(),
            rank: matrix.rank(),
            finite: info.finite,
            type_name: info.type_name(),
            cox: matrix.to_cox_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedSeries {
    pub name: String,
    pub coefficients: SeriesTruncation,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Everything a command produced. `exit_status` is 0 exactly when no check
/// failed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub system: Option<SystemSummary>,
    pub values: Vec<NamedValue>,
    pub series: Vec<NamedSeries>,
    pub table: Option<Table>,
    pub checks: Vec<Check>,
    pub counterexamples: Vec<String>,
    pub exit_status: i32,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            command,
            ..Report::default()
        }
    }

    pub fn value(&mut self, name: impl Into<String>, value: impl ToString) {
        self.values.push(NamedValue {
            name: name.into(),
            value: value.to_string(),
        });
    }

    pub fn series(&mut self, name: impl Into<String>, coefficients: SeriesTruncation) {
        self.series.push(NamedSeries {
            name: name.into(),
            coefficients,
        });
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// Sets `exit_status` from the verdicts.
    pub fn finish(mut self) -> Self {
        self.exit_status = if self.passed() { 0 } else { 1 };
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(sys) = &self.system {
            let _ = writeln!(
                out,
                "system: {} (rank {}, {})",
                sys.name, sys.rank, sys.type_name
            );
        }
        for v in &self.values {
            let _ = writeln!(out, "{} = {}", v.name, v.value);
        }
        for s in &self.series {
            let _ = writeln!(out, "{} = {}", s.name, s.coefficients);
        }
        if let Some(table) = &self.table {
            let widths: Vec<usize> = (0..table.columns.len())
                .map(|c| {
                    table
                        .rows
                        .iter()
                        .map(|r| r[c].chars().count())
                        .chain([table.columns[c].chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            let _ = writeln!(out, "{}", line(&table.columns));
            for row in &table.rows {
                let _ = writeln!(out, "{}", line(row));
            }
        }
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::NotApplicable => "N/A ",
            };
            let _ = write!(out, "[{tag}] {}", c.name);
            if let Some(d) = &c.detail {
                let _ = write!(out, ": {d}");
            }
            out.push('\n');
            if let (Some(l), Some(r)) = (&c.lhs, &c.rhs) {
                let _ = writeln!(out, "       lhs = {l}");
                let _ = writeln!(out, "       rhs = {r}");
            }
        }
        for c in &self.counterexamples {
            let _ = writeln!(out, "counterexample: {c}");
        }
        if !self.checks.is_empty() {
            let _ = writeln!(
                out,
                "{}",
                if self.passed() {
                    "all checks passed"
                } else {
                    "SOME CHECKS FAILED"
                }
            );
        }
        out
    }
}
