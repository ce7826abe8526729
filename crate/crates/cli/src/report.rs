//! Run reports: metric rows and acceptance-criterion verdicts, written as
//! `report.csv` and `summary.csv` with full-precision numbers.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use fourier_laplace::kernels::csv_number;

/// One measured quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub experiment: String,
    pub parameters: String,
    pub metric: String,
    pub value: f64,
}

/// One acceptance criterion's verdict for this run.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub id: String,
    pub pass: bool,
    pub measured: f64,
    pub threshold: f64,
}

/// Everything a run reports. `rows` land in report.csv, `criteria` in
/// summary.csv; the process exit code is 0 exactly when all criteria pass.
#[derive(Debug, Clone, Default)]
pub struct ExperimentReport {
    pub rows: Vec<ReportRow>,
    pub criteria: Vec<CriterionResult>,
}

impl ExperimentReport {
    pub fn push_metric(&mut self, experiment: &str, parameters: &str, metric: &str, value: f64) {
        self.rows.push(ReportRow {
            experiment: experiment.to_string(),
            parameters: parameters.to_string(),
            metric: metric.to_string(),
            value,
        });
    }

    pub fn push_criterion(&mut self, id: &str, pass: bool, measured: f64, threshold: f64) {
        self.criteria.push(CriterionResult {
            id: id.to_string(),
            pass,
            measured,
            threshold,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.criteria.iter().all(|c| c.pass)
    }

    pub fn report_csv(&self) -> String {
        let mut out = String::from("experiment,parameters,metric,value\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.experiment,
                row.parameters,
                row.metric,
                csv_number(row.value)
            ));
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from("criterion_id,pass,measured,threshold\n");
        for c in &self.criteria {
            out.push_str(&format!(
                "{},{},{},{}\n",
                c.id,
                c.pass,
                csv_number(c.measured),
                csv_number(c.threshold)
            ));
        }
        out
    }

    /// Write report.csv and summary.csv into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)
            .with_context(|| format!("creating output directory {}", dir.display()))?;
        fs::write(dir.join("report.csv"), self.report_csv()).context("writing report.csv")?;
        fs::write(dir.join("summary.csv"), self.summary_csv()).context("writing summary.csv")?;
        Ok(())
    }

    /// Human-readable verdict lines for the terminal.
    pub fn verdict_lines(&self) -> Vec<String> {
        self.criteria
            .iter()
            .map(|c| {
                format!(
                    "[{}] {}: measured {:.6e} against {:.6e}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.id,
                    c.measured,
                    c.threshold
                )
            })
            .collect()
    }
}
