//! CSV data files: a header row, a `label` column holding classes `1..=K`,
//! and numeric feature columns.

use std::path::Path;

use mrc_core::Dataset;

use crate::error::{CliError, CliResult};

pub const LABEL_COLUMN: &str = "label";

/// Instances read from CSV, with labels when the file has a `label` column.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub feature_names: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// 1-based labels as written in the file.
    pub labels: Option<Vec<usize>>,
}

impl Table {
    pub fn dim(&self) -> usize {
        self.feature_names.len()
    }

    /// Largest label present.
    pub fn max_label(&self) -> Option<usize> {
        self.labels.as_ref().and_then(|l| l.iter().copied().max())
    }

    /// Converts to a dataset with `num_classes` classes (0-based internally).
    pub fn to_dataset(&self, num_classes: usize) -> CliResult<Dataset> {
        let labels = self
            .labels
            .as_ref()
            .ok_or_else(|| CliError::input("data file has no `label` column"))?;
        if let Some(bad) = labels.iter().find(|&&l| l == 0 || l > num_classes) {
            return Err(CliError::input(format!("label {bad} outside 1..={num_classes}")));
        }
        let zero_based = labels.iter().map(|l| l - 1).collect();
        Ok(Dataset::from_rows(&self.rows, zero_based, num_classes)?)
    }
}

fn parse_cell(raw: &str, line: usize, column: &str) -> CliResult<f64> {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Err(CliError::input(format!("missing value in column `{column}` on line {line}")));
    }
    let value: f64 = trimmed
        .parse()
        .map_err(|_| CliError::input(format!("non-numeric value `{trimmed}` in column `{column}` on line {line}")))?;
    if !value.is_finite() {
        return Err(CliError::input(format!("non-finite value in column `{column}` on line {line}")));
    }
    Ok(value)
}

pub fn read_table_from<R: std::io::Read>(reader: R, require_labels: bool) -> CliResult<Table> {
    let mut csv = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers: Vec<String> = csv.headers()?.iter().map(|h| h.trim().to_string()).collect();
    let label_index = headers.iter().position(|h| h == LABEL_COLUMN);
    if require_labels && label_index.is_none() {
        return Err(CliError::input("data file has no `label` column"));
    }
    let feature_names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != label_index)
        .map(|(_, h)| h.clone())
        .collect();
    let mut rows = Vec::new();
    let mut labels = label_index.map(|_| Vec::new());
    for (i, record) in csv.records().enumerate() {
        let record = record?;
        let line = i + 2;
        if record.len() != headers.len() {
            return Err(CliError::input(format!(
                "line {line} has {} fields, expected {}",
                record.len(),
                headers.len()
            )));
        }
        let mut row = Vec::with_capacity(feature_names.len());
        for (j, cell) in record.iter().enumerate() {
            if Some(j) == label_index {
                let value = parse_cell(cell, line, LABEL_COLUMN)?;
                if value < 1.0 || value.fract() != 0.0 {
                    return Err(CliError::input(format!("label `{}` on line {line} is not a positive integer", cell.trim())));
                }
                labels.as_mut().expect("label column").push(value as usize);
            } else {
                row.push(parse_cell(cell, line, &headers[j])?);
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::input("data file has no rows"));
    }
    Ok(Table {
        feature_names,
        rows,
        labels,
    })
}

pub fn read_table(path: &Path, require_labels: bool) -> CliResult<Table> {
    let file = std::fs::File::open(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    read_table_from(file, require_labels)
}

/// Writes rows with a leading `label` column (1-based labels).
pub fn write_table<W: std::io::Write>(writer: W, feature_names: &[String], rows: &[Vec<f64>], labels: &[usize]) -> CliResult<()> {
    let mut csv = csv::Writer::from_writer(writer);
    let mut header = vec![LABEL_COLUMN.to_string()];
    header.extend(feature_names.iter().cloned());
    csv.write_record(&header)?;
    for (row, label) in rows.iter().zip(labels) {
        let mut record = vec![label.to_string()];
        record.extend(row.iter().map(|v| v.to_string()));
        csv.write_record(&record)?;
    }
    csv.flush()?;
    Ok(())
}
