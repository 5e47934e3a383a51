//! Dataset container and file ingestion.
//!
//! The universal I/O currency is a feature matrix plus ordinal labels in
//! `1..=K`. On disk a dataset is UTF-8 CSV with a header row
//! `f1,...,fp,label` (an optional trailing `noiseless_label` column is
//! accepted and returned separately).

use std::path::Path;

use crate::error::{Error, Result};

/// Feature matrix with ordinal labels in `1..=num_classes`.
#[derive(Clone, Debug)]
pub struct Dataset {
    features: Vec<Vec<f64>>,
    labels: Vec<usize>,
    num_classes: usize,
    dim: usize,
}

impl Dataset {
    /// Builds a dataset, validating the shape and label range.
    pub fn new(features: Vec<Vec<f64>>, labels: Vec<usize>, num_classes: usize) -> Result<Self> {
        if features.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if features.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: features.len(),
                got: labels.len(),
            });
        }
        if num_classes < 2 {
            return Err(Error::InvalidConfig(format!(
                "need at least 2 classes, got {num_classes}"
            )));
        }
        let dim = features[0].len();
        if dim == 0 {
            return Err(Error::InvalidConfig("zero-dimensional features".into()));
        }
        for row in &features {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
        }
        for &label in &labels {
            if label < 1 || label > num_classes {
                return Err(Error::LabelOutOfRange { label, num_classes });
            }
        }
        Ok(Dataset {
            features,
            labels,
            num_classes,
            dim,
        })
    }

    /// Builds a dataset inferring `K` as the largest label present.
    pub fn with_inferred_classes(features: Vec<Vec<f64>>, labels: Vec<usize>) -> Result<Self> {
        let k = labels.iter().copied().max().unwrap_or(0).max(2);
        Dataset::new(features, labels, k)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn feature(&self, i: usize) -> &[f64] {
        &self.features[i]
    }

    pub fn features(&self) -> &[Vec<f64>] {
        &self.features
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Per-class example counts, indexed by `class - 1`.
    pub fn class_histogram(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.num_classes];
        for &label in &self.labels {
            counts[label - 1] += 1;
        }
        counts
    }

    /// New dataset holding the given rows; keeps the parent's class count
    /// even when some class is absent from the selection.
    pub fn subset(&self, indices: &[usize]) -> Result<Dataset> {
        let features = indices.iter().map(|&i| self.features[i].clone()).collect();
        let labels = indices.iter().map(|&i| self.labels[i]).collect();
        Dataset::new(features, labels, self.num_classes)
    }
}

/// Reads the standard CSV dataset format. Returns the dataset and, when a
/// `noiseless_label` column is present, the noiseless labels.
pub fn read_csv<P: AsRef<Path>>(path: P) -> Result<(Dataset, Option<Vec<usize>>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path.as_ref())
        .map_err(|e| Error::Parse(format!("{}: {e}", path.as_ref().display())))?;

    let headers = reader
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .clone();
    let cols = headers.len();
    if cols < 2 {
        return Err(Error::Parse("expected at least one feature column and a label".into()));
    }
    let has_noiseless = headers.iter().last() == Some("noiseless_label");
    let label_col = if has_noiseless { cols - 2 } else { cols - 1 };
    if label_col == 0 {
        return Err(Error::Parse("no feature columns".into()));
    }

    let mut features = Vec::new();
    let mut labels = Vec::new();
    let mut noiseless = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        if record.len() != cols {
            return Err(Error::Parse(format!(
                "row {}: expected {} fields, found {}",
                line + 2,
                cols,
                record.len()
            )));
        }
        let mut row = Vec::with_capacity(label_col);
        for field in record.iter().take(label_col) {
            row.push(parse_f64(field, line + 2)?);
        }
        features.push(row);
        labels.push(parse_label(&record[label_col], line + 2)?);
        if has_noiseless {
            noiseless.push(parse_label(&record[cols - 1], line + 2)?);
        }
    }

    let dataset = Dataset::with_inferred_classes(features, labels)?;
    Ok((dataset, if has_noiseless { Some(noiseless) } else { None }))
}

/// Writes the standard CSV dataset format; `noiseless` adds the optional
/// trailing column. Output bytes are deterministic.
pub fn write_csv<P: AsRef<Path>>(
    path: P,
    dataset: &Dataset,
    noiseless: Option<&[usize]>,
) -> Result<()> {
    let mut writer = csv::Writer::from_path(path.as_ref())
        .map_err(|e| Error::Parse(format!("{}: {e}", path.as_ref().display())))?;

    let mut header: Vec<String> = (1..=dataset.dim()).map(|d| format!("f{d}")).collect();
    header.push("label".into());
    if noiseless.is_some() {
        header.push("noiseless_label".into());
    }
    writer
        .write_record(&header)
        .map_err(|e| Error::Parse(e.to_string()))?;

    for i in 0..dataset.len() {
        let mut record: Vec<String> = dataset.feature(i).iter().map(|v| format!("{v}")).collect();
        record.push(dataset.label(i).to_string());
        if let Some(clean) = noiseless {
            record.push(clean[i].to_string());
        }
        writer
            .write_record(&record)
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads the UCI abalone file (no header, 9 comma-separated fields).
///
/// The sex attribute is encoded `M=1, F=0, I=-1`; the seven continuous
/// columns are taken as distributed (the published file already carries
/// the division by 200); the ring count is returned as the raw
/// regression target, to be discretized with equal-frequency binning.
pub fn read_abalone<P: AsRef<Path>>(path: P) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let text = std::fs::read_to_string(path.as_ref())?;
    let mut features = Vec::new();
    let mut rings = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(Error::Parse(format!(
                "abalone row {}: expected 9 fields, found {}",
                line_no + 1,
                fields.len()
            )));
        }
        let sex = match fields[0] {
            "M" => 1.0,
            "F" => 0.0,
            "I" => -1.0,
            other => {
                return Err(Error::Parse(format!(
                    "abalone row {}: unknown sex code {other:?}",
                    line_no + 1
                )))
            }
        };
        let mut row = Vec::with_capacity(8);
        row.push(sex);
        for field in &fields[1..8] {
            row.push(parse_f64(field, line_no + 1)?);
        }
        features.push(row);
        rings.push(parse_f64(fields[8], line_no + 1)?);
    }
    if features.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok((features, rings))
}

fn parse_f64(field: &str, line: usize) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("row {line}: bad number {field:?}")))
}

fn parse_label(field: &str, line: usize) -> Result<usize> {
    field
        .trim()
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("row {line}: bad label {field:?}")))
}
