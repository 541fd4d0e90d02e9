//! Dataset ingestion, binarization and train/test partitioning.
//!
//! A [`DatasetManifest`] describes one CSV file: which column is the label,
//! which label values collapse to the positive (minority) class, an optional
//! missing-value marker and columns to drop. Loading produces a fully numeric
//! [`Dataset`]: categorical feature columns are integer-encoded by first
//! appearance and missing numeric values are imputed with the column median.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::rng::Prng;

#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: invalid manifest: {message}")]
    Manifest { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("file contains no data rows")]
    Empty,
    #[error("line {line}: expected {expected} columns, found {found}")]
    ColumnCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("column {0:?} not found")]
    ColumnNotFound(String),
    #[error("positive label value {0:?} never occurs in the label column")]
    PositiveValueUnobserved(String),
    #[error("label rule leaves a single class: {0}")]
    SingleClass(String),
    #[error("column {0:?} has no observed values to impute from")]
    AllMissingColumn(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("class {class:?} has {count} rows; stratified splitting needs at least 2")]
    StratifyImpossible { class: String, count: usize },
    #[error("dataset has no minority rows")]
    ZeroMinority,
    #[error("dataset must not be empty")]
    EmptyDataset,
}

/// Description of one source CSV: column roles, the positive-class rule and
/// the missing-value marker.
///
/// `label_column` and `ignore_columns` name header columns; the positional
/// form `"#3"` (0-based) addresses column 3 of a headerless file. A manifest
/// whose label column starts with `#` declares the whole file headerless.
#[derive(Debug, Clone, Deserialize)]
pub struct DatasetManifest {
    pub name: String,
    pub path: String,
    pub label_column: String,
    pub positive_values: Vec<String>,
    #[serde(default)]
    pub missing_marker: Option<String>,
    #[serde(default)]
    pub ignore_columns: Vec<String>,
}

impl DatasetManifest {
    pub fn from_path(path: &Path) -> Result<Self, DataError> {
        let text = std::fs::read_to_string(path).map_err(|source| DataError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let manifest: DatasetManifest =
            serde_json::from_str(&text).map_err(|e| DataError::Manifest {
                path: path.to_path_buf(),
                message: e.to_string(),
            })?;
        if manifest.positive_values.is_empty() {
            return Err(DataError::Manifest {
                path: path.to_path_buf(),
                message: "positive_values must not be empty".into(),
            });
        }
        Ok(manifest)
    }

    /// Location of the data file, resolved relative to the manifest file.
    pub fn data_path(&self, manifest_path: &Path) -> PathBuf {
        let p = Path::new(&self.path);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            manifest_path.parent().unwrap_or(Path::new("")).join(p)
        }
    }

    pub fn headerless(&self) -> bool {
        self.label_column.starts_with('#')
    }
}

/// A binary classification dataset with fully numeric features.
///
/// The smaller class is designated minority at construction and the
/// designation is inherited by every derived subset, so an augmented training
/// set keeps its original polarity even when oversampling closes the gap.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    feature_names: Vec<String>,
    label_name: String,
    n_features: usize,
    values: Vec<f64>,
    minority: Vec<bool>,
    minority_label: String,
    majority_label: String,
}

impl Dataset {
    /// Builds a dataset from rows and per-row minority flags, designating the
    /// strictly smaller class as minority (flags and labels swap if needed).
    pub fn from_parts(
        name: impl Into<String>,
        feature_names: Vec<String>,
        label_name: impl Into<String>,
        rows: Vec<Vec<f64>>,
        mut minority: Vec<bool>,
        minority_label: impl Into<String>,
        majority_label: impl Into<String>,
    ) -> Result<Self, DataError> {
        if rows.is_empty() {
            return Err(DataError::EmptyDataset);
        }
        assert_eq!(rows.len(), minority.len(), "one label per row");
        let n_features = feature_names.len();
        let mut values = Vec::with_capacity(rows.len() * n_features);
        for row in &rows {
            assert_eq!(row.len(), n_features, "ragged feature rows");
            values.extend_from_slice(row);
        }
        let mut minority_label = minority_label.into();
        let mut majority_label = majority_label.into();
        let min_count = minority.iter().filter(|&&m| m).count();
        if min_count > rows.len() - min_count {
            minority.iter_mut().for_each(|m| *m = !*m);
            std::mem::swap(&mut minority_label, &mut majority_label);
        }
        Ok(Dataset {
            name: name.into(),
            feature_names,
            label_name: label_name.into(),
            n_features,
            values,
            minority,
            minority_label,
            majority_label,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn label_name(&self) -> &str {
        &self.label_name
    }

    pub fn minority_label(&self) -> &str {
        &self.minority_label
    }

    pub fn majority_label(&self) -> &str {
        &self.majority_label
    }

    pub fn n_rows(&self) -> usize {
        self.minority.len()
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n_features..(i + 1) * self.n_features]
    }

    pub fn is_minority(&self, i: usize) -> bool {
        self.minority[i]
    }

    /// Class tag of row `i` (the collapsed minority or majority label).
    pub fn label(&self, i: usize) -> &str {
        if self.minority[i] {
            &self.minority_label
        } else {
            &self.majority_label
        }
    }

    pub fn minority_count(&self) -> usize {
        self.minority.iter().filter(|&&m| m).count()
    }

    pub fn majority_count(&self) -> usize {
        self.n_rows() - self.minority_count()
    }

    pub fn minority_indices(&self) -> Vec<usize> {
        (0..self.n_rows()).filter(|&i| self.minority[i]).collect()
    }

    pub fn minority_flags(&self) -> &[bool] {
        &self.minority
    }

    /// New dataset from the given rows, keeping the parent's class
    /// designation even if the subset inverts the class balance.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        let mut values = Vec::with_capacity(indices.len() * self.n_features);
        let mut minority = Vec::with_capacity(indices.len());
        for &i in indices {
            values.extend_from_slice(self.row(i));
            minority.push(self.minority[i]);
        }
        Dataset {
            name: self.name.clone(),
            feature_names: self.feature_names.clone(),
            label_name: self.label_name.clone(),
            n_features: self.n_features,
            values,
            minority,
            minority_label: self.minority_label.clone(),
            majority_label: self.majority_label.clone(),
        }
    }

    /// Appends one row. Used by resamplers; never re-designates classes.
    pub fn push_row(&mut self, row: &[f64], minority: bool) {
        assert_eq!(row.len(), self.n_features, "row dimension mismatch");
        self.values.extend_from_slice(row);
        self.minority.push(minority);
    }

    /// Removes the last row. Panics if empty.
    pub fn pop_row(&mut self) {
        assert!(self.n_rows() > 0, "pop on empty dataset");
        self.minority.pop();
        self.values.truncate(self.values.len() - self.n_features);
    }
}

/// How to partition a dataset: train fraction, the further validation
/// fraction carved out of train, stratification and the split seed.
#[derive(Debug, Clone, Copy)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub validation_fraction: f64,
    pub stratified: bool,
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec {
            train_fraction: 0.5,
            validation_fraction: 1.0 / 3.0,
            stratified: true,
            seed: 0,
        }
    }
}

fn check_fraction(value: f64, what: &str) -> Result<(), DataError> {
    if value.is_finite() && value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(DataError::InvalidSplit(format!(
            "{what} must lie strictly inside (0,1), got {value}"
        )))
    }
}

fn round_count(n: usize, fraction: f64) -> usize {
    (n as f64 * fraction).round() as usize
}

/// Shuffles `indices` and splits off `take` of them; both halves come back in
/// ascending row order.
fn draw_partition(mut indices: Vec<usize>, take: usize, rng: &mut Prng) -> (Vec<usize>, Vec<usize>) {
    rng.shuffle(&mut indices);
    let mut taken: Vec<usize> = indices[..take].to_vec();
    let mut rest: Vec<usize> = indices[take..].to_vec();
    taken.sort_unstable();
    rest.sort_unstable();
    (taken, rest)
}

/// Splits into (train, test). Stratified mode draws per class (minority
/// first) and keeps at least one row of each class on both sides.
pub fn split(
    ds: &Dataset,
    spec: &SplitSpec,
    rng: &mut Prng,
) -> Result<(Dataset, Dataset), DataError> {
    check_fraction(spec.train_fraction, "train fraction")?;
    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    if spec.stratified {
        for wants_minority in [true, false] {
            let class: Vec<usize> = (0..ds.n_rows())
                .filter(|&i| ds.is_minority(i) == wants_minority)
                .collect();
            if class.len() < 2 {
                let class_label = if wants_minority {
                    ds.minority_label()
                } else {
                    ds.majority_label()
                };
                return Err(DataError::StratifyImpossible {
                    class: class_label.to_string(),
                    count: class.len(),
                });
            }
            let take = round_count(class.len(), spec.train_fraction).clamp(1, class.len() - 1);
            let (taken, rest) = draw_partition(class, take, rng);
            train_idx.extend(taken);
            test_idx.extend(rest);
        }
        train_idx.sort_unstable();
        test_idx.sort_unstable();
    } else {
        let n = ds.n_rows();
        if n < 2 {
            return Err(DataError::InvalidSplit(
                "need at least 2 rows to split".into(),
            ));
        }
        let take = round_count(n, spec.train_fraction).clamp(1, n - 1);
        let (taken, rest) = draw_partition((0..n).collect(), take, rng);
        train_idx = taken;
        test_idx = rest;
    }
    Ok((ds.subset(&train_idx), ds.subset(&test_idx)))
}

/// Carves a validation set out of a training set, returning
/// (fit_set, validation). Stratified mode rounds per class and always leaves
/// at least one row of each present class in the fit set.
pub fn carve_validation(
    train: &Dataset,
    spec: &SplitSpec,
    rng: &mut Prng,
) -> Result<(Dataset, Dataset), DataError> {
    check_fraction(spec.validation_fraction, "validation fraction")?;
    let n = train.n_rows();
    if n < 3 {
        return Err(DataError::InvalidSplit(format!(
            "need at least 3 training rows to carve validation, got {n}"
        )));
    }
    let mut fit_idx = Vec::new();
    let mut val_idx = Vec::new();
    if spec.stratified {
        for wants_minority in [true, false] {
            let class: Vec<usize> = (0..n)
                .filter(|&i| train.is_minority(i) == wants_minority)
                .collect();
            if class.is_empty() {
                continue;
            }
            let take = round_count(class.len(), spec.validation_fraction).min(class.len() - 1);
            let (taken, rest) = draw_partition(class, take, rng);
            val_idx.extend(taken);
            fit_idx.extend(rest);
        }
        fit_idx.sort_unstable();
        val_idx.sort_unstable();
    } else {
        let take = round_count(n, spec.validation_fraction).clamp(1, n - 1);
        let (taken, rest) = draw_partition((0..n).collect(), take, rng);
        val_idx = taken;
        fit_idx = rest;
    }
    if val_idx.is_empty() {
        return Err(DataError::InvalidSplit(
            "validation fraction rounds to an empty validation set".into(),
        ));
    }
    Ok((train.subset(&fit_idx), train.subset(&val_idx)))
}

/// Majority count divided by minority count.
pub fn imbalance_ratio(ds: &Dataset) -> Result<f64, DataError> {
    let min = ds.minority_count();
    if min == 0 {
        return Err(DataError::ZeroMinority);
    }
    Ok(ds.majority_count() as f64 / min as f64)
}

/// Loads the manifest at `manifest_path` and the CSV it points to.
pub fn load_dataset(manifest_path: &Path) -> Result<Dataset, DataError> {
    let manifest = DatasetManifest::from_path(manifest_path)?;
    load_csv(&manifest.data_path(manifest_path), &manifest)
}

/// Writes the dataset as CSV: the (encoded, imputed) feature columns, the
/// collapsed label column, and a trailing `synthetic` flag that is true for
/// rows at or past `original_rows`. A header row is emitted unless
/// `headered` is false.
pub fn write_augmented_csv(
    ds: &Dataset,
    original_rows: usize,
    headered: bool,
    path: &Path,
) -> Result<(), DataError> {
    let csv_err = |source| DataError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut writer = csv::WriterBuilder::new().from_path(path).map_err(csv_err)?;
    if headered {
        let mut header: Vec<&str> = ds.feature_names().iter().map(String::as_str).collect();
        header.push(ds.label_name());
        header.push("synthetic");
        writer.write_record(&header).map_err(csv_err)?;
    }
    for i in 0..ds.n_rows() {
        let mut record: Vec<String> = ds.row(i).iter().map(|v| v.to_string()).collect();
        record.push(ds.label(i).to_string());
        record.push((i >= original_rows).to_string());
        writer.write_record(&record).map_err(csv_err)?;
    }
    writer.flush().map_err(|source| DataError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Column addressing: positional `"#N"` or a header name.
fn resolve_column(spec: &str, header: Option<&[String]>, n_cols: usize) -> Result<usize, DataError> {
    if let Some(pos) = spec.strip_prefix('#') {
        let idx: usize = pos
            .parse()
            .map_err(|_| DataError::ColumnNotFound(spec.to_string()))?;
        if idx >= n_cols {
            return Err(DataError::ColumnNotFound(spec.to_string()));
        }
        return Ok(idx);
    }
    match header {
        Some(names) => names
            .iter()
            .position(|n| n == spec)
            .ok_or_else(|| DataError::ColumnNotFound(spec.to_string())),
        None => Err(DataError::ColumnNotFound(spec.to_string())),
    }
}

/// Reads a CSV per the manifest: binarizes the label column, drops ignored
/// columns, integer-encodes categorical features by first appearance and
/// imputes missing numeric cells with the column median of observed values.
pub fn load_csv(path: &Path, manifest: &DatasetManifest) -> Result<Dataset, DataError> {
    let file = std::fs::File::open(path).map_err(|source| DataError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(file);

    let mut records: Vec<Vec<String>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|source| DataError::Csv {
            path: path.to_path_buf(),
            source,
        })?;
        records.push(record.iter().map(str::to_owned).collect());
    }
    if records.is_empty() {
        return Err(DataError::Empty);
    }

    let headerless = manifest.headerless();
    let header: Option<Vec<String>> = if headerless {
        None
    } else {
        Some(records.remove(0))
    };
    if records.is_empty() {
        return Err(DataError::Empty);
    }

    let n_cols = header
        .as_ref()
        .map(|h| h.len())
        .unwrap_or_else(|| records[0].len());
    for (i, row) in records.iter().enumerate() {
        if row.len() != n_cols {
            return Err(DataError::ColumnCount {
                line: i + if headerless { 1 } else { 2 },
                expected: n_cols,
                found: row.len(),
            });
        }
    }

    let label_col = resolve_column(&manifest.label_column, header.as_deref(), n_cols)?;
    let mut ignored = vec![false; n_cols];
    for spec in &manifest.ignore_columns {
        ignored[resolve_column(spec, header.as_deref(), n_cols)?] = true;
    }
    let feature_cols: Vec<usize> = (0..n_cols)
        .filter(|&c| c != label_col && !ignored[c])
        .collect();
    let feature_names: Vec<String> = feature_cols
        .iter()
        .map(|&c| match &header {
            Some(names) => names[c].clone(),
            None => format!("f{c}"),
        })
        .collect();
    let label_name = match &header {
        Some(names) => names[label_col].clone(),
        None => format!("f{label_col}"),
    };

    // Label collapse: positive_values must all occur and must not cover
    // every observed value.
    let mut observed: Vec<String> = Vec::new();
    for row in &records {
        if !observed.iter().any(|v| v == &row[label_col]) {
            observed.push(row[label_col].clone());
        }
    }
    for value in &manifest.positive_values {
        if !observed.iter().any(|v| v == value) {
            return Err(DataError::PositiveValueUnobserved(value.clone()));
        }
    }
    let negatives: Vec<String> = observed
        .iter()
        .filter(|v| !manifest.positive_values.contains(v))
        .cloned()
        .collect();
    if negatives.is_empty() {
        return Err(DataError::SingleClass(
            "every observed label value is positive".into(),
        ));
    }
    let minority_flags: Vec<bool> = records
        .iter()
        .map(|row| manifest.positive_values.contains(&row[label_col]))
        .collect();
    let minority_label = manifest.positive_values.join("|");
    let majority_label = negatives.join("|");

    // Per-column encoding. A column is numeric when every non-missing cell
    // parses to a finite float; otherwise it is categorical and codes are
    // assigned by first appearance (a missing marker counts as a category).
    let n_rows = records.len();
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(feature_cols.len());
    for (fi, &c) in feature_cols.iter().enumerate() {
        let is_missing = |cell: &str| manifest.missing_marker.as_deref() == Some(cell);
        let numeric = records.iter().all(|row| {
            let cell = row[c].as_str();
            is_missing(cell) || cell.trim().parse::<f64>().is_ok_and(f64::is_finite)
        });
        let mut col = Vec::with_capacity(n_rows);
        if numeric {
            let mut seen: Vec<f64> = Vec::new();
            for row in &records {
                let cell = row[c].as_str();
                if is_missing(cell) {
                    col.push(f64::NAN);
                } else {
                    let v = cell.trim().parse::<f64>().expect("checked numeric");
                    seen.push(v);
                    col.push(v);
                }
            }
            if seen.is_empty() {
                return Err(DataError::AllMissingColumn(feature_names[fi].clone()));
            }
            let fill = median(&mut seen);
            for v in &mut col {
                if v.is_nan() {
                    *v = fill;
                }
            }
        } else {
            let mut codes: HashMap<&str, f64> = HashMap::new();
            let mut next = 0.0;
            for row in &records {
                let code = *codes.entry(row[c].as_str()).or_insert_with(|| {
                    let c = next;
                    next += 1.0;
                    c
                });
                col.push(code);
            }
        }
        columns.push(col);
    }

    let rows: Vec<Vec<f64>> = (0..n_rows)
        .map(|r| columns.iter().map(|col| col[r]).collect())
        .collect();
    Dataset::from_parts(
        manifest.name.clone(),
        feature_names,
        label_name,
        rows,
        minority_flags,
        minority_label,
        majority_label,
    )
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}
