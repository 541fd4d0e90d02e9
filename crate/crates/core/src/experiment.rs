//! Benchmark harness: per dataset and algorithm, repeat
//! split/resample/train/score over seeded runs, aggregate means and
//! deviations, count wins, and render text/CSV reports plus F1 plot data.

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Deserialize;

use crate::data::{load_dataset, split, Dataset, DatasetManifest, SplitSpec};
use crate::metrics::{confusion, metric_set, winning_times, MetricSet};
use crate::resample::{adasyn, gensample, smote, GenSampleParams};
use crate::rng::{derive_seed, Prng};
use crate::tree::{DecisionTree, TreeParams};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Passthrough: train on the split as-is.
    None,
    Smote,
    Adasyn,
    GenSample,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::None,
        Algorithm::Smote,
        Algorithm::Adasyn,
        Algorithm::GenSample,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::None => "none",
            Algorithm::Smote => "smote",
            Algorithm::Adasyn => "adasyn",
            Algorithm::GenSample => "gensample",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "none" => Ok(Algorithm::None),
            "smote" => Ok(Algorithm::Smote),
            "adasyn" => Ok(Algorithm::Adasyn),
            "gensample" => Ok(Algorithm::GenSample),
            other => Err(format!(
                "unknown algorithm {other:?} (expected none, smote, adasyn or gensample)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SmoteConfig {
    pub k: usize,
    /// Fraction of the class gap to close; 1.0 reaches exact balance.
    pub balance_level: f64,
}

impl Default for SmoteConfig {
    fn default() -> Self {
        SmoteConfig {
            k: 5,
            balance_level: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdasynConfig {
    pub k: usize,
    pub balance_level: f64,
}

impl Default for AdasynConfig {
    fn default() -> Self {
        AdasynConfig {
            k: 5,
            balance_level: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenSampleConfig {
    pub k: usize,
    pub beta: f64,
    pub explore_prob: f64,
    pub validation_fraction: f64,
}

impl Default for GenSampleConfig {
    fn default() -> Self {
        let p = GenSampleParams::default();
        GenSampleConfig {
            k: p.k,
            beta: p.beta,
            explore_prob: p.explore_prob,
            validation_fraction: p.validation_fraction,
        }
    }
}

/// Full experiment description, loadable from plain JSON. Every field has a
/// default, so `{}` is a valid config (albeit with no datasets).
#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Dataset manifest paths; relative paths in a config file resolve
    /// against the config's directory.
    pub datasets: Vec<PathBuf>,
    pub algorithms: Vec<Algorithm>,
    pub runs: usize,
    pub master_seed: u64,
    pub train_fraction: f64,
    pub stratified: bool,
    pub tree: TreeParams,
    pub smote: SmoteConfig,
    pub adasyn: AdasynConfig,
    pub gensample: GenSampleConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            datasets: Vec::new(),
            algorithms: Algorithm::ALL.to_vec(),
            runs: 100,
            master_seed: 42,
            train_fraction: 0.5,
            stratified: true,
            tree: TreeParams::default(),
            smote: SmoteConfig::default(),
            adasyn: AdasynConfig::default(),
            gensample: GenSampleConfig::default(),
        }
    }
}

impl ExperimentConfig {
    /// Parses a JSON config and resolves relative dataset paths against the
    /// file's directory.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            source: e,
        })?;
        let mut cfg: ExperimentConfig = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        for ds in &mut cfg.datasets {
            if ds.is_relative() {
                *ds = base.join(&*ds);
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.datasets.is_empty() {
            return bad("config lists no datasets".into());
        }
        if self.algorithms.is_empty() {
            return bad("config lists no algorithms".into());
        }
        if self.runs == 0 {
            return bad("runs must be >= 1".into());
        }
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return bad(format!(
                "train_fraction must lie in (0,1), got {}",
                self.train_fraction
            ));
        }
        for (what, k) in [
            ("smote", self.smote.k),
            ("adasyn", self.adasyn.k),
            ("gensample", self.gensample.k),
        ] {
            if k == 0 {
                return bad(format!("{what}.k must be >= 1"));
            }
        }
        for (what, level) in [
            ("smote", self.smote.balance_level),
            ("adasyn", self.adasyn.balance_level),
        ] {
            if !(level > 0.0 && level <= 1.0) {
                return bad(format!(
                    "{what}.balance_level must lie in (0,1], got {level}"
                ));
            }
        }
        self.gensample_params(0).validate().map_err(Error::from)
    }

    /// The library-level GenSample parameters this config implies.
    pub fn gensample_params(&self, seed: u64) -> GenSampleParams {
        GenSampleParams {
            beta: self.gensample.beta,
            k: self.gensample.k,
            explore_prob: self.gensample.explore_prob,
            validation_fraction: self.gensample.validation_fraction,
            tree_params: self.tree,
            seed,
            ..GenSampleParams::default()
        }
    }
}

/// Aggregates over the completed runs of one (dataset, algorithm) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellStats {
    pub runs: usize,
    pub mean: MetricSet,
    /// Sample standard deviation (n - 1); zero when runs = 1.
    pub std: MetricSet,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CellOutcome {
    Ok(CellStats),
    Failed { diagnostic: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub dataset: String,
    pub algorithm: Algorithm,
    pub outcome: CellOutcome,
}

/// Every (dataset, algorithm) cell in config order plus the winning-times
/// block computed over datasets where all cells completed.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub datasets: Vec<String>,
    pub algorithms: Vec<Algorithm>,
    /// Dataset-major, algorithm-minor.
    pub cells: Vec<Cell>,
    /// Per algorithm, per metric (in [`MetricSet::NAMES`] order): on how many
    /// datasets it attains the best mean. Ties credit every sharer.
    pub winning: Vec<[usize; 6]>,
}

impl ExperimentReport {
    pub fn cell(&self, dataset: &str, algorithm: Algorithm) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.dataset == dataset && c.algorithm == algorithm)
    }

    pub fn stats(&self, dataset: &str, algorithm: Algorithm) -> Option<&CellStats> {
        self.cell(dataset, algorithm).and_then(|c| match &c.outcome {
            CellOutcome::Ok(stats) => Some(stats),
            CellOutcome::Failed { .. } => None,
        })
    }

    pub fn is_full_success(&self) -> bool {
        self.cells
            .iter()
            .all(|c| matches!(c.outcome, CellOutcome::Ok(_)))
    }
}

/// Number of synthetics that closes `level` of the gap between the classes.
pub fn balance_target(minority: usize, majority: usize, level: f64) -> usize {
    let gap = majority.saturating_sub(minority);
    (gap as f64 * level).round() as usize
}

/// Resamples a training set with one algorithm under one seed.
pub fn resample_with(
    train: &Dataset,
    algorithm: Algorithm,
    cfg: &ExperimentConfig,
    seed: u64,
) -> Result<Dataset> {
    match algorithm {
        Algorithm::None => Ok(train.clone()),
        Algorithm::Smote => {
            let target = balance_target(
                train.minority_count(),
                train.majority_count(),
                cfg.smote.balance_level,
            );
            let mut rng = Prng::seed_from_u64(seed);
            Ok(smote(train, cfg.smote.k, target, &mut rng)?)
        }
        Algorithm::Adasyn => {
            let mut rng = Prng::seed_from_u64(seed);
            Ok(adasyn(train, cfg.adasyn.k, cfg.adasyn.balance_level, &mut rng)?)
        }
        Algorithm::GenSample => {
            let params = cfg.gensample_params(seed);
            Ok(gensample(train, &params)?.0)
        }
    }
}

/// One full cycle: split, resample, fit, score on the untouched test half.
///
/// The split seed depends only on (master seed, dataset, run), so every
/// algorithm sees the same partition in the same run; the resampling seed
/// additionally depends on the algorithm.
pub fn run_once(
    ds: &Dataset,
    algorithm: Algorithm,
    cfg: &ExperimentConfig,
    run: u64,
) -> Result<MetricSet> {
    let split_seed = derive_seed(cfg.master_seed, &[ds.name(), "split"], run);
    let algo_seed = derive_seed(cfg.master_seed, &[ds.name(), algorithm.name()], run);
    let spec = SplitSpec {
        train_fraction: cfg.train_fraction,
        validation_fraction: cfg.gensample.validation_fraction,
        stratified: cfg.stratified,
        seed: split_seed,
    };
    let mut split_rng = Prng::seed_from_u64(split_seed);
    let (train, test) = split(ds, &spec, &mut split_rng)?;
    let resampled = resample_with(&train, algorithm, cfg, algo_seed)?;
    let tree = DecisionTree::fit(&resampled, &cfg.tree)?;
    let mut y_pred = Vec::with_capacity(test.n_rows());
    let mut scores = Vec::with_capacity(test.n_rows());
    for i in 0..test.n_rows() {
        y_pred.push(tree.predict(test.row(i))?);
        scores.push(tree.predict_score(test.row(i))?);
    }
    let cm = confusion(test.minority_flags(), &y_pred)?;
    Ok(metric_set(&cm, test.minority_flags(), &scores))
}

fn panic_text(payload: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "opaque panic payload".to_string()
    }
}

fn aggregate(runs: &[MetricSet]) -> CellStats {
    let n = runs.len();
    let mut mean = [0.0f64; 6];
    for m in runs {
        for (acc, v) in mean.iter_mut().zip(m.values()) {
            *acc += v;
        }
    }
    for acc in &mut mean {
        *acc /= n as f64;
    }
    let mut std = [0.0f64; 6];
    if n > 1 {
        for m in runs {
            for ((acc, v), mu) in std.iter_mut().zip(m.values()).zip(mean) {
                *acc += (v - mu) * (v - mu);
            }
        }
        for acc in &mut std {
            *acc = (*acc / (n - 1) as f64).sqrt();
        }
    }
    CellStats {
        runs: n,
        mean: MetricSet::from_values(mean),
        std: MetricSet::from_values(std),
    }
}

/// Runs are parallel; results are collected by run index and reduced in run
/// order, so outputs are identical across thread counts. The first failing
/// run fails the whole cell.
fn run_cell(ds: &Dataset, algorithm: Algorithm, cfg: &ExperimentConfig) -> CellOutcome {
    let results: Vec<std::result::Result<MetricSet, String>> = (0..cfg.runs)
        .into_par_iter()
        .map(|r| {
            catch_unwind(AssertUnwindSafe(|| run_once(ds, algorithm, cfg, r as u64)))
                .unwrap_or_else(|p| Err(Error::Config(format!("panicked: {}", panic_text(&*p)))))
                .map_err(|e| e.to_string())
        })
        .collect();
    let mut metrics = Vec::with_capacity(cfg.runs);
    for (r, res) in results.into_iter().enumerate() {
        match res {
            Ok(m) => metrics.push(m),
            Err(diagnostic) => {
                return CellOutcome::Failed {
                    diagnostic: format!("run {r}: {diagnostic}"),
                }
            }
        }
    }
    CellOutcome::Ok(aggregate(&metrics))
}

fn winning_over_complete_datasets(
    cells: &[Cell],
    datasets: &[String],
    algorithms: &[Algorithm],
) -> Vec<[usize; 6]> {
    let mut table: Vec<Vec<MetricSet>> = Vec::new();
    for dataset in datasets {
        let row: Option<Vec<MetricSet>> = algorithms
            .iter()
            .map(|&a| {
                cells
                    .iter()
                    .find(|c| &c.dataset == dataset && c.algorithm == a)
                    .and_then(|c| match &c.outcome {
                        CellOutcome::Ok(stats) => Some(stats.mean),
                        CellOutcome::Failed { .. } => None,
                    })
            })
            .collect();
        if let Some(row) = row {
            table.push(row);
        }
    }
    if table.is_empty() {
        return vec![[0; 6]; algorithms.len()];
    }
    winning_times(&table).expect("rectangular non-empty mean table")
}

/// Runs the full experiment. A dataset that fails to load marks all its
/// cells failed and the sweep proceeds; a panicking or erroring run fails
/// only its own cell. Progress goes to stderr, one line per cell.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let mut datasets = Vec::with_capacity(cfg.datasets.len());
    let mut cells = Vec::with_capacity(cfg.datasets.len() * cfg.algorithms.len());
    for manifest_path in &cfg.datasets {
        match load_dataset(manifest_path) {
            Ok(ds) => {
                datasets.push(ds.name().to_string());
                for &algorithm in &cfg.algorithms {
                    let outcome = run_cell(&ds, algorithm, cfg);
                    match &outcome {
                        CellOutcome::Ok(stats) => eprintln!(
                            "[bench] {} / {}: ok, mean f1 {:.4} over {} runs",
                            ds.name(),
                            algorithm,
                            stats.mean.f1,
                            stats.runs
                        ),
                        CellOutcome::Failed { diagnostic } => {
                            eprintln!("[bench] {} / {}: FAILED ({diagnostic})", ds.name(), algorithm)
                        }
                    }
                    cells.push(Cell {
                        dataset: ds.name().to_string(),
                        algorithm,
                        outcome,
                    });
                }
            }
            Err(e) => {
                let name = DatasetManifest::from_path(manifest_path)
                    .map(|m| m.name)
                    .unwrap_or_else(|_| {
                        manifest_path
                            .file_stem()
                            .map(|s| s.to_string_lossy().into_owned())
                            .unwrap_or_else(|| manifest_path.display().to_string())
                    });
                eprintln!("[bench] {name}: dataset load failed ({e})");
                datasets.push(name.clone());
                for &algorithm in &cfg.algorithms {
                    cells.push(Cell {
                        dataset: name.clone(),
                        algorithm,
                        outcome: CellOutcome::Failed {
                            diagnostic: format!("dataset load failed: {e}"),
                        },
                    });
                }
            }
        }
    }
    let winning = winning_over_complete_datasets(&cells, &datasets, &cfg.algorithms);
    Ok(ExperimentReport {
        datasets,
        algorithms: cfg.algorithms.clone(),
        cells,
        winning,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    TableText,
    Csv,
}

const COL_DATASET: usize = 14;
const COL_ALGO: usize = 11;
const COL_METRIC: usize = 13;

/// Table-style text: one block of algorithm rows per dataset, six mean±std
/// metric columns, then a winning-times footer.
pub fn render_table(report: &ExperimentReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("{:<COL_DATASET$}{:<COL_ALGO$}", "dataset", "algorithm"));
    for name in MetricSet::NAMES {
        out.push_str(&format!("{name:<COL_METRIC$}"));
    }
    out.push('\n');
    let width = COL_DATASET + COL_ALGO + 6 * COL_METRIC;
    out.push_str(&"-".repeat(width));
    out.push('\n');
    for (d, dataset) in report.datasets.iter().enumerate() {
        if d > 0 {
            out.push('\n');
        }
        for &algorithm in &report.algorithms {
            out.push_str(&format!("{dataset:<COL_DATASET$}{:<COL_ALGO$}", algorithm.name()));
            match report.cell(dataset, algorithm).map(|c| &c.outcome) {
                Some(CellOutcome::Ok(stats)) => {
                    for (m, s) in stats.mean.values().into_iter().zip(stats.std.values()) {
                        out.push_str(&format!("{:<COL_METRIC$}", format!("{m:.2}±{s:.2}")));
                    }
                }
                Some(CellOutcome::Failed { diagnostic }) => {
                    out.push_str(&format!("FAILED: {diagnostic}"));
                }
                None => out.push_str("MISSING"),
            }
            while out.ends_with(' ') {
                out.pop();
            }
            out.push('\n');
        }
    }
    out.push('\n');
    out.push_str("winning times (best mean per metric; ties shared; only fully completed datasets count)\n");
    out.push_str(&format!("{:<COL_ALGO$}", "algorithm"));
    for name in MetricSet::NAMES {
        out.push_str(&format!("{name:<COL_METRIC$}"));
    }
    out.push('\n');
    for (a, &algorithm) in report.algorithms.iter().enumerate() {
        out.push_str(&format!("{:<COL_ALGO$}", algorithm.name()));
        for count in report.winning[a] {
            out.push_str(&format!("{count:<COL_METRIC$}"));
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    }
    out
}

const CSV_STATUS_OK: &str = "ok";
const CSV_STATUS_FAILED: &str = "failed";
const CSV_FIELDS: usize = 17;

fn csv_header() -> Vec<String> {
    let mut header = vec![
        "dataset".to_string(),
        "algorithm".to_string(),
        "runs".to_string(),
        "status".to_string(),
    ];
    for name in MetricSet::NAMES {
        header.push(format!("{name}_mean"));
        header.push(format!("{name}_std"));
    }
    header.push("diagnostic".to_string());
    header
}

/// CSV report: one row per cell. Floats use Rust's shortest round-trip
/// formatting, so parsing the file back reproduces the exact values.
pub fn render_report_csv(report: &ExperimentReport) -> String {
    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    writer.write_record(csv_header()).expect("in-memory csv");
    for cell in &report.cells {
        let mut record = vec![cell.dataset.clone(), cell.algorithm.to_string()];
        match &cell.outcome {
            CellOutcome::Ok(stats) => {
                record.push(stats.runs.to_string());
                record.push(CSV_STATUS_OK.to_string());
                for (m, s) in stats.mean.values().into_iter().zip(stats.std.values()) {
                    record.push(m.to_string());
                    record.push(s.to_string());
                }
                record.push(String::new());
            }
            CellOutcome::Failed { diagnostic } => {
                record.push(String::new());
                record.push(CSV_STATUS_FAILED.to_string());
                record.extend(std::iter::repeat(String::new()).take(12));
                record.push(diagnostic.clone());
            }
        }
        writer.write_record(&record).expect("in-memory csv");
    }
    String::from_utf8(writer.into_inner().expect("flushed")).expect("csv is utf-8")
}

/// Inverse of [`render_report_csv`]: rebuilds the cells and recomputes the
/// winning block from the parsed means.
pub fn parse_report_csv_str(text: &str) -> Result<ExperimentReport> {
    let bad = |m: String| Error::Config(format!("report csv: {m}"));
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    {
        let headers = reader.headers().map_err(|e| bad(e.to_string()))?;
        let expected = csv_header();
        if headers.iter().ne(expected.iter().map(String::as_str)) {
            return Err(bad(format!("unexpected header {headers:?}")));
        }
    }
    let mut cells = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        if record.len() != CSV_FIELDS {
            return Err(bad(format!(
                "expected {CSV_FIELDS} fields, got {}",
                record.len()
            )));
        }
        let dataset = record[0].to_string();
        let algorithm = Algorithm::from_str(&record[1]).map_err(bad)?;
        let outcome = match &record[3] {
            CSV_STATUS_OK => {
                let runs: usize = record[2].parse().map_err(|e| bad(format!("runs: {e}")))?;
                let mut mean = [0.0f64; 6];
                let mut std = [0.0f64; 6];
                for i in 0..6 {
                    mean[i] = record[4 + 2 * i]
                        .parse()
                        .map_err(|e| bad(format!("{}_mean: {e}", MetricSet::NAMES[i])))?;
                    std[i] = record[5 + 2 * i]
                        .parse()
                        .map_err(|e| bad(format!("{}_std: {e}", MetricSet::NAMES[i])))?;
                }
                CellOutcome::Ok(CellStats {
                    runs,
                    mean: MetricSet::from_values(mean),
                    std: MetricSet::from_values(std),
                })
            }
            CSV_STATUS_FAILED => CellOutcome::Failed {
                diagnostic: record[16].to_string(),
            },
            other => return Err(bad(format!("unknown status {other:?}"))),
        };
        cells.push(Cell {
            dataset,
            algorithm,
            outcome,
        });
    }
    let mut datasets: Vec<String> = Vec::new();
    for cell in &cells {
        if !datasets.contains(&cell.dataset) {
            datasets.push(cell.dataset.clone());
        }
    }
    let mut algorithms: Vec<Algorithm> = Vec::new();
    for cell in &cells {
        if !algorithms.contains(&cell.algorithm) {
            algorithms.push(cell.algorithm);
        }
    }
    let winning = winning_over_complete_datasets(&cells, &datasets, &algorithms);
    Ok(ExperimentReport {
        datasets,
        algorithms,
        cells,
        winning,
    })
}

pub fn parse_report_csv(path: &Path) -> Result<ExperimentReport> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    parse_report_csv_str(&text)
}

/// Plot data: one `(dataset, algorithm, f1_mean)` row per completed cell.
pub fn render_plot_csv(report: &ExperimentReport) -> String {
    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    writer
        .write_record(["dataset", "algorithm", "f1_mean"])
        .expect("in-memory csv");
    for cell in &report.cells {
        if let CellOutcome::Ok(stats) = &cell.outcome {
            writer
                .write_record([
                    cell.dataset.as_str(),
                    cell.algorithm.name(),
                    &stats.mean.f1.to_string(),
                ])
                .expect("in-memory csv");
        }
    }
    String::from_utf8(writer.into_inner().expect("flushed")).expect("csv is utf-8")
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

pub fn emit_report(report: &ExperimentReport, path: &Path, format: ReportFormat) -> Result<()> {
    let contents = match format {
        ReportFormat::TableText => render_table(report),
        ReportFormat::Csv => render_report_csv(report),
    };
    write_file(path, &contents)
}

pub fn emit_fscore_plot_data(report: &ExperimentReport, path: &Path) -> Result<()> {
    write_file(path, &render_plot_csv(report))
}
