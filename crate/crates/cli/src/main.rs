//! Command-line front end: inspect datasets, run single resamples, run the
//! benchmark experiment, re-render reports. All logic lives in the library;
//! this file only parses flags and wires files to library calls.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use gensample_core::data::{imbalance_ratio, load_dataset, write_augmented_csv};
use gensample_core::experiment::{
    balance_target, emit_fscore_plot_data, emit_report, parse_report_csv, render_plot_csv,
    render_table, run_experiment, Algorithm, ExperimentConfig, ReportFormat,
};
use gensample_core::rng::Prng;
use gensample_core::resample::{adasyn, gensample, smote};
use gensample_core::{DatasetManifest, Error, GenSampleParams};

#[derive(Parser)]
#[command(name = "gensample", version, about = "Oversampling toolkit for imbalanced binary classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    Algorithm::from_str(s)
}

/// Synthetic-count request: close the class gap or a fixed count.
#[derive(Debug, Clone, Copy)]
enum Target {
    Balance,
    Count(usize),
}

fn parse_target(s: &str) -> Result<Target, String> {
    if s == "balance" {
        return Ok(Target::Balance);
    }
    s.parse()
        .map(Target::Count)
        .map_err(|_| format!("expected \"balance\" or a non-negative integer, got {s:?}"))
}

#[derive(Subcommand)]
enum Command {
    /// Print class counts, feature count and imbalance ratio of a dataset.
    Inspect {
        /// Dataset manifest (JSON).
        manifest: PathBuf,
    },
    /// Resample a dataset once and write the augmented CSV.
    Resample {
        /// Dataset manifest (JSON).
        manifest: PathBuf,
        /// Oversampler: none, smote, adasyn or gensample.
        #[arg(long, value_parser = parse_algorithm, default_value = "gensample")]
        algo: Algorithm,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Neighborhood size.
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// GenSample fitness blend between weight and ΔF-score.
        #[arg(long, default_value_t = 0.75)]
        beta: f64,
        /// GenSample probability of a random first parent.
        #[arg(long, default_value_t = 0.15)]
        explore_prob: f64,
        /// "balance" or an explicit synthetic count (smote/adasyn only).
        #[arg(long, value_parser = parse_target, default_value = "balance")]
        target: Target,
        /// Output CSV: input schema plus a trailing `synthetic` column.
        #[arg(long)]
        out: PathBuf,
        /// Write the per-iteration JSONL trace here (gensample only).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run the benchmark experiment described by a JSON config.
    Bench {
        config: PathBuf,
        /// Directory for report.txt, report.csv and f1_scores.csv.
        #[arg(long, default_value = "bench-out")]
        out_dir: PathBuf,
        /// Override the config's run count.
        #[arg(long)]
        runs: Option<usize>,
        /// Override the config's master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Split without per-class stratification.
        #[arg(long)]
        no_stratify: bool,
    },
    /// Re-render a previously written report.csv.
    Report {
        report: PathBuf,
        /// Emit F1 plot data instead of the text table.
        #[arg(long)]
        fig: bool,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_text(path: &PathBuf, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Inspect { manifest } => {
            let ds = load_dataset(&manifest)?;
            println!(
                "minority {}, majority {}, features {}, imbalance {:.1}",
                ds.minority_count(),
                ds.majority_count(),
                ds.n_features(),
                imbalance_ratio(&ds)?
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Resample {
            manifest,
            algo,
            seed,
            k,
            beta,
            explore_prob,
            target,
            out,
            trace,
        } => {
            let ds = load_dataset(&manifest)?;
            let headered = !DatasetManifest::from_path(&manifest)?.headerless();
            let gap = balance_target(ds.minority_count(), ds.majority_count(), 1.0);
            let count = |t: Target| match t {
                Target::Balance => gap,
                Target::Count(n) => n,
            };
            if trace.is_some() && algo != Algorithm::GenSample {
                return Err(Error::Config(format!("--trace applies to gensample, not {algo}")));
            }
            let augmented = match algo {
                Algorithm::None => ds.clone(),
                Algorithm::Smote => {
                    let mut rng = Prng::seed_from_u64(seed);
                    smote(&ds, k, count(target), &mut rng)?
                }
                Algorithm::Adasyn => {
                    let requested = count(target);
                    if requested > gap {
                        return Err(Error::Config(format!(
                            "adasyn target {requested} exceeds the class gap {gap}"
                        )));
                    }
                    let level = if gap == 0 { 1.0 } else { requested as f64 / gap as f64 };
                    let mut rng = Prng::seed_from_u64(seed);
                    adasyn(&ds, k, level, &mut rng)?
                }
                Algorithm::GenSample => {
                    if !matches!(target, Target::Balance) {
                        return Err(Error::Config(
                            "gensample derives its own target; use --target balance".into(),
                        ));
                    }
                    let params = GenSampleParams {
                        k,
                        beta,
                        explore_prob,
                        seed,
                        ..GenSampleParams::default()
                    };
                    let (augmented, run_trace) = gensample(&ds, &params)?;
                    if let Some(trace_path) = &trace {
                        write_text(trace_path, &run_trace.to_jsonl())?;
                    }
                    augmented
                }
            };
            write_augmented_csv(&augmented, ds.n_rows(), headered, &out)?;
            eprintln!(
                "wrote {} ({} original + {} synthetic rows)",
                out.display(),
                ds.n_rows(),
                augmented.n_rows() - ds.n_rows()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            config,
            out_dir,
            runs,
            seed,
            no_stratify,
        } => {
            let mut cfg = ExperimentConfig::from_path(&config)?;
            if let Some(runs) = runs {
                cfg.runs = runs;
            }
            if let Some(seed) = seed {
                cfg.master_seed = seed;
            }
            if no_stratify {
                cfg.stratified = false;
            }
            let report = run_experiment(&cfg)?;
            std::fs::create_dir_all(&out_dir).map_err(|source| Error::Io {
                path: out_dir.clone(),
                source,
            })?;
            emit_report(&report, &out_dir.join("report.txt"), ReportFormat::TableText)?;
            emit_report(&report, &out_dir.join("report.csv"), ReportFormat::Csv)?;
            emit_fscore_plot_data(&report, &out_dir.join("f1_scores.csv"))?;
            print!("{}", render_table(&report));
            if report.is_full_success() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("some cells failed; see report.csv diagnostics");
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Report { report, fig, out } => {
            let parsed = parse_report_csv(&report)?;
            let rendered = if fig {
                render_plot_csv(&parsed)
            } else {
                render_table(&parsed)
            };
            match out {
                Some(path) => write_text(&path, &rendered)?,
                None => print!("{rendered}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
