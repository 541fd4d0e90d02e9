//! Oversampling algorithms for imbalanced binary classification.
//!
//! The crate bundles three resamplers (a genetic oversampler, SMOTE and
//! ADASYN), a from-scratch decision tree, the usual imbalance-aware metrics,
//! and a benchmark harness that averages train/resample/test cycles over many
//! seeded runs. Everything is deterministic under a fixed seed.

pub mod data;
pub mod experiment;
pub mod metrics;
pub mod neighbors;
pub mod resample;
pub mod rng;
pub mod tree;

pub use data::{Dataset, DatasetManifest, SplitSpec};
pub use experiment::{Algorithm, ExperimentConfig, ExperimentReport};
pub use metrics::{ConfusionMatrix, MetricSet};
pub use neighbors::{ClassFilter, NeighborQueryResult};
pub use resample::{GenSampleParams, ResampleTrace, TerminationReason};
pub use rng::Prng;
pub use tree::{DecisionTree, SplitCriterion, TreeParams};

/// Any error the library can produce, one level above the per-module enums.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Data(#[from] data::DataError),
    #[error(transparent)]
    Neighbors(#[from] neighbors::NeighborError),
    #[error(transparent)]
    Tree(#[from] tree::TreeError),
    #[error(transparent)]
    Metrics(#[from] metrics::MetricError),
    #[error(transparent)]
    Resample(#[from] resample::ResampleError),
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: std::path::PathBuf,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
