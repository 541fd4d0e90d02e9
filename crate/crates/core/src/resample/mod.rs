//! Oversampling algorithms. All three resamplers append synthetic minority
//! rows after the original rows, never remove or reorder anything, and are
//! fully deterministic under a fixed seed.

mod adasyn;
mod gensample;
mod smote;

pub use adasyn::{adasyn, adasyn_allocation};
pub use gensample::{
    evaluate_dataset, fitness, gensample, minority_label_weight, select_parents, GenSampleParams,
    Individual, Population, ResampleTrace, SelectedParents, TerminationReason, TraceIteration,
    WeightTier, DEFAULT_WEIGHT_TIERS,
};
pub use smote::smote;

use crate::rng::Prng;

#[derive(Debug, thiserror::Error)]
pub enum ResampleError {
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("need at least {need} minority rows, found {have}")]
    TooFewMinority { need: usize, have: usize },
    #[error("minority class ({minority}) is not strictly smaller than majority ({majority})")]
    NotImbalanced { minority: usize, majority: usize },
    #[error("no second minority point exists to pair with the first parent")]
    NoSecondParent,
    #[error("validation partition contains no minority rows")]
    DegenerateValidation,
    #[error(transparent)]
    Data(#[from] crate::data::DataError),
    #[error(transparent)]
    Neighbors(#[from] crate::neighbors::NeighborError),
    #[error(transparent)]
    Tree(#[from] crate::tree::TreeError),
    #[error(transparent)]
    Metrics(#[from] crate::metrics::MetricError),
}

/// Uniform draw from the open interval (0, 1).
pub(crate) fn open_unit(rng: &mut Prng) -> f64 {
    loop {
        let u = rng.unit();
        if u > 0.0 {
            return u;
        }
    }
}

/// `base + u * (other - base)`, the SMOTE-style interpolant.
pub(crate) fn interpolate(base: &[f64], other: &[f64], u: f64) -> Vec<f64> {
    base.iter()
        .zip(other)
        .map(|(b, o)| b + u * (o - b))
        .collect()
}

/// One crossover: a shared lambda and the two children it produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Crossover {
    pub lambda: f64,
    pub child1: Vec<f64>,
    pub child2: Vec<f64>,
}

/// Children at an explicit lambda:
/// `child1 = p1 + (p2-p1)*lambda`, `child2 = p1 + (p2-p1)*(1-lambda)`.
pub fn crossover_at(p1: &[f64], p2: &[f64], lambda: f64) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(p1.len(), p2.len(), "parent dimension mismatch");
    (interpolate(p1, p2, lambda), interpolate(p1, p2, 1.0 - lambda))
}

/// Draws one lambda in (0,1) and interpolates both children with it.
pub fn crossover(p1: &[f64], p2: &[f64], rng: &mut Prng) -> Crossover {
    let lambda = open_unit(rng);
    let (child1, child2) = crossover_at(p1, p2, lambda);
    Crossover {
        lambda,
        child1,
        child2,
    }
}
