//! Brute-force k-nearest-neighbor queries under Euclidean distance.

use crate::data::Dataset;

#[derive(Debug, thiserror::Error)]
pub enum NeighborError {
    #[error("k must be positive")]
    ZeroK,
    #[error("query index {index} out of bounds for {rows} rows")]
    QueryOutOfBounds { index: usize, rows: usize },
    #[error("no candidate rows remain after filtering")]
    EmptyCandidates,
    #[error("need {k} other rows for the neighborhood ratio, found {available}")]
    TooFewRows { k: usize, available: usize },
    #[error("query row {0} is not minority-labeled")]
    QueryNotMinority(usize),
}

/// Which rows may appear as neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassFilter {
    Any,
    Minority,
    Majority,
}

impl ClassFilter {
    fn admits(self, minority: bool) -> bool {
        match self {
            ClassFilter::Any => true,
            ClassFilter::Minority => minority,
            ClassFilter::Majority => !minority,
        }
    }
}

/// Neighbor rows in ascending distance order; ties broken by lower row index.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborQueryResult {
    pub indices: Vec<usize>,
    pub distances: Vec<f64>,
}

impl NeighborQueryResult {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum()
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    squared_distance(a, b).sqrt()
}

/// The min(k, available) nearest rows to `query_index`, excluding the query
/// row itself and anything outside `filter`. Exact brute force: with no
/// eligible candidate at all this is an error, a short candidate list is not.
pub fn knn(
    ds: &Dataset,
    query_index: usize,
    k: usize,
    filter: ClassFilter,
) -> Result<NeighborQueryResult, NeighborError> {
    if k == 0 {
        return Err(NeighborError::ZeroK);
    }
    if query_index >= ds.n_rows() {
        return Err(NeighborError::QueryOutOfBounds {
            index: query_index,
            rows: ds.n_rows(),
        });
    }
    let query = ds.row(query_index);
    let mut candidates: Vec<(f64, usize)> = (0..ds.n_rows())
        .filter(|&i| i != query_index && filter.admits(ds.is_minority(i)))
        .map(|i| (squared_distance(query, ds.row(i)), i))
        .collect();
    if candidates.is_empty() {
        return Err(NeighborError::EmptyCandidates);
    }
    candidates.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite distances"));
    candidates.truncate(k);
    Ok(NeighborQueryResult {
        indices: candidates.iter().map(|&(_, i)| i).collect(),
        distances: candidates.iter().map(|&(d, _)| d.sqrt()).collect(),
    })
}

/// Fraction of majority rows among the unfiltered k nearest neighbors of a
/// minority row; always a multiple of 1/k.
pub fn majority_neighbors_ratio(
    ds: &Dataset,
    query_index: usize,
    k: usize,
) -> Result<f64, NeighborError> {
    if k == 0 {
        return Err(NeighborError::ZeroK);
    }
    if query_index >= ds.n_rows() {
        return Err(NeighborError::QueryOutOfBounds {
            index: query_index,
            rows: ds.n_rows(),
        });
    }
    if !ds.is_minority(query_index) {
        return Err(NeighborError::QueryNotMinority(query_index));
    }
    if ds.n_rows() - 1 < k {
        return Err(NeighborError::TooFewRows {
            k,
            available: ds.n_rows() - 1,
        });
    }
    let result = knn(ds, query_index, k, ClassFilter::Any)?;
    let majority = result
        .indices
        .iter()
        .filter(|&&i| !ds.is_minority(i))
        .count();
    Ok(majority as f64 / k as f64)
}
