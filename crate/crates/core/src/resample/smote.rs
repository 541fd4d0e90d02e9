//! SMOTE: synthetic minority oversampling by interpolation toward nearest
//! minority neighbors.

use super::{interpolate, open_unit, ResampleError};
use crate::data::Dataset;
use crate::neighbors::{knn, ClassFilter};
use crate::rng::Prng;

/// Appends exactly `target_count` synthetic minority rows. Base points cycle
/// round-robin over the minority rows in index order; each synthetic lies on
/// the segment from its base to one of the base's k nearest minority
/// neighbors (uniformly chosen), at a uniform position u in (0,1). Neighbor
/// sets are computed once on the input, so synthetics never spawn from other
/// synthetics.
pub fn smote(
    train: &Dataset,
    k: usize,
    target_count: usize,
    rng: &mut Prng,
) -> Result<Dataset, ResampleError> {
    if k == 0 {
        return Err(ResampleError::InvalidParams("k must be >= 1".into()));
    }
    let minority = train.minority_indices();
    if minority.len() < 2 {
        return Err(ResampleError::TooFewMinority {
            need: 2,
            have: minority.len(),
        });
    }
    let mut out = train.clone();
    if target_count == 0 {
        return Ok(out);
    }
    let neighbor_sets: Vec<Vec<usize>> = minority
        .iter()
        .map(|&m| knn(train, m, k, ClassFilter::Minority).map(|r| r.indices))
        .collect::<Result<_, _>>()?;
    for j in 0..target_count {
        let slot = j % minority.len();
        let base = minority[slot];
        let neighbors = &neighbor_sets[slot];
        let pick = neighbors[rng.index(neighbors.len())];
        let u = open_unit(rng);
        let row = interpolate(train.row(base), train.row(pick), u);
        out.push_row(&row, true);
    }
    Ok(out)
}
