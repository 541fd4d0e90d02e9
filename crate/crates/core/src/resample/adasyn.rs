//! ADASYN: adaptive synthetic sampling. Minority points surrounded by more
//! majority neighbors receive proportionally more synthetics.

use super::{interpolate, open_unit, ResampleError};
use crate::data::Dataset;
use crate::neighbors::{knn, majority_neighbors_ratio, ClassFilter};
use crate::rng::Prng;

/// Per-minority-point synthetic counts (in minority index order).
///
/// With G = (majority - minority) * balance_level, each minority point i gets
/// round(r_hat_i * G) where r_hat_i is its normalized majority-neighbor
/// ratio; an all-zero ratio vector falls back to uniform allocation. Rounding
/// drift is corrected on the highest-r_hat points (ties by lower index) so
/// the counts sum to exactly G.
pub fn adasyn_allocation(
    train: &Dataset,
    k: usize,
    balance_level: f64,
) -> Result<Vec<usize>, ResampleError> {
    if k == 0 {
        return Err(ResampleError::InvalidParams("k must be >= 1".into()));
    }
    if !(balance_level > 0.0 && balance_level <= 1.0) {
        return Err(ResampleError::InvalidParams(format!(
            "balance_level must lie in (0,1], got {balance_level}"
        )));
    }
    let minority = train.minority_indices();
    let m = minority.len();
    if m < 2 {
        return Err(ResampleError::TooFewMinority { need: 2, have: m });
    }
    let majority = train.majority_count();
    if m >= majority {
        return Err(ResampleError::NotImbalanced {
            minority: m,
            majority,
        });
    }
    let total = (((majority - m) as f64) * balance_level).round() as usize;

    let ratios: Vec<f64> = minority
        .iter()
        .map(|&i| majority_neighbors_ratio(train, i, k))
        .collect::<Result<_, _>>()?;
    let sum: f64 = ratios.iter().sum();
    let normalized: Vec<f64> = if sum == 0.0 {
        vec![1.0 / m as f64; m]
    } else {
        ratios.iter().map(|r| r / sum).collect()
    };

    let mut counts: Vec<usize> = normalized
        .iter()
        .map(|r| (r * total as f64).round() as usize)
        .collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        normalized[b]
            .partial_cmp(&normalized[a])
            .expect("finite ratios")
            .then(a.cmp(&b))
    });
    let allocated: usize = counts.iter().sum();
    if allocated < total {
        for j in 0..total - allocated {
            counts[order[j % m]] += 1;
        }
    } else if allocated > total {
        let mut excess = allocated - total;
        let mut j = 0;
        while excess > 0 {
            let i = order[j % m];
            if counts[i] > 0 {
                counts[i] -= 1;
                excess -= 1;
            }
            j += 1;
        }
    }
    Ok(counts)
}

/// Runs the adaptive allocation, then generates each point's synthetics by
/// SMOTE-style interpolation toward its k nearest minority neighbors.
pub fn adasyn(
    train: &Dataset,
    k: usize,
    balance_level: f64,
    rng: &mut Prng,
) -> Result<Dataset, ResampleError> {
    let counts = adasyn_allocation(train, k, balance_level)?;
    let minority = train.minority_indices();
    let mut out = train.clone();
    for (slot, &base) in minority.iter().enumerate() {
        if counts[slot] == 0 {
            continue;
        }
        let neighbors = knn(train, base, k, ClassFilter::Minority)?.indices;
        for _ in 0..counts[slot] {
            let pick = neighbors[rng.index(neighbors.len())];
            let u = open_unit(rng);
            let row = interpolate(train.row(base), train.row(pick), u);
            out.push_row(&row, true);
        }
    }
    Ok(out)
}
