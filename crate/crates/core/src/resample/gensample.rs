//! Genetic oversampler. A population of minority examples competes to
//! reproduce; each iteration crosses the fittest (or, with a small explore
//! probability, a random) individual with one of its nearest minority
//! neighbors, keeps whichever child improves validation F1 more, and stops
//! at class balance or on the first F1 drop.

use serde::Serialize;

use super::{crossover, Crossover, ResampleError};
use crate::data::{carve_validation, Dataset, SplitSpec};
use crate::metrics::{confusion, f1_score};
use crate::neighbors::{knn, majority_neighbors_ratio, ClassFilter};
use crate::rng::Prng;
use crate::tree::{DecisionTree, TreeParams};

/// One weight tier: ratios at or above `ratio_lower` (and below the previous
/// tier's bound) draw a weight uniformly from [weight_lo, weight_hi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightTier {
    pub ratio_lower: f64,
    pub weight_lo: f64,
    pub weight_hi: f64,
}

/// Tiers for safe, borderline, rare and outlier minority examples, keyed by
/// the majority share of a point's neighborhood.
pub const DEFAULT_WEIGHT_TIERS: [WeightTier; 4] = [
    WeightTier { ratio_lower: 0.75, weight_lo: 0.8, weight_hi: 1.0 },
    WeightTier { ratio_lower: 0.5, weight_lo: 0.6, weight_hi: 0.8 },
    WeightTier { ratio_lower: 0.25, weight_lo: 0.4, weight_hi: 0.6 },
    WeightTier { ratio_lower: 0.0, weight_lo: 0.2, weight_hi: 0.4 },
];

#[derive(Debug, Clone)]
pub struct GenSampleParams {
    /// Fitness blend between neighborhood weight and measured F1 change.
    pub beta: f64,
    pub k: usize,
    /// Probability of picking a random first parent instead of the fittest.
    pub explore_prob: f64,
    pub weight_tiers: [WeightTier; 4],
    pub tree_params: TreeParams,
    /// Share of the training set carved off as validation.
    pub validation_fraction: f64,
    pub seed: u64,
}

impl Default for GenSampleParams {
    fn default() -> Self {
        GenSampleParams {
            beta: 0.75,
            k: 5,
            explore_prob: 0.15,
            weight_tiers: DEFAULT_WEIGHT_TIERS,
            tree_params: TreeParams::default(),
            validation_fraction: 1.0 / 3.0,
            seed: 0,
        }
    }
}

impl GenSampleParams {
    pub fn validate(&self) -> Result<(), ResampleError> {
        let bad = |m: String| Err(ResampleError::InvalidParams(m));
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return bad(format!("beta must lie in (0,1), got {}", self.beta));
        }
        if self.k == 0 {
            return bad("k must be >= 1".into());
        }
        if !(0.0..=1.0).contains(&self.explore_prob) {
            return bad(format!(
                "explore_prob must lie in [0,1], got {}",
                self.explore_prob
            ));
        }
        if !(self.validation_fraction > 0.0 && self.validation_fraction < 1.0) {
            return bad(format!(
                "validation_fraction must lie in (0,1), got {}",
                self.validation_fraction
            ));
        }
        let t = &self.weight_tiers;
        if t[3].ratio_lower != 0.0 {
            return bad("weight tiers must cover ratios down to 0".into());
        }
        for i in 0..4 {
            if !(t[i].weight_lo > 0.0 && t[i].weight_lo < t[i].weight_hi && t[i].weight_hi <= 1.0) {
                return bad(format!("tier {i} weight range must sit inside (0,1]"));
            }
            if i > 0 && t[i].ratio_lower >= t[i - 1].ratio_lower {
                return bad("tier ratio bounds must strictly descend".into());
            }
        }
        Ok(())
    }
}

/// A population member: a minority row plus the fitness ingredients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Individual {
    /// Row index in the fit set current at creation time.
    pub row: usize,
    pub minority_label_weight: f64,
    pub delta_fscore: f64,
    pub fitness: f64,
}

/// Reproduction-eligible individuals; removal from here never removes the
/// underlying row from the dataset.
pub type Population = Vec<Individual>;

/// Tier lookup followed by one uniform draw inside the tier's half-open
/// weight range.
pub fn minority_label_weight(ratio: f64, tiers: &[WeightTier; 4], rng: &mut Prng) -> f64 {
    debug_assert!((0.0..=1.0).contains(&ratio), "ratio out of range: {ratio}");
    let tier = tiers
        .iter()
        .find(|t| ratio >= t.ratio_lower)
        .unwrap_or(&tiers[3]);
    rng.uniform(tier.weight_lo, tier.weight_hi)
}

/// `beta * weight + (1 - beta) * delta_f`.
pub fn fitness(weight: f64, delta_f: f64, beta: f64) -> f64 {
    beta * weight + (1.0 - beta) * delta_f
}

/// Trains a fresh tree on `fit_set` and returns the minority-positive F1 of
/// its predictions on `validation`.
pub fn evaluate_dataset(
    fit_set: &Dataset,
    validation: &Dataset,
    tree_params: &TreeParams,
) -> Result<f64, ResampleError> {
    if validation.n_rows() == 0 || validation.minority_count() == 0 {
        return Err(ResampleError::DegenerateValidation);
    }
    let tree = DecisionTree::fit(fit_set, tree_params)?;
    let mut y_pred = Vec::with_capacity(validation.n_rows());
    for i in 0..validation.n_rows() {
        y_pred.push(tree.predict(validation.row(i))?);
    }
    let cm = confusion(validation.minority_flags(), &y_pred)?;
    Ok(f1_score(&cm))
}

/// First parent plus the uniformly drawn neighbor it will cross with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectedParents {
    pub first: Individual,
    /// Row index of the second parent in the current fit set.
    pub second_row: usize,
    /// Whether the first parent came from the explore branch.
    pub explored: bool,
}

/// With probability `explore_prob` the first parent is uniform over the
/// population, otherwise it is the fittest member (ties to the lowest row
/// index). The second parent is uniform over the first's k nearest minority
/// neighbors, or over all available minority rows when fewer than k exist.
pub fn select_parents(
    population: &Population,
    ds: &Dataset,
    params: &GenSampleParams,
    rng: &mut Prng,
) -> Result<SelectedParents, ResampleError> {
    assert!(!population.is_empty(), "population must not be empty");
    let explored = rng.chance(params.explore_prob);
    let first = if explored {
        population[rng.index(population.len())]
    } else {
        *population
            .iter()
            .reduce(|best, ind| {
                if ind.fitness > best.fitness
                    || (ind.fitness == best.fitness && ind.row < best.row)
                {
                    ind
                } else {
                    best
                }
            })
            .expect("non-empty population")
    };
    let neighbors = knn(ds, first.row, params.k, ClassFilter::Minority)
        .map_err(|_| ResampleError::NoSecondParent)?;
    let second_row = neighbors.indices[rng.index(neighbors.len())];
    Ok(SelectedParents {
        first,
        second_row,
        explored,
    })
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminationReason {
    /// Generated count reached `target_new_samples`.
    TargetReached,
    /// The kept child's validation F1 fell below the best seen; the child
    /// was rolled back.
    Degradation,
}

/// One crossover iteration as recorded in the trace. Parent indices refer to
/// the fit set as it stood at that iteration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceIteration {
    pub iteration: usize,
    pub parent1: usize,
    pub parent2: usize,
    pub lambda: f64,
    pub child1: Vec<f64>,
    pub child2: Vec<f64>,
    /// 1 or 2: which child won the evaluation.
    pub chosen: u8,
    pub f1_before: f64,
    pub f1_after: f64,
    pub explored: bool,
    /// False only for a final rolled-back child.
    pub accepted: bool,
}

/// Full run record: every iteration plus how and why the loop ended.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResampleTrace {
    pub target_new_samples: usize,
    pub initial_f1: f64,
    pub final_f1: f64,
    pub generated: usize,
    pub termination: TerminationReason,
    pub iterations: Vec<TraceIteration>,
}

impl ResampleTrace {
    /// Line-delimited JSON: one record per iteration, then a summary line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for it in &self.iterations {
            out.push_str(&serde_json::to_string(it).expect("trace serializes"));
            out.push('\n');
        }
        let summary = serde_json::json!({
            "target_new_samples": self.target_new_samples,
            "initial_f1": self.initial_f1,
            "final_f1": self.final_f1,
            "generated": self.generated,
            "termination": self.termination,
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

/// Runs the genetic oversampler on a training set.
///
/// Carves a stratified validation set, seeds the population with every
/// minority row of the remaining fit set, then iterates
/// select/crossover/evaluate/replace until `|train| - 2*|minority|`
/// synthetics exist or a kept child would drop validation F1 below the best
/// seen (that child is rolled back). Returns the original training rows plus
/// all retained synthetics, and the run trace.
pub fn gensample(
    train: &Dataset,
    params: &GenSampleParams,
) -> Result<(Dataset, ResampleTrace), ResampleError> {
    params.validate()?;
    let min_count = train.minority_count();
    let maj_count = train.majority_count();
    if min_count < 2 {
        return Err(ResampleError::TooFewMinority {
            need: 2,
            have: min_count,
        });
    }
    if min_count >= maj_count {
        return Err(ResampleError::NotImbalanced {
            minority: min_count,
            majority: maj_count,
        });
    }
    let target = train.n_rows() - 2 * min_count;

    let mut rng = Prng::seed_from_u64(params.seed);
    let spec = SplitSpec {
        validation_fraction: params.validation_fraction,
        stratified: true,
        ..SplitSpec::default()
    };
    let (mut fit_set, validation) = carve_validation(train, &spec, &mut rng)?;
    if validation.minority_count() == 0 {
        return Err(ResampleError::DegenerateValidation);
    }
    if fit_set.minority_count() < 2 {
        return Err(ResampleError::NoSecondParent);
    }

    let ratio_k = |rows: usize| params.k.min(rows - 1);
    let mut population: Population = Vec::with_capacity(fit_set.minority_count());
    for row in fit_set.minority_indices() {
        let ratio = majority_neighbors_ratio(&fit_set, row, ratio_k(fit_set.n_rows()))?;
        let weight = minority_label_weight(ratio, &params.weight_tiers, &mut rng);
        population.push(Individual {
            row,
            minority_label_weight: weight,
            delta_fscore: 0.0,
            fitness: fitness(weight, 0.0, params.beta),
        });
    }

    let initial_f1 = evaluate_dataset(&fit_set, &validation, &params.tree_params)?;
    let mut current_f1 = initial_f1;
    let mut iterations: Vec<TraceIteration> = Vec::new();
    let mut synthetics: Vec<Vec<f64>> = Vec::new();
    let mut termination = TerminationReason::TargetReached;

    while synthetics.len() < target {
        let parents = select_parents(&population, &fit_set, params, &mut rng)?;
        let Crossover {
            lambda,
            child1,
            child2,
        } = crossover(
            fit_set.row(parents.first.row),
            fit_set.row(parents.second_row),
            &mut rng,
        );

        fit_set.push_row(&child1, true);
        let f1_child1 = evaluate_dataset(&fit_set, &validation, &params.tree_params)?;
        fit_set.pop_row();
        fit_set.push_row(&child2, true);
        let f1_child2 = evaluate_dataset(&fit_set, &validation, &params.tree_params)?;
        fit_set.pop_row();

        let first_wins = f1_child1 >= f1_child2;
        let (chosen_child, f1_after) = if first_wins {
            (&child1, f1_child1)
        } else {
            (&child2, f1_child2)
        };
        let accepted = f1_after >= current_f1;
        iterations.push(TraceIteration {
            iteration: iterations.len(),
            parent1: parents.first.row,
            parent2: parents.second_row,
            lambda,
            child1: child1.clone(),
            child2: child2.clone(),
            chosen: if first_wins { 1 } else { 2 },
            f1_before: current_f1,
            f1_after,
            explored: parents.explored,
            accepted,
        });
        if !accepted {
            termination = TerminationReason::Degradation;
            break;
        }

        fit_set.push_row(chosen_child, true);
        let new_row = fit_set.n_rows() - 1;
        let ratio = majority_neighbors_ratio(&fit_set, new_row, ratio_k(fit_set.n_rows()))?;
        let weight = minority_label_weight(ratio, &params.weight_tiers, &mut rng);
        let delta = f1_after - current_f1;
        let newcomer = Individual {
            row: new_row,
            minority_label_weight: weight,
            delta_fscore: delta,
            fitness: fitness(weight, delta, params.beta),
        };
        let least_fit = population
            .iter()
            .enumerate()
            .reduce(|worst, (i, ind)| {
                let (_, w) = worst;
                if ind.fitness < w.fitness || (ind.fitness == w.fitness && ind.row < w.row) {
                    (i, ind)
                } else {
                    worst
                }
            })
            .expect("non-empty population")
            .0;
        population[least_fit] = newcomer;
        synthetics.push(chosen_child.clone());
        current_f1 = f1_after;
    }

    let mut augmented = train.clone();
    for row in &synthetics {
        augmented.push_row(row, true);
    }
    let trace = ResampleTrace {
        target_new_samples: target,
        initial_f1,
        final_f1: current_f1,
        generated: synthetics.len(),
        termination,
        iterations,
    };
    Ok((augmented, trace))
}
