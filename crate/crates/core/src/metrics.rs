//! Confusion-matrix metrics with the minority class as positive, a
//! rank-based (Mann-Whitney) AUC, and the cross-algorithm winning-times
//! tabulation. Any 0/0 metric is defined as 0.

#[derive(Debug, thiserror::Error)]
pub enum MetricError {
    #[error("y_true has {true_len} entries, y_pred has {pred_len}")]
    LengthMismatch { true_len: usize, pred_len: usize },
    #[error("cannot compute metrics on empty input")]
    Empty,
    #[error("ragged metric table: row {row} has {found} entries, expected {expected}")]
    RaggedTable {
        row: usize,
        expected: usize,
        found: usize,
    },
}

/// 2x2 table with minority = positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfusionMatrix {
    pub true_pos: usize,
    pub false_pos: usize,
    pub true_neg: usize,
    pub false_neg: usize,
}

impl ConfusionMatrix {
    pub fn total(&self) -> usize {
        self.true_pos + self.false_pos + self.true_neg + self.false_neg
    }
}

/// Counts predictions against truth; `true` marks the minority class.
pub fn confusion(y_true: &[bool], y_pred: &[bool]) -> Result<ConfusionMatrix, MetricError> {
    if y_true.len() != y_pred.len() {
        return Err(MetricError::LengthMismatch {
            true_len: y_true.len(),
            pred_len: y_pred.len(),
        });
    }
    if y_true.is_empty() {
        return Err(MetricError::Empty);
    }
    let mut cm = ConfusionMatrix {
        true_pos: 0,
        false_pos: 0,
        true_neg: 0,
        false_neg: 0,
    };
    for (&t, &p) in y_true.iter().zip(y_pred) {
        match (t, p) {
            (true, true) => cm.true_pos += 1,
            (false, true) => cm.false_pos += 1,
            (false, false) => cm.true_neg += 1,
            (true, false) => cm.false_neg += 1,
        }
    }
    Ok(cm)
}

/// The six reported metrics, each in [0,1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricSet {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub accuracy: f64,
    pub gmean: f64,
    pub auc: f64,
}

impl MetricSet {
    /// Report column order.
    pub const NAMES: [&'static str; 6] = ["precision", "recall", "f1", "auc", "accuracy", "gmean"];

    /// Values in [`MetricSet::NAMES`] order.
    pub fn values(&self) -> [f64; 6] {
        [
            self.precision,
            self.recall,
            self.f1,
            self.auc,
            self.accuracy,
            self.gmean,
        ]
    }

    pub fn from_values(v: [f64; 6]) -> Self {
        MetricSet {
            precision: v[0],
            recall: v[1],
            f1: v[2],
            auc: v[3],
            accuracy: v[4],
            gmean: v[5],
        }
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Harmonic mean of precision and recall, 0 when both vanish.
pub fn f1_score(cm: &ConfusionMatrix) -> f64 {
    let precision = ratio(cm.true_pos, cm.true_pos + cm.false_pos);
    let recall = ratio(cm.true_pos, cm.true_pos + cm.false_neg);
    if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    }
}

/// Derives all six metrics from a confusion matrix plus per-row scores for
/// the rank AUC. `scores[i]` must be the minority-class score of the row
/// labelled by `y_true[i]`.
pub fn metric_set(cm: &ConfusionMatrix, y_true: &[bool], scores: &[f64]) -> MetricSet {
    assert_eq!(cm.total(), y_true.len(), "confusion matrix inconsistent with labels");
    let precision = ratio(cm.true_pos, cm.true_pos + cm.false_pos);
    let recall = ratio(cm.true_pos, cm.true_pos + cm.false_neg);
    let f1 = f1_score(cm);
    let accuracy = ratio(cm.true_pos + cm.true_neg, cm.total());
    let negative_accuracy = ratio(cm.true_neg, cm.true_neg + cm.false_pos);
    let gmean = (recall * negative_accuracy).sqrt();
    let auc = rank_auc(y_true, scores);
    MetricSet {
        precision,
        recall,
        f1,
        accuracy,
        gmean,
        auc,
    }
}

/// Probability that a random positive outscores a random negative, ties
/// counted as one half; 0.5 when only one class is present. Computed from
/// midranks in doubled integer arithmetic, so it matches exhaustive pair
/// counting exactly.
pub fn rank_auc(y_true: &[bool], scores: &[f64]) -> f64 {
    assert_eq!(y_true.len(), scores.len(), "one score per label");
    let n = y_true.len();
    let n_pos = y_true.iter().filter(|&&t| t).count();
    let n_neg = n - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return 0.5;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| scores[a].partial_cmp(&scores[b]).expect("finite scores"));
    // Twice the positive rank sum, accumulated per tie group.
    let mut doubled_rank_sum: u64 = 0;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        // Ranks start..end (1-based) share the midrank (start+end+1)/2.
        let doubled_midrank = (start + end + 1) as u64;
        let positives_in_group = order[start..end]
            .iter()
            .filter(|&&i| y_true[i])
            .count() as u64;
        doubled_rank_sum += doubled_midrank * positives_in_group;
        start = end;
    }
    let doubled_u = doubled_rank_sum - (n_pos * (n_pos + 1)) as u64;
    doubled_u as f64 / (2 * n_pos * n_neg) as f64
}

/// Per-algorithm, per-metric count of datasets where the algorithm attains
/// the best value; exact ties credit every tied algorithm.
/// `table[dataset][algorithm]`.
pub fn winning_times(table: &[Vec<MetricSet>]) -> Result<Vec<[usize; 6]>, MetricError> {
    if table.is_empty() || table[0].is_empty() {
        return Err(MetricError::Empty);
    }
    let n_algos = table[0].len();
    for (row, sets) in table.iter().enumerate() {
        if sets.len() != n_algos {
            return Err(MetricError::RaggedTable {
                row,
                expected: n_algos,
                found: sets.len(),
            });
        }
    }
    let mut wins = vec![[0usize; 6]; n_algos];
    for sets in table {
        for m in 0..6 {
            let best = sets
                .iter()
                .map(|s| s.values()[m])
                .fold(f64::NEG_INFINITY, f64::max);
            for (a, set) in sets.iter().enumerate() {
                if set.values()[m] == best {
                    wins[a][m] += 1;
                }
            }
        }
    }
    Ok(wins)
}
