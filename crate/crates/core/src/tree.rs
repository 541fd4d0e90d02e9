//! From-scratch binary decision tree with gain-ratio (C4.5 style) or Gini
//! splitting. Thresholds are midpoints between adjacent observed values, a
//! row routes left when `value <= threshold`, and leaf ties resolve toward
//! the minority class so rare-class predictions are never silently erased.

use serde::Deserialize;

use crate::data::Dataset;

#[derive(Debug, thiserror::Error)]
pub enum TreeError {
    #[error("cannot fit a tree on an empty dataset")]
    EmptyDataset,
    #[error("invalid tree parameters: {0}")]
    InvalidParams(String),
    #[error("row has {found} features, tree was fit on {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitCriterion {
    GainRatio,
    Gini,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(default)]
pub struct TreeParams {
    /// Maximum number of split levels; `None` grows until purity.
    pub max_depth: Option<usize>,
    pub min_samples_leaf: usize,
    pub split_criterion: SplitCriterion,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams {
            max_depth: None,
            // C4.5's minobj default; keeps leaves from memorizing single rows.
            min_samples_leaf: 2,
            split_criterion: SplitCriterion::GainRatio,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Leaf {
        minority: usize,
        majority: usize,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: Box<Node>,
        right: Box<Node>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree {
    root: Node,
    n_features: usize,
}

impl DecisionTree {
    pub fn fit(ds: &Dataset, params: &TreeParams) -> Result<Self, TreeError> {
        if ds.n_rows() == 0 {
            return Err(TreeError::EmptyDataset);
        }
        if params.min_samples_leaf == 0 {
            return Err(TreeError::InvalidParams("min_samples_leaf must be >= 1".into()));
        }
        if params.max_depth == Some(0) {
            return Err(TreeError::InvalidParams(
                "max_depth must be >= 1 or unlimited".into(),
            ));
        }
        let rows: Vec<usize> = (0..ds.n_rows()).collect();
        Ok(DecisionTree {
            root: grow(ds, rows, params, 0),
            n_features: ds.n_features(),
        })
    }

    /// True when the row lands in a minority-plurality leaf (ties count as
    /// minority).
    pub fn predict(&self, row: &[f64]) -> Result<bool, TreeError> {
        let (minority, majority) = self.leaf_counts(row)?;
        Ok(minority >= majority)
    }

    /// Minority frequency at the reached leaf; `>= 0.5` exactly when
    /// `predict` returns minority.
    pub fn predict_score(&self, row: &[f64]) -> Result<f64, TreeError> {
        let (minority, majority) = self.leaf_counts(row)?;
        Ok(minority as f64 / (minority + majority) as f64)
    }

    fn leaf_counts(&self, row: &[f64]) -> Result<(usize, usize), TreeError> {
        if row.len() != self.n_features {
            return Err(TreeError::DimensionMismatch {
                expected: self.n_features,
                found: row.len(),
            });
        }
        let mut node = &self.root;
        loop {
            match node {
                Node::Leaf { minority, majority } => return Ok((*minority, *majority)),
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    node = if row[*feature] <= *threshold { left } else { right };
                }
            }
        }
    }

    /// Number of split levels on the longest path (a lone leaf has depth 0).
    pub fn depth(&self) -> usize {
        fn walk(node: &Node) -> usize {
            match node {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + walk(left).max(walk(right)),
            }
        }
        walk(&self.root)
    }

    /// Root split, if the tree is not a single leaf.
    pub fn root_split(&self) -> Option<(usize, f64)> {
        match &self.root {
            Node::Leaf { .. } => None,
            Node::Split { feature, threshold, .. } => Some((*feature, *threshold)),
        }
    }

    /// Plain-text nested dump for debugging; not a stability contract.
    pub fn dump(&self) -> String {
        fn walk(node: &Node, indent: usize, out: &mut String) {
            let pad = "  ".repeat(indent);
            match node {
                Node::Leaf { minority, majority } => {
                    out.push_str(&format!("{pad}leaf minority={minority} majority={majority}\n"));
                }
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    out.push_str(&format!("{pad}split f{feature} <= {threshold}\n"));
                    walk(left, indent + 1, out);
                    walk(right, indent + 1, out);
                }
            }
        }
        let mut out = String::new();
        walk(&self.root, 0, &mut out);
        out
    }
}

fn grow(ds: &Dataset, rows: Vec<usize>, params: &TreeParams, depth: usize) -> Node {
    let minority = rows.iter().filter(|&&r| ds.is_minority(r)).count();
    let majority = rows.len() - minority;
    let depth_reached = params.max_depth.is_some_and(|md| depth >= md);
    if minority == 0 || majority == 0 || depth_reached || rows.len() < 2 * params.min_samples_leaf {
        return Node::Leaf { minority, majority };
    }
    let Some((feature, threshold)) = best_split(ds, &rows, minority, params) else {
        return Node::Leaf { minority, majority };
    };
    let (left_rows, right_rows): (Vec<usize>, Vec<usize>) = rows
        .into_iter()
        .partition(|&r| ds.row(r)[feature] <= threshold);
    Node::Split {
        feature,
        threshold,
        left: Box::new(grow(ds, left_rows, params, depth + 1)),
        right: Box::new(grow(ds, right_rows, params, depth + 1)),
    }
}

/// Exhaustive scan over every (feature, midpoint threshold) candidate.
/// Strictly-greater comparison keeps the first best, so ties resolve to the
/// lowest feature index, then the lowest threshold.
fn best_split(
    ds: &Dataset,
    rows: &[usize],
    minority: usize,
    params: &TreeParams,
) -> Option<(usize, f64)> {
    let n = rows.len();
    let parent_entropy = entropy(minority, n - minority);
    let parent_gini = gini(minority, n - minority);
    let mut best: Option<(f64, usize, f64)> = None;
    let mut col: Vec<(f64, bool)> = Vec::with_capacity(n);
    for feature in 0..ds.n_features() {
        col.clear();
        col.extend(rows.iter().map(|&r| (ds.row(r)[feature], ds.is_minority(r))));
        col.sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).expect("finite features"));
        let mut left_n = 0usize;
        let mut left_min = 0usize;
        for i in 1..n {
            left_n += 1;
            if col[i - 1].1 {
                left_min += 1;
            }
            if col[i].0 == col[i - 1].0 {
                continue;
            }
            if left_n < params.min_samples_leaf || n - left_n < params.min_samples_leaf {
                continue;
            }
            let right_n = n - left_n;
            let right_min = minority - left_min;
            // Zero-gain splits stay admissible (clamping away float noise):
            // patterns like XOR are only separable through them, and mixed
            // nodes must keep splitting for training accuracy 1.0 to hold on
            // conflict-free data.
            let score = match params.split_criterion {
                SplitCriterion::GainRatio => {
                    let children = weighted(
                        entropy(left_min, left_n - left_min),
                        left_n,
                        entropy(right_min, right_n - right_min),
                        right_n,
                    );
                    let gain = (parent_entropy - children).max(0.0);
                    gain / split_info(left_n, right_n)
                }
                SplitCriterion::Gini => {
                    let children = weighted(
                        gini(left_min, left_n - left_min),
                        left_n,
                        gini(right_min, right_n - right_min),
                        right_n,
                    );
                    (parent_gini - children).max(0.0)
                }
            };
            if best.is_none() || score > best.unwrap().0 {
                let lo = col[i - 1].0;
                let hi = col[i].0;
                let mut threshold = lo + (hi - lo) / 2.0;
                // Rounding may push the midpoint onto hi; fall back to lo so
                // `<= threshold` reproduces the scanned partition exactly.
                if threshold >= hi {
                    threshold = lo;
                }
                best = Some((score, feature, threshold));
            }
        }
    }
    best.map(|(_, f, t)| (f, t))
}

fn weighted(left_impurity: f64, left_n: usize, right_impurity: f64, right_n: usize) -> f64 {
    let n = (left_n + right_n) as f64;
    (left_n as f64 / n) * left_impurity + (right_n as f64 / n) * right_impurity
}

fn entropy(a: usize, b: usize) -> f64 {
    let n = (a + b) as f64;
    let term = |c: usize| {
        if c == 0 {
            0.0
        } else {
            let p = c as f64 / n;
            -p * p.log2()
        }
    };
    term(a) + term(b)
}

fn split_info(left_n: usize, right_n: usize) -> f64 {
    entropy(left_n, right_n)
}

fn gini(a: usize, b: usize) -> f64 {
    let n = (a + b) as f64;
    let pa = a as f64 / n;
    let pb = b as f64 / n;
    1.0 - pa * pa - pb * pb
}
