//! CART-style regression trees fit to boosting gradients.
//!
//! Split search is exact greedy: every midpoint between distinct consecutive
//! feature values is a candidate, scored by squared-error reduction of the
//! gradient targets. Ties resolve to the lowest feature index, then the
//! lowest threshold. Leaf values are a single Newton step
//! `scale * sum(grad) / sum(hess)`.

use serde::{Deserialize, Serialize};

use crate::features::FeatureVector;
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TreeNode<F> {
    Split {
        feature: usize,
        threshold: F,
        left: usize,
        right: usize,
    },
    Leaf {
        value: F,
    },
}

/// A regression tree stored as a flat node list with the root at index 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionTree<F> {
    pub nodes: Vec<TreeNode<F>>,
}

impl<F: Scalar> RegressionTree<F> {
    /// Routes a feature vector to its leaf value. Values at or below a split
    /// threshold go left.
    pub fn predict(&self, features: &FeatureVector<F>) -> F {
        let x = features.values();
        let mut at = 0usize;
        loop {
            match &self.nodes[at] {
                TreeNode::Leaf { value } => return *value,
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if x[*feature] <= *threshold {
                        *left
                    } else {
                        *right
                    };
                }
            }
        }
    }

    /// Maximum number of splits on any root-to-leaf path.
    pub fn depth(&self) -> usize {
        self.depth_from(0)
    }

    fn depth_from(&self, at: usize) -> usize {
        match &self.nodes[at] {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { left, right, .. } => {
                1 + self.depth_from(*left).max(self.depth_from(*right))
            }
        }
    }

    /// Feature and threshold of the root split, if the tree is not a stump
    /// leaf.
    pub fn root_split(&self) -> Option<(usize, F)> {
        match self.nodes.first() {
            Some(TreeNode::Split {
                feature, threshold, ..
            }) => Some((*feature, *threshold)),
            _ => None,
        }
    }
}

pub(crate) struct TreeParams<F> {
    pub max_depth: usize,
    pub min_samples_leaf: usize,
    /// Multiplier applied to the Newton step: learning rate times the
    /// multi-class correction (K-1)/K.
    pub leaf_scale: F,
}

struct BestSplit<F> {
    gain: F,
    feature: usize,
    threshold: F,
}

/// Fits one regression tree to the gradient targets of the given rows.
pub(crate) fn fit_tree<F: Scalar>(
    data: &[FeatureVector<F>],
    rows: &[usize],
    grad: &[F],
    hess: &[F],
    params: &TreeParams<F>,
) -> RegressionTree<F> {
    let mut nodes = Vec::new();
    build_node(data, rows.to_vec(), grad, hess, params, 0, &mut nodes);
    RegressionTree { nodes }
}

fn leaf_value<F: Scalar>(rows: &[usize], grad: &[F], hess: &[F], params: &TreeParams<F>) -> F {
    let mut num = F::zero();
    let mut den = F::zero();
    for &r in rows {
        num += grad[r];
        den += hess[r];
    }
    if den <= F::min_positive_value() {
        F::zero()
    } else {
        params.leaf_scale * num / den
    }
}

fn build_node<F: Scalar>(
    data: &[FeatureVector<F>],
    rows: Vec<usize>,
    grad: &[F],
    hess: &[F],
    params: &TreeParams<F>,
    depth: usize,
    nodes: &mut Vec<TreeNode<F>>,
) -> usize {
    let at = nodes.len();
    if depth >= params.max_depth || rows.len() < 2 * params.min_samples_leaf || rows.len() < 2 {
        nodes.push(TreeNode::Leaf {
            value: leaf_value(&rows, grad, hess, params),
        });
        return at;
    }
    let Some(best) = find_best_split(data, &rows, grad, params) else {
        nodes.push(TreeNode::Leaf {
            value: leaf_value(&rows, grad, hess, params),
        });
        return at;
    };
    // Stable partition keeps row order deterministic.
    let (left_rows, right_rows): (Vec<usize>, Vec<usize>) = rows
        .iter()
        .partition(|&&r| data[r].values()[best.feature] <= best.threshold);
    nodes.push(TreeNode::Split {
        feature: best.feature,
        threshold: best.threshold,
        left: 0,
        right: 0,
    });
    let left = build_node(data, left_rows, grad, hess, params, depth + 1, nodes);
    let right = build_node(data, right_rows, grad, hess, params, depth + 1, nodes);
    if let TreeNode::Split {
        left: l, right: r, ..
    } = &mut nodes[at]
    {
        *l = left;
        *r = right;
    }
    at
}

fn find_best_split<F: Scalar>(
    data: &[FeatureVector<F>],
    rows: &[usize],
    grad: &[F],
    params: &TreeParams<F>,
) -> Option<BestSplit<F>> {
    let n_features = data[rows[0]].arity();
    let n = crate::count_to_scalar::<F>(rows.len());
    let total: F = rows.iter().fold(F::zero(), |acc, &r| acc + grad[r]);
    let parent_score = total * total / n;
    let min_leaf = params.min_samples_leaf.max(1);

    let mut best: Option<BestSplit<F>> = None;
    let mut order: Vec<usize> = Vec::with_capacity(rows.len());
    for feature in 0..n_features {
        order.clear();
        order.extend_from_slice(rows);
        // Sort by value, then row index, for a fully deterministic scan.
        order.sort_unstable_by(|&a, &b| {
            data[a].values()[feature]
                .partial_cmp(&data[b].values()[feature])
                .expect("finite feature values")
                .then(a.cmp(&b))
        });
        let mut left_sum = F::zero();
        let mut left_n = 0usize;
        for window in 0..order.len() - 1 {
            let row = order[window];
            left_sum += grad[row];
            left_n += 1;
            let value = data[row].values()[feature];
            let next_value = data[order[window + 1]].values()[feature];
            if next_value <= value {
                continue; // same value group, no boundary here
            }
            let right_n = order.len() - left_n;
            if left_n < min_leaf || right_n < min_leaf {
                continue;
            }
            let two = F::one() + F::one();
            let threshold = (value + next_value) / two;
            let right_sum = total - left_sum;
            let score = left_sum * left_sum / crate::count_to_scalar::<F>(left_n)
                + right_sum * right_sum / crate::count_to_scalar::<F>(right_n);
            let gain = score - parent_score;
            // Strictly-greater keeps the lowest feature index and lowest
            // threshold among ties.
            if gain > F::zero() && best.as_ref().is_none_or(|b| gain > b.gain) {
                best = Some(BestSplit {
                    gain,
                    feature,
                    threshold,
                });
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(values: &[f64]) -> FeatureVector<f64> {
        FeatureVector::from_values(values.to_vec())
    }

    fn params(max_depth: usize) -> TreeParams<f64> {
        TreeParams {
            max_depth,
            min_samples_leaf: 1,
            leaf_scale: 1.0,
        }
    }

    #[test]
    fn splits_on_clean_boundary_with_midpoint_threshold() {
        let data: Vec<_> = [0.0, 1.0, 10.0, 11.0].iter().map(|&x| fv(&[x])).collect();
        let grad = vec![-1.0, -1.0, 1.0, 1.0];
        let hess = vec![1.0; 4];
        let tree = fit_tree(&data, &[0, 1, 2, 3], &grad, &hess, &params(2));
        let (feature, threshold) = tree.root_split().unwrap();
        assert_eq!(feature, 0);
        assert_eq!(threshold, 5.5);
        assert_eq!(tree.predict(&fv(&[0.5])), -1.0);
        assert_eq!(tree.predict(&fv(&[100.0])), 1.0);
    }

    #[test]
    fn constant_targets_become_a_single_leaf() {
        let data: Vec<_> = [1.0, 2.0, 3.0].iter().map(|&x| fv(&[x])).collect();
        let grad = vec![0.5; 3];
        let hess = vec![0.25; 3];
        let tree = fit_tree(&data, &[0, 1, 2], &grad, &hess, &params(3));
        assert_eq!(tree.nodes.len(), 1);
        // Newton step: sum(grad)/sum(hess) = 1.5/0.75
        assert!((tree.predict(&fv(&[9.0])) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn respects_max_depth() {
        let data: Vec<_> = (0..32).map(|i| fv(&[i as f64])).collect();
        let grad: Vec<f64> = (0..32).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let hess = vec![1.0; 32];
        let rows: Vec<usize> = (0..32).collect();
        for depth in 1..4 {
            let tree = fit_tree(&data, &rows, &grad, &hess, &params(depth));
            assert!(tree.depth() <= depth);
        }
    }

    #[test]
    fn min_samples_leaf_blocks_narrow_splits() {
        let data: Vec<_> = [0.0, 1.0, 2.0, 3.0].iter().map(|&x| fv(&[x])).collect();
        let grad = vec![5.0, -1.0, -1.0, -1.0];
        let hess = vec![1.0; 4];
        let p = TreeParams {
            max_depth: 1,
            min_samples_leaf: 2,
            leaf_scale: 1.0,
        };
        let tree = fit_tree(&data, &[0, 1, 2, 3], &grad, &hess, &p);
        if let Some((_, threshold)) = tree.root_split() {
            // The isolated 5.0 row cannot be split off alone.
            assert_eq!(threshold, 1.5);
        } else {
            panic!("expected a split");
        }
    }

    #[test]
    fn zero_hessian_sum_gives_zero_leaf() {
        let data: Vec<_> = [1.0, 2.0].iter().map(|&x| fv(&[x])).collect();
        let grad = vec![0.3, 0.3];
        let hess = vec![0.0, 0.0];
        let p = TreeParams {
            max_depth: 0,
            min_samples_leaf: 1,
            leaf_scale: 1.0,
        };
        let tree = fit_tree(&data, &[0, 1], &grad, &hess, &p);
        assert_eq!(tree.predict(&fv(&[1.0])), 0.0);
    }
}
