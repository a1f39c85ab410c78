//! Multi-class gradient boosting over regression trees.
//!
//! Training follows the classical softmax (multinomial deviance) scheme:
//! per-class scores start at the log class priors, and every round fits one
//! regression tree per class to the negative gradient
//! `one_hot(label) - probability`, with single-Newton-step leaf values scaled
//! by the learning rate and the (K-1)/K multi-class correction. Prediction
//! sums the per-class trees and softmaxes the result.
//!
//! The module also provides the seeded stratified 70/30-style split and
//! stratified k-fold cross-validation used for training runs.

mod serial;
mod tree;

pub use tree::{RegressionTree, TreeNode};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::features::FeatureVector;
use crate::metrics;
use crate::pipeline::ScalarTag;
use crate::{count_to_scalar, Scalar};

/// One featurized word with its gold tag.
#[derive(Debug, Clone)]
pub struct LabeledExample<F> {
    pub features: FeatureVector<F>,
    pub label: ScalarTag,
}

/// Boosting hyperparameters. `n_rounds = 0` is allowed and yields a
/// prior-only model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperparameters<F> {
    pub n_rounds: usize,
    pub learning_rate: F,
    pub max_depth: usize,
    pub min_samples_leaf: usize,
    pub seed: u64,
}

impl<F: Scalar> Default for Hyperparameters<F> {
    fn default() -> Self {
        Hyperparameters {
            n_rounds: 100,
            learning_rate: F::from_f64(0.1).expect("0.1 representable"),
            max_depth: 3,
            min_samples_leaf: 1,
            seed: 42,
        }
    }
}

impl<F: Scalar> Hyperparameters<F> {
    fn validate(&self) -> Result<()> {
        if !(self.learning_rate > F::zero() && self.learning_rate <= F::one()) {
            return Err(Error::InvalidHyperparameters(
                "learning_rate must be in (0, 1]".to_string(),
            ));
        }
        if self.max_depth == 0 {
            return Err(Error::InvalidHyperparameters(
                "max_depth must be positive".to_string(),
            ));
        }
        if self.min_samples_leaf == 0 {
            return Err(Error::InvalidHyperparameters(
                "min_samples_leaf must be positive".to_string(),
            ));
        }
        Ok(())
    }
}

/// A trained multi-class boosted ensemble.
#[derive(Debug, Clone)]
pub struct BoostedEnsemble<F> {
    classes: Vec<ScalarTag>,
    arity: usize,
    base_scores: Vec<F>,
    /// `trees[round][class]`, `n_rounds * |classes|` trees in total.
    trees: Vec<Vec<RegressionTree<F>>>,
    hyperparameters: Hyperparameters<F>,
    /// Mean training log-loss after each round; not serialized.
    train_losses: Vec<F>,
}

/// Classification outcome: the argmax tag plus per-class probabilities
/// aligned with [`BoostedEnsemble::classes`].
#[derive(Debug, Clone)]
pub struct Prediction<F> {
    pub tag: ScalarTag,
    pub probabilities: Vec<F>,
}

/// Softmax with max-subtraction; the output sums to 1 up to float rounding.
pub fn softmax<F: Scalar>(scores: &[F]) -> Vec<F> {
    let max = scores
        .iter()
        .copied()
        .fold(F::neg_infinity(), |a, b| if b > a { b } else { a });
    let exps: Vec<F> = scores.iter().map(|&s| (s - max).exp()).collect();
    let sum = exps.iter().fold(F::zero(), |a, &b| a + b);
    exps.into_iter().map(|e| e / sum).collect()
}

impl<F: Scalar> BoostedEnsemble<F> {
    pub fn classes(&self) -> &[ScalarTag] {
        &self.classes
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn base_scores(&self) -> &[F] {
        &self.base_scores
    }

    pub fn trees(&self) -> &[Vec<RegressionTree<F>>] {
        &self.trees
    }

    pub fn hyperparameters(&self) -> &Hyperparameters<F> {
        &self.hyperparameters
    }

    /// Mean training log-loss after each boosting round.
    pub fn train_losses(&self) -> &[F] {
        &self.train_losses
    }

    fn raw_scores(&self, features: &FeatureVector<F>) -> Vec<F> {
        let mut scores = self.base_scores.clone();
        for round in &self.trees {
            for (k, tree) in round.iter().enumerate() {
                scores[k] += tree.predict(features);
            }
        }
        scores
    }

    /// Predicts the tag and per-class probabilities for one feature vector.
    /// Argmax ties break toward the earlier class in [`Self::classes`].
    pub fn predict(&self, features: &FeatureVector<F>) -> Result<Prediction<F>> {
        if features.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: features.arity(),
            });
        }
        let probabilities = softmax(&self.raw_scores(features));
        let mut best = 0usize;
        for (k, p) in probabilities.iter().enumerate() {
            if *p > probabilities[best] {
                best = k;
            }
        }
        Ok(Prediction {
            tag: self.classes[best],
            probabilities,
        })
    }
}

/// Trains an ensemble with softmax gradient boosting.
pub fn fit<F: Scalar>(
    train: &[LabeledExample<F>],
    hp: &Hyperparameters<F>,
) -> Result<BoostedEnsemble<F>> {
    hp.validate()?;
    if train.is_empty() {
        return Err(Error::DegenerateTraining("no training examples".to_string()));
    }
    let classes: Vec<ScalarTag> = ScalarTag::ALL
        .into_iter()
        .filter(|t| train.iter().any(|e| e.label == *t))
        .collect();
    if classes.len() < 2 {
        return Err(Error::DegenerateTraining(format!(
            "training needs at least 2 distinct labels, found {}",
            classes.len()
        )));
    }
    let arity = train[0].features.arity();
    if let Some(bad) = train.iter().find(|e| e.features.arity() != arity) {
        return Err(Error::ArityMismatch {
            expected: arity,
            found: bad.features.arity(),
        });
    }

    let n = train.len();
    let k_classes = classes.len();
    let class_index: Vec<usize> = train
        .iter()
        .map(|e| classes.iter().position(|c| *c == e.label).expect("present"))
        .collect();
    let features: Vec<FeatureVector<F>> = train.iter().map(|e| e.features.clone()).collect();

    // Initial scores are the log priors, so a zero-round model predicts the
    // class frequencies.
    let n_scalar = count_to_scalar::<F>(n);
    let base_scores: Vec<F> = classes
        .iter()
        .map(|c| {
            let count = train.iter().filter(|e| e.label == *c).count();
            (count_to_scalar::<F>(count) / n_scalar).ln()
        })
        .collect();

    let mut scores: Vec<Vec<F>> = base_scores
        .iter()
        .map(|&b| vec![b; n])
        .collect();

    let newton_factor = if k_classes > 1 {
        count_to_scalar::<F>(k_classes - 1) / count_to_scalar::<F>(k_classes)
    } else {
        F::one()
    };
    let params = tree::TreeParams {
        max_depth: hp.max_depth,
        min_samples_leaf: hp.min_samples_leaf,
        leaf_scale: hp.learning_rate * newton_factor,
    };

    let all_rows: Vec<usize> = (0..n).collect();
    let mut trees: Vec<Vec<RegressionTree<F>>> = Vec::with_capacity(hp.n_rounds);
    let mut train_losses: Vec<F> = Vec::with_capacity(hp.n_rounds);
    let mut grad = vec![F::zero(); n];
    let mut hess = vec![F::zero(); n];

    for _round in 0..hp.n_rounds {
        let probs: Vec<Vec<F>> = (0..n)
            .map(|i| {
                let row_scores: Vec<F> = (0..k_classes).map(|k| scores[k][i]).collect();
                softmax(&row_scores)
            })
            .collect();
        let mut round_trees = Vec::with_capacity(k_classes);
        for k in 0..k_classes {
            for i in 0..n {
                let p = probs[i][k];
                let y = if class_index[i] == k { F::one() } else { F::zero() };
                grad[i] = y - p;
                hess[i] = p * (F::one() - p);
            }
            let tree = tree::fit_tree(&features, &all_rows, &grad, &hess, &params);
            for i in 0..n {
                scores[k][i] += tree.predict(&features[i]);
            }
            round_trees.push(tree);
        }
        trees.push(round_trees);
        train_losses.push(mean_log_loss(&scores, &class_index));
    }

    Ok(BoostedEnsemble {
        classes,
        arity,
        base_scores,
        trees,
        hyperparameters: *hp,
        train_losses,
    })
}

fn mean_log_loss<F: Scalar>(scores: &[Vec<F>], class_index: &[usize]) -> F {
    let n = class_index.len();
    let floor = F::from_f64(1e-15).expect("1e-15 representable");
    let mut total = F::zero();
    for i in 0..n {
        let row_scores: Vec<F> = scores.iter().map(|col| col[i]).collect();
        let probs = softmax(&row_scores);
        let p = probs[class_index[i]].max(floor);
        total -= p.ln();
    }
    total / count_to_scalar::<F>(n)
}

fn class_partitions(labels: &[ScalarTag]) -> Vec<(ScalarTag, Vec<usize>)> {
    ScalarTag::ALL
        .into_iter()
        .filter_map(|tag| {
            let members: Vec<usize> = labels
                .iter()
                .enumerate()
                .filter(|(_, l)| **l == tag)
                .map(|(i, _)| i)
                .collect();
            (!members.is_empty()).then_some((tag, members))
        })
        .collect()
}

fn class_rng(seed: u64, class: ScalarTag) -> ChaCha8Rng {
    // Distinct stream per class so fold assignment depends only on
    // (class, within-class position).
    let mixed = seed ^ (0x9E37_79B9_7F4A_7C15u64).wrapping_mul(class.index() as u64 + 1);
    ChaCha8Rng::seed_from_u64(mixed)
}

/// Seeded stratified split of row indices into (train, test).
///
/// Per class, `round(train_fraction * class_count)` members go to train,
/// clamped so both sides keep at least one member of every class.
pub fn stratified_split_indices(
    labels: &[ScalarTag],
    train_fraction: f64,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::Stratification(format!(
            "train_fraction must be in (0, 1), got {train_fraction}"
        )));
    }
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (tag, mut members) in class_partitions(labels) {
        if members.len() < 2 {
            return Err(Error::Stratification(format!(
                "class {tag} has {} example(s); at least 2 required",
                members.len()
            )));
        }
        let mut rng = class_rng(seed, tag);
        members.shuffle(&mut rng);
        let ideal = (train_fraction * members.len() as f64).round() as usize;
        let take = ideal.clamp(1, members.len() - 1);
        train.extend_from_slice(&members[..take]);
        test.extend_from_slice(&members[take..]);
    }
    Ok((train, test))
}

/// Train and test portions produced by [`stratified_split`].
pub type SplitSets<F> = (Vec<LabeledExample<F>>, Vec<LabeledExample<F>>);

/// Example-level convenience over [`stratified_split_indices`].
pub fn stratified_split<F: Scalar>(
    data: &[LabeledExample<F>],
    train_fraction: f64,
    seed: u64,
) -> Result<SplitSets<F>> {
    let labels: Vec<ScalarTag> = data.iter().map(|e| e.label).collect();
    let (train_idx, test_idx) = stratified_split_indices(&labels, train_fraction, seed)?;
    let pick = |idx: &[usize]| idx.iter().map(|&i| data[i].clone()).collect();
    Ok((pick(&train_idx), pick(&test_idx)))
}

/// Stratified fold assignment: one fold id per row.
///
/// Within each class the positions are permuted by a class-specific seeded
/// RNG and dealt round-robin, so the fold of the j-th member of a class is a
/// function of (class, j) alone and survives any permutation of the dataset
/// rows. Classes with fewer members than folds produce a warning.
pub fn stratified_folds(
    labels: &[ScalarTag],
    k: usize,
    seed: u64,
) -> Result<(Vec<usize>, Vec<String>)> {
    if k < 2 || k > labels.len() {
        return Err(Error::InvalidFoldCount {
            k,
            size: labels.len(),
        });
    }
    let mut folds = vec![0usize; labels.len()];
    let mut warnings = Vec::new();
    for (tag, members) in class_partitions(labels) {
        if members.len() < k {
            warnings.push(format!(
                "class {tag} has {} example(s), fewer than {k} folds; some folds will miss it",
                members.len()
            ));
        }
        let mut positions: Vec<usize> = (0..members.len()).collect();
        let mut rng = class_rng(seed, tag);
        positions.shuffle(&mut rng);
        for (deal, &pos) in positions.iter().enumerate() {
            folds[members[pos]] = deal % k;
        }
    }
    Ok((folds, warnings))
}

/// Accuracy and balanced accuracy of one held-out fold.
#[derive(Debug, Clone)]
pub struct FoldSummary<F> {
    pub fold: usize,
    pub size: usize,
    pub accuracy: F,
    pub balanced_accuracy: F,
}

/// Per-fold metrics plus their means.
#[derive(Debug, Clone)]
pub struct CrossValidation<F> {
    pub folds: Vec<FoldSummary<F>>,
    pub mean_accuracy: F,
    pub mean_balanced_accuracy: F,
    pub warnings: Vec<String>,
}

/// Stratified k-fold cross-validation: fit on k-1 folds, evaluate on the
/// held-out fold, repeat for every fold.
pub fn cross_validate<F: Scalar>(
    data: &[LabeledExample<F>],
    hp: &Hyperparameters<F>,
    k: usize,
) -> Result<CrossValidation<F>> {
    let labels: Vec<ScalarTag> = data.iter().map(|e| e.label).collect();
    let (folds, mut warnings) = stratified_folds(&labels, k, hp.seed)?;
    let mut summaries = Vec::new();
    for fold in 0..k {
        let train: Vec<LabeledExample<F>> = data
            .iter()
            .zip(&folds)
            .filter(|(_, f)| **f != fold)
            .map(|(e, _)| e.clone())
            .collect();
        let eval: Vec<&LabeledExample<F>> = data
            .iter()
            .zip(&folds)
            .filter(|(_, f)| **f == fold)
            .map(|(e, _)| e)
            .collect();
        if eval.is_empty() {
            warnings.push(format!("fold {fold} is empty; skipped"));
            continue;
        }
        let model = match fit(&train, hp) {
            Ok(m) => m,
            Err(Error::DegenerateTraining(msg)) => {
                warnings.push(format!("fold {fold}: {msg}; skipped"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let started = std::time::Instant::now();
        let pairs: Vec<(ScalarTag, ScalarTag)> = eval
            .iter()
            .map(|e| Ok((e.label, model.predict(&e.features)?.tag)))
            .collect::<Result<_>>()?;
        let elapsed = F::from_f64(started.elapsed().as_secs_f64()).expect("elapsed fits scalar");
        let report = metrics::evaluate::<F>(&pairs, elapsed)?;
        summaries.push(FoldSummary {
            fold,
            size: eval.len(),
            accuracy: report.accuracy,
            balanced_accuracy: report.balanced_accuracy,
        });
    }
    let count = count_to_scalar::<F>(summaries.len().max(1));
    let mean_accuracy = summaries.iter().fold(F::zero(), |a, s| a + s.accuracy) / count;
    let mean_balanced_accuracy = summaries
        .iter()
        .fold(F::zero(), |a, s| a + s.balanced_accuracy)
        / count;
    Ok(CrossValidation {
        folds: summaries,
        mean_accuracy,
        mean_balanced_accuracy,
        warnings,
    })
}
