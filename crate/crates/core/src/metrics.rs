//! Word-level evaluation: confusion matrix and aggregate metrics.
//!
//! Conventions: a tag with zero gold support has recall 0, a tag never
//! predicted has precision 0, and F1 is 0 when both are 0. Balanced accuracy
//! averages per-tag recall over tags that actually occur in the gold labels.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pipeline::ScalarTag;
use crate::{count_to_scalar, Scalar};

const K: usize = ScalarTag::ALL.len();

/// Gold-by-predicted counts over the 11-tag set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    counts: [[u64; K]; K],
}

impl ConfusionMatrix {
    pub fn from_pairs(pairs: &[(ScalarTag, ScalarTag)]) -> Self {
        let mut counts = [[0u64; K]; K];
        for (gold, predicted) in pairs {
            counts[gold.index()][predicted.index()] += 1;
        }
        ConfusionMatrix { counts }
    }

    pub fn count(&self, gold: ScalarTag, predicted: ScalarTag) -> u64 {
        self.counts[gold.index()][predicted.index()]
    }

    /// Gold row sum for a tag.
    pub fn support(&self, tag: ScalarTag) -> u64 {
        self.counts[tag.index()].iter().sum()
    }

    /// Predicted column sum for a tag.
    pub fn predicted_total(&self, tag: ScalarTag) -> u64 {
        self.counts.iter().map(|row| row[tag.index()]).sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn correct(&self) -> u64 {
        (0..K).map(|i| self.counts[i][i]).sum()
    }
}

/// Precision/recall/F1 for one tag.
#[derive(Debug, Clone, Serialize)]
pub struct TagMetrics<F> {
    pub tag: ScalarTag,
    pub support: u64,
    pub precision: F,
    pub recall: F,
    pub f1: F,
}

/// Aggregate word-level metrics; all metric values are in [0, 1].
#[derive(Debug, Clone, Serialize)]
pub struct MetricReport<F> {
    pub accuracy: F,
    pub balanced_accuracy: F,
    pub weighted_precision: F,
    pub weighted_recall: F,
    pub weighted_f1: F,
    pub wall_clock_seconds: F,
    pub total_words: u64,
    pub per_tag: Vec<TagMetrics<F>>,
}

/// Computes the full report from (gold, predicted) pairs.
pub fn evaluate<F: Scalar>(pairs: &[(ScalarTag, ScalarTag)], elapsed: F) -> Result<MetricReport<F>> {
    if pairs.is_empty() {
        return Err(Error::EmptyEvaluation);
    }
    let matrix = ConfusionMatrix::from_pairs(pairs);
    let total = matrix.total();
    let total_scalar = count_to_scalar::<F>(total as usize);
    let zero = F::zero();

    let mut per_tag = Vec::with_capacity(K);
    for tag in ScalarTag::ALL {
        let support = matrix.support(tag);
        let predicted = matrix.predicted_total(tag);
        let hit = matrix.count(tag, tag);
        let recall = if support == 0 {
            zero
        } else {
            count_to_scalar::<F>(hit as usize) / count_to_scalar::<F>(support as usize)
        };
        let precision = if predicted == 0 {
            zero
        } else {
            count_to_scalar::<F>(hit as usize) / count_to_scalar::<F>(predicted as usize)
        };
        let f1 = if precision + recall > zero {
            let two = F::one() + F::one();
            two * precision * recall / (precision + recall)
        } else {
            zero
        };
        per_tag.push(TagMetrics {
            tag,
            support,
            precision,
            recall,
            f1,
        });
    }

    let accuracy = count_to_scalar::<F>(matrix.correct() as usize) / total_scalar;
    // The support-weighted mean of per-tag recalls telescopes to
    // sum(diagonal)/total, i.e. exactly the accuracy; computing it that way
    // keeps the identity bit-exact.
    let weighted_recall = accuracy;
    let weighted = |value: fn(&TagMetrics<F>) -> F| {
        per_tag.iter().fold(zero, |acc, t| {
            acc + count_to_scalar::<F>(t.support as usize) * value(t)
        }) / total_scalar
    };
    let weighted_precision = weighted(|t| t.precision);
    let weighted_f1 = weighted(|t| t.f1);

    let present: Vec<&TagMetrics<F>> = per_tag.iter().filter(|t| t.support > 0).collect();
    let balanced_accuracy = present.iter().fold(zero, |acc, t| acc + t.recall)
        / count_to_scalar::<F>(present.len());

    Ok(MetricReport {
        accuracy,
        balanced_accuracy,
        weighted_precision,
        weighted_recall,
        weighted_f1,
        wall_clock_seconds: elapsed,
        total_words: total,
        per_tag,
    })
}

impl<F: Scalar> MetricReport<F> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned plain-text table with one row per tag, including zero-support
    /// tags.
    pub fn text_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "words evaluated: {}    wall clock: {:.3} s\n",
            self.total_words, self.wall_clock_seconds
        ));
        out.push_str(&format!(
            "accuracy: {:.4}    balanced accuracy: {:.4}\n",
            self.accuracy, self.balanced_accuracy
        ));
        out.push_str(&format!(
            "weighted precision: {:.4}    weighted recall: {:.4}    weighted f1: {:.4}\n",
            self.weighted_precision, self.weighted_recall, self.weighted_f1
        ));
        out.push_str("tag   support  precision  recall  f1\n");
        for t in &self.per_tag {
            out.push_str(&format!(
                "{:<5} {:>7}  {:>9.4}  {:>6.4}  {:>6.4}\n",
                t.tag.code(),
                t.support,
                t.precision,
                t.recall,
                t.f1
            ));
        }
        out
    }
}
