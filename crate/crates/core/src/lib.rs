//! Part-of-speech tagging for source-code identifiers.
//!
//! An identifier such as `timeForEachLine` is split into words, each word is
//! turned into a fixed-arity feature vector (baseline English tag, word-position
//! ratio, embedding similarities to preposition/noun/verb concepts, lexical
//! flags), and a gradient-boosted tree ensemble assigns one of eleven
//! identifier-specific tags per word. The resulting tag sequence is the
//! identifier's grammar pattern (`N P DT N`).
//!
//! Modules mirror the processing stages:
//!
//! * [`tokenizer`] — identifier splitting and word-position ratios
//! * [`lexicon`] — dictionary, user word lists, closed-category lists
//! * [`embeddings`] — word vectors and concept similarity features
//! * [`baseline`] — rule-plus-lexicon Penn-Treebank-style tagger used as a feature
//! * [`features`] — per-word feature vector assembly
//! * [`gbt`] — multi-class gradient boosting, stratified splits, cross-validation
//! * [`pipeline`] — the end-to-end tagger and tagset mapping
//! * [`metrics`] — word-level evaluation reports
//! * [`cache`] — persistent memoization with encounter bookkeeping
//! * [`dataset`] — TSV dataset ingestion
//! * [`resources`] — bundled word lists, vectors, and configuration

use std::fmt::{Debug, Display};
use std::num::ParseFloatError;
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, NumAssignOps};
use serde::de::DeserializeOwned;
use serde::Serialize;

pub mod baseline;
pub mod cache;
pub mod dataset;
pub mod embeddings;
pub mod error;
pub mod features;
pub mod gbt;
pub mod lexicon;
pub mod metrics;
pub mod pipeline;
pub mod resources;
pub mod tokenizer;

pub use error::{Error, Result};

/// Floating-point scalar the numeric core is generic over: `f32` or `f64`.
///
/// `Display`/`FromStr` round-trip bit-exactly for finite values, which the
/// model text format relies on.
pub trait Scalar:
    Float
    + FromPrimitive
    + NumAssignOps
    + Display
    + FromStr<Err = ParseFloatError>
    + Debug
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + NumAssignOps
        + Display
        + FromStr<Err = ParseFloatError>
        + Debug
        + Serialize
        + DeserializeOwned
        + Send
        + Sync
        + 'static
{
}

/// Converts a usize count into the scalar type.
pub(crate) fn count_to_scalar<F: Scalar>(n: usize) -> F {
    F::from_usize(n).expect("count representable as scalar")
}

// Double-precision aliases; the CLI and HTTP layers use these.
pub type FeatureVector64 = features::FeatureVector<f64>;
pub type LabeledExample64 = gbt::LabeledExample<f64>;
pub type Hyperparameters64 = gbt::Hyperparameters<f64>;
pub type BoostedEnsemble64 = gbt::BoostedEnsemble<f64>;
pub type VectorStore64 = embeddings::VectorStore<f64>;
pub type ConceptVector64 = embeddings::ConceptVector<f64>;
pub type MetricReport64 = metrics::MetricReport<f64>;
pub type Resources64 = resources::Resources<f64>;
pub type Tagger64 = pipeline::Tagger<f64>;
