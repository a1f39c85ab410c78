//! Per-word feature vector assembly.
//!
//! Every word of an identifier is encoded into the same fixed-arity numeric
//! vector: a one-hot of the baseline tag, the word-position ratio, word and
//! identifier shape counts, concept similarities, closed-list and dictionary
//! flags, digit flags, and a one-hot of the identifier context.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baseline::{is_digit_token, PtbTag};
use crate::embeddings::{ConceptSet, VectorStore};
use crate::error::{Error, Result};
use crate::lexicon::{ClosedCategory, Lexicon};
use crate::tokenizer::{position_ratio, TokenSequence};
use crate::{count_to_scalar, Scalar};

/// Where the identifier was declared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentifierContext {
    Function,
    Class,
    Attribute,
    Parameter,
    Declaration,
}

impl IdentifierContext {
    pub const ALL: [IdentifierContext; 5] = [
        IdentifierContext::Function,
        IdentifierContext::Class,
        IdentifierContext::Attribute,
        IdentifierContext::Parameter,
        IdentifierContext::Declaration,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentifierContext::Function => "function",
            IdentifierContext::Class => "class",
            IdentifierContext::Attribute => "attribute",
            IdentifierContext::Parameter => "parameter",
            IdentifierContext::Declaration => "declaration",
        }
    }

    fn index(self) -> usize {
        Self::ALL
            .iter()
            .position(|c| *c == self)
            .expect("context present in ALL")
    }
}

impl fmt::Display for IdentifierContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentifierContext {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s.to_lowercase())
            .ok_or_else(|| Error::UnknownContext(s.to_string()))
    }
}

/// Slot indices of the flat feature layout.
pub mod slots {
    use super::PtbTag;

    pub const BASELINE_ONEHOT: usize = 0;
    pub const BASELINE_WIDTH: usize = PtbTag::ALL.len();
    pub const POSITION_RATIO: usize = BASELINE_ONEHOT + BASELINE_WIDTH;
    pub const IS_FIRST_WORD: usize = POSITION_RATIO + 1;
    pub const IS_LAST_WORD: usize = IS_FIRST_WORD + 1;
    pub const WORD_COUNT: usize = IS_LAST_WORD + 1;
    pub const WORD_LENGTH: usize = WORD_COUNT + 1;
    pub const SIM_PREPOSITION: usize = WORD_LENGTH + 1;
    pub const SIM_NOUN: usize = SIM_PREPOSITION + 1;
    pub const SIM_VERB: usize = SIM_NOUN + 1;
    pub const IN_PREPOSITION_LIST: usize = SIM_VERB + 1;
    pub const IN_CONJUNCTION_LIST: usize = IN_PREPOSITION_LIST + 1;
    pub const IN_DETERMINER_LIST: usize = IN_CONJUNCTION_LIST + 1;
    pub const IN_PRONOUN_LIST: usize = IN_DETERMINER_LIST + 1;
    pub const IS_DIGIT_TOKEN: usize = IN_PRONOUN_LIST + 1;
    pub const CONTAINS_DIGIT: usize = IS_DIGIT_TOKEN + 1;
    pub const IS_DICTIONARY_WORD: usize = CONTAINS_DIGIT + 1;
    pub const CONTEXT_ONEHOT: usize = IS_DICTIONARY_WORD + 1;
    pub const CONTEXT_WIDTH: usize = 5;
}

/// Total number of numeric slots per word.
pub const ARITY: usize = slots::CONTEXT_ONEHOT + slots::CONTEXT_WIDTH;

/// Fixed-arity numeric encoding of one word-in-identifier.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector<F> {
    values: Vec<F>,
}

impl<F: Scalar> FeatureVector<F> {
    /// Wraps a raw slot vector. [`extract`] always produces [`ARITY`] slots;
    /// this constructor accepts any width so the classifier can be exercised
    /// on synthetic tabular data.
    pub fn from_values(values: Vec<F>) -> Self {
        FeatureVector { values }
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn arity(&self) -> usize {
        self.values.len()
    }

    pub fn position_ratio(&self) -> F {
        self.values[slots::POSITION_RATIO]
    }

    pub fn is_last_word(&self) -> bool {
        self.values[slots::IS_LAST_WORD] == F::one()
    }

    pub fn baseline_tag(&self) -> PtbTag {
        let hot = self.values[..slots::BASELINE_WIDTH]
            .iter()
            .position(|v| *v == F::one())
            .expect("one baseline indicator set");
        PtbTag::ALL[hot]
    }
}

/// Builds the feature vector for the word at the given 1-based index.
///
/// `baseline_tags` must hold one tag per word of the sequence.
pub fn extract<F: Scalar>(
    words: &TokenSequence,
    index: usize,
    context: IdentifierContext,
    lexicon: &Lexicon,
    vectors: &VectorStore<F>,
    concepts: &ConceptSet<F>,
    baseline_tags: &[PtbTag],
) -> Result<FeatureVector<F>> {
    let count = words.count();
    if index == 0 || index > count {
        return Err(Error::PositionOutOfRange { index, count });
    }
    if baseline_tags.len() != count {
        return Err(Error::ArityMismatch {
            expected: count,
            found: baseline_tags.len(),
        });
    }
    let word = &words.words()[index - 1];
    let one = F::one();
    let zero = F::zero();
    let flag = |b: bool| if b { one } else { zero };

    let mut values = vec![zero; ARITY];
    values[slots::BASELINE_ONEHOT + baseline_tags[index - 1].index()] = one;
    values[slots::POSITION_RATIO] = position_ratio::<F>(index, count)?;
    values[slots::IS_FIRST_WORD] = flag(index == 1);
    values[slots::IS_LAST_WORD] = flag(index == count);
    values[slots::WORD_COUNT] = count_to_scalar(count);
    values[slots::WORD_LENGTH] = count_to_scalar(word.len());
    values[slots::SIM_PREPOSITION] = vectors.concept_similarity(word, &concepts.preposition);
    values[slots::SIM_NOUN] = vectors.concept_similarity(word, &concepts.noun);
    values[slots::SIM_VERB] = vectors.concept_similarity(word, &concepts.verb);
    values[slots::IN_PREPOSITION_LIST] =
        flag(lexicon.in_closed_list(ClosedCategory::Preposition, word));
    values[slots::IN_CONJUNCTION_LIST] =
        flag(lexicon.in_closed_list(ClosedCategory::Conjunction, word));
    values[slots::IN_DETERMINER_LIST] =
        flag(lexicon.in_closed_list(ClosedCategory::Determiner, word));
    values[slots::IN_PRONOUN_LIST] = flag(lexicon.in_closed_list(ClosedCategory::Pronoun, word));
    values[slots::IS_DIGIT_TOKEN] = flag(is_digit_token(word));
    values[slots::CONTAINS_DIGIT] = flag(word.bytes().any(|b| b.is_ascii_digit()));
    values[slots::IS_DICTIONARY_WORD] = flag(lexicon.is_dictionary_word(word));
    values[slots::CONTEXT_ONEHOT + context.index()] = one;

    Ok(FeatureVector { values })
}
