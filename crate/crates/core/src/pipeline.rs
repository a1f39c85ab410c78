//! End-to-end identifier annotation and the tagset it produces.
//!
//! The tagset is specialized for identifiers: alongside the familiar noun /
//! verb / preposition categories it has NM for noun adjuncts ("bit" in
//! `bitSet`), D for digit tokens, and PRE for preamble prefixes that only
//! namespace a name or restate its type.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baseline::PtbTag;
use crate::error::{Error, Result};
use crate::features::{extract, IdentifierContext};
use crate::gbt::BoostedEnsemble;
use crate::resources::Resources;
use crate::tokenizer::{split, TokenSequence};
use crate::Scalar;

/// The 11 identifier part-of-speech categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[allow(clippy::upper_case_acronyms)]
pub enum ScalarTag {
    /// Noun.
    N,
    /// Determiner.
    DT,
    /// Conjunction.
    CJ,
    /// Preposition.
    P,
    /// Noun plural.
    NPL,
    /// Noun modifier: noun adjunct or adjective.
    NM,
    /// Verb.
    V,
    /// Verb modifier (adverb).
    VM,
    /// Pronoun.
    PR,
    /// Digit.
    D,
    /// Preamble prefix.
    PRE,
}

impl ScalarTag {
    pub const ALL: [ScalarTag; 11] = [
        ScalarTag::N,
        ScalarTag::DT,
        ScalarTag::CJ,
        ScalarTag::P,
        ScalarTag::NPL,
        ScalarTag::NM,
        ScalarTag::V,
        ScalarTag::VM,
        ScalarTag::PR,
        ScalarTag::D,
        ScalarTag::PRE,
    ];

    pub fn code(self) -> &'static str {
        match self {
            ScalarTag::N => "N",
            ScalarTag::DT => "DT",
            ScalarTag::CJ => "CJ",
            ScalarTag::P => "P",
            ScalarTag::NPL => "NPL",
            ScalarTag::NM => "NM",
            ScalarTag::V => "V",
            ScalarTag::VM => "VM",
            ScalarTag::PR => "PR",
            ScalarTag::D => "D",
            ScalarTag::PRE => "PRE",
        }
    }

    /// Index into [`ScalarTag::ALL`].
    pub fn index(self) -> usize {
        Self::ALL
            .iter()
            .position(|t| *t == self)
            .expect("tag present in ALL")
    }
}

impl fmt::Display for ScalarTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for ScalarTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|t| t.code() == s)
            .ok_or_else(|| Error::UnknownTag(s.to_string()))
    }
}

/// One tagged word of an identifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedWord {
    pub word: String,
    pub tag: ScalarTag,
    pub is_dictionary_word: bool,
}

/// The ordered tag sequence of an identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrammarPattern(pub Vec<ScalarTag>);

impl GrammarPattern {
    pub fn of(annotation: &[AnnotatedWord]) -> Self {
        GrammarPattern(annotation.iter().map(|w| w.tag).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for GrammarPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let codes: Vec<&str> = self.0.iter().map(|t| t.code()).collect();
        f.write_str(&codes.join(" "))
    }
}

impl FromStr for GrammarPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tags: Result<Vec<ScalarTag>> = s.split_whitespace().map(str::parse).collect();
        Ok(GrammarPattern(tags?))
    }
}

/// Total mapping from Penn Treebank codes onto the identifier tagset.
///
/// PRE has no general-English counterpart and is never produced.
pub fn map_ptb_to_scalar(tag: PtbTag) -> ScalarTag {
    match tag {
        PtbTag::VB | PtbTag::VBD | PtbTag::VBG | PtbTag::VBN | PtbTag::VBP | PtbTag::VBZ => {
            ScalarTag::V
        }
        PtbTag::NN | PtbTag::NNP => ScalarTag::N,
        PtbTag::NNS | PtbTag::NNPS => ScalarTag::NPL,
        PtbTag::JJ | PtbTag::JJR | PtbTag::JJS => ScalarTag::NM,
        PtbTag::RB | PtbTag::RBR | PtbTag::RBS => ScalarTag::VM,
        PtbTag::IN | PtbTag::TO => ScalarTag::P,
        PtbTag::CC => ScalarTag::CJ,
        PtbTag::DT | PtbTag::PDT | PtbTag::WDT => ScalarTag::DT,
        PtbTag::PRP | PtbTag::PRPS | PtbTag::WP => ScalarTag::PR,
        PtbTag::CD => ScalarTag::D,
        PtbTag::Other => ScalarTag::N,
    }
}

/// Configuration for the preamble advisory heuristic.
#[derive(Debug, Clone)]
pub struct PreambleConfig {
    /// Known namespace prefixes (project-specific, user supplied).
    pub namespace_prefixes: Vec<String>,
    /// Single letters used as Hungarian-notation markers (member, pointer).
    pub hungarian_markers: Vec<String>,
    /// Single letters that restate a type without adding information.
    pub type_initials: Vec<String>,
}

impl Default for PreambleConfig {
    fn default() -> Self {
        PreambleConfig {
            namespace_prefixes: Vec::new(),
            hungarian_markers: ["m", "p"].map(String::from).to_vec(),
            // "s" is deliberately absent: a leading s on a char pointer
            // conveys c-string, which is information.
            type_initials: ["f", "i", "d", "b", "l", "u"].map(String::from).to_vec(),
        }
    }
}

/// Advisory preamble flag for debug output; the trained model owns the
/// actual PRE decision.
///
/// True when the word is a configured namespace prefix, a leading
/// Hungarian-notation marker, or a leading single letter from the configured
/// type-initial list.
pub fn classify_preamble_candidate(
    word: &str,
    identifier: &TokenSequence,
    _context: IdentifierContext,
    config: &PreambleConfig,
) -> bool {
    let word = word.to_lowercase();
    let Some(position) = identifier.words().iter().position(|w| *w == word) else {
        return false;
    };
    if position != 0 || identifier.count() < 2 {
        return false;
    }
    if config.namespace_prefixes.contains(&word) {
        return true;
    }
    word.len() == 1
        && (config.hungarian_markers.contains(&word)
            || config.type_initials.contains(&word))
}

/// A trained model plus the resources needed to featurize input.
#[derive(Debug, Clone)]
pub struct Tagger<F: Scalar> {
    model: BoostedEnsemble<F>,
    resources: Resources<F>,
}

impl<F: Scalar> Tagger<F> {
    pub fn new(model: BoostedEnsemble<F>, resources: Resources<F>) -> Result<Self> {
        if model.arity() != crate::features::ARITY {
            return Err(Error::ArityMismatch {
                expected: crate::features::ARITY,
                found: model.arity(),
            });
        }
        Ok(Tagger { model, resources })
    }

    pub fn model(&self) -> &BoostedEnsemble<F> {
        &self.model
    }

    pub fn resources(&self) -> &Resources<F> {
        &self.resources
    }

    /// Splits, featurizes, and classifies every word of the identifier.
    pub fn tag_identifier(
        &self,
        identifier: &str,
        context: IdentifierContext,
    ) -> Result<Vec<AnnotatedWord>> {
        let words = split(identifier)?;
        self.tag_sequence(&words, context)
    }

    /// Same as [`Tagger::tag_identifier`] for an already-split sequence.
    pub fn tag_sequence(
        &self,
        words: &TokenSequence,
        context: IdentifierContext,
    ) -> Result<Vec<AnnotatedWord>> {
        let r = &self.resources;
        let baseline_tags = r.baseline.tag(words, &r.lexicon);
        let mut annotation = Vec::with_capacity(words.count());
        for (i, word) in words.words().iter().enumerate() {
            let fv = extract(
                words,
                i + 1,
                context,
                &r.lexicon,
                &r.vectors,
                &r.concepts,
                &baseline_tags,
            )?;
            let prediction = self.model.predict(&fv)?;
            annotation.push(AnnotatedWord {
                word: word.clone(),
                tag: prediction.tag,
                is_dictionary_word: r.lexicon.is_dictionary_word(word),
            });
        }
        Ok(annotation)
    }
}
