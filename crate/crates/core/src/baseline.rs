//! General-English baseline tagger.
//!
//! Produces one Penn-Treebank-style tag per word of a token sequence. This is
//! a deterministic rule-plus-lexicon tagger, not a statistical one: closed
//! category lists map to IN/TO/CC/DT/PRP..., digit tokens map to CD,
//! dictionary-guarded suffix rules catch inflected forms, a small
//! most-frequent-tag lexicon covers common words, and everything else falls
//! back to NN. The whole token sequence is tagged as one pseudo-sentence so
//! rules may look at neighboring tokens. The downstream classifier treats the
//! result as a feature and learns to correct it.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::lexicon::{ClosedCategory, Lexicon};
use crate::tokenizer::TokenSequence;

/// Penn Treebank tag codes emitted by the baseline, plus a catch-all OTHER.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[allow(clippy::upper_case_acronyms)]
pub enum PtbTag {
    NN,
    NNS,
    NNP,
    NNPS,
    VB,
    VBD,
    VBG,
    VBN,
    VBP,
    VBZ,
    JJ,
    JJR,
    JJS,
    RB,
    RBR,
    RBS,
    IN,
    TO,
    CC,
    DT,
    PDT,
    WDT,
    PRP,
    /// Possessive pronoun, written `PRP$`.
    PRPS,
    WP,
    CD,
    Other,
}

impl PtbTag {
    pub const ALL: [PtbTag; 27] = [
        PtbTag::NN,
        PtbTag::NNS,
        PtbTag::NNP,
        PtbTag::NNPS,
        PtbTag::VB,
        PtbTag::VBD,
        PtbTag::VBG,
        PtbTag::VBN,
        PtbTag::VBP,
        PtbTag::VBZ,
        PtbTag::JJ,
        PtbTag::JJR,
        PtbTag::JJS,
        PtbTag::RB,
        PtbTag::RBR,
        PtbTag::RBS,
        PtbTag::IN,
        PtbTag::TO,
        PtbTag::CC,
        PtbTag::DT,
        PtbTag::PDT,
        PtbTag::WDT,
        PtbTag::PRP,
        PtbTag::PRPS,
        PtbTag::WP,
        PtbTag::CD,
        PtbTag::Other,
    ];

    pub fn code(self) -> &'static str {
        match self {
            PtbTag::NN => "NN",
            PtbTag::NNS => "NNS",
            PtbTag::NNP => "NNP",
            PtbTag::NNPS => "NNPS",
            PtbTag::VB => "VB",
            PtbTag::VBD => "VBD",
            PtbTag::VBG => "VBG",
            PtbTag::VBN => "VBN",
            PtbTag::VBP => "VBP",
            PtbTag::VBZ => "VBZ",
            PtbTag::JJ => "JJ",
            PtbTag::JJR => "JJR",
            PtbTag::JJS => "JJS",
            PtbTag::RB => "RB",
            PtbTag::RBR => "RBR",
            PtbTag::RBS => "RBS",
            PtbTag::IN => "IN",
            PtbTag::TO => "TO",
            PtbTag::CC => "CC",
            PtbTag::DT => "DT",
            PtbTag::PDT => "PDT",
            PtbTag::WDT => "WDT",
            PtbTag::PRP => "PRP",
            PtbTag::PRPS => "PRP$",
            PtbTag::WP => "WP",
            PtbTag::CD => "CD",
            PtbTag::Other => "OTHER",
        }
    }

    /// Index into [`PtbTag::ALL`]; used for one-hot feature layout.
    pub fn index(self) -> usize {
        Self::ALL
            .iter()
            .position(|t| *t == self)
            .expect("tag present in ALL")
    }
}

impl fmt::Display for PtbTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for PtbTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .copied()
            .find(|t| t.code() == s)
            .ok_or_else(|| Error::UnknownTag(s.to_string()))
    }
}

const POSSESSIVE_PRONOUNS: [&str; 14] = [
    "my", "mine", "your", "yours", "his", "her", "hers", "its", "our", "ours", "their", "theirs",
    "whose", "thy",
];

const WH_PRONOUNS: [&str; 3] = ["who", "whom", "what"];

/// Deterministic baseline tagger. Rule tables are immutable after
/// construction.
#[derive(Debug, Clone, Default)]
pub struct BaselineTagger {
    most_frequent: HashMap<String, PtbTag>,
}

impl BaselineTagger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads entries from a newline-delimited `word TAB tag` table; later
    /// entries override earlier ones.
    pub fn with_lexicon_text(mut self, text: &str) -> Result<Self, Error> {
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, tag) = line.split_once('\t').ok_or_else(|| Error::WordList {
                path: "tag lexicon".to_string(),
                message: format!("line {}: expected `word TAB tag`", line_no + 1),
            })?;
            let tag: PtbTag = tag.trim().parse()?;
            self.most_frequent.insert(word.trim().to_lowercase(), tag);
        }
        Ok(self)
    }

    /// Tags every word of the sequence. Total: each word receives exactly one
    /// tag, with NN as the final fallback.
    pub fn tag(&self, words: &TokenSequence, lexicon: &Lexicon) -> Vec<PtbTag> {
        let tokens = words.words();
        tokens
            .iter()
            .enumerate()
            .map(|(i, w)| self.tag_word(w, i, tokens, lexicon))
            .collect()
    }

    fn tag_word(&self, word: &str, index: usize, tokens: &[String], lexicon: &Lexicon) -> PtbTag {
        // (a) closed-list lookup
        if let Some(category) = lexicon.closed_category(word) {
            return match category {
                ClosedCategory::Preposition => {
                    if word == "to" {
                        PtbTag::TO
                    } else {
                        PtbTag::IN
                    }
                }
                ClosedCategory::Conjunction => PtbTag::CC,
                ClosedCategory::Determiner => {
                    if word == "which" {
                        PtbTag::WDT
                    } else {
                        PtbTag::DT
                    }
                }
                ClosedCategory::Pronoun => {
                    if word == "her" {
                        // Possessive before another word ("her score"),
                        // objective when last.
                        if index + 1 < tokens.len() {
                            PtbTag::PRPS
                        } else {
                            PtbTag::PRP
                        }
                    } else if POSSESSIVE_PRONOUNS.contains(&word) {
                        PtbTag::PRPS
                    } else if WH_PRONOUNS.contains(&word) {
                        PtbTag::WP
                    } else {
                        PtbTag::PRP
                    }
                }
            };
        }
        // (b) digit tokens
        if is_digit_token(word) {
            return PtbTag::CD;
        }
        // (c) dictionary-guarded suffix rules
        if let Some(tag) = self.suffix_rule(word, lexicon) {
            return tag;
        }
        // (d) most-frequent-tag lexicon
        if let Some(tag) = self.most_frequent.get(word) {
            return *tag;
        }
        // (e) fallback
        PtbTag::NN
    }

    fn suffix_rule(&self, word: &str, lexicon: &Lexicon) -> Option<PtbTag> {
        let dict = |w: &str| lexicon.is_dictionary_word(w);
        if word.len() >= 5 {
            if let Some(stem) = word.strip_suffix("ing") {
                if verb_stem_known(stem, dict) {
                    return Some(PtbTag::VBG);
                }
            }
        }
        if word.len() >= 4 {
            if let Some(stem) = word.strip_suffix("ed") {
                if verb_stem_known(stem, dict) {
                    return Some(PtbTag::VBD);
                }
            }
            if let Some(stem) = word.strip_suffix("ly") {
                if dict(stem) {
                    return Some(PtbTag::RB);
                }
                if let Some(base) = word.strip_suffix("ily") {
                    if dict(&format!("{base}y")) {
                        return Some(PtbTag::RB);
                    }
                }
            }
        }
        if word.len() >= 3
            && word.ends_with('s')
            && !word.ends_with("ss")
            && plural_stems(word).iter().any(|stem| dict(stem))
        {
            return Some(PtbTag::NNS);
        }
        None
    }
}

fn verb_stem_known(stem: &str, dict: impl Fn(&str) -> bool) -> bool {
    if stem.len() < 3 {
        return false;
    }
    if dict(stem) || dict(&format!("{stem}e")) {
        return true;
    }
    // Doubled final consonant: running -> run.
    let b = stem.as_bytes();
    b.len() >= 4 && b[b.len() - 1] == b[b.len() - 2] && dict(&stem[..stem.len() - 1])
}

fn plural_stems(word: &str) -> Vec<String> {
    let mut stems = Vec::with_capacity(3);
    if let Some(base) = word.strip_suffix("ies") {
        if !base.is_empty() {
            stems.push(format!("{base}y"));
        }
    }
    if let Some(base) = word.strip_suffix("es") {
        if base.len() >= 2 {
            stems.push(base.to_string());
        }
    }
    if let Some(base) = word.strip_suffix('s') {
        stems.push(base.to_string());
    }
    stems
}

/// A token consisting of decimal digits, or a `0x`-prefixed hex literal.
pub fn is_digit_token(word: &str) -> bool {
    if word.is_empty() {
        return false;
    }
    if let Some(hex) = word.strip_prefix("0x") {
        return !hex.is_empty() && hex.bytes().all(|b| b.is_ascii_hexdigit());
    }
    word.bytes().all(|b| b.is_ascii_digit())
}
