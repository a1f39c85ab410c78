//! Word lists backing lexical features and output flags.
//!
//! A [`Lexicon`] holds the English dictionary, user-supplied acceptable words
//! and abbreviations, and one list per closed syntactic category. List files
//! are newline-delimited UTF-8, one entry per line; `#`-prefixed lines are
//! comments. Entries are lowercased on load, so membership queries are
//! case-insensitive.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

/// Closed syntactic categories with small fixed membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedCategory {
    Preposition,
    Conjunction,
    Determiner,
    Pronoun,
}

impl ClosedCategory {
    /// Lookup precedence for words that appear in more than one list.
    pub const ALL: [ClosedCategory; 4] = [
        ClosedCategory::Preposition,
        ClosedCategory::Conjunction,
        ClosedCategory::Determiner,
        ClosedCategory::Pronoun,
    ];
}

impl fmt::Display for ClosedCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ClosedCategory::Preposition => "preposition",
            ClosedCategory::Conjunction => "conjunction",
            ClosedCategory::Determiner => "determiner",
            ClosedCategory::Pronoun => "pronoun",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    dictionary: HashSet<String>,
    user_words: HashSet<String>,
    user_abbreviations: HashSet<String>,
    prepositions: HashSet<String>,
    conjunctions: HashSet<String>,
    determiners: HashSet<String>,
    pronouns: HashSet<String>,
}

/// Parses one newline-delimited word list. Blank lines and `#` comments are
/// skipped; entries are lowercased.
pub fn parse_word_list(text: &str) -> HashSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

fn read_word_list(path: &Path) -> Result<HashSet<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::WordList {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(parse_word_list(&text))
}

impl Lexicon {
    pub fn builder() -> LexiconBuilder {
        LexiconBuilder::default()
    }

    /// True iff the word is in the dictionary, the user word list, or the
    /// user abbreviation list. Queries are case-normalized.
    pub fn is_dictionary_word(&self, word: &str) -> bool {
        let w = word.to_lowercase();
        self.dictionary.contains(&w)
            || self.user_words.contains(&w)
            || self.user_abbreviations.contains(&w)
    }

    /// The closed category whose list contains the word, if any.
    ///
    /// Words on several lists resolve by precedence
    /// preposition > conjunction > determiner > pronoun.
    pub fn closed_category(&self, word: &str) -> Option<ClosedCategory> {
        let w = word.to_lowercase();
        if self.prepositions.contains(&w) {
            Some(ClosedCategory::Preposition)
        } else if self.conjunctions.contains(&w) {
            Some(ClosedCategory::Conjunction)
        } else if self.determiners.contains(&w) {
            Some(ClosedCategory::Determiner)
        } else if self.pronouns.contains(&w) {
            Some(ClosedCategory::Pronoun)
        } else {
            None
        }
    }

    pub fn in_closed_list(&self, category: ClosedCategory, word: &str) -> bool {
        let w = word.to_lowercase();
        match category {
            ClosedCategory::Preposition => self.prepositions.contains(&w),
            ClosedCategory::Conjunction => self.conjunctions.contains(&w),
            ClosedCategory::Determiner => self.determiners.contains(&w),
            ClosedCategory::Pronoun => self.pronouns.contains(&w),
        }
    }

    pub fn dictionary_len(&self) -> usize {
        self.dictionary.len()
    }
}

/// Assembles a [`Lexicon`] from strings or files.
#[derive(Debug, Default)]
pub struct LexiconBuilder {
    lexicon: Lexicon,
}

impl LexiconBuilder {
    pub fn dictionary_text(mut self, text: &str) -> Self {
        self.lexicon.dictionary.extend(parse_word_list(text));
        self
    }

    pub fn user_words_text(mut self, text: &str) -> Self {
        self.lexicon.user_words.extend(parse_word_list(text));
        self
    }

    pub fn abbreviations_text(mut self, text: &str) -> Self {
        self.lexicon.user_abbreviations.extend(parse_word_list(text));
        self
    }

    pub fn closed_list_text(mut self, category: ClosedCategory, text: &str) -> Self {
        let set = parse_word_list(text);
        match category {
            ClosedCategory::Preposition => self.lexicon.prepositions.extend(set),
            ClosedCategory::Conjunction => self.lexicon.conjunctions.extend(set),
            ClosedCategory::Determiner => self.lexicon.determiners.extend(set),
            ClosedCategory::Pronoun => self.lexicon.pronouns.extend(set),
        }
        self
    }

    pub fn dictionary_file(self, path: &Path) -> Result<Self> {
        let set = read_word_list(path)?;
        let mut this = self;
        this.lexicon.dictionary.extend(set);
        Ok(this)
    }

    pub fn user_words_file(self, path: &Path) -> Result<Self> {
        let set = read_word_list(path)?;
        let mut this = self;
        this.lexicon.user_words.extend(set);
        Ok(this)
    }

    pub fn abbreviations_file(self, path: &Path) -> Result<Self> {
        let set = read_word_list(path)?;
        let mut this = self;
        this.lexicon.user_abbreviations.extend(set);
        Ok(this)
    }

    pub fn closed_list_file(self, category: ClosedCategory, path: &Path) -> Result<Self> {
        let set = read_word_list(path)?;
        let mut this = self;
        match category {
            ClosedCategory::Preposition => this.lexicon.prepositions.extend(set),
            ClosedCategory::Conjunction => this.lexicon.conjunctions.extend(set),
            ClosedCategory::Determiner => this.lexicon.determiners.extend(set),
            ClosedCategory::Pronoun => this.lexicon.pronouns.extend(set),
        }
        Ok(this)
    }

    pub fn build(self) -> Lexicon {
        self.lexicon
    }
}
