//! Bundled word lists, vectors, and tagging configuration.
//!
//! The crate ships editable data files (see `crates/core/data/`) that are
//! compiled in as defaults, so a model trained with the defaults behaves the
//! same everywhere. Every list can be replaced with a file at load time;
//! features depend on these lists, so a model should be served with the same
//! resources it was trained with.

use std::path::{Path, PathBuf};

use crate::baseline::BaselineTagger;
use crate::embeddings::{Concept, ConceptSet, VectorStore};
use crate::error::Result;
use crate::lexicon::{parse_word_list, ClosedCategory, Lexicon};
use crate::pipeline::PreambleConfig;
use crate::Scalar;

const DICTIONARY: &str = include_str!("../data/dictionary.txt");
const USER_WORDS: &str = include_str!("../data/user_words.txt");
const ABBREVIATIONS: &str = include_str!("../data/abbreviations.txt");
const PREPOSITIONS: &str = include_str!("../data/prepositions.txt");
const CONJUNCTIONS: &str = include_str!("../data/conjunctions.txt");
const DETERMINERS: &str = include_str!("../data/determiners.txt");
const PRONOUNS: &str = include_str!("../data/pronouns.txt");
const CONCEPT_NOUNS: &str = include_str!("../data/concept_nouns.txt");
const CONCEPT_VERBS: &str = include_str!("../data/concept_verbs.txt");
const TAG_LEXICON: &str = include_str!("../data/tag_lexicon.txt");
const EMBEDDINGS: &str = include_str!("../data/embeddings.txt");

const NAMESPACE_PREFIXES: [&str; 4] = ["gimp", "glew", "gl", "g"];

/// Optional file overrides; anything left `None` uses the embedded default.
#[derive(Debug, Clone, Default)]
pub struct ResourcePaths {
    pub dictionary: Option<PathBuf>,
    pub user_words: Option<PathBuf>,
    pub abbreviations: Option<PathBuf>,
    pub embeddings: Option<PathBuf>,
    pub tag_lexicon: Option<PathBuf>,
    /// Directory holding `prepositions.txt`, `conjunctions.txt`,
    /// `determiners.txt`, `pronouns.txt`; present files replace the
    /// corresponding default list.
    pub closed_lists: Option<PathBuf>,
}

/// Everything the tagging pipeline needs besides the trained model.
#[derive(Debug, Clone)]
pub struct Resources<F: Scalar> {
    pub lexicon: Lexicon,
    pub vectors: VectorStore<F>,
    pub concepts: ConceptSet<F>,
    pub baseline: BaselineTagger,
    pub preamble: PreambleConfig,
}

impl<F: Scalar> Resources<F> {
    /// Loads the compiled-in defaults.
    pub fn embedded() -> Result<Self> {
        Self::from_paths(&ResourcePaths::default())
    }

    /// Loads resources with per-file overrides.
    pub fn from_paths(paths: &ResourcePaths) -> Result<Self> {
        let read = |path: &Option<PathBuf>, default: &str| -> Result<String> {
            match path {
                Some(p) => Ok(std::fs::read_to_string(p)?),
                None => Ok(default.to_string()),
            }
        };
        let closed = |name: &str, default: &str| -> Result<String> {
            match &paths.closed_lists {
                Some(dir) => {
                    let file = dir.join(name);
                    if file.exists() {
                        Ok(std::fs::read_to_string(file)?)
                    } else {
                        Ok(default.to_string())
                    }
                }
                None => Ok(default.to_string()),
            }
        };

        let lexicon = Lexicon::builder()
            .dictionary_text(&read(&paths.dictionary, DICTIONARY)?)
            .user_words_text(&read(&paths.user_words, USER_WORDS)?)
            .abbreviations_text(&read(&paths.abbreviations, ABBREVIATIONS)?)
            .closed_list_text(
                ClosedCategory::Preposition,
                &closed("prepositions.txt", PREPOSITIONS)?,
            )
            .closed_list_text(
                ClosedCategory::Conjunction,
                &closed("conjunctions.txt", CONJUNCTIONS)?,
            )
            .closed_list_text(
                ClosedCategory::Determiner,
                &closed("determiners.txt", DETERMINERS)?,
            )
            .closed_list_text(ClosedCategory::Pronoun, &closed("pronouns.txt", PRONOUNS)?)
            .build();

        let vectors: VectorStore<F> = match &paths.embeddings {
            Some(p) => VectorStore::load(p)?,
            None => VectorStore::parse(EMBEDDINGS)?,
        };

        let preposition_words = sorted(parse_word_list(&closed(
            "prepositions.txt",
            PREPOSITIONS,
        )?));
        let noun_words = sorted(parse_word_list(CONCEPT_NOUNS));
        let verb_words = sorted(parse_word_list(CONCEPT_VERBS));
        let concepts = ConceptSet {
            preposition: vectors.build_concept_vector(Concept::Preposition, &preposition_words)?,
            noun: vectors.build_concept_vector(Concept::Noun, &noun_words)?,
            verb: vectors.build_concept_vector(Concept::Verb, &verb_words)?,
        };

        let baseline =
            BaselineTagger::new().with_lexicon_text(&read(&paths.tag_lexicon, TAG_LEXICON)?)?;

        let preamble = PreambleConfig {
            namespace_prefixes: NAMESPACE_PREFIXES.map(String::from).to_vec(),
            ..PreambleConfig::default()
        };

        Ok(Resources {
            lexicon,
            vectors,
            concepts,
            baseline,
            preamble,
        })
    }
}

fn sorted(set: std::collections::HashSet<String>) -> Vec<String> {
    let mut v: Vec<String> = set.into_iter().collect();
    v.sort_unstable();
    v
}

/// Convenience for tests and tools that need a file path for one of the
/// embedded lists.
pub fn write_embedded_embeddings(path: &Path) -> Result<()> {
    std::fs::write(path, EMBEDDINGS)?;
    Ok(())
}
