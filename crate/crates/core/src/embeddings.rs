//! Word vectors and concept-similarity features.
//!
//! A concept vector is the unit-normalized mean of the embeddings of a word
//! list (prepositions, common nouns, common verbs). A word's feature is the
//! cosine of the angle between its embedding and the concept vector; words
//! outside the vocabulary score a neutral 0.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::Scalar;

/// The three concepts words are compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Concept {
    Preposition,
    Noun,
    Verb,
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Concept::Preposition => "preposition",
            Concept::Noun => "noun",
            Concept::Verb => "verb",
        };
        f.write_str(name)
    }
}

/// In-memory word-vector table with a single fixed dimension.
#[derive(Debug, Clone)]
pub struct VectorStore<F> {
    dimension: usize,
    entries: HashMap<String, Vec<F>>,
}

/// The three concept vectors used as features.
#[derive(Debug, Clone)]
pub struct ConceptSet<F> {
    pub preposition: ConceptVector<F>,
    pub noun: ConceptVector<F>,
    pub verb: ConceptVector<F>,
}

/// Unit-norm average embedding for one concept.
#[derive(Debug, Clone)]
pub struct ConceptVector<F> {
    concept: Concept,
    vector: Vec<F>,
}

impl<F: Scalar> ConceptVector<F> {
    pub fn concept(&self) -> Concept {
        self.concept
    }

    pub fn vector(&self) -> &[F] {
        &self.vector
    }
}

fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (&x, &y)| acc + x * y)
}

fn norm<F: Scalar>(v: &[F]) -> F {
    dot(v, v).sqrt()
}

impl<F: Scalar> VectorStore<F> {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(&word.to_lowercase())
    }

    pub fn get(&self, word: &str) -> Option<&[F]> {
        self.entries.get(&word.to_lowercase()).map(Vec::as_slice)
    }

    /// Parses the plain-text vector format: an optional `count dimension`
    /// header line, then one `word v1 v2 ... vd` row per line. Duplicate
    /// words keep their first occurrence; a row whose dimension differs from
    /// the first row's is an error, as is an all-zeros vector.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: HashMap<String, Vec<F>> = HashMap::new();
        let mut dimension: Option<usize> = None;
        let mut rows = 0usize;
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let word = fields.next().expect("non-empty line has a first field");
            let values: Vec<&str> = fields.collect();
            // Header line: two numeric fields and a numeric "word".
            if rows == 0
                && dimension.is_none()
                && values.len() == 1
                && word.parse::<usize>().is_ok()
                && values[0].parse::<usize>().is_ok()
            {
                continue;
            }
            if values.is_empty() {
                return Err(Error::VectorParse {
                    line: line_no + 1,
                    message: format!("row for {word:?} has no vector components"),
                });
            }
            let mut vector = Vec::with_capacity(values.len());
            for v in &values {
                let parsed = v.parse::<F>().map_err(|e| Error::VectorParse {
                    line: line_no + 1,
                    message: format!("bad component {v:?} for {word:?}: {e}"),
                })?;
                vector.push(parsed);
            }
            match dimension {
                None => dimension = Some(vector.len()),
                Some(d) if d != vector.len() => {
                    return Err(Error::DimensionMismatch {
                        word: word.to_string(),
                        expected: d,
                        found: vector.len(),
                    });
                }
                Some(_) => {}
            }
            if vector.iter().all(|v| *v == F::zero()) {
                return Err(Error::ZeroVector {
                    word: word.to_string(),
                });
            }
            rows += 1;
            entries.entry(word.to_lowercase()).or_insert(vector);
        }
        match dimension {
            Some(dimension) if !entries.is_empty() => Ok(VectorStore { dimension, entries }),
            _ => Err(Error::EmptyVectorFile),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Builds the unit-norm mean vector of the list words found in the
    /// vocabulary; out-of-vocabulary list words are skipped.
    ///
    /// Hits are summed in sorted word order, so any permutation of the list
    /// produces the identical vector.
    pub fn build_concept_vector<S: AsRef<str>>(
        &self,
        concept: Concept,
        word_list: &[S],
    ) -> Result<ConceptVector<F>> {
        let mut hit_words: Vec<String> = word_list
            .iter()
            .map(|w| w.as_ref().to_lowercase())
            .filter(|w| self.entries.contains_key(w))
            .collect();
        hit_words.sort_unstable();
        let hits = hit_words.len();
        let mut sum = vec![F::zero(); self.dimension];
        for word in &hit_words {
            let v = &self.entries[word];
            for (s, x) in sum.iter_mut().zip(v) {
                *s += *x;
            }
        }
        if hits == 0 {
            return Err(Error::ConceptOutOfVocabulary {
                concept: concept.to_string(),
            });
        }
        let n = crate::count_to_scalar::<F>(hits);
        for s in sum.iter_mut() {
            *s /= n;
        }
        let len = norm(&sum);
        if len <= F::zero() {
            return Err(Error::DegenerateConcept {
                concept: concept.to_string(),
            });
        }
        for s in sum.iter_mut() {
            *s /= len;
        }
        Ok(ConceptVector {
            concept,
            vector: sum,
        })
    }

    /// Cosine similarity between a word's vector and a concept vector;
    /// exactly 0 for out-of-vocabulary words.
    pub fn concept_similarity(&self, word: &str, concept: &ConceptVector<F>) -> F {
        match self.get(word) {
            None => F::zero(),
            Some(v) => {
                let len = norm(v);
                // Stored vectors are never all-zero, so len > 0.
                dot(v, concept.vector()) / len
            }
        }
    }
}
