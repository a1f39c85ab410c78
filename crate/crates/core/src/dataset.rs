//! Dataset ingestion.
//!
//! Datasets are tab-separated with one identifier per row:
//! `identifier TAB context TAB pattern`, where the pattern is the
//! space-separated tag codes of the identifier's words in order. Ingestion
//! explodes every row into one labeled example per word; rows whose pattern
//! length disagrees with the splitter, or that name unknown tags or
//! contexts, are rejected with line-numbered diagnostics.

use std::fmt;
use std::path::Path;

use crate::error::Result;
use crate::features::{extract, IdentifierContext};
use crate::gbt::LabeledExample;
use crate::pipeline::{GrammarPattern, ScalarTag};
use crate::resources::Resources;
use crate::tokenizer::split;
use crate::Scalar;

/// One dataset row: an identifier, where it appeared, and its gold pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetRow {
    pub identifier: String,
    pub context: IdentifierContext,
    pub pattern: Vec<ScalarTag>,
}

/// A rejected row or dataset-level warning.
#[derive(Debug, Clone)]
pub struct Diagnostic {
    /// 1-based source line, or 0 for dataset-level messages.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "dataset: {}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

/// Result of ingesting a dataset file.
#[derive(Debug)]
pub struct Ingest<F> {
    /// One example per word of every accepted row.
    pub examples: Vec<LabeledExample<F>>,
    /// Accepted rows in file order.
    pub rows: Vec<DatasetRow>,
    pub diagnostics: Vec<Diagnostic>,
}

impl<F> Ingest<F> {
    pub fn rejected(&self) -> usize {
        self.diagnostics.iter().filter(|d| d.line > 0).count()
    }
}

/// Parses rows without featurizing; returns `(line, row)` pairs plus
/// diagnostics for rejected lines.
pub fn parse_rows(text: &str) -> (Vec<(usize, DatasetRow)>, Vec<Diagnostic>) {
    let mut rows = Vec::new();
    let mut diagnostics = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        let (Some(identifier), Some(context), Some(pattern)) =
            (fields.next(), fields.next(), fields.next())
        else {
            diagnostics.push(Diagnostic {
                line: line_no,
                message: "expected `identifier TAB context TAB pattern`".to_string(),
            });
            continue;
        };
        let context: IdentifierContext = match context.trim().parse() {
            Ok(c) => c,
            Err(e) => {
                diagnostics.push(Diagnostic {
                    line: line_no,
                    message: e.to_string(),
                });
                continue;
            }
        };
        let pattern: GrammarPattern = match pattern.trim().parse() {
            Ok(p) => p,
            Err(e) => {
                diagnostics.push(Diagnostic {
                    line: line_no,
                    message: e.to_string(),
                });
                continue;
            }
        };
        rows.push((
            line_no,
            DatasetRow {
                identifier: identifier.trim().to_string(),
                context,
                pattern: pattern.0,
            },
        ));
    }
    if rows.is_empty() && diagnostics.is_empty() {
        diagnostics.push(Diagnostic {
            line: 0,
            message: "no rows found".to_string(),
        });
    }
    (rows, diagnostics)
}

/// Renders rows back to the TSV format accepted by [`parse_rows`].
pub fn serialize_rows(rows: &[DatasetRow]) -> String {
    let mut out = String::new();
    for row in rows {
        let pattern = GrammarPattern(row.pattern.clone());
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            row.identifier, row.context, pattern
        ));
    }
    out
}

/// Ingests a dataset: splits every accepted identifier and emits one
/// featurized example per word.
pub fn ingest<F: Scalar>(text: &str, resources: &Resources<F>) -> Result<Ingest<F>> {
    let (parsed, mut diagnostics) = parse_rows(text);
    let mut examples = Vec::new();
    let mut rows = Vec::new();
    for (line, row) in parsed {
        let words = match split(&row.identifier) {
            Ok(w) => w,
            Err(e) => {
                diagnostics.push(Diagnostic {
                    line,
                    message: e.to_string(),
                });
                continue;
            }
        };
        if words.count() != row.pattern.len() {
            diagnostics.push(Diagnostic {
                line,
                message: format!(
                    "identifier {:?} splits into {} word(s) but pattern has {} tag(s)",
                    row.identifier,
                    words.count(),
                    row.pattern.len()
                ),
            });
            continue;
        }
        let baseline_tags = resources.baseline.tag(&words, &resources.lexicon);
        for (i, &label) in row.pattern.iter().enumerate() {
            let features = extract(
                &words,
                i + 1,
                row.context,
                &resources.lexicon,
                &resources.vectors,
                &resources.concepts,
                &baseline_tags,
            )?;
            examples.push(LabeledExample { features, label });
        }
        rows.push(row);
    }
    Ok(Ingest {
        examples,
        rows,
        diagnostics,
    })
}

pub fn ingest_file<F: Scalar>(path: &Path, resources: &Resources<F>) -> Result<Ingest<F>> {
    let text = std::fs::read_to_string(path)?;
    ingest(&text, resources)
}
