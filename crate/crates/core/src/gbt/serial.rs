//! Self-describing text serialization for trained ensembles.
//!
//! The format is line oriented: a versioned header, the scalar width, the
//! feature arity, classes, hyperparameters, base scores, then every tree as a
//! node list. Floats are written in shortest round-trip decimal form, so
//! serialize -> parse -> serialize reproduces the byte-identical document.

use std::path::Path;

use sha2::{Digest, Sha256};

use super::{BoostedEnsemble, Hyperparameters, RegressionTree, TreeNode};
use crate::error::{Error, Result};
use crate::pipeline::ScalarTag;
use crate::Scalar;

const MAGIC: &str = "scalar-gbt v1";

impl<F: Scalar> BoostedEnsemble<F> {
    /// Renders the model in the portable text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(MAGIC);
        out.push('\n');
        out.push_str(&format!("scalar_bits {}\n", std::mem::size_of::<F>() * 8));
        out.push_str(&format!("arity {}\n", self.arity));
        out.push_str(&format!("classes {}", self.classes.len()));
        for c in &self.classes {
            out.push(' ');
            out.push_str(c.code());
        }
        out.push('\n');
        let hp = &self.hyperparameters;
        out.push_str(&format!("rounds {}\n", hp.n_rounds));
        out.push_str(&format!("learning_rate {}\n", hp.learning_rate));
        out.push_str(&format!("max_depth {}\n", hp.max_depth));
        out.push_str(&format!("min_samples_leaf {}\n", hp.min_samples_leaf));
        out.push_str(&format!("seed {}\n", hp.seed));
        out.push_str("base_scores");
        for b in &self.base_scores {
            out.push(' ');
            out.push_str(&b.to_string());
        }
        out.push('\n');
        out.push_str(&format!(
            "trees {}\n",
            self.trees.len() * self.classes.len()
        ));
        for (round, row) in self.trees.iter().enumerate() {
            for (class, tree) in row.iter().enumerate() {
                out.push_str(&format!("tree {round} {class} {}\n", tree.nodes.len()));
                for (i, node) in tree.nodes.iter().enumerate() {
                    match node {
                        TreeNode::Split {
                            feature,
                            threshold,
                            left,
                            right,
                        } => out.push_str(&format!(
                            "node {i} split {feature} {threshold} {left} {right}\n"
                        )),
                        TreeNode::Leaf { value } => {
                            out.push_str(&format!("node {i} leaf {value}\n"))
                        }
                    }
                }
            }
        }
        out.push_str("end\n");
        out
    }

    /// Parses a model from the text format, validating structure and counts.
    pub fn from_text(text: &str) -> Result<Self> {
        Parser::new(text).parse()
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_text(&text)
    }

    /// Hex SHA-256 of the serialized model; used to key caches to the model
    /// that produced them.
    pub fn version_hash(&self) -> String {
        let digest = Sha256::digest(self.to_text().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

struct Parser<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

fn malformed(line_no: usize, message: impl std::fmt::Display) -> Error {
    Error::ModelFormat(format!("line {}: {message}", line_no + 1))
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            lines: text.lines().enumerate(),
        }
    }

    fn next_line(&mut self) -> Result<(usize, &'a str)> {
        self.lines
            .next()
            .ok_or_else(|| Error::ModelFormat("unexpected end of file".to_string()))
    }

    fn expect_field<T: std::str::FromStr>(&mut self, key: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        let (no, line) = self.next_line()?;
        let rest = line
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| malformed(no, format!("expected `{key} <value>`, got {line:?}")))?;
        rest.trim()
            .parse::<T>()
            .map_err(|e| malformed(no, format!("bad {key} value {rest:?}: {e}")))
    }

    fn parse<F: Scalar>(mut self) -> Result<BoostedEnsemble<F>> {
        let (no, magic) = self.next_line()?;
        if magic != MAGIC {
            return Err(malformed(no, format!("expected {MAGIC:?} header")));
        }
        let bits: usize = self.expect_field("scalar_bits")?;
        if bits != std::mem::size_of::<F>() * 8 {
            return Err(Error::ModelFormat(format!(
                "model stores {bits}-bit scalars, loader expects {}-bit",
                std::mem::size_of::<F>() * 8
            )));
        }
        let arity: usize = self.expect_field("arity")?;

        let (no, line) = self.next_line()?;
        let mut fields = line.split_whitespace();
        if fields.next() != Some("classes") {
            return Err(malformed(no, "expected `classes`"));
        }
        let count: usize = fields
            .next()
            .ok_or_else(|| malformed(no, "missing class count"))?
            .parse()
            .map_err(|e| malformed(no, format!("bad class count: {e}")))?;
        let classes: Vec<ScalarTag> = fields
            .map(|c| c.parse::<ScalarTag>())
            .collect::<Result<_>>()?;
        if classes.len() != count || classes.is_empty() {
            return Err(malformed(no, "class count does not match class list"));
        }

        let n_rounds: usize = self.expect_field("rounds")?;
        let learning_rate: F = self.expect_field("learning_rate")?;
        let max_depth: usize = self.expect_field("max_depth")?;
        let min_samples_leaf: usize = self.expect_field("min_samples_leaf")?;
        let seed: u64 = self.expect_field("seed")?;

        let (no, line) = self.next_line()?;
        let rest = line
            .strip_prefix("base_scores")
            .ok_or_else(|| malformed(no, "expected `base_scores`"))?;
        let base_scores: Vec<F> = rest
            .split_whitespace()
            .map(|v| {
                v.parse::<F>()
                    .map_err(|e| malformed(no, format!("bad base score {v:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        if base_scores.len() != classes.len() {
            return Err(malformed(no, "one base score per class required"));
        }

        let total_trees: usize = self.expect_field("trees")?;
        if total_trees != n_rounds * classes.len() {
            return Err(Error::ModelFormat(format!(
                "tree count {total_trees} != rounds {n_rounds} x classes {}",
                classes.len()
            )));
        }
        let mut trees: Vec<Vec<RegressionTree<F>>> = Vec::with_capacity(n_rounds);
        for round in 0..n_rounds {
            let mut row = Vec::with_capacity(classes.len());
            for class in 0..classes.len() {
                row.push(self.parse_tree(round, class, arity)?);
            }
            trees.push(row);
        }
        let (no, line) = self.next_line()?;
        if line != "end" {
            return Err(malformed(no, "expected `end`"));
        }
        Ok(BoostedEnsemble {
            classes,
            arity,
            base_scores,
            trees,
            hyperparameters: Hyperparameters {
                n_rounds,
                learning_rate,
                max_depth,
                min_samples_leaf,
                seed,
            },
            train_losses: Vec::new(),
        })
    }

    fn parse_tree<F: Scalar>(
        &mut self,
        round: usize,
        class: usize,
        arity: usize,
    ) -> Result<RegressionTree<F>> {
        let (no, line) = self.next_line()?;
        let mut fields = line.split_whitespace();
        if fields.next() != Some("tree") {
            return Err(malformed(no, "expected `tree`"));
        }
        let got_round: usize = parse_field(&mut fields, no, "round")?;
        let got_class: usize = parse_field(&mut fields, no, "class")?;
        let n_nodes: usize = parse_field(&mut fields, no, "node count")?;
        if got_round != round || got_class != class {
            return Err(malformed(
                no,
                format!("expected tree {round} {class}, got {got_round} {got_class}"),
            ));
        }
        if n_nodes == 0 {
            return Err(malformed(no, "tree must have at least one node"));
        }
        let mut nodes = Vec::with_capacity(n_nodes);
        for i in 0..n_nodes {
            let (no, line) = self.next_line()?;
            let mut fields = line.split_whitespace();
            if fields.next() != Some("node") {
                return Err(malformed(no, "expected `node`"));
            }
            let idx: usize = parse_field(&mut fields, no, "node index")?;
            if idx != i {
                return Err(malformed(no, format!("expected node {i}, got {idx}")));
            }
            match fields.next() {
                Some("split") => {
                    let feature: usize = parse_field(&mut fields, no, "feature")?;
                    let threshold: F = parse_field(&mut fields, no, "threshold")?;
                    let left: usize = parse_field(&mut fields, no, "left child")?;
                    let right: usize = parse_field(&mut fields, no, "right child")?;
                    if feature >= arity {
                        return Err(malformed(no, format!("feature {feature} out of arity")));
                    }
                    if left >= n_nodes || right >= n_nodes || left == idx || right == idx {
                        return Err(malformed(no, "child index out of range"));
                    }
                    nodes.push(TreeNode::Split {
                        feature,
                        threshold,
                        left,
                        right,
                    });
                }
                Some("leaf") => {
                    let value: F = parse_field(&mut fields, no, "leaf value")?;
                    nodes.push(TreeNode::Leaf { value });
                }
                other => {
                    return Err(malformed(no, format!("expected split|leaf, got {other:?}")));
                }
            }
        }
        Ok(RegressionTree { nodes })
    }
}

fn parse_field<'a, T: std::str::FromStr>(
    fields: &mut impl Iterator<Item = &'a str>,
    line_no: usize,
    what: &str,
) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    let raw = fields
        .next()
        .ok_or_else(|| malformed(line_no, format!("missing {what}")))?;
    raw.parse::<T>()
        .map_err(|e| malformed(line_no, format!("bad {what} {raw:?}: {e}")))
}
