//! Subcommand arguments and implementations.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::Args;
use tracing::warn;

use scalar_core::cache::{tag_cached, unix_now, Cache};
use scalar_core::dataset;
use scalar_core::features::IdentifierContext;
use scalar_core::gbt;
use scalar_core::metrics;
use scalar_core::pipeline::{ScalarTag, Tagger};
use scalar_core::resources::{ResourcePaths, Resources};
use scalar_core::{BoostedEnsemble64, Hyperparameters64, LabeledExample64, Resources64};

use crate::service::{self, AppState, Engine, TagResponse};

/// Word list and embedding overrides shared by every subcommand.
#[derive(Debug, Args, Clone, Default)]
pub struct ResourceArgs {
    /// Dictionary word list (newline-delimited)
    #[arg(long, env = "SCALAR_DICTIONARY", value_name = "FILE")]
    pub dictionary: Option<PathBuf>,
    /// User-supplied acceptable words
    #[arg(long, env = "SCALAR_USER_WORDS", value_name = "FILE")]
    pub user_words: Option<PathBuf>,
    /// User-supplied abbreviations
    #[arg(long, env = "SCALAR_ABBREVIATIONS", value_name = "FILE")]
    pub abbreviations: Option<PathBuf>,
    /// Word vector file (`word v1 ... vd` rows, optional count/dim header)
    #[arg(long, env = "SCALAR_EMBEDDINGS", value_name = "FILE")]
    pub embeddings: Option<PathBuf>,
    /// Most-frequent-tag lexicon (`word TAB tag`)
    #[arg(long, env = "SCALAR_TAG_LEXICON", value_name = "FILE")]
    pub tag_lexicon: Option<PathBuf>,
    /// Directory with closed-category list overrides
    #[arg(long, env = "SCALAR_CLOSED_LISTS", value_name = "DIR")]
    pub closed_lists: Option<PathBuf>,
}

impl ResourceArgs {
    pub fn load(&self) -> anyhow::Result<Resources64> {
        let paths = ResourcePaths {
            dictionary: self.dictionary.clone(),
            user_words: self.user_words.clone(),
            abbreviations: self.abbreviations.clone(),
            embeddings: self.embeddings.clone(),
            tag_lexicon: self.tag_lexicon.clone(),
            closed_lists: self.closed_lists.clone(),
        };
        Resources::from_paths(&paths).context("loading resources")
    }
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Dataset file: `identifier TAB context TAB pattern`
    #[arg(long, value_name = "FILE")]
    pub dataset: PathBuf,
    /// Where to write the trained model
    #[arg(long, short = 'o', default_value = "scalar-model.txt", value_name = "FILE")]
    pub output: PathBuf,
    #[arg(long, env = "SCALAR_ROUNDS", default_value_t = 100)]
    pub rounds: usize,
    #[arg(long, env = "SCALAR_LEARNING_RATE", default_value_t = 0.1)]
    pub learning_rate: f64,
    #[arg(long, env = "SCALAR_MAX_DEPTH", default_value_t = 3)]
    pub max_depth: usize,
    #[arg(long, env = "SCALAR_MIN_SAMPLES_LEAF", default_value_t = 1)]
    pub min_samples_leaf: usize,
    #[arg(long, env = "SCALAR_SEED", default_value_t = 42)]
    pub seed: u64,
    /// Stratified cross-validation folds within the training portion
    #[arg(long, env = "SCALAR_FOLDS", default_value_t = 10)]
    pub folds: usize,
    /// Fraction of rows used for training; the rest is the held-out test set
    #[arg(long, env = "SCALAR_TRAIN_FRACTION", default_value_t = 0.7)]
    pub train_fraction: f64,
    /// Print the held-out report as JSON instead of a table
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub resources: ResourceArgs,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long, value_name = "FILE")]
    pub dataset: PathBuf,
    #[arg(long, env = "SCALAR_MODEL", value_name = "FILE")]
    pub model: PathBuf,
    /// Print the report as JSON instead of a table
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub resources: ResourceArgs,
}

#[derive(Debug, Args)]
pub struct TagArgs {
    /// Identifier to annotate
    pub identifier: String,
    /// Where the identifier appeared: function, class, attribute, parameter,
    /// or declaration
    #[arg(long, short = 'c')]
    pub context: String,
    #[arg(long, env = "SCALAR_MODEL", value_name = "FILE")]
    pub model: PathBuf,
    /// Persist encounters to this JSON cache file
    #[arg(long, env = "SCALAR_CACHE_FILE", value_name = "FILE")]
    pub cache_file: Option<PathBuf>,
    #[command(flatten)]
    pub resources: ResourceArgs,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, env = "SCALAR_MODEL", value_name = "FILE")]
    pub model: PathBuf,
    #[arg(long, env = "SCALAR_HOST", default_value = "127.0.0.1")]
    pub host: String,
    #[arg(long, short = 'p', env = "SCALAR_PORT", default_value_t = 8080)]
    pub port: u16,
    #[arg(long, env = "SCALAR_CACHE_FILE", value_name = "FILE")]
    pub cache_file: Option<PathBuf>,
    #[command(flatten)]
    pub resources: ResourceArgs,
}

#[derive(Debug, Args)]
pub struct IngestCheckArgs {
    #[arg(long, value_name = "FILE")]
    pub dataset: PathBuf,
    #[command(flatten)]
    pub resources: ResourceArgs,
}

fn load_model(path: &std::path::Path) -> anyhow::Result<BoostedEnsemble64> {
    BoostedEnsemble64::load(path).with_context(|| format!("loading model {}", path.display()))
}

/// Opens the cache for a model version, falling back to a fresh in-memory
/// cache when the file is unusable.
fn open_cache(path: Option<&PathBuf>, model_version: &str) -> Arc<Cache> {
    match path {
        Some(p) => match Cache::open(p, model_version) {
            Ok(cache) => Arc::new(cache),
            Err(e) => {
                warn!("{e}; continuing with an in-memory cache");
                Arc::new(Cache::in_memory(model_version))
            }
        },
        None => Arc::new(Cache::in_memory(model_version)),
    }
}

pub fn train(args: &TrainArgs) -> anyhow::Result<()> {
    let resources = args.resources.load()?;
    let text = std::fs::read_to_string(&args.dataset)
        .with_context(|| format!("reading dataset {}", args.dataset.display()))?;
    let ingest = dataset::ingest(&text, &resources)?;
    for d in &ingest.diagnostics {
        eprintln!("warning: {d}");
    }
    if ingest.examples.is_empty() {
        bail!("dataset produced no labeled examples");
    }
    println!(
        "ingested {} identifiers ({} words, {} rejected rows)",
        ingest.rows.len(),
        ingest.examples.len(),
        ingest.rejected()
    );

    let hp = Hyperparameters64 {
        n_rounds: args.rounds,
        learning_rate: args.learning_rate,
        max_depth: args.max_depth,
        min_samples_leaf: args.min_samples_leaf,
        seed: args.seed,
    };
    let (train_set, test_set) = gbt::stratified_split(&ingest.examples, args.train_fraction, args.seed)?;
    println!(
        "stratified split: {} train / {} test (fraction {})",
        train_set.len(),
        test_set.len(),
        args.train_fraction
    );

    let cv = gbt::cross_validate(&train_set, &hp, args.folds)?;
    for w in &cv.warnings {
        eprintln!("warning: {w}");
    }
    for fold in &cv.folds {
        println!(
            "fold {:>2}: {:>4} words  accuracy {:.4}  balanced accuracy {:.4}",
            fold.fold, fold.size, fold.accuracy, fold.balanced_accuracy
        );
    }
    println!(
        "cv mean: accuracy {:.4}  balanced accuracy {:.4}",
        cv.mean_accuracy, cv.mean_balanced_accuracy
    );

    let model = gbt::fit(&train_set, &hp)?;
    model.save(&args.output)?;
    println!(
        "model written to {} (version {})",
        args.output.display(),
        model.version_hash()
    );

    let report = evaluate_examples(&model, &test_set)?;
    println!("held-out test report:");
    if args.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.text_table());
    }
    Ok(())
}

fn evaluate_examples(
    model: &BoostedEnsemble64,
    examples: &[LabeledExample64],
) -> anyhow::Result<metrics::MetricReport<f64>> {
    let started = Instant::now();
    let pairs: Vec<(ScalarTag, ScalarTag)> = examples
        .iter()
        .map(|e| Ok((e.label, model.predict(&e.features)?.tag)))
        .collect::<scalar_core::Result<_>>()?;
    let elapsed = started.elapsed().as_secs_f64();
    Ok(metrics::evaluate(&pairs, elapsed)?)
}

pub fn evaluate(args: &EvaluateArgs) -> anyhow::Result<()> {
    let resources = args.resources.load()?;
    let model = load_model(&args.model)?;
    let text = std::fs::read_to_string(&args.dataset)
        .with_context(|| format!("reading dataset {}", args.dataset.display()))?;
    let ingest = dataset::ingest(&text, &resources)?;
    for d in &ingest.diagnostics {
        eprintln!("warning: {d}");
    }
    if ingest.examples.is_empty() {
        bail!("dataset produced no labeled examples");
    }
    let report = evaluate_examples(&model, &ingest.examples)?;
    if args.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.text_table());
    }
    Ok(())
}

pub fn tag(args: &TagArgs) -> anyhow::Result<()> {
    let resources = args.resources.load()?;
    let model = load_model(&args.model)?;
    let version = model.version_hash();
    let context: IdentifierContext = args.context.parse::<IdentifierContext>()?;
    let tagger = Tagger::new(model, resources)?;
    let cache = open_cache(args.cache_file.as_ref(), &version);
    let (entry, cached) = tag_cached(&tagger, &cache, &args.identifier, context, unix_now())?;
    cache.flush()?;
    let response = TagResponse {
        identifier: args.identifier.clone(),
        context: context.as_str().to_string(),
        words: entry.annotation,
        first_seen: entry.first_seen,
        last_seen: entry.last_seen,
        count: entry.count,
        cached,
    };
    println!("{}", serde_json::to_string_pretty(&response)?);
    Ok(())
}

pub fn ingest_check(args: &IngestCheckArgs) -> anyhow::Result<()> {
    let resources = args.resources.load()?;
    let text = std::fs::read_to_string(&args.dataset)
        .with_context(|| format!("reading dataset {}", args.dataset.display()))?;
    let ingest = dataset::ingest(&text, &resources)?;
    for d in &ingest.diagnostics {
        println!("{d}");
    }
    println!(
        "{} identifiers accepted, {} words, {} rows rejected",
        ingest.rows.len(),
        ingest.examples.len(),
        ingest.rejected()
    );
    let mut counts = std::collections::BTreeMap::new();
    for e in &ingest.examples {
        *counts.entry(e.label.code()).or_insert(0usize) += 1;
    }
    for tag in ScalarTag::ALL {
        println!(
            "  {:<4} {:>5}",
            tag.code(),
            counts.get(tag.code()).copied().unwrap_or(0)
        );
    }
    if ingest.rejected() > 0 {
        bail!("{} row(s) rejected", ingest.rejected());
    }
    Ok(())
}

pub fn serve(args: &ServeArgs) -> anyhow::Result<()> {
    let resources = args.resources.load()?;
    let model = load_model(&args.model)?;
    let model_version = model.version_hash();
    let tagger = Tagger::new(model, resources)?;
    let cache = open_cache(args.cache_file.as_ref(), &model_version);
    let engine = Arc::new(Engine {
        tagger,
        model_version,
    });
    let state = Arc::new(AppState::new(Some(engine), cache));
    let addr: std::net::SocketAddr = format!("{}:{}", args.host, args.port)
        .parse()
        .with_context(|| format!("invalid listen address {}:{}", args.host, args.port))?;
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(service::serve(state, addr))
}
