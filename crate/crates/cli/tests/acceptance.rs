//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Run with `cargo test -p scalar-cli --test acceptance -- --nocapture` to
//! see the per-criterion lines.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scalar_cli::service::{build_router, AppState, Engine};
use scalar_core::cache::{tag_cached, Cache};
use scalar_core::dataset;
use scalar_core::features::{FeatureVector, IdentifierContext};
use scalar_core::gbt::{
    self, stratified_folds, stratified_split_indices, Hyperparameters, LabeledExample,
};
use scalar_core::metrics;
use scalar_core::pipeline::{map_ptb_to_scalar, GrammarPattern, ScalarTag, Tagger};
use scalar_core::resources::Resources;
use scalar_core::tokenizer::split;
use scalar_core::{baseline::PtbTag, BoostedEnsemble64, Tagger64};

const TAGS: [ScalarTag; 11] = ScalarTag::ALL;

fn seed_dataset_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/seed_dataset.tsv")
}

struct Fixture {
    tagger: Tagger64,
    examples: Vec<LabeledExample<f64>>,
    training_seconds: f64,
}

static FIXTURE: OnceLock<Fixture> = OnceLock::new();

/// Model trained once on the full shipped seed dataset; shared by the
/// criteria that need a trained tagger.
fn fixture() -> &'static Fixture {
    FIXTURE.get_or_init(|| {
        let started = Instant::now();
        let resources: Resources<f64> = Resources::embedded().unwrap();
        let text = std::fs::read_to_string(seed_dataset_path()).unwrap();
        let ingest = dataset::ingest(&text, &resources).unwrap();
        assert_eq!(ingest.rejected(), 0, "seed dataset must ingest cleanly");
        let hp = Hyperparameters {
            n_rounds: 200,
            max_depth: 4,
            ..Hyperparameters::default()
        };
        let model = gbt::fit(&ingest.examples, &hp).unwrap();
        let tagger = Tagger::new(model, resources).unwrap();
        Fixture {
            tagger,
            examples: ingest.examples,
            training_seconds: started.elapsed().as_secs_f64(),
        }
    })
}

fn random_examples(seed: u64, n: usize, dims: usize, classes: usize) -> Vec<LabeledExample<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| LabeledExample {
            features: FeatureVector::from_values(
                (0..dims).map(|_| rng.random_range(-4.0..4.0)).collect(),
            ),
            label: TAGS[rng.random_range(0..classes)],
        })
        .collect()
}

#[test]
fn acceptance_01_gold_pattern_suite() {
    let started = Instant::now();
    let fx = fixture();
    let gold = [
        ("actionToIndexMap", IdentifierContext::Declaration, "N P NM N"),
        ("as_binary", IdentifierContext::Declaration, "P N"),
        ("timeForEachLine", IdentifierContext::Declaration, "N P DT N"),
        ("server_and_port", IdentifierContext::Declaration, "N CJ N"),
        ("openIfEmpty", IdentifierContext::Function, "V CJ NM"),
        ("adjustToCamera", IdentifierContext::Function, "V P N"),
        ("bitSet", IdentifierContext::Declaration, "NM N"),
    ];
    for (identifier, context, expected) in gold {
        let annotation = fx.tagger.tag_identifier(identifier, context).unwrap();
        let pattern = GrammarPattern::of(&annotation).to_string();
        assert_eq!(pattern, expected, "{identifier}");
    }
    let total = fx.training_seconds + started.elapsed().as_secs_f64();
    assert!(total < 60.0, "gold-pattern suite took {total:.1}s");
    println!(
        "ACCEPTANCE C1 PASS: 7/7 gold grammar patterns reproduced in {total:.1}s end-to-end"
    );
}

mod metric_oracle {
    use super::*;

    /// Brute-force enumeration of the confusion matrix and every metric,
    /// kept independent of the metrics module.
    struct Oracle {
        accuracy: f64,
        balanced_accuracy: f64,
        weighted_precision: f64,
        weighted_recall: f64,
        weighted_f1: f64,
        per_tag: HashMap<ScalarTag, (f64, f64, f64, u64)>,
    }

    fn enumerate(pairs: &[(ScalarTag, ScalarTag)]) -> Oracle {
        let mut counts: HashMap<(ScalarTag, ScalarTag), u64> = HashMap::new();
        for &(g, p) in pairs {
            *counts.entry((g, p)).or_default() += 1;
        }
        let total = pairs.len() as f64;
        let mut per_tag = HashMap::new();
        let mut correct = 0u64;
        for tag in TAGS {
            let support: u64 = TAGS.iter().map(|&p| counts.get(&(tag, p)).copied().unwrap_or(0)).sum();
            let column: u64 = TAGS.iter().map(|&g| counts.get(&(g, tag)).copied().unwrap_or(0)).sum();
            let hit = counts.get(&(tag, tag)).copied().unwrap_or(0);
            correct += hit;
            let recall = if support == 0 { 0.0 } else { hit as f64 / support as f64 };
            let precision = if column == 0 { 0.0 } else { hit as f64 / column as f64 };
            let f1 = if precision + recall > 0.0 {
                2.0 * precision * recall / (precision + recall)
            } else {
                0.0
            };
            per_tag.insert(tag, (precision, recall, f1, support));
        }
        let accuracy = correct as f64 / total;
        let present: Vec<_> = TAGS.iter().filter(|t| per_tag[t].3 > 0).collect();
        let balanced_accuracy =
            present.iter().map(|t| per_tag[t].1).sum::<f64>() / present.len() as f64;
        let weighted = |pick: fn(&(f64, f64, f64, u64)) -> f64| {
            TAGS.iter()
                .map(|t| per_tag[t].3 as f64 * pick(&per_tag[t]))
                .sum::<f64>()
                / total
        };
        Oracle {
            accuracy,
            balanced_accuracy,
            weighted_precision: weighted(|m| m.0),
            weighted_recall: weighted(|m| m.1),
            weighted_f1: weighted(|m| m.2),
            per_tag,
        }
    }

    #[test]
    fn acceptance_02_metric_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for fixture_no in 0..10 {
            let n = rng.random_range(1..=50);
            let pairs: Vec<(ScalarTag, ScalarTag)> = (0..n)
                .map(|_| {
                    let gold = TAGS[rng.random_range(0..TAGS.len())];
                    let predicted = if rng.random_bool(0.6) {
                        gold
                    } else {
                        TAGS[rng.random_range(0..TAGS.len())]
                    };
                    (gold, predicted)
                })
                .collect();
            let report = metrics::evaluate::<f64>(&pairs, 0.0).unwrap();
            let oracle = enumerate(&pairs);
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-9;
            assert!(close(report.accuracy, oracle.accuracy), "fixture {fixture_no}");
            assert!(close(report.balanced_accuracy, oracle.balanced_accuracy));
            assert!(close(report.weighted_precision, oracle.weighted_precision));
            assert!(close(report.weighted_recall, oracle.weighted_recall));
            assert!(close(report.weighted_f1, oracle.weighted_f1));
            for t in &report.per_tag {
                let (precision, recall, f1, support) = oracle.per_tag[&t.tag];
                assert!(close(t.precision, precision));
                assert!(close(t.recall, recall));
                assert!(close(t.f1, f1));
                assert_eq!(t.support, support);
            }
            assert_eq!(
                report.accuracy.to_bits(),
                report.weighted_recall.to_bits(),
                "fixture {fixture_no}: accuracy != weighted recall"
            );
        }
        println!(
            "ACCEPTANCE C2 PASS: evaluate() matches enumeration oracle on 10 fixtures; accuracy == weighted recall on all"
        );
    }
}

#[test]
fn acceptance_03_boosting_properties() {
    // Training log-loss non-increasing on 5 random fixtures.
    for seed in 1..=5u64 {
        let data = random_examples(seed, 60, 3, 4);
        let hp = Hyperparameters {
            n_rounds: 30,
            seed,
            ..Hyperparameters::default()
        };
        let model = gbt::fit(&data, &hp).unwrap();
        for (r, w) in model.train_losses().windows(2).enumerate() {
            assert!(
                w[1] <= w[0] + 1e-12,
                "seed {seed}: loss rose at round {}: {} -> {}",
                r + 1,
                w[0],
                w[1]
            );
        }
    }

    // Round-1 stump equals the exhaustive-search optimum on a 2-class,
    // 1-feature dataset (any member of the float-tied optimal set).
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let n = 26;
    let xs: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
    let labels: Vec<ScalarTag> = xs
        .iter()
        .map(|&x| {
            if x + rng.random_range(-1.0..1.0) > 0.0 {
                ScalarTag::N
            } else {
                ScalarTag::V
            }
        })
        .collect();
    let data: Vec<LabeledExample<f64>> = xs
        .iter()
        .zip(&labels)
        .map(|(&x, &l)| LabeledExample {
            features: FeatureVector::from_values(vec![x]),
            label: l,
        })
        .collect();
    let hp = Hyperparameters {
        n_rounds: 1,
        max_depth: 1,
        ..Hyperparameters::default()
    };
    let model = gbt::fit(&data, &hp).unwrap();
    let p0 = labels.iter().filter(|&&l| l == ScalarTag::N).count() as f64 / n as f64;
    let residuals: Vec<f64> = labels
        .iter()
        .map(|&l| if l == ScalarTag::N { 1.0 - p0 } else { -p0 })
        .collect();
    let optimal = brute_force_stumps(&xs, &residuals);
    let (feature, threshold) = model.trees()[0][0].root_split().expect("stump splits");
    assert_eq!(feature, 0);
    assert!(
        optimal.iter().any(|t| (threshold - t).abs() < 1e-12),
        "stump {threshold} not among oracle optima {optimal:?}"
    );

    // Softmax outputs sum to 1 +- 1e-9 on 1,000 random inputs.
    let data = random_examples(99, 80, 4, 6);
    let hp = Hyperparameters {
        n_rounds: 20,
        ..Hyperparameters::default()
    };
    let model = gbt::fit(&data, &hp).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for _ in 0..1000 {
        let fv = FeatureVector::from_values(
            (0..4).map(|_| rng.random_range(-20.0..20.0)).collect(),
        );
        let p = model.predict(&fv).unwrap().probabilities;
        let sum: f64 = p.iter().sum();
        assert!((sum - 1.0).abs() <= 1e-9, "softmax sum {sum}");
    }
    println!(
        "ACCEPTANCE C3 PASS: non-increasing loss on 5 fixtures; stump matches exhaustive oracle; 1000 softmax sums within 1e-9"
    );
}

/// Exhaustive stump search over midpoints, scored by split squared error;
/// returns all thresholds tied with the optimum within float noise.
fn brute_force_stumps(xs: &[f64], residuals: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].partial_cmp(&xs[b]).unwrap());
    let sse = |rows: &[usize]| -> f64 {
        let mean: f64 = rows.iter().map(|&r| residuals[r]).sum::<f64>() / rows.len() as f64;
        rows.iter().map(|&r| (residuals[r] - mean).powi(2)).sum()
    };
    let mut candidates = Vec::new();
    for cut in 1..order.len() {
        let lo = xs[order[cut - 1]];
        let hi = xs[order[cut]];
        if hi <= lo {
            continue;
        }
        candidates.push((sse(&order[..cut]) + sse(&order[cut..]), (lo + hi) / 2.0));
    }
    let best = candidates.iter().map(|(s, _)| *s).fold(f64::INFINITY, f64::min);
    let band = 1e-9 * (1.0 + best.abs());
    candidates
        .into_iter()
        .filter(|(s, _)| *s <= best + band)
        .map(|(_, t)| t)
        .collect()
}

#[test]
fn acceptance_04_stratification() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for round in 0..100 {
        let n_classes = rng.random_range(2..=TAGS.len());
        let mut labels = Vec::new();
        for tag in TAGS.iter().take(n_classes) {
            let count = rng.random_range(2..=40);
            labels.extend(std::iter::repeat_n(*tag, count));
        }
        let (train, test) = stratified_split_indices(&labels, 0.7, round).unwrap();
        assert_eq!(train.len() + test.len(), labels.len());
        for tag in TAGS.iter().take(n_classes) {
            let class_size = labels.iter().filter(|&&l| l == *tag).count();
            let in_train = train.iter().filter(|&&i| labels[i] == *tag).count();
            let ideal = (0.7 * class_size as f64).round();
            assert!(
                (in_train as f64 - ideal).abs() <= 1.0,
                "round {round}: class {tag} train count {in_train} vs round(0.7*{class_size})={ideal}"
            );
        }
    }

    // 10-fold partitions are disjoint and covering.
    let mut labels = Vec::new();
    for (i, tag) in TAGS.iter().enumerate() {
        labels.extend(std::iter::repeat_n(*tag, 12 + i));
    }
    let (folds, warnings) = stratified_folds(&labels, 10, 5).unwrap();
    assert!(warnings.is_empty());
    assert_eq!(folds.len(), labels.len());
    let mut sizes = vec![0usize; 10];
    for &f in &folds {
        assert!(f < 10);
        sizes[f] += 1;
    }
    assert!(sizes.iter().all(|&s| s > 0), "empty fold in {sizes:?}");
    assert_eq!(sizes.iter().sum::<usize>(), labels.len());
    println!(
        "ACCEPTANCE C4 PASS: 100 random splits within +-1 of round(0.7*class); 10 folds disjoint and covering"
    );
}

#[test]
fn acceptance_05_splitter_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for _ in 0..1000 {
        let n_tokens = rng.random_range(1..=6);
        let tokens: Vec<String> = (0..n_tokens)
            .map(|_| {
                let len = rng.random_range(1..=8);
                (0..len)
                    .map(|_| (b'a' + rng.random_range(0..26u8)) as char)
                    .collect()
            })
            .collect();
        let joined = tokens.join("_");
        let seq = split(&joined).unwrap();
        assert_eq!(seq.words(), &tokens[..], "round trip of {joined:?}");
    }

    let examples = [
        ("employeeName", vec!["employee", "name"]),
        ("bit_set", vec!["bit", "set"]),
        ("XMLReader", vec!["xml", "reader"]),
        ("fPtr", vec!["f", "ptr"]),
    ];
    for (identifier, expected) in examples {
        assert_eq!(split(identifier).unwrap().words(), &expected[..]);
    }
    println!(
        "ACCEPTANCE C5 PASS: 1000-identifier round-trip property; all four splitting examples exact"
    );
}

#[test]
fn acceptance_06_mapping_totality() {
    let mut reachable = std::collections::BTreeSet::new();
    for tag in PtbTag::ALL {
        let mapped = map_ptb_to_scalar(tag);
        assert_ne!(mapped, ScalarTag::PRE, "{tag} must not map to PRE");
        reachable.insert(mapped);
    }
    assert_eq!(PtbTag::ALL.len(), 27);
    assert_eq!(reachable.len(), 10);
    println!(
        "ACCEPTANCE C6 PASS: mapping total over 27 Penn Treebank codes, PRE unreachable, 10 tags covered"
    );
}

#[test]
fn acceptance_07_caching() {
    let fx = fixture();
    let cache = Cache::in_memory("acceptance");

    // Second request returns the identical annotation with the count
    // incremented.
    let (first, hit1) = tag_cached(
        &fx.tagger,
        &cache,
        "timeForEachLine",
        IdentifierContext::Declaration,
        1_000,
    )
    .unwrap();
    let (second, hit2) = tag_cached(
        &fx.tagger,
        &cache,
        "timeForEachLine",
        IdentifierContext::Declaration,
        1_010,
    )
    .unwrap();
    assert!(!hit1 && hit2);
    assert_eq!(first.annotation, second.annotation);
    assert_eq!(second.count, 2);
    assert_eq!(second.first_seen, 1_000);
    assert_eq!(second.last_seen, 1_010);

    // Median cache-hit latency at most a tenth of first-time latency over
    // 50 identifiers.
    let text = std::fs::read_to_string(seed_dataset_path()).unwrap();
    let (rows, _) = dataset::parse_rows(&text);
    let identifiers: Vec<(String, IdentifierContext)> = rows
        .iter()
        .take(50)
        .map(|(_, r)| (r.identifier.clone(), r.context))
        .collect();
    assert_eq!(identifiers.len(), 50);
    let latency_cache = Cache::in_memory("latency");
    let mut miss_ns = Vec::new();
    let mut hit_ns = Vec::new();
    for (identifier, context) in &identifiers {
        let t = Instant::now();
        let (_, was_hit) = tag_cached(&fx.tagger, &latency_cache, identifier, *context, 1).unwrap();
        miss_ns.push(t.elapsed().as_nanos());
        assert!(!was_hit);
    }
    for (identifier, context) in &identifiers {
        let t = Instant::now();
        let (_, was_hit) = tag_cached(&fx.tagger, &latency_cache, identifier, *context, 2).unwrap();
        hit_ns.push(t.elapsed().as_nanos());
        assert!(was_hit);
    }
    let median = |v: &mut Vec<u128>| {
        v.sort_unstable();
        v[v.len() / 2]
    };
    let miss_median = median(&mut miss_ns);
    let hit_median = median(&mut hit_ns);
    assert!(
        hit_median * 10 <= miss_median,
        "hit median {hit_median}ns vs first-time median {miss_median}ns"
    );

    // 32 concurrent HTTP requests for one key add up to exactly 32.
    let counts = concurrent_requests(32);
    let mut sorted = counts.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, (1..=32u64).collect::<Vec<_>>(), "lost updates: {counts:?}");
    println!(
        "ACCEPTANCE C7 PASS: memoized repeat, hit median {hit_median}ns <= 1/10 of {miss_median}ns, 32 concurrent requests count to 32"
    );
}

fn concurrent_requests(n: usize) -> Vec<u64> {
    let fx = fixture();
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .worker_threads(8)
        .enable_all()
        .build()
        .unwrap();
    runtime.block_on(async move {
        let engine = Arc::new(Engine {
            tagger: fx.tagger.clone(),
            model_version: "acceptance".to_string(),
        });
        let cache = Arc::new(Cache::in_memory("acceptance"));
        let state = Arc::new(AppState::new(Some(engine), cache));
        let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
        let addr = listener.local_addr().unwrap();
        tokio::spawn(async move {
            axum::serve(listener, build_router(state)).await.unwrap();
        });
        let client = reqwest::Client::new();
        let mut handles = Vec::new();
        for _ in 0..n {
            let client = client.clone();
            let url = format!("http://{addr}/tag/function/adjustToCamera");
            handles.push(tokio::spawn(async move {
                let body: serde_json::Value =
                    client.get(&url).send().await.unwrap().json().await.unwrap();
                body["count"].as_u64().unwrap()
            }));
        }
        let mut counts = Vec::new();
        for h in handles {
            counts.push(h.await.unwrap());
        }
        counts
    })
}

#[test]
fn acceptance_08_determinism() {
    let fx = fixture();
    let hp = Hyperparameters {
        n_rounds: 30,
        seed: 7,
        ..Hyperparameters::default()
    };
    let run = || {
        let (train, _) = gbt::stratified_split(&fx.examples, 0.7, hp.seed).unwrap();
        gbt::fit(&train, &hp).unwrap().to_text()
    };
    let first = run();
    let second = run();
    assert_eq!(first, second, "same seed must give bitwise-identical models");

    let reparsed = BoostedEnsemble64::from_text(&first).unwrap();
    assert_eq!(reparsed.to_text(), first, "round trip must be bit-exact");
    println!(
        "ACCEPTANCE C8 PASS: identical-seed training runs byte-identical; serialization round-trips bit-exactly"
    );
}

#[test]
fn acceptance_09_conditional_numeric_check() {
    let path = std::env::var("SCALAR_ORIGINAL_DATASET")
        .map(PathBuf::from)
        .unwrap_or_else(|_| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/original_dataset.tsv")
        });
    if !path.exists() {
        println!(
            "ACCEPTANCE C9 SKIP: original dataset not present at {} (set SCALAR_ORIGINAL_DATASET to supply it)",
            path.display()
        );
        return;
    }
    let resources: Resources<f64> = Resources::embedded().unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let ingest = dataset::ingest(&text, &resources).unwrap();
    let hp = Hyperparameters {
        n_rounds: 200,
        max_depth: 4,
        ..Hyperparameters::default()
    };
    let (train, test) = gbt::stratified_split(&ingest.examples, 0.7, hp.seed).unwrap();
    let model = gbt::fit(&train, &hp).unwrap();
    let correct = test
        .iter()
        .filter(|e| model.predict(&e.features).unwrap().tag == e.label)
        .count();
    let accuracy = correct as f64 / test.len() as f64;
    assert!(accuracy >= 0.75, "held-out accuracy {accuracy:.4} < 0.75");
    println!("ACCEPTANCE C9 PASS: held-out accuracy {accuracy:.4} >= 0.75 on supplied dataset");
}

#[test]
fn acceptance_10_service_conformance() {
    let fx = fixture();
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .worker_threads(4)
        .enable_all()
        .build()
        .unwrap();
    runtime.block_on(async move {
        let engine = Arc::new(Engine {
            tagger: fx.tagger.clone(),
            model_version: "acceptance-v10".to_string(),
        });
        let cache = Arc::new(Cache::in_memory("acceptance-v10"));
        let state = Arc::new(AppState::new(Some(engine), cache));
        let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
        let addr = listener.local_addr().unwrap();
        tokio::spawn(async move {
            axum::serve(listener, build_router(state)).await.unwrap();
        });
        let client = reqwest::Client::new();

        let assert_tag_schema = |body: &serde_json::Value| {
            assert!(body["identifier"].is_string());
            assert!(body["context"].is_string());
            assert!(body["first_seen"].is_u64());
            assert!(body["last_seen"].is_u64());
            assert!(body["count"].is_u64());
            assert!(body["cached"].is_boolean());
            let words = body["words"].as_array().unwrap();
            assert!(!words.is_empty());
            for w in words {
                assert!(w["word"].is_string());
                let tag = w["tag"].as_str().unwrap();
                assert!(tag.parse::<ScalarTag>().is_ok(), "bad tag {tag}");
                assert!(w["is_dictionary_word"].is_boolean());
            }
        };

        // GET route, then health reflecting each request.
        let health_url = format!("http://{addr}/health");
        for (i, id) in ["server_and_port", "bitSet", "getName"].iter().enumerate() {
            let response = client
                .get(format!("http://{addr}/tag/declaration/{id}"))
                .send()
                .await
                .unwrap();
            assert_eq!(response.status(), 200);
            let body: serde_json::Value = response.json().await.unwrap();
            assert_tag_schema(&body);
            let health: serde_json::Value = client
                .get(&health_url)
                .send()
                .await
                .unwrap()
                .json()
                .await
                .unwrap();
            assert_eq!(health["cache_size"], i as i64 + 1);
            assert_eq!(health["status"], "ok");
            assert_eq!(health["model_version"], "acceptance-v10");
            assert!(health["uptime_seconds"].is_u64());
        }

        // POST route.
        let response = client
            .post(format!("http://{addr}/tag"))
            .json(&serde_json::json!({"identifier": "openIfEmpty", "context": "function"}))
            .send()
            .await
            .unwrap();
        assert_eq!(response.status(), 200);
        let body: serde_json::Value = response.json().await.unwrap();
        assert_tag_schema(&body);

        // Unknown context is a 400 with an error body.
        let response = client
            .get(format!("http://{addr}/tag/banana/x"))
            .send()
            .await
            .unwrap();
        assert_eq!(response.status(), 400);
        let body: serde_json::Value = response.json().await.unwrap();
        assert!(body["error"].is_string());
    });
    println!(
        "ACCEPTANCE C10 PASS: routes return schema-valid JSON, unknown context 400, health tracks cache size"
    );
}
