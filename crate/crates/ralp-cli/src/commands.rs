//! Subcommand implementations. Each command validates its inputs up
//! front, runs, writes its artifacts into the output directory, and
//! returns the process exit code.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};

use ralp_core::seeding::substream_seed;
use ralp_core::{Corpus, CorpusBuilder, EntityId, LabelMap, Object, Split, TripleFormat};
use ralp_enrich::{enrich, write_augmented_split, EnrichmentConfig};
use ralp_eval::{compute_metrics, rank_true_entity, Rank, RankSetting};
use ralp_kge::{evaluate as kge_evaluate, known_positives, Strategy, TrainConfig};
use ralp_lm::{LmGateway, RemoteConfig, RemoteLm, TokenEstimator};
use ralp_mipro::{
    build_eval_panel, evaluate_q, optimize, propose_instruction_candidates, sample_demo_subsets,
    select_few_shot, CandidatePool, LabeledExample, Mode, OptimizeConfig, Preset,
};
use ralp_numeric::{
    filter_outliers, predict_numeric, property_row, retrieve_context, select_property_subset,
    IntervalPrediction, NumericQuery,
};
use ralp_owl::{
    classify_concept, generate_fewshot, jaccard, llm_retrieve, parse_concept_line, ConceptGroup,
    NamespaceMode, Reasoner, Syntax,
};
use ralp_prompt::{kvsall_demo_pool, PromptState, ScorePipeline};

use crate::config::RunConfig;
use crate::report::{format_float, metrics_table, write_file, RunReport};
use crate::scripted::offline_backend;

/// Everything a command needs: config, resolved output dir, corpus and
/// gateway.
pub struct RunContext {
    pub cfg: RunConfig,
    pub out: std::path::PathBuf,
}

impl RunContext {
    fn load_corpus(&self, with_literals: bool) -> Result<Corpus> {
        let mut required = vec!["data.train"];
        if with_literals {
            required.push("data.literals");
        }
        self.cfg.validate_paths(&[
            "data.train",
            "data.valid",
            "data.test",
            "data.labels",
            "data.literals",
            "prompt.state",
            "owl.abox",
            "owl.concepts",
        ])?;
        for key in required {
            self.cfg.require(key)?;
        }
        let format: TripleFormat = self
            .cfg
            .get_or("data.format", "tsv")
            .parse()
            .map_err(|e: String| anyhow::anyhow!(e))?;
        let mut builder = CorpusBuilder::new();
        builder.load_split(Split::Train, &self.cfg.require_path("data.train")?, format, false)?;
        if let Some(path) = self.cfg.path("data.valid") {
            builder.load_split(Split::Valid, &path, format, false)?;
        }
        if let Some(path) = self.cfg.path("data.test") {
            builder.load_split(Split::Test, &path, format, false)?;
        }
        if with_literals {
            builder.load_split(
                Split::Train,
                &self.cfg.require_path("data.literals")?,
                format,
                true,
            )?;
        }
        let mut corpus = builder.finish();
        if let Some(path) = self.cfg.path("data.labels") {
            let map = LabelMap::load(&path)?;
            let warnings = corpus.apply_label_map(&map);
            if !warnings.is_empty() {
                eprintln!("label map left {} ids unlabeled", warnings.len());
            }
        }
        Ok(corpus)
    }

    fn build_gateway(&self, corpus: &Corpus) -> Result<LmGateway> {
        let budget: usize = self.cfg.parse_or("lm.context_budget", 8192)?;
        let chars_per_token: usize = self.cfg.parse_or("lm.chars_per_token", 4)?;
        let backend: Arc<dyn ralp_lm::LanguageModel> =
            match self.cfg.get_or("backend", "scripted").as_str() {
                "scripted" => Arc::new(offline_backend(
                    corpus
                        .graph(Split::Train)
                        .context("scripted backend needs a train split")?,
                )),
                "remote" => {
                    let mut remote = RemoteConfig::new(
                        self.cfg.require("lm.endpoint")?,
                        self.cfg.require("lm.model")?,
                    );
                    remote.api_key = std::env::var("RALP_API_KEY").ok();
                    remote.max_attempts = self.cfg.parse_or("lm.max_attempts", 3)?;
                    remote.inflight_limit = self.cfg.parse_or("lm.inflight_limit", 4)?;
                    Arc::new(RemoteLm::new(remote)?)
                }
                other => bail!("unknown backend `{other}` (remote|scripted)"),
            };
        Ok(LmGateway::new(backend, budget).with_estimator(TokenEstimator::new(chars_per_token)))
    }

    fn prompt_state(&self, budget: usize) -> Result<PromptState> {
        match self.cfg.path("prompt.state") {
            Some(path) => {
                let text = std::fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(PromptState::from_text(&text)?)
            }
            None => Ok(PromptState::default_for(
                &self.cfg.get_or("domain", "generic"),
                budget,
            )),
        }
    }

    fn report(&self, command: &str, gateway: &LmGateway) -> RunReport {
        RunReport::new(command, &self.cfg.snapshot_hash(), gateway.backend_name())
    }

    fn finish(&self, report: &RunReport, gateway: &LmGateway) -> Result<i32> {
        write_file(
            &self.out.join("config_snapshot.txt"),
            &format!("# hash: {}\n{}", self.cfg.snapshot_hash(), self.cfg.snapshot()),
        )?;
        let log = gateway.call_log();
        let mut log_text = String::new();
        for record in log {
            let _ = writeln!(
                log_text,
                "request={} response={} latency_ms={}",
                record.request_hash, record.response_hash, record.latency_ms
            );
        }
        write_file(&self.out.join("lm_calls.log"), &log_text)?;
        report.write(&self.out, gateway.stats())
    }
}

// ---------------------------------------------------------------- optimize

pub fn run_optimize(ctx: &RunContext) -> Result<i32> {
    let corpus = ctx.load_corpus(false)?;
    let train = corpus.graph(Split::Train).context("train split required")?;
    let valid = corpus
        .graph(Split::Valid)
        .context("optimize needs a validation split")?;
    let gateway = ctx.build_gateway(&corpus)?;
    let mut report = ctx.report("optimize", &gateway);

    let seed = ctx.cfg.seed()?;
    let preset: Preset = ctx
        .cfg
        .get_or("optimizer.preset", "light")
        .parse()
        .map_err(|e: String| anyhow::anyhow!(e))?;
    let budget = gateway.budget();
    let seed_state = ctx.prompt_state(budget)?;

    // candidate pools
    let task_summary = format!(
        "knowledge graph link prediction over `{}`: given a subject and relation, \
         propose and score tail entities",
        ctx.cfg.get_or("domain", "generic")
    );
    let (composer_pool, warn_a) = propose_instruction_candidates(
        &gateway,
        &seed_state.composer_instruction,
        preset.instructions_per_stage(),
        &format!("{task_summary} (composer stage)"),
    );
    let (scorer_pool, warn_b) = propose_instruction_candidates(
        &gateway,
        &seed_state.scorer_instruction,
        preset.instructions_per_stage(),
        &format!("{task_summary} (scorer stage)"),
    );
    report.warn_all(warn_a);
    report.warn_all(warn_b);

    let demo_pool = select_few_shot(
        &kvsall_demo_pool(train),
        30,
        substream_seed(seed, "fewshot"),
    );
    let per_subset = preset.demos_per_subset().min(demo_pool.len());
    let demo_subsets = sample_demo_subsets(
        &demo_pool,
        if demo_pool.is_empty() { 1 } else { preset.demo_subsets() },
        per_subset,
        substream_seed(seed, "demos"),
    )?;
    let pool = CandidatePool::new(composer_pool, scorer_pool, demo_subsets, budget)?;

    // fixed evaluation panel, sampled once per run
    let minibatch: usize = ctx.cfg.parse_or("optimizer.minibatch", 16)?;
    let panel = build_eval_panel(valid, &[train, valid], minibatch, substream_seed(seed, "panel"));
    if panel.is_empty() {
        bail!("validation split produced an empty evaluation panel");
    }

    let metric = ctx.cfg.get_or("optimizer.metric", "cross-entropy");
    let mode = match metric.as_str() {
        "cross-entropy" => Mode::Minimize,
        "mrr" => Mode::Maximize,
        other => bail!("unknown optimizer.metric `{other}`"),
    };
    let opt_cfg = OptimizeConfig::new(preset.trials(), mode, substream_seed(seed, "optimizer"));

    let outcome = optimize::<f64, _>(&pool, &opt_cfg, |state| {
        let pipeline: ScorePipeline<f64> = ScorePipeline::new(train, &gateway, state);
        match metric.as_str() {
            "cross-entropy" => evaluate_q(&panel, |ex: &LabeledExample| {
                let (score, _) = pipeline.score_triple(ex.subject, ex.relation, ex.object)?;
                Ok(score)
            }),
            _ => {
                // MRR over the panel's positive queries, raw setting
                let mut ranks = Vec::new();
                for ex in panel.iter().filter(|e| e.positive) {
                    let (scores, _) = pipeline.score_query(ex.subject, ex.relation)?;
                    let rank = rank_true_entity(
                        &scores,
                        ex.object,
                        &Default::default(),
                        RankSetting::Raw,
                    )
                    .map_err(|e| ralp_mipro::MiproError::Objective(e.to_string()))?;
                    ranks.push(rank);
                }
                let metrics = compute_metrics::<f64>(&ranks)
                    .map_err(|e| ralp_mipro::MiproError::Objective(e.to_string()))?;
                Ok(metrics.mrr)
            }
        }
    })?;

    report.warn_all(outcome.warnings.clone());
    let best = outcome.history.best().expect("at least one trial");
    report.metric("trials", outcome.history.len());
    report.metric("grid_size", pool.grid_size());
    report.metric("metric", &metric);
    report.metric_f64("best_score", best.score);
    report.metric("best_key", format!("{:?}", best.key));
    let series = outcome.history.best_so_far_series();
    report.metric(
        "best_so_far",
        series
            .iter()
            .map(|s| format_float(*s))
            .collect::<Vec<_>>()
            .join(" "),
    );

    write_file(&ctx.out.join("prompt_state.txt"), &outcome.best.to_text())?;
    let mut trial_log = String::new();
    let now = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    for trial in outcome.history.trials() {
        let _ = writeln!(
            trial_log,
            "trial={} key={:?} composer={} scorer={} demos={} score={} wall_ms={} logged_at={now}",
            trial.index,
            trial.key,
            short_hash(&trial.state.composer_instruction),
            short_hash(&trial.state.scorer_instruction),
            trial.state.composer_demos.len(),
            format_float(trial.score),
            trial.wall_ms,
        );
    }
    write_file(&ctx.out.join("trial_log.txt"), &trial_log)?;
    ctx.finish(&report, &gateway)
}

fn short_hash(text: &str) -> String {
    use sha2::{Digest, Sha256};
    let digest = Sha256::digest(text.as_bytes());
    digest[..4].iter().map(|b| format!("{b:02x}")).collect()
}

// ----------------------------------------------------------------- predict

pub fn run_predict(ctx: &RunContext) -> Result<i32> {
    let corpus = ctx.load_corpus(false)?;
    let train = corpus.graph(Split::Train).context("train split required")?;
    let test = corpus
        .graph(Split::Test)
        .context("predict needs a test split")?;
    let gateway = ctx.build_gateway(&corpus)?;
    let mut report = ctx.report("predict", &gateway);
    let state = ctx.prompt_state(gateway.budget())?;
    let pipeline: ScorePipeline<f64> = ScorePipeline::new(train, &gateway, &state);

    let setting: RankSetting = ctx
        .cfg
        .get_or("eval.setting", "filtered")
        .parse()
        .map_err(|e: String| anyhow::anyhow!(e))?;
    let positives = known_positives(&[
        train,
        corpus.graph(Split::Valid).unwrap_or(test),
        test,
    ]);
    let empty = std::collections::HashSet::new();

    let mut ranks: Vec<Rank> = Vec::new();
    let mut failures = 0usize;
    let mut rank_rows = String::from("subject,relation,truth,rank\n");
    for t in test.triples() {
        let Object::Entity(truth) = t.object else { continue };
        match pipeline.score_query(t.subject, t.relation) {
            Ok((scores, warnings)) => {
                report.warn_all(warnings);
                let pair_pos = positives.get(&(t.subject, t.relation)).unwrap_or(&empty);
                let rank = rank_true_entity(&scores, truth, pair_pos, setting)
                    .map_err(|e| anyhow::anyhow!(e.to_string()))?;
                let (s, r, o) = test.triple_to_strings(t);
                let _ = writeln!(rank_rows, "{s},{r},{o},{}", rank.value());
                ranks.push(rank);
            }
            Err(e) => {
                failures += 1;
                report.warnings.push(format!("query failed: {e}"));
            }
        }
    }
    if ranks.is_empty() {
        bail!("no test queries could be ranked");
    }
    let metrics = compute_metrics::<f64>(&ranks).map_err(|e| anyhow::anyhow!(e.to_string()))?;
    report.partial_failures = failures;
    report.metric("n_queries", metrics.n_queries);
    report.metric_f64("mrr", metrics.mrr);
    report.metric_f64("hits@1", metrics.hits_at(1).unwrap());
    report.metric_f64("hits@3", metrics.hits_at(3).unwrap());
    report.metric_f64("hits@10", metrics.hits_at(10).unwrap());
    report.metric("table", format!("\n{}", metrics_table("ralp", &metrics)));
    write_file(&ctx.out.join("ranks.csv"), &rank_rows)?;
    ctx.finish(&report, &gateway)
}

// ------------------------------------------------------------------ enrich

pub fn run_enrich(ctx: &RunContext) -> Result<i32> {
    let corpus = ctx.load_corpus(false)?;
    let train = corpus.graph(Split::Train).context("train split required")?;
    let gateway = ctx.build_gateway(&corpus)?;
    let mut report = ctx.report("enrich", &gateway);
    let state = ctx.prompt_state(gateway.budget())?;
    let pipeline: ScorePipeline<f64> = ScorePipeline::new(train, &gateway, &state);

    let theta: f64 = ctx.cfg.parse_or("enrich.theta", 0.51)?;
    let mut enrich_cfg =
        EnrichmentConfig::new(theta).map_err(|e| anyhow::anyhow!(e.to_string()))?;
    enrich_cfg.max_candidates_per_pair = ctx.cfg.parse_or("enrich.max_candidates", 25)?;

    let (missing, enrich_report) = enrich(&pipeline, &enrich_cfg);
    report.partial_failures = enrich_report.pairs_failed;
    report.warn_all(enrich_report.warnings);
    report.metric("pairs_swept", enrich_report.pairs_swept);
    report.metric("pairs_failed", enrich_report.pairs_failed);
    report.metric_f64("theta", theta);
    report.metric("missing_triples", missing.len());

    let vocab = train.vocab();
    let mut rows = String::from("subject,relation,object,score\n");
    for m in &missing.triples {
        let _ = writeln!(
            rows,
            "{},{},{},{}",
            vocab.entity_id_str(m.subject),
            vocab.relation_id_str(m.relation),
            vocab.entity_id_str(m.object),
            format_float(m.score)
        );
    }
    write_file(&ctx.out.join("missing_triples.csv"), &rows)?;
    write_augmented_split(train, &missing, &ctx.out.join("train_augmented.txt"))
        .map_err(|e| anyhow::anyhow!(e.to_string()))?;
    ctx.finish(&report, &gateway)
}

// --------------------------------------------------------------- eval-rank

pub fn run_eval_rank(ctx: &RunContext, ranks_file: &Path) -> Result<i32> {
    if !ranks_file.exists() {
        bail!("ranks file {} does not exist", ranks_file.display());
    }
    let text = std::fs::read_to_string(ranks_file)?;
    let mut values = Vec::new();
    for line in text.lines() {
        let token = line.split(',').next_back().unwrap_or("").trim();
        if let Ok(v) = token.parse::<u64>() {
            values.push(v);
        }
    }
    if values.is_empty() {
        bail!("no ranks found in {}", ranks_file.display());
    }
    if values.iter().any(|&v| v == 0) {
        bail!("ranks start at 1; found 0 in {}", ranks_file.display());
    }
    let ranks: Vec<Rank> = values.iter().map(|&v| Rank::from_value(v)).collect();
    let metrics = compute_metrics::<f64>(&ranks).map_err(|e| anyhow::anyhow!(e.to_string()))?;

    let gateway = LmGateway::new(Arc::new(ralp_lm::ScriptedLm::new("unused")), 1);
    let mut report = RunReport::new("eval-rank", &ctx.cfg.snapshot_hash(), "none");
    report.metric("n_queries", metrics.n_queries);
    report.metric_f64("mrr", metrics.mrr);
    report.metric_f64("hits@1", metrics.hits_at(1).unwrap());
    report.metric_f64("hits@3", metrics.hits_at(3).unwrap());
    report.metric_f64("hits@10", metrics.hits_at(10).unwrap());
    report.metric("table", format!("\n{}", metrics_table("precomputed", &metrics)));
    ctx.finish(&report, &gateway)
}

// ----------------------------------------------------------------- numeric

pub fn run_numeric(ctx: &RunContext) -> Result<i32> {
    let corpus = ctx.load_corpus(true)?;
    let graph = corpus.graph(Split::Train).context("train split required")?;
    let gateway = ctx.build_gateway(&corpus)?;
    let mut report = ctx.report("numeric", &gateway);
    let state = match ctx.cfg.path("prompt.state") {
        Some(_) => ctx.prompt_state(gateway.budget())?,
        None => ralp_numeric::default_numeric_state(gateway.budget()),
    };

    let seed = ctx.cfg.seed()?;
    let budget: usize = ctx.cfg.parse_or("numeric.budget", 2048)?;
    let outlier_z: Option<f64> = match ctx.cfg.get("numeric.outlier_z") {
        Some(raw) => Some(raw.parse().context("numeric.outlier_z must be a number")?),
        None => None,
    };

    let available = graph
        .vocab()
        .relations()
        .filter(|&r| graph.vocab().relation_kind(r) == ralp_core::RelationKind::Data)
        .filter(|&r| graph.relation_triples(r).next().is_some())
        .count();
    let requested: usize = ctx.cfg.parse_or("numeric.properties", 10)?;
    let n_properties = requested.min(available);
    if n_properties < requested {
        report.warnings.push(format!(
            "only {available} data properties available; sampling {n_properties}"
        ));
    }
    let properties = select_property_subset(graph, n_properties, substream_seed(seed, "properties"))
        .map_err(|e| anyhow::anyhow!(e.to_string()))?;

    let mut csv = String::from("property,y_avg,sigma,y_hat_avg,icr,iw,mse,mae,n\n");
    let mut failures = 0usize;
    for (pi, property) in properties.iter().enumerate() {
        let mut preds: Vec<IntervalPrediction<f64>> = Vec::new();
        let mut truths: Vec<f64> = Vec::new();
        let queries: Vec<(EntityId, f64)> = graph
            .relation_triples(*property)
            .filter_map(|t| t.object.as_literal().map(|v| (t.subject, v)))
            .collect();
        for (qi, (subject, truth)) in queries.iter().enumerate() {
            let query = NumericQuery {
                subject: *subject,
                property: *property,
            };
            let mut ctx_bundle = retrieve_context(
                graph,
                &query,
                budget,
                gateway.estimator(),
                substream_seed(seed, &format!("context-{pi}-{qi}")),
            );
            if let Some(z) = outlier_z {
                retain_inliers(&mut ctx_bundle.relation_context, z);
            }
            match predict_numeric::<f64>(&gateway, &state, graph, &query, &ctx_bundle) {
                Ok((pred, warnings)) => {
                    report.warn_all(warnings);
                    preds.push(pred);
                    truths.push(*truth);
                }
                Err(e) => {
                    failures += 1;
                    report
                        .warnings
                        .push(format!("numeric prediction failed: {e}"));
                }
            }
        }
        if preds.is_empty() {
            continue;
        }
        let row = property_row(graph.vocab().relation_text(*property), &preds, &truths)
            .map_err(|e| anyhow::anyhow!(e.to_string()))?;
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            row.property,
            format_float(row.y_avg),
            format_float(row.sigma),
            format_float(row.y_hat_avg),
            format_float(row.icr),
            format_float(row.iw),
            format_float(row.mse),
            format_float(row.mae),
            row.n
        );
    }
    report.partial_failures = failures;
    report.metric("properties", properties.len());
    report.metric("outlier_filtering", outlier_z.map(|z| z.to_string()).unwrap_or_else(|| "off".into()));
    write_file(&ctx.out.join("numeric.csv"), &csv)?;
    report.metric("csv", "numeric.csv");
    ctx.finish(&report, &gateway)
}

/// Keep only relation-context values surviving the outlier filter.
fn retain_inliers(pairs: &mut Vec<(EntityId, f64)>, z: f64) {
    let values: Vec<f64> = pairs.iter().map(|(_, v)| *v).collect();
    let mut kept = filter_outliers(&values, z);
    pairs.retain(|(_, v)| {
        if let Some(pos) = kept.iter().position(|k| k == v) {
            kept.remove(pos);
            true
        } else {
            false
        }
    });
}

// --------------------------------------------------------------------- owl

pub fn run_owl(ctx: &RunContext) -> Result<i32> {
    ctx.cfg.validate_paths(&["owl.abox", "owl.concepts"])?;
    let abox_path = ctx.cfg.require_path("owl.abox")?;
    let concepts_path = ctx.cfg.require_path("owl.concepts")?;

    let mut builder = CorpusBuilder::new();
    builder.load_split(Split::Train, &abox_path, TripleFormat::Tsv, false)?;
    let corpus = builder.finish();
    let graph = corpus.graph(Split::Train).context("empty ABox")?;
    let gateway = ctx.build_gateway(&corpus)?;
    let mut report = ctx.report("owl", &gateway);
    let state = ctx.prompt_state(gateway.budget())?;

    let concepts: Vec<(Syntax, ralp_owl::ClassExpression)> =
        std::fs::read_to_string(&concepts_path)?
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(parse_concept_line)
            .collect::<Result<_, _>>()
            .map_err(|e| anyhow::anyhow!(e.to_string()))?;
    if concepts.is_empty() {
        bail!("concept file {} is empty", concepts_path.display());
    }

    // requested configuration, or the full ablation grid when unset
    let syntaxes: Vec<Syntax> = match ctx.cfg.get("owl.syntax") {
        Some(raw) => vec![raw.parse().map_err(|e: String| anyhow::anyhow!(e))?],
        None => vec![Syntax::Manchester, Syntax::Dl],
    };
    let namespaces: Vec<NamespaceMode> = match ctx.cfg.get("owl.namespace") {
        Some("on") => vec![NamespaceMode::With],
        Some("off") => vec![NamespaceMode::Without],
        Some(other) => bail!("owl.namespace must be on|off, got `{other}`"),
        None => vec![NamespaceMode::With, NamespaceMode::Without],
    };
    let n_fewshot: usize = ctx.cfg.parse_or("owl.fewshot", 2)?;

    let reasoner = Reasoner::new(graph);
    let mut failures = 0usize;
    // group -> config label -> scores
    let mut table: BTreeMap<ConceptGroup, BTreeMap<String, Vec<f64>>> = BTreeMap::new();
    let mut counts: BTreeMap<ConceptGroup, usize> = BTreeMap::new();
    let mut config_labels = Vec::new();

    for &syntax in &syntaxes {
        for &namespace in &namespaces {
            let label = format!(
                "{}_{}",
                match syntax {
                    Syntax::Manchester => "m",
                    Syntax::Dl => "dl",
                },
                match namespace {
                    NamespaceMode::With => "ns",
                    NamespaceMode::Without => "nons",
                }
            );
            config_labels.push(label.clone());

            // few-shot examples from the first concepts
            let mut examples = Vec::new();
            for (_, concept) in concepts.iter().take(n_fewshot) {
                let (truth, warnings) = reasoner.retrieve(concept);
                report.warn_all(warnings);
                let (example, warnings) = generate_fewshot(
                    &gateway, &state, graph, concept, &truth, syntax, namespace,
                );
                report.warn_all(warnings);
                examples.push(example);
            }

            for (_, concept) in concepts.iter().skip(n_fewshot) {
                let (truth, warnings) = reasoner.retrieve(concept);
                report.warn_all(warnings);
                let group = classify_concept(concept);
                match llm_retrieve(
                    &gateway, &state, graph, concept, &examples, syntax, namespace,
                ) {
                    Ok((predicted, warnings)) => {
                        report.warn_all(warnings);
                        let score = jaccard::<f64>(&predicted, &truth);
                        table
                            .entry(group)
                            .or_default()
                            .entry(label.clone())
                            .or_default()
                            .push(score);
                    }
                    Err(e) => {
                        failures += 1;
                        report
                            .warnings
                            .push(format!("instance retrieval failed: {e}"));
                    }
                }
            }
        }
    }
    // concept counts are configuration-independent
    for (_, concept) in concepts.iter().skip(n_fewshot) {
        *counts.entry(classify_concept(concept)).or_default() += 1;
    }

    let mut csv = format!("concept_type,count,{}\n", config_labels.join(","));
    for group in ConceptGroup::ALL {
        let Some(count) = counts.get(&group) else { continue };
        let mut row = format!("{},{count}", group.name());
        for label in &config_labels {
            let mean = table
                .get(&group)
                .and_then(|m| m.get(label))
                .map(|scores| scores.iter().sum::<f64>() / scores.len() as f64);
            match mean {
                Some(v) => {
                    let _ = write!(row, ",{}", format_float(v));
                }
                None => row.push(','),
            }
        }
        csv.push_str(&row);
        csv.push('\n');
    }
    report.partial_failures = failures;
    report.metric("concepts", concepts.len());
    report.metric("fewshot_examples", n_fewshot);
    report.metric("configurations", config_labels.join(" "));
    write_file(&ctx.out.join("owl.csv"), &csv)?;
    report.metric("csv", "owl.csv");
    ctx.finish(&report, &gateway)
}

// ------------------------------------------------------------ kge commands

fn kge_config(cfg: &RunConfig) -> Result<TrainConfig<f32>> {
    let mut train_cfg = TrainConfig::<f32>::benchmark(cfg.seed()?);
    train_cfg.dim = cfg.parse_or("kge.dim", 32)?;
    train_cfg.lr = cfg.parse_or("kge.lr", 0.1_f32)?;
    train_cfg.epochs = cfg.parse_or("kge.epochs", 256)?;
    train_cfg.batch_size = cfg.parse_or("kge.batch_size", 1024)?;
    train_cfg.dropout = cfg.parse_or("kge.dropout", 0.3_f32)?;
    train_cfg.strategy = cfg
        .get_or("kge.strategy", "kvsall")
        .parse::<Strategy>()
        .map_err(|e| anyhow::anyhow!(e))?;
    Ok(train_cfg)
}

pub fn run_kge_train(ctx: &RunContext) -> Result<i32> {
    let corpus = ctx.load_corpus(false)?;
    let train_graph = corpus.graph(Split::Train).context("train split required")?;
    let gateway = LmGateway::new(Arc::new(ralp_lm::ScriptedLm::new("unused")), 1);
    let mut report = RunReport::new("kge-train", &ctx.cfg.snapshot_hash(), "none");

    let train_cfg = kge_config(&ctx.cfg)?;
    let (table, stats) = ralp_kge::train(train_graph, &train_cfg)?;
    let checkpoint = ctx.out.join("model.kge");
    ralp_kge::save(&table, train_cfg.seed, &checkpoint)?;

    report.metric("entities", table.n_entities);
    report.metric("relations", table.n_relations);
    report.metric("dim", table.dim);
    report.metric("epochs", train_cfg.epochs);
    report.metric(
        "strategy",
        match train_cfg.strategy {
            Strategy::KvsAll => "kvsall".to_owned(),
            Strategy::NegSample(k) => format!("negsample:{k}"),
        },
    );
    if let (Some(first), Some(last)) = (stats.epoch_losses.first(), stats.epoch_losses.last()) {
        report.metric_f64("first_epoch_loss", f64::from(*first));
        report.metric_f64("last_epoch_loss", f64::from(*last));
    }
    report.metric("checkpoint", "model.kge");
    ctx.finish(&report, &gateway)
}

pub fn run_kge_eval(ctx: &RunContext) -> Result<i32> {
    let corpus = ctx.load_corpus(false)?;
    let train_graph = corpus.graph(Split::Train).context("train split required")?;
    let test_graph = corpus
        .graph(Split::Test)
        .context("kge-eval needs a test split")?;
    let checkpoint = ctx.cfg.require_path("kge.checkpoint")?;
    if !checkpoint.exists() {
        bail!("checkpoint {} does not exist", checkpoint.display());
    }
    let gateway = LmGateway::new(Arc::new(ralp_lm::ScriptedLm::new("unused")), 1);
    let mut report = RunReport::new("kge-eval", &ctx.cfg.snapshot_hash(), "none");

    let (table, _) = ralp_kge::load::<f32>(&checkpoint)?;
    let setting: RankSetting = ctx
        .cfg
        .get_or("eval.setting", "filtered")
        .parse()
        .map_err(|e: String| anyhow::anyhow!(e))?;
    let positives = known_positives(&[
        train_graph,
        corpus.graph(Split::Valid).unwrap_or(test_graph),
        test_graph,
    ]);
    let outcome = kge_evaluate(&table, test_graph, &positives, setting)?;
    report.warn_all(outcome.warnings.clone());

    let metrics64 = ralp_eval::MetricsReport {
        mrr: f64::from(outcome.metrics.mrr),
        hits: outcome.metrics.hits.map(|(k, v)| (k, f64::from(v))),
        n_queries: outcome.metrics.n_queries,
    };
    report.metric("n_queries", metrics64.n_queries);
    report.metric("skipped", outcome.skipped);
    report.metric_f64("mrr", metrics64.mrr);
    report.metric_f64("hits@1", metrics64.hits_at(1).unwrap());
    report.metric_f64("hits@3", metrics64.hits_at(3).unwrap());
    report.metric_f64("hits@10", metrics64.hits_at(10).unwrap());
    report.metric("table", format!("\n{}", metrics_table("distmult", &metrics64)));

    let mut rows = String::from("subject,relation,truth,rank\n");
    for (triple, rank) in &outcome.ranks {
        let (s, r, o) = test_graph.triple_to_strings(triple);
        let _ = writeln!(rows, "{s},{r},{o},{}", rank.value());
    }
    write_file(&ctx.out.join("ranks.csv"), &rows)?;
    ctx.finish(&report, &gateway)
}
