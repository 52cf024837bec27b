//! Batch pipeline subcommands: `distill`, `flow`, `similar`, `eval-pairs`,
//! `stats`.
//!
//! Machine-readable results go to standard output, diagnostics to standard
//! error. Exit codes are a stable contract: 0 success, 2 usage/input error,
//! 3 empty-result error. Every subcommand is deterministic given its inputs,
//! flags and seed.

use std::collections::HashSet;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::extract::{
    annotate_transcript, build_surface_index, concept_tree_for_sentence, default_stop_titles,
    merge_extra_surface_forms, read_transcript, SurfaceFormIndex, Transcript,
};
use crate::flow::{build_flow, export_dot, export_json, FlowOptions};
use crate::ingest::{
    build_raw_graph, parse_category_links, parse_page_records, FilterRules,
};
use crate::ontology::{distill, load_ontology, save_ontology, ConceptOntology, ConceptTree};
use crate::similarity::{
    load_embeddings, CorpusVectors, EmbeddingTable, MethodScorer, SimilarityMethod, ALL_METHODS,
};

/// Maximum ancestor-expansion depth: `unbounded` or a positive integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthArg(pub Option<usize>);

impl FromStr for DepthArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "unbounded" {
            return Ok(DepthArg(None));
        }
        match s.parse::<usize>() {
            Ok(depth) if depth > 0 => Ok(DepthArg(Some(depth))),
            _ => Err(format!(
                "expected 'unbounded' or a positive integer, got {s:?}"
            )),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "concept-flow",
    version,
    about = "Distill a Wikipedia-derived concept ontology and build concept-flow graphs from discussion transcripts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distill the raw page/category-link tables into a concept ontology.
    Distill(DistillArgs),
    /// Build a concept-flow graph for a transcript and export DOT + JSON.
    Flow(FlowArgs),
    /// Retrieve the most similar sentence for one anchor, per method.
    Similar(SimilarArgs),
    /// Emit seeded annotation sheets pairing sampled anchors with their
    /// best matches per method.
    EvalPairs(EvalPairsArgs),
    /// Print statistics for a saved ontology.
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
pub struct DistillArgs {
    /// pages.tsv: page_id, namespace (article|category), title.
    #[arg(long)]
    pub pages: PathBuf,
    /// catlinks.tsv: child_title, child_kind, parent_category_title.
    #[arg(long)]
    pub catlinks: PathBuf,
    /// Filter-rule config; the built-in table is used when omitted.
    #[arg(long)]
    pub rules: Option<PathBuf>,
    /// Title of the root category.
    #[arg(long, default_value = "Main Topic Classifications")]
    pub root: String,
    /// Output ontology directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct FlowArgs {
    /// Saved ontology directory.
    #[arg(long)]
    pub ontology: PathBuf,
    /// Transcript (JSON Lines, one {"speaker", "text"} object per line).
    #[arg(long)]
    pub transcript: PathBuf,
    #[arg(long, default_value = "concept_joint")]
    pub method: SimilarityMethod,
    /// Minimum edge score; zero-score pairs never link regardless.
    #[arg(long, default_value_t = 0.0)]
    pub threshold: f64,
    /// Ancestor-expansion depth for concept trees.
    #[arg(long, default_value = "unbounded")]
    pub max_depth: DepthArg,
    /// Word-embedding file, required iff method = avg_embedding.
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
    /// Extra surface forms (surface<TAB>leaf_title per line).
    #[arg(long)]
    pub extra_surface_forms: Option<PathBuf>,
    /// Output stem; <out>.json and <out>.dot are written.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimilarArgs {
    #[arg(long)]
    pub ontology: PathBuf,
    #[arg(long)]
    pub transcript: PathBuf,
    /// Repeatable; defaults to concept_joint.
    #[arg(long = "method")]
    pub methods: Vec<SimilarityMethod>,
    #[arg(long, default_value = "unbounded")]
    pub max_depth: DepthArg,
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
    #[arg(long)]
    pub extra_surface_forms: Option<PathBuf>,
    /// Anchor sentence index.
    pub index: usize,
}

#[derive(Debug, Args)]
pub struct EvalPairsArgs {
    #[arg(long)]
    pub ontology: PathBuf,
    /// Repeatable, one per debate.
    #[arg(long = "transcript", required = true)]
    pub transcripts: Vec<PathBuf>,
    /// Repeatable; defaults to all four methods.
    #[arg(long = "method")]
    pub methods: Vec<SimilarityMethod>,
    #[arg(long, default_value = "unbounded")]
    pub max_depth: DepthArg,
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
    #[arg(long)]
    pub extra_surface_forms: Option<PathBuf>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Sentences sampled per transcript, without replacement.
    #[arg(long, default_value_t = 20)]
    pub sample_size: usize,
    /// Output TSV; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub ontology: PathBuf,
}

/// Parse the process arguments and run; returns the exit status.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    run(cli)
}

/// Dispatch a parsed invocation, mapping errors to the exit-code contract.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Distill(args) => cmd_distill(&args),
        Command::Flow(args) => cmd_flow(&args),
        Command::Similar(args) => cmd_similar(&args),
        Command::EvalPairs(args) => cmd_eval_pairs(&args),
        Command::Stats(args) => cmd_stats(&args),
    };
    match result {
        Ok(()) => 0,
        Err(e @ Error::EmptyTranscript { .. }) => {
            eprintln!("error: {e}");
            3
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn open_buffered(path: &Path) -> Result<BufReader<fs::File>> {
    let file =
        fs::File::open(path).map_err(|e| Error::io(format!("read {}", path.display()), e))?;
    Ok(BufReader::new(file))
}

pub fn cmd_distill(args: &DistillArgs) -> Result<()> {
    let (pages, page_stats) = parse_page_records(open_buffered(&args.pages)?)?;
    let (links, link_stats) = parse_category_links(open_buffered(&args.catlinks)?)?;
    eprintln!(
        "pages: {} parsed, {} malformed, {} blank; links: {} parsed, {} malformed, {} blank",
        page_stats.parsed,
        page_stats.malformed,
        page_stats.blank,
        link_stats.parsed,
        link_stats.malformed,
        link_stats.blank,
    );
    let rules = match &args.rules {
        Some(path) => FilterRules::parse(open_buffered(path)?)?,
        None => FilterRules::default(),
    };
    let (raw, build_stats) = build_raw_graph(pages, &links);
    eprintln!(
        "graph: {} pages, {} edges, {} dangling links, {} duplicate edges",
        raw.pages.len(),
        raw.edges.len(),
        build_stats.dangling_links,
        build_stats.duplicate_edges,
    );
    let ontology = distill(&raw, &rules, &args.root)?;
    save_ontology(&ontology, &args.out)?;
    println!("{}", serde_json::to_value(ontology.stats()).expect("stats serialize"));
    Ok(())
}

struct PreparedCorpus {
    transcript: Transcript,
    token_lists: Vec<Vec<String>>,
    vectors: CorpusVectors,
}

fn build_index(
    ontology: &ConceptOntology,
    extra_surface_forms: Option<&Path>,
) -> Result<SurfaceFormIndex> {
    let stop: HashSet<String> = default_stop_titles();
    let mut index = build_surface_index(ontology, 1, &stop);
    if let Some(path) = extra_surface_forms {
        merge_extra_surface_forms(&mut index, ontology, open_buffered(path)?)?;
    }
    Ok(index)
}

fn prepare_corpus(
    ontology: &ConceptOntology,
    index: &SurfaceFormIndex,
    transcript_path: &Path,
    max_depth: Option<usize>,
) -> Result<PreparedCorpus> {
    let mut transcript = read_transcript(transcript_path)?;
    annotate_transcript(&mut transcript, index);
    let mut trees: Vec<ConceptTree> = Vec::with_capacity(transcript.sentences.len());
    for sentence in &transcript.sentences {
        trees.push(concept_tree_for_sentence(
            &sentence.mentions,
            ontology,
            max_depth,
        )?);
    }
    let token_lists: Vec<Vec<String>> = transcript
        .sentences
        .iter()
        .map(|s| s.tokens.clone())
        .collect();
    let vectors = CorpusVectors::build(&trees, &token_lists)?;
    Ok(PreparedCorpus {
        transcript,
        token_lists,
        vectors,
    })
}

fn load_embeddings_if_needed(
    methods: &[SimilarityMethod],
    path: Option<&Path>,
) -> Result<Option<EmbeddingTable>> {
    let needed = methods.contains(&SimilarityMethod::AvgEmbedding);
    match (needed, path) {
        (false, _) => Ok(None),
        (true, None) => Err(Error::InvalidArgument(
            "--embeddings is required when method avg_embedding is used".to_string(),
        )),
        (true, Some(path)) => {
            let (table, stats) = load_embeddings(open_buffered(path)?)?;
            eprintln!(
                "embeddings: {} words, dimension {}, {} skipped lines",
                table.len(),
                table.dimension(),
                stats.skipped_lines,
            );
            Ok(Some(table))
        }
    }
}

pub fn cmd_flow(args: &FlowArgs) -> Result<()> {
    let ontology = load_ontology(&args.ontology)?;
    let index = build_index(&ontology, args.extra_surface_forms.as_deref())?;
    let prepared = prepare_corpus(&ontology, &index, &args.transcript, args.max_depth.0)?;
    let embeddings = load_embeddings_if_needed(&[args.method], args.embeddings.as_deref())?;
    let scorer = MethodScorer::new(
        args.method,
        &prepared.vectors,
        &prepared.token_lists,
        embeddings.as_ref(),
    )?;
    let flow = build_flow(
        &prepared.transcript,
        &scorer,
        &ontology,
        &FlowOptions {
            threshold: args.threshold,
            ..FlowOptions::default()
        },
    )?;

    let json_path = append_extension(&args.out, "json");
    let dot_path = append_extension(&args.out, "dot");
    fs::write(&json_path, export_json(&flow))
        .map_err(|e| Error::io(format!("write {}", json_path.display()), e))?;
    fs::write(&dot_path, export_dot(&flow))
        .map_err(|e| Error::io(format!("write {}", dot_path.display()), e))?;
    println!(
        "{}",
        serde_json::json!({
            "dot": dot_path.display().to_string(),
            "edges": flow.edges.len(),
            "json": json_path.display().to_string(),
            "nodes": flow.nodes.len(),
        })
    );
    Ok(())
}

fn append_extension(stem: &Path, extension: &str) -> PathBuf {
    let mut os = stem.as_os_str().to_os_string();
    os.push(".");
    os.push(extension);
    PathBuf::from(os)
}

/// The best-matching sentence over all other sentences, both directions.
/// Returns the best score and the matched index when that score is strictly
/// positive; ties resolve to the smallest index.
fn best_match(scorer: &MethodScorer<'_>, anchor: usize) -> Result<(Option<usize>, f64)> {
    let n = scorer.sentence_count();
    let mut best: Option<(usize, f64)> = None;
    for candidate in 0..n {
        if candidate == anchor {
            continue;
        }
        let score = scorer.score(anchor, candidate)?;
        if best.is_none_or(|(_, s)| score > s) {
            best = Some((candidate, score));
        }
    }
    Ok(match best {
        Some((index, score)) if score > 0.0 => (Some(index), score),
        Some((_, score)) => (None, score),
        None => (None, 0.0),
    })
}

fn requested_methods(methods: &[SimilarityMethod], default: &[SimilarityMethod]) -> Vec<SimilarityMethod> {
    if methods.is_empty() {
        default.to_vec()
    } else {
        methods.to_vec()
    }
}

fn round6(value: f64) -> f64 {
    (value * 1e6).round() / 1e6
}

pub fn cmd_similar(args: &SimilarArgs) -> Result<()> {
    let methods = requested_methods(&args.methods, &[SimilarityMethod::ConceptJoint]);
    let ontology = load_ontology(&args.ontology)?;
    let index = build_index(&ontology, args.extra_surface_forms.as_deref())?;
    let prepared = prepare_corpus(&ontology, &index, &args.transcript, args.max_depth.0)?;
    let n = prepared.transcript.sentences.len();
    if args.index >= n {
        return Err(Error::InvalidArgument(format!(
            "sentence index {} out of range for {n} sentences",
            args.index
        )));
    }
    let embeddings = load_embeddings_if_needed(&methods, args.embeddings.as_deref())?;

    let mut stdout = std::io::stdout().lock();
    for method in methods {
        let scorer = MethodScorer::new(
            method,
            &prepared.vectors,
            &prepared.token_lists,
            embeddings.as_ref(),
        )?;
        let (matched, score) = best_match(&scorer, args.index)?;
        let line = serde_json::json!({
            "anchor_index": args.index,
            "anchor_text": prepared.transcript.sentences[args.index].text,
            "match_index": matched,
            "match_text": matched.map(|j| prepared.transcript.sentences[j].text.clone()),
            "method": method.to_string(),
            "score": round6(score),
        });
        writeln!(stdout, "{line}").map_err(|e| Error::io("write stdout", e))?;
    }
    Ok(())
}

/// Uniform sampling without replacement: a partial Fisher-Yates shuffle,
/// returned sorted.
pub fn sample_indices(n: usize, k: usize, rng: &mut impl Rng) -> Vec<usize> {
    assert!(k <= n, "sample size {k} exceeds population {n}");
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
    }
    let mut sample = pool[..k].to_vec();
    sample.sort_unstable();
    sample
}

fn clean_cell(text: &str) -> String {
    text.replace(['\t', '\n', '\r'], " ")
}

pub fn cmd_eval_pairs(args: &EvalPairsArgs) -> Result<()> {
    if args.sample_size == 0 {
        return Err(Error::InvalidArgument(
            "sample size must be positive".to_string(),
        ));
    }
    let methods = requested_methods(&args.methods, &ALL_METHODS);
    let ontology = load_ontology(&args.ontology)?;
    let index = build_index(&ontology, args.extra_surface_forms.as_deref())?;
    let embeddings = load_embeddings_if_needed(&methods, args.embeddings.as_deref())?;

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut sheet = String::new();
    sheet.push_str(
        "debate_id\tmethod\tanchor_index\tanchor_text\tmatch_index\tmatch_text\trating\n",
    );
    for transcript_path in &args.transcripts {
        let prepared = prepare_corpus(&ontology, &index, transcript_path, args.max_depth.0)?;
        let n = prepared.transcript.sentences.len();
        if args.sample_size > n {
            return Err(Error::InvalidArgument(format!(
                "sample size {} exceeds the {n} sentences of {}",
                args.sample_size,
                transcript_path.display()
            )));
        }
        let anchors = sample_indices(n, args.sample_size, &mut rng);
        let scorers: Vec<MethodScorer<'_>> = methods
            .iter()
            .map(|&method| {
                MethodScorer::new(
                    method,
                    &prepared.vectors,
                    &prepared.token_lists,
                    embeddings.as_ref(),
                )
            })
            .collect::<Result<_>>()?;
        for &anchor in &anchors {
            for scorer in &scorers {
                let (matched, _) = best_match(scorer, anchor)?;
                let (match_index, match_text) = match matched {
                    Some(j) => (
                        j.to_string(),
                        clean_cell(&prepared.transcript.sentences[j].text),
                    ),
                    None => (String::new(), String::new()),
                };
                sheet.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t\n",
                    prepared.transcript.id,
                    scorer.method(),
                    anchor,
                    clean_cell(&prepared.transcript.sentences[anchor].text),
                    match_index,
                    match_text,
                ));
            }
        }
    }

    match &args.out {
        Some(path) => fs::write(path, sheet)
            .map_err(|e| Error::io(format!("write {}", path.display()), e))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(sheet.as_bytes())
                .map_err(|e| Error::io("write stdout", e))?;
        }
    }
    Ok(())
}

pub fn cmd_stats(args: &StatsArgs) -> Result<()> {
    let ontology = load_ontology(&args.ontology)?;
    println!("{}", serde_json::to_value(ontology.stats()).expect("stats serialize"));
    Ok(())
}
