//! Sentence-pair similarity: binary TF-IDF feature vectors over concepts and
//! words, their cosine combination, and the evaluation baselines.
//!
//! Weights follow `1 + ln(N / df)` with sentence-level document frequencies;
//! the word side uses the same construction as the concept side. Sparse
//! vectors are ordered maps so every reduction is byte-deterministic.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ontology::{ConceptId, ConceptTree};

/// Sentence-level document frequencies for concepts and words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DfTable {
    pub concept_df: BTreeMap<ConceptId, usize>,
    pub word_df: BTreeMap<String, usize>,
    /// Total sentence count N.
    pub sentence_count: usize,
}

/// A sparse non-negative feature vector. No explicit zero entries are
/// stored; iteration order is the key order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseVector<K: Ord> {
    entries: BTreeMap<K, f64>,
}

impl<K: Ord> SparseVector<K> {
    pub fn new() -> Self {
        SparseVector {
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (K, f64)>) -> Self {
        SparseVector {
            entries: entries.into_iter().filter(|(_, w)| *w != 0.0).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<f64> {
        self.entries.get(key).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, f64)> {
        self.entries.iter().map(|(k, &w)| (k, w))
    }

    pub fn norm(&self) -> f64 {
        self.entries.values().map(|w| w * w).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &SparseVector<K>) -> f64 {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut sum = 0.0;
        for (key, weight) in small.iter() {
            if let Some(other_weight) = large.get(key) {
                sum += weight * other_weight;
            }
        }
        sum
    }
}

/// Count sentence-level presence of concepts and word tokens. `trees` and
/// `token_lists` must be aligned per sentence.
pub fn document_frequencies(
    trees: &[ConceptTree],
    token_lists: &[Vec<String>],
) -> Result<DfTable> {
    if trees.len() != token_lists.len() {
        return Err(Error::InvalidArgument(format!(
            "{} concept trees vs {} token lists",
            trees.len(),
            token_lists.len()
        )));
    }
    if trees.is_empty() {
        return Err(Error::InvalidArgument(
            "document frequencies need at least one sentence".to_string(),
        ));
    }
    let mut table = DfTable {
        sentence_count: trees.len(),
        ..DfTable::default()
    };
    for tree in trees {
        for concept in tree.iter() {
            *table.concept_df.entry(concept).or_insert(0) += 1;
        }
    }
    for tokens in token_lists {
        let unique: BTreeSet<&String> = tokens.iter().collect();
        for token in unique {
            *table.word_df.entry(token.clone()).or_insert(0) += 1;
        }
    }
    Ok(table)
}

/// Build the feature vector for one sentence: weight `1 + ln(N/df)` for each
/// present key, nothing otherwise. Natural logarithm, fixed.
pub fn feature_vector<K: Ord + Clone>(
    present: impl IntoIterator<Item = K>,
    df: &BTreeMap<K, usize>,
    sentence_count: usize,
) -> Result<SparseVector<K>> {
    let mut entries = BTreeMap::new();
    for key in present {
        let frequency = *df.get(&key).ok_or_else(|| {
            Error::InternalConsistency("present key missing from df table".to_string())
        })?;
        if frequency == 0 || frequency > sentence_count {
            return Err(Error::InternalConsistency(format!(
                "df {frequency} outside 1..={sentence_count}"
            )));
        }
        let weight = 1.0 + (sentence_count as f64 / frequency as f64).ln();
        entries.insert(key, weight);
    }
    Ok(SparseVector { entries })
}

/// Cosine over shared keys; 0 when either vector is empty (zero norm).
pub fn cosine<K: Ord>(a: &SparseVector<K>, b: &SparseVector<K>) -> f64 {
    let norms = a.norm() * b.norm();
    if norms == 0.0 {
        return 0.0;
    }
    (a.dot(b) / norms).min(1.0)
}

/// Joint similarity: the sum of concept-vector and word-vector cosines,
/// in [0, 2].
pub fn sentence_similarity(
    i: usize,
    j: usize,
    concept_vectors: &[SparseVector<ConceptId>],
    word_vectors: &[SparseVector<String>],
) -> Result<f64> {
    check_index(i, concept_vectors.len())?;
    check_index(j, concept_vectors.len())?;
    check_index(i, word_vectors.len())?;
    check_index(j, word_vectors.len())?;
    Ok(cosine(&concept_vectors[i], &concept_vectors[j])
        + cosine(&word_vectors[i], &word_vectors[j]))
}

fn check_index(index: usize, len: usize) -> Result<()> {
    if index >= len {
        return Err(Error::InvalidArgument(format!(
            "sentence index {index} out of range for {len} sentences"
        )));
    }
    Ok(())
}

/// Jaccard coefficient over token sets; 0 when both are empty.
pub fn baseline_word_overlap(tokens_i: &[String], tokens_j: &[String]) -> f64 {
    let set_i: HashSet<&String> = tokens_i.iter().collect();
    let set_j: HashSet<&String> = tokens_j.iter().collect();
    let union = set_i.union(&set_j).count();
    if union == 0 {
        return 0.0;
    }
    let intersection = set_i.intersection(&set_j).count();
    intersection as f64 / union as f64
}

/// The text-only model: the word-cosine component of the joint
/// similarity alone.
pub fn baseline_text_only(
    i: usize,
    j: usize,
    word_vectors: &[SparseVector<String>],
) -> Result<f64> {
    check_index(i, word_vectors.len())?;
    check_index(j, word_vectors.len())?;
    Ok(cosine(&word_vectors[i], &word_vectors[j]))
}

/// Word vectors loaded from a text embedding file.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dimension: usize,
    vectors: HashMap<String, Vec<f32>>,
}

impl EmbeddingTable {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, token: &str) -> Option<&[f32]> {
        self.vectors.get(token).map(|v| v.as_slice())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EmbeddingLoadStats {
    /// Lines whose dimension deviates from the first line, or that fail to
    /// parse.
    pub skipped_lines: u64,
    /// Repeated words; the last occurrence wins.
    pub duplicate_words: u64,
}

/// Load a text embedding file: one line per word, `word v1 v2 ... vd`,
/// space-separated. The dimension is inferred from the first line.
pub fn load_embeddings<R: BufRead>(reader: R) -> Result<(EmbeddingTable, EmbeddingLoadStats)> {
    let mut stats = EmbeddingLoadStats::default();
    let mut vectors: HashMap<String, Vec<f32>> = HashMap::new();
    let mut dimension: Option<usize> = None;
    for (line_no, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| Error::Read {
            line: line_no + 1,
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed = parse_embedding_line(&line);
        match (parsed, dimension) {
            (Some((word, values)), None) => {
                dimension = Some(values.len());
                vectors.insert(word, values);
            }
            (Some((word, values)), Some(d)) if values.len() == d => {
                if vectors.insert(word, values).is_some() {
                    stats.duplicate_words += 1;
                }
            }
            (_, None) => {
                return Err(Error::Format(format!(
                    "embedding file: unparseable first line {}",
                    line_no + 1
                )))
            }
            _ => stats.skipped_lines += 1,
        }
    }
    let dimension = dimension.ok_or_else(|| {
        Error::Format("embedding file: no data lines".to_string())
    })?;
    Ok((EmbeddingTable { dimension, vectors }, stats))
}

fn parse_embedding_line(line: &str) -> Option<(String, Vec<f32>)> {
    let mut fields = line.split_whitespace();
    let word = fields.next()?.to_string();
    let values: Option<Vec<f32>> = fields.map(|f| f.parse().ok()).collect();
    let values = values?;
    if values.is_empty() {
        return None;
    }
    Some((word, values))
}

/// Occurrence-weighted mean of in-vocabulary token vectors; `None` when no
/// token is in vocabulary.
pub fn mean_embedding(tokens: &[String], table: &EmbeddingTable) -> Option<Vec<f64>> {
    let mut sum = vec![0.0f64; table.dimension()];
    let mut count = 0usize;
    for token in tokens {
        if let Some(vector) = table.get(token) {
            for (slot, value) in sum.iter_mut().zip(vector) {
                *slot += *value as f64;
            }
            count += 1;
        }
    }
    if count == 0 {
        return None;
    }
    for slot in &mut sum {
        *slot /= count as f64;
    }
    Some(sum)
}

fn dense_cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let norm_a: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let norm_b: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm_a == 0.0 || norm_b == 0.0 {
        return 0.0;
    }
    (dot / (norm_a * norm_b)).clamp(-1.0, 1.0)
}

/// Cosine of the two averaged sentence embeddings; 0 when either sentence
/// has no in-vocabulary token.
pub fn baseline_avg_embedding(
    tokens_i: &[String],
    tokens_j: &[String],
    table: &EmbeddingTable,
) -> f64 {
    match (mean_embedding(tokens_i, table), mean_embedding(tokens_j, table)) {
        (Some(a), Some(b)) => dense_cosine(&a, &b),
        _ => 0.0,
    }
}

/// The similarity measures compared in the evaluation harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimilarityMethod {
    /// Joint similarity: concept cosine plus word cosine.
    ConceptJoint,
    /// The word-cosine component alone.
    TextOnly,
    /// Jaccard coefficient over token sets.
    WordOverlap,
    /// Cosine of averaged word embeddings.
    AvgEmbedding,
}

/// All methods, in the canonical reporting order.
pub const ALL_METHODS: [SimilarityMethod; 4] = [
    SimilarityMethod::ConceptJoint,
    SimilarityMethod::TextOnly,
    SimilarityMethod::WordOverlap,
    SimilarityMethod::AvgEmbedding,
];

impl fmt::Display for SimilarityMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SimilarityMethod::ConceptJoint => "concept_joint",
            SimilarityMethod::TextOnly => "text_only",
            SimilarityMethod::WordOverlap => "word_overlap",
            SimilarityMethod::AvgEmbedding => "avg_embedding",
        };
        write!(f, "{s}")
    }
}

impl FromStr for SimilarityMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "concept_joint" => Ok(SimilarityMethod::ConceptJoint),
            "text_only" => Ok(SimilarityMethod::TextOnly),
            "word_overlap" => Ok(SimilarityMethod::WordOverlap),
            "avg_embedding" => Ok(SimilarityMethod::AvgEmbedding),
            other => Err(format!(
                "unknown method {other:?}; expected concept_joint, text_only, word_overlap or avg_embedding"
            )),
        }
    }
}

/// Aligned per-sentence concept and word vectors for one corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusVectors {
    pub concept: Vec<SparseVector<ConceptId>>,
    pub word: Vec<SparseVector<String>>,
    pub df: DfTable,
}

impl CorpusVectors {
    /// Build both vector families from aligned concept trees and token
    /// lists.
    pub fn build(trees: &[ConceptTree], token_lists: &[Vec<String>]) -> Result<CorpusVectors> {
        let df = document_frequencies(trees, token_lists)?;
        let n = df.sentence_count;
        let mut concept = Vec::with_capacity(trees.len());
        for tree in trees {
            concept.push(feature_vector(tree.iter(), &df.concept_df, n)?);
        }
        let mut word = Vec::with_capacity(token_lists.len());
        for tokens in token_lists {
            let unique: BTreeSet<String> = tokens.iter().cloned().collect();
            word.push(feature_vector(unique, &df.word_df, n)?);
        }
        Ok(CorpusVectors { concept, word, df })
    }

    pub fn sentence_count(&self) -> usize {
        self.concept.len()
    }
}

/// Scores sentence pairs under one configured method. Pure and freely
/// parallel once built.
#[derive(Debug)]
pub struct MethodScorer<'a> {
    method: SimilarityMethod,
    vectors: &'a CorpusVectors,
    token_lists: &'a [Vec<String>],
    means: Option<Vec<Option<Vec<f64>>>>,
}

impl<'a> MethodScorer<'a> {
    pub fn new(
        method: SimilarityMethod,
        vectors: &'a CorpusVectors,
        token_lists: &'a [Vec<String>],
        embeddings: Option<&EmbeddingTable>,
    ) -> Result<MethodScorer<'a>> {
        if vectors.sentence_count() != token_lists.len() {
            return Err(Error::InvalidArgument(format!(
                "{} vectors vs {} token lists",
                vectors.sentence_count(),
                token_lists.len()
            )));
        }
        let means = match (method, embeddings) {
            (SimilarityMethod::AvgEmbedding, Some(table)) => Some(
                token_lists
                    .iter()
                    .map(|tokens| mean_embedding(tokens, table))
                    .collect(),
            ),
            (SimilarityMethod::AvgEmbedding, None) => {
                return Err(Error::InvalidArgument(
                    "avg_embedding requires an embedding table".to_string(),
                ))
            }
            _ => None,
        };
        Ok(MethodScorer {
            method,
            vectors,
            token_lists,
            means,
        })
    }

    pub fn method(&self) -> SimilarityMethod {
        self.method
    }

    pub fn vectors(&self) -> &CorpusVectors {
        self.vectors
    }

    pub fn sentence_count(&self) -> usize {
        self.token_lists.len()
    }

    pub fn score(&self, i: usize, j: usize) -> Result<f64> {
        check_index(i, self.sentence_count())?;
        check_index(j, self.sentence_count())?;
        match self.method {
            SimilarityMethod::ConceptJoint => {
                sentence_similarity(i, j, &self.vectors.concept, &self.vectors.word)
            }
            SimilarityMethod::TextOnly => baseline_text_only(i, j, &self.vectors.word),
            SimilarityMethod::WordOverlap => Ok(baseline_word_overlap(
                &self.token_lists[i],
                &self.token_lists[j],
            )),
            SimilarityMethod::AvgEmbedding => {
                let means = self.means.as_ref().expect("means built for avg_embedding");
                Ok(match (&means[i], &means[j]) {
                    (Some(a), Some(b)) => dense_cosine(a, b),
                    _ => 0.0,
                })
            }
        }
    }
}

/// Debug dump: `sentence_index<TAB>dimension_key<TAB>weight` with 9 decimal
/// digits, sorted by (index, key).
pub fn write_vector_dump<K: Ord + fmt::Display, W: Write>(
    vectors: &[SparseVector<K>],
    writer: &mut W,
) -> std::io::Result<()> {
    for (index, vector) in vectors.iter().enumerate() {
        for (key, weight) in vector.iter() {
            writeln!(writer, "{index}\t{key}\t{weight:.9}")?;
        }
    }
    Ok(())
}
