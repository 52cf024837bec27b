//! Transcript segmentation, tokenization, and concept-mention detection by
//! longest-match surface-form scanning against article titles.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::io::BufRead;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ingest::normalize_title;
use crate::ontology::{ConceptId, ConceptKind, ConceptOntology};

pub use crate::ontology::ConceptTree;

/// Dot-terminated words that never end a sentence, lowercase.
const ABBREVIATIONS: [&str; 40] = [
    "mr.", "mrs.", "ms.", "dr.", "prof.", "sen.", "rep.", "gov.", "gen.", "capt.", "lt.", "col.",
    "sgt.", "st.", "jr.", "sr.", "vs.", "etc.", "e.g.", "i.e.", "cf.", "al.", "inc.", "co.",
    "corp.", "ltd.", "dept.", "approx.", "mt.", "ft.", "hon.", "rev.", "fig.", "u.s.", "u.k.",
    "u.n.", "d.c.", "a.m.", "p.m.", "ph.d.",
];

/// Single common English words that are also article titles; suppressed as
/// one-token surface forms by default.
const DEFAULT_STOP_TITLES: [&str; 64] = [
    "the", "a", "an", "it", "he", "she", "we", "they", "you", "i", "is", "are", "was", "were",
    "be", "been", "am", "as", "at", "by", "do", "did", "does", "for", "from", "has", "have",
    "had", "in", "into", "of", "on", "or", "and", "but", "not", "no", "yes", "so", "to", "up",
    "out", "if", "then", "than", "that", "this", "these", "those", "there", "here", "what",
    "when", "where", "which", "who", "whom", "why", "how", "with", "will", "would", "can", "may",
];

/// An ordered, speaker-attributed transcript.
#[derive(Debug, Clone, PartialEq)]
pub struct Transcript {
    pub id: String,
    pub sentences: Vec<Sentence>,
}

/// One sentence with its tokens and extracted concept mentions.
#[derive(Debug, Clone, PartialEq)]
pub struct Sentence {
    pub index: usize,
    pub speaker: String,
    pub text: String,
    pub tokens: Vec<String>,
    pub mentions: Vec<ConceptMention>,
}

/// A detected surface-form occurrence of a leaf concept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptMention {
    pub leaf: ConceptId,
    /// The matched tokens joined with single spaces.
    pub surface: String,
    /// Half-open token indices (start, end).
    pub token_span: (usize, usize),
}

#[derive(Debug, Deserialize)]
struct Utterance {
    speaker: String,
    text: String,
}

/// Read a JSON Lines transcript (`{"speaker": ..., "text": ...}` per line);
/// the transcript id is the file stem.
pub fn read_transcript(path: &Path) -> Result<Transcript> {
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "transcript".to_string());
    let file = std::fs::File::open(path)
        .map_err(|e| Error::io(format!("read {}", path.display()), e))?;
    let utterances = parse_utterances(std::io::BufReader::new(file))?;
    segment_transcript(&utterances, &id)
}

/// Parse JSONL utterances. Blank lines are skipped; a malformed line is a
/// fatal format error carrying its line number.
pub fn parse_utterances<R: BufRead>(reader: R) -> Result<Vec<(String, String)>> {
    let mut utterances = Vec::new();
    for (line_no, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| Error::Read {
            line: line_no + 1,
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let utterance: Utterance = serde_json::from_str(&line).map_err(|e| {
            Error::Format(format!("transcript line {}: {e}", line_no + 1))
        })?;
        utterances.push((utterance.speaker, utterance.text));
    }
    Ok(utterances)
}

/// Split utterances into sentences, carry the speaker onto each one, and
/// assign global sentence indices in order.
pub fn segment_transcript(utterances: &[(String, String)], id: &str) -> Result<Transcript> {
    let mut sentences = Vec::new();
    for (speaker, text) in utterances {
        for piece in split_sentences(text) {
            let tokens = tokenize(&piece);
            sentences.push(Sentence {
                index: sentences.len(),
                speaker: speaker.clone(),
                text: piece,
                tokens,
                mentions: Vec::new(),
            });
        }
    }
    if sentences.is_empty() {
        return Err(Error::EmptyTranscript { id: id.to_string() });
    }
    Ok(Transcript {
        id: id.to_string(),
        sentences,
    })
}

/// Sentence splitting at `.`, `?`, `!` followed by whitespace plus a capital
/// letter, or by end of text. An abbreviation guard keeps "Dr.", "U.S." and
/// friends intact.
pub fn split_sentences(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '.' || c == '?' || c == '!' {
            let mut next = i + 1;
            while next < chars.len() && chars[next].is_whitespace() {
                next += 1;
            }
            let at_end = next == chars.len();
            let capital_follows = next > i + 1 && next < chars.len() && chars[next].is_uppercase();
            let guarded = c == '.' && ends_with_abbreviation(&chars[start..=i]);
            if (at_end || capital_follows) && !guarded {
                push_trimmed(&mut sentences, &chars[start..=i]);
                start = next;
                i = next;
                continue;
            }
        }
        i += 1;
    }
    if start < chars.len() {
        push_trimmed(&mut sentences, &chars[start..]);
    }
    sentences
}

fn push_trimmed(sentences: &mut Vec<String>, chars: &[char]) {
    let text: String = chars.iter().collect();
    let trimmed = text.trim();
    if !trimmed.is_empty() {
        sentences.push(trimmed.to_string());
    }
}

fn ends_with_abbreviation(sentence_so_far: &[char]) -> bool {
    let word_start = sentence_so_far
        .iter()
        .rposition(|c| c.is_whitespace())
        .map_or(0, |p| p + 1);
    let word: String = sentence_so_far[word_start..]
        .iter()
        .collect::<String>()
        .to_lowercase();
    let word = word.trim_start_matches(|c: char| !c.is_alphanumeric());
    if word.is_empty() {
        return false;
    }
    if ABBREVIATIONS.contains(&word) {
        return true;
    }
    // Initials like "F." in "John F. Kennedy".
    let mut cs = word.chars();
    matches!(
        (cs.next(), cs.next(), cs.next()),
        (Some(first), Some('.'), None) if first.is_alphabetic()
    )
}

/// Lowercase tokenization: split on any non-alphanumeric rune except
/// apostrophes and hyphens between alphanumerics; empty tokens dropped.
pub fn tokenize(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut current = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if c.is_alphanumeric() {
            current.extend(c.to_lowercase());
        } else if (c == '\'' || c == '-')
            && !current.is_empty()
            && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric())
        {
            current.push(c);
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

/// Counters from surface-index construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SurfaceIndexStats {
    pub indexed: u64,
    pub skipped_short: u64,
    pub skipped_stop: u64,
    pub collisions: u64,
    pub extra_forms: u64,
    pub unknown_leaf_titles: u64,
    pub malformed_lines: u64,
}

/// Normalized-title lookup supporting longest-match scanning over token
/// n-grams. Immutable after build; extraction is freely parallel.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceFormIndex {
    /// Token sequences joined with single spaces, mapping to leaf ids.
    entries: HashMap<String, ConceptId>,
    max_pattern_tokens: usize,
    stats: SurfaceIndexStats,
}

impl SurfaceFormIndex {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_pattern_tokens(&self) -> usize {
        self.max_pattern_tokens
    }

    pub fn stats(&self) -> SurfaceIndexStats {
        self.stats
    }

    /// Map a token sequence back to its leaf, if indexed.
    pub fn lookup(&self, tokens: &[String]) -> Option<ConceptId> {
        self.entries.get(&tokens.join(" ")).copied()
    }
}

/// The default single-token stop list.
pub fn default_stop_titles() -> HashSet<String> {
    DEFAULT_STOP_TITLES.iter().map(|s| s.to_string()).collect()
}

/// Strip a trailing parenthetical disambiguator: "Mercury (element)" becomes
/// "Mercury".
fn strip_disambiguator(title: &str) -> &str {
    if title.ends_with(')') {
        if let Some(pos) = title.rfind(" (") {
            return title[..pos].trim_end();
        }
    }
    title
}

/// Index every leaf title of the ontology. Titles shorter than `min_tokens`
/// tokens are skipped, as are single-token titles in the stop list. When two
/// titles collide after disambiguator stripping, the lexicographically
/// smallest title's leaf wins and the collision is counted.
pub fn build_surface_index(
    ontology: &ConceptOntology,
    min_tokens: usize,
    stop_titles: &HashSet<String>,
) -> SurfaceFormIndex {
    let min_tokens = min_tokens.max(1);
    let mut index = SurfaceFormIndex {
        entries: HashMap::new(),
        max_pattern_tokens: 1,
        stats: SurfaceIndexStats::default(),
    };
    for leaf in ontology.leaves() {
        let tokens = tokenize(strip_disambiguator(&leaf.title));
        if tokens.len() < min_tokens || tokens.is_empty() {
            index.stats.skipped_short += 1;
            continue;
        }
        if tokens.len() == 1 && stop_titles.contains(&tokens[0]) {
            index.stats.skipped_stop += 1;
            continue;
        }
        insert_pattern(&mut index, tokens, leaf.id, ontology, false);
    }
    index
}

fn insert_pattern(
    index: &mut SurfaceFormIndex,
    tokens: Vec<String>,
    leaf: ConceptId,
    ontology: &ConceptOntology,
    extra_form_wins: bool,
) {
    let key = tokens.join(" ");
    index.max_pattern_tokens = index.max_pattern_tokens.max(tokens.len());
    match index.entries.get_mut(&key) {
        Some(existing) => {
            if *existing != leaf {
                index.stats.collisions += 1;
                let keep_new = extra_form_wins
                    || ontology.title(leaf) < ontology.title(*existing);
                if keep_new {
                    *existing = leaf;
                }
            }
        }
        None => {
            index.entries.insert(key, leaf);
            index.stats.indexed += 1;
        }
    }
}

/// Merge extra surface forms (`surface<TAB>leaf_title` per line) into the
/// index. An explicit mapping overrides a title-derived one. Unknown leaf
/// titles and malformed lines are counted and skipped.
pub fn merge_extra_surface_forms<R: BufRead>(
    index: &mut SurfaceFormIndex,
    ontology: &ConceptOntology,
    reader: R,
) -> Result<()> {
    for (line_no, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| Error::Read {
            line: line_no + 1,
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 {
            index.stats.malformed_lines += 1;
            continue;
        }
        let tokens = tokenize(fields[0]);
        if tokens.is_empty() {
            index.stats.malformed_lines += 1;
            continue;
        }
        let title = normalize_title(fields[1]);
        match ontology.lookup(ConceptKind::Leaf, &title) {
            Some(leaf) => {
                index.stats.extra_forms += 1;
                insert_pattern(index, tokens, leaf, ontology, true);
            }
            None => index.stats.unknown_leaf_titles += 1,
        }
    }
    Ok(())
}

/// Left-to-right greedy longest-match over token n-grams. Matches never
/// overlap; scanning resumes after each match.
pub fn scan_tokens(tokens: &[String], index: &SurfaceFormIndex) -> Vec<ConceptMention> {
    let mut mentions = Vec::new();
    let mut position = 0;
    let mut key = String::new();
    while position < tokens.len() {
        let longest = index.max_pattern_tokens.min(tokens.len() - position);
        key.clear();
        let mut best: Option<(usize, ConceptId)> = None;
        for length in 1..=longest {
            if length > 1 {
                key.push(' ');
            }
            key.push_str(&tokens[position + length - 1]);
            if let Some(&leaf) = index.entries.get(&key) {
                best = Some((length, leaf));
            }
        }
        match best {
            Some((length, leaf)) => {
                mentions.push(ConceptMention {
                    leaf,
                    surface: tokens[position..position + length].join(" "),
                    token_span: (position, position + length),
                });
                position += length;
            }
            None => position += 1,
        }
    }
    mentions
}

/// Detect concept mentions in a sentence.
pub fn extract_concepts(sentence: &Sentence, index: &SurfaceFormIndex) -> Vec<ConceptMention> {
    scan_tokens(&sentence.tokens, index)
}

/// Run extraction over every sentence of a transcript, storing the mentions
/// in place.
pub fn annotate_transcript(transcript: &mut Transcript, index: &SurfaceFormIndex) {
    for sentence in &mut transcript.sentences {
        sentence.mentions = scan_tokens(&sentence.tokens, index);
    }
}

/// The concept tree for one sentence: mentioned leaves plus ancestor closure.
pub fn concept_tree_for_sentence(
    mentions: &[ConceptMention],
    ontology: &ConceptOntology,
    max_depth: Option<usize>,
) -> Result<ConceptTree> {
    let leaves: BTreeSet<ConceptId> = mentions.iter().map(|m| m.leaf).collect();
    ontology.induced_concept_tree(&leaves, max_depth)
}
