//! Concept-flow graphs: each sentence links forward to its most similar
//! later sentence, edges carry shared-concept annotations, and the result
//! exports to DOT and JSON for visualization.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extract::Transcript;
use crate::ontology::{ConceptId, ConceptOntology};
use crate::similarity::{MethodScorer, SimilarityMethod, SparseVector};

/// Fixed speaker palette, assigned by first appearance.
const SPEAKER_PALETTE: [&str; 12] = [
    "#a6cee3", "#1f78b4", "#b2df8a", "#33a02c", "#fb9a99", "#e31a1c", "#fdbf6f", "#ff7f00",
    "#cab2d6", "#6a3d9a", "#ffff99", "#b15928",
];

const DOT_LABEL_CHARS: usize = 48;

/// A concept shared by or attached to sentences, with its weight.
#[derive(Debug, Clone, PartialEq)]
pub struct SharedConcept {
    pub id: ConceptId,
    pub title: String,
    pub weight: f64,
}

/// A word token shared by two sentences, with the weight product.
#[derive(Debug, Clone, PartialEq)]
pub struct SharedWord {
    pub token: String,
    pub weight: f64,
}

/// A forward best-match edge (`to > from` strictly).
#[derive(Debug, Clone, PartialEq)]
pub struct FlowEdge {
    pub from: usize,
    pub to: usize,
    pub score: f64,
    pub shared_concepts: Vec<SharedConcept>,
    pub shared_words: Vec<SharedWord>,
}

/// One sentence node with its top concepts.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowNode {
    pub index: usize,
    pub speaker: String,
    pub text: String,
    pub concepts: Vec<SharedConcept>,
}

/// The concept-flow graph for one transcript. Out-degree is at most 1 and
/// all edges point strictly forward, so the graph is acyclic.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowGraph {
    pub transcript_id: String,
    pub method: SimilarityMethod,
    pub threshold: f64,
    pub nodes: Vec<FlowNode>,
    pub edges: Vec<FlowEdge>,
}

/// Per-concept importance: the sum of its weights over all sentences.
#[derive(Debug, Clone, PartialEq)]
pub struct ConceptImportance {
    pub concept: ConceptId,
    pub score: f64,
}

/// Knobs for flow construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowOptions {
    /// Minimum score for an edge; zero-score pairs never link regardless.
    pub threshold: f64,
    /// Shared concepts/words kept per edge.
    pub top_shared: usize,
    /// Concepts kept per node.
    pub top_node_concepts: usize,
}

impl Default for FlowOptions {
    fn default() -> Self {
        FlowOptions {
            threshold: 0.0,
            top_shared: 5,
            top_node_concepts: 5,
        }
    }
}

/// Link each sentence to its most similar later sentence (ties broken by the
/// smallest index). An edge is emitted iff its score clears the threshold
/// and is strictly positive.
pub fn build_flow(
    transcript: &Transcript,
    scorer: &MethodScorer<'_>,
    ontology: &ConceptOntology,
    options: &FlowOptions,
) -> Result<FlowGraph> {
    let n = transcript.sentences.len();
    if scorer.sentence_count() != n {
        return Err(Error::InvalidArgument(format!(
            "{} scored sentences vs {} transcript sentences",
            scorer.sentence_count(),
            n
        )));
    }
    let vectors = scorer.vectors();

    let mut nodes = Vec::with_capacity(n);
    for sentence in &transcript.sentences {
        let ranked = rank_entries(&vectors.concept[sentence.index], options.top_node_concepts);
        nodes.push(FlowNode {
            index: sentence.index,
            speaker: sentence.speaker.clone(),
            text: sentence.text.clone(),
            concepts: resolve_titles(ranked, ontology)?,
        });
    }

    let mut edges = Vec::new();
    for i in 0..n {
        let mut best: Option<(usize, f64)> = None;
        for j in i + 1..n {
            let score = scorer.score(i, j)?;
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((j, score));
            }
        }
        if let Some((j, score)) = best {
            if score >= options.threshold && score > 0.0 {
                let (concepts, words) =
                    annotate_edge(i, j, &vectors.concept, &vectors.word, options.top_shared)?;
                edges.push(FlowEdge {
                    from: i,
                    to: j,
                    score,
                    shared_concepts: resolve_titles(concepts, ontology)?,
                    shared_words: words
                        .into_iter()
                        .map(|(token, weight)| SharedWord { token, weight })
                        .collect(),
                });
            }
        }
    }

    Ok(FlowGraph {
        transcript_id: transcript.id.clone(),
        method: scorer.method(),
        threshold: options.threshold,
        nodes,
        edges,
    })
}

/// Keys paired with weights, ranked descending.
pub type RankedKeys<K> = Vec<(K, f64)>;

/// Keys present in both sentences' vectors, ranked by the product of the two
/// weights and truncated to `top_k`. Ties resolve by key order.
pub fn annotate_edge(
    i: usize,
    j: usize,
    concept_vectors: &[SparseVector<ConceptId>],
    word_vectors: &[SparseVector<String>],
    top_k: usize,
) -> Result<(RankedKeys<ConceptId>, RankedKeys<String>)> {
    let bound = concept_vectors.len().min(word_vectors.len());
    if i >= bound || j >= bound {
        return Err(Error::InvalidArgument(format!(
            "sentence pair ({i}, {j}) out of range for {bound} sentences"
        )));
    }
    let concepts = shared_products(&concept_vectors[i], &concept_vectors[j], top_k);
    let words = shared_products(&word_vectors[i], &word_vectors[j], top_k);
    Ok((concepts, words))
}

fn shared_products<K: Ord + Clone>(
    a: &SparseVector<K>,
    b: &SparseVector<K>,
    top_k: usize,
) -> Vec<(K, f64)> {
    let mut shared: Vec<(K, f64)> = a
        .iter()
        .filter_map(|(key, weight)| b.get(key).map(|other| (key.clone(), weight * other)))
        .collect();
    shared.sort_by(|x, y| {
        y.1.partial_cmp(&x.1)
            .expect("finite weights")
            .then_with(|| x.0.cmp(&y.0))
    });
    shared.truncate(top_k);
    shared
}

fn rank_entries(vector: &SparseVector<ConceptId>, top_k: usize) -> Vec<(ConceptId, f64)> {
    let mut entries: Vec<(ConceptId, f64)> = vector.iter().map(|(&k, w)| (k, w)).collect();
    entries.sort_by(|x, y| {
        y.1.partial_cmp(&x.1)
            .expect("finite weights")
            .then_with(|| x.0.cmp(&y.0))
    });
    entries.truncate(top_k);
    entries
}

fn resolve_titles(
    entries: Vec<(ConceptId, f64)>,
    ontology: &ConceptOntology,
) -> Result<Vec<SharedConcept>> {
    entries
        .into_iter()
        .map(|(id, weight)| {
            let title = ontology.title(id).ok_or_else(|| {
                Error::InternalConsistency(format!("concept {id} not in ontology"))
            })?;
            Ok(SharedConcept {
                id,
                title: title.to_string(),
                weight,
            })
        })
        .collect()
}

/// Per-concept sum of weights across all sentences, descending, ties by id,
/// truncated to `top_k`. Never-mentioned concepts are absent.
pub fn rank_concepts(
    concept_vectors: &[SparseVector<ConceptId>],
    top_k: usize,
) -> Vec<ConceptImportance> {
    let mut totals: BTreeMap<ConceptId, f64> = BTreeMap::new();
    for vector in concept_vectors {
        for (&id, weight) in vector.iter() {
            *totals.entry(id).or_insert(0.0) += weight;
        }
    }
    let mut ranked: Vec<ConceptImportance> = totals
        .into_iter()
        .map(|(concept, score)| ConceptImportance { concept, score })
        .collect();
    ranked.sort_by(|x, y| {
        y.score
            .partial_cmp(&x.score)
            .expect("finite scores")
            .then_with(|| x.concept.cmp(&y.concept))
    });
    ranked.truncate(top_k);
    ranked
}

fn escape_dot(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' | '\r' | '\t' => out.push(' '),
            _ => out.push(c),
        }
    }
    out
}

fn truncate_label(text: &str) -> String {
    let mut label: String = text.chars().take(DOT_LABEL_CHARS).collect();
    if text.chars().count() > DOT_LABEL_CHARS {
        label.push_str("...");
    }
    label
}

/// Render the flow as a DOT digraph: one box per sentence colored by
/// speaker, one edge per flow link labeled with its top shared concept.
/// Byte-deterministic.
pub fn export_dot(flow: &FlowGraph) -> String {
    let mut speaker_colors: BTreeMap<&str, &str> = BTreeMap::new();
    let mut next_color = 0usize;
    let mut color_of = Vec::with_capacity(flow.nodes.len());
    for node in &flow.nodes {
        let color = speaker_colors.entry(node.speaker.as_str()).or_insert_with(|| {
            let color = SPEAKER_PALETTE[next_color % SPEAKER_PALETTE.len()];
            next_color += 1;
            color
        });
        color_of.push(*color);
    }

    let mut out = String::new();
    out.push_str("digraph flow {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=box, style=filled];\n");
    for (node, color) in flow.nodes.iter().zip(&color_of) {
        let _ = writeln!(
            out,
            "  s{} [label=\"{}: {}\", fillcolor=\"{}\"];",
            node.index,
            node.index,
            escape_dot(&truncate_label(&node.text)),
            color
        );
    }
    for edge in &flow.edges {
        let label = edge
            .shared_concepts
            .first()
            .map(|c| escape_dot(&c.title))
            .unwrap_or_default();
        let _ = writeln!(out, "  s{} -> s{} [label=\"{}\"];", edge.from, edge.to, label);
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize, Deserialize)]
struct WireConcept {
    id: u32,
    title: String,
    weight: f64,
}

#[derive(Serialize, Deserialize)]
struct WireWord {
    token: String,
    weight: f64,
}

#[derive(Serialize, Deserialize)]
struct WireNode {
    i: usize,
    speaker: String,
    text: String,
    concepts: Vec<WireConcept>,
}

#[derive(Serialize, Deserialize)]
struct WireEdge {
    from: usize,
    to: usize,
    score: f64,
    shared_concepts: Vec<WireConcept>,
    shared_words: Vec<WireWord>,
}

#[derive(Serialize, Deserialize)]
struct WireFlow {
    transcript_id: String,
    method: String,
    threshold: f64,
    nodes: Vec<WireNode>,
    edges: Vec<WireEdge>,
}

/// Numbers are written with at most 6 decimal digits.
fn round6(value: f64) -> f64 {
    (value * 1e6).round() / 1e6
}

fn to_wire_concepts(concepts: &[SharedConcept]) -> Vec<WireConcept> {
    concepts
        .iter()
        .map(|c| WireConcept {
            id: c.id.0,
            title: c.title.clone(),
            weight: round6(c.weight),
        })
        .collect()
}

/// Serialize the flow as JSON with sorted keys. Scores carry 6 decimal
/// digits; parsing the output reconstructs the graph within that rounding.
pub fn export_json(flow: &FlowGraph) -> String {
    let wire = WireFlow {
        transcript_id: flow.transcript_id.clone(),
        method: flow.method.to_string(),
        threshold: round6(flow.threshold),
        nodes: flow
            .nodes
            .iter()
            .map(|node| WireNode {
                i: node.index,
                speaker: node.speaker.clone(),
                text: node.text.clone(),
                concepts: to_wire_concepts(&node.concepts),
            })
            .collect(),
        edges: flow
            .edges
            .iter()
            .map(|edge| WireEdge {
                from: edge.from,
                to: edge.to,
                score: round6(edge.score),
                shared_concepts: to_wire_concepts(&edge.shared_concepts),
                shared_words: edge
                    .shared_words
                    .iter()
                    .map(|w| WireWord {
                        token: w.token.clone(),
                        weight: round6(w.weight),
                    })
                    .collect(),
            })
            .collect(),
    };
    let value = serde_json::to_value(&wire).expect("flow serializes");
    value.to_string()
}

/// Parse a flow graph previously written by [`export_json`].
pub fn parse_flow_json(text: &str) -> Result<FlowGraph> {
    let wire: WireFlow =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("flow json: {e}")))?;
    let method: SimilarityMethod = wire
        .method
        .parse()
        .map_err(|e: String| Error::Format(format!("flow json: {e}")))?;
    let from_concepts = |concepts: Vec<WireConcept>| -> Vec<SharedConcept> {
        concepts
            .into_iter()
            .map(|c| SharedConcept {
                id: ConceptId(c.id),
                title: c.title,
                weight: c.weight,
            })
            .collect()
    };
    Ok(FlowGraph {
        transcript_id: wire.transcript_id,
        method,
        threshold: wire.threshold,
        nodes: wire
            .nodes
            .into_iter()
            .map(|node| FlowNode {
                index: node.i,
                speaker: node.speaker,
                text: node.text,
                concepts: from_concepts(node.concepts),
            })
            .collect(),
        edges: wire
            .edges
            .into_iter()
            .map(|edge| FlowEdge {
                from: edge.from,
                to: edge.to,
                score: edge.score,
                shared_concepts: from_concepts(edge.shared_concepts),
                shared_words: edge
                    .shared_words
                    .into_iter()
                    .map(|w| SharedWord {
                        token: w.token,
                        weight: w.weight,
                    })
                    .collect(),
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::segment_transcript;
    use crate::ingest::{build_raw_graph, CategoryLinkRecord, FilterRules, Namespace, PageRecord};
    use crate::ontology::distill;
    use crate::similarity::{CorpusVectors, DfTable};

    fn tiny_ontology(leaf_titles: &[&str]) -> ConceptOntology {
        let mut pages = vec![
            PageRecord {
                page_id: 1,
                namespace: Namespace::Category,
                title: "Root".into(),
            },
            PageRecord {
                page_id: 2,
                namespace: Namespace::Category,
                title: "Topics".into(),
            },
        ];
        let mut links = vec![CategoryLinkRecord {
            child_title: "Topics".into(),
            child_kind: Namespace::Category,
            parent_category_title: "Root".into(),
        }];
        for (i, title) in leaf_titles.iter().enumerate() {
            pages.push(PageRecord {
                page_id: 10 + i as u64,
                namespace: Namespace::Article,
                title: title.to_string(),
            });
            links.push(CategoryLinkRecord {
                child_title: title.to_string(),
                child_kind: Namespace::Article,
                parent_category_title: "Topics".into(),
            });
        }
        let (raw, _) = build_raw_graph(pages, &links);
        distill(&raw, &FilterRules::default(), "Root").unwrap()
    }

    fn transcript(texts: &[(&str, &str)]) -> Transcript {
        let utterances: Vec<(String, String)> = texts
            .iter()
            .map(|(s, t)| (s.to_string(), t.to_string()))
            .collect();
        segment_transcript(&utterances, "fixture").unwrap()
    }

    /// Hand-built corpus: word vectors give cos(0,1)=0.5, cos(0,2)=1,
    /// cos(1,2)=0.5; no concepts.
    fn word_only_vectors() -> (CorpusVectors, Vec<Vec<String>>) {
        let u = vec![
            SparseVector::from_entries([("p".to_string(), 1.0), ("q".to_string(), 1.0)]),
            SparseVector::from_entries([("q".to_string(), 1.0), ("r".to_string(), 1.0)]),
            SparseVector::from_entries([("p".to_string(), 1.0), ("q".to_string(), 1.0)]),
        ];
        let vectors = CorpusVectors {
            concept: vec![SparseVector::new(), SparseVector::new(), SparseVector::new()],
            word: u,
            df: DfTable::default(),
        };
        let token_lists = vec![
            vec!["p".to_string(), "q".to_string()],
            vec!["q".to_string(), "r".to_string()],
            vec!["p".to_string(), "q".to_string()],
        ];
        (vectors, token_lists)
    }

    fn three_sentence_flow(threshold: f64) -> FlowGraph {
        let o = tiny_ontology(&[]);
        let t = transcript(&[("A", "One here."), ("B", "Two here."), ("A", "Three here.")]);
        let (vectors, token_lists) = word_only_vectors();
        let scorer =
            MethodScorer::new(SimilarityMethod::TextOnly, &vectors, &token_lists, None).unwrap();
        build_flow(
            &t,
            &scorer,
            &o,
            &FlowOptions {
                threshold,
                ..FlowOptions::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn links_forward_to_best_match() {
        let flow = three_sentence_flow(0.0);
        let pairs: Vec<(usize, usize)> = flow.edges.iter().map(|e| (e.from, e.to)).collect();
        assert_eq!(pairs, vec![(0, 2), (1, 2)]);
        assert!((flow.edges[0].score - 1.0).abs() < 1e-12);
        // The final sentence has no outgoing edge.
        assert!(flow.edges.iter().all(|e| e.from != 2));
    }

    #[test]
    fn threshold_filters_edges() {
        let flow = three_sentence_flow(0.75);
        let pairs: Vec<(usize, usize)> = flow.edges.iter().map(|e| (e.from, e.to)).collect();
        assert_eq!(pairs, vec![(0, 2)]);
        let none = three_sentence_flow(3.0);
        assert!(none.edges.is_empty());
    }

    #[test]
    fn exact_ties_take_smallest_j() {
        let o = tiny_ontology(&[]);
        let t = transcript(&[("A", "One here."), ("A", "Two here."), ("A", "Three here.")]);
        let u = vec![
            SparseVector::from_entries([("p".to_string(), 1.0)]),
            SparseVector::from_entries([("p".to_string(), 1.0)]),
            SparseVector::from_entries([("p".to_string(), 1.0)]),
        ];
        let vectors = CorpusVectors {
            concept: vec![SparseVector::new(), SparseVector::new(), SparseVector::new()],
            word: u,
            df: DfTable::default(),
        };
        let token_lists = vec![vec!["p".to_string()]; 3];
        let scorer =
            MethodScorer::new(SimilarityMethod::TextOnly, &vectors, &token_lists, None).unwrap();
        let flow = build_flow(&t, &scorer, &o, &FlowOptions::default()).unwrap();
        let pairs: Vec<(usize, usize)> = flow.edges.iter().map(|e| (e.from, e.to)).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn zero_similarity_never_links() {
        let o = tiny_ontology(&[]);
        let t = transcript(&[("A", "One here."), ("B", "Two here.")]);
        let vectors = CorpusVectors {
            concept: vec![SparseVector::new(), SparseVector::new()],
            word: vec![
                SparseVector::from_entries([("p".to_string(), 1.0)]),
                SparseVector::from_entries([("z".to_string(), 1.0)]),
            ],
            df: DfTable::default(),
        };
        let token_lists = vec![vec!["p".to_string()], vec!["z".to_string()]];
        let scorer =
            MethodScorer::new(SimilarityMethod::TextOnly, &vectors, &token_lists, None).unwrap();
        let flow = build_flow(&t, &scorer, &o, &FlowOptions::default()).unwrap();
        assert!(flow.edges.is_empty());
    }

    #[test]
    fn annotate_ranks_by_weight_product() {
        let v = vec![
            SparseVector::from_entries([(ConceptId(3), 2.0)]),
            SparseVector::from_entries([(ConceptId(3), 1.5)]),
        ];
        let u = vec![
            SparseVector::from_entries([
                ("a".to_string(), 1.0),
                ("b".to_string(), 3.0),
                ("c".to_string(), 2.0),
            ]),
            SparseVector::from_entries([
                ("a".to_string(), 1.0),
                ("b".to_string(), 1.0),
                ("c".to_string(), 2.0),
            ]),
        ];
        let (concepts, words) = annotate_edge(0, 1, &v, &u, 2).unwrap();
        assert_eq!(concepts, vec![(ConceptId(3), 3.0)]);
        // Products: a=1, b=3, c=4; top 2 keeps c then b.
        assert_eq!(
            words,
            vec![("c".to_string(), 4.0), ("b".to_string(), 3.0)]
        );
        // Disjoint supports give empty lists.
        let empty_v = vec![SparseVector::new(), SparseVector::from_entries([(ConceptId(1), 1.0)])];
        let empty_u = vec![
            SparseVector::from_entries([("x".to_string(), 1.0)]),
            SparseVector::from_entries([("y".to_string(), 1.0)]),
        ];
        let (c, w) = annotate_edge(0, 1, &empty_v, &empty_u, 3).unwrap();
        assert!(c.is_empty());
        assert!(w.is_empty());
    }

    #[test]
    fn rank_concepts_sums_and_breaks_ties_by_id() {
        let v = vec![
            SparseVector::from_entries([(ConceptId(5), 1.0), (ConceptId(9), 1.0)]),
            SparseVector::from_entries([(ConceptId(5), 1.0)]),
            SparseVector::from_entries([(ConceptId(5), 1.0), (ConceptId(2), 2.0)]),
        ];
        let ranked = rank_concepts(&v, 10);
        assert_eq!(ranked[0].concept, ConceptId(5));
        assert!((ranked[0].score - 3.0).abs() < 1e-12);
        // 2.0 each: lower id first.
        assert_eq!(ranked[1].concept, ConceptId(2));
        assert_eq!(ranked[2].concept, ConceptId(9));
        assert_eq!(rank_concepts(&v, 1).len(), 1);
    }

    #[test]
    fn dot_export_shape() {
        let flow = three_sentence_flow(0.0);
        let dot = export_dot(&flow);
        assert!(dot.starts_with("digraph flow {"));
        assert_eq!(dot.matches(" -> ").count(), 2);
        // Two speakers, two distinct fill colors.
        assert!(dot.contains("#a6cee3"));
        assert!(dot.contains("#1f78b4"));
        // Deterministic byte-for-byte.
        assert_eq!(dot, export_dot(&flow));
    }

    #[test]
    fn dot_export_without_edges_keeps_nodes() {
        let flow = three_sentence_flow(3.0);
        let dot = export_dot(&flow);
        assert_eq!(dot.matches(" -> ").count(), 0);
        assert_eq!(dot.matches("[label=").count(), 3);
    }

    #[test]
    fn json_round_trip_and_determinism() {
        let flow = three_sentence_flow(0.0);
        let json = export_json(&flow);
        let parsed = parse_flow_json(&json).unwrap();
        assert_eq!(parsed.transcript_id, flow.transcript_id);
        assert_eq!(parsed.method, flow.method);
        assert_eq!(parsed.nodes.len(), flow.nodes.len());
        assert_eq!(parsed.edges.len(), flow.edges.len());
        for (a, b) in parsed.edges.iter().zip(&flow.edges) {
            assert_eq!((a.from, a.to), (b.from, b.to));
            assert!((a.score - b.score).abs() < 5e-7);
        }
        // Export of the parsed graph reproduces the bytes exactly.
        assert_eq!(export_json(&parsed), json);
    }

    #[test]
    fn json_scores_carry_six_decimals() {
        let mut flow = three_sentence_flow(0.0);
        flow.edges[0].score = 1.234_567_89;
        let json = export_json(&flow);
        assert!(json.contains("1.234568"));
        let parsed = parse_flow_json(&json).unwrap();
        assert!((parsed.edges[0].score - 1.234_567_89).abs() < 5e-7);
    }

    #[test]
    fn empty_edge_list_is_explicit_in_json() {
        let flow = three_sentence_flow(3.0);
        let json = export_json(&flow);
        assert!(json.contains("\"edges\":[]"));
    }

    #[test]
    fn json_keys_are_sorted() {
        let flow = three_sentence_flow(0.0);
        let json = export_json(&flow);
        let edges_pos = json.find("\"edges\"").unwrap();
        let method_pos = json.find("\"method\"").unwrap();
        let nodes_pos = json.find("\"nodes\"").unwrap();
        let threshold_pos = json.find("\"threshold\"").unwrap();
        let id_pos = json.find("\"transcript_id\"").unwrap();
        assert!(edges_pos < method_pos);
        assert!(method_pos < nodes_pos);
        assert!(nodes_pos < threshold_pos);
        assert!(threshold_pos < id_pos);
    }

    #[test]
    fn node_concepts_come_from_ontology_titles() {
        let o = tiny_ontology(&["Aspirin", "Ibuprofen"]);
        let aspirin = o
            .lookup(crate::ontology::ConceptKind::Leaf, "Aspirin")
            .unwrap();
        let t = transcript(&[("A", "One here."), ("B", "Two here.")]);
        let vectors = CorpusVectors {
            concept: vec![
                SparseVector::from_entries([(aspirin, 1.5)]),
                SparseVector::from_entries([(aspirin, 1.5)]),
            ],
            word: vec![SparseVector::new(), SparseVector::new()],
            df: DfTable::default(),
        };
        let token_lists = vec![vec![], vec![]];
        let scorer =
            MethodScorer::new(SimilarityMethod::ConceptJoint, &vectors, &token_lists, None)
                .unwrap();
        let flow = build_flow(&t, &scorer, &o, &FlowOptions::default()).unwrap();
        assert_eq!(flow.nodes[0].concepts[0].title, "Aspirin");
        assert_eq!(flow.edges[0].shared_concepts[0].title, "Aspirin");
        let dot = export_dot(&flow);
        assert!(dot.contains("[label=\"Aspirin\"]"));
    }
}
