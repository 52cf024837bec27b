//! The distilled concept ontology: a directed graph of category concepts and
//! article leaves with fine-to-coarse edges, rooted at the main-topic
//! category.
//!
//! Wikipedia's category graph contains cycles, so despite the "concept tree"
//! terminology every traversal here keeps a visited set.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ingest::{normalize_title, CategoryClass, FilterRules, Namespace, RawGraph};

/// Dense node handle; ids are contiguous `0..n` within one distilled
/// ontology and id 0 is the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConceptId(pub u32);

impl ConceptId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ConceptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConceptKind {
    Category,
    Leaf,
}

impl fmt::Display for ConceptKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConceptKind::Category => write!(f, "category"),
            ConceptKind::Leaf => write!(f, "leaf"),
        }
    }
}

impl FromStr for ConceptKind {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "category" => Ok(ConceptKind::Category),
            "leaf" => Ok(ConceptKind::Leaf),
            _ => Err(()),
        }
    }
}

/// One node of the ontology. `parents` holds the fine-to-coarse edges and is
/// sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptNode {
    pub id: ConceptId,
    pub title: String,
    pub kind: ConceptKind,
    pub parents: Vec<ConceptId>,
}

/// A per-sentence set of concepts: mentioned leaves plus their ancestor
/// closure.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConceptTree {
    pub concepts: BTreeSet<ConceptId>,
}

impl ConceptTree {
    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn contains(&self, id: ConceptId) -> bool {
        self.concepts.contains(&id)
    }

    pub fn iter(&self) -> impl Iterator<Item = ConceptId> + '_ {
        self.concepts.iter().copied()
    }
}

impl FromIterator<ConceptId> for ConceptTree {
    fn from_iter<T: IntoIterator<Item = ConceptId>>(iter: T) -> Self {
        ConceptTree {
            concepts: iter.into_iter().collect(),
        }
    }
}

/// Corpus-level counts reported by `stats`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OntologyStats {
    pub category_count: u64,
    pub edge_count: u64,
    pub leaf_count: u64,
    pub mean_categories_per_leaf: f64,
}

/// The distilled ontology. Immutable after construction; concurrent readers
/// need no synchronization.
#[derive(Debug, Clone, PartialEq)]
pub struct ConceptOntology {
    nodes: Vec<ConceptNode>,
    root: ConceptId,
    edge_count: u64,
    title_index: HashMap<(ConceptKind, String), ConceptId>,
}

impl ConceptOntology {
    pub fn root(&self) -> ConceptId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn node(&self, id: ConceptId) -> Option<&ConceptNode> {
        self.nodes.get(id.index())
    }

    pub fn title(&self, id: ConceptId) -> Option<&str> {
        self.node(id).map(|n| n.title.as_str())
    }

    pub fn nodes(&self) -> impl Iterator<Item = &ConceptNode> {
        self.nodes.iter()
    }

    pub fn leaves(&self) -> impl Iterator<Item = &ConceptNode> {
        self.nodes.iter().filter(|n| n.kind == ConceptKind::Leaf)
    }

    pub fn categories(&self) -> impl Iterator<Item = &ConceptNode> {
        self.nodes
            .iter()
            .filter(|n| n.kind == ConceptKind::Category)
    }

    /// Look up a node by kind and normalized title.
    pub fn lookup(&self, kind: ConceptKind, title: &str) -> Option<ConceptId> {
        self.title_index.get(&(kind, title.to_string())).copied()
    }

    /// All nodes reachable from `id` along parent edges, up to `max_depth`
    /// hops (`None` = unbounded), excluding `id` itself. Cycle-safe.
    pub fn ancestors(&self, id: ConceptId, max_depth: Option<usize>) -> Result<BTreeSet<ConceptId>> {
        if self.node(id).is_none() {
            return Err(Error::InvalidArgument(format!(
                "concept id {id} out of range (node count {})",
                self.nodes.len()
            )));
        }
        let mut visited: BTreeSet<ConceptId> = BTreeSet::new();
        visited.insert(id);
        let mut out = BTreeSet::new();
        let mut queue: VecDeque<(ConceptId, usize)> = VecDeque::new();
        queue.push_back((id, 0));
        while let Some((current, depth)) = queue.pop_front() {
            if let Some(limit) = max_depth {
                if depth == limit {
                    continue;
                }
            }
            for &parent in &self.nodes[current.index()].parents {
                if visited.insert(parent) {
                    out.insert(parent);
                    queue.push_back((parent, depth + 1));
                }
            }
        }
        Ok(out)
    }

    /// The induced concept tree for a set of leaves: the leaves plus the
    /// union of their ancestor closures.
    pub fn induced_concept_tree(
        &self,
        leaves: &BTreeSet<ConceptId>,
        max_depth: Option<usize>,
    ) -> Result<ConceptTree> {
        let mut concepts = BTreeSet::new();
        for &leaf in leaves {
            concepts.extend(self.ancestors(leaf, max_depth)?);
            concepts.insert(leaf);
        }
        Ok(ConceptTree { concepts })
    }

    /// Full-scan corpus statistics.
    pub fn stats(&self) -> OntologyStats {
        let mut category_count = 0u64;
        let mut leaf_count = 0u64;
        let mut leaf_parent_links = 0u64;
        for node in &self.nodes {
            match node.kind {
                ConceptKind::Category => category_count += 1,
                ConceptKind::Leaf => {
                    leaf_count += 1;
                    leaf_parent_links += node.parents.len() as u64;
                }
            }
        }
        let mean = if leaf_count == 0 {
            0.0
        } else {
            leaf_parent_links as f64 / leaf_count as f64
        };
        OntologyStats {
            category_count,
            edge_count: self.edge_count,
            leaf_count,
            mean_categories_per_leaf: mean,
        }
    }
}

/// Distill the raw category graph into a concept ontology.
///
/// Removes categories classified non-topical, prunes categories unreachable
/// from the root, drops articles left with no surviving parent, and
/// reassigns dense ids (root first, then categories and leaves each in title
/// order).
pub fn distill(raw: &RawGraph, rules: &FilterRules, root_title: &str) -> Result<ConceptOntology> {
    let normalized_root = normalize_title(root_title);
    let root_page = raw
        .title_index
        .get(Namespace::Category, &normalized_root)
        .ok_or(Error::RootNotFound {
            title: normalized_root,
        })?;

    // The root is exempt from filtering; everything hangs off it.
    let mut topical: HashMap<u64, bool> = HashMap::new();
    for page in raw.pages.values() {
        if page.namespace == Namespace::Category {
            let keep =
                page.page_id == root_page || rules.classify(&page.title) == CategoryClass::Topical;
            topical.insert(page.page_id, keep);
        }
    }

    // Downward adjacency over surviving categories, for reachability pruning.
    let mut category_children: HashMap<u64, Vec<u64>> = HashMap::new();
    for &(child, parent) in &raw.edges {
        if topical.get(&child).copied().unwrap_or(false)
            && topical.get(&parent).copied().unwrap_or(false)
        {
            category_children.entry(parent).or_default().push(child);
        }
    }

    let mut reachable: BTreeSet<u64> = BTreeSet::new();
    let mut queue = VecDeque::new();
    reachable.insert(root_page);
    queue.push_back(root_page);
    while let Some(current) = queue.pop_front() {
        if let Some(children) = category_children.get(&current) {
            for &child in children {
                if reachable.insert(child) {
                    queue.push_back(child);
                }
            }
        }
    }

    // Articles keep only parents that survived; drop orphaned articles.
    let mut leaf_parents: HashMap<u64, Vec<u64>> = HashMap::new();
    let mut category_parents: HashMap<u64, Vec<u64>> = HashMap::new();
    for &(child, parent) in &raw.edges {
        if !reachable.contains(&parent) {
            continue;
        }
        match raw.pages.get(&child).map(|p| p.namespace) {
            Some(Namespace::Article) => leaf_parents.entry(child).or_default().push(parent),
            // The root keeps an empty parent set by definition.
            Some(Namespace::Category) if reachable.contains(&child) && child != root_page => {
                category_parents.entry(child).or_default().push(parent);
            }
            _ => {}
        }
    }

    // Dense id assignment: root is 0, then categories, then leaves, each in
    // (title, page id) order for a byte-deterministic artifact.
    let mut category_order: Vec<(&str, u64)> = reachable
        .iter()
        .filter(|&&id| id != root_page)
        .map(|&id| (raw.pages[&id].title.as_str(), id))
        .collect();
    category_order.sort_unstable();

    let mut leaf_order: Vec<(&str, u64)> = leaf_parents
        .keys()
        .map(|&id| (raw.pages[&id].title.as_str(), id))
        .collect();
    leaf_order.sort_unstable();

    let node_count = 1 + category_order.len() + leaf_order.len();
    if node_count > u32::MAX as usize {
        return Err(Error::InternalConsistency(format!(
            "ontology of {node_count} nodes exceeds the id space"
        )));
    }

    let mut id_of: HashMap<u64, ConceptId> = HashMap::with_capacity(node_count);
    id_of.insert(root_page, ConceptId(0));
    for (next, (_, page_id)) in category_order.iter().enumerate() {
        id_of.insert(*page_id, ConceptId((next + 1) as u32));
    }
    let leaf_base = 1 + category_order.len();
    for (next, (_, page_id)) in leaf_order.iter().enumerate() {
        id_of.insert(*page_id, ConceptId((leaf_base + next) as u32));
    }

    let mut nodes: Vec<ConceptNode> = Vec::with_capacity(node_count);
    let mut edge_count = 0u64;
    let mut push_node = |page_id: u64, kind: ConceptKind, parents: Option<&Vec<u64>>| {
        let mut mapped: Vec<ConceptId> = parents
            .map(|v| v.iter().map(|p| id_of[p]).collect())
            .unwrap_or_default();
        mapped.sort_unstable();
        mapped.dedup();
        edge_count += mapped.len() as u64;
        nodes.push(ConceptNode {
            id: id_of[&page_id],
            title: raw.pages[&page_id].title.clone(),
            kind,
            parents: mapped,
        });
    };

    push_node(root_page, ConceptKind::Category, None);
    for (_, page_id) in &category_order {
        push_node(*page_id, ConceptKind::Category, category_parents.get(page_id));
    }
    for (_, page_id) in &leaf_order {
        push_node(*page_id, ConceptKind::Leaf, leaf_parents.get(page_id));
    }

    let mut title_index = HashMap::with_capacity(nodes.len());
    for node in &nodes {
        title_index
            .entry((node.kind, node.title.clone()))
            .or_insert(node.id);
    }

    Ok(ConceptOntology {
        nodes,
        root: ConceptId(0),
        edge_count,
        title_index,
    })
}

const FORMAT_VERSION: &str = "1";

/// Persist the ontology as `meta.tsv`, `nodes.tsv`, `edges.tsv` in `dir`.
/// Output is byte-deterministic for equal ontologies.
pub fn save_ontology(ontology: &ConceptOntology, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(format!("create {}", dir.display()), e))?;

    let write_file = |name: &str, body: &dyn Fn(&mut BufWriter<fs::File>) -> std::io::Result<()>| {
        let path = dir.join(name);
        let file =
            fs::File::create(&path).map_err(|e| Error::io(format!("create {}", path.display()), e))?;
        let mut writer = BufWriter::new(file);
        body(&mut writer).map_err(|e| Error::io(format!("write {}", path.display()), e))?;
        writer
            .flush()
            .map_err(|e| Error::io(format!("write {}", path.display()), e))
    };

    write_file("meta.tsv", &|w| {
        writeln!(w, "version\t{}\troot_id\t{}", FORMAT_VERSION, ontology.root.0)
    })?;
    write_file("nodes.tsv", &|w| {
        for node in &ontology.nodes {
            writeln!(w, "{}\t{}\t{}", node.id.0, node.kind, node.title)?;
        }
        Ok(())
    })?;
    write_file("edges.tsv", &|w| {
        for node in &ontology.nodes {
            for parent in &node.parents {
                writeln!(w, "{}\t{}", node.id.0, parent.0)?;
            }
        }
        Ok(())
    })?;
    Ok(())
}

/// Load an ontology saved by [`save_ontology`]. A version-tag mismatch is a
/// fatal "incompatible ontology file" error.
pub fn load_ontology(dir: &Path) -> Result<ConceptOntology> {
    let meta_path = dir.join("meta.tsv");
    let meta = fs::read_to_string(&meta_path)
        .map_err(|e| Error::io(format!("read {}", meta_path.display()), e))?;
    let meta_fields: Vec<&str> = meta.trim_end().split('\t').collect();
    if meta_fields.len() != 4 || meta_fields[0] != "version" || meta_fields[2] != "root_id" {
        return Err(Error::IncompatibleOntology {
            reason: format!("malformed meta.tsv in {}", dir.display()),
        });
    }
    if meta_fields[1] != FORMAT_VERSION {
        return Err(Error::IncompatibleOntology {
            reason: format!(
                "version {} found, expected {}",
                meta_fields[1], FORMAT_VERSION
            ),
        });
    }
    let root_value: u32 = meta_fields[3].parse().map_err(|_| Error::IncompatibleOntology {
        reason: format!("bad root id {:?}", meta_fields[3]),
    })?;
    if root_value != 0 {
        return Err(Error::IncompatibleOntology {
            reason: format!("root id must be 0, found {root_value}"),
        });
    }

    let nodes_path = dir.join("nodes.tsv");
    let file = fs::File::open(&nodes_path)
        .map_err(|e| Error::io(format!("read {}", nodes_path.display()), e))?;
    let mut parsed: Vec<(u32, ConceptKind, String)> = Vec::new();
    for (line_no, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|source| Error::Read {
            line: line_no + 1,
            source,
        })?;
        let fields: Vec<&str> = line.split('\t').collect();
        let bad = |what: &str| Error::Format(format!("nodes.tsv line {}: {what}", line_no + 1));
        if fields.len() != 3 {
            return Err(bad("expected 3 fields"));
        }
        let id: u32 = fields[0].parse().map_err(|_| bad("bad id"))?;
        let kind: ConceptKind = fields[1].parse().map_err(|()| bad("bad kind"))?;
        let title = fields[2].to_string();
        if title.is_empty() {
            return Err(bad("empty title"));
        }
        parsed.push((id, kind, title));
    }

    let node_count = parsed.len();
    let mut slots: Vec<Option<ConceptNode>> = vec![None; node_count];
    for (id, kind, title) in parsed {
        let index = id as usize;
        if index >= node_count {
            return Err(Error::Format(format!(
                "nodes.tsv: id {id} out of range for {node_count} nodes"
            )));
        }
        if slots[index].is_some() {
            return Err(Error::Format(format!("nodes.tsv: duplicate id {id}")));
        }
        slots[index] = Some(ConceptNode {
            id: ConceptId(id),
            title,
            kind,
            parents: Vec::new(),
        });
    }
    let mut nodes: Vec<ConceptNode> = Vec::with_capacity(node_count);
    for (index, slot) in slots.into_iter().enumerate() {
        nodes.push(slot.ok_or_else(|| {
            Error::Format(format!("nodes.tsv: id {index} missing from dense range"))
        })?);
    }
    if nodes.is_empty() {
        return Err(Error::Format("nodes.tsv: no nodes".to_string()));
    }
    if nodes[0].kind != ConceptKind::Category {
        return Err(Error::Format("root node must be a category".to_string()));
    }

    let edges_path = dir.join("edges.tsv");
    let file = fs::File::open(&edges_path)
        .map_err(|e| Error::io(format!("read {}", edges_path.display()), e))?;
    for (line_no, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|source| Error::Read {
            line: line_no + 1,
            source,
        })?;
        let bad = |what: &str| Error::Format(format!("edges.tsv line {}: {what}", line_no + 1));
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 {
            return Err(bad("expected 2 fields"));
        }
        let child: u32 = fields[0].parse().map_err(|_| bad("bad child id"))?;
        let parent: u32 = fields[1].parse().map_err(|_| bad("bad parent id"))?;
        if child as usize >= node_count || parent as usize >= node_count {
            return Err(bad("edge endpoint out of range"));
        }
        if nodes[parent as usize].kind != ConceptKind::Category {
            return Err(bad("edge parent is not a category"));
        }
        if child == 0 {
            return Err(bad("root must have no parents"));
        }
        nodes[child as usize].parents.push(ConceptId(parent));
    }

    let mut edge_count = 0u64;
    for node in &mut nodes {
        node.parents.sort_unstable();
        node.parents.dedup();
        edge_count += node.parents.len() as u64;
    }

    let mut title_index = HashMap::with_capacity(nodes.len());
    for node in &nodes {
        title_index
            .entry((node.kind, node.title.clone()))
            .or_insert(node.id);
    }

    Ok(ConceptOntology {
        nodes,
        root: ConceptId(0),
        edge_count,
        title_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{build_raw_graph, CategoryLinkRecord, PageRecord};
    use proptest::prelude::*;

    pub(crate) fn page(id: u64, namespace: Namespace, title: &str) -> PageRecord {
        PageRecord {
            page_id: id,
            namespace,
            title: title.to_string(),
        }
    }

    pub(crate) fn link(child: &str, kind: Namespace, parent: &str) -> CategoryLinkRecord {
        CategoryLinkRecord {
            child_title: child.to_string(),
            child_kind: kind,
            parent_category_title: parent.to_string(),
        }
    }

    /// root <- A <- L (leaf); plus a diamond L2 -> {A, B}, A -> C, B -> C
    /// hanging off the root.
    fn diamond_fixture() -> ConceptOntology {
        let pages = vec![
            page(1, Namespace::Category, "Root"),
            page(2, Namespace::Category, "A"),
            page(3, Namespace::Category, "B"),
            page(4, Namespace::Category, "C"),
            page(5, Namespace::Article, "L"),
            page(6, Namespace::Article, "L2"),
        ];
        let links = vec![
            link("C", Namespace::Category, "Root"),
            link("A", Namespace::Category, "C"),
            link("B", Namespace::Category, "C"),
            link("L", Namespace::Article, "A"),
            link("L2", Namespace::Article, "A"),
            link("L2", Namespace::Article, "B"),
        ];
        let (raw, _) = build_raw_graph(pages, &links);
        distill(&raw, &FilterRules::default(), "Root").unwrap()
    }

    fn id_by_title(o: &ConceptOntology, title: &str) -> ConceptId {
        o.nodes()
            .find(|n| n.title == title)
            .map(|n| n.id)
            .unwrap_or_else(|| panic!("no node titled {title}"))
    }

    #[test]
    fn distill_assigns_dense_sorted_ids() {
        let o = diamond_fixture();
        // Root first, then categories in title order, then leaves.
        let titles: Vec<&str> = o.nodes().map(|n| n.title.as_str()).collect();
        assert_eq!(titles, vec!["Root", "A", "B", "C", "L", "L2"]);
        assert_eq!(o.root(), ConceptId(0));
        assert_eq!(o.edge_count(), 6);
    }

    #[test]
    fn ancestors_two_hop_chain() {
        let o = diamond_fixture();
        let leaf = id_by_title(&o, "L");
        let a = id_by_title(&o, "A");
        let c = id_by_title(&o, "C");
        let root = o.root();
        let ancestors = o.ancestors(leaf, None).unwrap();
        assert_eq!(ancestors, BTreeSet::from([a, c, root]));
        // Depth cutoff.
        let one_hop = o.ancestors(leaf, Some(1)).unwrap();
        assert_eq!(one_hop, BTreeSet::from([a]));
    }

    #[test]
    fn ancestors_diamond_dedupes_shared_ancestor() {
        let o = diamond_fixture();
        let l2 = id_by_title(&o, "L2");
        let expected = BTreeSet::from([
            id_by_title(&o, "A"),
            id_by_title(&o, "B"),
            id_by_title(&o, "C"),
            o.root(),
        ]);
        assert_eq!(o.ancestors(l2, None).unwrap(), expected);
    }

    #[test]
    fn ancestors_rejects_invalid_id() {
        let o = diamond_fixture();
        assert!(o.ancestors(ConceptId(999), None).is_err());
    }

    #[test]
    fn ancestors_terminates_on_cycles() {
        // A 3-cycle of categories below the root.
        let pages = vec![
            page(1, Namespace::Category, "Root"),
            page(2, Namespace::Category, "A"),
            page(3, Namespace::Category, "B"),
            page(4, Namespace::Category, "C"),
        ];
        let links = vec![
            link("A", Namespace::Category, "Root"),
            link("A", Namespace::Category, "C"),
            link("B", Namespace::Category, "A"),
            link("C", Namespace::Category, "B"),
        ];
        let (raw, _) = build_raw_graph(pages, &links);
        let o = distill(&raw, &FilterRules::default(), "Root").unwrap();
        let a = id_by_title(&o, "A");
        let ancestors = o.ancestors(a, None).unwrap();
        // Each cycle member once, excluding A itself.
        assert_eq!(
            ancestors,
            BTreeSet::from([id_by_title(&o, "B"), id_by_title(&o, "C"), o.root()])
        );
    }

    #[test]
    fn induced_tree_unions_without_duplicates() {
        let o = diamond_fixture();
        let l = id_by_title(&o, "L");
        let l2 = id_by_title(&o, "L2");
        let tree = o
            .induced_concept_tree(&BTreeSet::from([l, l2]), None)
            .unwrap();
        let expected: BTreeSet<ConceptId> = [
            l,
            l2,
            id_by_title(&o, "A"),
            id_by_title(&o, "B"),
            id_by_title(&o, "C"),
            o.root(),
        ]
        .into_iter()
        .collect();
        assert_eq!(tree.concepts, expected);
        // Empty input, empty tree.
        let empty = o.induced_concept_tree(&BTreeSet::new(), None).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn filter_removes_categories_and_orphans() {
        let pages = vec![
            page(1, Namespace::Category, "Root"),
            page(2, Namespace::Category, "1880 deaths"),
            page(3, Namespace::Category, "Articles to be split"),
            page(4, Namespace::Category, "Health"),
            page(5, Namespace::Article, "John Doe"),
            page(6, Namespace::Article, "Health care"),
        ];
        let links = vec![
            link("1880 deaths", Namespace::Category, "Root"),
            link("Articles to be split", Namespace::Category, "Root"),
            link("Health", Namespace::Category, "Root"),
            link("John Doe", Namespace::Article, "1880 deaths"),
            link("Health care", Namespace::Article, "Health"),
        ];
        let (raw, _) = build_raw_graph(pages, &links);
        let o = distill(&raw, &FilterRules::default(), "Root").unwrap();
        let titles: Vec<&str> = o.nodes().map(|n| n.title.as_str()).collect();
        assert_eq!(titles, vec!["Root", "Health", "Health care"]);
    }

    #[test]
    fn unreachable_category_is_pruned() {
        let pages = vec![
            page(1, Namespace::Category, "Root"),
            page(2, Namespace::Category, "Orphan topic"),
            page(3, Namespace::Article, "Orphan article"),
        ];
        let links = vec![link("Orphan article", Namespace::Article, "Orphan topic")];
        let (raw, _) = build_raw_graph(pages, &links);
        let o = distill(&raw, &FilterRules::default(), "Root").unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o.stats().leaf_count, 0);
    }

    #[test]
    fn missing_root_is_fatal() {
        let pages = vec![page(1, Namespace::Category, "Something")];
        let (raw, _) = build_raw_graph(pages, &[]);
        let err = distill(&raw, &FilterRules::default(), "Root").unwrap_err();
        assert!(err.to_string().contains("root not found"));
    }

    #[test]
    fn stats_mean_parents_per_leaf() {
        let o = diamond_fixture();
        let stats = o.stats();
        assert_eq!(stats.category_count, 4);
        assert_eq!(stats.leaf_count, 2);
        // L has 1 parent, L2 has 2.
        assert!((stats.mean_categories_per_leaf - 1.5).abs() < 1e-12);
    }

    #[test]
    fn stats_mean_over_two_and_three_parents() {
        let pages = vec![
            page(1, Namespace::Category, "Root"),
            page(2, Namespace::Category, "A"),
            page(3, Namespace::Category, "B"),
            page(4, Namespace::Category, "C"),
            page(5, Namespace::Article, "L1"),
            page(6, Namespace::Article, "L2"),
        ];
        let links = vec![
            link("A", Namespace::Category, "Root"),
            link("B", Namespace::Category, "Root"),
            link("C", Namespace::Category, "Root"),
            link("L1", Namespace::Article, "A"),
            link("L1", Namespace::Article, "B"),
            link("L2", Namespace::Article, "A"),
            link("L2", Namespace::Article, "B"),
            link("L2", Namespace::Article, "C"),
        ];
        let (raw, _) = build_raw_graph(pages, &links);
        let o = distill(&raw, &FilterRules::default(), "Root").unwrap();
        // (2 + 3) / 2 parents per leaf.
        assert!((o.stats().mean_categories_per_leaf - 2.5).abs() < 1e-12);
    }

    #[test]
    fn stats_empty_ontology_mean_is_zero() {
        let pages = vec![page(1, Namespace::Category, "Root")];
        let (raw, _) = build_raw_graph(pages, &[]);
        let o = distill(&raw, &FilterRules::default(), "Root").unwrap();
        let stats = o.stats();
        assert_eq!(stats.leaf_count, 0);
        assert_eq!(stats.mean_categories_per_leaf, 0.0);
    }

    #[test]
    fn save_load_round_trip() {
        let o = diamond_fixture();
        let dir = tempfile::tempdir().unwrap();
        save_ontology(&o, dir.path()).unwrap();
        let loaded = load_ontology(dir.path()).unwrap();
        assert_eq!(o, loaded);
    }

    #[test]
    fn load_rejects_version_mismatch() {
        let o = diamond_fixture();
        let dir = tempfile::tempdir().unwrap();
        save_ontology(&o, dir.path()).unwrap();
        fs::write(dir.path().join("meta.tsv"), "version\t2\troot_id\t0\n").unwrap();
        let err = load_ontology(dir.path()).unwrap_err();
        assert!(err.to_string().contains("incompatible ontology file"));
    }

    #[test]
    fn load_rejects_missing_nodes_file() {
        let o = diamond_fixture();
        let dir = tempfile::tempdir().unwrap();
        save_ontology(&o, dir.path()).unwrap();
        fs::remove_file(dir.path().join("nodes.tsv")).unwrap();
        assert!(load_ontology(dir.path()).is_err());
    }

    #[test]
    fn load_hand_written_directory() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("meta.tsv"), "version\t1\troot_id\t0\n").unwrap();
        fs::write(
            dir.path().join("nodes.tsv"),
            "0\tcategory\tRoot\n1\tcategory\tTopic\n2\tleaf\tThing\n",
        )
        .unwrap();
        fs::write(dir.path().join("edges.tsv"), "1\t0\n2\t1\n").unwrap();
        let o = load_ontology(dir.path()).unwrap();
        assert_eq!(o.len(), 3);
        assert_eq!(o.edge_count(), 2);
        assert_eq!(o.lookup(ConceptKind::Leaf, "Thing"), Some(ConceptId(2)));
        assert_eq!(
            o.ancestors(ConceptId(2), None).unwrap(),
            BTreeSet::from([ConceptId(0), ConceptId(1)])
        );
    }

    #[test]
    fn every_survivor_reaches_root() {
        let o = diamond_fixture();
        for node in o.nodes() {
            if node.id == o.root() {
                continue;
            }
            let ancestors = o.ancestors(node.id, None).unwrap();
            assert!(
                ancestors.contains(&o.root()),
                "{} cannot reach the root",
                node.title
            );
        }
    }

    /// Random category DAG-ish graphs: distilled output keeps the
    /// reachability invariant and ancestor monotonicity in depth.
    fn arbitrary_raw_graph() -> impl Strategy<Value = RawGraph> {
        // Up to 12 categories (besides the root) and 8 articles, random edges.
        (
            prop::collection::vec((0usize..13, 0usize..13), 0..40),
            prop::collection::vec((0usize..8, 0usize..13), 0..20),
        )
            .prop_map(|(cat_edges, art_edges)| {
                let mut pages = vec![page(1, Namespace::Category, "Root")];
                for i in 0..13u64 {
                    pages.push(page(2 + i, Namespace::Category, &format!("Cat {i:02}")));
                }
                for i in 0..8u64 {
                    pages.push(page(20 + i, Namespace::Article, &format!("Art {i:02}")));
                }
                let cat_title = |i: usize| {
                    if i == 0 {
                        "Root".to_string()
                    } else {
                        format!("Cat {:02}", i - 1)
                    }
                };
                let mut links = Vec::new();
                // Anchor a spine so part of the graph is reachable.
                links.push(link("Cat 00", Namespace::Category, "Root"));
                for (child, parent) in cat_edges {
                    if child != parent {
                        links.push(link(
                            &cat_title(child),
                            Namespace::Category,
                            &cat_title(parent),
                        ));
                    }
                }
                for (art, parent) in art_edges {
                    links.push(link(
                        &format!("Art {art:02}"),
                        Namespace::Article,
                        &cat_title(parent),
                    ));
                }
                build_raw_graph(pages, &links).0
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn distill_reachability_and_monotone_depth(raw in arbitrary_raw_graph()) {
            let o = distill(&raw, &FilterRules::default(), "Root").unwrap();
            for node in o.nodes() {
                if node.id != o.root() {
                    let ancestors = o.ancestors(node.id, None).unwrap();
                    prop_assert!(ancestors.contains(&o.root()));
                }
                // Monotone in max_depth.
                let mut previous = BTreeSet::new();
                for depth in 0..5 {
                    let current = o.ancestors(node.id, Some(depth)).unwrap();
                    prop_assert!(previous.is_subset(&current));
                    previous = current;
                }
                prop_assert!(previous.is_subset(&o.ancestors(node.id, None).unwrap()));
            }
        }

        #[test]
        fn save_load_identity(raw in arbitrary_raw_graph()) {
            let o = distill(&raw, &FilterRules::default(), "Root").unwrap();
            let dir = tempfile::tempdir().unwrap();
            save_ontology(&o, dir.path()).unwrap();
            let loaded = load_ontology(dir.path()).unwrap();
            prop_assert_eq!(o, loaded);
        }
    }
}
