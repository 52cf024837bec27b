//! Parsing of raw page and category-link records, plus the title-based
//! category filter that removes maintenance, tracking, chronological and
//! list-like pages downstream.
//!
//! The canonical ingestion format is plain TSV (see `pages.tsv` /
//! `catlinks.tsv` in the crate docs); converting MediaWiki SQL dumps into
//! that shape is out of scope here.

use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

/// Built-in filter rule table, shipped verbatim so users can audit and
/// override it.
pub const DEFAULT_RULES_TSV: &str = include_str!("default_rules.tsv");

const MONTHS: [&str; 12] = [
    "january",
    "february",
    "march",
    "april",
    "may",
    "june",
    "july",
    "august",
    "september",
    "october",
    "november",
    "december",
];

const YEAR_SUFFIXES: [&str; 4] = ["births", "deaths", "establishments", "disestablishments"];

/// Page namespace of a raw record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Namespace {
    Article,
    Category,
}

impl fmt::Display for Namespace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Namespace::Article => write!(f, "article"),
            Namespace::Category => write!(f, "category"),
        }
    }
}

impl FromStr for Namespace {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "article" => Ok(Namespace::Article),
            "category" => Ok(Namespace::Category),
            _ => Err(()),
        }
    }
}

/// One page (article or category) from the raw dump.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageRecord {
    pub page_id: u64,
    pub namespace: Namespace,
    pub title: String,
}

/// One fine-to-coarse membership link from the raw dump.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryLinkRecord {
    pub child_title: String,
    pub child_kind: Namespace,
    pub parent_category_title: String,
}

/// Classification of a category title by the filter rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CategoryClass {
    Topical,
    Maintenance,
    Tracking,
    Chronological,
    ListLike,
}

impl fmt::Display for CategoryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CategoryClass::Topical => "topical",
            CategoryClass::Maintenance => "maintenance",
            CategoryClass::Tracking => "tracking",
            CategoryClass::Chronological => "chronological",
            CategoryClass::ListLike => "list_like",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RuleKind {
    Prefix,
    Contains,
    YearPattern,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum YearVariant {
    YearStart,
    MonthYear,
    YearSuffix,
    Any,
}

/// A single ordered filter rule.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterRule {
    class: CategoryClass,
    kind: RuleKind,
    pattern: String,
    /// Pre-folded pattern for case-insensitive contains rules.
    folded: String,
    case_sensitive: bool,
    year_variant: Option<YearVariant>,
}

/// Ordered, user-overridable rule table classifying category titles.
///
/// Evaluation is top-to-bottom, first match wins, no match means topical.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterRules {
    rules: Vec<FilterRule>,
}

impl Default for FilterRules {
    fn default() -> Self {
        FilterRules::parse(DEFAULT_RULES_TSV.as_bytes())
            .expect("built-in rule table must parse")
    }
}

impl FilterRules {
    /// The shipped default rule table as config text.
    pub fn default_config_text() -> &'static str {
        DEFAULT_RULES_TSV
    }

    /// Parse a rule table from config text. Blank lines and lines starting
    /// with `#` are ignored.
    pub fn parse<R: BufRead>(reader: R) -> Result<FilterRules> {
        let mut rules = Vec::new();
        for (line_no, line) in reader.lines().enumerate() {
            let line_no = line_no + 1;
            let line = line.map_err(|source| Error::Read {
                line: line_no,
                source,
            })?;
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(Error::Format(format!(
                    "filter rule line {line_no}: expected 3 tab-separated fields, got {}",
                    fields.len()
                )));
            }
            let class = match fields[0] {
                "maintenance" => CategoryClass::Maintenance,
                "tracking" => CategoryClass::Tracking,
                "chronological" => CategoryClass::Chronological,
                "list_like" => CategoryClass::ListLike,
                other => {
                    return Err(Error::Format(format!(
                        "filter rule line {line_no}: unknown class {other:?}"
                    )))
                }
            };
            let kind = match fields[1] {
                "prefix" => RuleKind::Prefix,
                "contains" => RuleKind::Contains,
                "year-pattern" => RuleKind::YearPattern,
                other => {
                    return Err(Error::Format(format!(
                        "filter rule line {line_no}: unknown rule kind {other:?}"
                    )))
                }
            };
            let pattern = fields[2].to_string();
            if pattern.is_empty() {
                return Err(Error::Format(format!(
                    "filter rule line {line_no}: empty pattern"
                )));
            }
            let year_variant = if kind == RuleKind::YearPattern {
                Some(match pattern.as_str() {
                    "year-start" => YearVariant::YearStart,
                    "month-year" => YearVariant::MonthYear,
                    "year-suffix" => YearVariant::YearSuffix,
                    "any" => YearVariant::Any,
                    other => {
                        return Err(Error::Format(format!(
                            "filter rule line {line_no}: unknown year-pattern variant {other:?}"
                        )))
                    }
                })
            } else {
                None
            };
            let case_sensitive = pattern.chars().any(|c| c.is_uppercase());
            let folded = if case_sensitive {
                pattern.clone()
            } else {
                pattern.to_lowercase()
            };
            rules.push(FilterRule {
                class,
                kind,
                pattern,
                folded,
                case_sensitive,
                year_variant,
            });
        }
        Ok(FilterRules { rules })
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Classify a category title. Total and deterministic: the first rule
    /// that matches wins, no match means topical.
    pub fn classify(&self, title: &str) -> CategoryClass {
        let lower = title.to_lowercase();
        for rule in &self.rules {
            let matched = match rule.kind {
                RuleKind::Prefix => title.starts_with(&rule.pattern),
                RuleKind::Contains => {
                    let hay = if rule.case_sensitive { title } else { &lower };
                    contains_at_word_start(hay, &rule.folded)
                }
                RuleKind::YearPattern => {
                    year_pattern_matches(title, rule.year_variant.unwrap_or(YearVariant::Any))
                }
            };
            if matched {
                return rule.class;
            }
        }
        CategoryClass::Topical
    }
}

/// Substring match anchored at a word start; caller handles case folding.
fn contains_at_word_start(hay: &str, needle: &str) -> bool {
    let mut from = 0;
    while let Some(pos) = hay[from..].find(needle) {
        let abs = from + pos;
        let at_word_start = hay[..abs]
            .chars()
            .next_back()
            .is_none_or(|c| !c.is_alphanumeric());
        if at_word_start {
            return true;
        }
        from = abs + needle.len();
    }
    false
}

/// A 3-4 digit year, optionally a decade form ("1880", "1990s").
fn is_year_token(token: &str) -> bool {
    let digits = token.strip_suffix('s').unwrap_or(token);
    (3..=4).contains(&digits.len()) && digits.bytes().all(|b| b.is_ascii_digit())
}

fn year_pattern_matches(title: &str, variant: YearVariant) -> bool {
    let tokens: Vec<&str> = title.split_whitespace().collect();
    let year_start = || tokens.first().is_some_and(|t| is_year_token(t));
    let month_year = || {
        tokens.windows(2).any(|w| {
            MONTHS.contains(&w[0].to_lowercase().as_str()) && is_year_token(w[1])
        })
    };
    let year_suffix = || {
        tokens.windows(2).any(|w| {
            is_year_token(w[0]) && YEAR_SUFFIXES.contains(&w[1].to_lowercase().as_str())
        })
    };
    match variant {
        YearVariant::YearStart => year_start(),
        YearVariant::MonthYear => month_year(),
        YearVariant::YearSuffix => year_suffix(),
        YearVariant::Any => year_start() || month_year() || year_suffix(),
    }
}

/// Canonical title normalization, applied once at ingestion: underscores to
/// spaces, whitespace collapse, NFC. Already-canonical ASCII titles take a
/// copy-only fast path; at dump scale most titles do.
pub fn normalize_title(raw: &str) -> String {
    let canonical_ascii = raw.is_ascii()
        && !raw.contains('_')
        && !raw.contains("  ")
        && !raw.starts_with(' ')
        && !raw.ends_with(' ')
        && !raw.bytes().any(|b| b.is_ascii_whitespace() && b != b' ');
    if canonical_ascii {
        return raw.to_string();
    }
    let replaced = raw.replace('_', " ");
    let collapsed = replaced.split_whitespace().collect::<Vec<_>>().join(" ");
    collapsed.nfc().collect()
}

/// Per-file line counters. `parsed + malformed` equals the number of
/// non-blank input lines.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseStats {
    pub parsed: u64,
    pub malformed: u64,
    pub blank: u64,
}

/// Parse `pages.tsv`: one record per line, `page_id<TAB>namespace<TAB>title`.
///
/// Malformed lines are counted and skipped; a stream read failure is fatal
/// and carries the line number.
pub fn parse_page_records<R: BufRead>(reader: R) -> Result<(Vec<PageRecord>, ParseStats)> {
    let mut records = Vec::new();
    let mut stats = ParseStats::default();
    for (line_no, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| Error::Read {
            line: line_no + 1,
            source,
        })?;
        if line.trim().is_empty() {
            stats.blank += 1;
            continue;
        }
        match parse_page_line(&line) {
            Some(record) => {
                records.push(record);
                stats.parsed += 1;
            }
            None => stats.malformed += 1,
        }
    }
    Ok((records, stats))
}

fn parse_page_line(line: &str) -> Option<PageRecord> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 3 {
        return None;
    }
    let page_id: u64 = fields[0].parse().ok().filter(|&id| id > 0)?;
    let namespace: Namespace = fields[1].parse().ok()?;
    let title = normalize_title(fields[2]);
    if title.is_empty() {
        return None;
    }
    Some(PageRecord {
        page_id,
        namespace,
        title,
    })
}

/// Parse `catlinks.tsv`: one link per line,
/// `child_title<TAB>child_kind<TAB>parent_category_title`.
///
/// Duplicate links are preserved here; deduplication happens in
/// [`build_raw_graph`].
pub fn parse_category_links<R: BufRead>(
    reader: R,
) -> Result<(Vec<CategoryLinkRecord>, ParseStats)> {
    let mut links = Vec::new();
    let mut stats = ParseStats::default();
    for (line_no, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| Error::Read {
            line: line_no + 1,
            source,
        })?;
        if line.trim().is_empty() {
            stats.blank += 1;
            continue;
        }
        match parse_link_line(&line) {
            Some(link) => {
                links.push(link);
                stats.parsed += 1;
            }
            None => stats.malformed += 1,
        }
    }
    Ok((links, stats))
}

fn parse_link_line(line: &str) -> Option<CategoryLinkRecord> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 3 {
        return None;
    }
    let child_title = normalize_title(fields[0]);
    let child_kind: Namespace = fields[1].parse().ok()?;
    let parent_category_title = normalize_title(fields[2]);
    if child_title.is_empty() || parent_category_title.is_empty() {
        return None;
    }
    Some(CategoryLinkRecord {
        child_title,
        child_kind,
        parent_category_title,
    })
}

/// Counters from raw-graph assembly.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    /// Links whose endpoints are absent from the page set.
    pub dangling_links: u64,
    /// Links collapsed by deduplication.
    pub duplicate_edges: u64,
    /// Pages dropped because their id was already taken.
    pub duplicate_page_ids: u64,
    /// Pages sharing a (namespace, title) key; the smallest page id wins.
    pub title_collisions: u64,
}

/// Map from (namespace, normalized title) to page id, split per namespace so
/// lookups can borrow `&str` keys instead of building owned tuples.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TitleIndex {
    article: HashMap<String, u64>,
    category: HashMap<String, u64>,
}

impl TitleIndex {
    fn map(&self, namespace: Namespace) -> &HashMap<String, u64> {
        match namespace {
            Namespace::Article => &self.article,
            Namespace::Category => &self.category,
        }
    }

    pub fn get(&self, namespace: Namespace, title: &str) -> Option<u64> {
        self.map(namespace).get(title).copied()
    }

    pub fn len(&self) -> usize {
        self.article.len() + self.category.len()
    }

    pub fn is_empty(&self) -> bool {
        self.article.is_empty() && self.category.is_empty()
    }
}

/// Pre-distillation container: pages, resolved fine-to-coarse edges, and a
/// title lookup.
#[derive(Debug, Clone, PartialEq)]
pub struct RawGraph {
    pub pages: HashMap<u64, PageRecord>,
    /// (child page id, parent page id), deduplicated and sorted.
    pub edges: Vec<(u64, u64)>,
    pub title_index: TitleIndex,
}

/// Resolve links from titles to page ids and collapse duplicates. Links with
/// an unresolved endpoint are dropped and counted.
pub fn build_raw_graph(
    pages: Vec<PageRecord>,
    links: &[CategoryLinkRecord],
) -> (RawGraph, BuildStats) {
    let mut stats = BuildStats::default();
    let mut page_map: HashMap<u64, PageRecord> = HashMap::with_capacity(pages.len());
    let mut title_index = TitleIndex::default();

    for page in pages {
        let id = page.page_id;
        if page_map.contains_key(&id) {
            stats.duplicate_page_ids += 1;
            continue;
        }
        let slot = match page.namespace {
            Namespace::Article => &mut title_index.article,
            Namespace::Category => &mut title_index.category,
        };
        match slot.get_mut(&page.title) {
            // Smallest page id wins so the outcome is input-order independent.
            Some(existing) => {
                stats.title_collisions += 1;
                if id < *existing {
                    *existing = id;
                }
            }
            None => {
                slot.insert(page.title.clone(), id);
            }
        }
        page_map.insert(id, page);
    }

    let mut edges: Vec<(u64, u64)> = Vec::with_capacity(links.len());
    for link in links {
        let child = title_index.get(link.child_kind, &link.child_title);
        let parent = title_index.get(Namespace::Category, &link.parent_category_title);
        match (child, parent) {
            (Some(c), Some(p)) => edges.push((c, p)),
            _ => stats.dangling_links += 1,
        }
    }
    edges.sort_unstable();
    let before = edges.len();
    edges.dedup();
    stats.duplicate_edges = (before - edges.len()) as u64;

    let graph = RawGraph {
        pages: page_map,
        edges,
        title_index,
    };
    (graph, stats)
}
