//! Keyword normalization and per-record keyword sets.
//!
//! A raw keyword string is folded into a [`CanonicalKeyword`]: lowercased,
//! trimmed, internal whitespace collapsed, typographic dashes unified. The
//! canonical text is the lookup key everywhere; the first-seen surface form
//! is kept alongside for display. Variant merging ("agent-based model" vs
//! "ABM") is opt-in via a [`SynonymMap`]; no stemming or plural folding is
//! applied, so "network" and "networks" stay distinct unless mapped.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::io::Read;

use crate::wos::ArticleRecord;
use crate::{Error, Result};

/// Which keyword field of a record an analysis reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    /// Author-supplied keywords (DE field).
    Author,
    /// Database-generated index terms (ID field).
    Plus,
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Author => f.write_str("author"),
            FieldKind::Plus => f.write_str("plus"),
        }
    }
}

/// A normalized keyword with its first-seen display form.
///
/// Equality, ordering, and hashing use only the canonical text, so sets and
/// maps merge surface variants that normalize identically.
#[derive(Debug, Clone)]
pub struct CanonicalKeyword {
    canonical: String,
    display: String,
}

impl CanonicalKeyword {
    /// Normalized lookup key: lowercase, trimmed, single-spaced.
    pub fn canonical(&self) -> &str {
        &self.canonical
    }

    /// Surface form preserved for labels and reports.
    pub fn display(&self) -> &str {
        &self.display
    }
}

impl PartialEq for CanonicalKeyword {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for CanonicalKeyword {}

impl PartialOrd for CanonicalKeyword {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalKeyword {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical.cmp(&other.canonical)
    }
}

impl Hash for CanonicalKeyword {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical.hash(state);
    }
}

impl fmt::Display for CanonicalKeyword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical)
    }
}

/// Opt-in alias table mapping canonical alias text to a preferred canonical
/// form. The table is flat: no alias maps to another alias, so one
/// application reaches a fixed point.
#[derive(Debug, Clone, Default)]
pub struct SynonymMap {
    map: BTreeMap<String, String>,
}

impl SynonymMap {
    /// An empty map; normalization with it is the identity fold.
    pub fn empty() -> Self {
        SynonymMap::default()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    /// Build from `(alias, preferred)` pairs. Both sides are folded to
    /// canonical text first. Rejects empty entries, conflicting duplicate
    /// aliases, and alias chains (an alias whose target is itself an alias
    /// of something else).
    pub fn from_pairs<I, A, B>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut map = BTreeMap::new();
        for (alias, preferred) in pairs {
            let alias = fold_text(alias.as_ref());
            let preferred = fold_text(preferred.as_ref());
            if alias.is_empty() || preferred.is_empty() {
                return Err(Error::Config(
                    "synonym entries must have non-empty alias and preferred forms".into(),
                ));
            }
            if alias == preferred {
                continue;
            }
            if let Some(existing) = map.get(&alias) {
                if existing != &preferred {
                    return Err(Error::Config(format!(
                        "alias \"{alias}\" maps to both \"{existing}\" and \"{preferred}\""
                    )));
                }
                continue;
            }
            map.insert(alias, preferred);
        }
        for preferred in map.values() {
            if let Some(next) = map.get(preferred) {
                return Err(Error::Config(format!(
                    "alias chain: \"{preferred}\" is itself an alias of \"{next}\""
                )));
            }
        }
        Ok(SynonymMap { map })
    }

    /// Read a two-column CSV `alias,preferred` with a required header row.
    pub fn from_csv_reader<R: Read>(reader: R, file: &str) -> Result<Self> {
        let mut csv = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
        let headers = csv.headers().map_err(|e| Error::InvalidInput {
            file: file.to_string(),
            message: e.to_string(),
        })?;
        expect_headers(headers, &["alias", "preferred"], file)?;
        let mut pairs = Vec::new();
        for row in csv.records() {
            let row = row.map_err(|e| Error::InvalidInput {
                file: file.to_string(),
                message: e.to_string(),
            })?;
            if row.len() != 2 {
                return Err(Error::InvalidInput {
                    file: file.to_string(),
                    message: format!("expected 2 columns, found {}", row.len()),
                });
            }
            pairs.push((row[0].to_string(), row[1].to_string()));
        }
        SynonymMap::from_pairs(pairs)
    }

    /// Preferred canonical form for `canonical`, if an alias entry exists.
    pub fn resolve(&self, canonical: &str) -> Option<&str> {
        self.map.get(canonical).map(String::as_str)
    }
}

pub(crate) fn expect_headers(headers: &csv::StringRecord, want: &[&str], file: &str) -> Result<()> {
    let got: Vec<String> = headers.iter().map(|h| h.trim().to_lowercase()).collect();
    if got != want {
        return Err(Error::InvalidInput {
            file: file.to_string(),
            message: format!("expected header \"{}\", found \"{}\"", want.join(","), got.join(",")),
        });
    }
    Ok(())
}

fn unify_dashes(c: char) -> char {
    match c {
        // hyphen, non-breaking hyphen, figure dash, en dash, em dash,
        // horizontal bar, minus sign
        '\u{2010}' | '\u{2011}' | '\u{2012}' | '\u{2013}' | '\u{2014}' | '\u{2015}'
        | '\u{2212}' => '-',
        c => c,
    }
}

/// Fold raw text to canonical form: lowercase, trim, collapse whitespace
/// runs, unify typographic dashes. Does not apply synonyms.
pub fn fold_text(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut pending_space = false;
    for c in raw.trim().chars() {
        if c.is_whitespace() {
            pending_space = true;
            continue;
        }
        if pending_space {
            out.push(' ');
            pending_space = false;
        }
        for lc in unify_dashes(c).to_lowercase() {
            out.push(lc);
        }
    }
    out
}

/// Like [`fold_text`], but preserves letter case. Used for display forms.
pub fn clean_display(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut pending_space = false;
    for c in raw.trim().chars() {
        if c.is_whitespace() {
            pending_space = true;
            continue;
        }
        if pending_space {
            out.push(' ');
            pending_space = false;
        }
        out.push(unify_dashes(c));
    }
    out
}

/// Normalize a raw keyword. Returns `None` when the folded text is empty.
///
/// Synonyms are applied once, after folding; a mapped keyword takes the
/// preferred form as both canonical and display text.
pub fn normalize(raw: &str, synonyms: &SynonymMap) -> Option<CanonicalKeyword> {
    let canonical = fold_text(raw);
    if canonical.is_empty() {
        return None;
    }
    match synonyms.resolve(&canonical) {
        Some(preferred) => Some(CanonicalKeyword {
            canonical: preferred.to_string(),
            display: preferred.to_string(),
        }),
        None => Some(CanonicalKeyword {
            display: clean_display(raw),
            canonical,
        }),
    }
}

/// Normalized, de-duplicated author keywords of a record. The first surface
/// form seen for each canonical key supplies the display text.
pub fn author_keyword_set(record: &ArticleRecord, synonyms: &SynonymMap) -> BTreeSet<CanonicalKeyword> {
    keyword_set_of(&record.author_keywords, synonyms)
}

/// Normalized, de-duplicated database index terms of a record.
pub fn keywords_plus_set(record: &ArticleRecord, synonyms: &SynonymMap) -> BTreeSet<CanonicalKeyword> {
    keyword_set_of(&record.keywords_plus, synonyms)
}

/// The record's keyword set for the requested field.
pub fn keyword_set(
    record: &ArticleRecord,
    field: FieldKind,
    synonyms: &SynonymMap,
) -> BTreeSet<CanonicalKeyword> {
    match field {
        FieldKind::Author => author_keyword_set(record, synonyms),
        FieldKind::Plus => keywords_plus_set(record, synonyms),
    }
}

fn keyword_set_of(raw: &[String], synonyms: &SynonymMap) -> BTreeSet<CanonicalKeyword> {
    let mut set = BTreeSet::new();
    for kw in raw {
        if let Some(k) = normalize(kw, synonyms) {
            // insert keeps the existing element on equal keys, so the
            // first-seen display form wins
            set.insert(k);
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn record_with_de(keywords: &[&str]) -> ArticleRecord {
        ArticleRecord {
            id: "WOS:1".into(),
            title: String::new(),
            source: String::new(),
            pub_year: Some(2020),
            doc_type: "Article".into(),
            author_keywords: keywords.iter().map(|s| s.to_string()).collect(),
            keywords_plus: Vec::new(),
            research_areas: Vec::new(),
            wos_categories: Vec::new(),
        }
    }

    #[test]
    fn normalize_trims_and_lowercases() {
        let kw = normalize("  Self-Organization ", &SynonymMap::empty()).unwrap();
        assert_eq!(kw.canonical(), "self-organization");
        assert_eq!(kw.display(), "Self-Organization");
    }

    #[test]
    fn normalize_collapses_internal_whitespace() {
        let kw = normalize("AGENT-BASED   MODELS", &SynonymMap::empty()).unwrap();
        assert_eq!(kw.canonical(), "agent-based models");
    }

    #[test]
    fn normalize_empty_is_none() {
        assert!(normalize("", &SynonymMap::empty()).is_none());
        assert!(normalize("   ", &SynonymMap::empty()).is_none());
    }

    #[test]
    fn normalize_unifies_typographic_dashes() {
        let kw = normalize("agent\u{2013}based models", &SynonymMap::empty()).unwrap();
        assert_eq!(kw.canonical(), "agent-based models");
    }

    #[test]
    fn synonyms_apply_once() {
        let syn = SynonymMap::from_pairs([("abm", "agent-based models")]).unwrap();
        let kw = normalize("ABM", &syn).unwrap();
        assert_eq!(kw.canonical(), "agent-based models");
        assert_eq!(kw.display(), "agent-based models");
    }

    #[test]
    fn synonym_chain_rejected() {
        let err = SynonymMap::from_pairs([("a", "b"), ("b", "c")]).unwrap_err();
        assert!(err.to_string().contains("alias chain"));
    }

    #[test]
    fn conflicting_alias_rejected() {
        assert!(SynonymMap::from_pairs([("a", "b"), ("a", "c")]).is_err());
    }

    #[test]
    fn synonym_csv_requires_header() {
        let csv = "alias,preferred\nabm,agent-based models\n";
        let syn = SynonymMap::from_csv_reader(csv.as_bytes(), "syn.csv").unwrap();
        assert_eq!(syn.resolve("abm"), Some("agent-based models"));

        let bad = "abm,agent-based models\nx,y\n";
        assert!(SynonymMap::from_csv_reader(bad.as_bytes(), "syn.csv").is_err());
    }

    #[test]
    fn author_set_dedups_case_variants() {
        let r = record_with_de(&["Complexity", "complexity"]);
        let set = author_keyword_set(&r, &SynonymMap::empty());
        assert_eq!(set.len(), 1);
        assert_eq!(set.iter().next().unwrap().canonical(), "complexity");
    }

    #[test]
    fn author_set_empty_field() {
        let r = record_with_de(&[]);
        assert!(author_keyword_set(&r, &SynonymMap::empty()).is_empty());
    }

    #[test]
    fn author_set_mixed_variants() {
        let r = record_with_de(&["Chaos", "Self-Organization", "chaos "]);
        let set = author_keyword_set(&r, &SynonymMap::empty());
        let canon: Vec<&str> = set.iter().map(|k| k.canonical()).collect();
        assert_eq!(canon, vec!["chaos", "self-organization"]);
    }

    #[test]
    fn first_seen_display_wins() {
        let r = record_with_de(&["Chaos Theory", "chaos theory"]);
        let set = author_keyword_set(&r, &SynonymMap::empty());
        assert_eq!(set.iter().next().unwrap().display(), "Chaos Theory");
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(raw in "\\PC{0,40}") {
            if let Some(kw) = normalize(&raw, &SynonymMap::empty()) {
                let again = normalize(kw.canonical(), &SynonymMap::empty()).unwrap();
                prop_assert_eq!(again.canonical(), kw.canonical());
            }
        }

        #[test]
        fn canonical_has_no_double_spaces(raw in "\\PC{0,40}") {
            if let Some(kw) = normalize(&raw, &SynonymMap::empty()) {
                prop_assert!(!kw.canonical().contains("  "));
                prop_assert_eq!(kw.canonical().trim(), kw.canonical());
            }
        }

        #[test]
        fn dedup_never_grows(keywords in proptest::collection::vec("[A-Za-z ]{0,12}", 0..10)) {
            let raw: Vec<&str> = keywords.iter().map(String::as_str).collect();
            let r = record_with_de(&raw);
            let set = author_keyword_set(&r, &SynonymMap::empty());
            prop_assert!(set.len() <= r.author_keywords.len());
        }
    }
}
