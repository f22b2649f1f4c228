use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::Path;

use super::Document;
use crate::{Error, Result};

pub const INDEX_HEADER: &str = "relpat-index v1";

/// A token occurrence: document id and 0-based token position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Posting {
    pub doc: u32,
    pub pos: u32,
}

/// Immutable positional index. Documents are kept (sorted by id) so phrase
/// search can read the tokens between two postings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PositionalIndex {
    docs: Vec<Document>,
    postings: BTreeMap<String, Vec<Posting>>,
    token_count: usize,
}

impl PositionalIndex {
    pub fn build(mut docs: Vec<Document>) -> Result<Self> {
        docs.sort_by_key(|d| d.id);
        if let Some(w) = docs.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::DuplicateDocument(w[0].id));
        }
        let mut postings: BTreeMap<String, Vec<Posting>> = BTreeMap::new();
        let mut token_count = 0;
        // Documents are visited in id order and positions ascend, so every
        // postings list comes out strictly sorted without a final sort.
        for doc in &docs {
            for (pos, token) in doc.tokens.iter().enumerate() {
                postings.entry(token.clone()).or_default().push(Posting {
                    doc: doc.id,
                    pos: pos as u32,
                });
            }
            token_count += doc.tokens.len();
        }
        Ok(PositionalIndex {
            docs,
            postings,
            token_count,
        })
    }

    pub fn postings(&self, token: &str) -> &[Posting] {
        self.postings.get(token).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn contains(&self, token: &str) -> bool {
        self.postings.contains_key(token)
    }

    pub fn vocabulary(&self) -> impl Iterator<Item = &str> {
        self.postings.keys().map(String::as_str)
    }

    /// All vocabulary tokens starting with `prefix`, in sorted order.
    pub fn tokens_with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.postings
            .range::<str, _>((std::ops::Bound::Included(prefix), std::ops::Bound::Unbounded))
            .map(|(k, _)| k.as_str())
            .take_while(move |k| k.starts_with(prefix))
    }

    pub fn documents(&self) -> &[Document] {
        &self.docs
    }

    pub fn document(&self, id: u32) -> Option<&Document> {
        self.docs
            .binary_search_by_key(&id, |d| d.id)
            .ok()
            .map(|i| &self.docs[i])
    }

    pub fn token_at(&self, posting: Posting) -> Option<&str> {
        self.document(posting.doc)?
            .tokens
            .get(posting.pos as usize)
            .map(String::as_str)
    }

    pub fn num_documents(&self) -> usize {
        self.docs.len()
    }

    pub fn num_tokens(&self) -> usize {
        self.token_count
    }

    pub fn vocabulary_size(&self) -> usize {
        self.postings.len()
    }

    /// Text format: the header line, `documents <n>`, then one
    /// `<id>\t<space-separated tokens>` line per document. Postings are
    /// rebuilt on load.
    pub fn write_to(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "{INDEX_HEADER}")?;
        writeln!(w, "documents {}", self.docs.len())?;
        for doc in &self.docs {
            writeln!(w, "{}\t{}", doc.id, doc.tokens.join(" "))?;
        }
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut buf = Vec::new();
        self.write_to(&mut buf).map_err(|e| Error::io(path, e))?;
        fs::write(path, buf).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut lines = text.lines();
        let header = lines.next().unwrap_or("");
        if header != INDEX_HEADER {
            return Err(Error::Format {
                path: path.into(),
                expected: INDEX_HEADER.into(),
                found: header.into(),
            });
        }
        let count: usize = lines
            .next()
            .and_then(|l| l.strip_prefix("documents "))
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| Error::parse(path, 2, "expected `documents <n>`"))?;
        let mut docs = Vec::with_capacity(count);
        for (i, line) in lines.enumerate() {
            let lineno = i + 3;
            let (id, body) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(path, lineno, "expected `<id>\\t<tokens>`"))?;
            let id = id
                .parse()
                .map_err(|_| Error::parse(path, lineno, format!("bad document id {id:?}")))?;
            let tokens = body.split(' ').map(str::to_string).collect();
            docs.push(Document::new(id, tokens).map_err(|e| Error::parse(path, lineno, e.to_string()))?);
        }
        if docs.len() != count {
            return Err(Error::parse(
                path,
                2,
                format!("header declares {count} documents, found {}", docs.len()),
            ));
        }
        PositionalIndex::build(docs)
    }

    /// Distinct tokens as a set; mostly for tests and stats.
    pub fn vocabulary_set(&self) -> BTreeSet<&str> {
        self.vocabulary().collect()
    }
}
