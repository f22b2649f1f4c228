//! Corpus ingestion, the positional index, and phrase search.

mod index;
mod lexicon;
mod phrases;

use std::fs;
use std::path::Path;

pub use index::{PositionalIndex, Posting, INDEX_HEADER};
pub use lexicon::NounLexicon;
pub use phrases::{expand_word_forms, find_phrases, Phrase, PhraseLists, MAX_INTERVENING};

use crate::{Error, Result};

/// A tokenized document. Tokens are lowercase and whitespace-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: u32,
    pub tokens: Vec<String>,
}

impl Document {
    pub fn new(id: u32, tokens: Vec<String>) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::Data(format!("document {id} has no tokens")));
        }
        if let Some(bad) = tokens
            .iter()
            .find(|t| t.is_empty() || t.chars().any(char::is_whitespace))
        {
            return Err(Error::Data(format!("document {id} has invalid token {bad:?}")));
        }
        Ok(Document { id, tokens })
    }

    pub fn from_text(id: u32, text: &str) -> Result<Self> {
        Document::new(id, tokenize(text))
    }
}

/// Lowercase, split on whitespace, and trim non-alphanumeric characters from
/// both ends of every token. Inner apostrophes and hyphens survive.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .map(|raw| raw.trim_matches(|c: char| !c.is_alphanumeric()))
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// One document per line. Blank lines are skipped; ids are 1-based line numbers.
pub fn load_lines(path: impl AsRef<Path>) -> Result<Vec<Document>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut docs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let tokens = tokenize(line);
        if !tokens.is_empty() {
            docs.push(Document::new(lineno as u32 + 1, tokens)?);
        }
    }
    Ok(docs)
}

/// One document per regular file, in file-name order. Ids are 0-based
/// positions in that order; files that tokenize to nothing are skipped.
pub fn load_dir(path: impl AsRef<Path>) -> Result<Vec<Document>> {
    let path = path.as_ref();
    let mut files = Vec::new();
    for entry in fs::read_dir(path).map_err(|e| Error::io(path, e))? {
        let entry = entry.map_err(|e| Error::io(path, e))?;
        let file_type = entry.file_type().map_err(|e| Error::io(entry.path(), e))?;
        if file_type.is_file() {
            files.push(entry.path());
        }
    }
    if files.is_empty() {
        return Err(Error::Data(format!("no files in corpus directory {}", path.display())));
    }
    files.sort();
    let mut docs = Vec::with_capacity(files.len());
    for (ordinal, file) in files.iter().enumerate() {
        let text = fs::read_to_string(file).map_err(|e| Error::io(file, e))?;
        let tokens = tokenize(&text);
        if tokens.is_empty() {
            log::warn!("skipping empty document {}", file.display());
            continue;
        }
        docs.push(Document::new(ordinal as u32, tokens)?);
    }
    Ok(docs)
}
