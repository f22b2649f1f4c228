use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use crate::{Error, Result};

/// Lowercase noun lemmas used to decide how strictly to match word forms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NounLexicon {
    nouns: BTreeSet<String>,
}

impl NounLexicon {
    pub fn new<I, S>(nouns: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        NounLexicon {
            nouns: nouns
                .into_iter()
                .map(|s| s.as_ref().trim().to_lowercase())
                .filter(|s| !s.is_empty())
                .collect(),
        }
    }

    /// One lemma per line; blank lines and `#` comments are ignored.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(NounLexicon::new(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        ))
    }

    pub fn contains(&self, lemma: &str) -> bool {
        self.nouns.contains(lemma)
    }

    pub fn len(&self) -> usize {
        self.nouns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nouns.is_empty()
    }

    /// True if the word, or the word without a plural `-s`/`-es`, is listed.
    pub fn is_likely_noun(&self, word: &str) -> bool {
        self.contains(word)
            || word.strip_suffix("es").is_some_and(|w| self.contains(w))
            || word.strip_suffix('s').is_some_and(|w| self.contains(w))
    }
}
