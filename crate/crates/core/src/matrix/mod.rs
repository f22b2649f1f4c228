//! The pair × pattern matrix and everything computed from it.
//!
//! Every observed pair gets a forward row (`X:Y`) and a reversed row (`Y:X`);
//! every retained pattern gets an original column and a mirrored column with
//! `X` and `Y` swapped. Column labels are read relative to the row's pair, so
//! row `Y:X` under column `X is the largest Y` holds what row `X:Y` has under
//! `Y is the largest X`.

mod similarity;
mod sparse;
mod svd;
mod weighting;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

pub use similarity::{CosineTable, RowSimilarity};
pub use sparse::{SparseMatrix, COO_HEADER};
pub use svd::{truncated_svd, truncated_svd_with, SvdFactors, SvdMethod, DEFAULT_SVD_RANK, FACTORS_HEADER};
pub use weighting::{entropy_weights, log_entropy_transform};

use crate::pair::{Direction, Orientation, WordPair};
use crate::patterns::{Pattern, PatternStats};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RowKey {
    pub pair_id: usize,
    pub direction: Direction,
}

/// Row labels. Rows `2r` and `2r + 1` are the forward and reversed rows of
/// the `r`-th observed pair.
#[derive(Debug, Clone, PartialEq)]
pub struct RowMap {
    keys: Vec<RowKey>,
    words: Vec<WordPair>,
    lookup: HashMap<WordPair, usize>,
}

impl RowMap {
    pub fn new(rows: Vec<(RowKey, WordPair)>) -> Self {
        let mut lookup = HashMap::new();
        // a forward row wins over someone else's reversed row for the same words
        for (i, (key, words)) in rows.iter().enumerate() {
            if key.direction == Direction::Forward {
                lookup.entry(words.clone()).or_insert(i);
            }
        }
        for (i, (key, words)) in rows.iter().enumerate() {
            if key.direction == Direction::Reversed {
                lookup.entry(words.clone()).or_insert(i);
            }
        }
        let (keys, words) = rows.into_iter().unzip();
        RowMap { keys, words, lookup }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, row: usize) -> RowKey {
        self.keys[row]
    }

    /// The words of a row in row order (`Y:X` for a reversed row).
    pub fn words(&self, row: usize) -> &WordPair {
        &self.words[row]
    }

    pub fn find(&self, pair: &WordPair) -> Option<usize> {
        self.lookup.get(pair).copied()
    }

    /// The row with the same pair laid out the other way round.
    pub fn partner(&self, row: usize) -> usize {
        row ^ 1
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, RowKey, &WordPair)> {
        self.keys
            .iter()
            .zip(&self.words)
            .enumerate()
            .map(|(i, (k, w))| (i, *k, w))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColKey {
    /// The `X ... Y` form.
    pub canonical: Pattern,
    pub mirrored: bool,
}

/// Column labels. Columns `2q` and `2q + 1` are the original and mirrored
/// columns of the `q`-th retained pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct ColMap {
    patterns: Vec<Pattern>,
    pair_freq: Vec<u32>,
    lookup: HashMap<Pattern, usize>,
}

impl ColMap {
    /// Build from canonical patterns and their pair frequencies.
    pub fn new(canonical: impl IntoIterator<Item = (Pattern, u32)>) -> Self {
        let mut patterns = Vec::new();
        let mut pair_freq = Vec::new();
        for (p, n) in canonical {
            debug_assert_eq!(p.orientation(), Orientation::XFirst);
            let mirrored = p.mirrored();
            patterns.push(p);
            patterns.push(mirrored);
            pair_freq.extend([n, n]);
        }
        let lookup = patterns.iter().enumerate().map(|(j, p)| (p.clone(), j)).collect();
        ColMap {
            patterns,
            pair_freq,
            lookup,
        }
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Column label relative to the row's pair.
    pub fn pattern(&self, col: usize) -> &Pattern {
        &self.patterns[col]
    }

    pub fn key(&self, col: usize) -> ColKey {
        ColKey {
            canonical: self.patterns[col & !1].clone(),
            mirrored: col & 1 == 1,
        }
    }

    pub fn orientation(&self, col: usize) -> Orientation {
        if col & 1 == 0 {
            Orientation::XFirst
        } else {
            Orientation::YFirst
        }
    }

    /// Pair frequency `n`, shared by a column and its mirror.
    pub fn pair_freq(&self, col: usize) -> u32 {
        self.pair_freq[col]
    }

    pub fn find(&self, pattern: &Pattern) -> Option<usize> {
        self.lookup.get(pattern).copied()
    }

    pub fn mirror(&self, col: usize) -> usize {
        col ^ 1
    }

    pub fn num_patterns(&self) -> usize {
        self.patterns.len() / 2
    }
}

/// Raw pattern-frequency matrix with its row and column labels.
#[derive(Debug, Clone, PartialEq)]
pub struct PairPatternMatrix {
    pub rows: RowMap,
    pub cols: ColMap,
    pub raw: SparseMatrix,
}

impl PairPatternMatrix {
    /// Lay filtered statistics out as a matrix. `pairs` are the input pairs
    /// indexed by pair id; pairs that were never observed get no rows.
    pub fn build(stats: &PatternStats, pairs: &[WordPair]) -> Result<Self> {
        if stats.is_empty() {
            return Err(Error::EmptyMatrix("no input pair co-occurs in the corpus".into()));
        }
        if stats.num_patterns() == 0 {
            return Err(Error::EmptyMatrix(
                "no pattern reaches the minimum pair frequency".into(),
            ));
        }
        let cols = ColMap::new(stats.pair_frequencies().iter().map(|(p, &n)| (p.clone(), n)));
        let mut row_labels = Vec::new();
        let mut triplets = Vec::new();
        for &pair_id in stats.observed_pairs() {
            let words = pairs
                .get(pair_id)
                .ok_or_else(|| Error::Data(format!("pair id {pair_id} has no words")))?;
            let fwd = row_labels.len();
            row_labels.push((
                RowKey {
                    pair_id,
                    direction: Direction::Forward,
                },
                words.clone(),
            ));
            row_labels.push((
                RowKey {
                    pair_id,
                    direction: Direction::Reversed,
                },
                words.reversed(),
            ));
            for orientation in Orientation::BOTH {
                for (pattern, f) in stats.list(pair_id, orientation) {
                    let j = cols.find(&pattern).expect("filtered patterns have columns");
                    triplets.push((fwd, j, f as f64));
                    triplets.push((fwd + 1, cols.mirror(j), f as f64));
                }
            }
        }
        let raw = SparseMatrix::from_triplets(row_labels.len(), cols.len(), triplets)?;
        Ok(PairPatternMatrix {
            rows: RowMap::new(row_labels),
            cols,
            raw,
        })
    }

    pub fn density(&self) -> f64 {
        self.raw.density()
    }

    /// Rows with no retained pattern at all.
    pub fn zero_rows(&self) -> Vec<usize> {
        (0..self.raw.rows()).filter(|&i| self.raw.row(i).0.is_empty()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Phrase, PhraseLists};

    fn phrase(pair_id: usize, orientation: Orientation, words: &[&str], count: u64) -> Phrase {
        let n = words.len();
        Phrase {
            pair_id,
            orientation,
            first: words[0].into(),
            intervening: words[1..n - 1].iter().map(|s| s.to_string()).collect(),
            last: words[n - 1].into(),
            count,
        }
    }

    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn rows_and_columns_are_doubled() {
        let lists = PhraseLists {
            x_first: vec![phrase(0, Orientation::XFirst, &["a", "of", "b"], 5)],
            y_first: vec![],
        };
        let stats = PatternStats::accumulate([&lists]);
        // "X of Y" and "X * Y"
        assert_eq!(stats.num_patterns(), 2);
        let m = PairPatternMatrix::build(&stats, &[WordPair::new("a", "b")]).unwrap();
        assert_eq!(m.raw.rows(), 2);
        assert_eq!(m.raw.cols(), 4);
        let xy = m.cols.find(&p("X * Y")).unwrap();
        let yx = m.cols.find(&p("Y * X")).unwrap();
        assert_eq!(m.cols.mirror(xy), yx);
        assert_eq!(m.raw.get(0, xy), 5.0);
        assert_eq!(m.raw.get(1, yx), 5.0);
        assert_eq!(m.raw.get(1, xy), 0.0);
        assert_eq!(m.rows.words(1), &WordPair::new("b", "a"));
        assert_eq!(m.rows.find(&WordPair::new("b", "a")), Some(1));
    }

    #[test]
    fn y_first_list_fills_mirrored_column_of_forward_row() {
        let lists = PhraseLists {
            x_first: vec![],
            y_first: vec![phrase(
                0,
                Orientation::YFirst,
                &["bird", "such", "as", "the", "ostrich"],
                2,
            )],
        };
        let stats = PatternStats::accumulate([&lists]);
        let m = PairPatternMatrix::build(&stats, &[WordPair::new("ostrich", "bird")]).unwrap();
        let yx = m.cols.find(&p("Y such as the X")).unwrap();
        assert_eq!(m.cols.orientation(yx), Orientation::YFirst);
        assert_eq!(m.raw.get(0, yx), 2.0);
        assert_eq!(m.raw.get(1, m.cols.mirror(yx)), 2.0);
    }

    #[test]
    fn unobserved_pairs_get_no_rows() {
        let lists = vec![
            PhraseLists::default(),
            PhraseLists {
                x_first: vec![phrase(1, Orientation::XFirst, &["c", "to", "d"], 1)],
                y_first: vec![],
            },
        ];
        let stats = PatternStats::accumulate(&lists);
        let pairs = [WordPair::new("a", "b"), WordPair::new("c", "d")];
        let m = PairPatternMatrix::build(&stats, &pairs).unwrap();
        assert_eq!(m.rows.len(), 2);
        assert_eq!(m.rows.key(0).pair_id, 1);
        assert_eq!(m.rows.find(&pairs[0]), None);
    }

    #[test]
    fn empty_inputs_rejected() {
        let stats = PatternStats::accumulate(std::iter::empty());
        assert!(matches!(
            PairPatternMatrix::build(&stats, &[]),
            Err(Error::EmptyMatrix(_))
        ));
        let lists = PhraseLists {
            x_first: vec![phrase(0, Orientation::XFirst, &["c", "to", "d"], 1)],
            y_first: vec![],
        };
        let filtered = PatternStats::accumulate([&lists]).filter(2).unwrap();
        assert!(matches!(
            PairPatternMatrix::build(&filtered, &[WordPair::new("c", "d")]),
            Err(Error::EmptyMatrix(_))
        ));
    }

    #[test]
    fn filtered_out_pair_is_a_flagged_zero_row() {
        let lists = vec![
            PhraseLists {
                x_first: vec![phrase(0, Orientation::XFirst, &["a", "of", "b"], 1)],
                y_first: vec![],
            },
            PhraseLists {
                x_first: vec![phrase(1, Orientation::XFirst, &["c", "of", "d"], 1)],
                y_first: vec![],
            },
            PhraseLists {
                x_first: vec![phrase(2, Orientation::XFirst, &["e", "q", "r", "f"], 1)],
                y_first: vec![],
            },
        ];
        let stats = PatternStats::accumulate(&lists).filter(2).unwrap();
        let pairs = [
            WordPair::new("a", "b"),
            WordPair::new("c", "d"),
            WordPair::new("e", "f"),
        ];
        let m = PairPatternMatrix::build(&stats, &pairs).unwrap();
        assert_eq!(m.cols.num_patterns(), 2);
        assert_eq!(m.rows.len(), 6);
        assert_eq!(m.zero_rows(), vec![4, 5]);
    }
}
