use std::cmp::Ordering;
use std::collections::HashMap;

use crate::matrix::{ColMap, RowKey, RowMap, SparseMatrix};
use crate::pair::{Orientation, WordPair};
use crate::patterns::Pattern;

#[derive(Debug, Clone, PartialEq)]
pub struct RankedEntry {
    /// 1-based
    pub rank: usize,
    pub col: usize,
    pub pattern: Pattern,
    pub score: f64,
}

/// Patterns of one orientation for one row, best first.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedPatternList {
    pub row: usize,
    pub key: RowKey,
    pub orientation: Orientation,
    pub entries: Vec<RankedEntry>,
    rank_of: HashMap<usize, usize>,
}

/// Scores closer than this fraction of a list's largest magnitude are ties.
/// Values that agree in theory (an SVD reconstruction, sums taken in a
/// different order) then rank by pattern text instead of by rounding noise.
pub const TIE_TOLERANCE: f64 = 1e-9;

impl RankedPatternList {
    /// Sort `(col, score)` by decreasing score; ties (see [`TIE_TOLERANCE`])
    /// fall back to the pattern's text form. Ranks are 1..=len.
    pub fn new(
        row: usize,
        key: RowKey,
        orientation: Orientation,
        scored: Vec<(usize, f64)>,
        labels: &[String],
        cols: &ColMap,
    ) -> Self {
        let scale = scored.iter().map(|(_, s)| s.abs()).fold(0.0, f64::max);
        let grid = if scale > 0.0 { scale * TIE_TOLERANCE } else { 1.0 };
        let mut keyed: Vec<(f64, usize, f64)> = scored
            .into_iter()
            .map(|(col, s)| ((s / grid).round(), col, s))
            .collect();
        keyed.sort_by(|a, b| {
            b.0.partial_cmp(&a.0)
                .unwrap_or(Ordering::Equal)
                .then_with(|| labels[a.1].cmp(&labels[b.1]))
        });
        let entries: Vec<RankedEntry> = keyed
            .into_iter()
            .enumerate()
            .map(|(i, (_, col, score))| RankedEntry {
                rank: i + 1,
                col,
                pattern: cols.pattern(col).clone(),
                score,
            })
            .collect();
        let rank_of = entries.iter().map(|e| (e.col, e.rank)).collect();
        RankedPatternList {
            row,
            key,
            orientation,
            entries,
            rank_of,
        }
    }

    pub fn rank_of(&self, col: usize) -> Option<usize> {
        self.rank_of.get(&col).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The two lists of a row.
#[derive(Debug, Clone, PartialEq)]
pub struct RowLists {
    pub words: WordPair,
    pub x_first: RankedPatternList,
    pub y_first: RankedPatternList,
}

impl RowLists {
    pub fn get(&self, orientation: Orientation) -> &RankedPatternList {
        match orientation {
            Orientation::XFirst => &self.x_first,
            Orientation::YFirst => &self.y_first,
        }
    }
}

/// Ranked lists for every row under one ranker.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedLists {
    rows: RowMap,
    lists: Vec<RowLists>,
    labels: Vec<String>,
}

impl RankedLists {
    pub fn build(scores: &SparseMatrix, rows: &RowMap, cols: &ColMap) -> Self {
        let labels: Vec<String> = (0..cols.len()).map(|j| cols.pattern(j).to_string()).collect();
        let lists = (0..scores.rows())
            .map(|i| {
                let (idx, vals) = scores.row(i);
                let (mut xs, mut ys) = (Vec::new(), Vec::new());
                for (&j, &s) in idx.iter().zip(vals) {
                    match cols.orientation(j) {
                        Orientation::XFirst => xs.push((j, s)),
                        Orientation::YFirst => ys.push((j, s)),
                    }
                }
                let key = rows.key(i);
                RowLists {
                    words: rows.words(i).clone(),
                    x_first: RankedPatternList::new(i, key, Orientation::XFirst, xs, &labels, cols),
                    y_first: RankedPatternList::new(i, key, Orientation::YFirst, ys, &labels, cols),
                }
            })
            .collect();
        RankedLists {
            rows: rows.clone(),
            lists,
            labels,
        }
    }

    pub fn row(&self, row: usize) -> &RowLists {
        &self.lists[row]
    }

    pub fn row_of(&self, pair: &WordPair) -> Option<usize> {
        self.rows.find(pair)
    }

    pub fn for_pair(&self, pair: &WordPair) -> Option<&RowLists> {
        self.row_of(pair).map(|r| &self.lists[r])
    }

    pub fn rows(&self) -> impl Iterator<Item = &RowLists> {
        self.lists.iter()
    }

    pub fn num_rows(&self) -> usize {
        self.lists.len()
    }

    pub fn label(&self, col: usize) -> &str {
        &self.labels[col]
    }

    /// Tab-separated export: pair, direction, orientation, rank, score, pattern.
    pub fn to_tsv(&self, only: Option<usize>) -> String {
        let mut out = String::from("pair\tdirection\torientation\trank\tscore\tpattern\n");
        let rows: Box<dyn Iterator<Item = &RowLists>> = match only {
            Some(r) => Box::new(std::iter::once(&self.lists[r])),
            None => Box::new(self.lists.iter()),
        };
        for lists in rows {
            for list in [&lists.x_first, &lists.y_first] {
                for e in &list.entries {
                    out.push_str(&format!(
                        "{}\t{}\t{}\t{}\t{:?}\t{}\n",
                        lists.words, list.key.direction, list.orientation, e.rank, e.score, e.pattern
                    ));
                }
            }
        }
        out
    }
}
