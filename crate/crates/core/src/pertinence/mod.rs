//! Pertinence and the baseline pattern rankers.
//!
//! The pertinence of pattern `P` to row `i` is the expected similarity between
//! row `i` and a row drawn from `p(row | P)`:
//!
//! ```text
//! pertinence(i, P) = Σ_k p(k | P) · sim(i, k)
//! ```
//!
//! It is only computed where `p(i | P) > 0`, i.e. for patterns actually seen
//! with the pair. Every ranker scores exactly that set of cells, minus cells
//! where its formula is undefined.

mod conditional;
mod ranked;
mod ranker;

use rayon::prelude::*;

pub use conditional::ConditionalTable;
pub use ranked::{RankedEntry, RankedLists, RankedPatternList, RowLists};
pub use ranker::{IdfVariant, Ranker, TfVariant};

use crate::matrix::{ColMap, CosineTable, SparseMatrix, SvdFactors};

/// Pertinence at every cell with `p(i | P_j) > 0`, as a rows × cols matrix.
pub fn pertinence_scores(conditionals: &ConditionalTable, cosines: &CosineTable) -> SparseMatrix {
    let by_pattern = &conditionals.pair_given_pattern;
    let rows = by_pattern.cols();
    let per_column: Vec<Vec<(usize, usize, f64)>> = (0..by_pattern.rows())
        .into_par_iter()
        .map(|j| {
            let (support, probs) = by_pattern.row(j);
            support
                .iter()
                .map(|&i| {
                    let sims = cosines.row(i);
                    let value: f64 = support.iter().zip(probs).map(|(&k, &p)| p * sims[k]).sum();
                    (i, j, value)
                })
                .collect()
        })
        .collect();
    SparseMatrix::from_triplets(rows, by_pattern.rows(), per_column.into_iter().flatten().collect())
        .expect("indices come from the conditional table")
}

/// Everything a ranker may read.
#[derive(Clone, Copy)]
pub struct RankingInputs<'a> {
    pub raw: &'a SparseMatrix,
    pub transformed: &'a SparseMatrix,
    pub factors: &'a SvdFactors,
    pub conditionals: &'a ConditionalTable,
    pub pertinence: &'a SparseMatrix,
    pub cols: &'a ColMap,
}

impl RankingInputs<'_> {
    /// `N`: the number of rows after doubling.
    pub fn total_pairs(&self) -> usize {
        self.raw.rows()
    }

    /// `F`: the largest pattern frequency in a row.
    pub fn max_frequency(&self, row: usize) -> f64 {
        self.raw.row(row).1.iter().copied().fold(0.0, f64::max)
    }
}

/// Score of one cell under `ranker`, or `None` when the pattern was not
/// observed with the pair or the ranker's formula is undefined there.
pub fn baseline_score(ranker: Ranker, inputs: &RankingInputs<'_>, row: usize, col: usize) -> Option<f64> {
    if inputs.raw.get(row, col) <= 0.0 {
        return None;
    }
    cell_score(ranker, inputs, row, col, inputs.max_frequency(row))
}

fn cell_score(ranker: Ranker, inputs: &RankingInputs<'_>, row: usize, col: usize, max_f: f64) -> Option<f64> {
    let value = match ranker {
        Ranker::Pertinence => inputs.pertinence.get(row, col),
        Ranker::LogEntropyCell => inputs.transformed.get(row, col),
        Ranker::CondProb => inputs.conditionals.pair_given_pattern(row, col),
        Ranker::SvdCell => inputs.factors.cell(row, col),
        Ranker::Random(seed) => Ranker::random_score(seed, row, col),
        tfidf => {
            let (tf, idf) = tfidf.tf_idf().expect("remaining rankers are tf-idf");
            let n = inputs.cols.pair_freq(col);
            if n == 0 {
                return None;
            }
            let f = inputs.raw.get(row, col);
            tf.weight(f, max_f) * idf.weight(n as f64, inputs.total_pairs() as f64)
        }
    };
    value.is_finite().then_some(value)
}

/// Scores for every observed cell, as a rows × cols matrix.
pub fn score_matrix(ranker: Ranker, inputs: &RankingInputs<'_>) -> SparseMatrix {
    let raw = inputs.raw;
    let per_row: Vec<Vec<(usize, usize, f64)>> = (0..raw.rows())
        .into_par_iter()
        .map(|i| {
            let max_f = inputs.max_frequency(i);
            let (cols, values) = raw.row(i);
            cols.iter()
                .zip(values)
                .filter(|(_, &f)| f > 0.0)
                .filter_map(|(&j, _)| cell_score(ranker, inputs, i, j, max_f).map(|s| (i, j, s)))
                .collect()
        })
        .collect();
    SparseMatrix::from_triplets(raw.rows(), raw.cols(), per_row.into_iter().flatten().collect())
        .expect("indices come from the raw matrix")
}
