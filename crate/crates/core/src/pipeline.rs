//! End-to-end mining: phrases → patterns → matrix → factors → pertinence.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{find_phrases, NounLexicon, PhraseLists, PositionalIndex};
use crate::matrix::{
    log_entropy_transform, truncated_svd_with, CosineTable, PairPatternMatrix, RowSimilarity, SparseMatrix, SvdFactors,
    SvdMethod, DEFAULT_SVD_RANK,
};
use crate::pair::WordPair;
use crate::patterns::PatternStats;
use crate::pertinence::{pertinence_scores, score_matrix, ConditionalTable, RankedLists, Ranker, RankingInputs};
use crate::Result;

pub const DEFAULT_MIN_PAIR_FREQ: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MineParams {
    pub min_pair_freq: u32,
    pub svd_rank: usize,
    pub svd_method: SvdMethod,
}

impl Default for MineParams {
    fn default() -> Self {
        MineParams {
            min_pair_freq: DEFAULT_MIN_PAIR_FREQ,
            svd_rank: DEFAULT_SVD_RANK,
            svd_method: SvdMethod::Auto,
        }
    }
}

/// Counts recorded while mining.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MineCounts {
    pub input_pairs: usize,
    pub observed_pairs: usize,
    pub phrases: usize,
    pub patterns_before_filter: usize,
    pub patterns_after_filter: usize,
    pub rows: usize,
    pub columns: usize,
    pub nonzeros: usize,
    pub density: f64,
    pub zero_rows: usize,
    pub svd_rank: usize,
}

/// Phrase lists per input pair, in input order. Pairs are searched in parallel.
pub fn search_pairs(index: &PositionalIndex, lexicon: &NounLexicon, pairs: &[WordPair]) -> Vec<PhraseLists> {
    pairs
        .par_iter()
        .enumerate()
        .map(|(id, pair)| find_phrases(index, id, pair, lexicon))
        .collect()
}

/// All intermediates of one mining run.
#[derive(Debug, Clone)]
pub struct MineRun {
    pub phrases: Vec<PhraseLists>,
    pub unfiltered: PatternStats,
    pub stats: PatternStats,
    pub model: Model,
    pub counts: MineCounts,
}

/// A mined pair × pattern model, ready to rank patterns under any ranker.
#[derive(Debug, Clone)]
pub struct Model {
    pub pairs: Vec<WordPair>,
    pub matrix: PairPatternMatrix,
    pub transformed: SparseMatrix,
    pub factors: SvdFactors,
    pub conditionals: ConditionalTable,
    pub cosines: CosineTable,
    pub pertinence: SparseMatrix,
}

impl Model {
    pub fn mine(
        index: &PositionalIndex,
        lexicon: &NounLexicon,
        pairs: &[WordPair],
        params: &MineParams,
    ) -> Result<Model> {
        Ok(Model::mine_run(index, lexicon, pairs, params)?.model)
    }

    pub fn mine_run(
        index: &PositionalIndex,
        lexicon: &NounLexicon,
        pairs: &[WordPair],
        params: &MineParams,
    ) -> Result<MineRun> {
        let phrases = search_pairs(index, lexicon, pairs);
        let unfiltered = PatternStats::accumulate(&phrases);
        let stats = unfiltered.filter(params.min_pair_freq)?;
        let matrix = PairPatternMatrix::build(&stats, pairs)?;
        let transformed = log_entropy_transform(&matrix.raw);
        let factors = truncated_svd_with(&transformed, params.svd_rank, params.svd_method)?;
        let model = Model::assemble(pairs.to_vec(), matrix, transformed, factors);
        let counts = MineCounts {
            input_pairs: pairs.len(),
            observed_pairs: stats.observed_pairs().len(),
            phrases: phrases.iter().map(|l| l.x_first.len() + l.y_first.len()).sum(),
            patterns_before_filter: unfiltered.num_patterns(),
            patterns_after_filter: stats.num_patterns(),
            rows: model.matrix.raw.rows(),
            columns: model.matrix.raw.cols(),
            nonzeros: model.matrix.raw.nnz(),
            density: model.matrix.density(),
            zero_rows: model.matrix.zero_rows().len(),
            svd_rank: model.factors.rank(),
        };
        if counts.zero_rows > 0 {
            log::warn!(
                "{} rows have no retained pattern; their cosines are 0",
                counts.zero_rows
            );
        }
        Ok(MineRun {
            phrases,
            unfiltered,
            stats,
            model,
            counts,
        })
    }

    /// Rebuild the derived tables from a matrix and its factors.
    pub fn assemble(
        pairs: Vec<WordPair>,
        matrix: PairPatternMatrix,
        transformed: SparseMatrix,
        factors: SvdFactors,
    ) -> Model {
        let conditionals = ConditionalTable::new(&matrix.raw);
        let cosines = RowSimilarity::new(&factors).table();
        let pertinence = pertinence_scores(&conditionals, &cosines);
        Model {
            pairs,
            matrix,
            transformed,
            factors,
            conditionals,
            cosines,
            pertinence,
        }
    }

    pub fn similarity(&self) -> RowSimilarity {
        RowSimilarity::new(&self.factors)
    }

    pub fn inputs(&self) -> RankingInputs<'_> {
        RankingInputs {
            raw: &self.matrix.raw,
            transformed: &self.transformed,
            factors: &self.factors,
            conditionals: &self.conditionals,
            pertinence: &self.pertinence,
            cols: &self.matrix.cols,
        }
    }

    pub fn scores(&self, ranker: Ranker) -> SparseMatrix {
        score_matrix(ranker, &self.inputs())
    }

    pub fn ranked_lists(&self, ranker: Ranker) -> RankedLists {
        self.rank_with_scores(&self.scores(ranker))
    }

    /// Lists from an externally supplied score matrix over the same cells.
    pub fn rank_with_scores(&self, scores: &SparseMatrix) -> RankedLists {
        RankedLists::build(scores, &self.matrix.rows, &self.matrix.cols)
    }
}
