use crate::matrix::SparseMatrix;

/// `p(pattern | pair)` and the Bayes-smoothed `p(pair | pattern)` with a
/// uniform prior over pairs, both estimated from raw frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalTable {
    /// rows × cols: `p(P_j | i) = f_ij / Σ_j' f_ij'`
    pub pattern_given_pair: SparseMatrix,
    /// cols × rows: `p(i | P_j) = p(P_j | i) / Σ_i' p(P_j | i')`
    pub pair_given_pattern: SparseMatrix,
}

impl ConditionalTable {
    pub fn new(raw: &SparseMatrix) -> Self {
        let row_sums = raw.row_sums();
        let mut pattern_given_pair = Vec::with_capacity(raw.nnz());
        for (i, j, f) in raw.iter() {
            if f > 0.0 {
                pattern_given_pair.push((i, j, f / row_sums[i]));
            }
        }
        let pattern_given_pair =
            SparseMatrix::from_triplets(raw.rows(), raw.cols(), pattern_given_pair).expect("same shape as raw");
        let by_pattern = pattern_given_pair.transpose();
        let col_sums = by_pattern.row_sums();
        let pair_given_pattern = by_pattern.map_values(|j, _, p| p / col_sums[j]);
        ConditionalTable {
            pattern_given_pair,
            pair_given_pattern,
        }
    }

    pub fn pattern_given_pair(&self, row: usize, col: usize) -> f64 {
        self.pattern_given_pair.get(row, col)
    }

    pub fn pair_given_pattern(&self, row: usize, col: usize) -> f64 {
        self.pair_given_pattern.get(col, row)
    }
}
