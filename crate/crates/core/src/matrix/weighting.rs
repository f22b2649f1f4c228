use super::SparseMatrix;

/// Per-column weight `1 - H_j / ln(rows)`, where `H_j` is the entropy of the
/// column's values normalized to a distribution. Clamped to `[0, 1]`; empty
/// columns, and every column of a single-row matrix, get weight 1.
pub fn entropy_weights(raw: &SparseMatrix) -> Vec<f64> {
    let mut totals = vec![0.0; raw.cols()];
    for (_, j, v) in raw.iter() {
        totals[j] += v;
    }
    let mut entropy = vec![0.0; raw.cols()];
    for (_, j, v) in raw.iter() {
        if v > 0.0 {
            let p = v / totals[j];
            entropy[j] -= p * p.ln();
        }
    }
    let log_rows = (raw.rows() as f64).ln();
    entropy
        .into_iter()
        .map(|h| {
            if log_rows > 0.0 {
                (1.0 - h / log_rows).clamp(0.0, 1.0)
            } else {
                1.0
            }
        })
        .collect()
}

/// Replace each stored cell `f` with `w_j * ln(f + 1)`. The sparsity
/// structure is unchanged.
pub fn log_entropy_transform(raw: &SparseMatrix) -> SparseMatrix {
    let weights = entropy_weights(raw);
    raw.map_values(|_, j, f| weights[j] * f.ln_1p())
}
