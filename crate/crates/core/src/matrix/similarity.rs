use nalgebra::DMatrix;
use rayon::prelude::*;

use super::SvdFactors;
use crate::{Error, Result};

/// Row cosines in the reduced space. Rows of `U_k Σ_k` are normalized once;
/// all-zero rows have similarity 0 with everything, themselves included.
#[derive(Debug, Clone)]
pub struct RowSimilarity {
    unit_rows: DMatrix<f64>,
    nonzero: Vec<bool>,
}

impl RowSimilarity {
    pub fn new(factors: &SvdFactors) -> Self {
        RowSimilarity::from_vectors(factors.scaled_u())
    }

    /// Cosines between the rows of an arbitrary dense matrix.
    pub fn from_vectors(mut rows: DMatrix<f64>) -> Self {
        let mut nonzero = Vec::with_capacity(rows.nrows());
        for i in 0..rows.nrows() {
            let norm = rows.row(i).norm();
            nonzero.push(norm > 0.0);
            if norm > 0.0 {
                rows.row_mut(i).unscale_mut(norm);
            }
        }
        RowSimilarity {
            unit_rows: rows,
            nonzero,
        }
    }

    pub fn len(&self) -> usize {
        self.nonzero.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nonzero.is_empty()
    }

    pub fn is_zero_row(&self, row: usize) -> bool {
        !self.nonzero[row]
    }

    pub fn sim(&self, a: usize, b: usize) -> Result<f64> {
        for index in [a, b] {
            if index >= self.len() {
                return Err(Error::RowOutOfRange {
                    index,
                    rows: self.len(),
                });
            }
        }
        Ok(self.sim_unchecked(a, b))
    }

    fn sim_unchecked(&self, a: usize, b: usize) -> f64 {
        if !self.nonzero[a] || !self.nonzero[b] {
            return 0.0;
        }
        if a == b {
            return 1.0;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.unit_rows.row(lo).dot(&self.unit_rows.row(hi)).clamp(-1.0, 1.0)
    }

    /// All pairwise cosines, computed in parallel.
    pub fn table(&self) -> CosineTable {
        let n = self.len();
        let values: Vec<f64> = (0..n)
            .into_par_iter()
            .flat_map_iter(|a| (0..n).map(move |b| self.sim_unchecked(a, b)))
            .collect();
        CosineTable { n, values }
    }
}

/// Dense `rows × rows` cosine table.
#[derive(Debug, Clone, PartialEq)]
pub struct CosineTable {
    n: usize,
    values: Vec<f64>,
}

impl CosineTable {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.values[a * self.n + b]
    }

    pub fn row(&self, a: usize) -> &[f64] {
        &self.values[a * self.n..(a + 1) * self.n]
    }

    /// Every entry, the diagonal included, set to `value`.
    pub fn constant(n: usize, value: f64) -> CosineTable {
        CosineTable {
            n,
            values: vec![value; n * n],
        }
    }
}
