use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nalgebra::DMatrix;

use crate::{Error, Result};

pub const COO_HEADER: &str = "relpat-coo v1";

/// Compressed sparse rows over `f64`. Stored entries may be explicit zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Duplicate coordinates are summed.
    pub fn from_triplets(rows: usize, cols: usize, mut triplets: Vec<(usize, usize, f64)>) -> Result<Self> {
        if let Some(&(i, j, _)) = triplets.iter().find(|(i, j, _)| *i >= rows || *j >= cols) {
            return Err(Error::Data(format!("entry ({i}, {j}) outside {rows}x{cols} matrix")));
        }
        triplets.sort_by_key(|t| (t.0, t.1));
        let mut indptr = vec![0; rows + 1];
        let mut indices = Vec::with_capacity(triplets.len());
        let mut values: Vec<f64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in triplets {
            if last == Some((i, j)) {
                *values.last_mut().unwrap() += v;
                continue;
            }
            indices.push(j);
            values.push(v);
            indptr[i + 1] += 1;
            last = Some((i, j));
        }
        for i in 0..rows {
            indptr[i + 1] += indptr[i];
        }
        Ok(SparseMatrix {
            rows,
            cols,
            indptr,
            indices,
            values,
        })
    }

    pub fn from_dense(m: &DMatrix<f64>) -> Self {
        let mut t = Vec::new();
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                if m[(i, j)] != 0.0 {
                    t.push((i, j, m[(i, j)]));
                }
            }
        }
        SparseMatrix::from_triplets(m.nrows(), m.ncols(), t).expect("indices in range")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Stored entries over `rows * cols`.
    pub fn density(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            0.0
        } else {
            self.nnz() as f64 / (self.rows as f64 * self.cols as f64)
        }
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let r = self.indptr[i]..self.indptr[i + 1];
        (&self.indices[r.clone()], &self.values[r])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (idx, vals) = self.row(i);
        idx.binary_search(&j).map(|k| vals[k]).unwrap_or(0.0)
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.row(i).0.binary_search(&j).is_ok()
    }

    /// `(row, col, value)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.rows).flat_map(move |i| {
            let (idx, vals) = self.row(i);
            idx.iter().zip(vals).map(move |(&j, &v)| (i, j, v))
        })
    }

    pub fn transpose(&self) -> SparseMatrix {
        let t = self.iter().map(|(i, j, v)| (j, i, v)).collect();
        SparseMatrix::from_triplets(self.cols, self.rows, t).expect("indices in range")
    }

    /// Same sparsity structure, new values.
    pub fn map_values(&self, mut f: impl FnMut(usize, usize, f64) -> f64) -> SparseMatrix {
        let mut out = self.clone();
        for i in 0..self.rows {
            for k in self.indptr[i]..self.indptr[i + 1] {
                out.values[k] = f(i, self.indices[k], self.values[k]);
            }
        }
        out
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.rows).map(|i| self.row(i).1.iter().sum()).collect()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.iter() {
            m[(i, j)] = v;
        }
        m
    }

    /// `self * b`
    pub fn mul_dense(&self, b: &DMatrix<f64>) -> DMatrix<f64> {
        assert_eq!(self.cols, b.nrows());
        let mut out = DMatrix::zeros(self.rows, b.ncols());
        for c in 0..b.ncols() {
            for i in 0..self.rows {
                let (idx, vals) = self.row(i);
                out[(i, c)] = idx.iter().zip(vals).map(|(&j, &v)| v * b[(j, c)]).sum();
            }
        }
        out
    }

    /// `selfᵀ * b`
    pub fn tr_mul_dense(&self, b: &DMatrix<f64>) -> DMatrix<f64> {
        assert_eq!(self.rows, b.nrows());
        let mut out = DMatrix::zeros(self.cols, b.ncols());
        for c in 0..b.ncols() {
            for i in 0..self.rows {
                let bic = b[(i, c)];
                let (idx, vals) = self.row(i);
                for (&j, &v) in idx.iter().zip(vals) {
                    out[(j, c)] += v * bic;
                }
            }
        }
        out
    }

    /// Coordinate text: `relpat-coo v1`, `<rows> <cols> <nnz>`, then one
    /// `<row> <col> <value>` line per stored entry in row-major order.
    pub fn to_coo_string(&self) -> String {
        let mut s = format!("{COO_HEADER}\n{} {} {}\n", self.rows, self.cols, self.nnz());
        for (i, j, v) in self.iter() {
            writeln!(s, "{i} {j} {v:?}").unwrap();
        }
        s
    }

    pub fn save_coo(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_coo_string()).map_err(|e| Error::io(path, e))
    }

    pub fn load_coo(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut lines = text.lines();
        let header = lines.next().unwrap_or("");
        if header != COO_HEADER {
            return Err(Error::Format {
                path: path.into(),
                expected: COO_HEADER.into(),
                found: header.into(),
            });
        }
        let dims: Vec<usize> = lines
            .next()
            .unwrap_or("")
            .split(' ')
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::parse(path, 2, "expected `<rows> <cols> <nnz>`"))
            })
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = dims[..] else {
            return Err(Error::parse(path, 2, "expected `<rows> <cols> <nnz>`"));
        };
        let mut triplets = Vec::with_capacity(nnz);
        for (k, line) in lines.enumerate() {
            let bad = || Error::parse(path, k + 3, "expected `<row> <col> <value>`");
            let mut it = line.split(' ');
            let i = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            let j = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            let v = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            if it.next().is_some() {
                return Err(bad());
            }
            triplets.push((i, j, v));
        }
        if triplets.len() != nnz {
            return Err(Error::parse(
                path,
                2,
                format!("declared {nnz} entries, found {}", triplets.len()),
            ));
        }
        SparseMatrix::from_triplets(rows, cols, triplets)
    }
}
