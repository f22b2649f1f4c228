use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SparseMatrix;
use crate::{Error, Result};

pub const DEFAULT_SVD_RANK: usize = 300;
pub const FACTORS_HEADER: &str = "relpat-factors v1";

/// Above this many dense cells `SvdMethod::Auto` switches to the randomized solver.
const DENSE_CELL_LIMIT: usize = 16_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SvdMethod {
    Auto,
    /// Full dense SVD, then truncation. Exact.
    Dense,
    /// Randomized range finder with subspace iteration over the sparse matrix.
    Randomized {
        oversample: usize,
        power_iters: usize,
    },
}

/// Rank-`k` factors `U_k Σ_k V_kᵀ` with singular values in decreasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdFactors {
    /// rows × k, orthonormal columns
    pub u: DMatrix<f64>,
    pub sigma: DVector<f64>,
    /// cols × k, orthonormal columns
    pub v: DMatrix<f64>,
}

impl SvdFactors {
    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    /// `U_k Σ_k`, whose rows carry all the geometry needed for row cosines.
    pub fn scaled_u(&self) -> DMatrix<f64> {
        let mut us = self.u.clone();
        for (t, s) in self.sigma.iter().enumerate() {
            us.column_mut(t).scale_mut(*s);
        }
        us
    }

    /// Cell `(i, j)` of `U_k Σ_k V_kᵀ`.
    pub fn cell(&self, i: usize, j: usize) -> f64 {
        (0..self.rank())
            .map(|t| self.u[(i, t)] * self.sigma[t] * self.v[(j, t)])
            .sum()
    }

    pub fn reconstruct(&self) -> DMatrix<f64> {
        self.scaled_u() * self.v.transpose()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{FACTORS_HEADER}\n{} {} {}\n",
            self.u.nrows(),
            self.v.nrows(),
            self.rank()
        );
        let join = |it: &mut dyn Iterator<Item = f64>| it.map(|v| format!("{v:?}")).collect::<Vec<_>>().join(" ");
        writeln!(s, "{}", join(&mut self.sigma.iter().copied())).unwrap();
        for m in [&self.u, &self.v] {
            for i in 0..m.nrows() {
                writeln!(s, "{}", join(&mut m.row(i).iter().copied())).unwrap();
            }
        }
        s
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut lines = text.lines().enumerate();
        let header = lines.next().map(|(_, l)| l).unwrap_or("");
        if header != FACTORS_HEADER {
            return Err(Error::Format {
                path: path.into(),
                expected: FACTORS_HEADER.into(),
                found: header.into(),
            });
        }
        let mut numbers = |expect: usize| -> Result<Vec<f64>> {
            let (i, line) = lines
                .next()
                .ok_or_else(|| Error::parse(path, 0, "truncated factors file"))?;
            let vals: Vec<f64> = if line.is_empty() {
                Vec::new()
            } else {
                line.split(' ')
                    .map(|t| {
                        t.parse()
                            .map_err(|_| Error::parse(path, i + 1, format!("bad number {t:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            if vals.len() != expect {
                return Err(Error::parse(
                    path,
                    i + 1,
                    format!("expected {expect} values, found {}", vals.len()),
                ));
            }
            Ok(vals)
        };
        let dims = numbers(3)?;
        let (rows, cols, k) = (dims[0] as usize, dims[1] as usize, dims[2] as usize);
        let sigma = DVector::from_vec(numbers(k)?);
        let mut read = |n: usize| -> Result<DMatrix<f64>> {
            let mut data = Vec::with_capacity(n * k);
            for _ in 0..n {
                data.extend(numbers(k)?);
            }
            Ok(DMatrix::from_row_slice(n, k, &data))
        };
        let u = read(rows)?;
        let v = read(cols)?;
        Ok(SvdFactors { u, sigma, v })
    }
}

/// Truncated SVD with the automatic backend choice.
pub fn truncated_svd(m: &SparseMatrix, k: usize) -> Result<SvdFactors> {
    truncated_svd_with(m, k, SvdMethod::Auto)
}

/// Top-`k` singular triplets of `m`.
///
/// `k` is clamped to `min(rows, cols)` (with a warning) and then to the
/// numerical rank, so no zero singular values are returned. Singular vector
/// signs are fixed so the largest-magnitude entry of each `U` column is
/// positive.
pub fn truncated_svd_with(m: &SparseMatrix, k: usize, method: SvdMethod) -> Result<SvdFactors> {
    if k == 0 {
        return Err(Error::InvalidRank);
    }
    if m.iter().all(|(_, _, v)| v == 0.0) {
        return Err(Error::EmptyMatrix("cannot factor an all-zero matrix".into()));
    }
    let limit = m.rows().min(m.cols());
    let k = if k > limit {
        log::warn!(
            "SVD rank {k} exceeds matrix dimensions {}x{}, using {limit}",
            m.rows(),
            m.cols()
        );
        limit
    } else {
        k
    };
    let method = match method {
        SvdMethod::Auto if m.rows() * m.cols() <= DENSE_CELL_LIMIT => SvdMethod::Dense,
        SvdMethod::Auto => SvdMethod::Randomized {
            oversample: 10,
            power_iters: 4,
        },
        other => other,
    };
    let (mut u, sigma, mut v) = match method {
        SvdMethod::Dense | SvdMethod::Auto => dense_svd(m),
        SvdMethod::Randomized {
            oversample,
            power_iters,
        } => randomized_svd(m, k, oversample, power_iters),
    };
    // An empty row of `m` has an exactly zero row in `U`; clear the rounding
    // noise so its cosines come out as 0.
    for i in 0..m.rows() {
        if m.row(i).1.iter().all(|&x| x == 0.0) {
            u.row_mut(i).fill(0.0);
        }
    }
    let mut col_used = vec![false; m.cols()];
    for (_, j, x) in m.iter() {
        col_used[j] |= x != 0.0;
    }
    for (j, used) in col_used.into_iter().enumerate() {
        if !used {
            v.row_mut(j).fill(0.0);
        }
    }
    Ok(truncate(u, sigma, v, k, m.rows().max(m.cols())))
}

fn dense_svd(m: &SparseMatrix) -> (DMatrix<f64>, DVector<f64>, DMatrix<f64>) {
    let svd = m.to_dense().svd(true, true);
    let u = svd.u.expect("requested U");
    let v = svd.v_t.expect("requested Vᵀ").transpose();
    (u, svd.singular_values, v)
}

fn randomized_svd(
    m: &SparseMatrix,
    k: usize,
    oversample: usize,
    power_iters: usize,
) -> (DMatrix<f64>, DVector<f64>, DMatrix<f64>) {
    let width = (k + oversample).min(m.rows().min(m.cols()));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let omega = DMatrix::from_fn(m.cols(), width, |_, _| rng.random_range(-1.0..1.0));
    let mut q = m.mul_dense(&omega).qr().q();
    for _ in 0..power_iters {
        let z = m.tr_mul_dense(&q).qr().q();
        q = m.mul_dense(&z).qr().q();
    }
    // B = Qᵀ A, factored through its transpose Aᵀ Q (cols × width)
    let bt = m.tr_mul_dense(&q);
    let svd = bt.svd(true, true);
    let v = svd.u.expect("requested U");
    let u = q * svd.v_t.expect("requested Vᵀ").transpose();
    (u, svd.singular_values, v)
}

fn truncate(u: DMatrix<f64>, sigma: DVector<f64>, v: DMatrix<f64>, k: usize, max_dim: usize) -> SvdFactors {
    let mut order: Vec<usize> = (0..sigma.len()).collect();
    order.sort_by(|&a, &b| sigma[b].total_cmp(&sigma[a]).then(a.cmp(&b)));
    let tol = sigma[order[0]] * max_dim as f64 * f64::EPSILON;
    let keep: Vec<usize> = order.into_iter().filter(|&t| sigma[t] > tol).take(k).collect();
    let mut u_k = u.select_columns(&keep);
    let mut v_k = v.select_columns(&keep);
    for t in 0..keep.len() {
        let col = u_k.column(t);
        let pivot =
            col.iter().copied().enumerate().fold(
                (0, 0.0f64),
                |best, (i, x)| {
                    if x.abs() > best.1.abs() {
                        (i, x)
                    } else {
                        best
                    }
                },
            );
        if pivot.1 < 0.0 {
            u_k.column_mut(t).neg_mut();
            v_k.column_mut(t).neg_mut();
        }
    }
    let sigma_k = DVector::from_iterator(keep.len(), keep.iter().map(|&t| sigma[t]));
    SvdFactors {
        u: u_k,
        sigma: sigma_k,
        v: v_k,
    }
}
