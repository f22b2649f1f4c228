//! Weight a small frequency matrix, factor it, and compare row cosines.

use relpat::matrix::{entropy_weights, log_entropy_transform, truncated_svd, RowSimilarity, SparseMatrix};

fn main() -> relpat::Result<()> {
    // rows: pairs; columns: patterns
    let raw = SparseMatrix::from_triplets(
        4,
        3,
        vec![
            (0, 0, 4.0),
            (0, 1, 1.0),
            (1, 0, 3.0),
            (1, 1, 1.0),
            (2, 2, 5.0),
            (3, 1, 2.0),
            (3, 2, 2.0),
        ],
    )?;
    println!("column weights {:?}", entropy_weights(&raw));
    let x = log_entropy_transform(&raw);
    let factors = truncated_svd(&x, 2)?;
    println!("singular values {:?}", factors.sigma.as_slice());
    let sim = RowSimilarity::new(&factors);
    for (a, b) in [(0, 1), (0, 2), (2, 3)] {
        println!("cos(row {a}, row {b}) = {:.4}", sim.sim(a, b)?);
    }
    Ok(())
}
