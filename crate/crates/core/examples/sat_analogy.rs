//! Answer multiple-choice analogy questions from hand-made ranked lists, and
//! show the shared pattern behind each answer.

use relpat::eval::{parse_analogies, solve_question, Answer};
use relpat::matrix::{ColMap, RowKey, RowMap, SparseMatrix};
use relpat::pair::{Direction, WordPair};
use relpat::pertinence::RankedLists;

/// A pair and its scored patterns.
type Scored<'a> = (&'a str, &'a str, &'a [(&'a str, f64)]);

fn main() -> relpat::Result<()> {
    let questions = parse_analogies(
        "mason stone\nteacher chalk\ncarpenter wood\nsoldier gun\nphotograph camera\nbook word\nanswer: b\n",
        "inline".as_ref(),
    )?;
    let patterns = ["X cuts Y", "X uses Y", "X works with Y", "X * Y"];
    let cols = ColMap::new(patterns.iter().map(|p| (p.parse().unwrap(), 1)));
    let scored: [Scored; 3] = [
        (
            "mason",
            "stone",
            &[("X works with Y", 0.9), ("X cuts Y", 0.8), ("X * Y", 0.1)],
        ),
        ("carpenter", "wood", &[("X works with Y", 0.7), ("X cuts Y", 0.6)]),
        ("teacher", "chalk", &[("X uses Y", 0.9), ("X works with Y", 0.2)]),
    ];
    let mut labels = Vec::new();
    let mut cells = Vec::new();
    for (id, (x, y, pats)) in scored.iter().enumerate() {
        labels.push((
            RowKey {
                pair_id: id,
                direction: Direction::Forward,
            },
            WordPair::new(*x, *y),
        ));
        labels.push((
            RowKey {
                pair_id: id,
                direction: Direction::Reversed,
            },
            WordPair::new(*y, *x),
        ));
        for (p, s) in pats.iter() {
            cells.push((2 * id, cols.find(&p.parse()?).unwrap(), *s));
        }
    }
    let rows = RowMap::new(labels);
    let lists = RankedLists::build(
        &SparseMatrix::from_triplets(rows.len(), cols.len(), cells)?,
        &rows,
        &cols,
    );

    for q in &questions {
        match solve_question(q, &lists) {
            Answer::Guess { choice, best } => println!(
                "{} :: {}  (shared \"{}\", score {})  {}",
                q.stem,
                q.choices[choice],
                best.pattern,
                best.score,
                if choice == q.answer { "correct" } else { "wrong" }
            ),
            Answer::Skip(reason) => println!("{}: skipped ({reason:?})", q.stem),
        }
    }
    Ok(())
}
