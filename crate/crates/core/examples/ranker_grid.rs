//! Score the fixture analogy questions with every ranker.

use relpat::eval::{evaluate_analogies, format_grid, load_analogies};
use relpat::prelude::*;

fn main() -> relpat::Result<()> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let index = PositionalIndex::build(relpat::corpus::load_lines(format!("{data}/corpus.txt"))?)?;
    let lexicon = NounLexicon::load(format!("{data}/nouns.txt"))?;
    let questions = load_analogies(format!("{data}/mini_analogies.txt"))?;
    let pairs = relpat::cli::dedup(
        questions
            .iter()
            .flat_map(|q| q.pairs().cloned().collect::<Vec<_>>())
            .collect(),
    );
    let model = Model::mine(
        &index,
        &lexicon,
        &pairs,
        &MineParams {
            min_pair_freq: 1,
            ..MineParams::default()
        },
    )?;

    let rankers = Ranker::comparison_grid(42);
    let reports: Vec<EvalReport> = rankers
        .iter()
        .map(|&r| evaluate_analogies(&questions, &model.ranked_lists(r)))
        .collect();
    let rows: Vec<(String, &EvalReport)> = rankers.iter().map(|r| r.label()).zip(&reports).collect();
    print!("{}", format_grid(&rows));
    Ok(())
}
