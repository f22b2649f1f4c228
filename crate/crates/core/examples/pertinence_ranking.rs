//! Mine the fixture analogy pairs and print the top patterns of a pair under
//! pertinence, next to the raw frequency ranking.

use relpat::prelude::*;

fn main() -> relpat::Result<()> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let index = PositionalIndex::build(relpat::corpus::load_lines(format!("{data}/corpus.txt"))?)?;
    let lexicon = NounLexicon::load(format!("{data}/nouns.txt"))?;
    let questions = relpat::eval::load_analogies(format!("{data}/mini_analogies.txt"))?;
    let pairs = relpat::cli::dedup(
        questions
            .iter()
            .flat_map(|q| q.pairs().cloned().collect::<Vec<_>>())
            .collect(),
    );

    let params = MineParams {
        min_pair_freq: 1,
        ..MineParams::default()
    };
    let model = Model::mine(&index, &lexicon, &pairs, &params)?;
    let pair = WordPair::new("ostrich", "bird");
    for ranker in [Ranker::Pertinence, Ranker::RawTf] {
        let lists = model.ranked_lists(ranker);
        let row = lists.for_pair(&pair).expect("mined");
        println!("{pair} by {}", ranker.label());
        for e in row.y_first.entries.iter().take(4) {
            println!("  {:>2}  {:.4}  {}", e.rank, e.score, e.pattern);
        }
    }
    Ok(())
}
