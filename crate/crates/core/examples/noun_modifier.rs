//! Classify the fixture noun-modifier pairs by their nearest neighbour.

use relpat::eval::{classify_noun_modifiers, format_class_table, load_noun_modifiers};
use relpat::prelude::*;

fn main() -> relpat::Result<()> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let index = PositionalIndex::build(relpat::corpus::load_lines(format!("{data}/corpus.txt"))?)?;
    let lexicon = NounLexicon::load(format!("{data}/nouns.txt"))?;
    let items = load_noun_modifiers(format!("{data}/mini_nounmod.tsv"))?;
    let pairs: Vec<WordPair> = items.iter().map(|m| m.pair()).collect();
    let model = Model::mine(
        &index,
        &lexicon,
        &pairs,
        &MineParams {
            min_pair_freq: 1,
            ..MineParams::default()
        },
    )?;

    let (report, predictions) = classify_noun_modifiers(&items, &model.ranked_lists(Ranker::Pertinence));
    for (item, p) in items.iter().zip(&predictions) {
        match p {
            Some(p) => println!(
                "{:<16} {:<12} -> {:<12} via {} (\"{}\")",
                item.pair().to_string(),
                item.label.as_str(),
                p.label.as_str(),
                items[p.neighbour].pair(),
                p.shared.pattern
            ),
            None => println!("{:<16} unanswered", item.pair().to_string()),
        }
    }
    println!();
    print!("{}", format_class_table(&report));
    Ok(())
}
