//! Find the phrases that join a word pair in the fixture corpus.

use relpat::corpus::{self, expand_word_forms, find_phrases, NounLexicon, PositionalIndex};
use relpat::pair::WordPair;

fn main() -> relpat::Result<()> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let index = PositionalIndex::build(corpus::load_lines(format!("{data}/corpus.txt"))?)?;
    let lexicon = NounLexicon::load(format!("{data}/nouns.txt"))?;

    for pair in [WordPair::new("worker", "strike"), WordPair::new("goose", "flock")] {
        let forms = expand_word_forms(&pair.x, lexicon.is_likely_noun(&pair.x), &index);
        println!("{pair}  (forms of {}: {forms:?})", pair.x);
        let lists = find_phrases(&index, 0, &pair, &lexicon);
        for p in lists.x_first.iter().chain(&lists.y_first) {
            println!("  {:<12} x{}  {}", p.orientation.as_str(), p.count, p.surface());
        }
    }
    Ok(())
}
