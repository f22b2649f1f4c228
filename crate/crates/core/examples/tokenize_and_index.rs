//! Tokenize a few documents, build the positional index, and round-trip it
//! through its text format.

use relpat::corpus::{tokenize, Document, PositionalIndex};

fn main() -> relpat::Result<()> {
    let texts = ["The mason cut the stone.", "Carpenters (and masons) work wood & stone!"];
    for t in texts {
        println!("{t:?} -> {:?}", tokenize(t));
    }
    let docs = texts
        .iter()
        .enumerate()
        .map(|(i, t)| Document::from_text(i as u32 + 1, t))
        .collect::<relpat::Result<Vec<_>>>()?;
    let index = PositionalIndex::build(docs)?;
    println!(
        "{} documents, {} tokens, {} types",
        index.num_documents(),
        index.num_tokens(),
        index.vocabulary_size()
    );
    println!("stone occurs at {:?}", index.postings("stone"));
    println!(
        "tokens starting with \"mas\": {:?}",
        index.tokens_with_prefix("mas").collect::<Vec<_>>()
    );

    let dir = tempfile::tempdir().expect("temporary directory");
    let path = dir.path().join("index.txt");
    index.save(&path)?;
    assert_eq!(PositionalIndex::load(&path)?, index);
    print!("{}", std::fs::read_to_string(&path).unwrap());
    Ok(())
}
