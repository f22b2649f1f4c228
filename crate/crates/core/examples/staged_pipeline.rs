//! The command line's stages run in-process: index, mine to disk, reload,
//! rank and evaluate.

use clap::Parser;
use relpat::cli::Cli;

fn main() -> relpat::Result<()> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let (corpus, nouns, questions) = (
        format!("{data}/corpus.txt"),
        format!("{data}/nouns.txt"),
        format!("{data}/mini_analogies.txt"),
    );
    let dir = tempfile::tempdir().expect("temporary directory");
    let out = dir.path().to_str().unwrap();
    let stages: [&[&str]; 4] = [
        &["index", "--corpus", &corpus, "--format", "lines"],
        &["mine", "--from-analogies", &questions, "--lexicon", &nouns],
        &["rank", "--pair", "mason:stone", "--top", "3"],
        &["eval", "--task", "analogies", "--data", &questions, "--ranker", "all"],
    ];
    for stage in stages {
        println!("$ relpat {}", stage.join(" "));
        let global = ["relpat", "--output-dir", out, "--min-pair-freq", "1"];
        relpat::cli::run(Cli::parse_from(global.iter().chain(stage)))?;
        println!();
    }
    let mut files: Vec<String> = std::fs::read_dir(out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    files.sort();
    println!("artifacts: {}", files.join(" "));
    Ok(())
}
