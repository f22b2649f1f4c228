#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use relpat::corpus::{self, NounLexicon, PositionalIndex};
use relpat::eval::{load_analogies, load_noun_modifiers, AnalogyQuestion, LabeledNounModifier};
use relpat::pair::WordPair;
use relpat::pipeline::{MineParams, MineRun, Model};

pub fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn index() -> PositionalIndex {
    PositionalIndex::build(corpus::load_lines(data("corpus.txt")).unwrap()).unwrap()
}

pub fn lexicon() -> NounLexicon {
    NounLexicon::load(data("nouns.txt")).unwrap()
}

pub fn questions() -> Vec<AnalogyQuestion> {
    load_analogies(data("mini_analogies.txt")).unwrap()
}

pub fn noun_modifiers() -> Vec<LabeledNounModifier> {
    load_noun_modifiers(data("mini_nounmod.tsv")).unwrap()
}

pub fn analogy_pairs() -> Vec<WordPair> {
    relpat::cli::dedup(
        questions()
            .iter()
            .flat_map(|q| q.pairs().cloned().collect::<Vec<_>>())
            .collect(),
    )
}

pub fn nounmod_pairs() -> Vec<WordPair> {
    noun_modifiers().iter().map(|m| m.pair()).collect()
}

pub fn params() -> MineParams {
    MineParams {
        min_pair_freq: 1,
        ..MineParams::default()
    }
}

pub fn mine(pairs: &[WordPair]) -> MineRun {
    Model::mine_run(&index(), &lexicon(), pairs, &params()).unwrap()
}

/// Both fixture runs: analogy pairs and noun-modifier pairs.
pub fn fixture_runs() -> Vec<MineRun> {
    vec![mine(&analogy_pairs()), mine(&nounmod_pairs())]
}

pub fn relpat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relpat"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("relpat runs")
}

/// Run relpat and insist on success.
pub fn relpat_ok(args: &[&str]) -> Output {
    let out = relpat(args);
    assert!(
        out.status.success(),
        "relpat {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}
