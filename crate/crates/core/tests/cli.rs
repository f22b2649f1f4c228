mod common;

use std::fs;
use std::path::Path;

use common::*;

fn stderr(out: &std::process::Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn stdout(out: &std::process::Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// Index the fixture corpus and mine the analogy pairs into `dir`.
fn mined(dir: &Path) {
    let out = path_str(dir);
    relpat_ok(&[
        "index",
        "--corpus",
        path_str(&data("corpus.txt")),
        "--format",
        "lines",
        "--output-dir",
        out,
    ]);
    relpat_ok(&[
        "mine",
        "--from-analogies",
        path_str(&data("mini_analogies.txt")),
        "--lexicon",
        path_str(&data("nouns.txt")),
        "--min-pair-freq",
        "1",
        "--output-dir",
        out,
    ]);
}

#[test]
fn index_a_directory_of_files() {
    let corpus = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("a.txt", "The mason cut the stone."),
        ("b.txt", "A carpenter: wood"),
        ("c.txt", "one more"),
    ] {
        fs::write(corpus.path().join(name), text).unwrap();
    }
    let out = tempfile::tempdir().unwrap();
    let args = [
        "index",
        "--corpus",
        path_str(corpus.path()),
        "--output-dir",
        path_str(out.path()),
    ];
    let first = relpat_ok(&args);
    assert!(stdout(&first).contains("documents 3"), "{}", stdout(&first));
    assert!(stdout(&first).contains("tokens 10"));
    let bytes = fs::read(out.path().join("index.txt")).unwrap();
    relpat_ok(&args);
    assert_eq!(
        fs::read(out.path().join("index.txt")).unwrap(),
        bytes,
        "rerun changed the index"
    );
}

#[test]
fn empty_corpus_directory_is_a_data_error() {
    let corpus = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    let res = relpat(&[
        "index",
        "--corpus",
        path_str(corpus.path()),
        "--output-dir",
        path_str(out.path()),
    ]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr(&res).contains("error"));
}

#[test]
fn usage_errors_exit_with_one() {
    let out = tempfile::tempdir().unwrap();
    let o = path_str(out.path());
    assert_eq!(
        relpat(&["rank", "--output-dir", o, "--ranker", "nonsense"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        relpat(&["rank", "--output-dir", o, "--min-pair-freq", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        relpat(&["rank", "--output-dir", o, "--svd-rank", "0"]).status.code(),
        Some(1)
    );
    assert_eq!(relpat(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        relpat(&["mine", "--output-dir", o]).status.code(),
        Some(1),
        "a pair source is required"
    );
    assert_eq!(relpat(&["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_pair_file_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    mined(dir.path());
    let pairs = dir.path().join("pairs.txt");
    fs::write(&pairs, "ostrich:bird\nlion cat\nthree word line\n").unwrap();
    let res = relpat(&[
        "mine",
        "--pairs",
        path_str(&pairs),
        "--output-dir",
        path_str(dir.path()),
    ]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr(&res).contains("pairs.txt:3"), "{}", stderr(&res));
}

#[test]
fn pairs_that_never_co_occur_give_an_empty_matrix_error() {
    let dir = tempfile::tempdir().unwrap();
    mined(dir.path());
    let pairs = dir.path().join("pairs.txt");
    fs::write(&pairs, "ostrich:monday\nzebra:quasar\n").unwrap();
    let res = relpat(&[
        "mine",
        "--pairs",
        path_str(&pairs),
        "--min-pair-freq",
        "1",
        "--output-dir",
        path_str(dir.path()),
    ]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr(&res).contains("empty matrix"), "{}", stderr(&res));
}

#[test]
fn manifest_counts_match_the_dumps() {
    let dir = tempfile::tempdir().unwrap();
    mined(dir.path());
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    let counts = &manifest["counts"];
    let lines = |name: &str| fs::read_to_string(dir.path().join(name)).unwrap().lines().count() as u64 - 1;
    assert_eq!(counts["patterns_after_filter"].as_u64().unwrap(), lines("patterns.tsv"));
    assert_eq!(
        counts["patterns_before_filter"].as_u64().unwrap(),
        lines("patterns_unfiltered.tsv")
    );
    assert_eq!(counts["columns"].as_u64().unwrap(), lines("cols.tsv"));
    assert_eq!(counts["columns"].as_u64().unwrap(), 2 * lines("patterns.tsv"));
    assert_eq!(counts["rows"].as_u64().unwrap(), lines("rows.tsv"));
    assert_eq!(counts["phrases"].as_u64().unwrap(), lines("phrases.tsv"));
    assert_eq!(counts["input_pairs"].as_u64().unwrap(), lines("pairs.tsv"));
    assert_eq!(manifest["min_pair_freq"], 1);
    assert_eq!(manifest["max_intervening"], 3);
    let coo = fs::read_to_string(dir.path().join("raw.coo")).unwrap();
    let dims: Vec<u64> = coo
        .lines()
        .nth(1)
        .unwrap()
        .split(' ')
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!(
        dims,
        vec![
            counts["rows"].as_u64().unwrap(),
            counts["columns"].as_u64().unwrap(),
            counts["nonzeros"].as_u64().unwrap()
        ]
    );
}

#[test]
fn the_threshold_drops_rare_patterns() {
    let dir = tempfile::tempdir().unwrap();
    mined(dir.path());
    let o = path_str(dir.path());
    relpat_ok(&[
        "mine",
        "--from-analogies",
        path_str(&data("mini_analogies.txt")),
        "--lexicon",
        path_str(&data("nouns.txt")),
        "--min-pair-freq",
        "3",
        "--output-dir",
        o,
    ]);
    for line in fs::read_to_string(dir.path().join("patterns.tsv"))
        .unwrap()
        .lines()
        .skip(1)
    {
        let n: u32 = line.rsplit('\t').next().unwrap().parse().unwrap();
        assert!(n >= 3, "{line}");
    }
    let before = fs::read_to_string(dir.path().join("patterns_unfiltered.tsv"))
        .unwrap()
        .lines()
        .count();
    let after = fs::read_to_string(dir.path().join("patterns.tsv"))
        .unwrap()
        .lines()
        .count();
    assert!(after < before);
}

#[test]
fn rank_exports_two_lists_per_pair() {
    let dir = tempfile::tempdir().unwrap();
    mined(dir.path());
    let o = path_str(dir.path());
    let printed = stdout(&relpat_ok(&[
        "rank",
        "--pair",
        "ostrich:bird",
        "--top",
        "3",
        "--output-dir",
        o,
    ]));
    let lines: Vec<&str> = printed.lines().collect();
    assert_eq!(lines[0], "ostrich:bird  (pertinence)");
    assert_eq!(lines[1].trim(), "XfirstYlast");
    assert_eq!(lines[2].trim(), "(none)", "ostrich only occurs after bird");
    assert_eq!(lines[3].trim(), "YfirstXlast");
    assert!(
        lines[4].ends_with("Y such as the X") && lines[4].trim_start().starts_with("1 "),
        "{}",
        lines[4]
    );
    assert_eq!(lines.len(), 7);

    let tsv = fs::read_to_string(dir.path().join("ranked.tsv")).unwrap();
    assert!(tsv.starts_with("pair\tdirection\torientation\trank\tscore\tpattern\n"));
    assert!(tsv.lines().skip(1).all(|l| l.starts_with("ostrich:bird\tforward\t")));

    let res = relpat(&["rank", "--pair", "ostrich:unicorn", "--output-dir", o]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr(&res).contains("ostrich:unicorn"));
}

#[test]
fn rank_with_random_seed_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    mined(dir.path());
    let o = path_str(dir.path());
    let read = || fs::read(dir.path().join("ranked.tsv")).unwrap();
    relpat_ok(&["rank", "--ranker", "random", "--seed", "11", "--output-dir", o]);
    let a = read();
    relpat_ok(&["rank", "--ranker", "random:11", "--output-dir", o]);
    assert_eq!(read(), a);
    relpat_ok(&["rank", "--ranker", "random", "--seed", "12", "--output-dir", o]);
    assert_ne!(read(), a);
}

#[test]
fn eval_matches_the_hand_computed_report() {
    let dir = tempfile::tempdir().unwrap();
    mined(dir.path());
    let o = path_str(dir.path());
    relpat_ok(&[
        "eval",
        "--task",
        "analogies",
        "--data",
        path_str(&data("mini_analogies.txt")),
        "--output-dir",
        o,
    ]);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    let r = &json[0];
    // questions 1 and 2 answered correctly, question 3's stem never occurs
    assert_eq!(
        (r["total"].as_u64(), r["answered"].as_u64(), r["correct"].as_u64()),
        (Some(3), Some(2), Some(2))
    );
    assert_eq!(r["precision"].as_f64(), Some(100.0));
    assert!((r["recall"].as_f64().unwrap() - 200.0 / 3.0).abs() < 1e-9);
    assert!((r["f"].as_f64().unwrap() - 80.0).abs() < 1e-9);
    let text = fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(text.lines().nth(1).unwrap().contains("pertinence"));
}

#[test]
fn single_question_file() {
    let dir = tempfile::tempdir().unwrap();
    mined(dir.path());
    let q = dir.path().join("one.txt");
    let full = fs::read_to_string(data("mini_analogies.txt")).unwrap();
    fs::write(&q, full.split("\n\n").next().unwrap()).unwrap();
    relpat_ok(&[
        "eval",
        "--task",
        "analogies",
        "--data",
        path_str(&q),
        "--output-dir",
        path_str(dir.path()),
    ]);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(json[0]["total"], 1);
    assert_eq!(json[0]["correct"], 1);
}

#[test]
fn malformed_eval_data_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    mined(dir.path());
    let bad = dir.path().join("bad.tsv");
    fs::write(&bad, "flu\tvirus\tcausality\nfoo\tbar\tcolour\n").unwrap();
    let res = relpat(&[
        "eval",
        "--task",
        "nounmod",
        "--data",
        path_str(&bad),
        "--output-dir",
        path_str(dir.path()),
    ]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr(&res).contains("bad.tsv:2"), "{}", stderr(&res));
}

#[test]
fn config_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(data("corpus.txt"), dir.path().join("corpus.txt")).unwrap();
    fs::copy(data("nouns.txt"), dir.path().join("nouns.txt")).unwrap();
    let config = dir.path().join("relpat.toml");
    fs::write(
        &config,
        "corpus = \"corpus.txt\"\ncorpus_format = \"lines\"\nlexicon = \"nouns.txt\"\noutput_dir = \"out\"\n\
         min_pair_freq = 50\nsvd_rank = 8\nranker = \"pertinence\"\nseed = 3\nworkers = 2\n",
    )
    .unwrap();
    let c = path_str(&config);
    relpat_ok(&["--config", c, "index"]);
    let analogies = data("mini_analogies.txt");
    let res = relpat(&["--config", c, "mine", "--from-analogies", path_str(&analogies)]);
    assert_eq!(res.status.code(), Some(2), "threshold 50 leaves nothing");
    relpat_ok(&[
        "--config",
        c,
        "--min-pair-freq",
        "1",
        "mine",
        "--from-analogies",
        path_str(&analogies),
    ]);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out/manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["min_pair_freq"], 1);
    assert_eq!(manifest["svd_rank"], 8);
    assert_eq!(manifest["counts"]["svd_rank"], 8);

    fs::write(&config, "min_pair_freq = 2\ncolour = \"red\"\n").unwrap();
    assert_eq!(
        relpat(&["--config", c, "index"]).status.code(),
        Some(1),
        "unknown keys are rejected"
    );
}

#[test]
fn nounmod_eval_prints_the_class_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = path_str(dir.path());
    relpat_ok(&[
        "index",
        "--corpus",
        path_str(&data("corpus.txt")),
        "--format",
        "lines",
        "--output-dir",
        o,
    ]);
    let items = data("mini_nounmod.tsv");
    relpat_ok(&[
        "mine",
        "--from-nounmod",
        path_str(&items),
        "--lexicon",
        path_str(&data("nouns.txt")),
        "--min-pair-freq",
        "1",
        "--output-dir",
        o,
    ]);
    let text = stdout(&relpat_ok(&[
        "eval",
        "--task",
        "nounmod",
        "--data",
        path_str(&items),
        "--output-dir",
        o,
    ]));
    for class in ["causality", "participant", "spatial", "all"] {
        assert!(
            text.lines().any(|l| l.starts_with(class)),
            "{class} missing from\n{text}"
        );
    }
}
