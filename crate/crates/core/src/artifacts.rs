//! On-disk layout of a mining run.
//!
//! ```text
//! <dir>/manifest.json        settings and counts of the run
//! <dir>/pairs.tsv            id, x, y of every input pair
//! <dir>/phrases.tsv          pair id, orientation, occurrence count, phrase
//! <dir>/patterns.tsv         retained canonical patterns with pair frequency
//! <dir>/patterns_unfiltered.tsv  the same before the pair-frequency filter
//! <dir>/rows.tsv             row, pair id, direction, words
//! <dir>/cols.tsv             column, pattern, orientation, mirrored flag
//! <dir>/raw.coo              pattern frequencies
//! <dir>/transformed.coo      log-entropy weighted matrix
//! <dir>/pattern_given_pair.coo, pair_given_pattern.coo
//! <dir>/factors.txt          truncated SVD factors
//! ```
//!
//! Everything is plain UTF-8 text written in a fixed order, so identical
//! inputs produce byte-identical files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::matrix::{ColMap, PairPatternMatrix, RowKey, RowMap, SparseMatrix, SvdFactors};
use crate::pair::{Direction, Orientation, WordPair};
use crate::patterns::Pattern;
use crate::pipeline::{MineCounts, MineRun, Model};
use crate::{Error, Result};

pub const MANIFEST_VERSION: u32 = 1;

/// Everything needed to reproduce a run, plus what it produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub index: PathBuf,
    pub lexicon: Option<PathBuf>,
    pub pairs_source: PathBuf,
    pub min_pair_freq: u32,
    pub svd_rank: usize,
    pub max_intervening: usize,
    pub counts: MineCounts,
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Error::io(path, e))
}

fn read(dir: &Path, name: &str) -> Result<(PathBuf, String)> {
    let path = dir.join(name);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    Ok((path, text))
}

/// Data lines of a TSV artifact, skipping the header, with 1-based line numbers.
fn records<'a>(
    text: &'a str,
    min_fields: usize,
    path: &'a Path,
) -> impl Iterator<Item = Result<(usize, Vec<&'a str>)>> + 'a {
    text.lines().enumerate().skip(1).map(move |(i, line)| {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < min_fields {
            Err(Error::parse(
                path,
                i + 1,
                format!("expected {min_fields} tab-separated fields"),
            ))
        } else {
            Ok((i + 1, fields))
        }
    })
}

pub fn save_run(dir: impl AsRef<Path>, run: &MineRun, manifest: &Manifest) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let model = &run.model;

    let mut pairs = String::from("id\tx\ty\n");
    for (id, p) in model.pairs.iter().enumerate() {
        writeln!(pairs, "{id}\t{}\t{}", p.x, p.y).unwrap();
    }
    write(dir, "pairs.tsv", &pairs)?;

    let mut phrases = String::from("pair\torientation\tcount\tphrase\n");
    for lists in &run.phrases {
        for ph in lists.x_first.iter().chain(&lists.y_first) {
            writeln!(
                phrases,
                "{}\t{}\t{}\t{}",
                ph.pair_id,
                ph.orientation,
                ph.count,
                ph.surface()
            )
            .unwrap();
        }
    }
    write(dir, "phrases.tsv", &phrases)?;

    write(dir, "patterns.tsv", &pattern_dump(run.stats.pair_frequencies()))?;
    write(
        dir,
        "patterns_unfiltered.tsv",
        &pattern_dump(run.unfiltered.pair_frequencies()),
    )?;

    let mut rows = String::from("row\tpair\tdirection\tx\ty\n");
    for (i, key, words) in model.matrix.rows.iter() {
        writeln!(
            rows,
            "{i}\t{}\t{}\t{}\t{}",
            key.pair_id, key.direction, words.x, words.y
        )
        .unwrap();
    }
    write(dir, "rows.tsv", &rows)?;

    let mut cols = String::from("col\tpattern\torientation\tmirrored\n");
    for j in 0..model.matrix.cols.len() {
        let c = &model.matrix.cols;
        writeln!(
            cols,
            "{j}\t{}\t{}\t{}",
            c.pattern(j),
            c.orientation(j),
            c.key(j).mirrored
        )
        .unwrap();
    }
    write(dir, "cols.tsv", &cols)?;

    write(dir, "raw.coo", &model.matrix.raw.to_coo_string())?;
    write(dir, "transformed.coo", &model.transformed.to_coo_string())?;
    write(
        dir,
        "pattern_given_pair.coo",
        &model.conditionals.pattern_given_pair.to_coo_string(),
    )?;
    write(
        dir,
        "pair_given_pattern.coo",
        &model.conditionals.pair_given_pattern.to_coo_string(),
    )?;
    write(dir, "factors.txt", &model.factors.to_text())?;

    let json = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    write(dir, "manifest.json", &(json + "\n"))
}

/// `pattern<TAB>pair frequency` per canonical (`X ... Y`) pattern, in
/// column order. Each line stands for two matrix columns.
pub fn pattern_dump(pair_freq: &BTreeMap<Pattern, u32>) -> String {
    let mut s = String::from("pattern\tpair_frequency\n");
    for (p, n) in pair_freq {
        writeln!(s, "{p}\t{n}").unwrap();
    }
    s
}

pub fn load_manifest(dir: impl AsRef<Path>) -> Result<Manifest> {
    let (path, text) = read(dir.as_ref(), "manifest.json")?;
    let manifest: Manifest = serde_json::from_str(&text).map_err(|e| Error::parse(&path, e.line(), e.to_string()))?;
    if manifest.version != MANIFEST_VERSION {
        return Err(Error::Format {
            path,
            expected: format!("version {MANIFEST_VERSION}"),
            found: format!("version {}", manifest.version),
        });
    }
    Ok(manifest)
}

/// Load a mined model. Derived tables (conditionals, cosines, pertinence)
/// are recomputed from the stored matrix and factors.
pub fn load_model(dir: impl AsRef<Path>) -> Result<(Model, Manifest)> {
    let dir = dir.as_ref();
    let manifest = load_manifest(dir)?;

    let (path, text) = read(dir, "pairs.tsv")?;
    let mut pairs = Vec::new();
    for rec in records(&text, 3, &path) {
        let (line, f) = rec?;
        if f[0].parse() != Ok(pairs.len()) {
            return Err(Error::parse(&path, line, "pair ids must be 0, 1, 2, ..."));
        }
        pairs.push(WordPair::new(f[1], f[2]));
    }

    let (path, text) = read(dir, "rows.tsv")?;
    let mut row_labels = Vec::new();
    for rec in records(&text, 5, &path) {
        let (line, f) = rec?;
        let bad = |what: &str| Error::parse(&path, line, format!("bad {what}"));
        let pair_id: usize = f[1].parse().map_err(|_| bad("pair id"))?;
        let direction = Direction::parse(f[2]).ok_or_else(|| bad("direction"))?;
        row_labels.push((RowKey { pair_id, direction }, WordPair::new(f[3], f[4])));
    }

    let (path, text) = read(dir, "patterns.tsv")?;
    let mut canonical = Vec::new();
    for rec in records(&text, 2, &path) {
        let (line, f) = rec?;
        let bad = |what: &str| Error::parse(&path, line, format!("bad {what}"));
        let pattern: Pattern = f[0].parse().map_err(|_| bad("pattern"))?;
        let n: u32 = f[1].parse().map_err(|_| bad("pair frequency"))?;
        if pattern.orientation() != Orientation::XFirst {
            return Err(bad("pattern orientation"));
        }
        canonical.push((pattern, n));
    }
    let cols = ColMap::new(canonical);

    let raw = SparseMatrix::load_coo(dir.join("raw.coo"))?;
    let transformed = SparseMatrix::load_coo(dir.join("transformed.coo"))?;
    let factors = SvdFactors::load(dir.join("factors.txt"))?;
    let rows = RowMap::new(row_labels);
    if raw.rows() != rows.len() || raw.cols() != cols.len() || factors.u.nrows() != rows.len() {
        return Err(Error::Data(format!(
            "artifacts in {} disagree: {} rows / {} columns in maps, {}x{} matrix",
            dir.display(),
            rows.len(),
            cols.len(),
            raw.rows(),
            raw.cols()
        )));
    }
    let matrix = PairPatternMatrix { rows, cols, raw };
    Ok((Model::assemble(pairs, matrix, transformed, factors), manifest))
}
