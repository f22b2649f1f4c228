//! The `relpat` command line.
//!
//! Four stages, each reading the artifacts of the one before from the output
//! directory:
//!
//! ```text
//! relpat index --corpus corpus.txt --format lines     -> index.txt
//! relpat mine  --from-analogies questions.txt          -> pairs, phrases, patterns, matrices, factors, manifest.json
//! relpat rank  [--pair ostrich:bird] [--top 10]        -> ranked.tsv
//! relpat eval  --task analogies --data questions.txt  -> report.txt, report.json
//! ```
//!
//! Settings come from an optional TOML file (`--config`); flags override it.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::artifacts::{self, Manifest, MANIFEST_VERSION};
use crate::corpus::{self, NounLexicon, PositionalIndex, MAX_INTERVENING};
use crate::eval::{
    classify_noun_modifiers, evaluate_analogies, format_class_table, format_grid, load_analogies, load_noun_modifiers,
    EvalReport,
};
use crate::matrix::DEFAULT_SVD_RANK;
use crate::pair::WordPair;
use crate::pertinence::Ranker;
use crate::pipeline::{MineParams, Model, DEFAULT_MIN_PAIR_FREQ};
use crate::{Error, Result};

pub const INDEX_FILE: &str = "index.txt";
pub const RANKED_FILE: &str = "ranked.tsv";
pub const REPORT_TEXT: &str = "report.txt";
pub const REPORT_JSON: &str = "report.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CorpusFormat {
    /// A directory with one document per file.
    #[default]
    Dir,
    /// A single file with one document per line.
    Lines,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Task {
    Analogies,
    Nounmod,
}

/// Which rankers to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankerChoice {
    One(Ranker),
    /// The whole comparison grid.
    All,
}

impl RankerChoice {
    /// `all`, or any ranker name. A bare `random` takes its seed from `seed`.
    pub fn parse(s: &str, seed: u64) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("all") {
            return Ok(RankerChoice::All);
        }
        let ranker: Ranker = s.parse()?;
        Ok(RankerChoice::One(match ranker {
            Ranker::Random(_) if !s.contains(':') => Ranker::Random(seed),
            r => r,
        }))
    }

    pub fn rankers(self, seed: u64) -> Vec<Ranker> {
        match self {
            RankerChoice::One(r) => vec![r],
            RankerChoice::All => Ranker::comparison_grid(seed),
        }
    }
}

/// Contents of the configuration file. Every field is optional; relative
/// paths are resolved against the file's directory.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub corpus: Option<PathBuf>,
    pub corpus_format: Option<CorpusFormat>,
    pub lexicon: Option<PathBuf>,
    pub output_dir: Option<PathBuf>,
    pub min_pair_freq: Option<u32>,
    pub svd_rank: Option<usize>,
    pub ranker: Option<String>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg: ConfigFile =
            toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {}", path.display(), e.message())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.corpus, &mut cfg.lexicon, &mut cfg.output_dir]
            .into_iter()
            .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }
}

/// Settings after merging the config file with flags.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub corpus: Option<PathBuf>,
    pub corpus_format: CorpusFormat,
    pub lexicon: Option<PathBuf>,
    pub output_dir: PathBuf,
    pub min_pair_freq: u32,
    pub svd_rank: usize,
    /// Always 3; recorded in the manifest.
    pub max_intervening: usize,
    pub ranker: RankerChoice,
    pub seed: u64,
    pub workers: Option<usize>,
}

impl PipelineConfig {
    pub fn resolve(file: ConfigFile, flags: &GlobalArgs) -> Result<Self> {
        let seed = flags.seed.or(file.seed).unwrap_or(0);
        let ranker = flags
            .ranker
            .clone()
            .or(file.ranker)
            .unwrap_or_else(|| "pertinence".into());
        let cfg = PipelineConfig {
            corpus: file.corpus,
            corpus_format: file.corpus_format.unwrap_or_default(),
            lexicon: file.lexicon,
            output_dir: flags
                .output_dir
                .clone()
                .or(file.output_dir)
                .unwrap_or_else(|| "relpat-out".into()),
            min_pair_freq: flags
                .min_pair_freq
                .or(file.min_pair_freq)
                .unwrap_or(DEFAULT_MIN_PAIR_FREQ),
            svd_rank: flags.svd_rank.or(file.svd_rank).unwrap_or(DEFAULT_SVD_RANK),
            max_intervening: MAX_INTERVENING,
            ranker: RankerChoice::parse(&ranker, seed)?,
            seed,
            workers: flags.workers.or(file.workers),
        };
        if cfg.min_pair_freq < 1 {
            return Err(Error::InvalidThreshold(cfg.min_pair_freq));
        }
        if cfg.svd_rank < 1 {
            return Err(Error::InvalidRank);
        }
        if cfg.workers == Some(0) {
            return Err(Error::Config("--workers must be at least 1".into()));
        }
        Ok(cfg)
    }

    pub fn mine_params(&self) -> MineParams {
        MineParams {
            min_pair_freq: self.min_pair_freq,
            svd_rank: self.svd_rank,
            ..MineParams::default()
        }
    }

    fn out(&self, name: &str) -> PathBuf {
        self.output_dir.join(name)
    }
}

#[derive(Debug, Parser)]
#[command(name = "relpat", version, about = "Mine and rank relational patterns for word pairs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// TOML configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Where artifacts are read and written.
    #[arg(long, global = true)]
    pub output_dir: Option<PathBuf>,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Minimum number of pairs a pattern must occur with.
    #[arg(long, global = true)]
    pub min_pair_freq: Option<u32>,
    #[arg(long, global = true)]
    pub svd_rank: Option<usize>,
    /// Ranker name, or `all` for the full comparison grid.
    #[arg(long, global = true)]
    pub ranker: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tokenize a corpus and write its positional index.
    Index {
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<CorpusFormat>,
    },
    /// Search the index for word pairs and build the pattern model.
    Mine {
        #[command(flatten)]
        pairs: PairSource,
        #[arg(long)]
        lexicon: Option<PathBuf>,
    },
    /// Export ranked pattern lists.
    Rank {
        /// Only this pair, written `x:y`.
        #[arg(long)]
        pair: Option<String>,
        /// Patterns printed per list.
        #[arg(long, default_value_t = 10)]
        top: usize,
    },
    /// Score an analogy or noun-modifier data set.
    Eval {
        #[arg(long, value_enum)]
        task: Task,
        #[arg(long)]
        data: PathBuf,
    },
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct PairSource {
    /// One pair per line, `x:y` or `x y`.
    #[arg(long)]
    pub pairs: Option<PathBuf>,
    /// Every stem and choice of an analogy file.
    #[arg(long)]
    pub from_analogies: Option<PathBuf>,
    /// Every modifier:head of a noun-modifier file.
    #[arg(long)]
    pub from_nounmod: Option<PathBuf>,
}

impl PairSource {
    pub fn path(&self) -> &Path {
        self.pairs
            .as_deref()
            .or(self.from_analogies.as_deref())
            .or(self.from_nounmod.as_deref())
            .expect("clap requires one source")
    }

    pub fn load(&self) -> Result<Vec<WordPair>> {
        let pairs: Vec<WordPair> = if let Some(p) = &self.pairs {
            load_pairs(p)?
        } else if let Some(p) = &self.from_analogies {
            load_analogies(p)?
                .iter()
                .flat_map(|q| q.pairs().cloned().collect::<Vec<_>>())
                .collect()
        } else {
            load_noun_modifiers(self.path())?.iter().map(|m| m.pair()).collect()
        };
        Ok(dedup(pairs))
    }
}

/// Keep the first occurrence of every pair.
pub fn dedup(pairs: Vec<WordPair>) -> Vec<WordPair> {
    let mut seen = BTreeSet::new();
    pairs.into_iter().filter(|p| seen.insert(p.clone())).collect()
}

pub fn parse_pairs(text: &str, path: &Path) -> Result<Vec<WordPair>> {
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = if line.contains(':') {
            line.split(':').map(str::trim).collect()
        } else {
            line.split_whitespace().collect()
        };
        match words[..] {
            [x, y]
                if !x.is_empty()
                    && !y.is_empty()
                    && !x.contains(char::is_whitespace)
                    && !y.contains(char::is_whitespace) =>
            {
                pairs.push(WordPair::new(x, y))
            }
            _ => return Err(Error::parse(path, i + 1, format!("expected `x:y`, found `{line}`"))),
        }
    }
    Ok(pairs)
}

pub fn load_pairs(path: impl AsRef<Path>) -> Result<Vec<WordPair>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_pairs(&text, path)
}

pub fn parse_pair_arg(s: &str) -> Result<WordPair> {
    match s.split_once(':') {
        Some((x, y)) if !x.trim().is_empty() && !y.trim().is_empty() => Ok(WordPair::new(x.trim(), y.trim())),
        _ => Err(Error::Config(format!("--pair expects `x:y`, found `{s}`"))),
    }
}

/// Parse arguments, run, and map the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let file = match &cli.global.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let cfg = PipelineConfig::resolve(file, &cli.global)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        pool = pool.num_threads(w);
    }
    let pool = pool.build().map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(&cfg, cli.command))
}

fn dispatch(cfg: &PipelineConfig, command: Command) -> Result<()> {
    match command {
        Command::Index { corpus, format } => {
            let corpus = corpus
                .or_else(|| cfg.corpus.clone())
                .ok_or_else(|| Error::Config("no corpus given (--corpus or `corpus` in the config)".into()))?;
            cmd_index(cfg, &corpus, format.unwrap_or(cfg.corpus_format))
        }
        Command::Mine { pairs, lexicon } => cmd_mine(cfg, &pairs, lexicon.or_else(|| cfg.lexicon.clone()).as_deref()),
        Command::Rank { pair, top } => {
            let pair = pair.as_deref().map(parse_pair_arg).transpose()?;
            print!("{}", cmd_rank(cfg, pair.as_ref(), top)?);
            Ok(())
        }
        Command::Eval { task, data } => {
            print!("{}", cmd_eval(cfg, task, &data)?);
            Ok(())
        }
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

pub fn cmd_index(cfg: &PipelineConfig, corpus: &Path, format: CorpusFormat) -> Result<()> {
    let docs = match format {
        CorpusFormat::Dir => corpus::load_dir(corpus)?,
        CorpusFormat::Lines => corpus::load_lines(corpus)?,
    };
    let index = PositionalIndex::build(docs)?;
    ensure_dir(&cfg.output_dir)?;
    index.save(cfg.out(INDEX_FILE))?;
    println!(
        "documents {}\ntokens {}\nvocabulary {}",
        index.num_documents(),
        index.num_tokens(),
        index.vocabulary_size()
    );
    Ok(())
}

pub fn cmd_mine(cfg: &PipelineConfig, source: &PairSource, lexicon: Option<&Path>) -> Result<()> {
    let pairs = source.load()?;
    if pairs.is_empty() {
        return Err(Error::Data(format!("{} contains no pairs", source.path().display())));
    }
    let index_path = cfg.out(INDEX_FILE);
    let index = PositionalIndex::load(&index_path)?;
    let lex = match lexicon {
        Some(p) => NounLexicon::load(p)?,
        None => {
            log::warn!("no noun lexicon given; every word is matched by prefix");
            NounLexicon::default()
        }
    };
    let run = Model::mine_run(&index, &lex, &pairs, &cfg.mine_params())?;
    let manifest = Manifest {
        version: MANIFEST_VERSION,
        index: index_path,
        lexicon: lexicon.map(Path::to_path_buf),
        pairs_source: source.path().to_path_buf(),
        min_pair_freq: cfg.min_pair_freq,
        svd_rank: cfg.svd_rank,
        max_intervening: cfg.max_intervening,
        counts: run.counts.clone(),
    };
    artifacts::save_run(&cfg.output_dir, &run, &manifest)?;
    let c = &run.counts;
    println!(
        "pairs {} (observed {})\nphrases {}\npatterns {} before filter, {} after\nmatrix {} x {}, {} nonzeros, density {:.6}\nsvd rank {}",
        c.input_pairs, c.observed_pairs, c.phrases, c.patterns_before_filter, c.patterns_after_filter, c.rows, c.columns,
        c.nonzeros, c.density, c.svd_rank
    );
    Ok(())
}

fn single_ranker(cfg: &PipelineConfig) -> Result<Ranker> {
    match cfg.ranker {
        RankerChoice::One(r) => Ok(r),
        RankerChoice::All => Err(Error::Config("`rank` needs a single ranker, not `all`".into())),
    }
}

/// Writes `ranked.tsv` and returns the top of each list as text.
pub fn cmd_rank(cfg: &PipelineConfig, pair: Option<&WordPair>, top: usize) -> Result<String> {
    let ranker = single_ranker(cfg)?;
    let (model, _) = artifacts::load_model(&cfg.output_dir)?;
    let lists = model.ranked_lists(ranker);
    let only = match pair {
        Some(p) => Some(lists.row_of(p).ok_or_else(|| Error::UnknownPair(p.to_string()))?),
        None => None,
    };
    write_file(&cfg.out(RANKED_FILE), &lists.to_tsv(only))?;

    let mut out = String::new();
    let rows: Vec<usize> = match only {
        Some(r) => vec![r],
        None => (0..lists.num_rows()).step_by(2).collect(),
    };
    for r in rows {
        let row = lists.row(r);
        writeln!(out, "{}  ({})", row.words, ranker.label()).unwrap();
        for list in [&row.x_first, &row.y_first] {
            writeln!(out, "  {}", list.orientation).unwrap();
            if list.is_empty() {
                writeln!(out, "    (none)").unwrap();
            }
            for e in list.entries.iter().take(top) {
                writeln!(out, "    {:>3}  {:>10.4}  {}", e.rank, e.score, e.pattern).unwrap();
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
struct ReportRow<'a> {
    ranker: String,
    label: String,
    #[serde(flatten)]
    report: &'a EvalReport,
}

/// Writes `report.txt` and `report.json` and returns the text report.
pub fn cmd_eval(cfg: &PipelineConfig, task: Task, data: &Path) -> Result<String> {
    let (model, _) = artifacts::load_model(&cfg.output_dir)?;
    let rankers = cfg.ranker.rankers(cfg.seed);
    let reports: Vec<EvalReport> = match task {
        Task::Analogies => {
            let questions = load_analogies(data)?;
            rankers
                .iter()
                .map(|&r| evaluate_analogies(&questions, &model.ranked_lists(r)))
                .collect()
        }
        Task::Nounmod => {
            let items = load_noun_modifiers(data)?;
            rankers
                .iter()
                .map(|&r| classify_noun_modifiers(&items, &model.ranked_lists(r)).0)
                .collect()
        }
    };
    let labelled: Vec<(String, &EvalReport)> = rankers.iter().map(|r| r.label()).zip(&reports).collect();
    let mut text = format_grid(&labelled);
    if let (Task::Nounmod, [report]) = (task, &reports[..]) {
        text.push('\n');
        text.push_str(&format_class_table(report));
    }
    let rows: Vec<ReportRow> = rankers
        .iter()
        .zip(&reports)
        .map(|(r, report)| ReportRow {
            ranker: r.to_string(),
            label: r.label(),
            report,
        })
        .collect();
    let json = serde_json::to_string_pretty(&rows).expect("report serializes") + "\n";
    ensure_dir(&cfg.output_dir)?;
    write_file(&cfg.out(REPORT_TEXT), &text)?;
    write_file(&cfg.out(REPORT_JSON), &json)?;
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_file_formats() {
        let p = Path::new("p.txt");
        let pairs = parse_pairs("# c\nmason:stone\n\ncarpenter wood\n", p).unwrap();
        assert_eq!(
            pairs,
            vec![WordPair::new("mason", "stone"), WordPair::new("carpenter", "wood")]
        );
        let err = parse_pairs("a:b\na:b:c\n", p).unwrap_err();
        assert!(err.to_string().contains(":2"), "{err}");
        assert!(parse_pairs("lonely\n", p).is_err());
    }

    #[test]
    fn flags_override_config() {
        let file = ConfigFile {
            min_pair_freq: Some(4),
            svd_rank: Some(50),
            ranker: Some("random".into()),
            seed: Some(3),
            ..Default::default()
        };
        let flags = GlobalArgs {
            svd_rank: Some(7),
            seed: Some(9),
            ..Default::default()
        };
        let cfg = PipelineConfig::resolve(file, &flags).unwrap();
        assert_eq!((cfg.min_pair_freq, cfg.svd_rank, cfg.seed), (4, 7, 9));
        assert_eq!(cfg.ranker, RankerChoice::One(Ranker::Random(9)));
    }

    #[test]
    fn invalid_settings_are_usage_errors() {
        let bad = |flags: GlobalArgs| {
            PipelineConfig::resolve(ConfigFile::default(), &flags)
                .unwrap_err()
                .exit_code()
        };
        assert_eq!(
            bad(GlobalArgs {
                min_pair_freq: Some(0),
                ..Default::default()
            }),
            1
        );
        assert_eq!(
            bad(GlobalArgs {
                svd_rank: Some(0),
                ..Default::default()
            }),
            1
        );
        assert_eq!(
            bad(GlobalArgs {
                ranker: Some("nope".into()),
                ..Default::default()
            }),
            1
        );
    }

    #[test]
    fn all_expands_to_grid() {
        let choice = RankerChoice::parse("all", 5).unwrap();
        assert_eq!(choice.rankers(5).len(), 15);
        assert_eq!(choice.rankers(5)[12], Ranker::Random(5));
    }

    #[test]
    fn pair_sources_are_deduplicated() {
        let pairs = dedup(vec![
            WordPair::new("a", "b"),
            WordPair::new("b", "a"),
            WordPair::new("a", "b"),
        ]);
        assert_eq!(pairs.len(), 2);
    }
}
