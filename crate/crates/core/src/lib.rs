//! Mine a corpus for the lexico-syntactic patterns that express the implicit
//! semantic relations of word pairs, and rank those patterns by *pertinence*:
//! the expected relational similarity between a pair and the pairs that are
//! typical of a pattern.
//!
//! The pipeline is staged, and every stage is usable on its own:
//!
//! 1. [`corpus`]: tokenize documents, build a positional index, and find the
//!    phrases in which a pair co-occurs with one to three intervening words.
//! 2. [`patterns`]: turn phrases into wildcard patterns, count pattern
//!    frequency and pair frequency, and drop rare patterns.
//! 3. [`matrix`]: build the pair × pattern matrix (rows doubled, columns
//!    mirrored), apply the log-entropy transform, truncate with SVD and read
//!    row cosines.
//! 4. [`pertinence`]: conditional probabilities, pertinence, and every
//!    baseline ranker.
//! 5. [`eval`]: shared-pattern scoring for multiple-choice analogies and
//!    nearest-neighbour noun-modifier classification.
//!
//! [`pipeline`] wires the stages together and [`artifacts`] persists them;
//! [`cli`] is the `relpat` command line.
//!
//! ```no_run
//! use relpat::prelude::*;
//!
//! # fn main() -> relpat::Result<()> {
//! let docs = relpat::corpus::load_lines("corpus.txt")?;
//! let index = PositionalIndex::build(docs)?;
//! let lexicon = NounLexicon::load("nouns.txt")?;
//! let pairs = vec![WordPair::new("ostrich", "bird"), WordPair::new("lion", "cat")];
//! let params = MineParams { min_pair_freq: 1, ..MineParams::default() };
//! let model = Model::mine(&index, &lexicon, &pairs, &params)?;
//! let lists = model.ranked_lists(Ranker::Pertinence);
//! for entry in lists.for_pair(&pairs[0]).unwrap().x_first.entries.iter().take(4) {
//!     println!("{} {:.3} {}", entry.rank, entry.score, entry.pattern);
//! }
//! # Ok(()) }
//! ```

pub mod artifacts;
pub mod cli;
pub mod corpus;
mod error;
pub mod eval;
pub mod matrix;
pub mod pair;
pub mod patterns;
pub mod pertinence;
pub mod pipeline;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::corpus::{Document, NounLexicon, Phrase, PhraseLists, PositionalIndex};
    pub use crate::eval::{AnalogyQuestion, EvalReport, LabeledNounModifier, NounModifierClass};
    pub use crate::matrix::{PairPatternMatrix, RowSimilarity, SparseMatrix, SvdFactors};
    pub use crate::pair::{Direction, Orientation, WordPair};
    pub use crate::patterns::{Pattern, PatternStats, Slot};
    pub use crate::pertinence::{IdfVariant, RankedLists, RankedPatternList, Ranker, TfVariant};
    pub use crate::pipeline::{MineParams, Model};
}
