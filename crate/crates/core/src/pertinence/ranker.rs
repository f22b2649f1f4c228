use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TfVariant {
    /// `f`
    Raw,
    /// `log(f + 1)`
    Log,
    /// `1.0`
    One,
    /// `0.5 + 0.5 * (f / F)`
    Augmented,
    /// `1 / f`
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdfVariant {
    /// `log(N / n)`
    Log,
    /// `log((N - n) / n)`
    LogOdds,
    /// `1 / n`
    Inverse,
    /// `1.0`
    One,
}

impl TfVariant {
    /// `f` is the cell's pattern frequency, `max_f` the largest in its row.
    pub fn weight(self, f: f64, max_f: f64) -> f64 {
        match self {
            TfVariant::Raw => f,
            TfVariant::Log => f.ln_1p(),
            TfVariant::One => 1.0,
            TfVariant::Augmented => 0.5 + 0.5 * (f / max_f),
            TfVariant::Inverse => 1.0 / f,
        }
    }

    fn key(self) -> &'static str {
        match self {
            TfVariant::Raw => "f",
            TfVariant::Log => "log",
            TfVariant::One => "one",
            TfVariant::Augmented => "aug",
            TfVariant::Inverse => "inv",
        }
    }

    fn label(self) -> &'static str {
        match self {
            TfVariant::Raw => "f",
            TfVariant::Log => "log(f+1)",
            TfVariant::One => "1.0",
            TfVariant::Augmented => "0.5 + 0.5 * (f/F)",
            TfVariant::Inverse => "1/f",
        }
    }

    const ALL: [TfVariant; 5] = [
        TfVariant::Raw,
        TfVariant::Log,
        TfVariant::One,
        TfVariant::Augmented,
        TfVariant::Inverse,
    ];
}

impl IdfVariant {
    /// `n` is the pattern's pair frequency and `total` the number of rows.
    pub fn weight(self, n: f64, total: f64) -> f64 {
        match self {
            IdfVariant::Log => (total / n).ln(),
            IdfVariant::LogOdds => ((total - n) / n).ln(),
            IdfVariant::Inverse => 1.0 / n,
            IdfVariant::One => 1.0,
        }
    }

    fn key(self) -> &'static str {
        match self {
            IdfVariant::Log => "log",
            IdfVariant::LogOdds => "logodds",
            IdfVariant::Inverse => "inv",
            IdfVariant::One => "one",
        }
    }

    fn label(self) -> &'static str {
        match self {
            IdfVariant::Log => "log(N/n)",
            IdfVariant::LogOdds => "log((N-n)/n)",
            IdfVariant::Inverse => "1/n",
            IdfVariant::One => "1.0",
        }
    }

    const ALL: [IdfVariant; 4] = [
        IdfVariant::Log,
        IdfVariant::LogOdds,
        IdfVariant::Inverse,
        IdfVariant::One,
    ];
}

/// A way of scoring the observed patterns of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ranker {
    Pertinence,
    /// Cell of the log-entropy weighted matrix.
    LogEntropyCell,
    TfIdf(TfVariant, IdfVariant),
    /// `p(pair | pattern)`
    CondProb,
    /// Cell of the rank-k reconstruction `U_k Σ_k V_kᵀ`.
    SvdCell,
    Random(u64),
    /// `TF = 1/f, IDF = 1.0`
    InverseTf,
    /// `TF = f, IDF = 1.0`
    RawTf,
}

impl Ranker {
    /// The fifteen pattern rankers in comparison-table order.
    pub fn comparison_grid(seed: u64) -> Vec<Ranker> {
        use IdfVariant as I;
        use TfVariant as T;
        vec![
            Ranker::Pertinence,
            Ranker::LogEntropyCell,
            Ranker::TfIdf(T::Raw, I::LogOdds),
            Ranker::TfIdf(T::Log, I::Log),
            Ranker::TfIdf(T::Raw, I::Log),
            Ranker::TfIdf(T::Log, I::LogOdds),
            Ranker::TfIdf(T::One, I::Inverse),
            Ranker::TfIdf(T::Raw, I::Inverse),
            Ranker::TfIdf(T::Augmented, I::Log),
            Ranker::TfIdf(T::Log, I::Inverse),
            Ranker::CondProb,
            Ranker::SvdCell,
            Ranker::Random(seed),
            Ranker::InverseTf,
            Ranker::RawTf,
        ]
    }

    /// `(tf, idf)` when the ranker is a tf-idf product.
    pub fn tf_idf(self) -> Option<(TfVariant, IdfVariant)> {
        match self {
            Ranker::TfIdf(tf, idf) => Some((tf, idf)),
            Ranker::InverseTf => Some((TfVariant::Inverse, IdfVariant::One)),
            Ranker::RawTf => Some((TfVariant::Raw, IdfVariant::One)),
            _ => None,
        }
    }

    /// Human-readable name, as in a results table.
    pub fn label(self) -> String {
        match self {
            Ranker::Pertinence => "pertinence".into(),
            Ranker::LogEntropyCell => "log and entropy matrix".into(),
            Ranker::CondProb => "p(X:Y|P)".into(),
            Ranker::SvdCell => "SVD matrix".into(),
            Ranker::Random(_) => "random".into(),
            other => {
                let (tf, idf) = other.tf_idf().unwrap();
                format!("TF = {}, IDF = {}", tf.label(), idf.label())
            }
        }
    }

    /// Uniform score in `[0, 1)` for a cell, reproducible from the seed alone.
    pub fn random_score(seed: u64, row: usize, col: usize) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(row as u64);
        rng.set_word_pos(2 * col as u128);
        (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

impl fmt::Display for Ranker {
    /// The parseable name accepted by `FromStr`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ranker::Pertinence => f.write_str("pertinence"),
            Ranker::LogEntropyCell => f.write_str("log-entropy"),
            Ranker::CondProb => f.write_str("cond-prob"),
            Ranker::SvdCell => f.write_str("svd"),
            Ranker::Random(seed) => write!(f, "random:{seed}"),
            Ranker::InverseTf => f.write_str("inverse-tf"),
            Ranker::RawTf => f.write_str("raw-tf"),
            Ranker::TfIdf(tf, idf) => write!(f, "tfidf:{}:{}", tf.key(), idf.key()),
        }
    }
}

impl FromStr for Ranker {
    type Err = Error;

    /// Accepts `pertinence`, `log-entropy`, `cond-prob`, `svd`, `random`,
    /// `random:<seed>`, `inverse-tf`, `raw-tf` and `tfidf:<tf>:<idf>` with
    /// `<tf>` one of `f log one aug inv` and `<idf>` one of `log logodds inv one`.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownRanker(s.to_string());
        Ok(match s {
            "pertinence" => Ranker::Pertinence,
            "log-entropy" => Ranker::LogEntropyCell,
            "cond-prob" => Ranker::CondProb,
            "svd" => Ranker::SvdCell,
            "random" => Ranker::Random(0),
            "inverse-tf" => Ranker::InverseTf,
            "raw-tf" => Ranker::RawTf,
            _ => {
                if let Some(seed) = s.strip_prefix("random:") {
                    Ranker::Random(seed.parse().map_err(|_| unknown())?)
                } else if let Some(rest) = s.strip_prefix("tfidf:") {
                    let (tf, idf) = rest.split_once(':').ok_or_else(unknown)?;
                    let tf = TfVariant::ALL.into_iter().find(|v| v.key() == tf).ok_or_else(unknown)?;
                    let idf = IdfVariant::ALL
                        .into_iter()
                        .find(|v| v.key() == idf)
                        .ok_or_else(unknown)?;
                    Ranker::TfIdf(tf, idf)
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}
