//! Word pairs and the two orderings that run through the whole pipeline.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WordPair {
    pub x: String,
    pub y: String,
}

impl WordPair {
    pub fn new(x: impl Into<String>, y: impl Into<String>) -> Self {
        WordPair {
            x: x.into().to_lowercase(),
            y: y.into().to_lowercase(),
        }
    }

    pub fn reversed(&self) -> WordPair {
        WordPair {
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }
}

impl fmt::Display for WordPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.x, self.y)
    }
}

/// Word order of a phrase or pattern relative to its pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    /// `X ... Y`
    XFirst,
    /// `Y ... X`
    YFirst,
}

impl Orientation {
    pub const BOTH: [Orientation; 2] = [Orientation::XFirst, Orientation::YFirst];

    pub fn flipped(self) -> Orientation {
        match self {
            Orientation::XFirst => Orientation::YFirst,
            Orientation::YFirst => Orientation::XFirst,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::XFirst => "XfirstYlast",
            Orientation::YFirst => "YfirstXlast",
        }
    }

    pub fn parse(s: &str) -> Option<Orientation> {
        match s {
            "XfirstYlast" => Some(Orientation::XFirst),
            "YfirstXlast" => Some(Orientation::YFirst),
            _ => None,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which way round an input pair is laid out in a matrix row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    /// The pair as given, `X:Y`.
    Forward,
    /// The swapped pair, `Y:X`.
    Reversed,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Forward => "forward",
            Direction::Reversed => "reversed",
        }
    }

    pub fn parse(s: &str) -> Option<Direction> {
        match s {
            "forward" => Some(Direction::Forward),
            "reversed" => Some(Direction::Reversed),
            _ => None,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
