//! Wildcard patterns, pattern frequency and pair frequency.
//!
//! A phrase `first w1 .. wm last` yields `2^m` patterns: the ends become the
//! `X`/`Y` markers and each intervening word is either kept or replaced by a
//! single-word wildcard. Patterns are counted per (pair, orientation) list.
//!
//! Statistics are keyed by the *canonical* form of a pattern, which is the
//! form that starts with `X`. A `Y ... X` pattern found in a pair's
//! `YfirstXlast` list is the same canonical pattern as the `X ... Y` form in
//! another pair's `XfirstYlast` list; the matrix later gives each canonical
//! pattern an original and a mirrored column.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::corpus::{Phrase, PhraseLists, MAX_INTERVENING};
use crate::pair::Orientation;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    X,
    Y,
    Literal(String),
    /// Exactly one token.
    Wildcard,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    slots: Vec<Slot>,
}

impl Pattern {
    pub fn new(slots: Vec<Slot>) -> Result<Self> {
        let n = slots.len();
        if !(3..=MAX_INTERVENING + 2).contains(&n) {
            return Err(Error::Data(format!(
                "pattern must have 1 to {MAX_INTERVENING} middle slots"
            )));
        }
        let ends_ok = matches!((&slots[0], &slots[n - 1]), (Slot::X, Slot::Y) | (Slot::Y, Slot::X));
        let middle_ok = slots[1..n - 1].iter().all(|s| {
            matches!(s, Slot::Wildcard)
                || matches!(s, Slot::Literal(w) if !w.is_empty() && !w.contains(char::is_whitespace))
        });
        if !ends_ok || !middle_ok {
            return Err(Error::Data(
                "pattern must run X..Y or Y..X with word or wildcard middles".into(),
            ));
        }
        Ok(Pattern { slots })
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn middle(&self) -> &[Slot] {
        &self.slots[1..self.slots.len() - 1]
    }

    pub fn orientation(&self) -> Orientation {
        match self.slots[0] {
            Slot::X => Orientation::XFirst,
            _ => Orientation::YFirst,
        }
    }

    /// The same pattern with `X` and `Y` exchanged.
    pub fn mirrored(&self) -> Pattern {
        let slots = self
            .slots
            .iter()
            .map(|s| match s {
                Slot::X => Slot::Y,
                Slot::Y => Slot::X,
                other => other.clone(),
            })
            .collect();
        Pattern { slots }
    }

    /// The `X ... Y` form.
    pub fn canonical(&self) -> Pattern {
        match self.orientation() {
            Orientation::XFirst => self.clone(),
            Orientation::YFirst => self.mirrored(),
        }
    }

    pub fn with_orientation(&self, orientation: Orientation) -> Pattern {
        if self.orientation() == orientation {
            self.clone()
        } else {
            self.mirrored()
        }
    }

    /// Fill the pattern in: `X`/`Y` become the given words and wildcards take
    /// `fills` in order. Returns `None` if `fills` has the wrong length.
    pub fn instantiate(&self, x: &str, y: &str, fills: &[&str]) -> Option<Vec<String>> {
        let mut fills = fills.iter();
        let out = self
            .slots
            .iter()
            .map(|s| match s {
                Slot::X => Some(x.to_string()),
                Slot::Y => Some(y.to_string()),
                Slot::Literal(w) => Some(w.clone()),
                Slot::Wildcard => fills.next().map(|f| f.to_string()),
            })
            .collect::<Option<Vec<_>>>()?;
        fills.next().is_none().then_some(out)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, slot) in self.slots.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match slot {
                Slot::X => f.write_str("X")?,
                Slot::Y => f.write_str("Y")?,
                Slot::Wildcard => f.write_str("*")?,
                Slot::Literal(w) => f.write_str(w)?,
            }
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let words: Vec<&str> = s.split(' ').collect();
        let last = words.len().saturating_sub(1);
        let slots = words
            .iter()
            .enumerate()
            .map(|(i, w)| match *w {
                "X" if i == 0 || i == last => Slot::X,
                "Y" if i == 0 || i == last => Slot::Y,
                "*" => Slot::Wildcard,
                w => Slot::Literal(w.to_string()),
            })
            .collect();
        Pattern::new(slots).map_err(|_| Error::Data(format!("malformed pattern {s:?}")))
    }
}

/// All `2^m` keep-or-wildcard patterns of a phrase, fully literal first.
pub fn generate_patterns(phrase: &Phrase) -> Vec<Pattern> {
    let m = phrase.intervening.len();
    debug_assert!((1..=MAX_INTERVENING).contains(&m));
    let (head, tail) = match phrase.orientation {
        Orientation::XFirst => (Slot::X, Slot::Y),
        Orientation::YFirst => (Slot::Y, Slot::X),
    };
    (0..1u32 << m)
        .rev()
        .map(|keep| {
            let mut slots = Vec::with_capacity(m + 2);
            slots.push(head.clone());
            for (i, w) in phrase.intervening.iter().enumerate() {
                slots.push(if keep & (1 << (m - 1 - i)) != 0 {
                    Slot::Literal(w.clone())
                } else {
                    Slot::Wildcard
                });
            }
            slots.push(tail.clone());
            Pattern { slots }
        })
        .collect()
}

/// One of the two pattern lists a pair owns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ListKey {
    pub pair: usize,
    pub orientation: Orientation,
}

/// Pattern frequency `f` per list and pair frequency `n` per canonical pattern.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PatternStats {
    lists: BTreeMap<ListKey, BTreeMap<Pattern, u64>>,
    pair_freq: BTreeMap<Pattern, u32>,
    observed_pairs: BTreeSet<usize>,
}

impl PatternStats {
    /// `f` sums phrase occurrence counts over every phrase in a list that
    /// generates the pattern; `n` counts the lists where `f > 0`.
    pub fn accumulate<'a>(phrase_lists: impl IntoIterator<Item = &'a PhraseLists>) -> Self {
        let mut stats = PatternStats::default();
        for lists in phrase_lists {
            for phrase in lists.x_first.iter().chain(&lists.y_first) {
                stats.observed_pairs.insert(phrase.pair_id);
                let key = ListKey {
                    pair: phrase.pair_id,
                    orientation: phrase.orientation,
                };
                let list = stats.lists.entry(key).or_default();
                for pattern in generate_patterns(phrase) {
                    *list.entry(pattern.canonical()).or_insert(0) += phrase.count;
                }
            }
        }
        stats.pair_freq = stats.count_pair_frequency();
        stats
    }

    fn count_pair_frequency(&self) -> BTreeMap<Pattern, u32> {
        let mut n = BTreeMap::new();
        for list in self.lists.values() {
            for (pattern, &f) in list {
                if f > 0 {
                    *n.entry(pattern.clone()).or_insert(0) += 1;
                }
            }
        }
        n
    }

    /// Keep only patterns whose pair frequency reaches `min_pair_freq`.
    /// Pairs stay observed even if all their patterns are dropped.
    pub fn filter(&self, min_pair_freq: u32) -> Result<Self> {
        if min_pair_freq < 1 {
            return Err(Error::InvalidThreshold(min_pair_freq));
        }
        let pair_freq: BTreeMap<Pattern, u32> = self
            .pair_freq
            .iter()
            .filter(|(_, &n)| n >= min_pair_freq)
            .map(|(p, &n)| (p.clone(), n))
            .collect();
        let lists = self
            .lists
            .iter()
            .map(|(key, list)| {
                let kept = list
                    .iter()
                    .filter(|(p, _)| pair_freq.contains_key(*p))
                    .map(|(p, &f)| (p.clone(), f))
                    .collect();
                (*key, kept)
            })
            .collect();
        Ok(PatternStats {
            lists,
            pair_freq,
            observed_pairs: self.observed_pairs.clone(),
        })
    }

    /// Pattern frequency of an oriented pattern for a pair: a `Y ... X` pattern
    /// is looked up in the pair's `YfirstXlast` list.
    pub fn f(&self, pair: usize, pattern: &Pattern) -> u64 {
        let key = ListKey {
            pair,
            orientation: pattern.orientation(),
        };
        self.lists
            .get(&key)
            .and_then(|l| l.get(&pattern.canonical()))
            .copied()
            .unwrap_or(0)
    }

    /// Pair frequency, shared by a pattern and its mirror.
    pub fn n(&self, pattern: &Pattern) -> u32 {
        self.pair_freq.get(&pattern.canonical()).copied().unwrap_or(0)
    }

    /// Canonical patterns with their pair frequencies, sorted.
    pub fn pair_frequencies(&self) -> &BTreeMap<Pattern, u32> {
        &self.pair_freq
    }

    /// `(oriented pattern, f)` for one list.
    pub fn list(&self, pair: usize, orientation: Orientation) -> impl Iterator<Item = (Pattern, u64)> + '_ {
        self.lists
            .get(&ListKey { pair, orientation })
            .into_iter()
            .flat_map(move |l| l.iter().map(move |(p, &f)| (p.with_orientation(orientation), f)))
    }

    pub fn observed_pairs(&self) -> &BTreeSet<usize> {
        &self.observed_pairs
    }

    pub fn num_patterns(&self) -> usize {
        self.pair_freq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observed_pairs.is_empty()
    }

    /// Stored `n` agrees with `n` recounted from `f`.
    pub fn is_consistent(&self) -> bool {
        self.count_pair_frequency() == self.pair_freq
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn phrase(pair_id: usize, orientation: Orientation, words: &[&str], count: u64) -> Phrase {
        let n = words.len();
        Phrase {
            pair_id,
            orientation,
            first: words[0].into(),
            intervening: words[1..n - 1].iter().map(|s| s.to_string()).collect(),
            last: words[n - 1].into(),
            count,
        }
    }

    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn carpenter_nails_the_wood() {
        let ph = phrase(0, Orientation::XFirst, &["carpenter", "nails", "the", "wood"], 1);
        let got: BTreeSet<String> = generate_patterns(&ph).iter().map(|p| p.to_string()).collect();
        let want: BTreeSet<String> = ["X nails the Y", "X nails * Y", "X * the Y", "X * * Y"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn pattern_counts_by_gap() {
        for m in 1..=3 {
            let mut words = vec!["a"];
            words.extend(std::iter::repeat_n("w", m));
            words.push("b");
            assert_eq!(
                generate_patterns(&phrase(0, Orientation::YFirst, &words, 1)).len(),
                1 << m
            );
        }
    }

    #[test]
    fn y_first_phrases_give_y_first_patterns() {
        let pats = generate_patterns(&phrase(
            0,
            Orientation::YFirst,
            &["bird", "such", "as", "the", "ostrich"],
            1,
        ));
        assert_eq!(pats[0].to_string(), "Y such as the X");
        assert_eq!(pats[0].canonical().to_string(), "X such as the Y");
        assert!(pats.iter().all(|p| p.orientation() == Orientation::YFirst));
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!("X Y".parse::<Pattern>().is_err());
        assert!("X a b c d Y".parse::<Pattern>().is_err());
        assert!("a b c".parse::<Pattern>().is_err());
        assert!("X a X".parse::<Pattern>().is_err());
        assert_eq!(p("Y is the X").mirrored(), p("X is the Y"));
    }

    #[test]
    fn single_phrase_stats() {
        let lists = PhraseLists {
            x_first: vec![phrase(
                0,
                Orientation::XFirst,
                &["carpenter", "nails", "the", "wood"],
                1,
            )],
            y_first: vec![],
        };
        let stats = PatternStats::accumulate([&lists]);
        assert_eq!(stats.num_patterns(), 4);
        for pat in ["X nails the Y", "X nails * Y", "X * the Y", "X * * Y"] {
            assert_eq!(stats.f(0, &p(pat)), 1);
            assert_eq!(stats.n(&p(pat)), 1);
        }
        assert_eq!(stats.f(0, &p("Y nails the X")), 0);
    }

    #[test]
    fn pair_frequency_counts_lists() {
        let a = PhraseLists {
            x_first: vec![phrase(0, Orientation::XFirst, &["a", "of", "b"], 2)],
            y_first: vec![phrase(0, Orientation::YFirst, &["b", "in", "a"], 1)],
        };
        let b = PhraseLists {
            x_first: vec![phrase(1, Orientation::XFirst, &["c", "to", "d"], 1)],
            y_first: vec![],
        };
        let stats = PatternStats::accumulate([&a, &b]);
        // "X * Y" appears in both lists of pair 0 and the X-first list of pair 1
        assert_eq!(stats.n(&p("X * Y")), 3);
        assert_eq!(stats.n(&p("Y * X")), 3);
        assert_eq!(stats.f(0, &p("X * Y")), 2);
        assert_eq!(stats.f(0, &p("Y * X")), 1);
        assert!(stats.is_consistent());
    }

    #[test]
    fn occurrence_count_weights_f() {
        let lists = PhraseLists {
            x_first: vec![
                phrase(0, Orientation::XFirst, &["x", "a", "y"], 3),
                phrase(0, Orientation::XFirst, &["x", "b", "y"], 2),
            ],
            y_first: vec![],
        };
        let stats = PatternStats::accumulate([&lists]);
        assert_eq!(stats.f(0, &p("X a Y")), 3);
        assert_eq!(stats.f(0, &p("X * Y")), 5);
        assert_eq!(stats.n(&p("X * Y")), 1);
    }

    #[test]
    fn filter_boundaries() {
        let lists: Vec<PhraseLists> = (0..10)
            .map(|i| PhraseLists {
                x_first: vec![phrase(
                    i,
                    Orientation::XFirst,
                    &["x", if i < 9 { "common" } else { "rare" }, "y"],
                    1,
                )],
                y_first: vec![],
            })
            .collect();
        let stats = PatternStats::accumulate(&lists);
        assert_eq!(stats.n(&p("X common Y")), 9);
        assert_eq!(stats.n(&p("X * Y")), 10);
        let kept = stats.filter(10).unwrap();
        assert_eq!(kept.num_patterns(), 1);
        assert_eq!(kept.n(&p("X common Y")), 0);
        assert_eq!(kept.f(0, &p("X common Y")), 0);
        assert_eq!(kept.f(0, &p("X * Y")), 1);
        assert_eq!(kept.observed_pairs().len(), 10);
        assert_eq!(stats.filter(1).unwrap(), stats);
        assert!(matches!(stats.filter(0), Err(Error::InvalidThreshold(0))));
    }

    fn arb_phrase() -> impl Strategy<Value = Phrase> {
        (
            0usize..4,
            prop::bool::ANY,
            prop::collection::vec("[a-c]", 1..=3),
            1u64..4,
        )
            .prop_map(|(pair, xf, mids, count)| Phrase {
                pair_id: pair,
                orientation: if xf { Orientation::XFirst } else { Orientation::YFirst },
                first: "first".into(),
                intervening: mids,
                last: "last".into(),
                count,
            })
    }

    proptest! {
        #[test]
        fn generated_patterns_are_distinct_and_instantiate_back(ph in arb_phrase()) {
            let pats = generate_patterns(&ph);
            prop_assert_eq!(pats.len(), 1 << ph.intervening.len());
            let distinct: BTreeSet<_> = pats.iter().collect();
            prop_assert_eq!(distinct.len(), pats.len());
            let (x, y) = match ph.orientation {
                Orientation::XFirst => (&ph.first, &ph.last),
                Orientation::YFirst => (&ph.last, &ph.first),
            };
            let mut original = vec![ph.first.clone()];
            original.extend(ph.intervening.iter().cloned());
            original.push(ph.last.clone());
            for pat in &pats {
                let fills: Vec<&str> = pat.middle().iter().zip(&ph.intervening)
                    .filter(|(s, _)| matches!(s, Slot::Wildcard))
                    .map(|(_, w)| w.as_str())
                    .collect();
                prop_assert_eq!(pat.instantiate(x, y, &fills), Some(original.clone()));
                prop_assert_eq!(&pat.to_string().parse::<Pattern>().unwrap(), pat);
            }
        }

        #[test]
        fn filter_is_idempotent_and_consistent(
            phrases in prop::collection::vec(arb_phrase(), 0..30),
            threshold in 1u32..4,
        ) {
            let lists: Vec<PhraseLists> = phrases.into_iter().map(|ph| {
                let mut l = PhraseLists::default();
                match ph.orientation {
                    Orientation::XFirst => l.x_first.push(ph),
                    Orientation::YFirst => l.y_first.push(ph),
                }
                l
            }).collect();
            let stats = PatternStats::accumulate(&lists);
            prop_assert!(stats.is_consistent());
            let once = stats.filter(threshold).unwrap();
            prop_assert!(once.is_consistent());
            prop_assert_eq!(once.filter(threshold).unwrap(), once.clone());
            prop_assert!(once.pair_frequencies().values().all(|&n| n >= threshold));
        }
    }
}
