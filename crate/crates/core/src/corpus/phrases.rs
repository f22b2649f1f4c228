use std::collections::{BTreeMap, BTreeSet};

use super::{NounLexicon, PositionalIndex, Posting};
use crate::pair::{Orientation, WordPair};

/// Phrases carry between one and this many words between the pair members.
pub const MAX_INTERVENING: usize = 3;

/// A distinct surface phrase joining the two members of a pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Phrase {
    pub pair_id: usize,
    pub orientation: Orientation,
    pub first: String,
    pub intervening: Vec<String>,
    pub last: String,
    pub count: u64,
}

impl Phrase {
    pub fn surface(&self) -> String {
        let mut s = self.first.clone();
        for w in &self.intervening {
            s.push(' ');
            s.push_str(w);
        }
        s.push(' ');
        s.push_str(&self.last);
        s
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PhraseLists {
    /// Phrases that start with a form of X and end with a form of Y.
    pub x_first: Vec<Phrase>,
    /// Phrases that start with a form of Y and end with a form of X.
    pub y_first: Vec<Phrase>,
}

impl PhraseLists {
    pub fn get(&self, orientation: Orientation) -> &[Phrase] {
        match orientation {
            Orientation::XFirst => &self.x_first,
            Orientation::YFirst => &self.y_first,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.x_first.is_empty() && self.y_first.is_empty()
    }
}

/// Surface forms of `word` present in the index.
///
/// Nouns only vary in pluralization. Everything else matches any token that
/// shares the stem formed by the first `max(4, len - 2)` characters.
pub fn expand_word_forms(word: &str, noun: bool, index: &PositionalIndex) -> BTreeSet<String> {
    if noun {
        let mut candidates = vec![word.to_string(), format!("{word}s"), format!("{word}es")];
        if let Some(w) = word.strip_suffix("es") {
            candidates.push(w.to_string());
        }
        if let Some(w) = word.strip_suffix('s') {
            candidates.push(w.to_string());
        }
        candidates
            .into_iter()
            .filter(|c| !c.is_empty() && index.contains(c))
            .collect()
    } else {
        let len = word.chars().count();
        let stem: String = word.chars().take(4.max(len.saturating_sub(2))).collect();
        index.tokens_with_prefix(&stem).map(str::to_string).collect()
    }
}

fn occurrences(index: &PositionalIndex, forms: &BTreeSet<String>) -> Vec<Posting> {
    let mut all: Vec<Posting> = forms.iter().flat_map(|f| index.postings(f).iter().copied()).collect();
    all.sort_unstable();
    all
}

/// Find every window that starts with a form of one pair member, ends with a
/// form of the other, and has one to three words in between.
///
/// A window that starts with an X-form and ends with a Y-form always goes to
/// the `x_first` list, even when its words are also Y- and X-forms. Windows
/// whose first and last tokens are identical are skipped.
pub fn find_phrases(index: &PositionalIndex, pair_id: usize, pair: &WordPair, lexicon: &NounLexicon) -> PhraseLists {
    let x_forms = expand_word_forms(&pair.x, lexicon.is_likely_noun(&pair.x), index);
    let y_forms = expand_word_forms(&pair.y, lexicon.is_likely_noun(&pair.y), index);
    if x_forms.is_empty() || y_forms.is_empty() {
        return PhraseLists::default();
    }
    let x_occ = occurrences(index, &x_forms);
    let y_occ = occurrences(index, &y_forms);

    let mut x_first = BTreeMap::new();
    collect_windows(index, &x_occ, &y_occ, |_, _| true, &mut x_first);
    let mut y_first = BTreeMap::new();
    collect_windows(
        index,
        &y_occ,
        &x_occ,
        |first, last| !(x_forms.contains(first) && y_forms.contains(last)),
        &mut y_first,
    );

    let finish = |map: BTreeMap<(String, Vec<String>, String), u64>, orientation| {
        map.into_iter()
            .map(|((first, intervening, last), count)| Phrase {
                pair_id,
                orientation,
                first,
                intervening,
                last,
                count,
            })
            .collect()
    };
    PhraseLists {
        x_first: finish(x_first, Orientation::XFirst),
        y_first: finish(y_first, Orientation::YFirst),
    }
}

type WindowCounts = BTreeMap<(String, Vec<String>, String), u64>;

/// Merge-join `starts` against `ends`: for each start posting, binary-search the
/// end postings that fall 2..=4 positions later in the same document.
fn collect_windows(
    index: &PositionalIndex,
    starts: &[Posting],
    ends: &[Posting],
    keep: impl Fn(&str, &str) -> bool,
    out: &mut WindowCounts,
) {
    for &start in starts {
        let lo = Posting {
            doc: start.doc,
            pos: start.pos + 2,
        };
        let hi = Posting {
            doc: start.doc,
            pos: start.pos + 1 + MAX_INTERVENING as u32,
        };
        let from = ends.partition_point(|p| *p < lo);
        let to = ends.partition_point(|p| *p <= hi);
        if from == to {
            continue;
        }
        let tokens = &index
            .document(start.doc)
            .expect("posting refers to indexed document")
            .tokens;
        let first = &tokens[start.pos as usize];
        for end in &ends[from..to] {
            let last = &tokens[end.pos as usize];
            if first == last || !keep(first, last) {
                continue;
            }
            let intervening = tokens[start.pos as usize + 1..end.pos as usize].to_vec();
            *out.entry((first.clone(), intervening, last.clone())).or_insert(0) += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Document;

    fn index(lines: &[&str]) -> PositionalIndex {
        let docs = lines
            .iter()
            .enumerate()
            .map(|(i, l)| Document::from_text(i as u32, l).unwrap())
            .collect();
        PositionalIndex::build(docs).unwrap()
    }

    fn set(v: &[&str]) -> BTreeSet<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn noun_forms_only_vary_plural() {
        let idx = index(&["bird birds birding"]);
        assert_eq!(expand_word_forms("bird", true, &idx), set(&["bird", "birds"]));
        assert_eq!(expand_word_forms("birds", true, &idx), set(&["bird", "birds"]));
        let idx = index(&["robin"]);
        assert!(expand_word_forms("bird", true, &idx).is_empty());
    }

    #[test]
    fn non_noun_forms_share_a_stem() {
        let idx = index(&["inflated inflation inflate infer"]);
        assert_eq!(
            expand_word_forms("inflated", false, &idx),
            set(&["inflate", "inflated", "inflation"])
        );
        // short words keep their whole length as the stem
        let idx = index(&["red reds redo"]);
        assert_eq!(expand_word_forms("red", false, &idx), set(&["red", "redo", "reds"]));
    }

    #[test]
    fn single_window_gap_three() {
        let idx = index(&["the ostrich is a big bird"]);
        let lex = NounLexicon::new(["ostrich", "bird"]);
        let lists = find_phrases(&idx, 0, &WordPair::new("ostrich", "bird"), &lex);
        assert_eq!(lists.x_first.len(), 1);
        let p = &lists.x_first[0];
        assert_eq!(p.surface(), "ostrich is a big bird");
        assert_eq!(p.count, 1);
        assert!(lists.y_first.is_empty());
    }

    #[test]
    fn missing_member_gives_nothing() {
        let idx = index(&["bird bird"]);
        let lex = NounLexicon::new(["ostrich", "bird"]);
        assert!(find_phrases(&idx, 0, &WordPair::new("ostrich", "bird"), &lex).is_empty());
    }

    #[test]
    fn counts_aggregate_over_documents() {
        let idx = index(&[
            "an ostrich is a bird",
            "the ostrich is a bird",
            "birds such as ostriches",
        ]);
        let lex = NounLexicon::new(["ostrich", "bird"]);
        let lists = find_phrases(&idx, 3, &WordPair::new("ostrich", "bird"), &lex);
        assert_eq!(lists.x_first.len(), 1);
        assert_eq!(lists.x_first[0].count, 2);
        assert_eq!(lists.y_first.len(), 1);
        assert_eq!(lists.y_first[0].surface(), "birds such as ostriches");
        assert_eq!(lists.y_first[0].pair_id, 3);
    }

    #[test]
    fn gaps_outside_one_to_three_are_ignored() {
        let idx = index(&["ostrich bird", "ostrich a b c d bird"]);
        let lex = NounLexicon::new(["ostrich", "bird"]);
        assert!(find_phrases(&idx, 0, &WordPair::new("ostrich", "bird"), &lex).is_empty());
    }

    #[test]
    fn overlapping_forms_prefer_x_first_and_skip_self_windows() {
        // the stem of "inflate" also matches "inflation"
        let idx = index(&["inflate the inflation", "inflation of inflation"]);
        let lex = NounLexicon::default();
        let lists = find_phrases(&idx, 0, &WordPair::new("inflate", "inflation"), &lex);
        assert_eq!(lists.x_first.len(), 1);
        assert_eq!(lists.x_first[0].surface(), "inflate the inflation");
        assert!(lists.y_first.is_empty());
    }
}
