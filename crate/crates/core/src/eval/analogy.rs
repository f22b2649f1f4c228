use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use super::{shared_pattern_score, EvalReport, SharedPattern};
use crate::pair::WordPair;
use crate::pertinence::RankedLists;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalogyQuestion {
    pub stem: WordPair,
    pub choices: [WordPair; 5],
    /// 0-based index of the solution.
    pub answer: usize,
}

impl AnalogyQuestion {
    /// The stem followed by the choices.
    pub fn pairs(&self) -> impl Iterator<Item = &WordPair> {
        std::iter::once(&self.stem).chain(self.choices.iter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SkipReason {
    /// The stem never co-occurred in the corpus.
    StemMissing,
    /// No choice shares a pattern with the stem.
    NoOverlap,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Answer {
    Guess { choice: usize, best: SharedPattern },
    Skip(SkipReason),
}

/// Pick the choice whose best shared pattern with the stem scores lowest.
/// Choices without rows or without any shared pattern lose to every scored
/// choice; ties go to the earlier choice.
pub fn solve_question(q: &AnalogyQuestion, lists: &RankedLists) -> Answer {
    let Some(stem) = lists.for_pair(&q.stem) else {
        return Answer::Skip(SkipReason::StemMissing);
    };
    let mut best: Option<(usize, SharedPattern)> = None;
    for (i, choice) in q.choices.iter().enumerate() {
        let Some(shared) = lists.for_pair(choice).and_then(|c| shared_pattern_score(stem, c)) else {
            continue;
        };
        if best.as_ref().is_none_or(|(_, b)| shared.score < b.score) {
            best = Some((i, shared));
        }
    }
    match best {
        Some((choice, best)) => Answer::Guess { choice, best },
        None => Answer::Skip(SkipReason::NoOverlap),
    }
}

pub fn evaluate_analogies(questions: &[AnalogyQuestion], lists: &RankedLists) -> EvalReport {
    let answers: Vec<Answer> = questions.par_iter().map(|q| solve_question(q, lists)).collect();
    let mut answered = 0;
    let mut correct = 0;
    for (q, a) in questions.iter().zip(&answers) {
        if let Answer::Guess { choice, .. } = a {
            answered += 1;
            if *choice == q.answer {
                correct += 1;
            }
        }
    }
    EvalReport::from_counts(questions.len(), answered, correct)
}

fn parse_pair(line: &str) -> Option<WordPair> {
    let mut words = line.split_whitespace();
    let (x, y) = (words.next()?, words.next()?);
    words.next().is_none().then(|| WordPair::new(x, y))
}

fn parse_answer(line: &str) -> Option<usize> {
    let k = line.strip_prefix("answer:")?.trim();
    match k {
        "a" | "0" => Some(0),
        "b" | "1" => Some(1),
        "c" | "2" => Some(2),
        "d" | "3" => Some(3),
        "e" | "4" => Some(4),
        _ => None,
    }
}

/// Blank-line separated blocks of seven lines: the stem pair, five choice
/// pairs (`word word`), and `answer: k` with `k` in `a`..`e` or `0`..`4`.
/// Lines starting with `#` are ignored.
pub fn parse_analogies(text: &str, path: &Path) -> Result<Vec<AnalogyQuestion>> {
    let mut questions = Vec::new();
    let mut block: Vec<(usize, &str)> = Vec::new();
    let lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    for (lineno, line) in lines.chain(std::iter::once((0, ""))) {
        if line.starts_with('#') {
            continue;
        }
        if !line.is_empty() {
            block.push((lineno, line));
            continue;
        }
        if block.is_empty() {
            continue;
        }
        if block.len() != 7 {
            return Err(Error::parse(
                path,
                block[0].0,
                format!(
                    "question needs a stem, 5 choices and an answer line, found {} lines",
                    block.len()
                ),
            ));
        }
        let pair_at =
            |k: usize| parse_pair(block[k].1).ok_or_else(|| Error::parse(path, block[k].0, "expected two words"));
        let stem = pair_at(0)?;
        let choices = [pair_at(1)?, pair_at(2)?, pair_at(3)?, pair_at(4)?, pair_at(5)?];
        let answer = parse_answer(block[6].1)
            .ok_or_else(|| Error::parse(path, block[6].0, "expected `answer: k` with k in a-e or 0-4"))?;
        questions.push(AnalogyQuestion { stem, choices, answer });
        block.clear();
    }
    Ok(questions)
}

pub fn load_analogies(path: impl AsRef<Path>) -> Result<Vec<AnalogyQuestion>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_analogies(&text, path)
}
