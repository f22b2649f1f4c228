//! Evaluation by multiple-choice analogies and noun-modifier classification.
//!
//! Both tasks compare two pairs through the patterns they share. A shared
//! pattern scores the mean of its ranks in the two pairs' lists of the same
//! orientation; the best shared pattern is the one with the lowest score.

mod analogy;
mod nounmod;
mod report;

pub use analogy::{
    evaluate_analogies, load_analogies, parse_analogies, solve_question, AnalogyQuestion, Answer, SkipReason,
};
pub use nounmod::{
    classify_noun_modifiers, load_noun_modifiers, parse_noun_modifiers, LabeledNounModifier, NounModifierClass,
    Prediction,
};
pub use report::{format_class_table, format_grid, ClassReport, EvalReport};

use crate::pair::Orientation;
use crate::patterns::Pattern;
use crate::pertinence::RowLists;

#[derive(Debug, Clone, PartialEq)]
pub struct SharedPattern {
    /// Mean of the two 1-based ranks.
    pub score: f64,
    pub pattern: Pattern,
    pub orientation: Orientation,
}

/// Best pattern shared by two rows, comparing `X ... Y` lists with each other
/// and `Y ... X` lists with each other. Ties go to the smaller pattern text.
pub fn shared_pattern_score(a: &RowLists, b: &RowLists) -> Option<SharedPattern> {
    let mut best: Option<(f64, String, SharedPattern)> = None;
    for orientation in Orientation::BOTH {
        let (la, lb) = (a.get(orientation), b.get(orientation));
        for entry in &la.entries {
            let Some(rank_b) = lb.rank_of(entry.col) else {
                continue;
            };
            let score = (entry.rank + rank_b) as f64 / 2.0;
            let better = match &best {
                None => true,
                Some((s, label, _)) => score < *s || (score == *s && entry.pattern.to_string() < *label),
            };
            if better {
                best = Some((
                    score,
                    entry.pattern.to_string(),
                    SharedPattern {
                        score,
                        pattern: entry.pattern.clone(),
                        orientation,
                    },
                ));
            }
        }
    }
    best.map(|(_, _, shared)| shared)
}
