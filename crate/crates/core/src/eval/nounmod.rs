use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::report::{harmonic, percent};
use super::{shared_pattern_score, ClassReport, EvalReport, SharedPattern};
use crate::pair::WordPair;
use crate::pertinence::RankedLists;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NounModifierClass {
    Causality,
    Participant,
    Quality,
    Spatial,
    Temporality,
}

impl NounModifierClass {
    pub const ALL: [NounModifierClass; 5] = [
        NounModifierClass::Causality,
        NounModifierClass::Participant,
        NounModifierClass::Quality,
        NounModifierClass::Spatial,
        NounModifierClass::Temporality,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NounModifierClass::Causality => "causality",
            NounModifierClass::Participant => "participant",
            NounModifierClass::Quality => "quality",
            NounModifierClass::Spatial => "spatial",
            NounModifierClass::Temporality => "temporality",
        }
    }
}

impl fmt::Display for NounModifierClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NounModifierClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NounModifierClass::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Data(format!("unknown noun-modifier class {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledNounModifier {
    pub modifier: String,
    pub head: String,
    pub label: NounModifierClass,
}

impl LabeledNounModifier {
    /// `modifier:head`
    pub fn pair(&self) -> WordPair {
        WordPair::new(&self.modifier, &self.head)
    }
}

/// Outcome for one held-out item.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub neighbour: usize,
    pub label: NounModifierClass,
    pub shared: SharedPattern,
}

/// Leave-one-out single nearest neighbour, with distance the score of the
/// best shared pattern. Returns the report and each item's prediction
/// (`None` when the item has no row or shares nothing with any other item).
pub fn classify_noun_modifiers(
    items: &[LabeledNounModifier],
    lists: &RankedLists,
) -> (EvalReport, Vec<Option<Prediction>>) {
    let rows: Vec<Option<usize>> = items.iter().map(|it| lists.row_of(&it.pair())).collect();
    let predictions: Vec<Option<Prediction>> = (0..items.len())
        .into_par_iter()
        .map(|test| {
            let own = lists.row(rows[test]?);
            let mut best: Option<(usize, SharedPattern)> = None;
            for (train, row) in rows.iter().enumerate() {
                if train == test {
                    continue;
                }
                let Some(row) = row else { continue };
                let Some(shared) = shared_pattern_score(own, lists.row(*row)) else {
                    continue;
                };
                if best.as_ref().is_none_or(|(_, b)| shared.score < b.score) {
                    best = Some((train, shared));
                }
            }
            best.map(|(neighbour, shared)| Prediction {
                neighbour,
                label: items[neighbour].label,
                shared,
            })
        })
        .collect();
    (summarize(items, &predictions), predictions)
}

fn summarize(items: &[LabeledNounModifier], predictions: &[Option<Prediction>]) -> EvalReport {
    let answered = predictions.iter().flatten().count();
    let correct = items
        .iter()
        .zip(predictions)
        .filter(|(it, p)| p.as_ref().is_some_and(|p| p.label == it.label))
        .count();
    let present: Vec<NounModifierClass> = NounModifierClass::ALL
        .into_iter()
        .filter(|c| items.iter().any(|it| it.label == *c))
        .collect();
    let classes: Vec<ClassReport> = present
        .iter()
        .map(|&class| {
            let size = items.iter().filter(|it| it.label == class).count();
            let predicted = predictions.iter().flatten().filter(|p| p.label == class).count();
            let hits = items
                .iter()
                .zip(predictions)
                .filter(|(it, p)| it.label == class && p.as_ref().is_some_and(|p| p.label == class))
                .count();
            let (precision, precision_defined) = percent(hits, predicted);
            let (recall, _) = percent(hits, size);
            ClassReport {
                class,
                size,
                predicted,
                correct: hits,
                precision,
                recall,
                f: harmonic(precision, recall),
                precision_defined,
            }
        })
        .collect();
    let k = classes.len().max(1) as f64;
    let precision = classes.iter().map(|c| c.precision).sum::<f64>() / k;
    let recall = classes.iter().map(|c| c.recall).sum::<f64>() / k;
    EvalReport {
        total: items.len(),
        answered,
        skipped: items.len() - answered,
        correct,
        precision,
        recall,
        f: harmonic(precision, recall),
        precision_defined: answered > 0,
        mean_class_f: Some(classes.iter().map(|c| c.f).sum::<f64>() / k),
        classes,
    }
}

/// `modifier<TAB>head<TAB>label` per line; blank lines and `#` comments skipped.
pub fn parse_noun_modifiers(text: &str, path: &Path) -> Result<Vec<LabeledNounModifier>> {
    let mut items = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        let [modifier, head, label] = fields[..] else {
            return Err(Error::parse(path, i + 1, "expected modifier<TAB>head<TAB>label"));
        };
        if modifier.is_empty() || head.is_empty() {
            return Err(Error::parse(path, i + 1, "empty word"));
        }
        let label = label
            .to_lowercase()
            .parse()
            .map_err(|e: Error| Error::parse(path, i + 1, e.to_string()))?;
        items.push(LabeledNounModifier {
            modifier: modifier.to_lowercase(),
            head: head.to_lowercase(),
            label,
        });
    }
    Ok(items)
}

pub fn load_noun_modifiers(path: impl AsRef<Path>) -> Result<Vec<LabeledNounModifier>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_noun_modifiers(&text, path)
}
