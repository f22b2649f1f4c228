use std::fmt::Write as _;

use serde::Serialize;

use super::NounModifierClass;

/// Precision, recall and F as percentages.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub total: usize,
    pub answered: usize,
    pub skipped: usize,
    pub correct: usize,
    pub precision: f64,
    pub recall: f64,
    pub f: f64,
    /// False when nothing was answered; precision is then reported as 0.
    pub precision_defined: bool,
    /// Per-class rows, noun-modifier task only.
    pub classes: Vec<ClassReport>,
    /// Mean of the per-class F values, noun-modifier task only.
    pub mean_class_f: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassReport {
    pub class: NounModifierClass,
    pub size: usize,
    pub predicted: usize,
    pub correct: usize,
    pub precision: f64,
    pub recall: f64,
    pub f: f64,
    pub precision_defined: bool,
}

pub(crate) fn harmonic(p: f64, r: f64) -> f64 {
    if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    }
}

pub(crate) fn percent(num: usize, den: usize) -> (f64, bool) {
    if den == 0 {
        (0.0, false)
    } else {
        (100.0 * num as f64 / den as f64, true)
    }
}

impl EvalReport {
    /// Precision over answered items, recall over all items.
    pub fn from_counts(total: usize, answered: usize, correct: usize) -> EvalReport {
        let (precision, precision_defined) = percent(correct, answered);
        let (recall, _) = percent(correct, total);
        EvalReport {
            total,
            answered,
            skipped: total - answered,
            correct,
            precision,
            recall,
            f: harmonic(precision, recall),
            precision_defined,
            classes: Vec::new(),
            mean_class_f: None,
        }
    }
}

/// Plain-text table with one row per ranker: `Algorithm  Prec.  Rec.  F`.
pub fn format_grid(rows: &[(String, &EvalReport)]) -> String {
    let width = rows
        .iter()
        .map(|(l, _)| l.len())
        .max()
        .unwrap_or(0)
        .max("Algorithm".len());
    let mut s = format!(
        "{:>2}  {:<width$}  {:>6}  {:>6}  {:>6}\n",
        "#", "Algorithm", "Prec.", "Rec.", "F"
    );
    for (i, (label, r)) in rows.iter().enumerate() {
        writeln!(
            s,
            "{:>2}  {:<width$}  {:>6.1}  {:>6.1}  {:>6.1}",
            i + 1,
            label,
            r.precision,
            r.recall,
            r.f
        )
        .unwrap();
    }
    s
}

/// Per-class table for the noun-modifier task, ending with the pooled row.
pub fn format_class_table(report: &EvalReport) -> String {
    let mut s = format!(
        "{:<12}  {:>6}  {:>6}  {:>6}  {:>10}\n",
        "Class name", "Prec.", "Rec.", "F", "Class size"
    );
    for c in &report.classes {
        writeln!(
            s,
            "{:<12}  {:>6.1}  {:>6.1}  {:>6.1}  {:>10}",
            c.class.as_str(),
            c.precision,
            c.recall,
            c.f,
            c.size
        )
        .unwrap();
    }
    writeln!(
        s,
        "{:<12}  {:>6.1}  {:>6.1}  {:>6.1}  {:>10}",
        "all", report.precision, report.recall, report.f, report.total
    )
    .unwrap();
    s
}
