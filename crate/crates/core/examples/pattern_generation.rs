//! Expand a phrase into its wildcard patterns and count them over two pairs.

use relpat::corpus::{Phrase, PhraseLists};
use relpat::pair::Orientation;
use relpat::patterns::{generate_patterns, PatternStats};

fn phrase(pair_id: usize, words: &[&str], count: u64) -> Phrase {
    Phrase {
        pair_id,
        orientation: Orientation::XFirst,
        first: words[0].into(),
        intervening: words[1..words.len() - 1].iter().map(|w| w.to_string()).collect(),
        last: words[words.len() - 1].into(),
        count,
    }
}

fn main() -> relpat::Result<()> {
    let carpenter = phrase(0, &["carpenter", "nails", "the", "wood"], 2);
    let mason = phrase(1, &["mason", "cuts", "the", "stone"], 1);
    for p in generate_patterns(&carpenter) {
        println!("{p}");
    }

    let lists = [
        PhraseLists {
            x_first: vec![carpenter],
            y_first: vec![],
        },
        PhraseLists {
            x_first: vec![mason],
            y_first: vec![],
        },
    ];
    let stats = PatternStats::accumulate(&lists);
    println!("\npair frequency of each canonical pattern:");
    for (p, n) in stats.pair_frequencies() {
        println!("  n = {n}  f(carpenter) = {}  {p}", stats.f(0, p));
    }
    let kept = stats.filter(2)?;
    println!(
        "\nkept with n >= 2: {:?}",
        kept.pair_frequencies()
            .keys()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
    );
    Ok(())
}
