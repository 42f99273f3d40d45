use std::sync::Arc;
use std::thread;

use scera::gen::{generate, GenConfig};
use scera::{match_text, naive_match, PrefixEncoding, Relation, Scanner, Scera, Symbol};

#[test]
fn one_automaton_many_scanners() {
    let inst = generate(&GenConfig {
        seed: 11,
        relation: Relation::OrderPreserving,
        alphabet: 5,
        pattern_count: 3..=6,
        pattern_len: 2..=7,
        text_len: 400,
        plants: 10,
    })
    .unwrap();
    let automaton =
        Arc::new(Scera::build(Relation::OrderPreserving, inst.patterns.clone()).unwrap());
    let expected = naive_match(Relation::OrderPreserving, &inst.patterns, &inst.text).unwrap();
    let text = Arc::new(inst.text);

    let handles: Vec<_> = (0..4)
        .map(|_| {
            let a = Arc::clone(&automaton);
            let t = Arc::clone(&text);
            thread::spawn(move || match_text(&a, &t).0)
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), expected);
    }
}

#[test]
fn scanner_can_move_between_threads() {
    let a = Scera::build(Relation::Exact, vec![vec![1, 2, 3]]).unwrap();
    let mut s = Scanner::new(&a);
    s.step(1);
    let found = thread::scope(|scope| {
        scope
            .spawn(move || {
                s.step(2);
                s.step(3)
            })
            .join()
            .unwrap()
    });
    assert_eq!(found.len(), 1);
    assert_eq!(found[0].position, 1);
}

/// Case-insensitive matching over ASCII letters: folding to lower case is a
/// prefix encoding with context-free codes.
#[derive(Debug, Clone, Copy)]
struct CaseFold;

impl PrefixEncoding for CaseFold {
    type Code = u64;
    type Stream = ();

    fn encode(&self, x: &[Symbol]) -> Vec<u64> {
        x.iter().map(|&c| fold(c)).collect()
    }

    fn reencode_last(&self, _window: &[Symbol], last: u64) -> u64 {
        last
    }

    fn stream(&self) {}

    fn push(&self, _: &mut (), recent: &[Symbol]) -> u64 {
        fold(*recent.last().unwrap())
    }
}

fn fold(c: Symbol) -> u64 {
    match char::from_u32(c as u32) {
        Some(ch) => ch.to_ascii_lowercase() as u64,
        None => c,
    }
}

fn chars(s: &str) -> Vec<Symbol> {
    s.chars().map(|c| c as Symbol).collect()
}

#[test]
fn custom_encoding_plugs_in() {
    let a = Scera::build(
        CaseFold,
        vec![chars("He"), chars("SHE"), chars("his"), chars("hers")],
    )
    .unwrap();
    let found: Vec<_> = match_text(&a, &chars("uSHErs"))
        .0
        .into_iter()
        .map(|o| (o.pattern_index, o.position))
        .collect();
    assert_eq!(found, vec![(1, 3), (2, 2), (4, 3)]);
    assert!(a.to_dot().contains("shape=doublecircle"));
}
