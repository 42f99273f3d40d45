//! Scanning a text with a built automaton.
//!
//! The scanner reads one symbol at a time. Before each transition it
//! re-encodes the last code of the window covered by the active state plus
//! the new symbol, follows failure links while no transition exists, and
//! then reports every pattern in the output set of the new active state.
//!
//! Only the last `height + 1` symbols (and their streamed codes) are kept:
//! no re-encoding window is longer than that.

use crate::automaton::{Scera, StateId};
use crate::encodings::PrefixEncoding;
use crate::{Relation, Symbol};

/// An occurrence of a pattern in the text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    /// 1-based index of the pattern in dictionary order.
    pub pattern_index: usize,
    /// 1-based start position in the text.
    pub position: usize,
}

impl Occurrence {
    pub fn new(pattern_index: usize, position: usize) -> Self {
        Occurrence {
            pattern_index,
            position,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct MatchStats {
    pub fail_executions: u64,
    pub goto_lookups: u64,
    pub occurrences_reported: u64,
}

/// Holds the most recent symbols in a contiguous slice. Storage grows to
/// twice the window before the stale half is dropped.
#[derive(Debug, Clone)]
struct Recent<T> {
    items: Vec<T>,
    keep: usize,
}

impl<T: Copy> Recent<T> {
    fn new(keep: usize) -> Self {
        Recent {
            items: Vec::with_capacity(2 * keep),
            keep,
        }
    }

    fn push(&mut self, item: T) {
        if self.items.len() == 2 * self.keep {
            self.items.drain(..self.keep);
        }
        self.items.push(item);
    }

    /// The last `min(keep, len)` items.
    fn window(&self) -> &[T] {
        &self.items[self.items.len().saturating_sub(self.keep)..]
    }

    fn last(&self) -> T {
        *self.items.last().expect("empty window")
    }
}

/// Streaming matcher over one text.
pub struct Scanner<'a, E: PrefixEncoding = Relation> {
    automaton: &'a Scera<E>,
    state: StateId,
    position: usize,
    symbols: Recent<Symbol>,
    codes: Recent<E::Code>,
    stream: E::Stream,
    stats: MatchStats,
}

impl<'a, E: PrefixEncoding> Scanner<'a, E> {
    /// # Panics
    ///
    /// If the automaton is not fully built.
    pub fn new(automaton: &'a Scera<E>) -> Self {
        assert_eq!(
            automaton.phase(),
            crate::Phase::Complete,
            "the automaton is not fully built"
        );
        let keep = automaton.height() + 1;
        Scanner {
            automaton,
            state: StateId::ROOT,
            position: 0,
            symbols: Recent::new(keep),
            codes: Recent::new(keep),
            stream: automaton.encoding().stream(),
            stats: MatchStats::default(),
        }
    }

    /// Consumes one symbol and returns the occurrences ending at it, ordered
    /// by pattern index.
    pub fn step(&mut self, symbol: Symbol) -> Vec<Occurrence> {
        let mut out = Vec::new();
        self.step_into(symbol, &mut out);
        out
    }

    /// Like [`Scanner::step`], appending to `out`.
    pub fn step_into(&mut self, symbol: Symbol, out: &mut Vec<Occurrence>) {
        let a = self.automaton;
        let encoding = a.encoding();
        self.position += 1;
        self.symbols.push(symbol);
        let code = encoding.push(&mut self.stream, self.symbols.window());
        self.codes.push(code);

        let recent = self.symbols.window();
        let last = self.codes.last();
        let mut v = self.state;
        loop {
            self.stats.goto_lookups += 1;
            if v == StateId::BOTTOM {
                v = StateId::ROOT;
                break;
            }
            let state = a.state(v);
            // a leaf has no transition for any code
            if !state.edges().is_empty() {
                let window = &recent[recent.len() - 1 - state.depth()..];
                if let Some(next) = a.goto(v, encoding.reencode_last(window, last)) {
                    v = next;
                    break;
                }
            }
            v = state.fail();
            self.stats.fail_executions += 1;
        }
        self.state = v;

        let start = out.len();
        let end = self.position;
        out.extend(
            a.outputs(v)
                .map(|k| Occurrence::new(k, end + 1 - a.patterns()[k - 1].len())),
        );
        out[start..].sort_unstable_by_key(|o| o.pattern_index);
        self.stats.occurrences_reported += (out.len() - start) as u64;
    }

    /// The active state.
    pub fn state(&self) -> StateId {
        self.state
    }

    /// Number of symbols consumed so far.
    pub fn position(&self) -> usize {
        self.position
    }

    pub fn stats(&self) -> MatchStats {
        self.stats
    }
}

/// All occurrences of all patterns in `text`, ordered by end position and
/// then by pattern index.
pub fn match_text<E: PrefixEncoding>(
    automaton: &Scera<E>,
    text: &[Symbol],
) -> (Vec<Occurrence>, MatchStats) {
    let mut scanner = Scanner::new(automaton);
    let mut out = Vec::new();
    for &c in text {
        scanner.step_into(c, &mut out);
    }
    (out, scanner.stats())
}
