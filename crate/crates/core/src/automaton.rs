//! The automaton: a trie of encoded patterns with failure and output links.
//!
//! State 0 is the auxiliary state `⊥` sitting below the root. It is virtual
//! for transitions: a lookup at `⊥` returns the root for every code, so no
//! edges are stored for it. State 1 is the root (the empty prefix).
//!
//! Construction runs in three phases, in order:
//!
//! 1. [`Scera::const_goto`] inserts the encoded patterns into the trie,
//! 2. [`Scera::const_fail`] computes failure links breadth-first, re-encoding
//!    the tail of the pattern that created each state,
//! 3. [`Scera::const_out`] links each state to the nearest terminal state on
//!    its failure chain.
//!
//! [`Scera::build`] runs all three. A built automaton is immutable and can be
//! shared between any number of scanners.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::encodings::PrefixEncoding;
use crate::{Error, Relation, Result, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(usize);

impl StateId {
    /// The auxiliary state below the root.
    pub const BOTTOM: StateId = StateId(0);
    pub const ROOT: StateId = StateId(1);

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone)]
pub struct State<C> {
    /// Outgoing transitions, strictly sorted by code.
    edges: Vec<(C, StateId)>,
    fail: StateId,
    depth: usize,
    /// 1-based index of a pattern whose encoding has this state as a prefix.
    label: Option<usize>,
    /// 1-based indices of the patterns whose whole encoding is this state.
    terminal_ids: Vec<usize>,
    /// Nearest proper failure ancestor that is terminal.
    out_link: Option<StateId>,
}

impl<C> State<C> {
    fn new(depth: usize, label: Option<usize>) -> Self {
        State {
            edges: Vec::new(),
            fail: StateId::BOTTOM,
            depth,
            label,
            terminal_ids: Vec::new(),
            out_link: None,
        }
    }

    pub fn edges(&self) -> &[(C, StateId)] {
        &self.edges
    }

    pub fn fail(&self) -> StateId {
        self.fail
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn label(&self) -> Option<usize> {
        self.label
    }

    pub fn terminal_ids(&self) -> &[usize] {
        &self.terminal_ids
    }

    pub fn is_terminal(&self) -> bool {
        !self.terminal_ids.is_empty()
    }

    pub fn out_link(&self) -> Option<StateId> {
        self.out_link
    }
}

/// Counters collected while building the failure links.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct ConstructionStats {
    /// Failure links followed, counting the initial step to the parent's
    /// failure state.
    pub fail_executions: u64,
    pub goto_lookups: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Phase {
    Goto,
    Failure,
    Complete,
}

#[derive(Debug, Clone)]
pub struct Scera<E: PrefixEncoding = Relation> {
    encoding: E,
    states: Vec<State<E::Code>>,
    patterns: Vec<Vec<Symbol>>,
    encoded: Vec<Vec<E::Code>>,
    max_len: usize,
    stats: ConstructionStats,
    phase: Phase,
}

impl<E: PrefixEncoding> Scera<E> {
    /// Builds the complete automaton for `patterns`.
    pub fn build(encoding: E, patterns: Vec<Vec<Symbol>>) -> Result<Self> {
        Ok(Self::const_goto(encoding, patterns)?
            .const_fail()
            .const_out())
    }

    /// Inserts every encoded pattern into the trie.
    ///
    /// Patterns with equal encodings share one terminal state, which then
    /// carries all of their indices.
    pub fn const_goto(encoding: E, patterns: Vec<Vec<Symbol>>) -> Result<Self> {
        if patterns.is_empty() {
            return Err(Error::EmptyDictionary);
        }
        if let Some(k) = patterns.iter().position(|p| p.is_empty()) {
            return Err(Error::EmptyPattern { index: k + 1 });
        }
        let encoded: Vec<_> = patterns.iter().map(|p| encoding.encode(p)).collect();
        let max_len = patterns.iter().map(Vec::len).max().unwrap_or(0);

        let mut states: Vec<State<E::Code>> = vec![State::new(0, None), State::new(0, None)];
        for (k, code) in encoded.iter().enumerate() {
            let mut v = StateId::ROOT;
            for &c in code {
                let edges = &states[v.0].edges;
                v = match edges.binary_search_by(|(e, _)| e.cmp(&c)) {
                    Ok(at) => edges[at].1,
                    Err(at) => {
                        let u = StateId(states.len());
                        let depth = states[v.0].depth + 1;
                        states[v.0].edges.insert(at, (c, u));
                        states.push(State::new(depth, Some(k + 1)));
                        u
                    }
                };
            }
            states[v.0].terminal_ids.push(k + 1);
        }

        Ok(Scera {
            encoding,
            states,
            patterns,
            encoded,
            max_len,
            stats: ConstructionStats::default(),
            phase: Phase::Goto,
        })
    }

    /// Computes failure links in breadth-first order.
    ///
    /// For a child `u` of `v`, the chain `fail(v), fail(fail(v)), ...` is
    /// walked until some state `s` has a transition on the last code of the
    /// re-encoded suffix of length `depth(s) + 1` of the pattern labelling
    /// `u`. `⊥` always has one, so the walk terminates.
    pub fn const_fail(mut self) -> Self {
        assert_eq!(self.phase, Phase::Goto, "failure links already computed");
        self.states[StateId::ROOT.0].fail = StateId::BOTTOM;
        let mut queue = VecDeque::from([StateId::ROOT]);
        while let Some(v) = queue.pop_front() {
            for at in 0..self.states[v.0].edges.len() {
                let u = self.states[v.0].edges[at].1;
                queue.push_back(u);
                let fail = self.failure_target(self.states[v.0].fail, u);
                self.states[u.0].fail = fail;
            }
        }
        self.phase = Phase::Failure;
        self
    }

    fn failure_target(&mut self, mut s: StateId, u: StateId) -> StateId {
        let k = self.states[u.0]
            .label
            .expect("non-root states carry a label");
        let pattern = &self.patterns[k - 1];
        let code = &self.encoded[k - 1];
        let du = self.states[u.0].depth;
        self.stats.fail_executions += 1;
        loop {
            self.stats.goto_lookups += 1;
            if s == StateId::BOTTOM {
                return StateId::ROOT;
            }
            let ds = self.states[s.0].depth;
            let c = self
                .encoding
                .reencode_last(&pattern[du - ds - 1..du], code[du - 1]);
            if let Some(next) = self.goto(s, c) {
                return next;
            }
            s = self.states[s.0].fail;
            self.stats.fail_executions += 1;
        }
    }

    /// Sets output links: `out_link(v)` is `fail(v)` when that state is
    /// terminal and `out_link(fail(v))` otherwise.
    pub fn const_out(mut self) -> Self {
        assert_eq!(self.phase, Phase::Failure, "failure links must come first");
        let mut queue = VecDeque::from([StateId::ROOT]);
        while let Some(v) = queue.pop_front() {
            if v != StateId::ROOT {
                let f = self.states[v.0].fail;
                let fs = &self.states[f.0];
                self.states[v.0].out_link = if fs.is_terminal() {
                    Some(f)
                } else {
                    fs.out_link
                };
            }
            queue.extend(self.states[v.0].edges.iter().map(|&(_, u)| u));
        }
        self.phase = Phase::Complete;
        self
    }

    /// The transition from `state` on `c`. At `⊥` this is always the root.
    pub fn goto(&self, state: StateId, c: E::Code) -> Option<StateId> {
        if state == StateId::BOTTOM {
            return Some(StateId::ROOT);
        }
        let edges = &self.states[state.0].edges;
        edges
            .binary_search_by(|(e, _)| e.cmp(&c))
            .ok()
            .map(|at| edges[at].1)
    }

    /// Pattern indices reported at `state`: its own terminal ids, then those
    /// along the output-link chain.
    pub fn outputs(&self, state: StateId) -> Outputs<'_, E::Code> {
        Outputs {
            states: &self.states,
            current: &self.states[state.0].terminal_ids,
            next: self.states[state.0].out_link,
        }
    }

    /// Follows the goto function from the root along `codes`.
    pub fn find_state(&self, codes: &[E::Code]) -> Option<StateId> {
        codes
            .iter()
            .try_fold(StateId::ROOT, |v, &c| self.goto(v, c))
    }

    /// The encoded prefix a state stands for.
    pub fn state_codes(&self, state: StateId) -> &[E::Code] {
        let s = &self.states[state.0];
        match s.label {
            Some(k) => &self.encoded[k - 1][..s.depth],
            None => &[],
        }
    }

    pub fn state(&self, id: StateId) -> &State<E::Code> {
        &self.states[id.0]
    }

    pub fn states(&self) -> impl ExactSizeIterator<Item = (StateId, &State<E::Code>)> {
        self.states.iter().enumerate().map(|(i, s)| (StateId(i), s))
    }

    /// Number of states, `⊥` and the root included.
    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn encoding(&self) -> &E {
        &self.encoding
    }

    pub fn patterns(&self) -> &[Vec<Symbol>] {
        &self.patterns
    }

    pub fn encoded_patterns(&self) -> &[Vec<E::Code>] {
        &self.encoded
    }

    /// Length of the longest pattern.
    pub fn height(&self) -> usize {
        self.max_len
    }

    /// Total length of all patterns.
    pub fn total_len(&self) -> usize {
        self.patterns.iter().map(Vec::len).sum()
    }

    /// The largest number of outgoing transitions of any state.
    pub fn max_out_degree(&self) -> usize {
        self.states.iter().map(|s| s.edges.len()).max().unwrap_or(0)
    }

    pub fn stats(&self) -> ConstructionStats {
        self.stats
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// Distinct non-empty encoded prefixes, for diagnostics.
    pub fn prefix_set(&self) -> BTreeSet<&[E::Code]> {
        self.encoded
            .iter()
            .flat_map(|c| (1..=c.len()).map(move |j| &c[..j]))
            .collect()
    }
}

/// Iterator over the pattern indices reported at a state.
#[derive(Debug, Clone)]
pub struct Outputs<'a, C> {
    states: &'a [State<C>],
    current: &'a [usize],
    next: Option<StateId>,
}

impl<C> Iterator for Outputs<'_, C> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if let Some((&k, rest)) = self.current.split_first() {
                self.current = rest;
                return Some(k);
            }
            let s = &self.states[self.next?.0];
            self.current = &s.terminal_ids;
            self.next = s.out_link;
        }
    }
}
