//! Prefix encodings.
//!
//! A prefix encoding `f` for an equivalence relation satisfies
//!
//! 1. `|f(X)| = |X|`,
//! 2. `f(X[..i]) = f(X)[..i]` for every `i`,
//! 3. `f(X) = f(Y)` iff `X` and `Y` are equivalent.
//!
//! Codes depend on context, so the last code of a window `X[s..=i]` is not in
//! general `f(X)[i]`; [`PrefixEncoding::reencode_last`] recomputes it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;

use crate::{Error, Relation, Result, Symbol};

/// A prefix encoding for some substring-consistent equivalence relation.
///
/// The automaton and the matcher only ever compare codes; they never look
/// inside them.
pub trait PrefixEncoding {
    type Code: Copy + Ord + fmt::Debug + fmt::Display;

    /// State carried across [`PrefixEncoding::push`] calls while a text is
    /// encoded one symbol at a time.
    type Stream;

    fn encode(&self, x: &[Symbol]) -> Vec<Self::Code>;

    /// Returns the last code of `encode(window)`.
    ///
    /// `last` must be the code of the window's final symbol in the encoding
    /// of some string that ends with `window` (for instance the whole string
    /// the window was cut from).
    fn reencode_last(&self, window: &[Symbol], last: Self::Code) -> Self::Code;

    fn stream(&self) -> Self::Stream;

    /// Encodes the newest symbol of a text fed one symbol at a time.
    ///
    /// `recent` ends with the new symbol and holds at least the symbols that
    /// any later re-encoding window will cover. The returned code is valid as
    /// the `last` argument of [`PrefixEncoding::reencode_last`] for every
    /// suffix of `recent`.
    fn push(&self, stream: &mut Self::Stream, recent: &[Symbol]) -> Self::Code;
}

/// `f(X)` for the given encoding.
pub fn encode<E: PrefixEncoding>(encoding: &E, x: &[Symbol]) -> Vec<E::Code> {
    encoding.encode(x)
}

/// The last code of `encode(x[window])`, given `fx = encode(x)`.
///
/// `window` is a half-open range of 0-based positions and must be non-empty.
pub fn reencode<E: PrefixEncoding>(
    encoding: &E,
    x: &[Symbol],
    fx: &[E::Code],
    window: Range<usize>,
) -> Result<E::Code> {
    if fx.len() != x.len() {
        return Err(Error::EncodingLength {
            encoded: fx.len(),
            len: x.len(),
        });
    }
    if window.start >= window.end || window.end > x.len() {
        return Err(Error::InvalidWindow {
            window,
            len: x.len(),
        });
    }
    let last = fx[window.end - 1];
    Ok(encoding.reencode_last(&x[window], last))
}

/// The identity encoding.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Exact;

impl PrefixEncoding for Exact {
    type Code = Symbol;
    type Stream = ();

    fn encode(&self, x: &[Symbol]) -> Vec<Symbol> {
        x.to_vec()
    }

    fn reencode_last(&self, _window: &[Symbol], last: Symbol) -> Symbol {
        last
    }

    fn stream(&self) {}

    fn push(&self, _stream: &mut (), recent: &[Symbol]) -> Symbol {
        *recent.last().expect("push needs at least one symbol")
    }
}

/// The prev-encoding: each symbol becomes the distance to its previous
/// occurrence, or 0 if it has none.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Prev;

#[derive(Debug, Clone, Default)]
pub struct PrevStream {
    position: usize,
    last_seen: HashMap<Symbol, usize>,
}

impl PrefixEncoding for Prev {
    type Code = usize;
    type Stream = PrevStream;

    fn encode(&self, x: &[Symbol]) -> Vec<usize> {
        let mut stream = self.stream();
        x.iter().map(|&c| stream.next(c)).collect()
    }

    fn reencode_last(&self, window: &[Symbol], last: usize) -> usize {
        if last < window.len() {
            last
        } else {
            0
        }
    }

    fn stream(&self) -> PrevStream {
        PrevStream::default()
    }

    fn push(&self, stream: &mut PrevStream, recent: &[Symbol]) -> usize {
        stream.next(*recent.last().expect("push needs at least one symbol"))
    }
}

impl PrevStream {
    fn next(&mut self, c: Symbol) -> usize {
        self.position += 1;
        match self.last_seen.insert(c, self.position) {
            Some(prev) => self.position - prev,
            None => 0,
        }
    }
}

/// Code of the nearest-neighbor encoding.
///
/// `below` is the distance back to the rightmost position holding the
/// largest earlier value that is `<=` the current one, `above` the distance
/// to the rightmost position holding the smallest earlier value that is
/// `>=` it. A missing neighbor is 0. When an equal value occurred earlier
/// both distances point at its rightmost occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NeighborCode {
    pub below: usize,
    pub above: usize,
}

impl NeighborCode {
    pub fn new(below: usize, above: usize) -> Self {
        NeighborCode { below, above }
    }
}

impl fmt::Display for NeighborCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.below, self.above)
    }
}

/// The nearest-neighbor encoding used for order-preserving matching.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NearestNeighbor;

impl NearestNeighbor {
    /// Code of the last symbol of `window`, by a linear scan.
    fn scan(window: &[Symbol]) -> NeighborCode {
        let Some((&v, earlier)) = window.split_last() else {
            return NeighborCode::default();
        };
        let i = earlier.len();
        // (value, position); scanning left to right with `>=`/`<=` keeps the rightmost
        let mut below: Option<(Symbol, usize)> = None;
        let mut above: Option<(Symbol, usize)> = None;
        for (j, &w) in earlier.iter().enumerate() {
            if w <= v && below.is_none_or(|(b, _)| w >= b) {
                below = Some((w, j));
            }
            if w >= v && above.is_none_or(|(a, _)| w <= a) {
                above = Some((w, j));
            }
        }
        NeighborCode {
            below: below.map_or(0, |(_, j)| i - j),
            above: above.map_or(0, |(_, j)| i - j),
        }
    }
}

impl PrefixEncoding for NearestNeighbor {
    type Code = NeighborCode;
    type Stream = ();

    fn encode(&self, x: &[Symbol]) -> Vec<NeighborCode> {
        // value -> rightmost position seen so far
        let mut seen: BTreeMap<Symbol, usize> = BTreeMap::new();
        let mut out = Vec::with_capacity(x.len());
        for (i, &v) in x.iter().enumerate() {
            let below = seen.range(..=v).next_back().map_or(0, |(_, &j)| i - j);
            let above = seen.range(v..).next().map_or(0, |(_, &j)| i - j);
            out.push(NeighborCode { below, above });
            seen.insert(v, i);
        }
        out
    }

    fn reencode_last(&self, window: &[Symbol], _last: NeighborCode) -> NeighborCode {
        Self::scan(window)
    }

    fn stream(&self) {}

    fn push(&self, _stream: &mut (), recent: &[Symbol]) -> NeighborCode {
        Self::scan(recent)
    }
}

/// A code of one of the built-in encodings.
///
/// Codes of different relations never meet inside one automaton, so the
/// cross-variant order is irrelevant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EncodedSymbol {
    Int(u64),
    Pair(u64, u64),
}

impl From<NeighborCode> for EncodedSymbol {
    fn from(c: NeighborCode) -> Self {
        EncodedSymbol::Pair(c.below as u64, c.above as u64)
    }
}

impl EncodedSymbol {
    fn int(self) -> u64 {
        match self {
            EncodedSymbol::Int(v) => v,
            EncodedSymbol::Pair(..) => panic!("expected an integer code, found {self}"),
        }
    }
}

impl fmt::Display for EncodedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EncodedSymbol::Int(v) => write!(f, "{v}"),
            EncodedSymbol::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum RelationStream {
    Exact,
    Prev(PrevStream),
    NearestNeighbor,
}

impl PrefixEncoding for Relation {
    type Code = EncodedSymbol;
    type Stream = RelationStream;

    fn encode(&self, x: &[Symbol]) -> Vec<EncodedSymbol> {
        match self {
            Relation::Exact => x.iter().map(|&c| EncodedSymbol::Int(c)).collect(),
            Relation::Parameterized => Prev
                .encode(x)
                .into_iter()
                .map(|d| EncodedSymbol::Int(d as u64))
                .collect(),
            Relation::OrderPreserving => NearestNeighbor
                .encode(x)
                .into_iter()
                .map(EncodedSymbol::from)
                .collect(),
        }
    }

    fn reencode_last(&self, window: &[Symbol], last: EncodedSymbol) -> EncodedSymbol {
        match self {
            Relation::Exact => last,
            Relation::Parameterized => {
                EncodedSymbol::Int(Prev.reencode_last(window, last.int() as usize) as u64)
            }
            Relation::OrderPreserving => NearestNeighbor::scan(window).into(),
        }
    }

    fn stream(&self) -> RelationStream {
        match self {
            Relation::Exact => RelationStream::Exact,
            Relation::Parameterized => RelationStream::Prev(Prev.stream()),
            Relation::OrderPreserving => RelationStream::NearestNeighbor,
        }
    }

    fn push(&self, stream: &mut RelationStream, recent: &[Symbol]) -> EncodedSymbol {
        match stream {
            RelationStream::Exact => EncodedSymbol::Int(Exact.push(&mut (), recent)),
            RelationStream::Prev(s) => EncodedSymbol::Int(Prev.push(s, recent) as u64),
            RelationStream::NearestNeighbor => NearestNeighbor.push(&mut (), recent).into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::{op_equiv, param_equiv};
    use proptest::prelude::*;

    /// Definition-level prev-encoding: scan backwards for the previous occurrence.
    fn naive_prev(x: &[Symbol]) -> Vec<usize> {
        (0..x.len())
            .map(|i| (0..i).rev().find(|&j| x[j] == x[i]).map_or(0, |j| i - j))
            .collect()
    }

    /// Definition-level nearest-neighbor encoding.
    fn naive_nn(x: &[Symbol]) -> Vec<NeighborCode> {
        (0..x.len())
            .map(|i| {
                let lower: Vec<usize> = (0..i).filter(|&j| x[j] <= x[i]).collect();
                let upper: Vec<usize> = (0..i).filter(|&j| x[j] >= x[i]).collect();
                let below = lower
                    .iter()
                    .map(|&j| x[j])
                    .max()
                    .map_or(0, |m| i - lower.iter().rev().find(|&&j| x[j] == m).unwrap());
                let above = upper
                    .iter()
                    .map(|&j| x[j])
                    .min()
                    .map_or(0, |m| i - upper.iter().rev().find(|&&j| x[j] == m).unwrap());
                NeighborCode { below, above }
            })
            .collect()
    }

    fn pair(a: u64, b: u64) -> EncodedSymbol {
        EncodedSymbol::Pair(a, b)
    }

    #[test]
    fn oracles_agree_with_frozen_examples() {
        assert_eq!(naive_prev(&[1, 1, 2, 2, 1]), vec![0, 1, 0, 1, 3]);
        let nn = |a, b| NeighborCode::new(a, b);
        assert_eq!(naive_nn(&[3, 1, 2]), vec![nn(0, 0), nn(0, 1), nn(1, 2)]);
        assert_eq!(naive_nn(&[1, 2, 2]), vec![nn(0, 0), nn(1, 0), nn(1, 1)]);
        assert_eq!(naive_nn(&[10, 10, 3]).last(), Some(&nn(0, 1)));
    }

    #[test]
    fn encode_examples() {
        let int = |v: &[u64]| v.iter().map(|&c| EncodedSymbol::Int(c)).collect::<Vec<_>>();
        assert_eq!(Relation::Exact.encode(&[2, 7, 2]), int(&[2, 7, 2]));
        assert_eq!(
            Relation::Parameterized.encode(&[1, 1, 2, 2, 1]),
            int(&[0, 1, 0, 1, 3])
        );
        assert_eq!(
            Relation::OrderPreserving.encode(&[3, 1, 2]),
            vec![pair(0, 0), pair(0, 1), pair(1, 2)]
        );
        assert_eq!(
            Relation::OrderPreserving.encode(&[1, 2, 2]),
            vec![pair(0, 0), pair(1, 0), pair(1, 1)]
        );
    }

    #[test]
    fn reencode_examples() {
        let x = [1, 1, 2, 2, 1];
        let fx = Relation::Parameterized.encode(&x);
        assert_eq!(
            reencode(&Relation::Parameterized, &x, &fx, 2..5),
            Ok(EncodedSymbol::Int(0))
        );

        let x = [4, 5, 6];
        let fx = Relation::Exact.encode(&x);
        assert_eq!(
            reencode(&Relation::Exact, &x, &fx, 1..3),
            Ok(EncodedSymbol::Int(6))
        );

        // window [10, 10, 3]: no smaller neighbor, the rightmost 10 is one step back
        let x = [5, 10, 10, 3];
        let fx = Relation::OrderPreserving.encode(&x);
        assert_eq!(
            reencode(&Relation::OrderPreserving, &x, &fx, 1..4),
            Ok(pair(0, 1))
        );
    }

    #[test]
    #[allow(clippy::reversed_empty_ranges)]
    fn reencode_rejects_bad_windows() {
        let x = [1, 2, 3];
        let fx = Relation::Exact.encode(&x);
        for window in [1..1, 2..1, 0..4, 3..4] {
            assert_eq!(
                reencode(&Relation::Exact, &x, &fx, window.clone()),
                Err(Error::InvalidWindow { window, len: 3 })
            );
        }
        assert_eq!(
            reencode(&Relation::Exact, &x, &fx[..2], 0..1),
            Err(Error::EncodingLength { encoded: 2, len: 3 })
        );
    }

    #[test]
    fn streaming_prev_matches_batch() {
        let x = [4, 4, 9, 4, 9, 9, 1];
        let mut s = Prev.stream();
        let streamed: Vec<_> = (1..=x.len()).map(|i| Prev.push(&mut s, &x[..i])).collect();
        assert_eq!(streamed, Prev.encode(&x));
    }

    fn text(max_len: usize, sigma: u64) -> impl Strategy<Value = Vec<Symbol>> {
        prop::collection::vec(0..sigma, 0..max_len)
    }

    proptest! {
        #[test]
        fn prev_matches_definition(x in text(40, 5)) {
            prop_assert_eq!(Prev.encode(&x), naive_prev(&x));
        }

        #[test]
        fn nearest_neighbor_matches_definition(x in text(40, 6)) {
            prop_assert_eq!(NearestNeighbor.encode(&x), naive_nn(&x));
        }

        #[test]
        fn prefix_commutation(x in text(30, 4)) {
            for r in Relation::ALL {
                let fx = r.encode(&x);
                prop_assert_eq!(fx.len(), x.len());
                for i in 0..=x.len() {
                    prop_assert_eq!(&r.encode(&x[..i])[..], &fx[..i]);
                }
            }
        }

        #[test]
        fn encoding_equality_is_equivalence(
            (x, y) in (0usize..7).prop_flat_map(|n| (
                prop::collection::vec(0u64..3, n),
                prop::collection::vec(0u64..3, n),
            )),
        ) {
            for r in Relation::ALL {
                prop_assert_eq!(r.encode(&x) == r.encode(&y), r.equiv(&x, &y), "{}", r);
            }
            prop_assert_eq!(param_equiv(&x, &y), Prev.encode(&x) == Prev.encode(&y));
            prop_assert_eq!(op_equiv(&x, &y), NearestNeighbor.encode(&x) == NearestNeighbor.encode(&y));
        }

        #[test]
        fn reencode_matches_window_encoding(x in text(25, 5)) {
            for r in Relation::ALL {
                let fx = r.encode(&x);
                for s in 0..x.len() {
                    for e in s + 1..=x.len() {
                        let got = reencode(&r, &x, &fx, s..e).unwrap();
                        prop_assert_eq!(Some(got), r.encode(&x[s..e]).last().copied());
                    }
                }
            }
        }
    }
}
