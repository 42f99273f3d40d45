//! Dictionary matching under substring-consistent equivalence relations.
//!
//! An equivalence relation on strings is *substring consistent* when
//! equivalent strings have equal length and every aligned pair of substrings
//! is again equivalent. Exact matching, parameterized matching and
//! order-preserving matching all fall into this class.
//!
//! Matching works on *prefix encodings*: every pattern is mapped to a string
//! over an ordered code alphabet such that two strings are equivalent exactly
//! when their encodings are equal, and the encoding of a prefix is the prefix
//! of the encoding. The encoded patterns are arranged in a trie, extended
//! with failure and output links in the style of Aho-Corasick, and the text
//! is scanned once, re-encoding the last symbol of the current window before
//! each transition.
//!
//! ```
//! use scera::{match_text, Relation, Scera};
//!
//! let patterns = vec![vec![1, 2, 1]];
//! let automaton = Scera::build(Relation::Parameterized, patterns).unwrap();
//! let (occurrences, _stats) = match_text(&automaton, &[7, 9, 7, 9]);
//! let starts: Vec<_> = occurrences.iter().map(|o| o.position).collect();
//! assert_eq!(starts, vec![1, 2]);
//! ```

pub mod automaton;
pub mod cli;
mod dot;
pub mod encodings;
mod error;
pub mod gen;
pub mod matcher;
pub mod oracle;
pub mod relations;

pub use automaton::{ConstructionStats, Phase, Scera, State, StateId};
pub use encodings::{
    encode, reencode, EncodedSymbol, Exact, NearestNeighbor, NeighborCode, PrefixEncoding, Prev,
};
pub use error::{Error, Result};
pub use matcher::{match_text, MatchStats, Occurrence, Scanner};
pub use oracle::naive_match;
pub use relations::Relation;

/// A source-alphabet token. Texts and patterns are sequences of symbols.
pub type Symbol = u64;
