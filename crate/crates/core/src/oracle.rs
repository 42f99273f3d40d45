//! Reference dictionary matcher that checks every window against every
//! pattern with the relation's definition. It shares no code with the
//! encoders or the automaton.

use crate::matcher::Occurrence;
use crate::{Error, Relation, Result, Symbol};

/// Every `(k, i)` with `patterns[k - 1]` equivalent to the text window
/// starting at 1-based position `i`, ordered by end position then `k`.
pub fn naive_match(
    relation: Relation,
    patterns: &[Vec<Symbol>],
    text: &[Symbol],
) -> Result<Vec<Occurrence>> {
    if patterns.is_empty() {
        return Err(Error::EmptyDictionary);
    }
    if let Some(k) = patterns.iter().position(|p| p.is_empty()) {
        return Err(Error::EmptyPattern { index: k + 1 });
    }
    let mut out = Vec::new();
    for end in 1..=text.len() {
        for (k, p) in patterns.iter().enumerate() {
            if p.len() <= end && relation.equiv(p, &text[end - p.len()..end]) {
                out.push(Occurrence::new(k + 1, end - p.len() + 1));
            }
        }
    }
    Ok(out)
}
