use std::fmt::Write;

use crate::automaton::{Scera, StateId};
use crate::encodings::PrefixEncoding;

impl<E: PrefixEncoding> Scera<E> {
    /// Renders the automaton in Graphviz DOT.
    ///
    /// Goto edges are solid and labelled with their code, failure edges are
    /// dashed, terminal states are double circles annotated with their
    /// pattern indices. States appear in id order and edges in code order, so
    /// the output is deterministic.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph scera {\n");
        out.push_str("    rankdir=LR;\n");
        out.push_str("    node [shape=circle];\n");
        for (id, state) in self.states() {
            let name = match id {
                StateId::BOTTOM => "⊥".to_string(),
                StateId::ROOT => "ε".to_string(),
                _ => self
                    .state_codes(id)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
            };
            if state.is_terminal() {
                let ids: Vec<_> = state
                    .terminal_ids()
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                writeln!(
                    out,
                    "    {id} [label=\"{}\", shape=doublecircle, xlabel=\"{{{}}}\"];",
                    escape(&name),
                    ids.join(",")
                )
                .unwrap();
            } else {
                writeln!(out, "    {id} [label=\"{}\"];", escape(&name)).unwrap();
            }
        }
        for (id, state) in self.states() {
            for (c, to) in state.edges() {
                writeln!(
                    out,
                    "    {id} -> {to} [label=\"{}\"];",
                    escape(&c.to_string())
                )
                .unwrap();
            }
        }
        for (id, state) in self.states().skip(1) {
            writeln!(
                out,
                "    {id} -> {} [style=dashed, color=blue];",
                state.fail()
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
