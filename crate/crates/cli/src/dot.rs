//! Graphviz output. Node and edge order follow the input, so identical
//! inputs give identical text.

use std::collections::BTreeSet;
use std::fmt::Write;

use hnrank::{BallEdge, CoreGraph, EdgeId, FiniteGraph, ForestBall};

use crate::syntax::{generator_name, print_word, Syntax};

/// Base vertex drawn as a double circle; edges labelled by generator, with
/// `label:voltage` when voltages are given.
pub fn core_graph(g: &CoreGraph, voltages: Option<&[u64]>, syntax: Syntax) -> String {
    let mut out = String::from("digraph core {\n  node [shape=circle];\n");
    for v in 0..g.vertex_count() {
        let shape = if v == g.base() { " [shape=doublecircle]" } else { "" };
        writeln!(out, "  v{v}{shape};").unwrap();
    }
    for (i, e) in g.edges().iter().enumerate() {
        let mut label = generator_name(syntax, g.ambient_rank(), e.generator);
        if let Some(c) = voltages.map(|vs| vs[i]).filter(|&c| c != 0) {
            write!(label, ":{c}").unwrap();
        }
        writeln!(out, "  v{} -> v{} [label=\"{label}\"];", e.source, e.target).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Edges labelled by id; `removed` edges dashed.
pub fn finite_graph(g: &FiniteGraph, removed: &BTreeSet<EdgeId>) -> String {
    let mut out = String::from("digraph finite {\n  node [shape=circle];\n");
    for v in 0..g.vertex_count() {
        writeln!(out, "  v{v};").unwrap();
    }
    for (i, &(s, t)) in g.edges().iter().enumerate() {
        let style = if removed.contains(&EdgeId(i)) { ", style=dashed" } else { "" };
        writeln!(out, "  v{s} -> v{t} [label=\"e{i}\"{style}];").unwrap();
    }
    out.push_str("}\n");
    out
}

/// One cluster per copy. Vertices are labelled by their word, edges by
/// generator and order rank; `highlighted` edges are drawn bold red.
pub fn ball(b: &ForestBall, highlighted: &BTreeSet<BallEdge>, syntax: Syntax) -> String {
    let mut out = String::from("digraph ball {\n  node [shape=circle];\n");
    for copy in 0..b.copies() {
        let indent = if b.copies() > 1 {
            writeln!(out, "  subgraph cluster_{copy} {{\n    label=\"copy {copy}\";").unwrap();
            "    "
        } else {
            "  "
        };
        for v in b.vertices().filter(|v| v.copy == copy) {
            let w = b.word(v);
            let shape = if w.is_empty() { ", shape=doublecircle" } else { "" };
            writeln!(
                out,
                "{indent}c{copy}_{} [label=\"{}\"{shape}];",
                v.local,
                print_word(w, syntax)
            )
            .unwrap();
        }
        for e in b.edges().filter(|e| e.copy == copy) {
            let (s, t) = b.endpoints(e);
            let style = if highlighted.contains(&e) { ", color=red, penwidth=2" } else { "" };
            writeln!(
                out,
                "{indent}c{copy}_{} -> c{copy}_{} [label=\"{} #{}\"{style}];",
                s.local,
                t.local,
                generator_name(syntax, b.rank(), b.generator(e)),
                b.order_rank(e)
            )
            .unwrap();
        }
        if b.copies() > 1 {
            out.push_str("  }\n");
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bouquet() {
        let dot = core_graph(&CoreGraph::bouquet(2), None, Syntax::Compact);
        assert_eq!(
            dot,
            "digraph core {\n  node [shape=circle];\n  v0 [shape=doublecircle];\n  \
             v0 -> v0 [label=\"x\"];\n  v0 -> v0 [label=\"y\"];\n}\n"
        );
    }

    #[test]
    fn figure_eight_essential_set() {
        let g = FiniteGraph::rose(2);
        let dot = finite_graph(&g, &g.max_essential_set());
        assert_eq!(dot.matches("style=dashed").count(), 1);
        assert_eq!(dot.matches("->").count(), 2);
    }

    #[test]
    fn small_ball() {
        let b = ForestBall::build(2, 1).unwrap();
        let dot = ball(&b, &BTreeSet::new(), Syntax::Compact);
        assert_eq!(dot.matches("label=").count(), 9);
        assert_eq!(dot.matches("->").count(), 4);
    }
}
