//! Graphviz output. Arcs in `Z1 \ Z2` are solid blue, `Z2 \ Z1` dashed red,
//! `Z1 ∩ Z2` bold purple, unlabelled arcs grey.

use std::fmt::Write as _;

use crate::digraph::{Arc, LabeledDigraph};
use crate::pattern::SubdivisionWitness;

const PALETTE: [&str; 8] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

fn arc_style(a: &Arc) -> &'static str {
    match (a.z1, a.z2) {
        (true, false) => "color=blue",
        (false, true) => "color=red, style=dashed",
        (true, true) => "color=purple, style=bold",
        (false, false) => "color=gray50",
    }
}

/// Path arcs keep the class line style but take the path colour.
fn line_style(a: &Arc) -> &'static str {
    match (a.z1, a.z2) {
        (false, true) => "dashed",
        (true, true) => "bold",
        _ => "solid",
    }
}

pub fn instance_to_dot(d: &LabeledDigraph) -> String {
    render(d, None)
}

/// Like [`instance_to_dot`], with branch vertices boxed and path `e` drawn in
/// colour `e` of a fixed palette (cycled).
pub fn witness_to_dot(d: &LabeledDigraph, w: &SubdivisionWitness) -> String {
    render(d, Some(w))
}

fn render(d: &LabeledDigraph, w: Option<&SubdivisionWitness>) -> String {
    let mut out = String::from("digraph D {\n  node [shape=circle];\n");
    for &v in d.vertices() {
        match w.and_then(|w| w.branch.iter().position(|&b| b == v)) {
            Some(p) => writeln!(out, "  {v} [shape=box, xlabel=\"b{p}\"];").unwrap(),
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for a in d.arcs() {
        let on_path = w.and_then(|w| {
            w.paths
                .iter()
                .position(|p| p.arc_pairs().any(|pair| pair == (a.tail, a.head)))
        });
        match on_path {
            Some(e) => writeln!(
                out,
                "  {} -> {} [color=\"{c}\", style={}, penwidth=3, label=\"P{e}\", fontcolor=\"{c}\"];",
                a.tail,
                a.head,
                line_style(a),
                c = PALETTE[e % PALETTE.len()]
            )
            .unwrap(),
            None => writeln!(out, "  {} -> {} [{}];", a.tail, a.head, arc_style(a)).unwrap(),
        }
    }
    out.push_str("}\n");
    out
}
