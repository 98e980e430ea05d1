//! Graphviz DOT output. Arrows run from source to range; red edges are `a`, blue are `b`.

use std::fmt::Write as _;

use crate::degree::{Degree, Letter};
use crate::graph::ColouredGraph;
use crate::model::ModelGraph;
use crate::morphism::Morphism;

fn colour(l: Letter) -> &'static str {
    match l {
        Letter::A => "red",
        Letter::B => "blue",
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn graph_to_dot(g: &ColouredGraph) -> String {
    let mut out = String::from("digraph E {\n");
    for v in g.vertex_ids() {
        writeln!(out, "  {};", quote(g.vertex_name(v))).unwrap();
    }
    for e in g.edge_ids() {
        let d = g.edge_data(e);
        writeln!(
            out,
            "  {} -> {} [label={}, color={}];",
            quote(g.vertex_name(d.source)),
            quote(g.vertex_name(d.range)),
            quote(&d.name),
            colour(d.colour)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Model graph with vertices labelled by their shortest-form strings.
pub fn model_to_dot<D: Degree>(model: &ModelGraph<D>) -> String {
    let mut out = format!(
        "digraph {} {{\n",
        quote(&format!("E_{}", model.degree().label()))
    );
    for z in model.vertices() {
        writeln!(out, "  {};", quote(&z.label())).unwrap();
    }
    for e in model.edges() {
        writeln!(
            out,
            "  {} -> {} [color={}];",
            quote(&e.source().label()),
            quote(&e.base.label()),
            colour(e.letter)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// The domain of `m` with each vertex and edge labelled by its image.
pub fn morphism_to_dot<D: Degree>(g: &ColouredGraph, m: &Morphism<D>) -> String {
    let mut out = format!(
        "digraph {} {{\n",
        quote(&format!("lambda_{}", m.degree().label()))
    );
    for (z, v) in m.vertex_map() {
        writeln!(
            out,
            "  {} [label={}];",
            quote(&z.label()),
            quote(&format!("{} ↦ {}", z.label(), g.vertex_name(*v)))
        )
        .unwrap();
    }
    for ((z, l), e) in m.edge_map() {
        writeln!(
            out,
            "  {} -> {} [label={}, color={}];",
            quote(&z.push(*l).label()),
            quote(&z.label()),
            quote(g.edge_name(*e)),
            colour(*l)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
