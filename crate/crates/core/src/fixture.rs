//! The line-oriented fixture format for a graph and its squares.
//!
//! ```text
//! # comments run to the end of the line
//! mode bs                                   # or: mode grid (default bs)
//! vertex u
//! edge f a u v                              # name colour range source
//! square phi1 eA=f aB=k abB=k eB=g bA=f     # bs slots
//! square s v1=r e1v2=b v2=b e2v1=r          # grid slots
//! ```
//!
//! Colours are `a`/`b` or `1`/`2`. Squares take the shape of the file's mode.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::degree::{Letter, SquareShape};
use crate::graph::{parse_colour, ColouredGraph, GraphError};
use crate::square::{check_complete, Collection, CompletenessReport, SquareError, SquareSpec};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub mode: SquareShape,
    pub graph: ColouredGraph,
    pub squares: Vec<SquareSpec>,
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Fixture, FixtureError> {
        let mut mode: Option<SquareShape> = None;
        let mut graph = ColouredGraph::default();
        let mut raw_squares: Vec<(String, Vec<(String, String)>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let Some((&keyword, args)) = tokens.split_first() else {
                continue;
            };
            let syntax = |msg: &str| FixtureError::Syntax {
                line,
                msg: msg.to_owned(),
            };
            let graph_err = |source| FixtureError::Graph { line, source };
            match keyword {
                "mode" => {
                    let m = match args {
                        ["bs"] => SquareShape::Bs,
                        ["grid"] => SquareShape::Grid,
                        _ => return Err(syntax("expected `mode bs` or `mode grid`")),
                    };
                    if mode.replace(m).is_some() {
                        return Err(syntax("mode given twice"));
                    }
                }
                "vertex" => match args {
                    [name] => {
                        graph.add_vertex(name).map_err(graph_err)?;
                    }
                    _ => return Err(syntax("expected `vertex <name>`")),
                },
                "edge" => match args {
                    [name, colour, range, source] => {
                        let colour = parse_colour(colour).map_err(graph_err)?;
                        graph
                            .add_edge(name, colour, range, source)
                            .map_err(graph_err)?;
                    }
                    _ => return Err(syntax("expected `edge <name> <colour> <range> <source>`")),
                },
                "square" => {
                    let Some((name, slots)) = args.split_first() else {
                        return Err(syntax("expected `square <name> <slot>=<edge> ...`"));
                    };
                    let mut images = Vec::new();
                    for s in slots {
                        let Some((slot, edge)) = s.split_once('=') else {
                            return Err(syntax(&format!("expected <slot>=<edge>, found {s:?}")));
                        };
                        images.push((slot.to_owned(), edge.to_owned()));
                    }
                    raw_squares.push(((*name).to_owned(), images));
                }
                other => return Err(syntax(&format!("unknown keyword {other:?}"))),
            }
        }
        let mode = mode.unwrap_or(SquareShape::Bs);
        let squares = raw_squares
            .into_iter()
            .map(|(name, images)| SquareSpec {
                name,
                shape: mode,
                images,
            })
            .collect();
        Ok(Fixture {
            mode,
            graph,
            squares,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Fixture, FixtureError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| FixtureError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Fixture::parse(&text)
    }

    /// Canonical text: mode, vertices, edges, squares, in declaration order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "mode {}", self.mode).unwrap();
        for v in self.graph.vertex_ids() {
            writeln!(out, "vertex {}", self.graph.vertex_name(v)).unwrap();
        }
        for e in self.graph.edge_ids() {
            let data = self.graph.edge_data(e);
            let colour = match (self.mode, data.colour) {
                (SquareShape::Bs, l) => l.to_string(),
                (SquareShape::Grid, Letter::A) => "1".to_owned(),
                (SquareShape::Grid, Letter::B) => "2".to_owned(),
            };
            writeln!(
                out,
                "edge {} {} {} {}",
                data.name,
                colour,
                self.graph.vertex_name(data.range),
                self.graph.vertex_name(data.source)
            )
            .unwrap();
        }
        for sq in &self.squares {
            write!(out, "square {}", sq.name).unwrap();
            for (slot, edge) in &sq.images {
                write!(out, " {slot}={edge}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn check(&self) -> CompletenessReport {
        check_complete(&self.graph, self.mode, &self.squares)
    }

    pub fn collection(&self) -> Result<Collection, SquareError> {
        Collection::from_specs(&self.graph, self.mode, &self.squares)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "\
# the worked example
mode bs
vertex u
vertex v
edge g b u u
edge k b v v
edge f a u v   # red, u <- v
edge h a v u
square phi1 eA=f aB=k abB=k eB=g bA=f
square phi2 eA=h aB=g abB=g eB=k bA=h
";

    #[test]
    fn parses_the_example() {
        let fx = Fixture::parse(EXAMPLE).unwrap();
        assert_eq!(fx.mode, SquareShape::Bs);
        assert_eq!(fx.graph.vertex_count(), 2);
        assert_eq!(fx.graph.edge_count(), 4);
        assert_eq!(fx.squares.len(), 2);
        assert!(fx.check().is_complete());
    }

    #[test]
    fn round_trip() {
        let fx = Fixture::parse(EXAMPLE).unwrap();
        let text = fx.serialize();
        let again = Fixture::parse(&text).unwrap();
        assert_eq!(fx, again);
        assert_eq!(again.serialize(), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = Fixture::parse("vertex u\nedge f a u w\n").unwrap_err();
        assert!(matches!(err, FixtureError::Graph { line: 2, .. }));
        let err = Fixture::parse("vertex u\nnode x\n").unwrap_err();
        assert!(matches!(err, FixtureError::Syntax { line: 2, .. }));
        let err = Fixture::parse("edge f c u u\n").unwrap_err();
        assert!(err.to_string().contains("line 1"));
        let err = Fixture::parse("square s eA\n").unwrap_err();
        assert!(matches!(err, FixtureError::Syntax { line: 1, .. }));
    }

    #[test]
    fn grid_colours_serialize_as_digits() {
        let fx = Fixture::parse("mode grid\nvertex w\nedge r 1 w w\nedge b 2 w w\n").unwrap();
        assert!(fx.serialize().contains("edge r 1 w w"));
        assert_eq!(Fixture::parse(&fx.serialize()).unwrap(), fx);
    }
}
