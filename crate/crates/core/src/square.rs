//! Squares, complete collections, and the two boundary-path indices.
//!
//! A square is a morphism from the square template (`E_{ba}`, resp. the unit
//! grid square) into a graph. It is stored as its two boundary paths: the
//! red-first boundary (colours `abb`, resp. `ab`) and the blue-first boundary
//! (colours `ba`). Completeness means each index covers every path of the
//! matching colour word exactly once.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::degree::{Letter, SquareShape};
use crate::graph::{ColouredGraph, EdgeId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SquareError {
    #[error("square {square}: unknown edge {edge:?}")]
    UnknownEdge { square: String, edge: String },
    #[error("square {square}: unknown slot {slot:?} for {shape} squares")]
    UnknownSlot {
        square: String,
        slot: String,
        shape: SquareShape,
    },
    #[error("square {square}: slot {slot} assigned twice")]
    DuplicateSlot { square: String, slot: String },
    #[error("square {square}: slot {slot} is missing")]
    MissingSlot { square: String, slot: String },
    #[error("square {square}: slot {slot} needs a {expected} edge but {edge} is {found}")]
    ColourMismatch {
        square: String,
        slot: String,
        edge: String,
        expected: &'static str,
        found: &'static str,
    },
    #[error("square {square}: {equation} fails")]
    JunctionMismatch { square: String, equation: String },
    #[error("square {square} has shape {found} but the collection holds {expected} squares")]
    ShapeMismatch {
        square: String,
        expected: SquareShape,
        found: SquareShape,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{direction} boundary path {path} is not covered by the collection")]
pub struct NotCovered {
    pub direction: &'static str,
    pub path: String,
}

/// Slot names of the red-first boundary followed by the blue-first boundary.
pub fn slot_names(shape: SquareShape) -> (&'static [&'static str], &'static [&'static str]) {
    match shape {
        SquareShape::Bs => (&["eA", "aB", "abB"], &["eB", "bA"]),
        SquareShape::Grid => (&["v1", "e1v2"], &["v2", "e2v1"]),
    }
}

/// A square as written in a fixture: named slots bound to edge names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareSpec {
    pub name: String,
    pub shape: SquareShape,
    pub images: Vec<(String, String)>,
}

impl SquareSpec {
    pub fn new<S: Into<String>>(name: S, shape: SquareShape, images: &[(&str, &str)]) -> Self {
        SquareSpec {
            name: name.into(),
            shape,
            images: images
                .iter()
                .map(|(s, e)| ((*s).to_owned(), (*e).to_owned()))
                .collect(),
        }
    }

    /// Binds the spec to `g`, checking colours and junctions.
    pub fn bind(&self, g: &ColouredGraph) -> Result<Square, SquareError> {
        let (red_slots, blue_slots) = slot_names(self.shape);
        let mut by_slot: HashMap<&str, EdgeId> = HashMap::new();
        for (slot, edge) in &self.images {
            if !red_slots.contains(&slot.as_str()) && !blue_slots.contains(&slot.as_str()) {
                return Err(SquareError::UnknownSlot {
                    square: self.name.clone(),
                    slot: slot.clone(),
                    shape: self.shape,
                });
            }
            let id = g.edge(edge).map_err(|_| SquareError::UnknownEdge {
                square: self.name.clone(),
                edge: edge.clone(),
            })?;
            if by_slot.insert(slot.as_str(), id).is_some() {
                return Err(SquareError::DuplicateSlot {
                    square: self.name.clone(),
                    slot: slot.clone(),
                });
            }
        }
        let take = |slots: &[&str]| -> Result<Vec<EdgeId>, SquareError> {
            slots
                .iter()
                .map(|s| {
                    by_slot
                        .get(s)
                        .copied()
                        .ok_or_else(|| SquareError::MissingSlot {
                            square: self.name.clone(),
                            slot: (*s).to_owned(),
                        })
                })
                .collect()
        };
        let red = take(red_slots)?;
        let blue = take(blue_slots)?;
        Square::new(g, self.shape, self.name.clone(), red, blue)
    }
}

/// A square bound to a graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Square {
    pub name: String,
    pub shape: SquareShape,
    pub red_first: Vec<EdgeId>,
    pub blue_first: Vec<EdgeId>,
}

impl Square {
    pub fn new(
        g: &ColouredGraph,
        shape: SquareShape,
        name: String,
        red_first: Vec<EdgeId>,
        blue_first: Vec<EdgeId>,
    ) -> Result<Square, SquareError> {
        let (red_slots, blue_slots) = slot_names(shape);
        assert_eq!(
            red_first.len(),
            red_slots.len(),
            "red-first boundary length"
        );
        assert_eq!(
            blue_first.len(),
            blue_slots.len(),
            "blue-first boundary length"
        );
        let check_colours = |edges: &[EdgeId], word: &[Letter], slots: &[&str]| {
            for ((&e, &l), slot) in edges.iter().zip(word).zip(slots) {
                if g.colour(e) != l {
                    return Err(SquareError::ColourMismatch {
                        square: name.clone(),
                        slot: (*slot).to_owned(),
                        edge: g.edge_name(e).to_owned(),
                        expected: l.colour_name(),
                        found: g.colour(e).colour_name(),
                    });
                }
            }
            Ok(())
        };
        check_colours(&red_first, shape.red_word(), red_slots)?;
        check_colours(&blue_first, shape.blue_word(), blue_slots)?;

        let fail = |equation: String| SquareError::JunctionMismatch {
            square: name.clone(),
            equation,
        };
        if g.range(red_first[0]) != g.range(blue_first[0]) {
            return Err(fail(format!("r({})=r({})", red_slots[0], blue_slots[0])));
        }
        for (i, pair) in red_first.windows(2).enumerate() {
            if g.source(pair[0]) != g.range(pair[1]) {
                return Err(fail(format!("s({})=r({})", red_slots[i], red_slots[i + 1])));
            }
        }
        for (i, pair) in blue_first.windows(2).enumerate() {
            if g.source(pair[0]) != g.range(pair[1]) {
                return Err(fail(format!(
                    "s({})=r({})",
                    blue_slots[i],
                    blue_slots[i + 1]
                )));
            }
        }
        let (last_red, last_blue) = (red_first.len() - 1, blue_first.len() - 1);
        if g.source(red_first[last_red]) != g.source(blue_first[last_blue]) {
            return Err(fail(format!(
                "s({})=s({})",
                red_slots[last_red], blue_slots[last_blue]
            )));
        }
        Ok(Square {
            name,
            shape,
            red_first,
            blue_first,
        })
    }

    /// Edge images in slot order, red-first boundary then blue-first.
    pub fn slot_images(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.red_first.iter().chain(self.blue_first.iter()).copied()
    }

    /// Same edge data, ignoring the name.
    pub fn same_edges(&self, other: &Square) -> bool {
        self.shape == other.shape
            && self.red_first == other.red_first
            && self.blue_first == other.blue_first
    }
}

/// A collection of squares with eager indices on both boundaries.
#[derive(Debug, Clone)]
pub struct Collection {
    shape: SquareShape,
    squares: Vec<Square>,
    index_red: HashMap<Vec<EdgeId>, usize>,
    index_blue: HashMap<Vec<EdgeId>, usize>,
    duplicates: Vec<(&'static str, Vec<EdgeId>, Vec<usize>)>,
}

impl Collection {
    pub fn new(shape: SquareShape, squares: Vec<Square>) -> Result<Self, SquareError> {
        let mut index_red = HashMap::new();
        let mut index_blue = HashMap::new();
        let mut clashes: BTreeMap<(&'static str, Vec<EdgeId>), Vec<usize>> = BTreeMap::new();
        for (i, sq) in squares.iter().enumerate() {
            if sq.shape != shape {
                return Err(SquareError::ShapeMismatch {
                    square: sq.name.clone(),
                    expected: shape,
                    found: sq.shape,
                });
            }
            if let Some(&j) = index_red.get(&sq.red_first) {
                clashes
                    .entry(("red-first", sq.red_first.clone()))
                    .or_insert_with(|| vec![j])
                    .push(i);
            } else {
                index_red.insert(sq.red_first.clone(), i);
            }
            if let Some(&j) = index_blue.get(&sq.blue_first) {
                clashes
                    .entry(("blue-first", sq.blue_first.clone()))
                    .or_insert_with(|| vec![j])
                    .push(i);
            } else {
                index_blue.insert(sq.blue_first.clone(), i);
            }
        }
        let duplicates = clashes
            .into_iter()
            .map(|((d, p), who)| (d, p, who))
            .collect();
        Ok(Collection {
            shape,
            squares,
            index_red,
            index_blue,
            duplicates,
        })
    }

    /// Binds fixture squares to `g`.
    pub fn from_specs(
        g: &ColouredGraph,
        shape: SquareShape,
        specs: &[SquareSpec],
    ) -> Result<Self, SquareError> {
        let squares = specs
            .iter()
            .map(|s| s.bind(g))
            .collect::<Result<Vec<_>, _>>()?;
        Collection::new(shape, squares)
    }

    pub fn shape(&self) -> SquareShape {
        self.shape
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    /// The square whose red-first boundary is `path`.
    pub fn lookup_red(&self, g: &ColouredGraph, path: &[EdgeId]) -> Result<&Square, NotCovered> {
        self.index_red
            .get(path)
            .map(|&i| &self.squares[i])
            .ok_or_else(|| NotCovered {
                direction: "red-first",
                path: g.display_edges(path),
            })
    }

    /// The square whose blue-first boundary is `path`.
    pub fn lookup_blue(&self, g: &ColouredGraph, path: &[EdgeId]) -> Result<&Square, NotCovered> {
        self.index_blue
            .get(path)
            .map(|&i| &self.squares[i])
            .ok_or_else(|| NotCovered {
                direction: "blue-first",
                path: g.display_edges(path),
            })
    }

    /// `true` if some member has exactly these edge images.
    pub fn contains_edges(&self, red_first: &[EdgeId], blue_first: &[EdgeId]) -> bool {
        match self.index_red.get(red_first) {
            Some(&i) if self.squares[i].blue_first == blue_first => true,
            Some(_) if !self.duplicates.is_empty() => self
                .squares
                .iter()
                .any(|s| s.red_first == red_first && s.blue_first == blue_first),
            _ => false,
        }
    }

    /// Completeness of this collection over `g`.
    pub fn report(&self, g: &ColouredGraph) -> CompletenessReport {
        let red_paths = g.paths_with_colours(self.shape.red_word());
        let blue_paths = g.paths_with_colours(self.shape.blue_word());
        let uncovered_red = red_paths
            .iter()
            .filter(|p| !self.index_red.contains_key(*p))
            .map(|p| g.display_edges(p))
            .collect();
        let uncovered_blue = blue_paths
            .iter()
            .filter(|p| !self.index_blue.contains_key(*p))
            .map(|p| g.display_edges(p))
            .collect();
        let duplicated = self
            .duplicates
            .iter()
            .map(|(dir, p, who)| DuplicatedPath {
                direction: dir.to_string(),
                path: g.display_edges(p),
                squares: who.iter().map(|&i| self.squares[i].name.clone()).collect(),
            })
            .collect();
        CompletenessReport::new(
            self.shape,
            self.squares.len(),
            red_paths.len(),
            blue_paths.len(),
            uncovered_red,
            uncovered_blue,
            duplicated,
            Vec::new(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DuplicatedPath {
    pub direction: String,
    pub path: String,
    pub squares: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MalformedSquare {
    pub square: String,
    pub error: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Complete,
    Incomplete,
}

/// Findings of a completeness check. `status` is complete iff all four lists are empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub status: Status,
    pub shape: SquareShape,
    pub squares: usize,
    pub red_first_paths: usize,
    pub blue_first_paths: usize,
    pub uncovered_red_first: Vec<String>,
    pub uncovered_blue_first: Vec<String>,
    pub duplicated: Vec<DuplicatedPath>,
    pub malformed: Vec<MalformedSquare>,
}

impl CompletenessReport {
    #[allow(clippy::too_many_arguments)]
    fn new(
        shape: SquareShape,
        squares: usize,
        red_first_paths: usize,
        blue_first_paths: usize,
        uncovered_red_first: Vec<String>,
        uncovered_blue_first: Vec<String>,
        duplicated: Vec<DuplicatedPath>,
        malformed: Vec<MalformedSquare>,
    ) -> Self {
        let clean = uncovered_red_first.is_empty()
            && uncovered_blue_first.is_empty()
            && duplicated.is_empty()
            && malformed.is_empty();
        CompletenessReport {
            status: if clean {
                Status::Complete
            } else {
                Status::Incomplete
            },
            shape,
            squares,
            red_first_paths,
            blue_first_paths,
            uncovered_red_first,
            uncovered_blue_first,
            duplicated,
            malformed,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }

    /// Human-readable summary; the first line is the verdict.
    pub fn render(&self) -> String {
        let mut out = format!(
            "{}: {} squares, {} red-first paths, {} blue-first paths\n",
            match self.status {
                Status::Complete => "complete",
                Status::Incomplete => "incomplete",
            },
            self.squares,
            self.red_first_paths,
            self.blue_first_paths
        );
        for p in &self.uncovered_red_first {
            out.push_str(&format!("uncovered red-first path: {p}\n"));
        }
        for p in &self.uncovered_blue_first {
            out.push_str(&format!("uncovered blue-first path: {p}\n"));
        }
        for d in &self.duplicated {
            out.push_str(&format!(
                "duplicated {} path: {} (squares {})\n",
                d.direction,
                d.path,
                d.squares.join(", ")
            ));
        }
        for m in &self.malformed {
            out.push_str(&format!("malformed square {}: {}\n", m.square, m.error));
        }
        out
    }
}

/// Checks a list of fixture squares against `g`. Squares that fail to bind
/// are reported as malformed and left out of the coverage count.
pub fn check_complete(
    g: &ColouredGraph,
    shape: SquareShape,
    specs: &[SquareSpec],
) -> CompletenessReport {
    let mut bound = Vec::new();
    let mut malformed = Vec::new();
    for spec in specs {
        let res = if spec.shape != shape {
            Err(SquareError::ShapeMismatch {
                square: spec.name.clone(),
                expected: shape,
                found: spec.shape,
            })
        } else {
            spec.bind(g)
        };
        match res {
            Ok(sq) => bound.push(sq),
            Err(e) => malformed.push(MalformedSquare {
                square: spec.name.clone(),
                error: e.to_string(),
            }),
        }
    }
    let collection = Collection::new(shape, bound).expect("shapes filtered above");
    let mut report = collection.report(g);
    if !malformed.is_empty() {
        report = CompletenessReport::new(
            report.shape,
            report.squares,
            report.red_first_paths,
            report.blue_first_paths,
            report.uncovered_red_first,
            report.uncovered_blue_first,
            report.duplicated,
            malformed,
        );
    }
    report
}
