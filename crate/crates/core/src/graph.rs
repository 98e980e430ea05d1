//! Finite 2-coloured directed graphs and their paths.
//!
//! Edges point from source to range: an edge `f` with `r(f) = u` and
//! `s(f) = v` is drawn `u ← v`. A path `x₁x₂…xₙ` is composable when
//! `s(xᵢ) = r(xᵢ₊₁)`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::degree::{Degree, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub range: VertexId,
    pub source: VertexId,
    pub colour: Letter,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate identifier {0:?}")]
    DuplicateId(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("bad colour {0:?} (expected a, b, 1 or 2)")]
    BadColour(String),
    #[error("path does not compose at junction {index}: source of edge {index} differs from range of edge {}", .index + 1)]
    NotComposable { index: usize },
    #[error("a path needs at least one edge")]
    EmptyPath,
}

/// Parses a colour token. `a`/`1` is red and `b`/`2` is blue.
pub fn parse_colour(token: &str) -> Result<Letter, GraphError> {
    match token {
        "a" | "1" | "red" => Ok(Letter::A),
        "b" | "2" | "blue" => Ok(Letter::B),
        other => Err(GraphError::BadColour(other.to_owned())),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColouredGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
}

impl ColouredGraph {
    /// Builds a graph from vertex names and `(name, colour, range, source)` edge records.
    pub fn build<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: AsRef<str>,
        E: IntoIterator<Item = (String, String, String, String)>,
    {
        let mut g = ColouredGraph::default();
        for v in vertices {
            g.add_vertex(v.as_ref())?;
        }
        for (name, colour, range, source) in edges {
            let colour = parse_colour(&colour)?;
            g.add_edge(&name, colour, &range, &source)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId, GraphError> {
        if self.vertex_index.contains_key(name) || self.edge_index.contains_key(name) {
            return Err(GraphError::DuplicateId(name.to_owned()));
        }
        let id = VertexId(self.vertices.len());
        self.vertices.push(name.to_owned());
        self.vertex_index.insert(name.to_owned(), id);
        Ok(id)
    }

    pub fn add_edge(
        &mut self,
        name: &str,
        colour: Letter,
        range: &str,
        source: &str,
    ) -> Result<EdgeId, GraphError> {
        if self.edge_index.contains_key(name) || self.vertex_index.contains_key(name) {
            return Err(GraphError::DuplicateId(name.to_owned()));
        }
        let range = self.vertex(range)?;
        let source = self.vertex(source)?;
        let id = EdgeId(self.edges.len());
        self.edges.push(Edge {
            name: name.to_owned(),
            range,
            source,
            colour,
        });
        self.edge_index.insert(name.to_owned(), id);
        Ok(id)
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, GraphError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_owned()))
    }

    pub fn edge(&self, name: &str) -> Result<EdgeId, GraphError> {
        self.edge_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownEdge(name.to_owned()))
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge_data(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].range
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].source
    }

    pub fn colour(&self, e: EdgeId) -> Letter {
        self.edges[e.0].colour
    }

    /// Edges of colour `l` whose range is `v`, in declaration order.
    pub fn edges_from_range(&self, v: VertexId, l: Letter) -> impl Iterator<Item = EdgeId> + '_ {
        self.edge_ids()
            .filter(move |&e| self.range(e) == v && self.colour(e) == l)
    }

    /// Checks composability of a non-empty edge sequence.
    pub fn validate_path(&self, ids: &[EdgeId]) -> Result<Path, GraphError> {
        if ids.is_empty() {
            return Err(GraphError::EmptyPath);
        }
        for (i, pair) in ids.windows(2).enumerate() {
            if self.source(pair[0]) != self.range(pair[1]) {
                return Err(GraphError::NotComposable { index: i + 1 });
            }
        }
        Ok(Path::Edges(ids.to_vec()))
    }

    /// Resolves edge names and validates the resulting path.
    pub fn path_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Path, GraphError> {
        let ids = names
            .iter()
            .map(|n| self.edge(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        self.validate_path(&ids)
    }

    /// Parses a path written as space-separated edge names, or a single vertex name.
    pub fn parse_path(&self, text: &str) -> Result<Path, GraphError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if let [single] = tokens.as_slice() {
            if let Ok(v) = self.vertex(single) {
                return Ok(Path::Vertex(v));
            }
        }
        self.path_from_names(&tokens)
    }

    /// All composable paths whose colour word is `word`, in declaration order.
    pub fn paths_with_colours(&self, word: &[Letter]) -> Vec<Vec<EdgeId>> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.extend_paths(word, &mut stack, &mut out);
        out
    }

    fn extend_paths(&self, word: &[Letter], stack: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
        let Some((&l, rest)) = word.split_first() else {
            out.push(stack.clone());
            return;
        };
        for e in self.edge_ids() {
            if self.colour(e) != l {
                continue;
            }
            if let Some(&prev) = stack.last() {
                if self.source(prev) != self.range(e) {
                    continue;
                }
            }
            stack.push(e);
            self.extend_paths(rest, stack, out);
            stack.pop();
        }
    }

    /// All paths of length `1..=max_len`, shortest first, then lexicographically.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Vec<EdgeId>> {
        let mut out: Vec<Vec<EdgeId>> = Vec::new();
        let mut frontier: Vec<Vec<EdgeId>> = self.edge_ids().map(|e| vec![e]).collect();
        for len in 1..=max_len {
            if len > 1 {
                let mut next = Vec::new();
                for p in &frontier {
                    let tail = self.source(*p.last().unwrap());
                    for e in self.edge_ids().filter(|&e| self.range(e) == tail) {
                        let mut q = p.clone();
                        q.push(e);
                        next.push(q);
                    }
                }
                frontier = next;
            }
            out.extend(frontier.iter().cloned());
        }
        out
    }

    /// Renders an edge sequence: names concatenated when every edge name in
    /// the graph is a single character, space-separated otherwise.
    pub fn display_edges(&self, ids: &[EdgeId]) -> String {
        let sep = if self.edges.iter().all(|e| e.name.chars().count() == 1) {
            ""
        } else {
            " "
        };
        ids.iter()
            .map(|&e| self.edge_name(e))
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn display_path(&self, p: &Path) -> String {
        match p {
            Path::Vertex(v) => self.vertex_name(*v).to_owned(),
            Path::Edges(ids) => self.display_edges(ids),
        }
    }
}

/// A path of length zero (a vertex) or a composable edge sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Path {
    Vertex(VertexId),
    Edges(Vec<EdgeId>),
}

impl Path {
    pub fn len(&self) -> usize {
        match self {
            Path::Vertex(_) => 0,
            Path::Edges(e) => e.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn edges(&self) -> &[EdgeId] {
        match self {
            Path::Vertex(_) => &[],
            Path::Edges(e) => e,
        }
    }

    pub fn range(&self, g: &ColouredGraph) -> VertexId {
        match self {
            Path::Vertex(v) => *v,
            Path::Edges(e) => g.range(e[0]),
        }
    }

    pub fn source(&self, g: &ColouredGraph) -> VertexId {
        match self {
            Path::Vertex(v) => *v,
            Path::Edges(e) => g.source(*e.last().unwrap()),
        }
    }

    pub fn colours(&self, g: &ColouredGraph) -> Vec<Letter> {
        self.edges().iter().map(|&e| g.colour(e)).collect()
    }

    /// Degree of the path in any degree monoid: the fold of its colour word.
    pub fn degree<D: Degree>(&self, g: &ColouredGraph) -> D {
        D::fold(&self.colours(g))
    }

    /// Concatenation `self · other`; requires `s(self) = r(other)`.
    pub fn concat(&self, other: &Path, g: &ColouredGraph) -> Result<Path, GraphError> {
        if self.source(g) != other.range(g) {
            return Err(GraphError::NotComposable {
                index: self.len().max(1),
            });
        }
        Ok(match (self, other) {
            (Path::Vertex(_), p) | (p, Path::Vertex(_)) => p.clone(),
            (Path::Edges(x), Path::Edges(y)) => {
                Path::Edges(x.iter().chain(y.iter()).copied().collect())
            }
        })
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}
