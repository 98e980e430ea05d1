//! Model graphs: the template domains `E_w` (resp. `E_{2,m}`) of morphisms,
//! and their interval subgraphs `E_{[w₁,w₂]}`.
//!
//! Vertices of a model graph are the degree-monoid elements themselves. The
//! edge `(z, l)` runs between `z` (its range) and `z·l` (its source) and is
//! coloured by `l`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use thiserror::Error;

use crate::degree::{Degree, Letter};

/// Default bound on the number of vertices of a generated model graph.
pub const DEFAULT_VERTEX_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("model graph of degree {degree} has {count} vertices, over the limit of {limit}")]
    ResourceLimit {
        degree: String,
        count: BigUint,
        limit: u64,
    },
    #[error("{prefix} is not a prefix of {word}")]
    NotAPrefix { prefix: String, word: String },
}

/// An edge of a model graph: the step from `base` to `base · letter`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModelEdge<D> {
    pub base: D,
    pub letter: Letter,
}

impl<D: Degree> ModelEdge<D> {
    pub fn new(base: D, letter: Letter) -> Self {
        ModelEdge { base, letter }
    }

    pub fn range(&self) -> &D {
        &self.base
    }

    pub fn source(&self) -> D {
        self.base.push(self.letter)
    }
}

/// The model graph of a degree `w`: prefixes of `w` and single-letter steps between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelGraph<D> {
    degree: D,
    vertices: Vec<D>,
    edges: Vec<ModelEdge<D>>,
}

pub type BsModelGraph = ModelGraph<crate::degree::BsWord>;
pub type GridModelGraph = ModelGraph<crate::degree::GridDegree>;

pub(crate) fn check_limit<D: Degree>(w: &D, limit: u64) -> Result<(), ModelError> {
    let count = w.prefix_count();
    if count > BigUint::from(limit) {
        return Err(ModelError::ResourceLimit {
            degree: w.to_string(),
            count,
            limit,
        });
    }
    Ok(())
}

impl<D: Degree> ModelGraph<D> {
    pub fn new(w: &D) -> Result<Self, ModelError> {
        Self::with_limit(w, DEFAULT_VERTEX_LIMIT)
    }

    pub fn with_limit(w: &D, limit: u64) -> Result<Self, ModelError> {
        check_limit(w, limit)?;
        let vertices = w.prefixes();
        let mut edges = Vec::new();
        for z in &vertices {
            for l in [Letter::A, Letter::B] {
                if z.push(l).is_prefix_of(w) {
                    edges.push(ModelEdge::new(z.clone(), l));
                }
            }
        }
        Ok(ModelGraph {
            degree: w.clone(),
            vertices,
            edges,
        })
    }

    pub fn degree(&self) -> &D {
        &self.degree
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> &[D] {
        &self.vertices
    }

    /// Edges in ascending `(base, letter)` order.
    pub fn edges(&self) -> &[ModelEdge<D>] {
        &self.edges
    }

    pub fn contains_vertex(&self, z: &D) -> bool {
        z.is_prefix_of(&self.degree)
    }

    pub fn contains_edge(&self, e: &ModelEdge<D>) -> bool {
        e.source().is_prefix_of(&self.degree)
    }

    /// Bases `m` of the squares contained in this graph: `m · top ≤ w`.
    pub fn square_positions(&self) -> Vec<D> {
        let top = D::square_top();
        self.vertices
            .iter()
            .filter(|m| m.mul(&top).is_prefix_of(&self.degree))
            .cloned()
            .collect()
    }

    pub fn count_by_colour(&self) -> (usize, usize) {
        let red = self.edges.iter().filter(|e| e.letter == Letter::A).count();
        (red, self.edges.len() - red)
    }

    /// The interval subgraph `E_{[w1, w2]}` of this graph, with `w2` its degree.
    pub fn interval(&self, w1: &D) -> Result<IntervalGraph<D>, ModelError> {
        interval(w1, &self.degree)
    }
}

/// The subgraph of `E_{w2}` on vertices `z` with `w1 ≤ z ≤ w2`.
///
/// Vertex and edge coordinates are absolute; `base` is the translation that
/// identifies it with `E_{w1⁻¹w2}` via `z ↦ base · z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalGraph<D> {
    pub base: D,
    pub top: D,
    pub vertices: Vec<D>,
    pub edges: Vec<ModelEdge<D>>,
}

impl<D: Degree> IntervalGraph<D> {
    /// The model graph this interval is a translated copy of.
    pub fn relative_model(&self) -> Result<ModelGraph<D>, ModelError> {
        let rel = self
            .base
            .left_quotient(&self.top)
            .expect("interval base divides top");
        ModelGraph::new(&rel)
    }
}

pub fn interval<D: Degree>(w1: &D, w2: &D) -> Result<IntervalGraph<D>, ModelError> {
    interval_with_limit(w1, w2, DEFAULT_VERTEX_LIMIT)
}

pub fn interval_with_limit<D: Degree>(
    w1: &D,
    w2: &D,
    limit: u64,
) -> Result<IntervalGraph<D>, ModelError> {
    let rel = w1.left_quotient(w2).ok_or_else(|| ModelError::NotAPrefix {
        prefix: w1.to_string(),
        word: w2.to_string(),
    })?;
    check_limit(w2, limit)?;
    let parent = ModelGraph::with_limit(w2, limit)?;
    let vertices: Vec<D> = parent
        .vertices
        .iter()
        .filter(|z| w1.is_prefix_of(z))
        .cloned()
        .collect();
    let kept: BTreeSet<&D> = vertices.iter().collect();
    let edges = parent
        .edges
        .iter()
        .filter(|e| kept.contains(&e.base) && kept.contains(&e.source()))
        .cloned()
        .collect();
    debug_assert_eq!(BigUint::from(vertices.len()), rel.prefix_count());
    Ok(IntervalGraph {
        base: w1.clone(),
        top: w2.clone(),
        vertices,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::{BsWord, GridDegree};

    fn w(n: u64, m: u64) -> BsWord {
        BsWord::new(n, m)
    }

    #[test]
    fn model_ba() {
        let g = ModelGraph::new(&w(1, 2)).unwrap();
        assert_eq!(g.vertices().len(), 5);
        assert_eq!(g.edges().len(), 5);
        assert_eq!(g.count_by_colour(), (2, 3));
        let blue: Vec<_> = g
            .edges()
            .iter()
            .filter(|e| e.letter == Letter::B)
            .map(|e| (e.base.clone(), e.source()))
            .collect();
        assert_eq!(
            blue,
            vec![(w(0, 0), w(0, 1)), (w(1, 0), w(1, 1)), (w(1, 1), w(1, 2))]
        );
        let red: Vec<_> = g
            .edges()
            .iter()
            .filter(|e| e.letter == Letter::A)
            .map(|e| (e.base.clone(), e.source()))
            .collect();
        assert_eq!(red, vec![(w(0, 0), w(1, 0)), (w(0, 1), w(1, 2))]);
    }

    #[test]
    fn model_identity_and_figure_degree() {
        let e = ModelGraph::new(&w(0, 0)).unwrap();
        assert_eq!((e.vertices().len(), e.edges().len()), (1, 0));
        let big = ModelGraph::new(&w(2, 8)).unwrap();
        assert_eq!(big.vertices().len(), 17);
        assert_eq!(big.edges().len(), 22);
        assert_eq!(big.count_by_colour(), (8, 14));
    }

    #[test]
    fn resource_limit() {
        let huge = BsWord::parse("b^10000000").unwrap();
        assert!(matches!(
            ModelGraph::new(&huge),
            Err(ModelError::ResourceLimit { .. })
        ));
        assert!(ModelGraph::with_limit(&w(2, 8), 16).is_err());
        assert!(ModelGraph::with_limit(&w(2, 8), 17).is_ok());
    }

    #[test]
    fn intervals() {
        let same = interval(&w(2, 8), &w(2, 8)).unwrap();
        assert_eq!(same.vertices, vec![w(2, 8)]);
        assert!(same.edges.is_empty());

        let whole = interval(&w(0, 0), &w(2, 8)).unwrap();
        let model = ModelGraph::new(&w(2, 8)).unwrap();
        assert_eq!(whole.vertices, model.vertices());
        assert_eq!(whole.edges, model.edges());

        let top = interval(&w(0, 2), &w(2, 8)).unwrap();
        assert_eq!(top.vertices, vec![w(0, 2), w(1, 4), w(2, 8)]);
        assert_eq!(top.edges.len(), 2);
        assert!(top.edges.iter().all(|e| e.letter == Letter::A));

        assert!(matches!(
            interval(&w(0, 1), &w(2, 3)),
            Err(ModelError::NotAPrefix { .. })
        ));
    }

    #[test]
    fn grid_models() {
        let sq = ModelGraph::new(&GridDegree(1, 1)).unwrap();
        assert_eq!((sq.vertices().len(), sq.edges().len()), (4, 4));
        let pt = ModelGraph::new(&GridDegree(0, 0)).unwrap();
        assert_eq!((pt.vertices().len(), pt.edges().len()), (1, 0));
        let r = ModelGraph::new(&GridDegree(2, 1)).unwrap();
        assert_eq!((r.vertices().len(), r.edges().len()), (6, 7));
        let iv = interval(&GridDegree(1, 0), &GridDegree(2, 1)).unwrap();
        assert_eq!(iv.vertices.len(), 4);
        assert_eq!(iv.edges.len(), 4);
        assert!(interval(&GridDegree(2, 0), &GridDegree(1, 1)).is_err());
    }

    #[test]
    fn square_positions_figure_degree() {
        let g = ModelGraph::new(&w(2, 8)).unwrap();
        assert_eq!(
            g.square_positions(),
            vec![w(0, 0), w(0, 1), w(1, 0), w(1, 1), w(1, 2), w(1, 3)]
        );
    }
}
