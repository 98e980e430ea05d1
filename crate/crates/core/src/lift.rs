//! Lifting a path to the unique compatible morphism it traverses.
//!
//! The lift is built edge by edge. Appending an edge `f` of colour `l` at the
//! current degree `w` fixes the model edge `(w, l)`; every square position
//! whose red-first (or blue-first) boundary then becomes fully assigned is
//! completed from the collection's index on that boundary. Completing a
//! square assigns further edges, which can close further boundaries, so the
//! completion runs as a worklist until it is quiet. When the collection is
//! complete the result is total on the enlarged model graph after each step.

use std::collections::{BTreeMap, VecDeque};

use rustc_hash::FxHashMap as HashMap;
use thiserror::Error;

use crate::degree::{Degree, Letter};
use crate::graph::{ColouredGraph, EdgeId, GraphError, Path, VertexId};
use crate::model::{check_limit, ModelError, ModelGraph, DEFAULT_VERTEX_LIMIT};
use crate::morphism::{boundary_slots, Morphism};
use crate::square::{Collection, NotCovered};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("edge {edge} does not start where the path so far ends")]
    NotComposable { edge: String },
    #[error(transparent)]
    NotCovered(#[from] NotCovered),
    #[error("square completion at {position} gave {at} two images, {first} and {second}; the collection is not complete")]
    Conflict {
        position: String,
        at: String,
        first: String,
        second: String,
    },
    #[error("square completion left {at} unassigned on the domain of degree {degree}")]
    Undetermined { degree: String, at: String },
    #[error("collection holds {found} squares but the degree monoid needs {expected} squares")]
    ShapeMismatch { expected: String, found: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

struct Lifter<'a, D: Degree> {
    g: &'a ColouredGraph,
    c: &'a Collection,
    degree: D,
    vmap: HashMap<D, VertexId>,
    emap: HashMap<(D, Letter), EdgeId>,
    red_slots: Vec<(D, Letter)>,
    blue_slots: Vec<(D, Letter)>,
    top: D,
    queue: VecDeque<D>,
}

impl<'a, D: Degree> Lifter<'a, D> {
    fn new(g: &'a ColouredGraph, c: &'a Collection, start: VertexId) -> Self {
        let mut vmap = HashMap::default();
        vmap.insert(D::identity(), start);
        Lifter {
            g,
            c,
            degree: D::identity(),
            vmap,
            emap: HashMap::default(),
            red_slots: boundary_slots(D::SHAPE.red_word()),
            blue_slots: boundary_slots(D::SHAPE.blue_word()),
            top: D::square_top(),
            queue: VecDeque::new(),
        }
    }

    fn set_vertex(&mut self, z: D, v: VertexId, position: &D) -> Result<(), LiftError> {
        match self.vmap.get(&z) {
            Some(&old) if old != v => Err(LiftError::Conflict {
                position: position.label(),
                at: format!("vertex {}", z.label()),
                first: self.g.vertex_name(old).to_owned(),
                second: self.g.vertex_name(v).to_owned(),
            }),
            Some(_) => Ok(()),
            None => {
                self.vmap.insert(z, v);
                Ok(())
            }
        }
    }

    fn set_edge(&mut self, z: D, l: Letter, e: EdgeId, position: &D) -> Result<(), LiftError> {
        let key = (z, l);
        if let Some(&old) = self.emap.get(&key) {
            if old != e {
                return Err(LiftError::Conflict {
                    position: position.label(),
                    at: format!("edge ({}, {})", key.0.label(), l),
                    first: self.g.edge_name(old).to_owned(),
                    second: self.g.edge_name(e).to_owned(),
                });
            }
            return Ok(());
        }
        let (z, l) = key;
        self.set_vertex(z.clone(), self.g.range(e), position)?;
        self.set_vertex(z.push(l), self.g.source(e), position)?;
        // every square position that uses (z, l) in one of its boundaries
        for (off, sl) in self.red_slots.iter().chain(self.blue_slots.iter()) {
            if *sl != l {
                continue;
            }
            if let Some(m) = z.strip_suffix(off) {
                self.queue.push_back(m);
            }
        }
        self.emap.insert((z, l), e);
        Ok(())
    }

    fn read(&self, m: &D, slots: &[(D, Letter)]) -> Option<Vec<EdgeId>> {
        slots
            .iter()
            .map(|(off, l)| self.emap.get(&(m.mul(off), *l)).copied())
            .collect()
    }

    fn write(&mut self, m: &D, slots: &[(D, Letter)], edges: &[EdgeId]) -> Result<(), LiftError> {
        for ((off, l), &e) in slots.iter().zip(edges) {
            self.set_edge(m.mul(off), *l, e, m)?;
        }
        Ok(())
    }

    fn propagate(&mut self) -> Result<(), LiftError> {
        while let Some(m) = self.queue.pop_front() {
            if !m.mul(&self.top).is_prefix_of(&self.degree) {
                continue;
            }
            let red_slots = self.red_slots.clone();
            let blue_slots = self.blue_slots.clone();
            let red = self.read(&m, &red_slots);
            let blue = self.read(&m, &blue_slots);
            match (red, blue) {
                (Some(r), Some(b)) => {
                    if !self.c.contains_edges(&r, &b) {
                        // both boundaries were forced independently and disagree
                        let sq = self.c.lookup_red(self.g, &r)?;
                        return Err(LiftError::Conflict {
                            position: m.label(),
                            at: "blue-first boundary".to_owned(),
                            first: self.g.display_edges(&b),
                            second: self.g.display_edges(&sq.blue_first),
                        });
                    }
                }
                (Some(r), None) => {
                    let blue_edges = self.c.lookup_red(self.g, &r)?.blue_first.clone();
                    self.write(&m, &blue_slots, &blue_edges)?;
                }
                (None, Some(b)) => {
                    let red_edges = self.c.lookup_blue(self.g, &b)?.red_first.clone();
                    self.write(&m, &red_slots, &red_edges)?;
                }
                (None, None) => {}
            }
        }
        Ok(())
    }

    fn push_edge(&mut self, f: EdgeId) -> Result<(), LiftError> {
        let at = self.degree.clone();
        if self.vmap.get(&at) != Some(&self.g.range(f)) {
            return Err(LiftError::NotComposable {
                edge: self.g.edge_name(f).to_owned(),
            });
        }
        let l = self.g.colour(f);
        self.degree = at.push(l);
        self.set_edge(at.clone(), l, f, &at)?;
        self.propagate()
    }

    /// Checks totality on the current model graph and freezes the maps.
    fn snapshot(&self) -> Result<Morphism<D>, LiftError> {
        let model = ModelGraph::new(&self.degree)?;
        let mut vmap = BTreeMap::new();
        for z in model.vertices() {
            let v = self.vmap.get(z).ok_or_else(|| LiftError::Undetermined {
                degree: self.degree.to_string(),
                at: format!("vertex {}", z.label()),
            })?;
            vmap.insert(z.clone(), *v);
        }
        let mut emap = BTreeMap::new();
        for e in model.edges() {
            let key = (e.base.clone(), e.letter);
            let img = self.emap.get(&key).ok_or_else(|| LiftError::Undetermined {
                degree: self.degree.to_string(),
                at: format!("edge ({}, {})", e.base.label(), e.letter),
            })?;
            emap.insert(key, *img);
        }
        Ok(Morphism::from_maps_unchecked(
            self.degree.clone(),
            vmap,
            emap,
        ))
    }
}

fn prepare<D: Degree>(
    g: &ColouredGraph,
    c: &Collection,
    x: &Path,
    limit: u64,
) -> Result<(), LiftError> {
    if c.shape() != D::SHAPE {
        return Err(LiftError::ShapeMismatch {
            expected: D::SHAPE.to_string(),
            found: c.shape().to_string(),
        });
    }
    if let Path::Edges(ids) = x {
        g.validate_path(ids)?;
    }
    check_limit(&x.degree::<D>(g), limit)?;
    Ok(())
}

/// The unique compatible morphism of degree `d*(x)` traversed by `x`.
///
/// `c` is trusted to be complete for `g`; if it is not, the lift fails with
/// the boundary path it could not complete.
pub fn lift_path<D: Degree>(
    g: &ColouredGraph,
    c: &Collection,
    x: &Path,
) -> Result<Morphism<D>, LiftError> {
    lift_path_with_limit(g, c, x, DEFAULT_VERTEX_LIMIT)
}

pub fn lift_path_with_limit<D: Degree>(
    g: &ColouredGraph,
    c: &Collection,
    x: &Path,
    limit: u64,
) -> Result<Morphism<D>, LiftError> {
    prepare::<D>(g, c, x, limit)?;
    let mut lifter = Lifter::<D>::new(g, c, x.range(g));
    for &f in x.edges() {
        lifter.push_edge(f)?;
    }
    lifter.snapshot()
}

/// The lift of every prefix of `x`, including the empty prefix; each entry
/// is checked total on its own model graph.
pub fn lift_path_steps<D: Degree>(
    g: &ColouredGraph,
    c: &Collection,
    x: &Path,
) -> Result<Vec<Morphism<D>>, LiftError> {
    prepare::<D>(g, c, x, DEFAULT_VERTEX_LIMIT)?;
    let mut lifter = Lifter::<D>::new(g, c, x.range(g));
    let mut out = vec![lifter.snapshot()?];
    for &f in x.edges() {
        lifter.push_edge(f)?;
        out.push(lifter.snapshot()?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::{BsWord, SquareShape};
    use crate::graph::tests::example_e;
    use crate::square::tests::{phi1, phi2};

    fn collection(g: &ColouredGraph) -> Collection {
        Collection::from_specs(g, SquareShape::Bs, &[phi1(), phi2()]).unwrap()
    }

    #[test]
    fn lift_of_ggfh_matches_the_figure() {
        let g = example_e();
        let c = collection(&g);
        let lam: Morphism<BsWord> = lift_path(&g, &c, &g.parse_path("g g f h").unwrap()).unwrap();
        assert_eq!(*lam.degree(), BsWord::new(2, 8u32));
        assert_eq!(lam.vertex_map().len(), 17);
        assert_eq!(lam.edge_map().len(), 22);
        let u = g.vertex("u").unwrap();
        let v = g.vertex("v").unwrap();
        for (z, img) in lam.vertex_map() {
            let expect = if z.n_a() == 1 { v } else { u };
            assert_eq!(*img, expect, "vertex {}", z.label());
        }
        assert!(lam.check_compatible(&c));
    }

    #[test]
    fn lift_of_vertex_path() {
        let g = example_e();
        let c = collection(&g);
        let u = g.vertex("u").unwrap();
        let lam: Morphism<BsWord> = lift_path(&g, &c, &Path::Vertex(u)).unwrap();
        assert_eq!(lam, Morphism::identity(u));
    }

    #[test]
    fn equivalent_paths_lift_equally() {
        let g = example_e();
        let c = collection(&g);
        let a: Morphism<BsWord> = lift_path(&g, &c, &g.parse_path("f k k").unwrap()).unwrap();
        let b: Morphism<BsWord> = lift_path(&g, &c, &g.parse_path("g f").unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.occurrences().len(), 1);
    }

    #[test]
    fn missing_square_is_reported() {
        let g = example_e();
        let c = Collection::from_specs(&g, SquareShape::Bs, &[phi1()]).unwrap();
        let err = lift_path::<BsWord>(&g, &c, &g.parse_path("g g f h").unwrap()).unwrap_err();
        assert_eq!(
            err,
            LiftError::NotCovered(NotCovered {
                direction: "blue-first",
                path: "kh".into()
            })
        );
    }

    #[test]
    fn steps_are_total() {
        let g = example_e();
        let c = collection(&g);
        let steps = lift_path_steps::<BsWord>(&g, &c, &g.parse_path("g g f h").unwrap()).unwrap();
        let degrees: Vec<String> = steps.iter().map(|m| m.degree().to_string()).collect();
        assert_eq!(degrees, ["(0,0)", "(0,1)", "(0,2)", "(1,4)", "(2,8)"]);
    }

    #[test]
    fn shape_mismatch() {
        let g = example_e();
        let c = collection(&g);
        let err = lift_path::<crate::degree::GridDegree>(&g, &c, &g.parse_path("g").unwrap());
        assert!(matches!(err, Err(LiftError::ShapeMismatch { .. })));
    }
}
