//! Brute-force enumeration of all compatible morphisms of a given degree.
//!
//! This is the independent oracle for the lifting engine: it never consults
//! the square indices to build anything. It backtracks over the model edges
//! in ascending `(base, letter)` order, tries every graph edge of the right
//! colour that agrees with the vertex images fixed so far, and rejects a
//! partial assignment as soon as a fully assigned square is not a member of
//! the collection.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::degree::Degree;
use crate::graph::{ColouredGraph, EdgeId, VertexId};
use crate::model::{ModelError, ModelGraph, DEFAULT_VERTEX_LIMIT};
use crate::morphism::{boundary_slots, Morphism};
use crate::square::Collection;

/// Default cap on backtracking steps.
pub const DEFAULT_STEP_LIMIT: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("enumeration exceeded {limit} search steps")]
    StepLimit { limit: u64 },
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerateLimits {
    pub vertices: u64,
    pub steps: u64,
    /// Stop after this many morphisms.
    pub results: Option<usize>,
}

impl Default for EnumerateLimits {
    fn default() -> Self {
        EnumerateLimits {
            vertices: DEFAULT_VERTEX_LIMIT,
            steps: DEFAULT_STEP_LIMIT,
            results: None,
        }
    }
}

/// Vertex and edge images, indexed like the model graph.
type Assignment = (Vec<Option<VertexId>>, Vec<Option<EdgeId>>);

struct Search<'a> {
    g: &'a ColouredGraph,
    c: &'a Collection,
    // model edge i: (range vertex index, source vertex index, letter)
    edges: Vec<(usize, usize, crate::degree::Letter)>,
    // squares whose last-assigned edge is edge i: (red slot edges, blue slot edges)
    closes: Vec<Vec<(Vec<usize>, Vec<usize>)>>,
    vimg: Vec<Option<VertexId>>,
    eimg: Vec<Option<EdgeId>>,
    steps: u64,
    limits: EnumerateLimits,
    found: Vec<Assignment>,
}

impl Search<'_> {
    fn square_ok(&self, red: &[usize], blue: &[usize]) -> bool {
        let r: Vec<EdgeId> = red.iter().map(|&i| self.eimg[i].unwrap()).collect();
        let b: Vec<EdgeId> = blue.iter().map(|&i| self.eimg[i].unwrap()).collect();
        self.c
            .squares()
            .iter()
            .any(|s| s.red_first == r && s.blue_first == b)
    }

    fn done(&self) -> bool {
        self.limits.results.is_some_and(|n| self.found.len() >= n)
    }

    fn run(&mut self, i: usize) -> Result<(), EnumerateError> {
        if self.done() {
            return Ok(());
        }
        self.steps += 1;
        if self.steps > self.limits.steps {
            return Err(EnumerateError::StepLimit {
                limit: self.limits.steps,
            });
        }
        if i == self.edges.len() {
            self.found.push((self.vimg.clone(), self.eimg.clone()));
            return Ok(());
        }
        let (r, s, l) = self.edges[i];
        let base = self.vimg[r].expect("edges are visited after their range vertex");
        for e in self.g.edge_ids() {
            if self.g.colour(e) != l || self.g.range(e) != base {
                continue;
            }
            let fresh = match self.vimg[s] {
                Some(v) if v != self.g.source(e) => continue,
                Some(_) => false,
                None => true,
            };
            if fresh {
                self.vimg[s] = Some(self.g.source(e));
            }
            self.eimg[i] = Some(e);
            let closes = std::mem::take(&mut self.closes[i]);
            let ok = closes.iter().all(|(red, blue)| self.square_ok(red, blue));
            self.closes[i] = closes;
            if ok {
                self.run(i + 1)?;
            }
            self.eimg[i] = None;
            if fresh {
                self.vimg[s] = None;
            }
            if self.done() {
                break;
            }
        }
        Ok(())
    }
}

/// Every compatible morphism `E_w → g`, ordered by the image of the
/// identity vertex and then by edge choices in declaration order.
pub fn enumerate_morphisms<D: Degree>(
    g: &ColouredGraph,
    c: &Collection,
    w: &D,
) -> Result<Vec<Morphism<D>>, EnumerateError> {
    enumerate_morphisms_with(g, c, w, EnumerateLimits::default())
}

pub fn enumerate_morphisms_with<D: Degree>(
    g: &ColouredGraph,
    c: &Collection,
    w: &D,
    limits: EnumerateLimits,
) -> Result<Vec<Morphism<D>>, EnumerateError> {
    let model = ModelGraph::with_limit(w, limits.vertices)?;
    let vindex: HashMap<&D, usize> = model
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, z)| (z, i))
        .collect();
    let eindex: HashMap<(D, crate::degree::Letter), usize> = model
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| ((e.base.clone(), e.letter), i))
        .collect();
    let edges = model
        .edges()
        .iter()
        .map(|e| (vindex[&e.base], vindex[&e.source()], e.letter))
        .collect::<Vec<_>>();

    let red_slots = boundary_slots::<D>(D::SHAPE.red_word());
    let blue_slots = boundary_slots::<D>(D::SHAPE.blue_word());
    let mut closes = vec![Vec::new(); edges.len()];
    for m in model.square_positions() {
        let slot = |(off, l): &(D, crate::degree::Letter)| eindex[&(m.mul(off), *l)];
        let red: Vec<usize> = red_slots.iter().map(slot).collect();
        let blue: Vec<usize> = blue_slots.iter().map(slot).collect();
        let last = *red.iter().chain(blue.iter()).max().unwrap();
        closes[last].push((red, blue));
    }

    let mut search = Search {
        g,
        c,
        edges,
        closes,
        vimg: vec![None; model.vertices().len()],
        eimg: vec![None; model.edges().len()],
        steps: 0,
        limits,
        found: Vec::new(),
    };
    let root = vindex[&D::identity()];
    for v in g.vertex_ids() {
        search.vimg[root] = Some(v);
        search.run(0)?;
        search.vimg[root] = None;
        if search.done() {
            break;
        }
    }

    Ok(search
        .found
        .into_iter()
        .map(|(vimg, eimg)| {
            let vmap: BTreeMap<D, VertexId> = model
                .vertices()
                .iter()
                .zip(vimg)
                .map(|(z, v)| (z.clone(), v.unwrap()))
                .collect();
            let emap = model
                .edges()
                .iter()
                .zip(eimg)
                .map(|(e, img)| ((e.base.clone(), e.letter), img.unwrap()))
                .collect();
            Morphism::from_maps_unchecked(w.clone(), vmap, emap)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::{BsWord, SquareShape};
    use crate::graph::tests::example_e;
    use crate::square::tests::{phi1, phi2};

    #[test]
    fn degree_ba_gives_the_two_squares() {
        let g = example_e();
        let c = Collection::from_specs(&g, SquareShape::Bs, &[phi1(), phi2()]).unwrap();
        let all = enumerate_morphisms(&g, &c, &BsWord::new(1, 2u32)).unwrap();
        assert_eq!(all.len(), 2);
        let occ: Vec<_> = all
            .iter()
            .map(|m| {
                let o = &m.occurrences()[0];
                (
                    g.display_edges(&o.red_first),
                    g.display_edges(&o.blue_first),
                )
            })
            .collect();
        assert_eq!(
            occ,
            vec![
                ("fkk".to_owned(), "gf".to_owned()),
                ("hgg".to_owned(), "kh".to_owned())
            ]
        );
    }

    #[test]
    fn degree_e_gives_identities() {
        let g = example_e();
        let c = Collection::from_specs(&g, SquareShape::Bs, &[phi1(), phi2()]).unwrap();
        let all = enumerate_morphisms(&g, &c, &BsWord::new(0, 0u32)).unwrap();
        let u = g.vertex("u").unwrap();
        let v = g.vertex("v").unwrap();
        assert_eq!(all, vec![Morphism::identity(u), Morphism::identity(v)]);
    }

    #[test]
    fn without_a_square_there_is_no_morphism_through_it() {
        let g = example_e();
        let c = Collection::from_specs(&g, SquareShape::Bs, &[phi1()]).unwrap();
        let all = enumerate_morphisms(&g, &c, &BsWord::new(1, 2u32)).unwrap();
        assert_eq!(all.len(), 1);
    }

    #[test]
    fn result_limit() {
        let g = example_e();
        let c = Collection::from_specs(&g, SquareShape::Bs, &[phi1(), phi2()]).unwrap();
        let limits = EnumerateLimits {
            results: Some(1),
            ..EnumerateLimits::default()
        };
        let all = enumerate_morphisms_with(&g, &c, &BsWord::new(2, 8u32), limits).unwrap();
        assert_eq!(all.len(), 1);
    }
}
