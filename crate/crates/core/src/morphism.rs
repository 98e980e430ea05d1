//! Coloured-graph morphisms from model graphs, and the operations that read
//! them: traversals, restrictions, square occurrences and compatibility.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::degree::{Degree, Letter, WordError};
use crate::graph::{ColouredGraph, EdgeId, Path, VertexId};
use crate::model::{ModelError, ModelGraph};
use crate::square::Collection;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("{prefix} is not a prefix of {word}")]
    NotAPrefix { prefix: String, word: String },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("not a coloured-graph morphism: {0}")]
    Invalid(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// `(offset, letter)` slots of a boundary word read from the identity.
pub(crate) fn boundary_slots<D: Degree>(word: &[Letter]) -> Vec<(D, Letter)> {
    let mut at = D::identity();
    let mut out = Vec::with_capacity(word.len());
    for &l in word {
        out.push((at.clone(), l));
        at = at.push(l);
    }
    out
}

/// A coloured-graph morphism `λ: E_w → E`, stored as total vertex and edge maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism<D> {
    degree: D,
    vmap: BTreeMap<D, VertexId>,
    emap: BTreeMap<(D, Letter), EdgeId>,
}

/// The edge images of a morphism at one square position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence<D> {
    pub position: D,
    pub red_first: Vec<EdgeId>,
    pub blue_first: Vec<EdgeId>,
}

impl<D: Degree> Morphism<D> {
    /// Assembles a morphism from raw maps, checking totality on `E_degree`,
    /// colour preservation and `r`/`s` compatibility.
    pub fn from_maps(
        g: &ColouredGraph,
        degree: D,
        vmap: BTreeMap<D, VertexId>,
        emap: BTreeMap<(D, Letter), EdgeId>,
    ) -> Result<Self, MorphismError> {
        let model = ModelGraph::new(&degree)?;
        if vmap.len() != model.vertices().len() || emap.len() != model.edges().len() {
            return Err(MorphismError::Invalid(format!(
                "maps have {} vertices and {} edges, model of {} has {} and {}",
                vmap.len(),
                emap.len(),
                degree,
                model.vertices().len(),
                model.edges().len()
            )));
        }
        for z in model.vertices() {
            if !vmap.contains_key(z) {
                return Err(MorphismError::Invalid(format!(
                    "vertex {} unmapped",
                    z.label()
                )));
            }
        }
        for e in model.edges() {
            let key = (e.base.clone(), e.letter);
            let Some(&img) = emap.get(&key) else {
                return Err(MorphismError::Invalid(format!(
                    "edge ({}, {}) unmapped",
                    e.base.label(),
                    e.letter
                )));
            };
            if g.colour(img) != e.letter {
                return Err(MorphismError::Invalid(format!(
                    "edge ({}, {}) sent to {} of the wrong colour",
                    e.base.label(),
                    e.letter,
                    g.edge_name(img)
                )));
            }
            if g.range(img) != vmap[&e.base] || g.source(img) != vmap[&e.source()] {
                return Err(MorphismError::Invalid(format!(
                    "edge ({}, {}) sent to {} breaks range/source",
                    e.base.label(),
                    e.letter,
                    g.edge_name(img)
                )));
            }
        }
        Ok(Morphism { degree, vmap, emap })
    }

    pub(crate) fn from_maps_unchecked(
        degree: D,
        vmap: BTreeMap<D, VertexId>,
        emap: BTreeMap<(D, Letter), EdgeId>,
    ) -> Self {
        Morphism { degree, vmap, emap }
    }

    /// The degree-identity morphism at `v`.
    pub fn identity(v: VertexId) -> Self {
        let mut vmap = BTreeMap::new();
        vmap.insert(D::identity(), v);
        Morphism {
            degree: D::identity(),
            vmap,
            emap: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> &D {
        &self.degree
    }

    pub fn range(&self) -> VertexId {
        self.vmap[&D::identity()]
    }

    pub fn source(&self) -> VertexId {
        self.vmap[&self.degree]
    }

    pub fn vertex_at(&self, z: &D) -> Option<VertexId> {
        self.vmap.get(z).copied()
    }

    pub fn edge_at(&self, z: &D, l: Letter) -> Option<EdgeId> {
        self.emap.get(&(z.clone(), l)).copied()
    }

    pub fn vertex_map(&self) -> &BTreeMap<D, VertexId> {
        &self.vmap
    }

    pub fn edge_map(&self) -> &BTreeMap<(D, Letter), EdgeId> {
        &self.emap
    }

    /// Reads the edge images along a letter string from the identity.
    pub fn read_along(&self, letters: &[Letter]) -> Option<Path> {
        if letters.is_empty() {
            return Some(Path::Vertex(self.range()));
        }
        let mut at = D::identity();
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            out.push(self.edge_at(&at, l)?);
            at = at.push(l);
        }
        Some(Path::Edges(out))
    }

    /// `true` iff `x` has this degree and each edge of `x` is the image of the
    /// model edge at its running degree.
    pub fn check_traverses(&self, g: &ColouredGraph, x: &Path) -> bool {
        if x.degree::<D>(g) != self.degree {
            return false;
        }
        match x {
            Path::Vertex(v) => *v == self.range(),
            Path::Edges(edges) => {
                let mut at = D::identity();
                for &e in edges {
                    let l = g.colour(e);
                    if self.edge_at(&at, l) != Some(e) {
                        return false;
                    }
                    at = at.push(l);
                }
                true
            }
        }
    }

    /// The traversal along the geodesic letter form of the degree.
    pub fn shortest_traversal(&self) -> Result<Path, MorphismError> {
        let form = self.degree.shortest_form()?;
        Ok(self.read_along(form.letters()).expect("morphism is total"))
    }

    /// The traversal along `a^N b^M` (the longest letter form).
    pub fn longest_traversal(&self) -> Result<Path, MorphismError> {
        let form = self.degree.longest_form()?;
        Ok(self.read_along(form.letters()).expect("morphism is total"))
    }

    fn require_prefix(&self, w1: &D, w2: &D) -> Result<(), MorphismError> {
        if !w1.is_prefix_of(w2) {
            return Err(MorphismError::NotAPrefix {
                prefix: w1.to_string(),
                word: w2.to_string(),
            });
        }
        if !w2.is_prefix_of(&self.degree) {
            return Err(MorphismError::NotAPrefix {
                prefix: w2.to_string(),
                word: self.degree.to_string(),
            });
        }
        Ok(())
    }

    /// The ordinary restriction to `E_{w1}`.
    pub fn restrict(&self, w1: &D) -> Result<Self, MorphismError> {
        self.require_prefix(w1, &self.degree)?;
        let vmap = self
            .vmap
            .iter()
            .filter(|(z, _)| z.is_prefix_of(w1))
            .map(|(z, v)| (z.clone(), *v))
            .collect();
        let emap = self
            .emap
            .iter()
            .filter(|((z, l), _)| z.push(*l).is_prefix_of(w1))
            .map(|(k, e)| (k.clone(), *e))
            .collect();
        Ok(Morphism {
            degree: w1.clone(),
            vmap,
            emap,
        })
    }

    /// The translated restriction `z ↦ λ(w1·z)` on `E_{w1⁻¹w2}`.
    pub fn restrict_shifted(&self, w1: &D, w2: &D) -> Result<Self, MorphismError> {
        self.require_prefix(w1, w2)?;
        let rel = w1.left_quotient(w2).expect("checked prefix");
        let model = ModelGraph::new(&rel)?;
        let vmap = model
            .vertices()
            .iter()
            .map(|z| (z.clone(), self.vmap[&w1.mul(z)]))
            .collect();
        let emap = model
            .edges()
            .iter()
            .map(|e| {
                let key = (e.base.clone(), e.letter);
                (key, self.emap[&(w1.mul(&e.base), e.letter)])
            })
            .collect();
        Ok(Morphism {
            degree: rel,
            vmap,
            emap,
        })
    }

    /// Square boundary images at `m`, if the square at `m` lies in the domain.
    pub fn square_at(&self, m: &D) -> Option<Occurrence<D>> {
        if !m.mul(&D::square_top()).is_prefix_of(&self.degree) {
            return None;
        }
        let read = |word: &[Letter]| -> Vec<EdgeId> {
            boundary_slots::<D>(word)
                .into_iter()
                .map(|(off, l)| self.emap[&(m.mul(&off), l)])
                .collect()
        };
        Some(Occurrence {
            position: m.clone(),
            red_first: read(D::SHAPE.red_word()),
            blue_first: read(D::SHAPE.blue_word()),
        })
    }

    /// One occurrence per square position, in ascending position order.
    pub fn occurrences(&self) -> Vec<Occurrence<D>> {
        let top = D::square_top();
        self.vmap
            .keys()
            .filter(|m| m.mul(&top).is_prefix_of(&self.degree))
            .filter_map(|m| self.square_at(m))
            .collect()
    }

    /// `true` iff every occurring square belongs to `c`.
    pub fn check_compatible(&self, c: &Collection) -> bool {
        self.first_incompatible(c).is_none()
    }

    pub fn first_incompatible(&self, c: &Collection) -> Option<Occurrence<D>> {
        self.occurrences()
            .into_iter()
            .find(|o| !c.contains_edges(&o.red_first, &o.blue_first))
    }

    /// Replaces the blue-first tail of a traversal `z` by the red-first
    /// boundary of the square it closes, read from this morphism.
    pub fn rewrite_tail(&self, g: &ColouredGraph, z: &Path) -> Result<Path, MorphismError> {
        let blue = D::SHAPE.blue_word();
        let edges = z.edges();
        if !self.check_traverses(g, z) {
            return Err(MorphismError::PreconditionViolated(format!(
                "{} does not traverse the morphism",
                g.display_path(z)
            )));
        }
        if edges.len() < blue.len() {
            return Err(MorphismError::PreconditionViolated(format!(
                "{} is shorter than a blue-first boundary",
                g.display_path(z)
            )));
        }
        let (head, tail) = edges.split_at(edges.len() - blue.len());
        let tail_colours: Vec<Letter> = tail.iter().map(|&e| g.colour(e)).collect();
        if tail_colours != blue {
            return Err(MorphismError::PreconditionViolated(format!(
                "{} does not end in a blue-first boundary",
                g.display_path(z)
            )));
        }
        let head_letters: Vec<Letter> = head.iter().map(|&e| g.colour(e)).collect();
        let m = D::fold(&head_letters);
        let occ = self.square_at(&m).expect("traversal tail spans a square");
        let mut out = head.to_vec();
        out.extend(occ.red_first);
        Ok(Path::Edges(out))
    }

    /// JSON form: degree as pair and label, range/source, and both maps keyed
    /// by vertex labels.
    pub fn to_json(&self, g: &ColouredGraph) -> Value {
        let vertices: Vec<Value> = self
            .vmap
            .iter()
            .map(|(z, v)| json!({ "at": z.label(), "degree": z.to_string(), "vertex": g.vertex_name(*v) }))
            .collect();
        let edges: Vec<Value> = self
            .emap
            .iter()
            .map(|((z, l), e)| {
                json!({ "at": z.label(), "letter": l.to_string(), "edge": g.edge_name(*e) })
            })
            .collect();
        json!({
            "degree": self.degree.to_string(),
            "degree_word": self.degree.label(),
            "range": g.vertex_name(self.range()),
            "source": g.vertex_name(self.source()),
            "vertices": vertices,
            "edges": edges,
        })
    }

    /// Multi-line text rendering used by the CLI.
    pub fn render(&self, g: &ColouredGraph) -> String {
        let mut out = format!(
            "morphism of degree {} ({}): r = {}, s = {}\n",
            self.degree,
            self.degree.label(),
            g.vertex_name(self.range()),
            g.vertex_name(self.source())
        );
        for (z, v) in &self.vmap {
            out.push_str(&format!(
                "  vertex {} -> {}\n",
                z.label(),
                g.vertex_name(*v)
            ));
        }
        for ((z, l), e) in &self.emap {
            out.push_str(&format!(
                "  edge ({}, {}) -> {}\n",
                z.label(),
                l,
                g.edge_name(*e)
            ));
        }
        out
    }
}
