//! Higher-rank graphs over the Baumslag-Solitar monoid BS(2,1)⁺ and over ℕ².
//!
//! Start from a 2-coloured graph and a complete collection of squares in it.
//! Every path lifts to a unique compatible morphism out of a model graph,
//! and those morphisms form a category whose degree functor has the unique
//! factorization property.
//!
//! ```
//! use bsgraph::{lift_path, BsWord, Fixture, Morphism};
//!
//! let fx = Fixture::parse(
//!     "vertex u\nvertex v\n\
//!      edge g b u u\nedge k b v v\nedge f a u v\nedge h a v u\n\
//!      square phi1 eA=f aB=k abB=k eB=g bA=f\n\
//!      square phi2 eA=h aB=g abB=g eB=k bA=h\n",
//! )
//! .unwrap();
//! let c = fx.collection().unwrap();
//! let x = fx.graph.parse_path("g g f h").unwrap();
//! let lam: Morphism<BsWord> = lift_path(&fx.graph, &c, &x).unwrap();
//! assert_eq!(lam.degree().to_string(), "(2,8)");
//! assert_eq!(lam.vertex_map().len(), 17);
//! ```

pub mod category;
pub mod degree;
pub mod dot;
pub mod enumerate;
pub mod fixture;
pub mod graph;
pub mod grid_case;
pub mod laws;
pub mod lift;
pub mod model;
pub mod morphism;
pub mod square;

pub use category::{CategoryError, LambdaContext, LawCheck, VerificationReport};
pub use degree::{BsWord, Degree, GridDegree, Letter, LetterString, SquareShape, WordError};
pub use enumerate::{
    enumerate_morphisms, enumerate_morphisms_with, EnumerateError, EnumerateLimits,
};
pub use fixture::{Fixture, FixtureError};
pub use graph::{ColouredGraph, EdgeId, GraphError, Path, VertexId};
pub use lift::{lift_path, lift_path_steps, LiftError};
pub use model::{interval, IntervalGraph, ModelEdge, ModelError, ModelGraph};
pub use morphism::{Morphism, MorphismError, Occurrence};
pub use square::{check_complete, Collection, CompletenessReport, NotCovered, Square, SquareSpec};
