//! The ℕ² specialisation. The engine is shared with the BS(2,1)⁺ case; only
//! the degree monoid and the square template differ.

use crate::category::{CategoryError, LambdaContext, VerificationReport};
use crate::degree::GridDegree;
use crate::graph::{ColouredGraph, Path};
use crate::lift::{lift_path, LiftError};
use crate::morphism::Morphism;
use crate::square::Collection;

pub type GridMorphism = Morphism<GridDegree>;

/// A [`LambdaContext`] whose collection holds grid squares.
pub type GridContext = LambdaContext;

pub fn lift_path_grid(
    g: &ColouredGraph,
    c: &Collection,
    x: &Path,
) -> Result<GridMorphism, LiftError> {
    lift_path(g, c, x)
}

pub fn compose_grid(
    ctx: &GridContext,
    mu: &GridMorphism,
    nu: &GridMorphism,
) -> Result<GridMorphism, CategoryError> {
    ctx.compose(mu, nu)
}

/// Category, functor and factorization laws over grid degrees.
pub fn verify_grid(ctx: &GridContext, max_len: usize) -> Result<VerificationReport, CategoryError> {
    Ok(ctx
        .verify_category::<GridDegree>(max_len)?
        .merge(ctx.verify_functor::<GridDegree>(max_len)?)
        .merge(ctx.verify_factorization::<GridDegree>(max_len)?))
}
