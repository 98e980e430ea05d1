//! Degree monoids: the Baumslag-Solitar semigroup BS(2,1)⁺ and the grid ℕ².
//!
//! Both monoids are generated by two letters. Letter `a` is the red colour
//! (grid colour 1) and letter `b` is the blue colour (grid colour 2). The
//! [`Degree`] trait is the whole interface the morphism engine needs: the
//! monoid law, prefix (left-divisor) order, the two quotients, prefix
//! enumeration and the extreme letter-string forms.

mod bs;
mod grid;

pub use bs::{BsWord, MAX_FORM_LEN};
pub use grid::GridDegree;

use std::fmt;
use std::hash::Hash;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at byte {pos}")]
    NegativeExponent { pos: usize },
    #[error("{prefix} is not a prefix of {word}")]
    NotAPrefix { prefix: String, word: String },
    #[error("letter form of {word} has more than {limit} letters")]
    TooLong { word: String, limit: usize },
}

/// A generator of the degree monoid, identified with an edge colour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    /// Red.
    A,
    /// Blue.
    B,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }

    pub fn colour_name(self) -> &'static str {
        match self {
            Letter::A => "red",
            Letter::B => "blue",
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite string of letters; the empty string stands for the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LetterString(pub Vec<Letter>);

impl LetterString {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Folds the letters left to right through the monoid law.
    pub fn fold<D: Degree>(&self) -> D {
        D::fold(&self.0)
    }
}

impl fmt::Display for LetterString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for LetterString {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        LetterString(iter.into_iter().collect())
    }
}

/// Which square template a degree monoid uses.
///
/// For BS(2,1)⁺ the template is E_{ba}: its red-first boundary reads `abb`
/// and its blue-first boundary reads `ba`. For ℕ² it is the unit square
/// with boundaries `ab` (colours 1,2) and `ba` (colours 2,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SquareShape {
    Bs,
    Grid,
}

impl SquareShape {
    pub fn red_word(self) -> &'static [Letter] {
        match self {
            SquareShape::Bs => &[Letter::A, Letter::B, Letter::B],
            SquareShape::Grid => &[Letter::A, Letter::B],
        }
    }

    pub fn blue_word(self) -> &'static [Letter] {
        &[Letter::B, Letter::A]
    }

    pub fn name(self) -> &'static str {
        match self {
            SquareShape::Bs => "bs",
            SquareShape::Grid => "grid",
        }
    }
}

impl fmt::Display for SquareShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A two-generator degree monoid whose model graphs are prefix-closed.
pub trait Degree:
    Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const SHAPE: SquareShape;

    fn identity() -> Self;

    fn from_letter(l: Letter) -> Self;

    fn mul(&self, rhs: &Self) -> Self;

    fn push(&self, l: Letter) -> Self {
        self.mul(&Self::from_letter(l))
    }

    fn fold(letters: &[Letter]) -> Self {
        letters.iter().fold(Self::identity(), |acc, &l| acc.push(l))
    }

    fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `true` iff `w = self · q` for some `q`.
    fn is_prefix_of(&self, w: &Self) -> bool;

    /// The unique `q` with `self · q = w`, if `self` is a prefix of `w`.
    fn left_quotient(&self, w: &Self) -> Option<Self>;

    /// The unique `m` with `m · suffix = self`, if one exists.
    fn strip_suffix(&self, suffix: &Self) -> Option<Self>;

    /// Number of prefixes, i.e. the vertex count of the model graph.
    fn prefix_count(&self) -> BigUint;

    /// All prefixes in ascending order. Callers bound [`Degree::prefix_count`] first.
    fn prefixes(&self) -> Vec<Self>;

    fn shortest_form(&self) -> Result<LetterString, WordError>;

    fn longest_form(&self) -> Result<LetterString, WordError>;

    /// Short human label used for vertex keys in exports.
    fn label(&self) -> String;

    /// Position of the far corner of a square based at the identity.
    fn square_top() -> Self {
        Self::fold(Self::SHAPE.red_word())
    }
}
