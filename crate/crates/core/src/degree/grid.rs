use std::fmt;

use num_bigint::BigUint;

use super::{Degree, Letter, LetterString, SquareShape, WordError, MAX_FORM_LEN};

/// A degree in ℕ²: `(colour-1 count, colour-2 count)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GridDegree(pub u64, pub u64);

impl GridDegree {
    pub fn grid_add(self, rhs: GridDegree) -> GridDegree {
        GridDegree(self.0 + rhs.0, self.1 + rhs.1)
    }

    /// Componentwise order.
    pub fn grid_le(self, rhs: GridDegree) -> bool {
        self.0 <= rhs.0 && self.1 <= rhs.1
    }

    pub fn parse(text: &str) -> Option<GridDegree> {
        let inner = text.trim().strip_prefix('(')?.strip_suffix(')')?;
        let (x, y) = inner.split_once(',')?;
        Some(GridDegree(x.trim().parse().ok()?, y.trim().parse().ok()?))
    }
}

impl Degree for GridDegree {
    const SHAPE: SquareShape = SquareShape::Grid;

    fn identity() -> Self {
        GridDegree(0, 0)
    }

    fn from_letter(l: Letter) -> Self {
        match l {
            Letter::A => GridDegree(1, 0),
            Letter::B => GridDegree(0, 1),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.grid_add(*rhs)
    }

    fn is_prefix_of(&self, w: &Self) -> bool {
        self.grid_le(*w)
    }

    fn left_quotient(&self, w: &Self) -> Option<Self> {
        Some(GridDegree(
            w.0.checked_sub(self.0)?,
            w.1.checked_sub(self.1)?,
        ))
    }

    fn strip_suffix(&self, suffix: &Self) -> Option<Self> {
        suffix.left_quotient(self)
    }

    fn prefix_count(&self) -> BigUint {
        BigUint::from(self.0 + 1) * BigUint::from(self.1 + 1)
    }

    fn prefixes(&self) -> Vec<Self> {
        (0..=self.0)
            .flat_map(|x| (0..=self.1).map(move |y| GridDegree(x, y)))
            .collect()
    }

    fn shortest_form(&self) -> Result<LetterString, WordError> {
        let (x, y) = (self.0 as usize, self.1 as usize);
        if x.saturating_add(y) > MAX_FORM_LEN {
            return Err(WordError::TooLong {
                word: self.to_string(),
                limit: MAX_FORM_LEN,
            });
        }
        let mut out = vec![Letter::A; x];
        out.extend(std::iter::repeat_n(Letter::B, y));
        Ok(LetterString(out))
    }

    /// Every traversal of a grid degree has the same length.
    fn longest_form(&self) -> Result<LetterString, WordError> {
        self.shortest_form()
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GridDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}
