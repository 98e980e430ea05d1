use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::{Degree, Letter, LetterString, SquareShape, WordError};

/// Upper bound on the length of a materialised letter form.
pub const MAX_FORM_LEN: usize = 1 << 24;

/// An element of BS(2,1)⁺ in its canonical form `a^N b^M`.
///
/// The relation `ab² = ba` lets every `b` be pushed right past an `a` at the
/// cost of doubling, so `(N, M)` is a complete invariant and the product is
/// `(N₁, M₁)(N₂, M₂) = (N₁ + N₂, M₁·2^{N₂} + M₂)`. `M` is unbounded.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BsWord {
    n_a: u64,
    m_b: BigUint,
}

impl BsWord {
    pub fn new(n_a: u64, m_b: impl Into<BigUint>) -> Self {
        BsWord {
            n_a,
            m_b: m_b.into(),
        }
    }

    pub fn a() -> Self {
        BsWord::new(1, 0u32)
    }

    pub fn b() -> Self {
        BsWord::new(0, 1u32)
    }

    pub fn n_a(&self) -> u64 {
        self.n_a
    }

    pub fn m_b(&self) -> &BigUint {
        &self.m_b
    }

    /// Parses letter strings (`bbaa`), exponent syntax (`a^2 b^8`, `a2.b8`),
    /// `e` for the identity, or a canonical pair `(N,M)`.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        parse_word(text)
    }

    /// Shifts `m` left by `k` bits unless the result would certainly exceed
    /// `bound`, in which case `None` is returned.
    fn shl_bounded(m: &BigUint, k: u64, bound: &BigUint) -> Option<BigUint> {
        if m.is_zero() {
            return Some(BigUint::zero());
        }
        if m.bits() + k > bound.bits() {
            return None;
        }
        Some(m << k)
    }

    fn shortest_len(&self) -> Option<usize> {
        let mut n = self.n_a;
        let mut m = self.m_b.clone();
        let mut len: usize = 0;
        while n > 0 {
            if m.bit(0) {
                m -= 1u32;
            } else {
                n -= 1;
                m >>= 1;
            }
            len += 1;
            if len > MAX_FORM_LEN {
                return None;
            }
        }
        let rest = m.to_usize()?;
        len.checked_add(rest).filter(|&l| l <= MAX_FORM_LEN)
    }
}

impl Degree for BsWord {
    const SHAPE: SquareShape = SquareShape::Bs;

    fn identity() -> Self {
        BsWord::new(0, 0u32)
    }

    fn from_letter(l: Letter) -> Self {
        match l {
            Letter::A => BsWord::a(),
            Letter::B => BsWord::b(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        BsWord {
            n_a: self.n_a + rhs.n_a,
            m_b: (&self.m_b << rhs.n_a) + &rhs.m_b,
        }
    }

    fn push(&self, l: Letter) -> Self {
        match l {
            Letter::A => BsWord {
                n_a: self.n_a + 1,
                m_b: &self.m_b << 1u32,
            },
            Letter::B => BsWord {
                n_a: self.n_a,
                m_b: &self.m_b + 1u32,
            },
        }
    }

    fn is_prefix_of(&self, w: &Self) -> bool {
        if self.n_a > w.n_a {
            return false;
        }
        match Self::shl_bounded(&self.m_b, w.n_a - self.n_a, &w.m_b) {
            Some(scaled) => scaled <= w.m_b,
            None => false,
        }
    }

    fn left_quotient(&self, w: &Self) -> Option<Self> {
        if self.n_a > w.n_a {
            return None;
        }
        let shift = w.n_a - self.n_a;
        let scaled = Self::shl_bounded(&self.m_b, shift, &w.m_b)?;
        if scaled > w.m_b {
            return None;
        }
        Some(BsWord {
            n_a: shift,
            m_b: &w.m_b - scaled,
        })
    }

    fn strip_suffix(&self, suffix: &Self) -> Option<Self> {
        if suffix.n_a > self.n_a || suffix.m_b > self.m_b {
            return None;
        }
        let diff = &self.m_b - &suffix.m_b;
        if !diff.is_zero() && diff.trailing_zeros().unwrap_or(0) < suffix.n_a {
            return None;
        }
        Some(BsWord {
            n_a: self.n_a - suffix.n_a,
            m_b: diff >> suffix.n_a,
        })
    }

    fn prefix_count(&self) -> BigUint {
        // Row i (words a^i b^j) has floor(M / 2^{N-i}) + 1 members.
        let mut total = BigUint::from(self.n_a) + BigUint::one();
        let depth = self.n_a.min(self.m_b.bits());
        for k in 0..=depth {
            total += &self.m_b >> k;
        }
        total
    }

    fn prefixes(&self) -> Vec<Self> {
        let mut out = Vec::new();
        for i in 0..=self.n_a {
            let top = (&self.m_b >> (self.n_a - i))
                .to_u64()
                .expect("prefix row exceeds u64; bound prefix_count first");
            for j in 0..=top {
                out.push(BsWord::new(i, j));
            }
        }
        out
    }

    fn shortest_form(&self) -> Result<LetterString, WordError> {
        let len = self.shortest_len().ok_or_else(|| WordError::TooLong {
            word: self.to_string(),
            limit: MAX_FORM_LEN,
        })?;
        let mut out = Vec::with_capacity(len);
        let mut n = self.n_a;
        let mut m = self.m_b.clone();
        loop {
            if m.bit(0) {
                out.push(Letter::B);
                m -= 1u32;
            } else if n > 0 {
                out.push(Letter::A);
                n -= 1;
                m >>= 1;
            } else if !m.is_zero() {
                out.push(Letter::B);
                m -= 1u32;
            } else {
                break;
            }
        }
        out.reverse();
        Ok(LetterString(out))
    }

    fn longest_form(&self) -> Result<LetterString, WordError> {
        let too_long = || WordError::TooLong {
            word: self.to_string(),
            limit: MAX_FORM_LEN,
        };
        let m = self.m_b.to_usize().ok_or_else(too_long)?;
        let n = usize::try_from(self.n_a).map_err(|_| too_long())?;
        if n.saturating_add(m) > MAX_FORM_LEN {
            return Err(too_long());
        }
        let mut out = vec![Letter::A; n];
        out.extend(std::iter::repeat_n(Letter::B, m));
        Ok(LetterString(out))
    }

    fn label(&self) -> String {
        if self.is_identity() {
            return "e".to_owned();
        }
        match self.shortest_form() {
            Ok(s) if s.len() <= 64 => s.to_string(),
            _ => format!("a^{}b^{}", self.n_a, self.m_b),
        }
    }
}

impl fmt::Display for BsWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n_a, self.m_b)
    }
}

impl FromStr for BsWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

fn parse_pair(inner: &str) -> Result<BsWord, WordError> {
    let bad = |msg: &str| WordError::Syntax {
        pos: 0,
        msg: msg.to_owned(),
    };
    let body = inner
        .trim_end()
        .strip_suffix(')')
        .ok_or_else(|| bad("unclosed '('"))?;
    let (n, m) = body.split_once(',').ok_or_else(|| bad("expected (N,M)"))?;
    let (n, m) = (n.trim(), m.trim());
    if n.starts_with('-') || m.starts_with('-') {
        return Err(WordError::NegativeExponent { pos: 0 });
    }
    let n: u64 = n.parse().map_err(|_| bad("bad a-count"))?;
    let m: BigUint = m.parse().map_err(|_| bad("bad b-count"))?;
    Ok(BsWord::new(n, m))
}

fn parse_word(text: &str) -> Result<BsWord, WordError> {
    if let Some(inner) = text.trim().strip_prefix('(') {
        return parse_pair(inner);
    }
    let bytes = text.as_bytes();
    let mut acc = BsWord::identity();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        if c.is_ascii_whitespace() || c == b'.' {
            pos += 1;
            continue;
        }
        let letter = match c {
            b'a' => Some(Letter::A),
            b'b' => Some(Letter::B),
            b'e' => None,
            _ => {
                return Err(WordError::Syntax {
                    pos,
                    msg: format!(
                        "unexpected character {:?}",
                        text[pos..].chars().next().unwrap()
                    ),
                })
            }
        };
        pos += 1;
        let caret = pos < bytes.len() && bytes[pos] == b'^';
        if caret {
            pos += 1;
        }
        if pos < bytes.len() && bytes[pos] == b'-' {
            return Err(WordError::NegativeExponent { pos });
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let exponent = if start == pos {
            if caret {
                return Err(WordError::Syntax {
                    pos,
                    msg: "expected exponent after '^'".to_owned(),
                });
            }
            None
        } else {
            Some(&text[start..pos])
        };
        let Some(letter) = letter else { continue };
        let factor = match (letter, exponent) {
            (l, None) => BsWord::from_letter(l),
            (Letter::A, Some(digits)) => {
                let n = digits.parse::<u64>().map_err(|_| WordError::Syntax {
                    pos: start,
                    msg: "exponent of a too large".to_owned(),
                })?;
                BsWord::new(n, 0u32)
            }
            (Letter::B, Some(digits)) => {
                let m = digits.parse::<BigUint>().map_err(|_| WordError::Syntax {
                    pos: start,
                    msg: "bad exponent".to_owned(),
                })?;
                BsWord::new(0, m)
            }
        };
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: u64, m: u64) -> BsWord {
        BsWord::new(n, m)
    }

    #[test]
    fn mul_examples() {
        assert_eq!(w(0, 1).mul(&w(1, 0)), w(1, 2));
        assert_eq!(w(0, 0).mul(&w(2, 8)), w(2, 8));
        assert_eq!(w(0, 2).mul(&w(2, 0)), w(2, 8));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(BsWord::parse("ba").unwrap(), w(1, 2));
        assert_eq!(BsWord::parse("").unwrap(), w(0, 0));
        assert_eq!(BsWord::parse("abab").unwrap(), w(2, 3));
        assert_eq!(BsWord::parse("a^2 b^8").unwrap(), w(2, 8));
        assert_eq!(BsWord::parse("a2.b8").unwrap(), w(2, 8));
        assert_eq!(BsWord::parse("b^2a^2").unwrap(), w(2, 8));
        assert_eq!(BsWord::parse("e").unwrap(), w(0, 0));
        assert_eq!(BsWord::parse("(2, 8)").unwrap(), w(2, 8));
        assert_eq!(BsWord::parse(&w(3, 5).to_string()).unwrap(), w(3, 5));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            BsWord::parse("abc"),
            Err(WordError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            BsWord::parse("a^-1"),
            Err(WordError::NegativeExponent { .. })
        ));
        assert!(matches!(BsWord::parse("b^"), Err(WordError::Syntax { .. })));
        assert!(matches!(
            BsWord::parse("(1,-2)"),
            Err(WordError::NegativeExponent { .. })
        ));
        assert!(BsWord::parse("(1,2").is_err());
    }

    #[test]
    fn parse_huge_exponent() {
        let big = BsWord::parse("b^100000000000000000000000000000 a").unwrap();
        assert_eq!(big.n_a(), 1);
        assert_eq!(big.m_b().to_string(), "200000000000000000000000000000");
    }

    #[test]
    fn prefix_examples() {
        assert!(w(0, 1).is_prefix_of(&w(2, 4)));
        assert!(!w(0, 1).is_prefix_of(&w(2, 3)));
        assert!(w(2, 3).is_prefix_of(&w(2, 3)));
        assert!(!w(3, 0).is_prefix_of(&w(2, 100)));
        // a huge shift must not allocate
        assert!(!w(0, 1).is_prefix_of(&w(u64::MAX / 2, 5)));
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(w(0, 2).left_quotient(&w(2, 8)), Some(w(2, 0)));
        assert_eq!(w(2, 3).left_quotient(&w(2, 3)), Some(w(0, 0)));
        assert_eq!(w(0, 1).left_quotient(&w(2, 4)), Some(w(2, 0)));
        assert_eq!(w(0, 1).left_quotient(&w(2, 3)), None);
    }

    #[test]
    fn strip_suffix_examples() {
        assert_eq!(w(1, 2).strip_suffix(&w(1, 2)), Some(w(0, 0)));
        assert_eq!(w(2, 8).strip_suffix(&w(1, 2)), Some(w(1, 3)));
        assert_eq!(w(2, 7).strip_suffix(&w(1, 0)), None);
        assert_eq!(w(1, 4).strip_suffix(&w(0, 1)), Some(w(1, 3)));
    }

    #[test]
    fn forms() {
        assert_eq!(w(1, 2).shortest_form().unwrap().to_string(), "ba");
        assert_eq!(w(0, 0).shortest_form().unwrap().to_string(), "");
        assert_eq!(w(2, 3).shortest_form().unwrap().to_string(), "abab");
        assert_eq!(w(2, 8).shortest_form().unwrap().to_string(), "bbaa");
        assert_eq!(w(2, 8).longest_form().unwrap().to_string(), "aabbbbbbbb");
        assert_eq!(w(0, 0).longest_form().unwrap().to_string(), "");
        assert_eq!(w(1, 2).longest_form().unwrap().to_string(), "abb");
    }

    #[test]
    fn forms_too_long() {
        let huge = BsWord::parse("b^100000000000000000000").unwrap();
        assert!(matches!(
            huge.longest_form(),
            Err(WordError::TooLong { .. })
        ));
        assert!(matches!(
            huge.shortest_form(),
            Err(WordError::TooLong { .. })
        ));
        // but a^N b^M with huge M can still have a short geodesic
        let doubled = BsWord::parse("b a^60").unwrap();
        assert_eq!(doubled.shortest_form().unwrap().len(), 61);
    }

    #[test]
    fn prefix_sets() {
        assert_eq!(
            w(1, 2).prefixes(),
            vec![w(0, 0), w(0, 1), w(1, 0), w(1, 1), w(1, 2)]
        );
        assert_eq!(w(0, 0).prefixes(), vec![w(0, 0)]);
        assert_eq!(w(2, 8).prefixes().len(), 17);
        assert_eq!(w(2, 8).prefix_count(), BigUint::from(17u32));
        assert_eq!(w(40, 0).prefix_count(), BigUint::from(41u32));
    }

    #[test]
    fn labels() {
        assert_eq!(w(0, 0).label(), "e");
        assert_eq!(w(2, 8).label(), "bbaa");
        assert_eq!(w(2, 8).to_string(), "(2,8)");
    }
}
