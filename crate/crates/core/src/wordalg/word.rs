use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
        }
    }
}

/// A word over `{A, B}`, packed into a `u128` (first letter in the most significant
/// used bit, `A = 0`, `B = 1`). The empty word is the identity.
///
/// Ordering is graded lexicographic with `A < B`: shorter words first, then
/// lexicographic, which for equal lengths coincides with numeric order of the bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    bits: u128,
    len: u8,
}

impl Word {
    pub const MAX_LEN: usize = 128;

    pub const fn empty() -> Self {
        Word { bits: 0, len: 0 }
    }

    pub fn letter(l: Letter) -> Self {
        Word {
            bits: l as u128,
            len: 1,
        }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        letters
            .into_iter()
            .fold(Word::empty(), |w, l| w.concat(&Word::letter(l)))
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Letter at position `i`, counted from the left.
    pub fn get(&self, i: usize) -> Letter {
        assert!(i < self.len());
        if (self.bits >> (self.len() - 1 - i)) & 1 == 1 {
            Letter::B
        } else {
            Letter::A
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn count(&self, l: Letter) -> usize {
        let ones = self.bits.count_ones() as usize;
        match l {
            Letter::B => ones,
            Letter::A => self.len() - ones,
        }
    }

    /// Panics if the result would exceed [`Word::MAX_LEN`] letters.
    pub fn concat(&self, other: &Word) -> Word {
        let len = self.len() + other.len();
        assert!(len <= Self::MAX_LEN, "word length {len} exceeds {}", Self::MAX_LEN);
        let bits = if other.len == 0 {
            self.bits
        } else if other.len() == Self::MAX_LEN {
            other.bits
        } else {
            (self.bits << other.len) | other.bits
        };
        Word { bits, len: len as u8 }
    }

    /// Replaces the letters at `i, i+1` by `b, a` (used by the normal-ordering rewrite).
    pub(crate) fn swap_adjacent(&self, i: usize) -> Word {
        assert!(i + 1 < self.len());
        let hi = self.len() - 1 - i;
        let mask = (1u128 << hi) | (1u128 << (hi - 1));
        let a = (self.bits >> hi) & 1;
        let b = (self.bits >> (hi - 1)) & 1;
        if a == b {
            return *self;
        }
        Word {
            bits: self.bits ^ mask,
            len: self.len,
        }
    }

    /// Compact display such as `A^2BA`.
    pub fn pretty(&self) -> String {
        if self.is_empty() {
            return "I".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.len() {
            let l = self.get(i);
            let mut j = i;
            while j < self.len() && self.get(j) == l {
                j += 1;
            }
            out.push(l.as_char());
            if j - i > 1 {
                out.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then(self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// Plain letter string; the empty word prints as `I`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "I");
        }
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "I" || s.is_empty() {
            return Ok(Word::empty());
        }
        if s.len() > Self::MAX_LEN {
            return Err(Error::Parse(format!("word longer than {} letters", Self::MAX_LEN)));
        }
        s.chars()
            .map(|c| match c {
                'A' => Ok(Letter::A),
                'B' => Ok(Letter::B),
                _ => Err(Error::Parse(format!("invalid letter `{c}` in word `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::from_letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn deglex_order() {
        let mut v = [w("BA"), w("B"), w("AAA"), w("AB"), w("I"), w("A"), w("AA"), w("BB")];
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["I", "A", "B", "AA", "AB", "BA", "BB", "AAA"]);
    }

    #[test]
    fn concat_and_letters() {
        assert_eq!(w("AB").concat(&w("BA")), w("ABBA"));
        assert_eq!(Word::empty().concat(&w("B")), w("B"));
        assert_eq!(w("ABBA").count(Letter::B), 2);
        assert_eq!(w("AABAB").pretty(), "A^2BAB");
        assert_eq!(w("BA").swap_adjacent(0), w("AB"));
        assert_eq!(w("ABAB").swap_adjacent(1), w("AABB"));
        assert!("AC".parse::<Word>().is_err());
    }

    #[test]
    fn long_words() {
        let a = Word::from_letters(std::iter::repeat_n(Letter::B, 64));
        let b = a.concat(&a);
        assert_eq!(b.len(), 128);
        assert_eq!(b.count(Letter::B), 128);
        let c = Word::empty().concat(&b);
        assert_eq!(c, b);
    }
}
