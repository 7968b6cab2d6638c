use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Longest word a [`Word`] can hold.
pub const MAX_WORD_LEN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    /// First letter (`a` or `x`), bit value 0.
    A,
    /// Second letter (`b` or `y`), bit value 1.
    B,
}

/// Letter names used when rendering a word.
///
/// Zassenhaus exponents are written over `{a, b}` and BCH terms over `{x, y}`;
/// both share the same [`Word`] encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Alphabet {
    #[default]
    AB,
    XY,
}

impl Alphabet {
    pub fn letters(self) -> [char; 2] {
        match self {
            Alphabet::AB => ['a', 'b'],
            Alphabet::XY => ['x', 'y'],
        }
    }

    pub fn char(self, letter: Letter) -> char {
        let [first, second] = self.letters();
        match letter {
            Letter::A => first,
            Letter::B => second,
        }
    }

    pub fn letter(self, c: char) -> Option<Letter> {
        let [first, second] = self.letters();
        if c == first {
            Some(Letter::A)
        } else if c == second {
            Some(Letter::B)
        } else {
            None
        }
    }
}

/// A word over two letters, packed into a bitmask.
///
/// Letter `i` (0-based) is bit `i`; `a` is 0 and `b` is 1. Bits at or above
/// `len` are always zero, so equality and hashing are on the raw fields.
///
/// Words order shorter-first, then lexicographically with `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word {
    bits: u64,
    len: u8,
}

impl Word {
    pub const EMPTY: Word = Word { bits: 0, len: 0 };

    /// Builds a word from its bit pattern; `None` if `len` is too large or
    /// `bits` has bits set at or beyond `len`.
    pub fn new(bits: u64, len: usize) -> Option<Word> {
        if len > MAX_WORD_LEN || (len < MAX_WORD_LEN && bits >> len != 0) {
            return None;
        }
        Some(Word {
            bits,
            len: len as u8,
        })
    }

    /// The word `a…a` or `b…b` of the given length.
    pub fn repeated(letter: Letter, len: usize) -> Result<Word> {
        if len > MAX_WORD_LEN {
            return Err(Error::WordTooLong {
                len,
                max: MAX_WORD_LEN,
            });
        }
        let bits = match letter {
            Letter::A => 0,
            Letter::B => low_mask(len),
        };
        Ok(Word {
            bits,
            len: len as u8,
        })
    }

    pub fn from_letters(letters: &[Letter]) -> Result<Word> {
        if letters.len() > MAX_WORD_LEN {
            return Err(Error::WordTooLong {
                len: letters.len(),
                max: MAX_WORD_LEN,
            });
        }
        let bits = letters
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == Letter::B)
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        Ok(Word {
            bits,
            len: letters.len() as u8,
        })
    }

    /// Parses a word written in the given alphabet.
    pub fn parse(s: &str, alphabet: Alphabet) -> Result<Word> {
        let letters = s
            .chars()
            .map(|c| alphabet.letter(c).ok_or(Error::InvalidLetter(c)))
            .collect::<Result<Vec<_>>>()?;
        Word::from_letters(&letters)
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    /// Letter at 0-based position `i`.
    pub fn letter(self, i: usize) -> Letter {
        assert!(i < self.len(), "letter index {i} out of range");
        if self.bits >> i & 1 == 1 {
            Letter::B
        } else {
            Letter::A
        }
    }

    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..self.len()).map(move |i| self.letter(i))
    }

    pub fn count_b(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn count_a(self) -> usize {
        self.len() - self.count_b()
    }

    /// True if every letter is the same (including the empty word).
    pub fn is_pure(self) -> bool {
        self.bits == 0 || self.bits == low_mask(self.len())
    }

    /// Concatenation `self · other`, or `None` if the result would be too long.
    pub fn concat(self, other: Word) -> Option<Word> {
        let len = self.len() + other.len();
        if len > MAX_WORD_LEN {
            return None;
        }
        let bits = if other.len == 0 {
            self.bits
        } else {
            self.bits | other.bits << self.len
        };
        Some(Word {
            bits,
            len: len as u8,
        })
    }

    /// First `k` letters.
    pub fn prefix(self, k: usize) -> Word {
        assert!(k <= self.len());
        Word {
            bits: self.bits & low_mask(k),
            len: k as u8,
        }
    }

    pub fn render(self, alphabet: Alphabet) -> String {
        self.letters().map(|l| alphabet.char(l)).collect()
    }

    fn lex_key(self) -> u64 {
        self.bits.reverse_bits()
    }
}

pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.lex_key().cmp(&other.lex_key()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Alphabet::AB))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s, Alphabet::AB)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn encoding_puts_first_letter_in_lowest_bit() {
        assert_eq!(w("baa").bits(), 0b001);
        assert_eq!(w("aab").bits(), 0b100);
        assert_eq!(w("babbaa").bits(), 0b001101);
        assert_eq!(w("").len(), 0);
    }

    #[test]
    fn ordering_is_shortlex() {
        let mut words = [w("ba"), w("b"), w("ab"), w("aab"), w("a"), w("bb"), w("aa")];
        words.sort();
        let rendered: Vec<String> = words.iter().map(|x| x.to_string()).collect();
        assert_eq!(rendered, ["a", "b", "aa", "ab", "ba", "bb", "aab"]);
    }

    #[test]
    fn concat_and_prefix() {
        assert_eq!(w("ab").concat(w("ba")), Some(w("abba")));
        assert_eq!(w("ab").concat(Word::EMPTY), Some(w("ab")));
        assert_eq!(w("abba").prefix(3), w("abb"));
        let long = Word::repeated(Letter::B, 64).unwrap();
        assert_eq!(long.concat(w("a")), None);
        assert_eq!(long.concat(Word::EMPTY), Some(long));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!("abc".parse::<Word>(), Err(Error::InvalidLetter('c')));
        assert!(Word::new(0b100, 2).is_none());
        assert!(Word::new(0, 65).is_none());
        assert!(Word::repeated(Letter::A, 65).is_err());
    }

    #[test]
    fn letter_counts() {
        let x = w("babbaa");
        assert_eq!((x.count_a(), x.count_b()), (3, 3));
        assert!(w("aaa").is_pure());
        assert!(w("bbbb").is_pure());
        assert!(!w("ab").is_pure());
        assert_eq!(Word::parse("yxy", Alphabet::XY).unwrap(), w("bab"));
        assert_eq!(w("bab").render(Alphabet::XY), "yxy");
    }
}
