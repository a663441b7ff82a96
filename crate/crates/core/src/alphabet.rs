use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WordleError};

/// The ordered set of symbols words are spelled with.
///
/// Symbols are distinct lowercase ASCII letters, so an alphabet has at most
/// 26 symbols and any letter set fits in a [`LetterMask`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct AlphabetConfig {
    symbols: Vec<u8>,
    /// Symbol byte -> position in `symbols`, or `u8::MAX` when absent.
    lookup: [u8; 256],
}

impl AlphabetConfig {
    pub fn new(symbols: &str) -> Result<Self> {
        let bytes = symbols.as_bytes();
        if bytes.len() < 2 {
            return Err(WordleError::InvalidAlphabet(format!(
                "need at least 2 symbols, got {}",
                bytes.len()
            )));
        }
        let mut lookup = [u8::MAX; 256];
        for (i, &b) in bytes.iter().enumerate() {
            if !b.is_ascii_lowercase() {
                return Err(WordleError::InvalidAlphabet(format!(
                    "symbol {:?} is not a lowercase letter",
                    b as char
                )));
            }
            if lookup[b as usize] != u8::MAX {
                return Err(WordleError::InvalidAlphabet(format!(
                    "symbol {:?} repeated",
                    b as char
                )));
            }
            lookup[b as usize] = i as u8;
        }
        Ok(AlphabetConfig {
            symbols: bytes.to_vec(),
            lookup,
        })
    }

    /// The first `size` letters of `a..z`.
    pub fn first_letters(size: usize) -> Result<Self> {
        if size > 26 {
            return Err(WordleError::InvalidAlphabet(format!(
                "at most 26 symbols supported, got {size}"
            )));
        }
        let s: String = (b'a'..b'a' + size as u8).map(char::from).collect();
        Self::new(&s)
    }

    pub fn english() -> Self {
        Self::first_letters(26).expect("26 letters is a valid alphabet")
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Index of a symbol byte, if it belongs to the alphabet.
    pub fn index_of(&self, byte: u8) -> Option<u8> {
        match self.lookup[byte as usize] {
            u8::MAX => None,
            i => Some(i),
        }
    }

    pub fn symbol(&self, index: u8) -> char {
        self.symbols[index as usize] as char
    }

    /// Mask with every symbol of the alphabet set.
    pub fn full_mask(&self) -> LetterMask {
        LetterMask(((1u64 << self.size()) - 1) as u32)
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.symbols).expect("alphabet is ASCII")
    }
}

impl Default for AlphabetConfig {
    fn default() -> Self {
        Self::english()
    }
}

impl TryFrom<String> for AlphabetConfig {
    type Error = WordleError;

    fn try_from(value: String) -> Result<Self> {
        Self::new(&value)
    }
}

impl From<AlphabetConfig> for String {
    fn from(value: AlphabetConfig) -> Self {
        value.as_str().to_owned()
    }
}

/// A set of alphabet symbols, one bit per symbol index.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterMask(pub u32);

impl LetterMask {
    pub const EMPTY: LetterMask = LetterMask(0);

    pub fn single(index: u8) -> Self {
        LetterMask(1 << index)
    }

    pub fn contains(self, index: u8) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn insert(&mut self, index: u8) {
        self.0 |= 1 << index;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        LetterMask(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        LetterMask(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        LetterMask(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Symbol indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = u8> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as u8;
            bits &= bits - 1;
            Some(i)
        })
    }
}

impl fmt::Debug for LetterMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<u8> for LetterMask {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        let mut m = LetterMask::EMPTY;
        for i in iter {
            m.insert(i);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_alphabets() {
        assert!(AlphabetConfig::new("a").is_err());
        assert!(AlphabetConfig::new("aba").is_err());
        assert!(AlphabetConfig::new("aB").is_err());
        assert!(AlphabetConfig::first_letters(27).is_err());
    }

    #[test]
    fn english_has_26_symbols() {
        let a = AlphabetConfig::default();
        assert_eq!(a.size(), 26);
        assert_eq!(a.index_of(b'z'), Some(25));
        assert_eq!(a.index_of(b'1'), None);
        assert_eq!(a.full_mask().len(), 26);
    }

    #[test]
    fn mask_ops() {
        let m: LetterMask = [0u8, 3, 5].into_iter().collect();
        assert_eq!(m.len(), 3);
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![0, 3, 5]);
        let n: LetterMask = [3u8, 7].into_iter().collect();
        assert_eq!(m.intersection(n), LetterMask::single(3));
        assert_eq!(m.difference(n).len(), 2);
        assert!(LetterMask::single(5).is_subset(m));
    }
}
