//! Green/yellow/gray feedback and its base-3 code.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WordleError};
use crate::vocab::Spelling;

/// Feedback for one guessed letter. Ordered Gray < Yellow < Green, which is
/// also the digit value used in the pattern code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Gray = 0,
    Yellow = 1,
    Green = 2,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Gray, Color::Yellow, Color::Green];

    pub fn digit(self) -> u64 {
        self as u64
    }

    fn from_digit(d: u64) -> Color {
        match d {
            0 => Color::Gray,
            1 => Color::Yellow,
            _ => Color::Green,
        }
    }

    /// Wire letter: `G`, `Y` or `X`.
    pub fn to_char(self) -> char {
        match self {
            Color::Gray => 'X',
            Color::Yellow => 'Y',
            Color::Green => 'G',
        }
    }

    pub fn from_char(c: char) -> Option<Color> {
        match c {
            'G' => Some(Color::Green),
            'Y' => Some(Color::Yellow),
            'X' => Some(Color::Gray),
            _ => None,
        }
    }
}

/// Per-position feedback for one guess.
///
/// The code is `sum(color_i * 3^i)` with `i = 0` at the leftmost letter.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    colors: Vec<Color>,
}

impl Pattern {
    pub fn new(colors: Vec<Color>) -> Self {
        Pattern { colors }
    }

    pub fn all_green(len: usize) -> Self {
        Pattern {
            colors: vec![Color::Green; len],
        }
    }

    pub fn from_code(code: u64, len: usize) -> Result<Self> {
        if code >= pattern_space(len) {
            return Err(WordleError::InvalidPattern {
                pattern: code.to_string(),
                reason: format!("code out of range for length {len}"),
            });
        }
        let mut rest = code;
        let colors = (0..len)
            .map(|_| {
                let c = Color::from_digit(rest % 3);
                rest /= 3;
                c
            })
            .collect();
        Ok(Pattern { colors })
    }

    pub fn code(&self) -> u64 {
        self.colors.iter().rev().fold(0, |acc, c| acc * 3 + c.digit())
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn is_solved(&self) -> bool {
        self.colors.iter().all(|&c| c == Color::Green)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.colors {
            write!(f, "{}", c.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({self})")
    }
}

impl FromStr for Pattern {
    type Err = WordleError;

    /// Parses the wire form: uppercase `G`/`Y`/`X`, leftmost letter first.
    fn from_str(s: &str) -> Result<Self> {
        let colors = s
            .chars()
            .map(|c| {
                Color::from_char(c).ok_or_else(|| WordleError::InvalidPattern {
                    pattern: s.to_owned(),
                    reason: format!("{c:?} is not one of G, Y, X"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if colors.is_empty() {
            return Err(WordleError::InvalidPattern {
                pattern: s.to_owned(),
                reason: "empty".into(),
            });
        }
        Ok(Pattern { colors })
    }
}

impl Serialize for Pattern {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Number of distinct patterns for words of length `len` (`3^len`).
pub fn pattern_space(len: usize) -> u64 {
    3u64.pow(len as u32)
}

/// Code of the all-green pattern for length `len`.
pub fn solved_code(len: usize) -> u64 {
    pattern_space(len) - 1
}

/// Feedback for `guess` against `hidden`: green when the letter sits at the
/// same position, yellow when it occurs elsewhere, gray otherwise.
pub fn get_pattern(guess: &impl AsRef<Spelling>, hidden: &impl AsRef<Spelling>) -> Result<Pattern> {
    let (g, h) = (guess.as_ref(), hidden.as_ref());
    if g.len() != h.len() {
        return Err(WordleError::LengthMismatch {
            expected: h.len(),
            actual: g.len(),
        });
    }
    let colors = g
        .letters()
        .iter()
        .zip(h.letters())
        .map(|(&gl, &hl)| {
            if gl == hl {
                Color::Green
            } else if h.mask().contains(gl) {
                Color::Yellow
            } else {
                Color::Gray
            }
        })
        .collect();
    Ok(Pattern { colors })
}

/// Pattern code without building the color vector. Both spellings must have
/// the same length.
#[inline]
pub fn pattern_code(guess: &Spelling, hidden: &Spelling) -> u64 {
    debug_assert_eq!(guess.len(), hidden.len());
    let hmask = hidden.mask();
    let mut code = 0u64;
    let mut place = 1u64;
    for (&gl, &hl) in guess.letters().iter().zip(hidden.letters()) {
        if gl == hl {
            code += 2 * place;
        } else if hmask.contains(gl) {
            code += place;
        }
        place *= 3;
    }
    code
}
