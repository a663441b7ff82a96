//! Board-state digest used by the clique solver.
//!
//! The tracker remembers which letters were found (green or yellow), which
//! are grey, where the greens sit, which words were guessed and which words
//! can no longer be the answer. Yellow positions are not recorded.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::alphabet::{AlphabetConfig, LetterMask};
use crate::error::{Result, WordleError};
use crate::pattern::{get_pattern, Color, Pattern};
use crate::vocab::{Spelling, Vocabulary, Word};

const MAX_SYMBOLS: usize = 26;

#[derive(Clone)]
pub struct WordleTracker {
    vocab: Vocabulary,
    unseen_chars: LetterMask,
    discarded: FixedBitSet,
    letters_found: LetterMask,
    /// Green position per symbol index.
    positions: [Option<u8>; MAX_SYMBOLS],
    words_guessed: Vec<usize>,
    grey_letters: LetterMask,
}

impl std::fmt::Debug for WordleTracker {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WordleTracker")
            .field("unseen_chars", &self.unseen_chars)
            .field("letters_found", &self.letters_found)
            .field("grey_letters", &self.grey_letters)
            .field("letter_positions", &self.letter_positions())
            .field("words_guessed", &self.words_guessed)
            .field("discarded", &self.discarded.count_ones(..))
            .finish()
    }
}

impl WordleTracker {
    pub fn new(vocab: Vocabulary) -> Self {
        let unseen_chars = vocab.alphabet().full_mask();
        let discarded = FixedBitSet::with_capacity(vocab.len());
        WordleTracker {
            vocab,
            unseen_chars,
            discarded,
            letters_found: LetterMask::EMPTY,
            positions: [None; MAX_SYMBOLS],
            words_guessed: Vec::new(),
            grey_letters: LetterMask::EMPTY,
        }
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn unseen_chars(&self) -> LetterMask {
        self.unseen_chars
    }

    pub fn letters_found(&self) -> LetterMask {
        self.letters_found
    }

    pub fn grey_letters(&self) -> LetterMask {
        self.grey_letters
    }

    pub fn words_guessed(&self) -> &[usize] {
        &self.words_guessed
    }

    pub fn is_discarded(&self, index: usize) -> bool {
        self.discarded.contains(index)
    }

    pub fn discarded_words(&self) -> impl Iterator<Item = usize> + '_ {
        self.discarded.ones()
    }

    pub fn discarded_count(&self) -> usize {
        self.discarded.count_ones(..)
    }

    /// Green position of a symbol index, if known.
    pub fn position_of(&self, letter: u8) -> Option<usize> {
        self.positions[letter as usize].map(usize::from)
    }

    /// Green letters and their positions.
    pub fn letter_positions(&self) -> BTreeMap<char, usize> {
        let alphabet = self.vocab.alphabet();
        self.positions
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|p| (alphabet.symbol(i as u8), p as usize)))
            .collect()
    }

    /// Vocabulary indices not yet discarded.
    pub fn remaining(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vocab.len()).filter(|&i| !self.discarded.contains(i))
    }

    pub fn remaining_count(&self) -> usize {
        self.vocab.len() - self.discarded_count()
    }

    pub fn all_letters_found(&self) -> bool {
        self.letters_found.len() == self.vocab.word_length()
    }

    /// Appends guessed word indices in order.
    pub fn update_words_guessed(&mut self, guessed: &[usize]) {
        self.words_guessed.extend_from_slice(guessed);
    }

    /// Classifies each letter of the guessed words against `hidden`.
    pub fn update_letters_found(&mut self, guessed: &[usize], hidden: &impl AsRef<Spelling>) -> Result<()> {
        for &g in guessed {
            let word = self.vocab.word(g).spelling().clone();
            let pattern = get_pattern(&word, hidden)?;
            self.observe_letters(&word, &pattern)?;
        }
        Ok(())
    }

    /// Letter bookkeeping from one observed pattern: greens and yellows are
    /// found (greens also fix a position), grays are grey.
    pub fn observe_letters(&mut self, guess: &Spelling, pattern: &Pattern) -> Result<()> {
        if guess.len() != pattern.len() || guess.len() != self.vocab.word_length() {
            return Err(WordleError::LengthMismatch {
                expected: self.vocab.word_length(),
                actual: guess.len().min(pattern.len()),
            });
        }
        for (i, (&letter, &color)) in guess.letters().iter().zip(pattern.colors()).enumerate() {
            match color {
                Color::Green => {
                    self.letters_found.insert(letter);
                    self.positions[letter as usize] = Some(i as u8);
                }
                Color::Yellow => self.letters_found.insert(letter),
                Color::Gray => self.grey_letters.insert(letter),
            }
        }
        Ok(())
    }

    pub fn update_unseen_chars(&mut self) {
        let seen = self.letters_found.union(self.grey_letters);
        self.unseen_chars = self.unseen_chars.difference(seen);
    }

    /// Discards every word that contains a grey letter, misses a found
    /// letter, or has a green letter out of place.
    pub fn update_discarded_words(&mut self) {
        let greens = self.green_constraints();
        for i in 0..self.vocab.len() {
            if self.discarded.contains(i) {
                continue;
            }
            if self.violates(self.vocab.word(i), &greens) {
                self.discarded.insert(i);
            }
        }
    }

    fn green_constraints(&self) -> Vec<(usize, u8)> {
        self.positions
            .iter()
            .enumerate()
            .filter_map(|(letter, p)| p.map(|p| (p as usize, letter as u8)))
            .collect()
    }

    fn violates(&self, word: &Word, greens: &[(usize, u8)]) -> bool {
        let mask = word.mask();
        !mask.intersection(self.grey_letters).is_empty()
            || !self.letters_found.is_subset(mask)
            || greens.iter().any(|&(p, l)| word.letters().get(p) != Some(&l))
    }

    /// Whether a word would survive the discard rules right now.
    pub fn admits(&self, word: &Word) -> bool {
        !self.violates(word, &self.green_constraints())
    }

    /// Records one guess with its feedback and refreshes everything in the
    /// canonical order: words guessed, letters, unseen, discarded.
    pub fn record_guess(&mut self, guess: &Spelling, pattern: &Pattern) -> Result<()> {
        if let Some(i) = self.vocab.index_of(guess.text()) {
            self.update_words_guessed(&[i]);
        }
        self.observe_letters(guess, pattern)?;
        self.update_unseen_chars();
        self.update_discarded_words();
        Ok(())
    }

    /// Describes why the current state cannot come from any single hidden
    /// vocabulary word, if it cannot.
    pub fn contradiction(&self) -> Option<String> {
        let alphabet = self.vocab.alphabet();
        let both = self.letters_found.intersection(self.grey_letters);
        if !both.is_empty() {
            let letters: String = both.iter().map(|i| alphabet.symbol(i)).collect();
            return Some(format!("letters {letters:?} reported both present and absent"));
        }
        if self.letters_found.len() > self.vocab.word_length() {
            return Some(format!(
                "{} letters reported present in a {}-letter word",
                self.letters_found.len(),
                self.vocab.word_length()
            ));
        }
        let mut slot_owner: BTreeMap<usize, char> = BTreeMap::new();
        for (letter, pos) in self.letter_positions() {
            if let Some(other) = slot_owner.insert(pos, letter) {
                return Some(format!("position {pos} reported green for both {other:?} and {letter:?}"));
            }
        }
        if self.remaining_count() == 0 {
            return Some("no vocabulary word is consistent with the feedback".into());
        }
        None
    }

    pub fn to_state(&self) -> TrackerState {
        let alphabet = self.vocab.alphabet();
        let chars = |m: LetterMask| {
            let mut v: Vec<char> = m.iter().map(|i| alphabet.symbol(i)).collect();
            v.sort_unstable();
            v
        };
        TrackerState {
            unseen_chars: chars(self.unseen_chars),
            discarded_words: self.discarded.ones().collect(),
            letters_found: chars(self.letters_found),
            letter_positions: self.letter_positions(),
            words_guessed: self.words_guessed.clone(),
            grey_letters: chars(self.grey_letters),
        }
    }

    pub fn from_state(vocab: Vocabulary, state: &TrackerState) -> Result<Self> {
        let alphabet = vocab.alphabet().clone();
        let mask = |cs: &[char]| -> Result<LetterMask> { cs.iter().map(|&c| symbol_index(&alphabet, c)).collect() };
        let mut t = WordleTracker::new(vocab);
        t.unseen_chars = mask(&state.unseen_chars)?;
        t.letters_found = mask(&state.letters_found)?;
        t.grey_letters = mask(&state.grey_letters)?;
        for (&c, &p) in &state.letter_positions {
            if p >= t.vocab.word_length() {
                return Err(WordleError::Contract(format!("position {p} out of range")));
            }
            t.positions[symbol_index(&alphabet, c)? as usize] = Some(p as u8);
        }
        for &i in state.discarded_words.iter().chain(&state.words_guessed) {
            if i >= t.vocab.len() {
                return Err(WordleError::Contract(format!("word index {i} out of range")));
            }
        }
        for &i in &state.discarded_words {
            t.discarded.insert(i);
        }
        t.words_guessed = state.words_guessed.clone();
        Ok(t)
    }
}

fn symbol_index(alphabet: &AlphabetConfig, c: char) -> Result<u8> {
    u8::try_from(c)
        .ok()
        .and_then(|b| alphabet.index_of(b))
        .ok_or_else(|| WordleError::Contract(format!("{c:?} is not in the alphabet")))
}

/// JSON form of a tracker: letter sets as sorted arrays, positions as an
/// object keyed by letter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackerState {
    pub unseen_chars: Vec<char>,
    pub discarded_words: Vec<usize>,
    pub letters_found: Vec<char>,
    pub letter_positions: BTreeMap<char, usize>,
    pub words_guessed: Vec<usize>,
    pub grey_letters: Vec<char>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vocab::load_vocabulary;

    fn vocab(words: &str) -> Vocabulary {
        load_vocabulary(words.replace(' ', "\n").as_bytes(), 3, AlphabetConfig::default()).unwrap()
    }

    fn letters(t: &WordleTracker, m: LetterMask) -> String {
        m.iter().map(|i| t.vocab().alphabet().symbol(i)).collect()
    }

    #[test]
    fn fresh_tracker() {
        let t = WordleTracker::new(vocab("abc def"));
        assert_eq!(t.unseen_chars().len(), 26);
        assert!(t.letters_found().is_empty());
        assert_eq!(t.discarded_count(), 0);
        assert!(t.words_guessed().is_empty());
    }

    #[test]
    fn words_guessed_appends_without_dedup() {
        let mut t = WordleTracker::new(vocab("abc def ghi"));
        t.update_words_guessed(&[]);
        assert!(t.words_guessed().is_empty());
        t.update_words_guessed(&[2]);
        t.update_words_guessed(&[0]);
        t.update_words_guessed(&[2]);
        assert_eq!(t.words_guessed(), &[2, 0, 2]);
        assert_eq!(t.unseen_chars().len(), 26);
    }

    #[test]
    fn guess_equal_to_hidden() {
        let v = vocab("abc def");
        let mut t = WordleTracker::new(v.clone());
        t.update_letters_found(&[0], v.word(0)).unwrap();
        assert_eq!(letters(&t, t.letters_found()), "abc");
        assert_eq!(t.letter_positions().len(), 3);
    }

    #[test]
    fn disjoint_guess_goes_grey() {
        let v = vocab("abc def");
        let mut t = WordleTracker::new(v.clone());
        t.update_letters_found(&[1], v.word(0)).unwrap();
        assert_eq!(letters(&t, t.grey_letters()), "def");
        assert!(t.letters_found().is_empty());
    }

    #[test]
    fn all_yellow_has_no_positions() {
        let v = vocab("abc cab");
        let mut t = WordleTracker::new(v.clone());
        t.update_letters_found(&[0], v.get("cab").unwrap()).unwrap();
        assert_eq!(letters(&t, t.letters_found()), "abc");
        assert!(t.letter_positions().is_empty());
    }

    #[test]
    fn unseen_drops_by_new_letters_and_is_idempotent() {
        let v = load_vocabulary(b"abcde\nfghij\n", 5, AlphabetConfig::default()).unwrap();
        let mut t = WordleTracker::new(v.clone());
        t.update_letters_found(&[0], v.word(1)).unwrap();
        t.update_unseen_chars();
        assert_eq!(t.unseen_chars().len(), 21);
        let before = t.unseen_chars();
        t.update_unseen_chars();
        assert_eq!(t.unseen_chars(), before);
    }

    #[test]
    fn grey_overlap_discards() {
        let v = vocab("xyz abc");
        let mut t = WordleTracker::new(v.clone());
        t.observe_letters(&v.spell("xqr").unwrap(), &"XXX".parse().unwrap()).unwrap();
        t.update_discarded_words();
        assert!(t.is_discarded(v.index_of("xyz").unwrap()));
        assert!(!t.is_discarded(v.index_of("abc").unwrap()));
    }

    #[test]
    fn green_out_of_place_discards() {
        let v = vocab("bac abd");
        let mut t = WordleTracker::new(v.clone());
        t.observe_letters(&v.spell("aqr").unwrap(), &"GXX".parse().unwrap()).unwrap();
        t.update_discarded_words();
        assert!(t.is_discarded(v.index_of("bac").unwrap()));
        assert!(!t.is_discarded(v.index_of("abd").unwrap()));
        let before = t.discarded_count();
        t.update_discarded_words();
        assert_eq!(t.discarded_count(), before);
    }

    #[test]
    fn json_field_names_and_roundtrip() {
        let v = vocab("abc abd xyz");
        let mut t = WordleTracker::new(v.clone());
        t.record_guess(v.word(0).spelling(), &"GGX".parse().unwrap()).unwrap();
        let json = serde_json::to_value(t.to_state()).unwrap();
        let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            vec![
                "discarded_words",
                "grey_letters",
                "letter_positions",
                "letters_found",
                "unseen_chars",
                "words_guessed"
            ]
        );
        assert_eq!(json["letter_positions"]["a"], 0);
        assert_eq!(json["grey_letters"], serde_json::json!(["c"]));
        let back = WordleTracker::from_state(v, &serde_json::from_value(json).unwrap()).unwrap();
        assert_eq!(back.to_state(), t.to_state());
    }

    #[test]
    fn contradiction_detection() {
        let v = vocab("abc abd");
        let mut t = WordleTracker::new(v.clone());
        t.record_guess(v.word(0).spelling(), &"XGX".parse().unwrap()).unwrap();
        assert!(t.contradiction().is_some());
        let mut t = WordleTracker::new(v.clone());
        t.record_guess(v.word(0).spelling(), &"GGX".parse().unwrap()).unwrap();
        assert!(t.contradiction().is_none());
        t.record_guess(v.word(1).spelling(), &"GGX".parse().unwrap()).unwrap();
        assert!(t.contradiction().is_some());
    }
}
