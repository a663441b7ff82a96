//! Words, vocabularies and word-list loading.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hasher;
use std::sync::Arc;

use fnv::FnvHasher;

use crate::alphabet::{AlphabetConfig, LetterMask};
use crate::error::{Result, WordleError};

/// The letters of a guess or word: symbol indices in position order plus
/// their set. Letters are distinct by construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Spelling {
    text: String,
    letters: Vec<u8>,
    mask: LetterMask,
}

impl Spelling {
    /// Parses `text` (case-insensitive) against `alphabet`, requiring
    /// distinct in-alphabet letters.
    pub fn parse(text: &str, alphabet: &AlphabetConfig) -> Result<Self> {
        let lower = text.to_ascii_lowercase();
        let invalid = |reason: String| WordleError::InvalidWord {
            word: text.to_owned(),
            reason,
        };
        if lower.is_empty() {
            return Err(invalid("empty".into()));
        }
        let mut letters = Vec::with_capacity(lower.len());
        let mut mask = LetterMask::EMPTY;
        for ch in lower.chars() {
            let idx = u8::try_from(ch)
                .ok()
                .and_then(|b| alphabet.index_of(b))
                .ok_or_else(|| invalid(format!("{ch:?} is not in the alphabet")))?;
            if mask.contains(idx) {
                return Err(invalid(format!("letter {ch:?} repeats")));
            }
            mask.insert(idx);
            letters.push(idx);
        }
        Ok(Spelling {
            text: lower,
            letters,
            mask,
        })
    }

    /// Builds a spelling directly from symbol indices.
    pub fn from_letters(letters: &[u8], alphabet: &AlphabetConfig) -> Result<Self> {
        let text: String = letters
            .iter()
            .map(|&i| {
                if (i as usize) < alphabet.size() {
                    Ok(alphabet.symbol(i))
                } else {
                    Err(WordleError::InvalidWord {
                        word: format!("{letters:?}"),
                        reason: format!("symbol index {i} out of range"),
                    })
                }
            })
            .collect::<Result<_>>()?;
        Self::parse(&text, alphabet)
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn mask(&self) -> LetterMask {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Debug for Spelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.text)
    }
}

impl AsRef<Spelling> for Spelling {
    fn as_ref(&self) -> &Spelling {
        self
    }
}

/// A vocabulary word: a spelling plus its index in the sorted vocabulary.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    spelling: Spelling,
    index: usize,
}

impl Word {
    pub fn text(&self) -> &str {
        self.spelling.text()
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn letters(&self) -> &[u8] {
        self.spelling.letters()
    }

    pub fn mask(&self) -> LetterMask {
        self.spelling.mask()
    }

    pub fn spelling(&self) -> &Spelling {
        &self.spelling
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.text(), self.index)
    }
}

impl AsRef<Spelling> for Word {
    fn as_ref(&self) -> &Spelling {
        &self.spelling
    }
}

/// A sorted, deduplicated list of same-length distinct-letter words.
///
/// Cloning is cheap; the word list is shared.
#[derive(Clone)]
pub struct Vocabulary {
    inner: Arc<VocabInner>,
}

struct VocabInner {
    words: Vec<Word>,
    word_length: usize,
    alphabet: AlphabetConfig,
    by_text: HashMap<String, usize>,
    fingerprint: u64,
}

impl Vocabulary {
    /// Keeps the candidates that are `word_length` long with distinct
    /// in-alphabet letters; lowercases, deduplicates and sorts them.
    pub fn from_words<I, S>(candidates: I, word_length: usize, alphabet: AlphabetConfig) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut spellings: Vec<Spelling> = candidates
            .into_iter()
            .filter_map(|c| {
                let c = c.as_ref().trim();
                if c.chars().count() != word_length {
                    return None;
                }
                Spelling::parse(c, &alphabet).ok()
            })
            .collect();
        spellings.sort_by(|a, b| a.text.cmp(&b.text));
        spellings.dedup_by(|a, b| a.text == b.text);
        if spellings.is_empty() {
            return Err(WordleError::EmptyVocabulary { word_length });
        }

        let mut hasher = FnvHasher::default();
        for s in &spellings {
            hasher.write(s.text.as_bytes());
            hasher.write(b"\n");
        }
        let fingerprint = hasher.finish();

        let words: Vec<Word> = spellings
            .into_iter()
            .enumerate()
            .map(|(index, spelling)| Word { spelling, index })
            .collect();
        let by_text = words.iter().map(|w| (w.text().to_owned(), w.index)).collect();
        Ok(Vocabulary {
            inner: Arc::new(VocabInner {
                words,
                word_length,
                alphabet,
                by_text,
                fingerprint,
            }),
        })
    }

    pub fn len(&self) -> usize {
        self.inner.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.inner.words
    }

    /// Panics on an out-of-range index.
    pub fn word(&self, index: usize) -> &Word {
        &self.inner.words[index]
    }

    pub fn get(&self, text: &str) -> Option<&Word> {
        self.index_of(text).map(|i| self.word(i))
    }

    pub fn index_of(&self, text: &str) -> Option<usize> {
        self.inner.by_text.get(&text.to_ascii_lowercase()).copied()
    }

    pub fn word_length(&self) -> usize {
        self.inner.word_length
    }

    pub fn alphabet(&self) -> &AlphabetConfig {
        &self.inner.alphabet
    }

    /// 64-bit FNV-1a over the sorted words, each followed by `\n`.
    pub fn fingerprint(&self) -> u64 {
        self.inner.fingerprint
    }

    /// Parses a guess that need not be a vocabulary word.
    pub fn spell(&self, text: &str) -> Result<Spelling> {
        let s = Spelling::parse(text, self.alphabet())?;
        if s.len() != self.word_length() {
            return Err(WordleError::LengthMismatch {
                expected: self.word_length(),
                actual: s.len(),
            });
        }
        Ok(s)
    }

    pub fn all_indices(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    pub fn ptr_eq(&self, other: &Vocabulary) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }
}

impl PartialEq for Vocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other)
            || (self.fingerprint() == other.fingerprint()
                && self.word_length() == other.word_length()
                && self.alphabet() == other.alphabet()
                && self.words() == other.words())
    }
}

impl fmt::Debug for Vocabulary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Vocabulary")
            .field("word_length", &self.word_length())
            .field("len", &self.len())
            .field("fingerprint", &format_args!("{:016x}", self.fingerprint()))
            .finish()
    }
}

/// Loads a word list: UTF-8, one word per line (LF or CRLF), `#` comments.
pub fn load_vocabulary(source: &[u8], word_length: usize, alphabet: AlphabetConfig) -> Result<Vocabulary> {
    let text = String::from_utf8(source.to_vec())?;
    let lines = text
        .lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'));
    Vocabulary::from_words(lines, word_length, alphabet)
}

/// Reads and loads a word-list file.
pub fn load_vocabulary_file(
    path: impl AsRef<std::path::Path>,
    word_length: usize,
    alphabet: AlphabetConfig,
) -> Result<Vocabulary> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| WordleError::io(path, e))?;
    load_vocabulary(&bytes, word_length, alphabet)
}

/// Every `length`-permutation of the alphabet's symbols, as a vocabulary.
pub fn permutation_vocabulary(alphabet: AlphabetConfig, length: usize) -> Result<Vocabulary> {
    fn extend(prefix: &mut Vec<u8>, used: LetterMask, size: u8, length: usize, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == length {
            out.push(prefix.clone());
            return;
        }
        for s in 0..size {
            if !used.contains(s) {
                prefix.push(s);
                extend(prefix, used.union(LetterMask::single(s)), size, length, out);
                prefix.pop();
            }
        }
    }
    let mut raw = Vec::new();
    extend(&mut Vec::new(), LetterMask::EMPTY, alphabet.size() as u8, length, &mut raw);
    let texts: Vec<String> = raw
        .iter()
        .map(|w| w.iter().map(|&i| alphabet.symbol(i)).collect())
        .collect();
    Vocabulary::from_words(texts, length, alphabet)
}
