//! Minimax-greedy solver.
//!
//! Each round guesses the active word whose largest feedback bucket (over the
//! active words as possible hiddens) is smallest, then keeps only the words
//! consistent with the observed feedback. Guesses always come from the active
//! set, so the same play is legal in hard mode.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Result, WordleError};
use crate::game::{play_move, trim_vocab, Board, GameConfig, Mode, MoveStatus};
use crate::pattern::{pattern_code, pattern_space, Pattern};
use crate::transcript::{Phase, Step, Transcript};
use crate::vocab::{Spelling, Vocabulary, Word};

/// Word lengths up to this use a dense `3^l` bucket array.
const DENSE_MAX_LEN: usize = 9;
/// Below this many active words the candidate loop stays sequential.
const PARALLEL_THRESHOLD: usize = 256;

/// The pruned candidate set of one greedy game.
#[derive(Debug, Clone)]
pub struct GreedyState {
    vocab: Vocabulary,
    active: Vec<usize>,
    mode: Mode,
}

impl GreedyState {
    pub fn new(vocab: Vocabulary, mode: Mode) -> Self {
        let active = vocab.all_indices();
        GreedyState { vocab, active, mode }
    }

    /// `active` is sorted and deduplicated; it must be nonempty and in range.
    pub fn with_active(vocab: Vocabulary, mut active: Vec<usize>, mode: Mode) -> Result<Self> {
        active.sort_unstable();
        active.dedup();
        if active.is_empty() {
            return Err(WordleError::EmptyActiveSet);
        }
        if active.last().is_some_and(|&i| i >= vocab.len()) {
            return Err(WordleError::Contract("active index out of range".into()));
        }
        Ok(GreedyState { vocab, active, mode })
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn active(&self) -> &[usize] {
        &self.active
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Prunes the active set by an observed pattern. Leaves the state
    /// untouched and returns [`WordleError::EmptyActiveSet`] when no active
    /// word is consistent with the feedback.
    pub fn observe(&mut self, guess: &impl AsRef<Spelling>, observed: &Pattern) -> Result<()> {
        let kept = trim_vocab(&self.vocab, &self.active, guess, observed)?;
        if kept.is_empty() {
            return Err(WordleError::EmptyActiveSet);
        }
        self.active = kept;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GuessEvaluation {
    pub guess_index: usize,
    pub worst_bucket: usize,
}

/// Pattern-code counters reused across candidate guesses.
struct Buckets {
    dense: Vec<u32>,
    sparse: HashMap<u64, u32>,
    touched: Vec<u64>,
}

impl Buckets {
    fn new(word_length: usize) -> Self {
        let dense = if word_length <= DENSE_MAX_LEN {
            vec![0; pattern_space(word_length) as usize]
        } else {
            Vec::new()
        };
        Buckets {
            dense,
            sparse: HashMap::new(),
            touched: Vec::new(),
        }
    }

    #[inline]
    fn bump(&mut self, code: u64) -> u32 {
        if self.dense.is_empty() {
            let c = self.sparse.entry(code).or_insert(0);
            *c += 1;
            *c
        } else {
            let c = &mut self.dense[code as usize];
            if *c == 0 {
                self.touched.push(code);
            }
            *c += 1;
            *c
        }
    }

    fn reset(&mut self) {
        if self.dense.is_empty() {
            self.sparse.clear();
        } else {
            for &code in &self.touched {
                self.dense[code as usize] = 0;
            }
            self.touched.clear();
        }
    }
}

/// Largest bucket for `guess` over `active`, or `None` once it reaches
/// `limit` (the candidate can no longer win).
fn worst_bucket_bounded(
    vocab: &Vocabulary,
    guess: &Spelling,
    active: &[usize],
    buckets: &mut Buckets,
    limit: usize,
) -> Option<usize> {
    let mut worst = 0usize;
    for &h in active {
        let n = buckets.bump(pattern_code(guess, vocab.word(h).spelling())) as usize;
        if n > worst {
            worst = n;
            if worst >= limit {
                buckets.reset();
                return None;
            }
        }
    }
    buckets.reset();
    Some(worst)
}

/// Largest pattern bucket `guess` splits `active` into.
pub fn worst_bucket(vocab: &Vocabulary, active: &[usize], guess: &impl AsRef<Spelling>) -> usize {
    let mut buckets = Buckets::new(vocab.word_length());
    worst_bucket_bounded(vocab, guess.as_ref(), active, &mut buckets, usize::MAX).unwrap_or(0)
}

fn best_in(vocab: &Vocabulary, candidates: &[usize], active: &[usize]) -> Option<GuessEvaluation> {
    let mut buckets = Buckets::new(vocab.word_length());
    let mut best: Option<GuessEvaluation> = None;
    for &g in candidates {
        let limit = best.map_or(usize::MAX, |b| b.worst_bucket);
        if let Some(w) = worst_bucket_bounded(vocab, vocab.word(g).spelling(), active, &mut buckets, limit) {
            best = Some(GuessEvaluation {
                guess_index: g,
                worst_bucket: w,
            });
            if w == 1 {
                break;
            }
        }
    }
    best
}

/// Picks the active word minimizing the worst-case bucket size; ties go to
/// the lowest word index.
pub fn choose_guess(state: &GreedyState) -> Result<GuessEvaluation> {
    let active = state.active();
    match active.len() {
        0 => Err(WordleError::EmptyActiveSet),
        1 | 2 => Ok(GuessEvaluation {
            guess_index: active[0],
            worst_bucket: 1,
        }),
        n if n < PARALLEL_THRESHOLD => Ok(best_in(&state.vocab, active, active).expect("nonempty")),
        n => {
            let chunk = (n / (rayon::current_num_threads() * 4)).max(32);
            let best = active
                .par_chunks(chunk)
                .filter_map(|cands| best_in(&state.vocab, cands, active))
                .min_by_key(|e| (e.worst_bucket, e.guess_index))
                .expect("nonempty");
            Ok(best)
        }
    }
}

/// Memoized opening guesses keyed by (vocabulary fingerprint, length, mode).
///
/// Text form: one `fingerprint,length,mode,word` line per entry, with the
/// fingerprint as 16 lowercase hex digits.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FirstGuessCache {
    entries: BTreeMap<CacheKey, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CacheKey {
    pub fingerprint: u64,
    pub word_length: usize,
    pub mode: Mode,
}

impl CacheKey {
    pub fn for_vocab(vocab: &Vocabulary, mode: Mode) -> Self {
        CacheKey {
            fingerprint: vocab.fingerprint(),
            word_length: vocab.word_length(),
            mode,
        }
    }
}

impl FirstGuessCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Cached opening word index for this vocabulary, if any.
    pub fn lookup(&self, vocab: &Vocabulary, mode: Mode) -> Option<usize> {
        self.entries
            .get(&CacheKey::for_vocab(vocab, mode))
            .and_then(|w| vocab.index_of(w))
    }

    /// Computes (or returns the cached) opening guess for the full vocabulary.
    pub fn warm_first_guess(&mut self, vocab: &Vocabulary, mode: Mode) -> usize {
        if let Some(i) = self.lookup(vocab, mode) {
            return i;
        }
        let state = GreedyState::new(vocab.clone(), mode);
        let eval = choose_guess(&state).expect("vocabularies are nonempty");
        self.insert(vocab, mode, eval.guess_index);
        eval.guess_index
    }

    pub fn insert(&mut self, vocab: &Vocabulary, mode: Mode, index: usize) {
        self.entries
            .insert(CacheKey::for_vocab(vocab, mode), vocab.word(index).text().to_owned());
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (key, word) in &self.entries {
            let _ = writeln!(
                out,
                "{:016x},{},{},{}",
                key.fingerprint, key.word_length, key.mode, word
            );
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |reason: &str| WordleError::CacheFormat {
                line: n + 1,
                reason: reason.to_owned(),
            };
            let fields: Vec<&str> = line.split(',').collect();
            let [fp, len, mode, word] = fields[..] else {
                return Err(bad("expected 4 comma-separated fields"));
            };
            let key = CacheKey {
                fingerprint: u64::from_str_radix(fp, 16).map_err(|_| bad("bad fingerprint"))?,
                word_length: len.parse().map_err(|_| bad("bad length"))?,
                mode: mode.parse().map_err(|_| bad("bad mode"))?,
            };
            entries.insert(key, word.to_owned());
        }
        Ok(FirstGuessCache { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| WordleError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| WordleError::io(path, e))
    }
}

/// Plays one greedy game against `hidden`.
///
/// The opening guess comes from `cache` when it has an entry for this
/// vocabulary; the transcript is identical either way.
pub fn solve(
    vocab: &Vocabulary,
    hidden: &Word,
    config: &GameConfig,
    cache: Option<&FirstGuessCache>,
) -> Result<Transcript> {
    if vocab.get(hidden.text()).map(Word::index) != Some(hidden.index()) {
        return Err(WordleError::UnknownWord(hidden.text().to_owned()));
    }
    let mut state = GreedyState::new(vocab.clone(), config.mode);
    let mut board = Board::new(config.max_tries);
    let mut steps = Vec::new();
    let mut first = cache.and_then(|c| c.lookup(vocab, config.mode));
    loop {
        let index = match first.take() {
            Some(i) => i,
            None => choose_guess(&state)?.guess_index,
        };
        let guess = vocab.word(index);
        let (pattern, status) = play_move(&mut board, guess.text(), hidden, config, vocab)?;
        steps.push(Step {
            guess: guess.text().to_owned(),
            pattern: pattern.clone(),
            phase: Phase::Greedy,
            legal_word: true,
        });
        if let MoveStatus::Finished(outcome) = status {
            return Ok(Transcript {
                steps,
                outcome,
                clique_rounds: Vec::new(),
            });
        }
        state.observe(guess, &pattern)?;
    }
}
