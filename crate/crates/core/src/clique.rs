//! Clique-driven player for easy mode.
//!
//! Each round guesses a group of words that are pairwise disjoint in unseen
//! letters, which reveals many letters at once. Once every letter of the
//! answer is known, the letters are rotated until each one is placed.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::alphabet::LetterMask;
use crate::error::{Result, WordleError};
use crate::game::GameOutcome;
use crate::graph::{form_graph, Clique, Regime, WordGraph};
use crate::pattern::{get_pattern, Color, Pattern};
use crate::tracker::WordleTracker;
use crate::transcript::{CliqueRound, Phase, Step, Transcript};
use crate::vocab::{Spelling, Vocabulary, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliqueSolveConfig {
    pub alphabet_size: usize,
    pub word_length: usize,
    pub max_clique_size_start: usize,
    pub min_clique_size: usize,
    /// Restrict the anagram phase to vocabulary words.
    pub strict_vocab_anagrams: bool,
}

impl CliqueSolveConfig {
    pub fn for_vocab(vocab: &Vocabulary) -> Self {
        let a = vocab.alphabet().size();
        let l = vocab.word_length();
        CliqueSolveConfig {
            alphabet_size: a,
            word_length: l,
            max_clique_size_start: a / l,
            min_clique_size: 2,
            strict_vocab_anagrams: false,
        }
    }

    pub fn with_strict_vocab_anagrams(mut self, strict: bool) -> Self {
        self.strict_vocab_anagrams = strict;
        self
    }

    fn sizes(&self) -> impl Iterator<Item = usize> {
        let lo = self.min_clique_size.max(2);
        (lo..=self.max_clique_size_start).rev()
    }
}

/// Unseen letters covered by a set of words.
pub fn clique_coverage(vocab: &Vocabulary, members: &[usize], unseen: LetterMask) -> usize {
    members
        .iter()
        .fold(LetterMask::EMPTY, |m, &i| m.union(vocab.word(i).mask()))
        .intersection(unseen)
        .len()
}

/// The clique covering the most unseen letters; ties go to the
/// lexicographically smallest member list.
pub fn select_most_informative<'c>(cliques: &'c [Clique], vocab: &Vocabulary, unseen: LetterMask) -> Option<&'c Clique> {
    let mut best: Option<(&Clique, usize)> = None;
    for c in cliques {
        let cov = clique_coverage(vocab, &c.members, unseen);
        let better = match best {
            None => true,
            Some((b, bc)) => cov > bc || (cov == bc && c.members < b.members),
        };
        if better {
            best = Some((c, cov));
        }
    }
    best.map(|(c, _)| c)
}

/// Same answer as enumerating every k-clique and calling
/// [`select_most_informative`], without materializing them.
///
/// Depth-first in lexicographic order, replacing the incumbent only on a
/// strict improvement, so the first maximum found is the smallest tuple.
pub fn best_clique(graph: &WordGraph, vocab: &Vocabulary, unseen: LetterMask, k: usize) -> Option<Clique> {
    assert!(k >= 2, "clique size must be at least 2");
    let n = graph.vertex_count();
    let cover: Vec<u32> = (0..n).map(|i| vocab.word(i).mask().intersection(unseen).0).collect();
    let mut search = BestSearch {
        graph,
        cover: &cover,
        k,
        ceiling: (k * vocab.word_length()).min(unseen.len()) as u32,
        best: None,
        clique: Vec::with_capacity(k),
        done: false,
    };
    for (v, &covered) in cover.iter().enumerate().take(n) {
        if graph.adjacency(v).len() + 1 < k {
            continue;
        }
        let mut cand = graph.neighbor_set(v).clone();
        cand.set_range(..v + 1, false);
        search.clique.push(v);
        search.extend(&cand, covered);
        search.clique.pop();
        if search.done {
            break;
        }
    }
    search.best.map(|(_, members)| Clique { members })
}

struct BestSearch<'a> {
    graph: &'a WordGraph,
    cover: &'a [u32],
    k: usize,
    ceiling: u32,
    best: Option<(u32, Vec<usize>)>,
    clique: Vec<usize>,
    done: bool,
}

impl BestSearch<'_> {
    fn extend(&mut self, cand: &FixedBitSet, covered: u32) {
        if self.clique.len() == self.k {
            let c = covered.count_ones();
            if self.best.as_ref().is_none_or(|(b, _)| c > *b) {
                self.best = Some((c, self.clique.clone()));
                self.done = c >= self.ceiling;
            }
            return;
        }
        let need = self.k - self.clique.len();
        if cand.count_ones(..) < need {
            return;
        }
        if self.graph.regime() == Regime::Hard {
            let target = self.best.as_ref().map_or(0, |(b, _)| *b as i32 + 1) - covered.count_ones() as i32;
            let covers: Vec<u32> = cand.ones().map(|u| self.cover[u]).collect();
            if !disjoint_completion(&covers, need, target) {
                return;
            }
        } else if let Some((b, _)) = &self.best {
            let mut reach = covered;
            let mut widest = 0;
            for u in cand.ones() {
                reach |= self.cover[u];
                widest = widest.max(self.cover[u].count_ones());
            }
            let bound = reach.count_ones().min(covered.count_ones() + need as u32 * widest);
            if bound <= *b {
                return;
            }
        }
        for u in cand.ones() {
            let mut next = cand.clone();
            next.intersect_with(self.graph.neighbor_set(u));
            next.set_range(..u + 1, false);
            if need > 1 && next.count_ones(..) < need - 1 {
                continue;
            }
            self.clique.push(u);
            self.extend(&next, covered | self.cover[u]);
            self.clique.pop();
            if self.done {
                return;
            }
        }
    }
}

/// Whether `need` of the given masks, pairwise disjoint, can together
/// cover at least `target` letters. Zero masks are disjoint from everything.
///
/// Branches on the rarest reachable letter: either some chosen mask holds
/// it, or no chosen mask does.
fn disjoint_completion(masks: &[u32], need: usize, target: i32) -> bool {
    if need == 0 {
        return target <= 0;
    }
    if masks.len() < need {
        return false;
    }
    let zeros = masks.iter().filter(|&&m| m == 0).count();
    if target <= 0 && zeros >= need {
        return true;
    }
    let reach = masks.iter().fold(0, |a, &m| a | m);
    // at least need - zeros nonzero masks, each no smaller than the smallest
    let narrowest = masks.iter().filter(|&&m| m != 0).map(|m| m.count_ones()).min().unwrap_or(0);
    let floor = need.saturating_sub(zeros) as i32 * narrowest as i32;
    if (reach.count_ones() as i32) < target.max(floor) || reach == 0 {
        return false;
    }
    let low = rarest_letter(masks, reach);
    for &m in masks.iter().filter(|&&m| m & low != 0) {
        let rest: Vec<u32> = masks.iter().copied().filter(|&o| o & m == 0).collect();
        if disjoint_completion(&rest, need - 1, target - m.count_ones() as i32) {
            return true;
        }
    }
    let rest: Vec<u32> = masks.iter().copied().filter(|&o| o & low == 0).collect();
    disjoint_completion(&rest, need, target)
}

fn rarest_letter(masks: &[u32], reach: u32) -> u32 {
    let mut counts = [0u32; 32];
    for &m in masks {
        let mut bits = m;
        while bits != 0 {
            counts[bits.trailing_zeros() as usize] += 1;
            bits &= bits - 1;
        }
    }
    let mut best = reach & reach.wrapping_neg();
    let mut bits = reach;
    while bits != 0 {
        let b = bits.trailing_zeros();
        if counts[b as usize] < counts[best.trailing_zeros() as usize] {
            best = 1 << b;
        }
        bits &= bits - 1;
    }
    best
}

/// Largest clique size (from the configured start down to the minimum) for
/// which a clique exists, with the most informative clique of that size.
pub fn find_round_clique(graph: &WordGraph, tracker: &WordleTracker, cfg: &CliqueSolveConfig) -> Option<(usize, Clique)> {
    cfg.sizes()
        .find_map(|k| best_clique(graph, tracker.vocab(), tracker.unseen_chars(), k).map(|c| (k, c)))
}

/// Slot bookkeeping for the anagram phase.
///
/// Each known letter keeps the set of slots it may still occupy. Letters
/// whose slot was known on entry stay pinned; the rest are laid over the
/// free slots and rotated one step per guess, so after at most `u - 1`
/// rotations every letter is placed (`u` = number of free slots).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnagramPlan {
    letters: Vec<u8>,
    slots_of: Vec<u32>,
    rotating: Vec<usize>,
    free_slots: Vec<usize>,
    step: usize,
}

impl AnagramPlan {
    /// `history` holds every earlier guess with its feedback.
    pub fn new(found: LetterMask, length: usize, history: &[(Spelling, Pattern)]) -> Result<Self> {
        if found.len() != length {
            return Err(WordleError::Contract(format!(
                "anagram phase needs all {length} letters, {} known",
                found.len()
            )));
        }
        let letters: Vec<u8> = found.iter().collect();
        let mut plan = AnagramPlan {
            slots_of: vec![(1u32 << length) - 1; length],
            letters,
            rotating: Vec::new(),
            free_slots: Vec::new(),
            step: 0,
        };
        for (g, p) in history {
            plan.apply(g, p)?;
        }
        plan.rotating = (0..length).filter(|&i| plan.slots_of[i].count_ones() > 1).collect();
        let taken: u32 = (0..length)
            .filter(|&i| plan.slots_of[i].count_ones() == 1)
            .fold(0, |m, i| m | plan.slots_of[i]);
        plan.free_slots = (0..length).filter(|s| taken & (1 << s) == 0).collect();
        Ok(plan)
    }

    pub fn length(&self) -> usize {
        self.letters.len()
    }

    /// The answer, once every letter's slot is known.
    pub fn determined(&self) -> Option<Vec<u8>> {
        let mut word = vec![0; self.length()];
        for (i, &s) in self.slots_of.iter().enumerate() {
            if s.count_ones() != 1 {
                return None;
            }
            word[s.trailing_zeros() as usize] = self.letters[i];
        }
        Some(word)
    }

    fn arrangement(&self, r: usize) -> Vec<u8> {
        let mut word = vec![0; self.length()];
        for (i, &s) in self.slots_of.iter().enumerate() {
            if !self.rotating.contains(&i) {
                word[s.trailing_zeros() as usize] = self.letters[i];
            }
        }
        let u = self.free_slots.len();
        for (j, &i) in self.rotating.iter().enumerate() {
            word[self.free_slots[(j + r) % u]] = self.letters[i];
        }
        word
    }

    /// Whether rotation `r` tests some undecided letter at a slot it may
    /// still occupy.
    fn informative(&self, r: usize) -> bool {
        let u = self.free_slots.len();
        self.rotating.iter().enumerate().any(|(j, &i)| {
            let s = self.slots_of[i];
            s.count_ones() > 1 && s & (1 << self.free_slots[(j + r) % u]) != 0
        })
    }

    /// Next arrangement to guess: the answer if known, else the next
    /// rotation that can teach something.
    pub fn next_guess(&mut self) -> Result<Vec<u8>> {
        if let Some(w) = self.determined() {
            return Ok(w);
        }
        let u = self.free_slots.len();
        while self.step < u {
            if self.informative(self.step) {
                return Ok(self.arrangement(self.step));
            }
            self.step += 1;
        }
        Err(WordleError::Contract("anagram rotations exhausted".into()))
    }

    /// Folds in feedback for any guess, advancing the rotation when the
    /// guess was the current arrangement.
    pub fn observe(&mut self, guess: &Spelling, pattern: &Pattern) -> Result<()> {
        if self.step < self.free_slots.len() && guess.letters() == self.arrangement(self.step).as_slice() {
            self.step += 1;
        }
        self.apply(guess, pattern)
    }

    fn apply(&mut self, guess: &Spelling, pattern: &Pattern) -> Result<()> {
        for (pos, (&letter, &color)) in guess.letters().iter().zip(pattern.colors()).enumerate() {
            let Some(i) = self.letters.iter().position(|&l| l == letter) else {
                continue;
            };
            if color == Color::Green {
                self.slots_of[i] &= 1 << pos;
                for (j, s) in self.slots_of.iter_mut().enumerate() {
                    if j != i {
                        *s &= !(1 << pos);
                    }
                }
            } else {
                self.slots_of[i] &= !(1 << pos);
            }
        }
        self.propagate()
    }

    fn propagate(&mut self) -> Result<()> {
        let n = self.length();
        loop {
            let mut changed = false;
            for i in 0..n {
                let s = self.slots_of[i];
                if s == 0 {
                    return Err(WordleError::Contract("feedback leaves a letter with no position".into()));
                }
                if s.count_ones() == 1 {
                    for j in (0..n).filter(|&j| j != i) {
                        if self.slots_of[j] & s != 0 {
                            self.slots_of[j] &= !s;
                            changed = true;
                        }
                    }
                }
            }
            for slot in 0..n {
                let bit = 1u32 << slot;
                let holders: Vec<usize> = (0..n).filter(|&i| self.slots_of[i] & bit != 0).collect();
                match holders.as_slice() {
                    [] => return Err(WordleError::Contract(format!("no letter can sit at position {slot}"))),
                    [i] if self.slots_of[*i] != bit => {
                        self.slots_of[*i] = bit;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }
}

/// First non-discarded, not yet guessed word.
fn next_remaining(tracker: &WordleTracker) -> Option<usize> {
    let guessed = tracker.words_guessed();
    tracker.remaining().find(|i| !guessed.contains(i))
}

/// Next vocabulary anagram of the known letters at or after `cursor`.
fn next_vocab_anagram(tracker: &WordleTracker, cursor: usize) -> Option<usize> {
    let found = tracker.letters_found();
    let guessed = tracker.words_guessed();
    (cursor..tracker.vocab().len()).find(|&i| {
        !tracker.is_discarded(i) && tracker.vocab().word(i).mask() == found && !guessed.contains(&i)
    })
}

/// One clique game against a known hidden word.
#[derive(Debug, Clone)]
pub struct CliqueGame {
    tracker: WordleTracker,
    hidden: Spelling,
    cfg: CliqueSolveConfig,
    history: Vec<(Spelling, Pattern)>,
    steps: Vec<Step>,
    rounds: Vec<CliqueRound>,
}

impl CliqueGame {
    pub fn new(vocab: &Vocabulary, hidden: &Word, cfg: CliqueSolveConfig) -> Result<Self> {
        if vocab.get(hidden.text()).map(Word::index) != Some(hidden.index()) {
            return Err(WordleError::UnknownWord(hidden.text().to_owned()));
        }
        Ok(CliqueGame {
            tracker: WordleTracker::new(vocab.clone()),
            hidden: hidden.spelling().clone(),
            cfg,
            history: Vec::new(),
            steps: Vec::new(),
            rounds: Vec::new(),
        })
    }

    pub fn tracker(&self) -> &WordleTracker {
        &self.tracker
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn rounds(&self) -> &[CliqueRound] {
        &self.rounds
    }

    pub fn is_solved(&self) -> bool {
        self.steps.last().is_some_and(|s| s.pattern.is_solved())
    }

    /// Plays one guess and refreshes the tracker. Returns true on a hit.
    pub fn guess(&mut self, guess: Spelling, phase: Phase) -> Result<bool> {
        let pattern = get_pattern(&guess, &self.hidden)?;
        self.tracker.record_guess(&guess, &pattern)?;
        let legal_word = self.tracker.vocab().index_of(guess.text()).is_some();
        self.steps.push(Step {
            guess: guess.text().to_owned(),
            pattern: pattern.clone(),
            phase,
            legal_word,
        });
        self.history.push((guess, pattern));
        Ok(self.is_solved())
    }

    fn guess_index(&mut self, index: usize, phase: Phase) -> Result<bool> {
        let spelling = self.tracker.vocab().word(index).spelling().clone();
        self.guess(spelling, phase)
    }

    /// Guesses every member of the most informative clique, in index order,
    /// stopping early on a hit.
    pub fn process_cliques(&mut self, cliques: &[Clique]) -> Result<()> {
        let vocab = self.tracker.vocab().clone();
        let Some(best) = select_most_informative(cliques, &vocab, self.tracker.unseen_chars()) else {
            return Err(WordleError::Contract("no clique to process".into()));
        };
        for &m in &best.members.clone() {
            if self.guess_index(m, Phase::Clique)? {
                break;
            }
        }
        Ok(())
    }

    /// Places the known letters. Requires every letter of the answer.
    pub fn check_all_anagrams(&mut self) -> Result<()> {
        if self.is_solved() {
            return Ok(());
        }
        if self.cfg.strict_vocab_anagrams {
            let mut cursor = 0;
            while !self.is_solved() {
                let i = next_vocab_anagram(&self.tracker, cursor)
                    .ok_or_else(|| WordleError::Contract("no vocabulary anagram left".into()))?;
                cursor = i + 1;
                self.guess_index(i, Phase::Anagram)?;
            }
            return Ok(());
        }
        let alphabet = self.tracker.vocab().alphabet().clone();
        let mut plan = AnagramPlan::new(self.tracker.letters_found(), self.cfg.word_length, &self.history)?;
        while !self.is_solved() {
            let spelling = Spelling::from_letters(&plan.next_guess()?, &alphabet)?;
            self.guess(spelling.clone(), Phase::Anagram)?;
            let pattern = self.history.last().expect("just guessed").1.clone();
            plan.observe(&spelling, &pattern)?;
        }
        Ok(())
    }

    /// Guesses non-discarded words in index order until all letters are
    /// known, then hands over to the anagram phase.
    pub fn guess_remaining_words(&mut self) -> Result<()> {
        while !self.is_solved() {
            if self.tracker.all_letters_found() {
                return self.check_all_anagrams();
            }
            let i = next_remaining(&self.tracker)
                .ok_or_else(|| WordleError::Contract("no remaining word to guess".into()))?;
            self.guess_index(i, Phase::Remaining)?;
        }
        Ok(())
    }

    pub fn into_transcript(self) -> Transcript {
        let outcome = if self.is_solved() {
            GameOutcome::solved(self.steps.len())
        } else {
            GameOutcome::unsolved()
        };
        Transcript {
            steps: self.steps,
            outcome,
            clique_rounds: self.rounds,
        }
    }
}

/// The first clique round, which depends only on the vocabulary. Computing
/// it once and passing it to every game skips the most expensive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueOpening {
    fingerprint: u64,
    cfg: CliqueSolveConfig,
    round: Option<CliqueRound>,
}

impl CliqueOpening {
    pub fn compute(vocab: &Vocabulary, cfg: &CliqueSolveConfig) -> Self {
        let tracker = WordleTracker::new(vocab.clone());
        CliqueOpening {
            fingerprint: vocab.fingerprint(),
            cfg: *cfg,
            round: search_round(&tracker, cfg),
        }
    }

    pub fn round(&self) -> Option<&CliqueRound> {
        self.round.as_ref()
    }

    fn applies_to(&self, vocab: &Vocabulary, cfg: &CliqueSolveConfig) -> bool {
        self.fingerprint == vocab.fingerprint() && self.cfg == *cfg
    }
}

/// Graph plus clique search for one round; `None` ends the clique loop.
fn search_round(tracker: &WordleTracker, cfg: &CliqueSolveConfig) -> Option<CliqueRound> {
    let graph = form_graph(tracker);
    if !graph.edge_exists() {
        return None;
    }
    let (k, clique) = find_round_clique(&graph, tracker, cfg)?;
    Some(CliqueRound {
        k,
        regime: graph.regime(),
        members: clique.members,
    })
}

/// Plays the clique strategy against `hidden` with unbounded tries.
pub fn solve_clique(vocab: &Vocabulary, hidden: &Word, cfg: &CliqueSolveConfig) -> Result<Transcript> {
    solve_clique_with(vocab, hidden, cfg, None)
}

/// [`solve_clique`] reusing a precomputed opening when it matches.
pub fn solve_clique_with(
    vocab: &Vocabulary,
    hidden: &Word,
    cfg: &CliqueSolveConfig,
    opening: Option<&CliqueOpening>,
) -> Result<Transcript> {
    let mut game = CliqueGame::new(vocab, hidden, *cfg)?;
    let mut opening = opening.filter(|o| o.applies_to(vocab, cfg));
    while !game.tracker.all_letters_found() && !game.is_solved() {
        let round = match opening.take() {
            Some(o) => o.round.clone(),
            None => search_round(&game.tracker, cfg),
        };
        let Some(round) = round else {
            break;
        };
        let clique = Clique {
            members: round.members.clone(),
        };
        game.rounds.push(round);
        game.process_cliques(std::slice::from_ref(&clique))?;
    }
    if game.tracker.all_letters_found() {
        game.check_all_anagrams()?;
    } else {
        game.guess_remaining_words()?;
    }
    Ok(game.into_transcript())
}

/// A suggested next guess.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Suggestion {
    pub spelling: Spelling,
    pub phase: Phase,
    pub legal_word: bool,
}

#[derive(Debug, Clone)]
enum AdvisorMode {
    Searching,
    Remaining,
    Anagram(AnagramPlan),
    StrictAnagram { cursor: usize },
}

/// The clique strategy driven one observation at a time, for callers that
/// do not know the hidden word. Fed the true feedback for its own
/// suggestions, it reproduces [`solve_clique`] guess for guess.
#[derive(Debug, Clone)]
pub struct CliqueAdvisor {
    tracker: WordleTracker,
    cfg: CliqueSolveConfig,
    queue: VecDeque<usize>,
    mode: AdvisorMode,
    history: Vec<(Spelling, Pattern)>,
    rounds: Vec<CliqueRound>,
    opening: Option<Option<CliqueRound>>,
    solved: bool,
}

impl CliqueAdvisor {
    pub fn new(vocab: Vocabulary, cfg: CliqueSolveConfig) -> Self {
        CliqueAdvisor {
            tracker: WordleTracker::new(vocab),
            cfg,
            queue: VecDeque::new(),
            mode: AdvisorMode::Searching,
            history: Vec::new(),
            rounds: Vec::new(),
            opening: None,
            solved: false,
        }
    }

    /// Starts from a precomputed opening when it matches this vocabulary.
    pub fn with_opening(vocab: Vocabulary, cfg: CliqueSolveConfig, opening: &CliqueOpening) -> Self {
        let mut advisor = Self::new(vocab, cfg);
        if opening.applies_to(advisor.tracker.vocab(), &cfg) {
            advisor.opening = Some(opening.round.clone());
        }
        advisor
    }

    pub fn tracker(&self) -> &WordleTracker {
        &self.tracker
    }

    pub fn rounds(&self) -> &[CliqueRound] {
        &self.rounds
    }

    pub fn is_solved(&self) -> bool {
        self.solved
    }

    /// The guess the strategy would play next, or `None` once solved.
    /// May run a clique search, so callers should keep the result until
    /// the next observation.
    pub fn suggest(&mut self) -> Result<Option<Suggestion>> {
        if self.solved {
            return Ok(None);
        }
        loop {
            match &mut self.mode {
                AdvisorMode::Searching => {
                    if let Some(&i) = self.queue.front() {
                        return Ok(Some(self.vocab_suggestion(i, Phase::Clique)));
                    }
                    if self.tracker.all_letters_found() {
                        self.enter_anagram()?;
                        continue;
                    }
                    let round = match self.opening.take() {
                        Some(o) if self.history.is_empty() => o,
                        _ => search_round(&self.tracker, &self.cfg),
                    };
                    match round {
                        Some(round) => {
                            self.queue.extend(round.members.iter().copied());
                            self.rounds.push(round);
                        }
                        None => self.mode = AdvisorMode::Remaining,
                    }
                }
                AdvisorMode::Remaining => {
                    if self.tracker.all_letters_found() {
                        self.enter_anagram()?;
                        continue;
                    }
                    let i = next_remaining(&self.tracker)
                        .ok_or_else(|| WordleError::Contract("no remaining word to guess".into()))?;
                    return Ok(Some(self.vocab_suggestion(i, Phase::Remaining)));
                }
                AdvisorMode::StrictAnagram { cursor } => {
                    let i = next_vocab_anagram(&self.tracker, *cursor)
                        .ok_or_else(|| WordleError::Contract("no vocabulary anagram left".into()))?;
                    return Ok(Some(self.vocab_suggestion(i, Phase::Anagram)));
                }
                AdvisorMode::Anagram(plan) => {
                    let letters = plan.next_guess()?;
                    let spelling = Spelling::from_letters(&letters, self.tracker.vocab().alphabet())?;
                    let legal_word = self.tracker.vocab().index_of(spelling.text()).is_some();
                    return Ok(Some(Suggestion {
                        spelling,
                        phase: Phase::Anagram,
                        legal_word,
                    }));
                }
            }
        }
    }

    fn vocab_suggestion(&self, index: usize, phase: Phase) -> Suggestion {
        Suggestion {
            spelling: self.tracker.vocab().word(index).spelling().clone(),
            phase,
            legal_word: true,
        }
    }

    fn enter_anagram(&mut self) -> Result<()> {
        self.mode = if self.cfg.strict_vocab_anagrams {
            AdvisorMode::StrictAnagram { cursor: 0 }
        } else {
            AdvisorMode::Anagram(AnagramPlan::new(
                self.tracker.letters_found(),
                self.cfg.word_length,
                &self.history,
            )?)
        };
        Ok(())
    }

    /// Records feedback for a guess, which need not be the suggestion.
    pub fn observe(&mut self, guess: &Spelling, pattern: &Pattern) -> Result<()> {
        self.tracker.record_guess(guess, pattern)?;
        let index = self.tracker.vocab().index_of(guess.text());
        match &mut self.mode {
            AdvisorMode::Searching => {
                if index.is_some() && self.queue.front().copied() == index {
                    self.queue.pop_front();
                }
            }
            AdvisorMode::Remaining => {}
            AdvisorMode::StrictAnagram { cursor } => {
                if let Some(i) = index {
                    *cursor = (*cursor).max(i + 1);
                }
            }
            AdvisorMode::Anagram(plan) => plan.observe(guess, pattern)?,
        }
        self.history.push((guess.clone(), pattern.clone()));
        self.solved = pattern.is_solved();
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::AlphabetConfig;
    use crate::graph::{find_k_cliques, Regime};
    use crate::vocab::{load_vocabulary, permutation_vocabulary};

    fn vocab(words: &str, l: usize) -> Vocabulary {
        load_vocabulary(words.replace(' ', "\n").as_bytes(), l, AlphabetConfig::default()).unwrap()
    }

    fn guesses(t: &Transcript) -> Vec<&str> {
        t.guesses().collect()
    }

    #[test]
    fn single_clique_is_chosen() {
        let v = vocab("abc def", 3);
        let c = vec![Clique { members: vec![0, 1] }];
        let full = v.alphabet().full_mask();
        assert_eq!(select_most_informative(&c, &v, full), Some(&c[0]));
    }

    #[test]
    fn wider_cover_wins() {
        let v = vocab("abc def ghi jkl", 3);
        let unseen: LetterMask = "abcdefghjk".bytes().map(|b| b - b'a').collect();
        let cliques = vec![
            Clique { members: vec![0, 1] },
            Clique { members: vec![2, 3] },
        ];
        // first covers 6 unseen letters, second only g,h,j,k
        let best = select_most_informative(&cliques, &v, unseen).unwrap();
        assert_eq!(best.members, vec![0, 1]);
    }

    #[test]
    fn best_clique_matches_enumeration() {
        let v = vocab("abc abd def deg ghi xyz uvw", 3);
        let t = WordleTracker::new(v.clone());
        let g = crate::graph::form_graph_helper(&t, Regime::Hard);
        for k in 2..=5 {
            let all = find_k_cliques(&g, k);
            let expect = select_most_informative(&all, &v, t.unseen_chars()).cloned();
            assert_eq!(best_clique(&g, &v, t.unseen_chars(), k), expect, "k={k}");
        }
    }

    #[test]
    fn hit_inside_a_clique_stops_the_game() {
        let v = vocab("abc def ghi abd aeg", 3);
        let hidden = v.get("def").unwrap();
        let t = solve_clique(&v, hidden, &CliqueSolveConfig::for_vocab(&v)).unwrap();
        assert_eq!(guesses(&t), vec!["abc", "def"]);
        assert_eq!(t.outcome, GameOutcome::solved(2));
    }

    #[test]
    fn no_disjoint_pair_goes_straight_to_remaining() {
        let v = vocab("abc abd abe", 3);
        let hidden = v.get("abe").unwrap();
        let t = solve_clique(&v, hidden, &CliqueSolveConfig::for_vocab(&v)).unwrap();
        assert!(t.clique_rounds.is_empty());
        // abc leaves a,b found and c grey; abd is still consistent
        assert_eq!(guesses(&t), vec!["abc", "abd", "abe"]);
        assert_eq!(t.steps[0].phase, Phase::Remaining);
    }

    // abc: a green, b and c grey, so abd goes too; aef solves.
    #[test]
    fn remaining_words_trace() {
        let v = vocab("abc abd aef", 3);
        let hidden = v.get("aef").unwrap();
        let mut g = CliqueGame::new(&v, hidden, CliqueSolveConfig::for_vocab(&v)).unwrap();
        g.guess_remaining_words().unwrap();
        let t = g.into_transcript();
        assert_eq!(guesses(&t), vec!["abc", "aef"]);
    }

    #[test]
    fn remaining_hands_over_to_anagrams() {
        let v = vocab("abc acb bca xyz", 3);
        let hidden = v.get("bca").unwrap();
        let mut g = CliqueGame::new(&v, hidden, CliqueSolveConfig::for_vocab(&v)).unwrap();
        g.guess_remaining_words().unwrap();
        let t = g.into_transcript();
        assert_eq!(t.steps[0].guess, "abc");
        assert!(t.steps[1..].iter().all(|s| s.phase == Phase::Anagram));
        assert_eq!(t.steps.last().unwrap().guess, "bca");
        assert!(t.len() <= 4);
    }

    #[test]
    fn rotation_finds_cab_on_second_guess() {
        let v = vocab("abc cab xyz", 3);
        let hidden = v.get("cab").unwrap();
        let mut g = CliqueGame::new(&v, hidden, CliqueSolveConfig::for_vocab(&v)).unwrap();
        g.guess(v.spell("abc").unwrap(), Phase::Clique).unwrap();
        g.check_all_anagrams().unwrap();
        assert_eq!(guesses(&g.into_transcript()), vec!["abc", "cab"]);
    }

    #[test]
    fn anagram_phase_returns_at_once_when_solved() {
        let v = vocab("abc cab", 3);
        let hidden = v.get("abc").unwrap();
        let mut g = CliqueGame::new(&v, hidden, CliqueSolveConfig::for_vocab(&v)).unwrap();
        g.guess(v.spell("abc").unwrap(), Phase::Clique).unwrap();
        g.check_all_anagrams().unwrap();
        assert_eq!(g.steps().len(), 1);
    }

    #[test]
    fn anagram_phase_needs_all_letters() {
        let v = vocab("abc xyz", 3);
        let hidden = v.get("abc").unwrap();
        let mut g = CliqueGame::new(&v, hidden, CliqueSolveConfig::for_vocab(&v)).unwrap();
        assert!(g.check_all_anagrams().is_err());
    }

    #[test]
    fn every_permutation_of_four_within_four_extra() {
        let v = permutation_vocabulary(AlphabetConfig::new("abcd").unwrap(), 4).unwrap();
        let cfg = CliqueSolveConfig::for_vocab(&v);
        for hidden in v.words() {
            let mut g = CliqueGame::new(&v, hidden, cfg).unwrap();
            g.guess(v.spell("abcd").unwrap(), Phase::Remaining).unwrap();
            let before = g.steps().len();
            g.check_all_anagrams().unwrap();
            assert!(g.is_solved());
            assert!(g.steps().len() - before <= 4, "{}", hidden.text());
        }
    }

    #[test]
    fn strict_anagrams_only_play_words() {
        let v = vocab("abc acb bac bca cab cba", 3);
        let cfg = CliqueSolveConfig::for_vocab(&v).with_strict_vocab_anagrams(true);
        for hidden in v.words() {
            let t = solve_clique(&v, hidden, &cfg).unwrap();
            assert!(t.steps.iter().all(|s| s.legal_word));
            assert_eq!(t.steps.last().unwrap().guess, hidden.text());
        }
    }

    #[test]
    fn plan_rejects_contradictions() {
        let found: LetterMask = [0u8, 1, 2].into_iter().collect();
        let mut plan = AnagramPlan::new(found, 3, &[]).unwrap();
        let abc = Spelling::parse("abc", &AlphabetConfig::default()).unwrap();
        plan.observe(&abc, &"GYY".parse().unwrap()).unwrap();
        assert!(plan.observe(&abc, &"YYY".parse().unwrap()).is_err());
    }

    #[test]
    fn advisor_replays_offline_games() {
        let v = vocab("abc def ghi abd aeg bdf cab bca fed hig xyz", 3);
        for strict in [false, true] {
            let cfg = CliqueSolveConfig::for_vocab(&v).with_strict_vocab_anagrams(strict);
            for hidden in v.words() {
                let t = solve_clique(&v, hidden, &cfg).unwrap();
                let mut a = CliqueAdvisor::new(v.clone(), cfg);
                let mut played = Vec::new();
                while let Some(s) = a.suggest().unwrap() {
                    let p = get_pattern(&s.spelling, hidden).unwrap();
                    played.push((s.spelling.text().to_owned(), s.phase));
                    a.observe(&s.spelling, &p).unwrap();
                }
                let offline: Vec<_> = t.steps.iter().map(|s| (s.guess.clone(), s.phase)).collect();
                assert_eq!(played, offline, "{} strict={strict}", hidden.text());
                assert_eq!(a.rounds(), t.clique_rounds.as_slice());
            }
        }
    }
}
