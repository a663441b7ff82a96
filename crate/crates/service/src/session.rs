//! One assistant session: a board, a solver state and the current
//! suggestion. Everything here is synchronous; the HTTP layer wraps it.

use std::collections::VecDeque;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use wordle_core::clique::{CliqueAdvisor, CliqueOpening, CliqueSolveConfig};
use wordle_core::experiments::Algorithm;
use wordle_core::game::{validate_move, Board, BoardRow, GameConfig, Mode, MoveRejection};
use wordle_core::greedy::{choose_guess, FirstGuessCache, GreedyState};
use wordle_core::tracker::TrackerState;
use wordle_core::{get_pattern, Pattern, Phase, Spelling, Vocabulary, WordleError};

/// States kept for undo.
pub const UNDO_DEPTH: usize = 10;

#[derive(Debug, thiserror::Error)]
pub enum SessionError {
    #[error("{0}")]
    Invalid(String),
    #[error("move rejected: {0:?}")]
    Rejected(MoveRejection),
    #[error("feedback contradicts earlier feedback: {0}")]
    Contradiction(String),
    #[error("nothing to undo")]
    NothingToUndo,
    #[error("session already solved")]
    Solved,
}

impl From<WordleError> for SessionError {
    fn from(e: WordleError) -> Self {
        SessionError::Invalid(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuggestionView {
    pub word: String,
    pub phase: Phase,
    pub legal_word: bool,
}

#[derive(Debug, Clone)]
enum Engine {
    Greedy(GreedyState),
    Clique(Box<CliqueAdvisor>),
}

#[derive(Debug, Clone)]
struct State {
    engine: Engine,
    board: Board,
    suggestion: Option<SuggestionView>,
    solved: bool,
}

/// Shared, read-mostly inputs for building suggestions.
pub struct Precomputed<'a> {
    pub first_guesses: &'a mut FirstGuessCache,
    pub opening: Option<&'a CliqueOpening>,
}

#[derive(Debug, Clone)]
pub struct Session {
    pub id: String,
    pub vocab_id: String,
    pub algorithm: Algorithm,
    pub config: GameConfig,
    pub strict_vocab_anagrams: bool,
    vocab: Vocabulary,
    state: State,
    undo: VecDeque<State>,
    pub created_at: u64,
    pub updated_at: u64,
}

fn now_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

impl Session {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        id: String,
        vocab_id: String,
        vocab: Vocabulary,
        algorithm: Algorithm,
        config: GameConfig,
        strict_vocab_anagrams: bool,
        pre: Precomputed<'_>,
    ) -> Result<Self, SessionError> {
        if algorithm == Algorithm::Clique && config.mode == Mode::Hard {
            return Err(SessionError::Invalid("the clique strategy only plays easy mode".into()));
        }
        let engine = match algorithm {
            Algorithm::Greedy => Engine::Greedy(GreedyState::new(vocab.clone(), config.mode)),
            Algorithm::Clique => {
                let cfg = CliqueSolveConfig::for_vocab(&vocab).with_strict_vocab_anagrams(strict_vocab_anagrams);
                Engine::Clique(Box::new(match pre.opening {
                    Some(o) => CliqueAdvisor::with_opening(vocab.clone(), cfg, o),
                    None => CliqueAdvisor::new(vocab.clone(), cfg),
                }))
            }
        };
        let mut state = State {
            engine,
            board: Board::new(config.max_tries),
            suggestion: None,
            solved: false,
        };
        state.suggestion = suggest(&vocab, &mut state, Some(pre.first_guesses))?;
        let t = now_ms();
        Ok(Session {
            id,
            vocab_id,
            algorithm,
            config,
            strict_vocab_anagrams,
            vocab,
            state,
            undo: VecDeque::new(),
            created_at: t,
            updated_at: t,
        })
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn suggestion(&self) -> Option<&SuggestionView> {
        self.state.suggestion.as_ref()
    }

    pub fn board(&self) -> &Board {
        &self.state.board
    }

    pub fn is_solved(&self) -> bool {
        self.state.solved
    }

    pub fn can_undo(&self) -> bool {
        !self.undo.is_empty()
    }

    pub fn remaining_count(&self) -> usize {
        if self.state.solved {
            return 1;
        }
        match &self.state.engine {
            Engine::Greedy(g) => g.active().len(),
            Engine::Clique(a) => a.tracker().remaining_count(),
        }
    }

    pub fn tracker_state(&self) -> Option<TrackerState> {
        match &self.state.engine {
            Engine::Greedy(_) => None,
            Engine::Clique(a) => Some(a.tracker().to_state()),
        }
    }

    /// Applies observed colors for `guess`. On any error the session is
    /// left exactly as it was.
    pub fn apply_feedback(&mut self, guess: &str, pattern: &str) -> Result<(), SessionError> {
        if self.state.solved {
            return Err(SessionError::Solved);
        }
        let pattern: Pattern = pattern.parse().map_err(|e: WordleError| SessionError::Invalid(e.to_string()))?;
        let spelling = self.vocab.spell(guess)?;
        if pattern.len() != spelling.len() {
            return Err(SessionError::Invalid(format!(
                "pattern has {} colors for a {}-letter guess",
                pattern.len(),
                spelling.len()
            )));
        }
        let is_suggestion = self.state.suggestion.as_ref().is_some_and(|s| s.word == spelling.text());
        if !is_suggestion {
            validate_move(&self.state.board, spelling.text(), &self.config, &self.vocab)
                .map_err(SessionError::Rejected)?;
        } else if self.state.board.is_full() {
            return Err(SessionError::Rejected(MoveRejection::BoardFull));
        }

        let mut next = self.state.clone();
        next.board.rows.push(BoardRow {
            guess: spelling.text().to_owned(),
            pattern: pattern.clone(),
        });
        next.solved = pattern.is_solved();
        observe(&mut next, &spelling, &pattern)?;
        next.suggestion = if next.solved || next.board.is_full() {
            None
        } else {
            suggest(&self.vocab, &mut next, None)?
        };

        self.undo.push_back(std::mem::replace(&mut self.state, next));
        if self.undo.len() > UNDO_DEPTH {
            self.undo.pop_front();
        }
        self.updated_at = now_ms();
        Ok(())
    }

    pub fn undo(&mut self) -> Result<(), SessionError> {
        let prev = self.undo.pop_back().ok_or(SessionError::NothingToUndo)?;
        self.state = prev;
        self.updated_at = now_ms();
        Ok(())
    }
}

fn observe(state: &mut State, guess: &Spelling, pattern: &Pattern) -> Result<(), SessionError> {
    match &mut state.engine {
        Engine::Greedy(g) => {
            g.observe(guess, pattern).map_err(|e| match e {
                WordleError::EmptyActiveSet => {
                    SessionError::Contradiction("no vocabulary word matches all the colors so far".into())
                }
                other => other.into(),
            })?;
        }
        Engine::Clique(a) => {
            a.observe(guess, pattern)
                .map_err(|e| SessionError::Contradiction(e.to_string()))?;
            if let Some(why) = a.tracker().contradiction().filter(|_| !state.solved) {
                return Err(SessionError::Contradiction(why));
            }
            // The tracker ignores where yellows sat, so check the board itself.
            let vocab = a.tracker().vocab();
            let fits = |w: &Spelling| {
                state.board.rows.iter().all(|r| {
                    vocab
                        .spell(&r.guess)
                        .and_then(|g| get_pattern(&g, w))
                        .is_ok_and(|p| p == r.pattern)
                })
            };
            let ok = if state.solved {
                fits(guess)
            } else {
                vocab.words().iter().any(|w| fits(w.spelling()))
            };
            if !ok {
                return Err(SessionError::Contradiction(
                    "no word matches all the colors so far".into(),
                ));
            }
        }
    }
    Ok(())
}

fn suggest(
    vocab: &Vocabulary,
    state: &mut State,
    first_guesses: Option<&mut FirstGuessCache>,
) -> Result<Option<SuggestionView>, SessionError> {
    match &mut state.engine {
        Engine::Greedy(g) => {
            let index = match first_guesses {
                Some(cache) if g.active().len() == vocab.len() => cache.warm_first_guess(vocab, g.mode()),
                _ => choose_guess(g)?.guess_index,
            };
            Ok(Some(SuggestionView {
                word: vocab.word(index).text().to_owned(),
                phase: Phase::Greedy,
                legal_word: true,
            }))
        }
        Engine::Clique(a) => {
            let s = a.suggest().map_err(|e| SessionError::Contradiction(e.to_string()))?;
            Ok(s.map(|s| SuggestionView {
                word: s.spelling.text().to_owned(),
                phase: s.phase,
                legal_word: s.legal_word,
            }))
        }
    }
}
