//! The game engine: boards, move validation, move play and pruning.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabet::AlphabetConfig;
use crate::error::{Result, WordleError};
use crate::pattern::{pattern_code, Color, Pattern};
use crate::vocab::{Spelling, Vocabulary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Easy,
    Hard,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Easy => "easy",
            Mode::Hard => "hard",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "easy" => Ok(Mode::Easy),
            "hard" => Ok(Mode::Hard),
            other => Err(format!("unknown mode {other:?} (expected easy or hard)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameConfig {
    pub word_length: usize,
    /// `None` means unbounded.
    pub max_tries: Option<usize>,
    pub mode: Mode,
    pub alphabet: AlphabetConfig,
}

impl GameConfig {
    pub fn new(word_length: usize, max_tries: Option<usize>, mode: Mode, alphabet: AlphabetConfig) -> Result<Self> {
        if word_length == 0 {
            return Err(WordleError::Contract("word length must be at least 1".into()));
        }
        if max_tries == Some(0) {
            return Err(WordleError::Contract("max tries must be at least 1".into()));
        }
        Ok(GameConfig {
            word_length,
            max_tries,
            mode,
            alphabet,
        })
    }

    /// Unbounded easy-mode config matching a vocabulary.
    pub fn for_vocab(vocab: &Vocabulary) -> Self {
        GameConfig {
            word_length: vocab.word_length(),
            max_tries: None,
            mode: Mode::Easy,
            alphabet: vocab.alphabet().clone(),
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_max_tries(mut self, max_tries: Option<usize>) -> Self {
        self.max_tries = max_tries;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoardRow {
    pub guess: String,
    pub pattern: Pattern,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Board {
    pub rows: Vec<BoardRow>,
    pub max_rows: Option<usize>,
}

impl Board {
    pub fn new(max_rows: Option<usize>) -> Self {
        Board {
            rows: Vec::new(),
            max_rows,
        }
    }

    pub fn is_full(&self) -> bool {
        self.max_rows.is_some_and(|m| self.rows.len() >= m)
    }

    pub fn is_solved(&self) -> bool {
        self.rows.last().is_some_and(|r| r.pattern.is_solved())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// `(is_solved, num_moves)`, with `num_moves == -1` for a lost game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameOutcome {
    pub is_solved: bool,
    pub num_moves: i32,
}

impl GameOutcome {
    pub fn solved(moves: usize) -> Self {
        GameOutcome {
            is_solved: true,
            num_moves: moves as i32,
        }
    }

    pub fn unsolved() -> Self {
        GameOutcome {
            is_solved: false,
            num_moves: -1,
        }
    }

    pub fn moves(&self) -> Option<usize> {
        self.is_solved.then_some(self.num_moves as usize)
    }
}

/// Why a candidate guess was refused.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum MoveRejection {
    #[error("not in vocabulary")]
    NotInVocabulary,
    #[error("green letter at position {position} must be reused")]
    GreenViolated { position: usize },
    #[error("yellow letter {letter:?} must be reused")]
    YellowMissing { letter: char },
    #[error("board is full")]
    BoardFull,
}

/// Checks a candidate against the board. Easy mode only needs a vocabulary
/// word; hard mode also needs every green from any earlier row in place and
/// every earlier yellow letter somewhere in the candidate.
pub fn validate_move(
    board: &Board,
    candidate: &str,
    config: &GameConfig,
    vocab: &Vocabulary,
) -> std::result::Result<(), MoveRejection> {
    if board.is_full() || config.max_tries.is_some_and(|m| board.rows.len() >= m) {
        return Err(MoveRejection::BoardFull);
    }
    let word = vocab.get(candidate).ok_or(MoveRejection::NotInVocabulary)?;
    if config.mode == Mode::Hard {
        check_hard_constraints(board, word.text())?;
    }
    Ok(())
}

fn check_hard_constraints(board: &Board, candidate: &str) -> std::result::Result<(), MoveRejection> {
    let cand = candidate.as_bytes();
    for row in &board.rows {
        let guess = row.guess.as_bytes();
        for (position, (&letter, color)) in guess.iter().zip(row.pattern.colors()).enumerate() {
            match color {
                Color::Green if cand.get(position) != Some(&letter) => {
                    return Err(MoveRejection::GreenViolated { position });
                }
                Color::Yellow if !cand.contains(&letter) => {
                    return Err(MoveRejection::YellowMissing {
                        letter: letter as char,
                    });
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// Whether the game is still running after a move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveStatus {
    InProgress,
    Finished(GameOutcome),
}

/// Validates and plays `candidate`, appending its row to the board.
pub fn play_move(
    board: &mut Board,
    candidate: &str,
    hidden: &impl AsRef<Spelling>,
    config: &GameConfig,
    vocab: &Vocabulary,
) -> Result<(Pattern, MoveStatus)> {
    validate_move(board, candidate, config, vocab)?;
    let guess = vocab.spell(candidate)?;
    Ok(record_move(board, &guess, hidden.as_ref(), config))
}

/// Plays any distinct-letter arrangement of the right length, bypassing the
/// vocabulary and hard-mode checks. Used by the anagram phase.
pub fn play_free_move(
    board: &mut Board,
    guess: &Spelling,
    hidden: &impl AsRef<Spelling>,
    config: &GameConfig,
) -> Result<(Pattern, MoveStatus)> {
    if board.is_full() || config.max_tries.is_some_and(|m| board.rows.len() >= m) {
        return Err(MoveRejection::BoardFull.into());
    }
    let hidden = hidden.as_ref();
    if guess.len() != hidden.len() {
        return Err(WordleError::LengthMismatch {
            expected: hidden.len(),
            actual: guess.len(),
        });
    }
    Ok(record_move(board, guess, hidden, config))
}

fn record_move(board: &mut Board, guess: &Spelling, hidden: &Spelling, config: &GameConfig) -> (Pattern, MoveStatus) {
    let pattern = Pattern::from_code(pattern_code(guess, hidden), guess.len()).expect("code in range");
    board.rows.push(BoardRow {
        guess: guess.text().to_owned(),
        pattern: pattern.clone(),
    });
    let status = if pattern.is_solved() {
        MoveStatus::Finished(GameOutcome::solved(board.rows.len()))
    } else if config.max_tries.is_some_and(|m| board.rows.len() >= m) {
        MoveStatus::Finished(GameOutcome::unsolved())
    } else {
        MoveStatus::InProgress
    };
    (pattern, status)
}

/// The members of `active` that would have produced `observed` for `guess`.
pub fn trim_vocab(
    vocab: &Vocabulary,
    active: &[usize],
    guess: &impl AsRef<Spelling>,
    observed: &Pattern,
) -> Result<Vec<usize>> {
    let guess = guess.as_ref();
    if observed.len() != vocab.word_length() || guess.len() != vocab.word_length() {
        return Err(WordleError::LengthMismatch {
            expected: vocab.word_length(),
            actual: observed.len().min(guess.len()),
        });
    }
    let code = observed.code();
    Ok(active
        .iter()
        .copied()
        .filter(|&i| pattern_code(guess, vocab.word(i).spelling()) == code)
        .collect())
}
