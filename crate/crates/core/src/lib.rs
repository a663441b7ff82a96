//! Deterministic Wordle solving for words with distinct letters.
//!
//! Two solvers share one game model: a minimax-greedy solver that shrinks
//! the set of possible answers, and a clique solver that first hunts for
//! the answer's letters using groups of letter-disjoint words.

pub mod alphabet;
pub mod clique;
pub mod error;
pub mod experiments;
pub mod game;
pub mod graph;
pub mod greedy;
pub mod pattern;
pub mod tracker;
pub mod transcript;
pub mod vocab;

pub use alphabet::{AlphabetConfig, LetterMask};
pub use clique::{solve_clique, CliqueAdvisor, CliqueSolveConfig};
pub use error::{Result, WordleError};
pub use game::{GameConfig, GameOutcome, Mode, MoveRejection};
pub use graph::{Clique, Regime, WordGraph};
pub use greedy::{FirstGuessCache, GreedyState};
pub use pattern::{get_pattern, Color, Pattern};
pub use tracker::{TrackerState, WordleTracker};
pub use transcript::{Phase, Step, Transcript};
pub use vocab::{load_vocabulary, load_vocabulary_file, Spelling, Vocabulary, Word};

/// Word lists compiled into the library.
pub mod bundled {
    use crate::alphabet::AlphabetConfig;
    use crate::vocab::{load_vocabulary, Vocabulary};

    const LISTS: [(usize, &str); 7] = [
        (3, include_str!("../data/words3.txt")),
        (4, include_str!("../data/words4.txt")),
        (5, include_str!("../data/words5.txt")),
        (6, include_str!("../data/words6.txt")),
        (7, include_str!("../data/words7.txt")),
        (8, include_str!("../data/words8.txt")),
        (9, include_str!("../data/words9.txt")),
    ];

    /// 500 five-letter words spread evenly over the full list.
    pub const WORDS5_500: &str = include_str!("../data/words5_500.txt");

    pub fn raw(length: usize) -> Option<&'static str> {
        LISTS.iter().find(|(l, _)| *l == length).map(|(_, s)| *s)
    }

    pub fn lengths() -> impl Iterator<Item = usize> {
        LISTS.iter().map(|(l, _)| *l)
    }

    /// The bundled list for a word length, over the English alphabet.
    pub fn vocabulary(length: usize) -> Option<Vocabulary> {
        let text = raw(length)?;
        Some(load_vocabulary(text.as_bytes(), length, AlphabetConfig::english()).expect("bundled list loads"))
    }

    pub fn words5_500() -> Vocabulary {
        load_vocabulary(WORDS5_500.as_bytes(), 5, AlphabetConfig::english()).expect("bundled list loads")
    }
}
