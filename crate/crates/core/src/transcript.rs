use std::fmt;

use serde::{Deserialize, Serialize};

use crate::game::GameOutcome;
use crate::graph::Regime;
use crate::pattern::Pattern;

/// Which part of a solver produced a guess.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Greedy,
    Clique,
    Anagram,
    Remaining,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Greedy => "greedy",
            Phase::Clique => "clique",
            Phase::Anagram => "anagram",
            Phase::Remaining => "remaining",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub guess: String,
    pub pattern: Pattern,
    pub phase: Phase,
    pub legal_word: bool,
}

/// One pass of the clique loop: the clique size and graph regime used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueRound {
    pub k: usize,
    pub regime: Regime,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub steps: Vec<Step>,
    pub outcome: GameOutcome,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub clique_rounds: Vec<CliqueRound>,
}

impl Transcript {
    pub fn guesses(&self) -> impl Iterator<Item = &str> {
        self.steps.iter().map(|s| s.guess.as_str())
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The step list as a JSON array of `{guess, pattern, phase, legal_word}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.steps).expect("steps serialize")
    }
}
