//! Reference implementations for the test suites. Everything here works on
//! plain strings and does the obvious quadratic or exponential thing, so
//! it shares no code (and hopefully no bugs) with the real solvers.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

/// Wordle colors for distinct-letter words, as a `G`/`Y`/`X` string.
pub fn naive_pattern(guess: &str, hidden: &str) -> String {
    let hidden: Vec<char> = hidden.chars().collect();
    guess
        .chars()
        .enumerate()
        .map(|(i, c)| {
            if hidden.get(i) == Some(&c) {
                'G'
            } else if hidden.contains(&c) {
                'Y'
            } else {
                'X'
            }
        })
        .collect()
}

/// Every (guess, hidden) pattern materialized: bucket sizes for one guess.
pub fn partition(guess: &str, hiddens: &[&str]) -> HashMap<String, usize> {
    let mut buckets = HashMap::new();
    for h in hiddens {
        *buckets.entry(naive_pattern(guess, h)).or_insert(0) += 1;
    }
    buckets
}

/// Minimax choice over `active` (indices into `words`): the guess whose
/// largest bucket is smallest, lowest index on ties. Returns
/// `(index, worst_bucket)`.
pub fn minimax(words: &[String], active: &[usize]) -> (usize, usize) {
    let hiddens: Vec<&str> = active.iter().map(|&i| words[i].as_str()).collect();
    let mut best: Option<(usize, usize)> = None;
    let mut sorted = active.to_vec();
    sorted.sort_unstable();
    for &g in &sorted {
        let worst = partition(&words[g], &hiddens).into_values().max().unwrap_or(0);
        if best.is_none_or(|(_, w)| worst < w) {
            best = Some((g, worst));
        }
    }
    best.expect("active set is empty")
}

/// Words consistent with every (guess, pattern) observation.
pub fn consistent(words: &[String], history: &[(String, String)]) -> Vec<usize> {
    (0..words.len())
        .filter(|&i| history.iter().all(|(g, p)| naive_pattern(g, &words[i]) == *p))
        .collect()
}

/// All k-subsets of `0..n` that are pairwise adjacent.
pub fn k_cliques(n: usize, edges: &[(usize, usize)], k: usize) -> BTreeSet<Vec<usize>> {
    let adj: BTreeSet<(usize, usize)> = edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    (0..n)
        .combinations(k)
        .filter(|c| c.iter().tuple_combinations().all(|(&a, &b)| adj.contains(&(a, b))))
        .collect()
}

/// Tracker bookkeeping recomputed from the whole history at once.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrackerView {
    pub letters_found: BTreeSet<char>,
    pub grey_letters: BTreeSet<char>,
    pub letter_positions: BTreeMap<char, usize>,
    pub unseen: BTreeSet<char>,
    pub words_guessed: Vec<usize>,
    pub discarded: BTreeSet<usize>,
}

/// Expects a history produced by one real hidden word, so greens never
/// move and the discard rules only tighten.
pub fn tracker_view(alphabet: &str, words: &[String], history: &[(String, String)]) -> TrackerView {
    let mut v = TrackerView::default();
    for (guess, pattern) in history {
        if let Some(i) = words.iter().position(|w| w == guess) {
            v.words_guessed.push(i);
        }
        for (i, (c, p)) in guess.chars().zip(pattern.chars()).enumerate() {
            match p {
                'G' => {
                    v.letters_found.insert(c);
                    v.letter_positions.insert(c, i);
                }
                'Y' => {
                    v.letters_found.insert(c);
                }
                _ => {
                    v.grey_letters.insert(c);
                }
            }
        }
    }
    v.unseen = alphabet
        .chars()
        .filter(|c| !v.letters_found.contains(c) && !v.grey_letters.contains(c))
        .collect();
    for (i, w) in words.iter().enumerate() {
        let chars: Vec<char> = w.chars().collect();
        let bad = chars.iter().any(|c| v.grey_letters.contains(c))
            || v.letters_found.iter().any(|c| !chars.contains(c))
            || v.letter_positions.iter().any(|(c, &p)| chars.get(p) != Some(c));
        if bad {
            v.discarded.insert(i);
        }
    }
    v
}

/// How many of the `unseen` letters two words have in common.
pub fn shared_unseen(a: &str, b: &str, unseen: &BTreeSet<char>) -> usize {
    a.chars().filter(|c| unseen.contains(c) && b.contains(*c)).count()
}

/// A random word of `len` distinct letters from the first `alphabet_size`
/// lowercase letters.
pub fn random_word(rng: &mut impl Rng, alphabet_size: usize, len: usize) -> String {
    let mut letters: Vec<char> = ('a'..='z').take(alphabet_size).collect();
    letters.shuffle(rng);
    letters.into_iter().take(len).collect()
}

/// `n` distinct random words, sorted.
pub fn random_vocab(rng: &mut impl Rng, n: usize, alphabet_size: usize, len: usize) -> Vec<String> {
    let mut set = BTreeSet::new();
    let mut tries = 0;
    while set.len() < n && tries < n * 50 {
        set.insert(random_word(rng, alphabet_size, len));
        tries += 1;
    }
    set.into_iter().collect()
}

/// Every arrangement of `letters`, sorted.
pub fn permutations(letters: &str) -> Vec<String> {
    let chars: Vec<char> = letters.chars().collect();
    let mut out: Vec<String> = chars
        .iter()
        .permutations(chars.len())
        .map(|p| p.into_iter().collect())
        .collect();
    out.sort();
    out
}

/// Every `len`-permutation of the first `alphabet_size` letters, sorted.
pub fn permutation_words(alphabet_size: usize, len: usize) -> Vec<String> {
    let mut out: Vec<String> = ('a'..='z')
        .take(alphabet_size)
        .permutations(len)
        .map(|p| p.into_iter().collect())
        .collect();
    out.sort();
    out
}

/// An Erdős–Rényi style graph on `n` vertices.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    (0..n)
        .tuple_combinations()
        .filter(|_| rng.gen_bool(p))
        .collect()
}
