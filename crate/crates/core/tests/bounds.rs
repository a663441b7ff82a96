//! Worst-case bounds and per-step properties of both solvers.

use wordle_core::clique::{solve_clique_with, CliqueGame, CliqueOpening};
use wordle_core::game::validate_move;
use wordle_core::game::Board;
use wordle_core::greedy::{solve, FirstGuessCache};
use wordle_core::vocab::permutation_vocabulary;
use wordle_core::{
    bundled, AlphabetConfig, CliqueSolveConfig, GameConfig, GreedyState, Mode, Phase, Transcript, Vocabulary,
    WordleTracker,
};
use wordle_oracles as oracle;

fn greedy_all(v: &Vocabulary, mode: Mode) -> Vec<Transcript> {
    let config = GameConfig::for_vocab(v).with_mode(mode);
    let mut cache = FirstGuessCache::new();
    cache.warm_first_guess(v, mode);
    v.words().iter().map(|h| solve(v, h, &config, Some(&cache)).unwrap()).collect()
}

fn clique_all(v: &Vocabulary, cfg: &CliqueSolveConfig) -> Vec<Transcript> {
    let opening = CliqueOpening::compute(v, cfg);
    v.words().iter().map(|h| solve_clique_with(v, h, cfg, Some(&opening)).unwrap()).collect()
}

#[test]
fn greedy_round_bound_on_permutation_vocabularies() {
    let a = 6;
    for l in [2, 3] {
        let v = permutation_vocabulary(AlphabetConfig::first_letters(a).unwrap(), l).unwrap();
        assert_eq!(v.len(), oracle::permutation_words(a, l).len());
        let bound = a.div_ceil(l) + l;
        for (h, t) in v.words().iter().zip(greedy_all(&v, Mode::Easy)) {
            assert!(t.outcome.is_solved);
            assert!(t.len() <= bound, "{} took {} > {bound}", h.text(), t.len());
        }
    }
}

#[test]
fn greedy_keeps_hidden_and_shrinks() {
    for v in [bundled::vocabulary(3).unwrap(), bundled::words5_500()] {
        for mode in [Mode::Easy, Mode::Hard] {
            for (h, t) in v.words().iter().zip(greedy_all(&v, mode)) {
                let mut state = GreedyState::new(v.clone(), mode);
                for (i, step) in t.steps.iter().enumerate() {
                    assert!(state.active().contains(&h.index()));
                    let before = state.active().len();
                    let guess = v.spell(&step.guess).unwrap();
                    state.observe(&guess, &step.pattern).unwrap();
                    if i + 1 < t.steps.len() {
                        assert!(state.active().len() < before, "{} round {i}", h.text());
                    }
                }
                assert_eq!(t.steps.last().unwrap().guess, h.text());
            }
        }
    }
}

#[test]
fn hard_mode_transcripts_are_legal() {
    let v = bundled::words5_500();
    let config = GameConfig::for_vocab(&v).with_mode(Mode::Hard);
    for (h, t) in v.words().iter().zip(greedy_all(&v, Mode::Hard)).step_by(7) {
        let mut board = Board::new(None);
        for step in &t.steps {
            validate_move(&board, &step.guess, &config, &v).unwrap_or_else(|e| panic!("{}: {e}", h.text()));
            board.rows.push(wordle_core::game::BoardRow {
                guess: step.guess.clone(),
                pattern: step.pattern.clone(),
            });
        }
    }
}

#[test]
fn greedy_is_deterministic() {
    let v = bundled::words5_500();
    let config = GameConfig::for_vocab(&v);
    for h in v.words().iter().step_by(50) {
        let a = solve(&v, h, &config, None).unwrap();
        let b = solve(&v, h, &config, None).unwrap();
        assert_eq!(a, b);
    }
}

/// Replays a clique transcript through a fresh tracker and checks the
/// per-step properties.
fn check_clique_transcript(v: &Vocabulary, hidden: usize, t: &Transcript) {
    let mut tracker = WordleTracker::new(v.clone());
    let mut round_start = None;
    let mut round_sizes = t.clique_rounds.iter().map(|r| r.members.len());
    let mut left_in_round = 0;
    for step in &t.steps {
        assert!(!tracker.is_discarded(hidden), "{} discarded", v.word(hidden).text());
        if step.phase == Phase::Clique && left_in_round == 0 {
            left_in_round = round_sizes.next().expect("clique step without a round");
            round_start = Some(tracker.remaining_count());
        }
        let legal = v.get(&step.guess).is_some();
        assert_eq!(step.legal_word, legal);
        assert!(legal || step.phase == Phase::Anagram);
        tracker.record_guess(&v.spell(&step.guess).unwrap(), &step.pattern).unwrap();
        if step.phase == Phase::Clique {
            left_in_round -= 1;
            if left_in_round == 0 || step.pattern.is_solved() {
                if !step.pattern.is_solved() {
                    assert!(tracker.remaining_count() < round_start.unwrap());
                }
                left_in_round = 0;
            }
        }
    }
    assert!(t.outcome.is_solved);
    assert_eq!(t.steps.last().unwrap().guess, v.word(hidden).text());
}

#[test]
fn clique_games_keep_hidden_and_shrink() {
    for v in [bundled::vocabulary(3).unwrap(), bundled::words5_500()] {
        let cfg = CliqueSolveConfig::for_vocab(&v);
        for (h, t) in v.words().iter().zip(clique_all(&v, &cfg)) {
            check_clique_transcript(&v, h.index(), &t);
        }
    }
}

#[test]
fn clique_strict_mode_plays_only_words() {
    let v = bundled::words5_500();
    let cfg = CliqueSolveConfig::for_vocab(&v).with_strict_vocab_anagrams(true);
    for (h, t) in v.words().iter().zip(clique_all(&v, &cfg)) {
        assert!(t.steps.iter().all(|s| s.legal_word), "{}", h.text());
        check_clique_transcript(&v, h.index(), &t);
    }
}

/// Outer iterations stay within ceil(a / (c·l)), c the smallest clique
/// size used in the game.
#[test]
fn clique_round_count_bound() {
    for v in [bundled::vocabulary(3).unwrap(), bundled::words5_500()] {
        let a = v.alphabet().size();
        let l = v.word_length();
        let cfg = CliqueSolveConfig::for_vocab(&v);
        for (h, t) in v.words().iter().zip(clique_all(&v, &cfg)) {
            let Some(c) = t.clique_rounds.iter().map(|r| r.k).min() else {
                continue;
            };
            let rounds = t.clique_rounds.len();
            assert!(rounds <= a.div_ceil(c * l), "{}: {rounds} rounds, c={c}", h.text());
        }
    }
}

#[test]
fn planted_disjoint_family_covers_all_letters() {
    let family = ["abcdef", "ghijkl", "mnopqr", "stuvwx"];
    let fillers = ["yzabgm", "yzchns", "yzdiot", "yzejpu", "yzfkqv", "ayzlrw", "bhyzsx", "cgyzmt"];
    let v = Vocabulary::from_words(family.iter().chain(&fillers), 6, AlphabetConfig::english()).unwrap();
    let cfg = CliqueSolveConfig::for_vocab(&v);
    assert_eq!(cfg.max_clique_size_start, 4);
    for h in fillers {
        let hidden = v.get(h).unwrap();
        let t = solve_clique_with(&v, hidden, &cfg, None).unwrap();
        let first: Vec<&str> = t.steps.iter().take(4).map(|s| s.guess.as_str()).collect();
        assert!(t.steps[..4].iter().all(|s| s.phase == Phase::Clique));
        let mut letters: Vec<char> = first.iter().flat_map(|w| w.chars()).collect();
        letters.sort();
        letters.dedup();
        assert_eq!(letters.len(), 24, "{h}: {first:?}");
        assert_eq!(t.clique_rounds[0].k, 4);
    }
}

#[test]
fn anagram_phase_within_word_length() {
    for (l, letters) in [(3, "cat"), (4, "drop"), (5, "learn")] {
        let perms = oracle::permutations(letters);
        let v = Vocabulary::from_words(&perms, l, AlphabetConfig::english()).unwrap();
        let cfg = CliqueSolveConfig::for_vocab(&v);
        let probe = v.word(0).spelling().clone();
        for hidden in v.words() {
            let mut g = CliqueGame::new(&v, hidden, cfg).unwrap();
            if g.guess(probe.clone(), Phase::Remaining).unwrap() {
                continue;
            }
            let before = g.steps().len();
            g.check_all_anagrams().unwrap();
            assert!(g.is_solved());
            let extra = g.steps().len() - before;
            assert!(extra <= l, "{}: {extra} extra guesses", hidden.text());
        }
    }
}

#[test]
fn anagram_phase_in_full_games() {
    // Letters become known through the clique rounds, then the anagram
    // phase has to place them.
    let mut words = oracle::permutations("cat");
    words.extend(["dog", "fix", "bun", "elk", "gym"].map(String::from));
    let v = Vocabulary::from_words(&words, 3, AlphabetConfig::english()).unwrap();
    let cfg = CliqueSolveConfig::for_vocab(&v);
    let mut used = 0;
    for hidden in v.words().iter().filter(|w| w.mask() == v.get("cat").unwrap().mask()) {
        let t = solve_clique_with(&v, hidden, &cfg, None).unwrap();
        let anagram = t.steps.iter().filter(|s| s.phase == Phase::Anagram).count();
        assert!(anagram <= 3, "{}: {anagram}", hidden.text());
        used += anagram;
        check_clique_transcript(&v, hidden.index(), &t);
    }
    assert!(used > 0);
}

#[test]
fn clique_stats_count_the_planted_family() {
    let words = [
        "abcdef", "ghijkl", "mnopqr", "stuvwx", "yzabgm", "yzchns", "yzdiot", "yzejpu", "yzfkqv", "ayzlrw", "bhyzsx",
        "cgyzmt",
    ];
    let v = Vocabulary::from_words(words, 6, AlphabetConfig::english()).unwrap();
    let reports = wordle_core::experiments::run_clique_stats(&v, 2, 5, None).unwrap();
    let counts: Vec<u64> = reports.iter().map(|r| r.clique_count).collect();
    // Six family pairs plus two filler edges; the family's triples; the family.
    assert_eq!(counts, [8, 4, 1, 0]);
    assert!(reports.iter().all(|r| r.complete && r.edge_count == 8));
}
