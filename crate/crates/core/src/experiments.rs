//! Whole-vocabulary simulations and clique statistics, with CSV/JSON export.
//!
//! Exported files carry no wall-clock numbers, so a rerun over the same
//! inputs writes the same bytes. Timings stay on the in-memory reports.

use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::clique::{solve_clique_with, CliqueOpening, CliqueSolveConfig};
use crate::error::{Result, WordleError};
use crate::game::{GameConfig, Mode};
use crate::graph::{count_k_cliques, find_k_cliques_with, form_graph_helper, graph_stats, Clique, CliqueSearch, Regime};
use crate::greedy::{solve, FirstGuessCache};
use crate::tracker::WordleTracker;
use crate::vocab::{Vocabulary, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Greedy,
    Clique,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::Clique => "clique",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = WordleError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(Algorithm::Greedy),
            "clique" => Ok(Algorithm::Clique),
            other => Err(WordleError::Contract(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = WordleError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            other => Err(WordleError::Contract(format!("unknown export format {other:?}"))),
        }
    }
}

/// Greedy opening word for a vocabulary.
pub fn run_best_first(vocab: &Vocabulary, mode: Mode) -> &Word {
    let mut cache = FirstGuessCache::new();
    vocab.word(cache.warm_first_guess(vocab, mode))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordResult {
    pub index: usize,
    pub word: String,
    /// Guesses used; the simulation never caps the number of tries.
    pub tries: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Timings {
    pub first_round: Duration,
    pub games: Duration,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub algorithm: Algorithm,
    pub word_length: usize,
    pub max_m: usize,
    pub results: Vec<WordResult>,
    pub average_tries: f64,
    /// `(m, win percentage)` for m = 1..=max_m.
    pub win_curve: Vec<(usize, f64)>,
    pub worst_words: Vec<String>,
    pub worst_tries: usize,
    #[serde(skip)]
    pub timings: Timings,
}

impl SimulationReport {
    /// Aggregates per-word results, sorting them by word index.
    pub fn from_results(algorithm: Algorithm, word_length: usize, max_m: usize, mut results: Vec<WordResult>) -> Self {
        results.sort_by_key(|r| r.index);
        let n = results.len();
        let average_tries = if n == 0 {
            0.0
        } else {
            results.iter().map(|r| r.tries).sum::<usize>() as f64 / n as f64
        };
        let win_curve = if n == 0 {
            Vec::new()
        } else {
            (1..=max_m)
                .map(|m| (m, results.iter().filter(|r| r.tries <= m).count() as f64 * 100.0 / n as f64))
                .collect()
        };
        let worst_tries = results.iter().map(|r| r.tries).max().unwrap_or(0);
        let worst_words = results
            .iter()
            .filter(|r| r.tries == worst_tries && n > 0)
            .map(|r| r.word.clone())
            .collect();
        SimulationReport {
            algorithm,
            word_length,
            max_m,
            results,
            average_tries,
            win_curve,
            worst_words,
            worst_tries,
            timings: Timings::default(),
        }
    }

    /// Win percentage for `m` tries, from the per-word counts.
    pub fn win_pct(&self, m: usize) -> f64 {
        if self.results.is_empty() {
            return 0.0;
        }
        self.results.iter().filter(|r| r.tries <= m).count() as f64 * 100.0 / self.results.len() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimulationOptions {
    pub algorithm: Algorithm,
    pub max_m: usize,
    pub mode: Mode,
    /// Compute the first round once and share it across games.
    pub reuse_first_round: bool,
    pub strict_vocab_anagrams: bool,
}

impl SimulationOptions {
    pub fn new(algorithm: Algorithm, max_m: usize) -> Self {
        SimulationOptions {
            algorithm,
            max_m,
            mode: Mode::Easy,
            reuse_first_round: true,
            strict_vocab_anagrams: false,
        }
    }
}

/// Plays every vocabulary word as the hidden word.
pub fn run_full_simulation(vocab: &Vocabulary, opts: &SimulationOptions) -> Result<SimulationReport> {
    run_simulation_on(vocab, vocab.words(), opts)
}

/// Plays the given hidden words, all drawn from `vocab`.
pub fn run_simulation_on(vocab: &Vocabulary, hidden: &[Word], opts: &SimulationOptions) -> Result<SimulationReport> {
    let start = Instant::now();
    let results: Vec<WordResult>;
    let first_round;
    match opts.algorithm {
        Algorithm::Greedy => {
            let cache = opts.reuse_first_round.then(|| {
                let mut c = FirstGuessCache::new();
                c.warm_first_guess(vocab, opts.mode);
                c
            });
            first_round = start.elapsed();
            let config = GameConfig::for_vocab(vocab).with_mode(opts.mode);
            results = hidden
                .par_iter()
                .map(|h| {
                    let t = solve(vocab, h, &config, cache.as_ref())?;
                    Ok(word_result(h, t.len()))
                })
                .collect::<Result<_>>()?;
        }
        Algorithm::Clique => {
            let cfg = CliqueSolveConfig::for_vocab(vocab).with_strict_vocab_anagrams(opts.strict_vocab_anagrams);
            let opening = opts.reuse_first_round.then(|| CliqueOpening::compute(vocab, &cfg));
            first_round = start.elapsed();
            results = hidden
                .par_iter()
                .map(|h| {
                    let t = solve_clique_with(vocab, h, &cfg, opening.as_ref())?;
                    Ok(word_result(h, t.len()))
                })
                .collect::<Result<_>>()?;
        }
    }
    let mut report = SimulationReport::from_results(opts.algorithm, vocab.word_length(), opts.max_m, results);
    report.timings = Timings {
        first_round,
        games: start.elapsed() - first_round,
    };
    Ok(report)
}

fn word_result(hidden: &Word, tries: usize) -> WordResult {
    WordResult {
        index: hidden.index(),
        word: hidden.text().to_owned(),
        tries,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueReport {
    pub word_length: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub k: usize,
    pub clique_count: u64,
    pub complete: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Counts hard-graph k-cliques over the full vocabulary for each k in
/// range. Each count gets its own time budget; an exhausted budget leaves
/// a partial count flagged incomplete.
pub fn run_clique_stats(
    vocab: &Vocabulary,
    k_min: usize,
    k_max: usize,
    budget: Option<Duration>,
) -> Result<Vec<CliqueReport>> {
    if k_min < 2 || k_min > k_max {
        return Err(WordleError::Contract(format!("bad clique size range {k_min}..={k_max}")));
    }
    let graph = form_graph_helper(&WordleTracker::new(vocab.clone()), Regime::Hard);
    let stats = graph_stats(&graph);
    Ok((k_min..=k_max)
        .map(|k| {
            let start = Instant::now();
            let (clique_count, complete) = count_k_cliques(&graph, k, budget);
            CliqueReport {
                word_length: vocab.word_length(),
                vertex_count: stats.vertex_count,
                edge_count: stats.edge_count,
                k,
                clique_count,
                complete,
                elapsed: start.elapsed(),
            }
        })
        .collect())
}

/// Up to `limit` hard-graph k-cliques of the full vocabulary, for rendering.
pub fn sample_cliques(vocab: &Vocabulary, k: usize, limit: usize, budget: Option<Duration>) -> Vec<Clique> {
    let graph = form_graph_helper(&WordleTracker::new(vocab.clone()), Regime::Hard);
    find_k_cliques_with(
        &graph,
        k,
        CliqueSearch {
            budget,
            limit: Some(limit),
            progress: None,
        },
    )
    .cliques
}

fn round2(x: f64) -> Value {
    json!((x * 100.0).round() / 100.0)
}

/// Per-word CSV: `index,word,tries`.
pub fn simulation_csv(report: &SimulationReport) -> String {
    let mut out = String::from("index,word,tries\n");
    for r in &report.results {
        let _ = writeln!(out, "{},{},{}", r.index, r.word, r.tries);
    }
    out
}

/// Win curve CSV: `m,win_pct`.
pub fn win_curve_csv(report: &SimulationReport) -> String {
    let mut out = String::from("m,win_pct\n");
    for (m, pct) in &report.win_curve {
        let _ = writeln!(out, "{m},{pct:.2}");
    }
    out
}

pub fn simulation_json(report: &SimulationReport) -> String {
    let value = json!({
        "algorithm": report.algorithm,
        "word_length": report.word_length,
        "max_m": report.max_m,
        "games": report.results.len(),
        "average_tries": round2(report.average_tries),
        "win_curve": report.win_curve.iter()
            .map(|(m, p)| json!({"m": m, "win_pct": round2(*p)}))
            .collect::<Vec<_>>(),
        "worst_tries": report.worst_tries,
        "worst_words": report.worst_words,
        "results": report.results,
    });
    let mut s = serde_json::to_string_pretty(&value).expect("json value serializes");
    s.push('\n');
    s
}

pub fn clique_csv(reports: &[CliqueReport]) -> String {
    let mut out = String::from("word_length,vertex_count,edge_count,k,clique_count,complete\n");
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.word_length, r.vertex_count, r.edge_count, r.k, r.clique_count, r.complete
        );
    }
    out
}

pub fn clique_json(reports: &[CliqueReport]) -> String {
    let value = serde_json::to_value(reports).expect("reports serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("json value serializes");
    s.push('\n');
    s
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| WordleError::io(path, e))
}

/// Path of the win-curve file that accompanies a per-word CSV.
pub fn win_curve_path(path: &Path) -> std::path::PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("report");
    path.with_file_name(format!("{stem}_win_curve.csv"))
}

/// Writes a simulation report. CSV output is the per-word file at `path`
/// plus the win curve next to it (see [`win_curve_path`]).
pub fn export_report(report: &SimulationReport, format: ExportFormat, path: &Path) -> Result<()> {
    match format {
        ExportFormat::Csv => {
            write_file(path, &simulation_csv(report))?;
            write_file(&win_curve_path(path), &win_curve_csv(report))
        }
        ExportFormat::Json => write_file(path, &simulation_json(report)),
    }
}

pub fn export_clique_reports(reports: &[CliqueReport], format: ExportFormat, path: &Path) -> Result<()> {
    match format {
        ExportFormat::Csv => write_file(path, &clique_csv(reports)),
        ExportFormat::Json => write_file(path, &clique_json(reports)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::AlphabetConfig;
    use crate::vocab::load_vocabulary;

    fn vocab(words: &str) -> Vocabulary {
        load_vocabulary(words.replace(' ', "\n").as_bytes(), 3, AlphabetConfig::default()).unwrap()
    }

    #[test]
    fn one_word_vocabulary() {
        let v = vocab("abc");
        assert_eq!(run_best_first(&v, Mode::Easy).text(), "abc");
        let r = run_full_simulation(&v, &SimulationOptions::new(Algorithm::Greedy, 3)).unwrap();
        assert_eq!(r.average_tries, 1.0);
        assert_eq!(r.win_curve, vec![(1, 100.0), (2, 100.0), (3, 100.0)]);
    }

    #[test]
    fn empty_report_is_header_only() {
        let r = SimulationReport::from_results(Algorithm::Greedy, 5, 6, vec![]);
        assert_eq!(simulation_csv(&r), "index,word,tries\n");
        assert_eq!(win_curve_csv(&r), "m,win_pct\n");
        assert!(r.worst_words.is_empty());
    }

    #[test]
    fn aggregates() {
        let res = |i: usize, w: &str, t| WordResult {
            index: i,
            word: w.into(),
            tries: t,
        };
        let r = SimulationReport::from_results(
            Algorithm::Clique,
            3,
            4,
            vec![res(2, "ghi", 3), res(0, "abc", 1), res(1, "def", 3)],
        );
        assert_eq!(r.results[0].word, "abc");
        assert!((r.average_tries - 7.0 / 3.0).abs() < 1e-12);
        assert_eq!(r.worst_words, vec!["def", "ghi"]);
        assert_eq!(win_curve_csv(&r), "m,win_pct\n1,33.33\n2,33.33\n3,100.00\n4,100.00\n");
        let j: Value = serde_json::from_str(&simulation_json(&r)).unwrap();
        assert_eq!(j["average_tries"], json!(2.33));
    }

    #[test]
    fn both_algorithms_solve_everything() {
        let v = vocab("abc abd aef ghi cab bca xyz zyx uvw");
        for algo in [Algorithm::Greedy, Algorithm::Clique] {
            let r = run_full_simulation(&v, &SimulationOptions::new(algo, 12)).unwrap();
            assert_eq!(r.results.len(), v.len());
            assert_eq!(r.win_pct(r.worst_tries), 100.0);
            let curve: Vec<f64> = r.win_curve.iter().map(|c| c.1).collect();
            assert!(curve.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn planted_clique_count() {
        // one disjoint family of three plus words sharing letters with all of it
        let v = vocab("abc def ghi adg beh");
        let r = run_clique_stats(&v, 2, 3, None).unwrap();
        assert_eq!(r[1].k, 3);
        assert_eq!(r[1].clique_count, 1);
        assert!(r.iter().all(|c| c.complete));
    }

    #[test]
    fn exports_are_byte_stable() {
        let v = vocab("abc abd aef ghi");
        let dir = std::env::temp_dir().join(format!("wordle-export-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sim.csv");
        let mut bytes = Vec::new();
        for _ in 0..2 {
            let r = run_full_simulation(&v, &SimulationOptions::new(Algorithm::Greedy, 6)).unwrap();
            export_report(&r, ExportFormat::Csv, &path).unwrap();
            bytes.push((std::fs::read(&path).unwrap(), std::fs::read(win_curve_path(&path)).unwrap()));
        }
        assert_eq!(bytes[0], bytes[1]);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn export_surfaces_the_path() {
        let r = SimulationReport::from_results(Algorithm::Greedy, 3, 1, vec![]);
        let err = export_report(&r, ExportFormat::Json, Path::new("/nonexistent/dir/x.json")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/x.json"));
    }
}
