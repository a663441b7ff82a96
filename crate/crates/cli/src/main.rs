use std::collections::BTreeSet;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use wordle_core::clique::{solve_clique, CliqueSolveConfig};
use wordle_core::experiments::{
    export_clique_reports, export_report, run_best_first, run_clique_stats, run_full_simulation, sample_cliques,
    Algorithm, ExportFormat, SimulationOptions,
};
use wordle_core::graph::cliques_to_dot;
use wordle_core::greedy::{solve, FirstGuessCache};
use wordle_core::{load_vocabulary, AlphabetConfig, GameConfig, Mode, Spelling, Transcript, Vocabulary};

/// Minimax and clique Wordle solvers, simulations and the assistant server.
#[derive(Parser)]
#[command(name = "wordle-bench", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one greedy game against a known hidden word.
    SolveGreedy {
        #[command(flatten)]
        vocab: VocabArgs,
        #[arg(long)]
        hidden: String,
        #[arg(long)]
        max_tries: Option<usize>,
        #[arg(long, default_value = "easy")]
        mode: Mode,
        /// First-guess cache file; read if present, written back after.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Print the transcript as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Play one clique game against a known hidden word.
    SolveClique {
        #[command(flatten)]
        vocab: VocabArgs,
        #[arg(long)]
        hidden: String,
        /// Only guess dictionary words while placing known letters.
        #[arg(long)]
        strict_vocab_anagrams: bool,
        #[arg(long)]
        json: bool,
    },
    /// Solve every word of the list and report the guess counts.
    Simulate {
        #[command(flatten)]
        vocab: VocabArgs,
        #[arg(long, default_value = "greedy")]
        algo: Algorithm,
        /// Win curve horizon.
        #[arg(long, default_value_t = 6)]
        max_m: usize,
        #[arg(long, default_value = "easy")]
        mode: Mode,
        #[arg(long)]
        strict_vocab_anagrams: bool,
        /// Recompute the first round in every game.
        #[arg(long)]
        no_first_round_cache: bool,
        /// Per-word results; `.json` writes JSON, anything else CSV plus
        /// a `_win_curve.csv` next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        format: Option<ExportFormat>,
    },
    /// The greedy opening word.
    BestFirst {
        #[command(flatten)]
        vocab: VocabArgs,
        #[arg(long, default_value = "easy")]
        mode: Mode,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Count k-cliques of the no-shared-letter graph.
    CliqueStats {
        #[command(flatten)]
        vocab: VocabArgs,
        #[arg(long, default_value_t = 2)]
        k_min: usize,
        #[arg(long, default_value_t = 4)]
        k_max: usize,
        /// Per-k time limit; counts cut short are flagged incomplete.
        #[arg(long)]
        budget_secs: Option<f64>,
        /// Write up to --dot-limit k_max-cliques as Graphviz.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = 25)]
        dot_limit: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        format: Option<ExportFormat>,
    },
    /// Run the HTTP assistant.
    Serve {
        /// Word lists to offer; defaults to the bundled English lists.
        #[arg(long)]
        vocab_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Allowed browser origin; any origin when omitted.
        #[arg(long)]
        cors_origin: Option<String>,
        /// Session snapshot file, restored on start.
        #[arg(long)]
        snapshot: Option<PathBuf>,
        #[arg(long, default_value_t = 30)]
        snapshot_secs: u64,
    },
}

#[derive(Args)]
struct VocabArgs {
    /// Word list, one word per line.
    #[arg(long)]
    vocab: PathBuf,
    /// Word length to keep; inferred when the list has one length.
    #[arg(long)]
    length: Option<usize>,
    /// Alphabet symbols.
    #[arg(long, default_value = "abcdefghijklmnopqrstuvwxyz")]
    alphabet: String,
}

enum Failure {
    Usage(String),
    Data(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Data(e.into())
    }
}

type CmdResult = Result<(), Failure>;

impl VocabArgs {
    fn load(&self, hint: Option<&str>) -> Result<Vocabulary, Failure> {
        let alphabet = AlphabetConfig::new(&self.alphabet).map_err(|e| Failure::Usage(e.to_string()))?;
        let bytes = std::fs::read(&self.vocab)
            .map_err(|e| anyhow::anyhow!("reading {}: {e}", self.vocab.display()))?;
        let length = match (self.length, hint) {
            (Some(l), _) => l,
            (None, Some(h)) => h.chars().count(),
            (None, None) => infer_length(&bytes, &alphabet, &self.vocab)?,
        };
        Ok(load_vocabulary(&bytes, length, alphabet)?)
    }
}

fn infer_length(bytes: &[u8], alphabet: &AlphabetConfig, path: &Path) -> Result<usize, Failure> {
    let text = String::from_utf8_lossy(bytes);
    let lengths: BTreeSet<usize> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .filter_map(|l| Spelling::parse(l, alphabet).ok().map(|s| s.len()))
        .collect();
    match lengths.len() {
        0 => Err(anyhow::anyhow!("{} has no usable words", path.display()).into()),
        1 => Ok(*lengths.first().unwrap()),
        _ => Err(Failure::Usage(format!(
            "{} mixes word lengths {:?}; pass --length",
            path.display(),
            lengths
        ))),
    }
}

fn hidden_word<'v>(vocab: &'v Vocabulary, hidden: &str) -> Result<&'v wordle_core::Word, Failure> {
    vocab
        .get(&hidden.to_lowercase())
        .ok_or_else(|| anyhow::anyhow!("{hidden:?} is not in the word list").into())
}

fn print_transcript(t: &Transcript, json: bool) -> CmdResult {
    if json {
        println!("{}", serde_json::to_string_pretty(t)?);
        return Ok(());
    }
    for (i, s) in t.steps.iter().enumerate() {
        let flag = if s.legal_word { "" } else { " (not a word)" };
        println!("{:>2}  {}  {}  {}{flag}", i + 1, s.guess, s.pattern, s.phase.as_str());
    }
    match t.outcome.moves() {
        Some(n) => println!("solved in {n}"),
        None => println!("not solved"),
    }
    Ok(())
}

fn load_cache(path: Option<&Path>) -> Result<FirstGuessCache, Failure> {
    match path {
        Some(p) if p.exists() => Ok(FirstGuessCache::load(p)?),
        _ => Ok(FirstGuessCache::new()),
    }
}

fn format_for(path: &Path, format: Option<ExportFormat>) -> ExportFormat {
    format.unwrap_or(match path.extension().and_then(|e| e.to_str()) {
        Some("json") => ExportFormat::Json,
        _ => ExportFormat::Csv,
    })
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::SolveGreedy {
            vocab,
            hidden,
            max_tries,
            mode,
            cache,
            json,
        } => {
            let v = vocab.load(Some(&hidden))?;
            let h = hidden_word(&v, &hidden)?;
            if max_tries == Some(0) {
                return Err(Failure::Usage("--max-tries must be at least 1".into()));
            }
            let config = GameConfig::for_vocab(&v).with_mode(mode).with_max_tries(max_tries);
            let mut c = load_cache(cache.as_deref())?;
            if let Some(path) = &cache {
                c.warm_first_guess(&v, mode);
                c.save(path)?;
            }
            let t = solve(&v, h, &config, Some(&c))?;
            print_transcript(&t, json)
        }
        Command::SolveClique {
            vocab,
            hidden,
            strict_vocab_anagrams,
            json,
        } => {
            let v = vocab.load(Some(&hidden))?;
            let h = hidden_word(&v, &hidden)?;
            let cfg = CliqueSolveConfig::for_vocab(&v).with_strict_vocab_anagrams(strict_vocab_anagrams);
            let t = solve_clique(&v, h, &cfg)?;
            print_transcript(&t, json)
        }
        Command::Simulate {
            vocab,
            algo,
            max_m,
            mode,
            strict_vocab_anagrams,
            no_first_round_cache,
            out,
            format,
        } => {
            if algo == Algorithm::Clique && mode == Mode::Hard {
                return Err(Failure::Usage("the clique solver only plays easy mode".into()));
            }
            let v = vocab.load(None)?;
            let opts = SimulationOptions {
                mode,
                strict_vocab_anagrams,
                reuse_first_round: !no_first_round_cache,
                ..SimulationOptions::new(algo, max_m)
            };
            let r = run_full_simulation(&v, &opts)?;
            println!("words      {}", r.results.len());
            println!("average    {:.2}", r.average_tries);
            println!("worst      {} ({})", r.worst_tries, r.worst_words.join(", "));
            for (m, pct) in &r.win_curve {
                println!("win@{m:<6} {pct:.2}%");
            }
            println!(
                "time       first round {} ms, games {} ms",
                r.timings.first_round.as_millis(),
                r.timings.games.as_millis()
            );
            if let Some(path) = out {
                export_report(&r, format_for(&path, format), &path)?;
            }
            Ok(())
        }
        Command::BestFirst { vocab, mode, cache } => {
            let v = vocab.load(None)?;
            match cache {
                Some(path) => {
                    let mut c = load_cache(Some(&path))?;
                    let i = c.warm_first_guess(&v, mode);
                    c.save(&path)?;
                    println!("{}", v.word(i).text());
                }
                None => println!("{}", run_best_first(&v, mode).text()),
            }
            Ok(())
        }
        Command::CliqueStats {
            vocab,
            k_min,
            k_max,
            budget_secs,
            dot,
            dot_limit,
            out,
            format,
        } => {
            if k_min < 2 || k_min > k_max {
                return Err(Failure::Usage(format!("need 2 <= --k-min <= --k-max, got {k_min}..{k_max}")));
            }
            let budget = match budget_secs {
                Some(s) if !(s.is_finite() && s > 0.0) => {
                    return Err(Failure::Usage("--budget-secs must be positive".into()))
                }
                s => s.map(Duration::from_secs_f64),
            };
            let v = vocab.load(None)?;
            let reports = run_clique_stats(&v, k_min, k_max, budget)?;
            println!("l  k  vertices  edges  cliques  complete  ms");
            for r in &reports {
                println!(
                    "{}  {}  {}  {}  {}  {}  {}",
                    r.word_length,
                    r.k,
                    r.vertex_count,
                    r.edge_count,
                    r.clique_count,
                    r.complete,
                    r.elapsed.as_millis()
                );
            }
            if let Some(path) = out {
                export_clique_reports(&reports, format_for(&path, format), &path)?;
            }
            if let Some(path) = dot {
                let cliques = sample_cliques(&v, k_max, dot_limit, budget);
                std::fs::write(&path, cliques_to_dot(&cliques, &v))
                    .map_err(|e| anyhow::anyhow!("writing {}: {e}", path.display()))?;
            }
            Ok(())
        }
        Command::Serve {
            vocab_dir,
            port,
            host,
            cors_origin,
            snapshot,
            snapshot_secs,
        } => {
            if snapshot_secs == 0 {
                return Err(Failure::Usage("--snapshot-secs must be at least 1".into()));
            }
            let config = wordle_service::ServiceConfig {
                vocab_dir,
                addr: SocketAddr::new(host, port),
                cors_origin,
                snapshot_path: snapshot,
                snapshot_interval: Duration::from_secs(snapshot_secs),
            };
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(wordle_service::run(config))?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
