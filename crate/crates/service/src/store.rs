//! Vocabulary loading and session snapshots.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use wordle_core::experiments::Algorithm;
use wordle_core::game::Mode;
use wordle_core::{bundled, AlphabetConfig, Spelling, Vocabulary};

use crate::{AppState, CreateSession, VocabEntry};

/// The built-in lists, ids `en3` to `en9`.
pub fn bundled_vocabularies() -> Vec<VocabEntry> {
    bundled::lengths()
        .filter_map(|l| {
            bundled::vocabulary(l).map(|vocab| VocabEntry {
                id: format!("en{l}"),
                vocab,
            })
        })
        .collect()
}

/// Loads every file in `dir`. A file whose usable words all share one
/// length gets its stem as id; otherwise each length becomes `stem-L`.
pub fn load_vocab_dir(dir: &Path) -> anyhow::Result<Vec<VocabEntry>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    let alphabet = AlphabetConfig::english();
    let mut out = Vec::new();
    for path in paths {
        let Some(stem) = path.file_stem().and_then(|s| s.to_str()) else {
            continue;
        };
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let mut by_len: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Ok(s) = Spelling::parse(line, &alphabet) {
                if s.len() >= 2 {
                    by_len.entry(s.len()).or_default().push(line);
                }
            }
        }
        let single = by_len.len() == 1;
        for (len, words) in by_len {
            let vocab = Vocabulary::from_words(words, len, alphabet.clone())?;
            let id = if single { stem.to_owned() } else { format!("{stem}-{len}") };
            out.push(VocabEntry { id, vocab });
        }
    }
    if out.is_empty() {
        bail!("no usable word lists in {}", dir.display());
    }
    Ok(out)
}

/// Enough to rebuild a session by replaying its board.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SessionRecord {
    pub id: String,
    pub vocab_id: String,
    pub length: usize,
    pub mode: Mode,
    pub algorithm: Algorithm,
    pub max_tries: Option<usize>,
    pub strict_vocab_anagrams: bool,
    pub rows: Vec<(String, String)>,
}

pub(crate) fn records(app: &AppState) -> Vec<SessionRecord> {
    let mut out: Vec<SessionRecord> = app
        .all_sessions()
        .iter()
        .map(|s| {
            let s = s.lock().expect("session lock");
            SessionRecord {
                id: s.id.clone(),
                vocab_id: s.vocab_id.clone(),
                length: s.config.word_length,
                mode: s.config.mode,
                algorithm: s.algorithm,
                max_tries: s.config.max_tries,
                strict_vocab_anagrams: s.strict_vocab_anagrams,
                rows: s
                    .board()
                    .rows
                    .iter()
                    .map(|r| (r.guess.clone(), r.pattern.to_string()))
                    .collect(),
            }
        })
        .collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

pub fn write_snapshot(app: &AppState, path: &Path) -> anyhow::Result<()> {
    let json = serde_json::to_vec_pretty(&records(app))?;
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, json).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))?;
    Ok(())
}

/// Rebuilds sessions from a snapshot file. Records that no longer replay
/// (say, the vocabulary changed) are skipped with a warning.
pub fn restore_snapshot(app: &AppState, path: &Path) -> anyhow::Result<usize> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let records: Vec<SessionRecord> = serde_json::from_slice(&bytes)?;
    let mut restored = 0;
    for r in records {
        match restore_one(app, &r) {
            Ok(()) => restored += 1,
            Err(e) => eprintln!("skipping session {}: {}", r.id, e),
        }
    }
    Ok(restored)
}

fn restore_one(app: &AppState, r: &SessionRecord) -> anyhow::Result<()> {
    let req = CreateSession {
        length: r.length,
        mode: Some(r.mode),
        algorithm: Some(r.algorithm),
        vocab_id: Some(r.vocab_id.clone()),
        max_tries: r.max_tries,
        strict_vocab_anagrams: Some(r.strict_vocab_anagrams),
        id: Some(r.id.clone()),
    };
    let session = app.create_session(&req).map_err(|e| anyhow::anyhow!("{:?}", e))?;
    let mut s = session.lock().expect("session lock");
    for (guess, pattern) in &r.rows {
        s.apply_feedback(guess, pattern)?;
    }
    Ok(())
}

pub(crate) fn spawn_snapshotter(app: Arc<AppState>, path: PathBuf, every: Duration) {
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(every);
        tick.tick().await;
        loop {
            tick.tick().await;
            let app = app.clone();
            let path = path.clone();
            let res = tokio::task::spawn_blocking(move || write_snapshot(&app, &path)).await;
            match res {
                Ok(Err(e)) => eprintln!("snapshot failed: {e:#}"),
                Err(e) => eprintln!("snapshot task failed: {e}"),
                Ok(Ok(())) => {}
            }
        }
    });
}
