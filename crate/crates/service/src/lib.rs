//! HTTP assistant for people playing Wordle elsewhere: report the colors
//! you saw, get the next suggested guess.

pub mod session;
mod store;

use std::collections::{BTreeMap, HashMap};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::Duration;

use axum::extract::{Path, State};
use axum::http::{HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;
use tower_http::cors::{Any, CorsLayer};
use wordle_core::clique::{CliqueOpening, CliqueSolveConfig};
use wordle_core::experiments::Algorithm;
use wordle_core::game::{GameConfig, Mode};
use wordle_core::greedy::FirstGuessCache;
use wordle_core::tracker::TrackerState;
use wordle_core::{Pattern, Phase, Vocabulary};

use session::{Precomputed, Session, SessionError};
pub use store::{bundled_vocabularies, load_vocab_dir, restore_snapshot, write_snapshot, SessionRecord};

/// A loaded word list, addressed by id.
#[derive(Debug, Clone)]
pub struct VocabEntry {
    pub id: String,
    pub vocab: Vocabulary,
}

pub struct AppState {
    vocabs: BTreeMap<String, VocabEntry>,
    sessions: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
    first_guesses: Mutex<FirstGuessCache>,
    openings: Mutex<HashMap<(String, bool), Arc<CliqueOpening>>>,
}

impl AppState {
    pub fn new(vocabs: Vec<VocabEntry>) -> Self {
        AppState {
            vocabs: vocabs.into_iter().map(|v| (v.id.clone(), v)).collect(),
            sessions: Mutex::new(HashMap::new()),
            first_guesses: Mutex::new(FirstGuessCache::new()),
            openings: Mutex::new(HashMap::new()),
        }
    }

    pub fn vocabularies(&self) -> impl Iterator<Item = &VocabEntry> {
        self.vocabs.values()
    }

    fn pick_vocab(&self, length: usize, id: Option<&str>) -> Result<&VocabEntry, ApiError> {
        match id {
            Some(id) => match self.vocabs.get(id) {
                Some(v) if v.vocab.word_length() == length => Ok(v),
                Some(v) => Err(ApiError::bad_request(format!(
                    "vocabulary {id:?} holds {}-letter words",
                    v.vocab.word_length()
                ))),
                None => Err(ApiError::not_found(format!("unknown vocabulary {id:?}"))),
            },
            None => self
                .vocabs
                .values()
                .find(|v| v.vocab.word_length() == length)
                .ok_or_else(|| ApiError::not_found(format!("no vocabulary for {length}-letter words"))),
        }
    }

    fn opening(&self, entry: &VocabEntry, strict: bool) -> Arc<CliqueOpening> {
        let key = (entry.id.clone(), strict);
        if let Some(o) = self.openings.lock().expect("openings lock").get(&key) {
            return o.clone();
        }
        let cfg = CliqueSolveConfig::for_vocab(&entry.vocab).with_strict_vocab_anagrams(strict);
        let computed = Arc::new(CliqueOpening::compute(&entry.vocab, &cfg));
        self.openings
            .lock()
            .expect("openings lock")
            .entry(key)
            .or_insert(computed)
            .clone()
    }

    /// Builds and registers a session.
    pub fn create_session(&self, req: &CreateSession) -> Result<Arc<Mutex<Session>>, ApiError> {
        let entry = self.pick_vocab(req.length, req.vocab_id.as_deref())?;
        let mode = req.mode.unwrap_or(Mode::Easy);
        let algorithm = req.algorithm.unwrap_or(Algorithm::Greedy);
        let strict = req.strict_vocab_anagrams.unwrap_or(false);
        if req.max_tries == Some(0) {
            return Err(ApiError::bad_request("max_tries must be at least 1"));
        }
        let config = GameConfig::for_vocab(&entry.vocab)
            .with_mode(mode)
            .with_max_tries(req.max_tries);
        let opening = (algorithm == Algorithm::Clique && mode == Mode::Easy).then(|| self.opening(entry, strict));
        let id = req.id.clone().unwrap_or_else(|| uuid::Uuid::new_v4().simple().to_string());
        let session = {
            let mut cache = self.first_guesses.lock().expect("cache lock");
            Session::new(
                id.clone(),
                entry.id.clone(),
                entry.vocab.clone(),
                algorithm,
                config,
                strict,
                Precomputed {
                    first_guesses: &mut cache,
                    opening: opening.as_deref(),
                },
            )?
        };
        let session = Arc::new(Mutex::new(session));
        self.sessions
            .lock()
            .expect("sessions lock")
            .insert(id, session.clone());
        Ok(session)
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .lock()
            .expect("sessions lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(format!("unknown session {id:?}")))
    }

    pub fn session_count(&self) -> usize {
        self.sessions.lock().expect("sessions lock").len()
    }

    fn all_sessions(&self) -> Vec<Arc<Mutex<Session>>> {
        self.sessions.lock().expect("sessions lock").values().cloned().collect()
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CreateSession {
    pub length: usize,
    #[serde(default)]
    pub mode: Option<Mode>,
    #[serde(default)]
    pub algorithm: Option<Algorithm>,
    #[serde(default)]
    pub vocab_id: Option<String>,
    #[serde(default)]
    pub max_tries: Option<usize>,
    #[serde(default)]
    pub strict_vocab_anagrams: Option<bool>,
    /// Only used when restoring snapshots.
    #[serde(skip)]
    pub id: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Feedback {
    pub guess: String,
    pub pattern: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SessionCreated {
    pub id: String,
    pub suggestion: Option<String>,
    pub legal_word: Option<bool>,
    pub phase: Option<Phase>,
    pub remaining_count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeedbackResponse {
    pub suggestion: Option<String>,
    pub legal_word: Option<bool>,
    pub phase: Option<Phase>,
    pub remaining_count: usize,
    pub solved: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RowView {
    pub guess: String,
    pub pattern: Pattern,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SessionSnapshot {
    pub id: String,
    pub vocab_id: String,
    pub length: usize,
    pub mode: Mode,
    pub algorithm: Algorithm,
    pub max_tries: Option<usize>,
    pub board: Vec<RowView>,
    pub suggestion: Option<String>,
    pub legal_word: Option<bool>,
    pub phase: Option<Phase>,
    pub remaining_count: usize,
    pub solved: bool,
    pub can_undo: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tracker: Option<TrackerState>,
    pub created_at: u64,
    pub updated_at: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VocabularyInfo {
    pub id: String,
    pub length: usize,
    pub size: usize,
    pub fingerprint: String,
}

fn snapshot(s: &Session) -> SessionSnapshot {
    let sug = s.suggestion();
    SessionSnapshot {
        id: s.id.clone(),
        vocab_id: s.vocab_id.clone(),
        length: s.config.word_length,
        mode: s.config.mode,
        algorithm: s.algorithm,
        max_tries: s.config.max_tries,
        board: s
            .board()
            .rows
            .iter()
            .map(|r| RowView {
                guess: r.guess.clone(),
                pattern: r.pattern.clone(),
            })
            .collect(),
        suggestion: sug.map(|x| x.word.clone()),
        legal_word: sug.map(|x| x.legal_word),
        phase: sug.map(|x| x.phase),
        remaining_count: s.remaining_count(),
        solved: s.is_solved(),
        can_undo: s.can_undo(),
        tracker: s.tracker_state(),
        created_at: s.created_at,
        updated_at: s.updated_at,
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: serde_json::Value,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            body: json!({"error": code, "message": message.into()}),
        }
    }

    fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, "not_found", message)
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "invalid", message)
    }

    pub fn status(&self) -> StatusCode {
        self.status
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let message = e.to_string();
        match e {
            SessionError::Invalid(_) => Self::bad_request(message),
            SessionError::Rejected(reason) => ApiError {
                status: StatusCode::BAD_REQUEST,
                body: json!({"error": "rejected", "message": message, "reason": reason}),
            },
            SessionError::Contradiction(_) => ApiError {
                status: StatusCode::CONFLICT,
                body: json!({"error": "contradiction", "message": message, "undo": true}),
            },
            SessionError::NothingToUndo => Self::new(StatusCode::CONFLICT, "nothing_to_undo", message),
            SessionError::Solved => Self::new(StatusCode::CONFLICT, "solved", message),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?
}

async fn create_session(
    State(app): State<Arc<AppState>>,
    Json(req): Json<CreateSession>,
) -> Result<(StatusCode, Json<SessionCreated>), ApiError> {
    let body = blocking(move || {
        let session = app.create_session(&req)?;
        let s = session.lock().expect("session lock");
        let sug = s.suggestion();
        Ok(SessionCreated {
            id: s.id.clone(),
            suggestion: sug.map(|x| x.word.clone()),
            legal_word: sug.map(|x| x.legal_word),
            phase: sug.map(|x| x.phase),
            remaining_count: s.remaining_count(),
        })
    })
    .await?;
    Ok((StatusCode::CREATED, Json(body)))
}

async fn feedback(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    Json(req): Json<Feedback>,
) -> Result<Json<FeedbackResponse>, ApiError> {
    let session = app.session(&id)?;
    let body = blocking(move || {
        let mut s = session.lock().expect("session lock");
        s.apply_feedback(&req.guess, &req.pattern)?;
        let sug = s.suggestion();
        Ok(FeedbackResponse {
            suggestion: sug.map(|x| x.word.clone()),
            legal_word: sug.map(|x| x.legal_word),
            phase: sug.map(|x| x.phase),
            remaining_count: s.remaining_count(),
            solved: s.is_solved(),
        })
    })
    .await?;
    Ok(Json(body))
}

async fn undo(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<SessionSnapshot>, ApiError> {
    let session = app.session(&id)?;
    let mut s = session.lock().expect("session lock");
    s.undo()?;
    Ok(Json(snapshot(&s)))
}

async fn get_session(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Json<SessionSnapshot>, ApiError> {
    let session = app.session(&id)?;
    let s = session.lock().expect("session lock");
    Ok(Json(snapshot(&s)))
}

async fn vocabularies(State(app): State<Arc<AppState>>) -> Json<Vec<VocabularyInfo>> {
    Json(
        app.vocabularies()
            .map(|v| VocabularyInfo {
                id: v.id.clone(),
                length: v.vocab.word_length(),
                size: v.vocab.len(),
                fingerprint: format!("{:016x}", v.vocab.fingerprint()),
            })
            .collect(),
    )
}

/// The API routes. `cors_origin` of `None` allows any origin.
pub fn router(app: Arc<AppState>, cors_origin: Option<&str>) -> Result<Router, String> {
    let cors = CorsLayer::new().allow_methods(Any).allow_headers(Any);
    let cors = match cors_origin {
        None => cors.allow_origin(Any),
        Some(o) => cors.allow_origin(
            o.parse::<HeaderValue>()
                .map_err(|e| format!("bad CORS origin {o:?}: {e}"))?,
        ),
    };
    Ok(Router::new()
        .route("/v1/sessions", post(create_session))
        .route("/v1/sessions/{id}", get(get_session))
        .route("/v1/sessions/{id}/feedback", post(feedback))
        .route("/v1/sessions/{id}/undo", post(undo))
        .route("/v1/vocabularies", get(vocabularies))
        .layer(cors)
        .with_state(app))
}

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub vocab_dir: Option<PathBuf>,
    pub addr: SocketAddr,
    pub cors_origin: Option<String>,
    pub snapshot_path: Option<PathBuf>,
    pub snapshot_interval: Duration,
}

/// Loads vocabularies (and any snapshot), then serves until the process
/// ends.
pub async fn run(config: ServiceConfig) -> anyhow::Result<()> {
    let vocabs = match &config.vocab_dir {
        Some(dir) => load_vocab_dir(dir)?,
        None => bundled_vocabularies(),
    };
    let app = Arc::new(AppState::new(vocabs));
    if let Some(path) = &config.snapshot_path {
        if path.exists() {
            let restored = store::restore_snapshot(&app, path)?;
            eprintln!("restored {restored} sessions from {}", path.display());
        }
        store::spawn_snapshotter(app.clone(), path.clone(), config.snapshot_interval);
    }
    let listener = tokio::net::TcpListener::bind(config.addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    serve(listener, app, config.cors_origin.as_deref()).await
}

/// Serves the API on an already bound listener.
pub async fn serve(listener: tokio::net::TcpListener, app: Arc<AppState>, cors_origin: Option<&str>) -> anyhow::Result<()> {
    let router = router(app, cors_origin).map_err(anyhow::Error::msg)?;
    axum::serve(listener, router).await?;
    Ok(())
}
