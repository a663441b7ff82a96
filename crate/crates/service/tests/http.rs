use std::sync::Arc;

use reqwest::StatusCode;
use serde_json::{json, Value};
use wordle_core::{bundled, get_pattern};
use wordle_service::{write_snapshot, restore_snapshot, AppState, VocabEntry};

fn entries() -> Vec<VocabEntry> {
    vec![
        VocabEntry {
            id: "en3".into(),
            vocab: bundled::vocabulary(3).unwrap(),
        },
        VocabEntry {
            id: "small5".into(),
            vocab: bundled::words5_500(),
        },
    ]
}

async fn start() -> (String, Arc<AppState>) {
    let app = Arc::new(AppState::new(entries()));
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let base = format!("http://{}", listener.local_addr().unwrap());
    let served = app.clone();
    tokio::spawn(async move { wordle_service::serve(listener, served, None).await.unwrap() });
    (base, app)
}

async fn post(client: &reqwest::Client, url: String, body: Value) -> (StatusCode, Value) {
    let r = client.post(url).json(&body).send().await.unwrap();
    let status = r.status();
    (status, r.json().await.unwrap_or(Value::Null))
}

async fn get(client: &reqwest::Client, url: String) -> (StatusCode, Value) {
    let r = client.get(url).send().await.unwrap();
    let status = r.status();
    (status, r.json().await.unwrap_or(Value::Null))
}

#[tokio::test]
async fn lists_vocabularies() {
    let (base, _) = start().await;
    let c = reqwest::Client::new();
    let (status, body) = get(&c, format!("{base}/v1/vocabularies")).await;
    assert_eq!(status, StatusCode::OK);
    let ids: Vec<_> = body.as_array().unwrap().iter().map(|v| v["id"].as_str().unwrap().to_owned()).collect();
    assert_eq!(ids, ["en3", "small5"]);
    assert_eq!(body[1]["length"], 5);
    assert_eq!(body[1]["size"], 500);
}

#[tokio::test]
async fn greedy_session_reaches_the_hidden_word() {
    let (base, _) = start().await;
    let c = reqwest::Client::new();
    let vocab = bundled::words5_500();
    let hidden = vocab.word(123).clone();

    let (status, created) = post(&c, format!("{base}/v1/sessions"), json!({"length": 5, "vocab_id": "small5"})).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(created["remaining_count"], 500);
    assert_eq!(created["phase"], "greedy");
    let id = created["id"].as_str().unwrap().to_owned();
    let mut suggestion = created["suggestion"].as_str().unwrap().to_owned();

    let mut rounds = 0;
    loop {
        rounds += 1;
        assert!(rounds <= 10);
        let guess = vocab.spell(&suggestion).unwrap();
        let pattern = get_pattern(&guess, &hidden).unwrap().to_string();
        let (status, fb) = post(
            &c,
            format!("{base}/v1/sessions/{id}/feedback"),
            json!({"guess": suggestion, "pattern": pattern}),
        )
        .await;
        assert_eq!(status, StatusCode::OK, "{fb}");
        if fb["solved"] == true {
            assert!(fb["suggestion"].is_null());
            break;
        }
        suggestion = fb["suggestion"].as_str().unwrap().to_owned();
    }
    assert_eq!(suggestion, hidden.text());

    let (status, snap) = get(&c, format!("{base}/v1/sessions/{id}")).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(snap["board"].as_array().unwrap().len(), rounds);
    assert_eq!(snap["solved"], true);
    assert!(snap["created_at"].as_u64().unwrap() <= snap["updated_at"].as_u64().unwrap());
}

#[tokio::test]
async fn clique_session_and_tracker_snapshot() {
    let (base, _) = start().await;
    let c = reqwest::Client::new();
    let (status, created) = post(&c, format!("{base}/v1/sessions"), json!({"length": 3, "algorithm": "clique"})).await;
    assert_eq!(status, StatusCode::CREATED, "{created}");
    assert_eq!(created["phase"], "clique");
    assert_eq!(created["suggestion"], "adz");
    let id = created["id"].as_str().unwrap();
    let (status, fb) = post(&c, format!("{base}/v1/sessions/{id}/feedback"), json!({"guess": "adz", "pattern": "XXX"})).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(fb["suggestion"], "beg");
    let (_, snap) = get(&c, format!("{base}/v1/sessions/{id}")).await;
    let grey: Vec<_> = snap["tracker"]["grey_letters"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(grey, ["a", "d", "z"]);
}

#[tokio::test]
async fn error_statuses() {
    let (base, _) = start().await;
    let c = reqwest::Client::new();
    let (s, _) = post(&c, format!("{base}/v1/sessions"), json!({"length": 7})).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
    let (s, _) = post(&c, format!("{base}/v1/sessions"), json!({"length": 5, "vocab_id": "nope"})).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
    let (s, _) = post(&c, format!("{base}/v1/sessions"), json!({"length": 3, "vocab_id": "small5"})).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let (s, _) = post(&c, format!("{base}/v1/sessions"), json!({"length": 3, "algorithm": "clique", "mode": "hard"})).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let (s, _) = get(&c, format!("{base}/v1/sessions/missing")).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
    let (s, _) = post(&c, format!("{base}/v1/sessions/missing/feedback"), json!({"guess": "abc", "pattern": "XXX"})).await;
    assert_eq!(s, StatusCode::NOT_FOUND);

    let (_, created) = post(&c, format!("{base}/v1/sessions"), json!({"length": 3})).await;
    let id = created["id"].as_str().unwrap();
    let (s, body) = post(&c, format!("{base}/v1/sessions/{id}/undo"), json!({})).await;
    assert_eq!(s, StatusCode::CONFLICT);
    assert_eq!(body["error"], "nothing_to_undo");
    let (s, body) = post(&c, format!("{base}/v1/sessions/{id}/feedback"), json!({"guess": "adz", "pattern": "GGQ"})).await;
    assert_eq!(s, StatusCode::BAD_REQUEST, "{body}");
    let (s, body) = post(&c, format!("{base}/v1/sessions/{id}/feedback"), json!({"guess": "qqq", "pattern": "XXX"})).await;
    assert_eq!(s, StatusCode::BAD_REQUEST, "{body}");

    // Gray then green for the same letter cannot both hold.
    let (s, _) = post(&c, format!("{base}/v1/sessions/{id}/feedback"), json!({"guess": "adz", "pattern": "XXX"})).await;
    assert_eq!(s, StatusCode::OK);
    let (s, body) = post(&c, format!("{base}/v1/sessions/{id}/feedback"), json!({"guess": "ace", "pattern": "GXX"})).await;
    assert_eq!(s, StatusCode::CONFLICT);
    assert_eq!(body["error"], "contradiction");
    let (_, snap) = get(&c, format!("{base}/v1/sessions/{id}")).await;
    assert_eq!(snap["board"].as_array().unwrap().len(), 1);

    let (s, snap) = post(&c, format!("{base}/v1/sessions/{id}/undo"), json!({})).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(snap["board"].as_array().unwrap().len(), 0);
    assert_eq!(snap["can_undo"], false);
}

#[tokio::test]
async fn snapshot_round_trip() {
    let (base, app) = start().await;
    let c = reqwest::Client::new();
    let (_, created) = post(&c, format!("{base}/v1/sessions"), json!({"length": 3, "algorithm": "clique"})).await;
    let id = created["id"].as_str().unwrap().to_owned();
    post(&c, format!("{base}/v1/sessions/{id}/feedback"), json!({"guess": "adz", "pattern": "XYX"})).await;
    let (_, before) = get(&c, format!("{base}/v1/sessions/{id}")).await;

    let path = std::env::temp_dir().join(format!("wordle-snap-{}.json", std::process::id()));
    let app2 = app.clone();
    let p2 = path.clone();
    tokio::task::spawn_blocking(move || write_snapshot(&app2, &p2)).await.unwrap().unwrap();

    let fresh = AppState::new(entries());
    assert_eq!(restore_snapshot(&fresh, &path).unwrap(), 1);
    std::fs::remove_file(&path).unwrap();
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let base2 = format!("http://{}", listener.local_addr().unwrap());
    tokio::spawn(async move { wordle_service::serve(listener, Arc::new(fresh), None).await.unwrap() });
    let (s, after) = get(&c, format!("{base2}/v1/sessions/{id}")).await;
    assert_eq!(s, StatusCode::OK);
    for key in ["board", "suggestion", "remaining_count", "tracker", "phase"] {
        assert_eq!(before[key], after[key], "{key}");
    }
}

#[tokio::test]
async fn cors_headers_present() {
    let (base, _) = start().await;
    let c = reqwest::Client::new();
    let r = c
        .get(format!("{base}/v1/vocabularies"))
        .header("Origin", "http://localhost:5173")
        .send()
        .await
        .unwrap();
    assert_eq!(r.headers()["access-control-allow-origin"], "*");
}
