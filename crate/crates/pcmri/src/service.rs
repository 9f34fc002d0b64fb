//! HTTP monitor: comparisons are entered one at a time and every change
//! returns the current consistency verdict against the graph-specific random
//! index.
//!
//! Indices on the wire are 1-based. Errors are `{"error": "..."}` with a 4xx
//! status. Random indices are cached per canonical code and computed once per
//! code even under concurrent requests.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex as StdMutex};
use std::time::{SystemTime, UNIX_EPOCH};

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{delete, get, post, put};
use axum::{Json, Router};
use pcmri_core::assess::{ComputedThresholds, DEFAULT_EXACT_LIMIT};
use pcmri_core::{
    assess, CanonicalCode, CompletionMethod, Error as CoreError, GraphClass,
    IncompletePcm, RIRecord, ThresholdSource, Verdict,
};
use serde::{Deserialize, Serialize};
use tokio::sync::{Mutex, OnceCell, RwLock};

use crate::tables::catalog_class;

pub const MIN_N: usize = 2;
pub const MAX_N: usize = 9;
/// Number of triads listed in a status report.
pub const SUSPECT_TRIAD_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct ServiceConfig {
    pub samples: u64,
    pub seed: u64,
    pub method: CompletionMethod,
    /// Classes with at most this many matrices get an exact random index.
    pub exact_limit: u64,
    /// Append-only session journal, replayed on start.
    pub journal: Option<PathBuf>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            samples: 20_000,
            seed: 42,
            method: CompletionMethod::SaatyBounded,
            exact_limit: DEFAULT_EXACT_LIMIT,
            journal: None,
        }
    }
}

/// A triangle of known comparisons with its multiplicative inconsistency
/// `|ln(a_ij a_jk / a_ik)|`. Large values point at likely misprints; this is a
/// heuristic, not part of the consistency test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuspectTriad {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatusReport {
    pub n: usize,
    pub m: usize,
    pub connected: bool,
    pub graph_id: Option<usize>,
    pub canonical_code: Option<String>,
    pub spectral_radius: f64,
    pub lambda_star: Option<f64>,
    pub ci: Option<f64>,
    pub ri: Option<f64>,
    pub cr: Option<f64>,
    pub verdict: Verdict,
    pub suspect_triads: Vec<SuspectTriad>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistoryEntry {
    /// Milliseconds since the Unix epoch.
    pub timestamp: u64,
    pub i: usize,
    pub j: usize,
    /// `None` when the comparison was cleared.
    pub value: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Session {
    pub n: usize,
    pub pcm: IncompletePcm,
    pub history: Vec<HistoryEntry>,
}

impl Session {
    fn new(n: usize) -> Result<Self, ApiError> {
        if !(MIN_N..=MAX_N).contains(&n) {
            return Err(ApiError::bad_request(format!("n must be between {MIN_N} and {MAX_N}, got {n}")));
        }
        Ok(Session {
            n,
            pcm: IncompletePcm::empty(n).map_err(ApiError::from)?,
            history: Vec::new(),
        })
    }

    fn indices(&self, i: usize, j: usize) -> Result<(usize, usize), ApiError> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(ApiError::bad_request(format!("indices must be between 1 and {}", self.n)));
        }
        if i == j {
            return Err(ApiError::bad_request("a comparison needs two different alternatives"));
        }
        Ok((i - 1, j - 1))
    }

    /// Sets `a_ij = value` (1-based) and records it.
    pub fn set(&mut self, i: usize, j: usize, value: f64, timestamp: u64) -> Result<(), ApiError> {
        let (a, b) = self.indices(i, j)?;
        self.pcm.set_comparison(a, b, value)?;
        self.history.push(HistoryEntry { timestamp, i, j, value: Some(value) });
        Ok(())
    }

    pub fn clear(&mut self, i: usize, j: usize, timestamp: u64) -> Result<(), ApiError> {
        let (a, b) = self.indices(i, j)?;
        self.pcm.clear_comparison(a, b)?;
        self.history.push(HistoryEntry { timestamp, i, j, value: None });
        Ok(())
    }

    /// Rebuilds a session from its history.
    pub fn replay(n: usize, history: &[HistoryEntry]) -> Result<Self, ApiError> {
        let mut s = Session::new(n)?;
        for h in history {
            match h.value {
                Some(v) => s.set(h.i, h.j, v, h.timestamp)?,
                None => s.clear(h.i, h.j, h.timestamp)?,
            }
        }
        Ok(s)
    }
}

pub fn suspect_triads(pcm: &IncompletePcm) -> Vec<SuspectTriad> {
    let n = pcm.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let Some(aij) = pcm.get(i, j) else { continue };
            for k in j + 1..n {
                if let (Some(ajk), Some(aik)) = (pcm.get(j, k), pcm.get(i, k)) {
                    let error = (aij * ajk / aik).ln().abs();
                    out.push(SuspectTriad { i: i + 1, j: j + 1, k: k + 1, error });
                }
            }
        }
    }
    out.sort_by(|a, b| b.error.total_cmp(&a.error).then((a.i, a.j, a.k).cmp(&(b.i, b.j, b.k))));
    out.retain(|t| t.error > 1e-12);
    out.truncate(SUSPECT_TRIAD_LIMIT);
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApiError {
    pub status: StatusCode,
    pub message: String,
}

impl ApiError {
    pub fn bad_request(message: impl Into<String>) -> Self {
        ApiError { status: StatusCode::BAD_REQUEST, message: message.into() }
    }

    fn not_found(message: impl Into<String>) -> Self {
        ApiError { status: StatusCode::NOT_FOUND, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        ApiError { status: StatusCode::INTERNAL_SERVER_ERROR, message: message.into() }
    }
}

impl From<CoreError> for ApiError {
    fn from(e: CoreError) -> Self {
        let status = match e {
            CoreError::AlreadyMissing { .. } => StatusCode::CONFLICT,
            CoreError::Sample { .. } | CoreError::NoConvergence { .. } | CoreError::CompletionNoConvergence { .. } => {
                StatusCode::INTERNAL_SERVER_ERROR
            }
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError { status, message: e.to_string() }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError::bad_request(e.body_text())
    }
}

impl From<QueryRejection> for ApiError {
    fn from(e: QueryRejection) -> Self {
        ApiError::bad_request(e.body_text())
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: &'a str,
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(ErrorBody { error: &self.message })).into_response()
    }
}

/// Random indices per `(n, canonical code)`, computed at most once per key.
pub struct ThresholdCache {
    source: ComputedThresholds,
    cells: StdMutex<HashMap<(usize, u64), Arc<OnceCell<RIRecord>>>>,
    computations: AtomicU64,
}

impl ThresholdCache {
    pub fn new(config: &ServiceConfig) -> Self {
        ThresholdCache {
            source: ComputedThresholds {
                method: config.method,
                samples: config.samples,
                seed: config.seed,
                exact_limit: config.exact_limit,
            },
            cells: StdMutex::new(HashMap::new()),
            computations: AtomicU64::new(0),
        }
    }

    /// Number of cold computations so far.
    pub fn computations(&self) -> u64 {
        self.computations.load(Ordering::Relaxed)
    }

    pub async fn get(self: &Arc<Self>, code: CanonicalCode) -> Result<RIRecord, ApiError> {
        let cell = {
            let mut cells = self.cells.lock().expect("threshold cache poisoned");
            cells.entry((code.n(), code.bits())).or_default().clone()
        };
        let this = Arc::clone(self);
        cell.get_or_try_init(|| async move {
            this.computations.fetch_add(1, Ordering::Relaxed);
            let source = this.source;
            tokio::task::spawn_blocking(move || compute_threshold(&source, code))
                .await
                .map_err(|e| ApiError::internal(e.to_string()))?
        })
        .await
        .cloned()
    }
}

fn compute_threshold(source: &ComputedThresholds, code: CanonicalCode) -> Result<RIRecord, ApiError> {
    Ok(source.threshold(&catalog_class(code))?)
}

struct Prefetched(Option<RIRecord>);

impl ThresholdSource for Prefetched {
    fn threshold(&self, _: &GraphClass) -> pcmri_core::Result<RIRecord> {
        self.0.clone().ok_or(CoreError::NoSamples)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
enum JournalEntry {
    Create { session_id: String, n: usize, timestamp: u64 },
    Set { session_id: String, i: usize, j: usize, value: f64, timestamp: u64 },
    Clear { session_id: String, i: usize, j: usize, timestamp: u64 },
}

pub struct AppState {
    config: ServiceConfig,
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    cache: Arc<ThresholdCache>,
    journal: Option<StdMutex<File>>,
}

fn now_millis() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis() as u64).unwrap_or(0)
}

impl AppState {
    /// Creates the state, replaying the journal if one is configured.
    pub fn new(config: ServiceConfig) -> std::io::Result<Arc<Self>> {
        let mut sessions = HashMap::new();
        let journal = match &config.journal {
            Some(path) => {
                if path.exists() {
                    replay_journal(path, &mut sessions)?;
                }
                Some(StdMutex::new(OpenOptions::new().create(true).append(true).open(path)?))
            }
            None => None,
        };
        Ok(Arc::new(AppState {
            cache: Arc::new(ThresholdCache::new(&config)),
            config,
            sessions: RwLock::new(
                sessions.into_iter().map(|(k, v)| (k, Arc::new(Mutex::new(v)))).collect(),
            ),
            journal,
        }))
    }

    pub fn cache(&self) -> &Arc<ThresholdCache> {
        &self.cache
    }

    fn log(&self, entry: &JournalEntry) -> Result<(), ApiError> {
        let Some(journal) = &self.journal else { return Ok(()) };
        let mut line = serde_json::to_string(entry).map_err(|e| ApiError::internal(e.to_string()))?;
        line.push('\n');
        let mut file = journal.lock().expect("journal poisoned");
        file.write_all(line.as_bytes())
            .and_then(|_| file.flush())
            .map_err(|e| ApiError::internal(format!("journal write failed: {e}")))
    }

    async fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .read()
            .await
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(format!("unknown session {id}")))
    }

    pub async fn create_session(&self, n: usize) -> Result<String, ApiError> {
        let session = Session::new(n)?;
        let id = uuid::Uuid::new_v4().simple().to_string();
        self.sessions.write().await.insert(id.clone(), Arc::new(Mutex::new(session)));
        self.log(&JournalEntry::Create { session_id: id.clone(), n, timestamp: now_millis() })?;
        Ok(id)
    }

    pub async fn status_of(&self, session: &Session) -> Result<StatusReport, ApiError> {
        status_report(&self.cache, self.config.method, &session.pcm).await
    }
}

fn replay_journal(path: &std::path::Path, sessions: &mut HashMap<String, Session>) -> std::io::Result<()> {
    let reader = BufReader::new(File::open(path)?);
    for (k, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let entry: JournalEntry = serde_json::from_str(&line).map_err(|e| {
            std::io::Error::new(std::io::ErrorKind::InvalidData, format!("journal line {}: {e}", k + 1))
        })?;
        let bad = |e: ApiError| std::io::Error::new(std::io::ErrorKind::InvalidData, format!("journal line {}: {}", k + 1, e.message));
        match entry {
            JournalEntry::Create { session_id, n, .. } => {
                sessions.insert(session_id, Session::new(n).map_err(bad)?);
            }
            JournalEntry::Set { session_id, i, j, value, timestamp } => {
                if let Some(s) = sessions.get_mut(&session_id) {
                    s.set(i, j, value, timestamp).map_err(bad)?;
                }
            }
            JournalEntry::Clear { session_id, i, j, timestamp } => {
                if let Some(s) = sessions.get_mut(&session_id) {
                    s.clear(i, j, timestamp).map_err(bad)?;
                }
            }
        }
    }
    Ok(())
}

/// Status of a matrix; the verdict comes from the core assessment unchanged.
pub async fn status_report(
    cache: &Arc<ThresholdCache>,
    method: CompletionMethod,
    pcm: &IncompletePcm,
) -> Result<StatusReport, ApiError> {
    let graph = pcm.representing_graph();
    let record = if graph.is_connected() && !graph.is_spanning_tree() {
        let code = pcmri_core::canonical_form(&graph)?;
        Some(cache.get(code).await?)
    } else {
        None
    };
    let a = assess(pcm, method, &Prefetched(record))?;
    Ok(StatusReport {
        n: a.n,
        m: a.m,
        connected: a.connected,
        graph_id: a.graph_id,
        canonical_code: a.canonical_code.map(|c| c.to_hex()),
        spectral_radius: a.spectral_radius,
        lambda_star: a.lambda_star,
        ci: a.ci,
        ri: a.ri,
        cr: a.cr,
        verdict: a.verdict,
        suspect_triads: suspect_triads(pcm),
    })
}

#[derive(Deserialize)]
struct CreateRequest {
    n: usize,
}

#[derive(Serialize, Deserialize)]
pub struct CreateResponse {
    pub session_id: String,
}

#[derive(Deserialize)]
struct PutRequest {
    i: usize,
    j: usize,
    value: f64,
}

#[derive(Deserialize)]
struct ThresholdQuery {
    n: usize,
    m: usize,
    code: String,
}

async fn create(
    State(state): State<Arc<AppState>>,
    body: Result<Json<CreateRequest>, JsonRejection>,
) -> Result<(StatusCode, Json<CreateResponse>), ApiError> {
    let Json(req) = body?;
    let session_id = state.create_session(req.n).await?;
    Ok((StatusCode::CREATED, Json(CreateResponse { session_id })))
}

async fn put_comparison(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Result<Json<PutRequest>, JsonRejection>,
) -> Result<Json<StatusReport>, ApiError> {
    let Json(req) = body?;
    let session = state.session(&id).await?;
    let mut s = session.lock().await;
    let timestamp = now_millis();
    s.set(req.i, req.j, req.value, timestamp)?;
    state.log(&JournalEntry::Set { session_id: id, i: req.i, j: req.j, value: req.value, timestamp })?;
    Ok(Json(state.status_of(&s).await?))
}

async fn delete_comparison(
    State(state): State<Arc<AppState>>,
    Path((id, i, j)): Path<(String, usize, usize)>,
) -> Result<Json<StatusReport>, ApiError> {
    let session = state.session(&id).await?;
    let mut s = session.lock().await;
    let timestamp = now_millis();
    s.clear(i, j, timestamp)?;
    state.log(&JournalEntry::Clear { session_id: id, i, j, timestamp })?;
    Ok(Json(state.status_of(&s).await?))
}

async fn status(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<StatusReport>, ApiError> {
    let session = state.session(&id).await?;
    let s = session.lock().await;
    Ok(Json(state.status_of(&s).await?))
}

async fn history(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<Vec<HistoryEntry>>, ApiError> {
    let session = state.session(&id).await?;
    let s = session.lock().await;
    Ok(Json(s.history.clone()))
}

async fn thresholds(
    State(state): State<Arc<AppState>>,
    query: Result<Query<ThresholdQuery>, QueryRejection>,
) -> Result<Json<RIRecord>, ApiError> {
    let Query(q) = query?;
    if !(MIN_N..=MAX_N).contains(&q.n) {
        return Err(ApiError::bad_request(format!("n must be between {MIN_N} and {MAX_N}")));
    }
    let code = CanonicalCode::from_hex(q.n, &q.code)?;
    let graph = code.to_graph();
    if graph.missing_count() != q.m {
        return Err(ApiError::bad_request(format!(
            "code {} has {} missing edges, not {}",
            q.code,
            graph.missing_count(),
            q.m
        )));
    }
    if pcmri_core::canonical_form(&graph)? != code {
        return Err(ApiError::bad_request(format!("{} is not a canonical code", q.code)));
    }
    if !graph.is_connected() {
        return Err(ApiError::bad_request("graph is disconnected: no unique completion"));
    }
    Ok(Json(state.cache.get(code).await?))
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}/comparisons", put(put_comparison))
        .route("/sessions/{id}/comparisons/{i}/{j}", delete(delete_comparison))
        .route("/sessions/{id}/status", get(status))
        .route("/sessions/{id}/history", get(history))
        .route("/thresholds", get(thresholds))
        .with_state(state)
}

pub async fn serve(listen: &str, config: ServiceConfig) -> anyhow::Result<()> {
    let state = AppState::new(config)?;
    let listener = tokio::net::TcpListener::bind(listen).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(state)).await?;
    Ok(())
}
