//! Request/response boundary around the reasoning and recognition models.
//!
//! Every request has a stable SHA-256 digest over its canonical JSON form.
//! A [`RecordedStore`] maps digests to response text, so any run can be
//! replayed byte-for-byte without a model behind it.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClientError {
    #[error("no recorded response for request {digest}")]
    NotRecorded { digest: String },
    #[error("digest {digest} already maps to a different response")]
    DigestCollision { digest: String },
    #[error("transport error: {0}")]
    Transport(String),
    #[error("bad response: {0}")]
    BadResponse(String),
    #[error("recorded store: {0}")]
    Store(String),
}

impl ClientError {
    pub fn kind(&self) -> &'static str {
        match self {
            ClientError::NotRecorded { .. } => "not_recorded",
            ClientError::DigestCollision { .. } => "digest_collision",
            ClientError::Transport(_) => "transport_error",
            ClientError::BadResponse(_) => "bad_response",
            ClientError::Store(_) => "store_error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClientRequest {
    /// What the request is for, e.g. `align_player` or `refine`.
    pub purpose: String,
    pub prompt: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub video: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub options: Vec<String>,
}

impl ClientRequest {
    pub fn new(purpose: impl Into<String>, prompt: impl Into<String>) -> Self {
        Self { purpose: purpose.into(), prompt: prompt.into(), video: None, options: Vec::new() }
    }

    pub fn with_video(mut self, video: Option<String>) -> Self {
        self.video = video;
        self
    }

    pub fn with_options(mut self, options: Vec<String>) -> Self {
        self.options = options;
        self
    }

    /// Canonical form: JSON with object keys sorted, no insignificant whitespace.
    pub fn canonical(&self) -> String {
        let value = serde_json::to_value(self).expect("request serializes");
        serde_json::to_string(&value).expect("value serializes")
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }
}

pub trait ModelClient: Send + Sync {
    fn complete(&self, request: &ClientRequest) -> Result<String, ClientError>;
}

/// Append-only digest → response map, optionally backed by a JSON file.
#[derive(Debug, Default)]
pub struct RecordedStore {
    path: Option<PathBuf>,
    entries: RwLock<BTreeMap<String, String>>,
}

impl RecordedStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: BTreeMap<String, String>) -> Self {
        Self { path: None, entries: RwLock::new(entries) }
    }

    /// Opens a store file; a missing file starts an empty store at that path.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, ClientError> {
        let path = path.as_ref().to_path_buf();
        let entries = if path.exists() {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| ClientError::Store(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| ClientError::Store(format!("{}: {e}", path.display())))?
        } else {
            BTreeMap::new()
        };
        Ok(Self { path: Some(path), entries: RwLock::new(entries) })
    }

    pub fn get(&self, digest: &str) -> Option<String> {
        self.entries.read().expect("store lock").get(digest).cloned()
    }

    /// Records a response. Re-recording the same text is a no-op; different
    /// text under an existing digest is treated as corruption.
    pub fn insert(&self, digest: String, response: String) -> Result<(), ClientError> {
        let mut entries = self.entries.write().expect("store lock");
        match entries.get(&digest) {
            Some(existing) if *existing == response => Ok(()),
            Some(_) => Err(ClientError::DigestCollision { digest }),
            None => {
                entries.insert(digest, response);
                Ok(())
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("store lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn snapshot(&self) -> BTreeMap<String, String> {
        self.entries.read().expect("store lock").clone()
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    /// Writes the store back to its file, if it has one.
    pub fn save(&self) -> Result<(), ClientError> {
        let Some(path) = &self.path else { return Ok(()) };
        let text = serde_json::to_string_pretty(&self.snapshot()).expect("map serializes");
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, text + "\n")
            .and_then(|_| std::fs::rename(&tmp, path))
            .map_err(|e| ClientError::Store(format!("{}: {e}", path.display())))
    }
}

/// Answers strictly from a recorded store.
#[derive(Debug, Clone)]
pub struct ReplayClient {
    store: Arc<RecordedStore>,
}

impl ReplayClient {
    pub fn new(store: Arc<RecordedStore>) -> Self {
        Self { store }
    }
}

impl ModelClient for ReplayClient {
    fn complete(&self, request: &ClientRequest) -> Result<String, ClientError> {
        let digest = request.digest();
        self.store.get(&digest).ok_or(ClientError::NotRecorded { digest })
    }
}

/// Posts requests as JSON to an HTTP endpoint.
///
/// The endpoint receives `{digest, purpose, prompt, video?, options?}` and
/// may answer with plain text or a JSON object carrying `response` or `text`.
#[derive(Debug, Clone)]
pub struct EndpointClient {
    url: String,
    agent: ureq::Agent,
}

impl EndpointClient {
    pub fn new(url: impl Into<String>) -> Self {
        let agent = ureq::AgentBuilder::new().timeout(Duration::from_secs(300)).build();
        Self { url: url.into(), agent }
    }
}

impl ModelClient for EndpointClient {
    fn complete(&self, request: &ClientRequest) -> Result<String, ClientError> {
        let mut body = serde_json::to_value(request).expect("request serializes");
        body["digest"] = request.digest().into();
        let resp = self
            .agent
            .post(&self.url)
            .send_json(body)
            .map_err(|e| ClientError::Transport(e.to_string()))?;
        let text = resp.into_string().map_err(|e| ClientError::Transport(e.to_string()))?;
        Ok(extract_response_text(&text))
    }
}

fn extract_response_text(raw: &str) -> String {
    if let Ok(serde_json::Value::Object(obj)) = serde_json::from_str::<serde_json::Value>(raw) {
        for key in ["response", "text", "content"] {
            if let Some(serde_json::Value::String(s)) = obj.get(key) {
                return s.clone();
            }
        }
    }
    raw.to_string()
}

/// Wraps a client and records every exchange into a store.
pub struct RecordingClient<C> {
    inner: C,
    store: Arc<RecordedStore>,
}

impl<C: ModelClient> RecordingClient<C> {
    pub fn new(inner: C, store: Arc<RecordedStore>) -> Self {
        Self { inner, store }
    }

    pub fn store(&self) -> &Arc<RecordedStore> {
        &self.store
    }
}

impl<C: ModelClient> ModelClient for RecordingClient<C> {
    fn complete(&self, request: &ClientRequest) -> Result<String, ClientError> {
        let digest = request.digest();
        if let Some(hit) = self.store.get(&digest) {
            return Ok(hit);
        }
        let response = self.inner.complete(request)?;
        self.store.insert(digest, response.clone())?;
        Ok(response)
    }
}

impl<T: ModelClient + ?Sized> ModelClient for Arc<T> {
    fn complete(&self, request: &ClientRequest) -> Result<String, ClientError> {
        (**self).complete(request)
    }
}

impl<T: ModelClient + ?Sized> ModelClient for &T {
    fn complete(&self, request: &ClientRequest) -> Result<String, ClientError> {
        (**self).complete(request)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    struct Echo(AtomicUsize);

    impl ModelClient for Echo {
        fn complete(&self, request: &ClientRequest) -> Result<String, ClientError> {
            self.0.fetch_add(1, Ordering::SeqCst);
            Ok(format!("echo:{}", request.prompt))
        }
    }

    #[test]
    fn digest_is_stable_and_field_sensitive() {
        let a = ClientRequest::new("align", "who?").with_options(vec!["x".into()]);
        let b = ClientRequest::new("align", "who?").with_options(vec!["x".into()]);
        assert_eq!(a.digest(), b.digest());
        assert_eq!(a.digest().len(), 64);
        assert_ne!(a.digest(), ClientRequest::new("align", "who? ").digest());
        assert_eq!(a.canonical(), r#"{"options":["x"],"prompt":"who?","purpose":"align"}"#);
    }

    #[test]
    fn replay_hits_and_misses() {
        let req = ClientRequest::new("p", "q");
        let store = Arc::new(RecordedStore::in_memory());
        store.insert(req.digest(), "answer".into()).unwrap();
        let client = ReplayClient::new(store);
        assert_eq!(client.complete(&req).unwrap(), "answer");
        assert!(matches!(
            client.complete(&ClientRequest::new("p", "other")),
            Err(ClientError::NotRecorded { .. })
        ));
    }

    #[test]
    fn collisions_are_corruption() {
        let store = RecordedStore::in_memory();
        store.insert("d".into(), "a".into()).unwrap();
        store.insert("d".into(), "a".into()).unwrap();
        assert_eq!(
            store.insert("d".into(), "b".into()),
            Err(ClientError::DigestCollision { digest: "d".into() })
        );
    }

    #[test]
    fn recording_persists_and_reuses() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("store.json");
        let store = Arc::new(RecordedStore::open(&path).unwrap());
        let client = RecordingClient::new(Echo(AtomicUsize::new(0)), store.clone());
        let req = ClientRequest::new("p", "hello");
        assert_eq!(client.complete(&req).unwrap(), "echo:hello");
        assert_eq!(client.complete(&req).unwrap(), "echo:hello");
        assert_eq!(client.inner.0.load(Ordering::SeqCst), 1);
        store.save().unwrap();

        let reopened = Arc::new(RecordedStore::open(&path).unwrap());
        assert_eq!(ReplayClient::new(reopened).complete(&req).unwrap(), "echo:hello");
    }

    #[test]
    fn endpoint_payload_extraction() {
        assert_eq!(extract_response_text(r#"{"response":"hi"}"#), "hi");
        assert_eq!(extract_response_text(r#"{"text":"yo"}"#), "yo");
        assert_eq!(extract_response_text("plain"), "plain");
        assert_eq!(extract_response_text(r#"{"other":1}"#), r#"{"other":1}"#);
    }
}
