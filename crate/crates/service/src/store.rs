use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use ppmchart::eventlog::{format_timestamp, parse_log, EventLog, LogError, LogFormat, ParseOptions, ParseWarning};
use serde::Serialize;

/// Summary of one stored log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogHandle {
    pub id: String,
    pub name: String,
    pub traces: usize,
    pub events: usize,
    pub uploaded_at: String,
    pub warnings: Vec<ParseWarning>,
}

#[derive(Debug)]
pub struct StoredLog {
    pub handle: LogHandle,
    pub log: EventLog,
}

#[derive(Debug, Default)]
struct Inner {
    logs: BTreeMap<String, Arc<StoredLog>>,
    next_id: u64,
}

/// Uploaded logs, in memory and optionally mirrored to a directory. Stored
/// logs never change.
#[derive(Debug, Clone, Default)]
pub struct LogStore {
    inner: Arc<RwLock<Inner>>,
    dir: Option<PathBuf>,
}

#[derive(Debug)]
pub enum StoreError {
    Log(LogError),
    Io(std::io::Error),
}

impl std::fmt::Display for StoreError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StoreError::Log(e) => e.fmt(f),
            StoreError::Io(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for StoreError {}

fn now_millis() -> i64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_millis() as i64)
}

impl LogStore {
    pub fn new() -> Self {
        LogStore::default()
    }

    /// A store backed by `dir`. Every `.xes` and `.csv` file already there is
    /// loaded under its file stem; uploads are written back as new files.
    /// Files that do not parse are skipped and returned with their error.
    pub fn with_dir(dir: &Path) -> std::io::Result<(LogStore, Vec<(PathBuf, LogError)>)> {
        std::fs::create_dir_all(dir)?;
        let store = LogStore {
            inner: Arc::default(),
            dir: Some(dir.to_path_buf()),
        };
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| LogFormat::from_path(p).is_some())
            .collect();
        paths.sort();
        let mut skipped = Vec::new();
        for path in paths {
            let format = LogFormat::from_path(&path).expect("filtered above");
            let raw = std::fs::read(&path)?;
            let id = path.file_stem().and_then(|s| s.to_str()).unwrap_or("log").to_string();
            let name = path.file_name().and_then(|s| s.to_str()).unwrap_or(&id).to_string();
            match LogStore::parse(&raw, format) {
                Ok((log, warnings)) => {
                    let stored = LogStore::stored(id.clone(), name, log, warnings);
                    store.inner.write().expect("store lock").logs.insert(id, stored);
                }
                Err(e) => skipped.push((path, e)),
            }
        }
        Ok((store, skipped))
    }

    fn parse(raw: &[u8], format: LogFormat) -> Result<(EventLog, Vec<ParseWarning>), LogError> {
        let parsed = parse_log(raw, format, &ParseOptions::default())?;
        Ok((parsed.log, parsed.warnings))
    }

    fn stored(id: String, name: String, log: EventLog, warnings: Vec<ParseWarning>) -> Arc<StoredLog> {
        let handle = LogHandle {
            id,
            name,
            traces: log.traces.len(),
            events: log.event_count(),
            uploaded_at: format_timestamp(now_millis()),
            warnings,
        };
        Arc::new(StoredLog { handle, log })
    }

    /// Parses and stores an upload. `name` defaults to the log's own id.
    pub fn upload(&self, raw: &[u8], format: LogFormat, name: Option<&str>) -> Result<LogHandle, StoreError> {
        let (log, warnings) = LogStore::parse(raw, format).map_err(StoreError::Log)?;
        let name = name
            .filter(|n| !n.is_empty())
            .map_or_else(|| log.log_id.clone(), str::to_string);
        // Id assignment and insertion happen under one write lock.
        let mut inner = self.inner.write().expect("store lock");
        let id = loop {
            inner.next_id += 1;
            let candidate = format!("log-{}", inner.next_id);
            if !inner.logs.contains_key(&candidate) {
                break candidate;
            }
        };
        if let Some(dir) = &self.dir {
            std::fs::write(dir.join(format!("{id}.{}", format.extension())), raw).map_err(StoreError::Io)?;
        }
        let stored = LogStore::stored(id.clone(), name, log, warnings);
        let handle = stored.handle.clone();
        inner.logs.insert(id, stored);
        Ok(handle)
    }

    pub fn get(&self, id: &str) -> Option<Arc<StoredLog>> {
        self.inner.read().expect("store lock").logs.get(id).cloned()
    }

    pub fn list(&self) -> Vec<LogHandle> {
        self.inner
            .read()
            .expect("store lock")
            .logs
            .values()
            .map(|s| s.handle.clone())
            .collect()
    }
}
