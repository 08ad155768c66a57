use std::collections::HashMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use chrono::{DateTime, Utc};
use parking_lot::RwLock;
use serde::Serialize;
use thiserror::Error;
use wagegdp_core::simulator::{FieldError, SimError, Simulation, StepError};
use wagegdp_core::{ManualAction, PolicyRule, ScenarioConfig, StepRecord};

use crate::journal::{self, Entry};

/// Largest number of steps a single advance may request.
pub const MAX_ADVANCE: u32 = 1000;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("session not found")]
    NotFound,
    #[error("invalid request")]
    Invalid(Vec<FieldError>),
    #[error("step {step}: {source}")]
    Step { step: u32, source: StepError },
    #[error("storage failure: {0}")]
    Io(#[from] io::Error),
}

impl From<SimError> for StoreError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::InvalidConfig(fields) => StoreError::Invalid(fields),
            SimError::Step { step, source } => StoreError::Step { step, source },
            other => StoreError::Invalid(vec![FieldError::new("config", other.to_string())]),
        }
    }
}

pub struct Session {
    id: String,
    sim: Simulation,
    pending: Option<ManualAction>,
    created_at: DateTime<Utc>,
    updated_at: DateTime<Utc>,
    deleted: bool,
}

/// Read-only view returned by `GET /sessions/{id}`.
#[derive(Debug, Clone, Serialize)]
pub struct SessionView {
    pub id: String,
    pub config: ScenarioConfig,
    pub t: u32,
    pub latest: StepRecord,
    pub pending_action: Option<ManualAction>,
    pub created_at: DateTime<Utc>,
    pub updated_at: DateTime<Utc>,
}

impl Session {
    pub fn view(&self) -> SessionView {
        SessionView {
            id: self.id.clone(),
            config: self.sim.config().clone(),
            t: self.sim.state().t,
            latest: *self.sim.latest(),
            pending_action: self.pending,
            created_at: self.created_at,
            updated_at: self.updated_at,
        }
    }

    pub fn history(&self) -> &[StepRecord] {
        self.sim.history()
    }
}

/// Floor decision for the next step: the pending action, else the scenario's
/// scheduled action, else a hold for manual rules.
fn next_action(sim: &Simulation, pending: Option<ManualAction>) -> Option<ManualAction> {
    pending
        .or_else(|| sim.config().actions.get(&sim.next_step()).copied())
        .or_else(|| matches!(sim.config().rule, PolicyRule::Manual).then_some(ManualAction::Hold))
}

type Shared = Arc<RwLock<Session>>;

/// All live sessions, each backed by its own log file in `dir`.
pub struct SessionStore {
    dir: PathBuf,
    sessions: RwLock<HashMap<String, Shared>>,
}

impl SessionStore {
    /// Opens `dir`, creating it if needed, and replays every session log in
    /// it. Logs that fail to replay are skipped and reported.
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        let mut sessions = HashMap::new();
        for entry in fs::read_dir(&dir)? {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) != Some(journal::EXTENSION) {
                continue;
            }
            match recover(&path) {
                Ok(session) => {
                    log::info!("recovered session {} at t={}", session.id, session.sim.state().t);
                    sessions.insert(session.id.clone(), Arc::new(RwLock::new(session)));
                }
                Err(e) => log::error!("skipping {}: {e}", path.display()),
            }
        }
        Ok(Self {
            dir,
            sessions: RwLock::new(sessions),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn len(&self) -> usize {
        self.sessions.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, id: &str) -> Result<Shared, StoreError> {
        self.sessions.read().get(id).cloned().ok_or(StoreError::NotFound)
    }

    pub fn create(&self, config: ScenarioConfig) -> Result<(String, StepRecord), StoreError> {
        let sim = Simulation::new(config)?;
        let id = uuid::Uuid::new_v4().simple().to_string();
        let now = Utc::now();
        journal::append(
            &journal::path_for(&self.dir, &id),
            &[Entry::Created {
                id: id.clone(),
                at: now,
                config: sim.config().clone(),
            }],
        )?;
        let snapshot = *sim.latest();
        let session = Session {
            id: id.clone(),
            sim,
            pending: None,
            created_at: now,
            updated_at: now,
            deleted: false,
        };
        self.sessions.write().insert(id.clone(), Arc::new(RwLock::new(session)));
        Ok((id, snapshot))
    }

    pub fn view(&self, id: &str) -> Result<SessionView, StoreError> {
        let shared = self.get(id)?;
        let session = shared.read();
        if session.deleted {
            return Err(StoreError::NotFound);
        }
        Ok(session.view())
    }

    pub fn history(&self, id: &str) -> Result<Vec<StepRecord>, StoreError> {
        let shared = self.get(id)?;
        let session = shared.read();
        if session.deleted {
            return Err(StoreError::NotFound);
        }
        Ok(session.history().to_vec())
    }

    /// Stores `action` for the next step, replacing any earlier one.
    pub fn set_action(&self, id: &str, action: ManualAction) -> Result<(), StoreError> {
        let shared = self.get(id)?;
        let mut session = shared.write();
        if session.deleted {
            return Err(StoreError::NotFound);
        }
        let now = Utc::now();
        journal::append(&journal::path_for(&self.dir, id), &[Entry::Action { at: now, action }])?;
        session.pending = Some(action);
        session.updated_at = now;
        Ok(())
    }

    /// Takes `n` steps. Either all succeed and are persisted, or the session
    /// is left exactly as it was.
    pub fn advance(&self, id: &str, n: u32) -> Result<Vec<StepRecord>, StoreError> {
        let shared = self.get(id)?;
        let mut session = shared.write();
        if session.deleted {
            return Err(StoreError::NotFound);
        }
        if !(1..=MAX_ADVANCE).contains(&n) {
            return Err(StoreError::Invalid(vec![FieldError::new(
                "n",
                format!("must lie in [1, {MAX_ADVANCE}], got {n}"),
            )]));
        }

        let mut sim = session.sim.clone();
        let mut pending = session.pending;
        let now = Utc::now();
        let mut records = Vec::with_capacity(n as usize);
        let mut entries = Vec::with_capacity(n as usize);
        for _ in 0..n {
            let applied = next_action(&sim, pending.take());
            let record = sim.step_with(applied)?;
            records.push(record);
            entries.push(Entry::Step { at: now, applied, record });
        }
        journal::append(&journal::path_for(&self.dir, id), &entries)?;
        session.sim = sim;
        session.pending = None;
        session.updated_at = now;
        Ok(records)
    }

    pub fn delete(&self, id: &str) -> Result<(), StoreError> {
        let shared = self.sessions.write().remove(id).ok_or(StoreError::NotFound)?;
        let mut session = shared.write();
        session.deleted = true;
        journal::remove(&journal::path_for(&self.dir, id))?;
        Ok(())
    }
}

/// Rebuilds a session from its log by re-running every step and checking
/// each record against the stored one.
fn recover(path: &Path) -> io::Result<Session> {
    let invalid = |msg: String| io::Error::new(io::ErrorKind::InvalidData, msg);
    let mut entries = journal::read(path)?.into_iter();
    let Some(Entry::Created { id, at, config }) = entries.next() else {
        return Err(invalid("log does not start with a creation entry".into()));
    };
    let mut sim = Simulation::new(config).map_err(|e| invalid(e.to_string()))?;
    let mut pending = None;
    let mut updated_at = at;
    for entry in entries {
        match entry {
            Entry::Created { .. } => return Err(invalid("duplicate creation entry".into())),
            Entry::Action { at, action } => {
                pending = Some(action);
                updated_at = at;
            }
            Entry::Step { at, applied, record } => {
                let replayed = sim.step_with(applied).map_err(|e| invalid(e.to_string()))?;
                let stored = serde_json::to_string(&record)?;
                if serde_json::to_string(&replayed)? != stored {
                    return Err(invalid(format!("step {} does not replay to the stored record", record.t)));
                }
                pending = None;
                updated_at = at;
            }
        }
    }
    Ok(Session {
        id,
        sim,
        pending,
        created_at: at,
        updated_at,
        deleted: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use wagegdp_core::simulator::presets;

    #[test]
    fn advance_is_atomic() {
        let dir = tempfile::tempdir().unwrap();
        let store = SessionStore::open(dir.path()).unwrap();
        let mut config = presets::hungary();
        // the third step falls below the current minimum
        config.actions.insert(3, ManualAction::Floor(1.0));
        let (id, _) = store.create(config).unwrap();
        store.set_action(&id, ManualAction::Ratio(0.5)).unwrap();
        let before = store.history(&id).unwrap();
        let err = store.advance(&id, 5).unwrap_err();
        assert!(matches!(err, StoreError::Step { step: 3, .. }), "{err:?}");
        assert_eq!(store.history(&id).unwrap(), before);
        assert_eq!(store.view(&id).unwrap().pending_action, Some(ManualAction::Ratio(0.5)));
        let log = fs::read_to_string(journal::path_for(dir.path(), &id)).unwrap();
        assert_eq!(log.lines().count(), 2);
    }

    #[test]
    fn manual_without_action_holds() {
        let dir = tempfile::tempdir().unwrap();
        let store = SessionStore::open(dir.path()).unwrap();
        let (id, snap) = store.create(presets::hungary()).unwrap();
        let recs = store.advance(&id, 4).unwrap();
        assert_eq!(recs[0].w_min.get(), 0.552);
        assert_eq!(recs[1].w_min.get(), 0.606);
        assert_eq!(recs[2].nominal_min, recs[1].nominal_min);
        assert!(snap.w_min.get() < recs[0].w_min.get());
    }

    #[test]
    fn recovery_replays_history_and_pending() {
        let dir = tempfile::tempdir().unwrap();
        let id = {
            let store = SessionStore::open(dir.path()).unwrap();
            let (id, _) = store.create(presets::us_baseline()).unwrap();
            store.advance(&id, 3).unwrap();
            store.set_action(&id, ManualAction::Floor(9.0)).unwrap();
            id
        };
        let store = SessionStore::open(dir.path()).unwrap();
        let view = store.view(&id).unwrap();
        assert_eq!(view.t, 3);
        assert_eq!(view.pending_action, Some(ManualAction::Floor(9.0)));
        assert_eq!(store.advance(&id, 1).unwrap()[0].nominal_min, 9.0);
    }

    #[test]
    fn tampered_log_is_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let id = {
            let store = SessionStore::open(dir.path()).unwrap();
            let (id, _) = store.create(presets::us_baseline()).unwrap();
            store.advance(&id, 2).unwrap();
            id
        };
        let path = journal::path_for(dir.path(), &id);
        let text = fs::read_to_string(&path).unwrap().replace("\"nominal_min\":7.25", "\"nominal_min\":7.5");
        fs::write(&path, text).unwrap();
        let store = SessionStore::open(dir.path()).unwrap();
        assert!(store.is_empty());
    }
}
