//! Append-only JSON-lines log, one file per session.

use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use wagegdp_core::{ManualAction, ScenarioConfig, StepRecord};

pub const EXTENSION: &str = "jsonl";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Entry {
    Created {
        id: String,
        at: DateTime<Utc>,
        config: ScenarioConfig,
    },
    /// A pending action was set.
    Action { at: DateTime<Utc>, action: ManualAction },
    /// A step was taken with `applied` as its floor decision.
    Step {
        at: DateTime<Utc>,
        applied: Option<ManualAction>,
        record: StepRecord,
    },
}

pub fn path_for(dir: &Path, id: &str) -> PathBuf {
    dir.join(format!("{id}.{EXTENSION}"))
}

/// Appends `entries` in a single write and syncs the file.
pub fn append(path: &Path, entries: &[Entry]) -> io::Result<()> {
    let mut buf = Vec::new();
    for entry in entries {
        serde_json::to_writer(&mut buf, entry)?;
        buf.push(b'\n');
    }
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    file.write_all(&buf)?;
    file.sync_data()
}

/// Reads every complete entry. A torn final line (no trailing newline and
/// not valid JSON) is dropped with a warning.
pub fn read(path: &Path) -> io::Result<Vec<Entry>> {
    let reader = BufReader::new(File::open(path)?);
    let mut entries = Vec::new();
    let mut lines = reader.lines().enumerate().peekable();
    while let Some((index, line)) = lines.next() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(&line) {
            Ok(entry) => entries.push(entry),
            Err(e) if lines.peek().is_none() => {
                log::warn!("{}: dropping torn last line {}: {e}", path.display(), index + 1);
            }
            Err(e) => {
                return Err(io::Error::new(
                    io::ErrorKind::InvalidData,
                    format!("{} line {}: {e}", path.display(), index + 1),
                ))
            }
        }
    }
    Ok(entries)
}

pub fn remove(path: &Path) -> io::Result<()> {
    match fs::remove_file(path) {
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(()),
        other => other,
    }
}
