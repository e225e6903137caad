//! Line-delimited result records for resumable sweeps.

use std::collections::BTreeSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::CoprimePair;

use super::mu::hamiltonicity;
use super::search::{SearchBudget, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub pair: (i64, i64),
    pub n: i64,
    pub verdict: String,
    pub node_count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<i64>>,
}

/// Decides Hamiltonicity of one projection graph as a record.
pub fn hamiltonicity_record(pair: CoprimePair, n: i64, budget: SearchBudget) -> SweepRecord {
    let (v, c) = hamiltonicity(pair, n, budget);
    let witness = match v {
        Verdict::Found(t) => Some(t),
        _ => None,
    };
    SweepRecord { pair: (pair.a(), pair.b()), n, verdict: c.verdict, node_count: c.nodes, witness }
}

/// An append-only file of records, one JSON object per line.
pub struct SweepStore {
    path: PathBuf,
}

impl SweepStore {
    pub fn open(path: impl AsRef<Path>) -> Self {
        SweepStore { path: path.as_ref().to_path_buf() }
    }

    /// Every record written so far; a missing file holds none. A truncated final line
    /// (an interrupted write) is skipped.
    pub fn load(&self) -> Result<Vec<SweepRecord>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(Error::Io(e.to_string())),
        };
        let lines: Vec<String> = BufReader::new(file).lines().collect::<std::io::Result<_>>().map_err(|e| Error::Io(e.to_string()))?;
        let mut out = Vec::new();
        for (i, line) in lines.iter().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str(line) {
                Ok(r) => out.push(r),
                Err(_) if i + 1 == lines.len() => {}
                Err(e) => return Err(Error::Format(format!("line {}: {e}", i + 1))),
            }
        }
        Ok(out)
    }

    /// Keys `(a, b, n)` already recorded.
    pub fn done(&self) -> Result<BTreeSet<(i64, i64, i64)>> {
        Ok(self.load()?.into_iter().map(|r| (r.pair.0, r.pair.1, r.n)).collect())
    }

    pub fn append(&self, record: &SweepRecord) -> Result<()> {
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path).map_err(|e| Error::Io(e.to_string()))?;
        let line = serde_json::to_string(record).map_err(|e| Error::Format(e.to_string()))?;
        writeln!(f, "{line}").map_err(|e| Error::Io(e.to_string()))
    }
}
